//! Molien series of rank-one (SU(2)) actions by weight counting, Hilbert
//! series of graded rings, and the functional-equation check.
//!
//! For SU(2) the Weyl integration formula replaces the Haar measure by
//! `(1/π)·sin²φ dφ` on the maximal torus, `z = e^{iφ}`. Expanding
//! `sin²φ = −(z − z⁻¹)²/4` and integrating `z^w` over the circle gives
//! `∫ z^w dμ = δ_{w,0} − ½(δ_{w,2} + δ_{w,−2})`. The degree-`n` coefficient
//! of the Molien series is therefore `N₀(n) − ½(N₂(n) + N₋₂(n))`, where
//! `N_w(n)` counts the degree-`n` monomials of total weight `w`.

use std::collections::BTreeMap;

use num_integer::Integer;

/// Bound on the scalar type used for series coefficients.
pub trait SeriesInt: Integer + Clone + From<i64> {}

impl<T: Integer + Clone + From<i64>> SeriesInt for T {}

/// Counts `N_w(n)` of degree-`n` monomials with weight `w` in variables of
/// fixed integer weights.
#[derive(Clone, Debug)]
pub struct WeightCounter<T> {
    weights: Vec<i64>,
    table: Vec<BTreeMap<i64, T>>,
}

impl<T: SeriesInt> WeightCounter<T> {
    pub fn new(weights: &[i64], max_degree: usize) -> Self {
        // table[n][w] over the variables processed so far; adding one
        // variable at a time is an unbounded knapsack in the degree
        let mut table: Vec<BTreeMap<i64, T>> = vec![BTreeMap::new(); max_degree + 1];
        table[0].insert(0, T::one());
        for &wv in weights {
            for n in 1..=max_degree {
                let prev: Vec<(i64, T)> = table[n - 1].iter().map(|(w, c)| (*w + wv, c.clone())).collect();
                for (w, c) in prev {
                    let e = table[n].entry(w).or_insert_with(T::zero);
                    *e = e.clone() + c;
                }
            }
        }
        WeightCounter { weights: weights.to_vec(), table }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn max_degree(&self) -> usize {
        self.table.len() - 1
    }

    pub fn count(&self, n: usize, w: i64) -> T {
        self.table[n].get(&w).cloned().unwrap_or_else(T::zero)
    }

    /// All `(w, N_w(n))` with a nonzero count.
    pub fn row(&self, n: usize) -> impl Iterator<Item = (i64, &T)> + '_ {
        self.table[n].iter().map(|(w, c)| (*w, c))
    }
}

/// Molien coefficients `1, m_1, …, m_max` for SU(2) acting diagonally with
/// the given `z`-exponents. The weight multiset should be closed under
/// negation, as for any SU(2) representation.
pub fn molien_coefficients_su2<T: SeriesInt>(weights: &[i64], max_degree: usize) -> Vec<T> {
    let wc = WeightCounter::<T>::new(weights, max_degree);
    let two = T::from(2);
    (0..=max_degree).map(|n| (two.clone() * wc.count(n, 0) - wc.count(n, 2) - wc.count(n, -2)) / two.clone()).collect()
}

/// `numerator(q) / Π (1 − q^a)^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeriesForm<T> {
    /// Coefficient of `q^i` at index `i`.
    pub numerator: Vec<T>,
    /// `(a, m)` pairs, sorted by `a`.
    pub denominator_factors: Vec<(u32, u32)>,
}

impl<T: SeriesInt> RationalSeriesForm<T> {
    pub fn new(numerator: Vec<T>, mut denominator_factors: Vec<(u32, u32)>) -> Self {
        denominator_factors.sort();
        let mut merged: Vec<(u32, u32)> = Vec::new();
        for (a, m) in denominator_factors {
            match merged.last_mut() {
                Some(last) if last.0 == a => last.1 += m,
                _ => merged.push((a, m)),
            }
        }
        merged.retain(|&(_, m)| m > 0);
        RationalSeriesForm { numerator, denominator_factors: merged }
    }

    /// Number of denominator factors counted with multiplicity.
    pub fn pole_order(&self) -> u32 {
        self.denominator_factors.iter().map(|&(_, m)| m).sum()
    }

    /// The denominator multiplied out, coefficient of `q^i` at index `i`.
    pub fn denominator(&self) -> Vec<T> {
        let mut d = vec![T::one()];
        for &(a, m) in &self.denominator_factors {
            for _ in 0..m {
                let mut next = vec![T::zero(); d.len() + a as usize];
                for (i, c) in d.iter().enumerate() {
                    next[i] = next[i].clone() + c.clone();
                    next[i + a as usize] = next[i + a as usize].clone() - c.clone();
                }
                d = next;
            }
        }
        d
    }
}

impl<T: SeriesInt + std::fmt::Display> std::fmt::Display for RationalSeriesForm<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.numerator.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let coef = if c.is_one() && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}q"),
                _ => format!("{coef}q^{i}"),
            });
        }
        let num = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        if self.denominator_factors.is_empty() {
            return write!(f, "{num}");
        }
        let den: Vec<String> = self
            .denominator_factors
            .iter()
            .map(|&(a, m)| {
                let base = if a == 1 { "(1-q)".to_string() } else { format!("(1-q^{a})") };
                if m == 1 {
                    base
                } else {
                    format!("{base}^{m}")
                }
            })
            .collect();
        write!(f, "({num})/({})", den.join(""))
    }
}

/// Power-series coefficients of `f` through `q^max_degree`.
pub fn expand_series<T: SeriesInt>(f: &RationalSeriesForm<T>, max_degree: usize) -> Vec<T> {
    let mut c = vec![T::zero(); max_degree + 1];
    for (i, x) in f.numerator.iter().enumerate().take(max_degree + 1) {
        c[i] = x.clone();
    }
    for &(a, m) in &f.denominator_factors {
        let a = a as usize;
        for _ in 0..m {
            // multiply by 1/(1 − q^a) = Σ q^{ka}
            for n in a..=max_degree {
                c[n] = c[n].clone() + c[n - a].clone();
            }
        }
    }
    c
}

/// `(Σ_s q^s) / Π_p (1 − q^p)`, with `s` running over `0` and the
/// secondary degrees.
pub fn hilbert_series_from_degrees<T: SeriesInt>(primary: &[u32], secondary: &[u32]) -> RationalSeriesForm<T> {
    let top = secondary.iter().copied().max().unwrap_or(0) as usize;
    let mut numerator = vec![T::zero(); top + 1];
    numerator[0] = T::one();
    for &s in secondary {
        numerator[s as usize] = numerator[s as usize].clone() + T::one();
    }
    RationalSeriesForm::new(numerator, primary.iter().map(|&p| (p, 1)).collect())
}

/// Whether `f(1/q) = (−1)^d · q^n · f(q)` as rational functions, with `d` the
/// number of denominator factors. For even `d` this is `f(1/q) = q^n f(q)`.
///
/// With `N` the numerator and `D = Π(1 − q^a)^m`, `D(1/q) = (−1)^d q^{−Σam} D(q)`,
/// so the identity reduces to `q^{Σam}·N(1/q) = q^n·N(q)` between Laurent
/// polynomials.
pub fn check_functional_equation<T: SeriesInt>(f: &RationalSeriesForm<T>, n: i64) -> bool {
    let shift: i64 = f.denominator_factors.iter().map(|&(a, m)| a as i64 * m as i64).sum();
    let lhs: BTreeMap<i64, T> = f
        .numerator
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (shift - i as i64, c.clone()))
        .collect();
    let rhs: BTreeMap<i64, T> =
        f.numerator.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (n + i as i64, c.clone())).collect();
    lhs == rhs
}
