//! Torus weights and Hilbert bases of torus-invariant monomials.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use crate::exactmath::{ExactField, Monomial, Variables};
use crate::liealg::LieAlgebra;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("weight of {var} has length {got}, expected {expected}")]
    WeightLength { var: String, expected: usize, got: usize },
    #[error("{expected} variables but {got} weights")]
    WeightCount { expected: usize, got: usize },
    #[error("basis is not a weight basis: {0} is not a Cartan eigenvector")]
    NotWeightBasis(String),
    #[error("weight of {0} is not an integer")]
    NonIntegralWeight(String),
}

/// A diagonal torus acting on polynomial variables: variable `i` is scaled
/// by `Π_c t_c^{weights[i][c]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusAction {
    vars: Variables,
    rank: usize,
    weights: Vec<Vec<i64>>,
}

impl TorusAction {
    pub fn new(vars: Variables, weights: Vec<Vec<i64>>) -> Result<Self, TorusError> {
        if weights.len() != vars.len() {
            return Err(TorusError::WeightCount { expected: vars.len(), got: weights.len() });
        }
        let rank = weights.first().map_or(0, Vec::len);
        for (i, w) in weights.iter().enumerate() {
            if w.len() != rank {
                return Err(TorusError::WeightLength { var: vars.name(i).to_string(), expected: rank, got: w.len() });
            }
        }
        Ok(TorusAction { vars, rank, weights })
    }

    /// Rank-one torus from a flat weight list.
    pub fn rank_one(vars: Variables, weights: &[i64]) -> Result<Self, TorusError> {
        Self::new(vars, weights.iter().map(|&w| vec![w]).collect())
    }

    pub fn variables(&self) -> &Variables {
        &self.vars
    }

    /// Torus dimension.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weight(&self, var: usize) -> &[i64] {
        &self.weights[var]
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }
}

/// Reads weights off the brackets `[h_c, e_i] = α_i(h_c) e_i`. Cartan
/// elements themselves get weight zero.
pub fn weights_from_cartan<F: ExactField>(g: &LieAlgebra<F>) -> Result<TorusAction, TorusError> {
    let n = g.dim();
    let mut weights = vec![Vec::with_capacity(g.cartan().len()); n];
    for &h in g.cartan() {
        for (i, w) in weights.iter_mut().enumerate() {
            let b = g.bracket(h, i);
            if b.iter().enumerate().any(|(k, x)| k != i && !x.is_zero()) {
                return Err(TorusError::NotWeightBasis(g.label(i).to_string()));
            }
            let val = &b[i];
            let int = val
                .is_integer()
                .then(|| val.numer_int().to_i64())
                .flatten()
                .ok_or_else(|| TorusError::NonIntegralWeight(g.label(i).to_string()))?;
            w.push(int);
        }
    }
    TorusAction::new(g.variables().clone(), weights)
}

/// `Σ_i n_i ω_i` for the exponent vector `n` of `m`.
pub fn monomial_weight(t: &TorusAction, m: &Monomial) -> Vec<i64> {
    let mut w = vec![0i64; t.rank];
    for (i, e) in m.support() {
        for (c, wc) in w.iter_mut().enumerate() {
            *wc += t.weights[i][c] * e as i64;
        }
    }
    w
}

/// Minimal torus-invariant monomials up to a degree cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasis {
    pub vars: Variables,
    /// Sorted by degree, then descending graded-lex within a degree.
    pub monomials: Vec<Monomial>,
    pub degree_cap: u32,
    /// Set when new generators still appeared at `degree_cap`.
    pub truncated: bool,
}

impl HilbertBasis {
    pub fn max_degree(&self) -> u32 {
        self.monomials.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn of_degree(&self, d: u32) -> impl Iterator<Item = &Monomial> + '_ {
        self.monomials.iter().filter(move |m| m.degree() == d)
    }
}

/// Degree-by-degree search for the weight-zero monomials that are not
/// divisible by a smaller weight-zero monomial.
///
/// Monomials are grown by appending variables of non-decreasing index, so
/// each is produced once. A partial monomial is dropped when it is divisible
/// by a found invariant, or when some weight coordinate is too far from zero
/// to return within the remaining degree budget. The surviving partial
/// monomials are kept grouped by weight; all of them are retained, since two
/// co-minimal monomials of the same weight can lead to different generators.
pub fn hilbert_basis(t: &TorusAction, degree_cap: u32) -> HilbertBasis {
    let n = t.vars.len();
    // largest single-step move up and down per coordinate
    let up: Vec<i64> = (0..t.rank).map(|c| t.weights.iter().map(|w| w[c].max(0)).max().unwrap_or(0)).collect();
    let down: Vec<i64> = (0..t.rank).map(|c| t.weights.iter().map(|w| (-w[c]).max(0)).max().unwrap_or(0)).collect();
    let reachable = |w: &[i64], steps: i64| {
        w.iter().enumerate().all(|(c, &x)| if x > 0 { x <= steps * down[c] } else { -x <= steps * up[c] })
    };

    let mut found: Vec<Monomial> = Vec::new();
    let mut truncated = false;
    // weight -> partial monomials of the current degree
    let mut frontier: BTreeMap<Vec<i64>, Vec<Monomial>> = BTreeMap::new();
    frontier.insert(vec![0; t.rank], vec![Monomial::one(n)]);

    for degree in 1..=degree_cap {
        let mut next: BTreeMap<Vec<i64>, Vec<Monomial>> = BTreeMap::new();
        let mut new_here: Vec<Monomial> = Vec::new();
        let budget = (degree_cap - degree) as i64;
        for (w, monos) in &frontier {
            for m in monos {
                let start = m.support().map(|(i, _)| i).max().unwrap_or(0);
                for v in start..n {
                    let candidate = m.mul(&Monomial::var(n, v));
                    if found.iter().any(|f| candidate.is_divisible_by(f)) {
                        continue;
                    }
                    let cw: Vec<i64> = w.iter().zip(&t.weights[v]).map(|(a, b)| a + b).collect();
                    if cw.iter().all(|&x| x == 0) {
                        new_here.push(candidate);
                    } else if reachable(&cw, budget) {
                        next.entry(cw).or_default().push(candidate);
                    }
                }
            }
        }
        if degree == degree_cap && !new_here.is_empty() {
            truncated = true;
        }
        new_here.sort_by(|a, b| b.cmp(a));
        found.extend(new_here);
        frontier = next;
    }
    HilbertBasis { vars: t.vars.clone(), monomials: found, degree_cap, truncated }
}
