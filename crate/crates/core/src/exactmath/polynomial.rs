use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ExactField, MathError, Monomial, Variables};

/// Sparse multivariate polynomial with exact coefficients.
///
/// Terms are kept in a graded-lex ordered map with no zero coefficients, so
/// structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<F> {
    vars: Variables,
    terms: BTreeMap<Monomial, F>,
}

impl<F: ExactField> Polynomial<F> {
    pub fn zero(vars: Variables) -> Self {
        Polynomial { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Variables, c: F) -> Self {
        let n = vars.len();
        Self::monomial(vars, Monomial::one(n), c)
    }

    pub fn one(vars: Variables) -> Self {
        Self::constant(vars, F::one())
    }

    pub fn var(vars: Variables, index: usize) -> Self {
        let n = vars.len();
        Self::monomial(vars, Monomial::var(n, index), F::one())
    }

    pub fn monomial(vars: Variables, m: Monomial, c: F) -> Self {
        assert_eq!(m.nvars(), vars.len(), "monomial arity does not match variable set");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { vars, terms }
    }

    /// Collects terms, summing repeated monomials and pruning zeros.
    pub fn from_terms(vars: Variables, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), p.vars.len(), "monomial arity does not match variable set");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> + '_ {
        self.terms.iter().rev()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.keys().rev()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    /// Maximum total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common degree of all terms, if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    fn check_vars(&self, other: &Self) -> Result<(), MathError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(MathError::VariableMismatch { left: self.vars.names().join(","), right: other.vars.names().join(",") })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, MathError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, MathError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, MathError> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.vars.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.vars.clone());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_derivative(&self, index: usize) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.exponents()[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[index] -= 1;
            out.add_term(Monomial::from_exponents(exps), c.clone() * F::from_i64(i64::from(e)));
        }
        out
    }

    /// Ring homomorphism extension of `x_i ↦ images[i]`.
    ///
    /// The images may live over a different variable set, but must all share one.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Polynomial<F>, MathError> {
        if images.len() != self.vars.len() {
            let missing = self.vars.names().get(images.len()).cloned().unwrap_or_default();
            return Err(MathError::MissingImage(missing));
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => return Ok(self.clone()),
        };
        for im in images {
            if im.vars != target {
                return Err(MathError::VariableMismatch {
                    left: target.names().join(","),
                    right: im.vars.names().join(","),
                });
            }
        }
        // powers are cached per variable; degrees here are small
        let mut powers: Vec<Vec<Polynomial<F>>> = vec![vec![Polynomial::one(target.clone())]; images.len()];
        let mut out = Polynomial::zero(target.clone());
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target.clone(), c.clone());
            for (i, e) in m.support() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// [`substitute`](Self::substitute) restricted to homogeneous degree-1 images
    /// over the same variable set, so homogeneous degree is preserved.
    pub fn substitute_linear(&self, images: &[Polynomial<F>]) -> Result<Polynomial<F>, MathError> {
        if images.len() != self.vars.len() {
            let missing = self.vars.names().get(images.len()).cloned().unwrap_or_default();
            return Err(MathError::MissingImage(missing));
        }
        for (i, im) in images.iter().enumerate() {
            self.check_vars(im)?;
            if !im.is_zero() && im.homogeneous_degree() != Some(1) {
                return Err(MathError::NonLinearImage(self.vars.name(i).to_string()));
            }
        }
        self.substitute(images)
    }

    /// Like [`substitute_linear`](Self::substitute_linear) with images keyed by variable name.
    pub fn substitute_linear_map(&self, images: &BTreeMap<String, Polynomial<F>>) -> Result<Polynomial<F>, MathError> {
        let ordered = self
            .vars
            .names()
            .iter()
            .map(|n| images.get(n).cloned().ok_or_else(|| MathError::MissingImage(n.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        self.substitute_linear(&ordered)
    }

    /// Moves the polynomial to `target`, sending variable `i` to `mapping[i]`.
    /// Terms containing a variable mapped to `None` are dropped (the variable is set to 0).
    pub fn remap(&self, target: Variables, mapping: &[Option<usize>]) -> Polynomial<F> {
        assert_eq!(mapping.len(), self.vars.len());
        let mut out = Polynomial::zero(target.clone());
        'terms: for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.len()];
            for (i, e) in m.support() {
                match mapping[i] {
                    Some(j) => exps[j] += e,
                    None => continue 'terms,
                }
            }
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        out
    }

    /// Divides by the rational content and fixes the sign so that the
    /// coefficients are coprime integers with a positive leading coefficient.
    pub fn primitive(&self) -> Polynomial<F> {
        let coeffs: Vec<F> = self.terms.values().rev().cloned().collect();
        let normalized = super::primitive_integer_vector(&coeffs);
        Polynomial { vars: self.vars.clone(), terms: self.terms.keys().rev().cloned().zip(normalized).collect() }
    }

    /// Coefficients against an explicit list of monomials.
    pub fn coefficients_on(&self, basis: &[Monomial]) -> Vec<F> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let unit = a.is_one();
            if !unit || m.is_one() {
                if a.is_integer() {
                    s.push_str(&a.numer_int().to_string());
                } else {
                    s.push_str(&format!("\\frac{{{}}}{{{}}}", a.numer_int(), a.denom_int()));
                }
            }
            for (i, e) in m.support() {
                if !s.ends_with(['-', ' ']) && !s.is_empty() {
                    s.push(' ');
                }
                s.push_str(&latex_name(self.vars.name(i)));
                if e > 1 {
                    s.push_str(&format!("^{{{e}}}"));
                }
            }
        }
        s
    }
}

const GREEK: &[&str] = &["alpha", "beta", "gamma", "delta", "epsilon", "mu", "nu", "sigma", "omega", "chi"];

/// `x1` → `x_{1}`, `alpha2` → `\alpha_{2}`, `C` → `C`.
pub fn latex_name(name: &str) -> String {
    let split = name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (base, idx) = name.split_at(split);
    let base = if GREEK.contains(&base) { format!("\\{base}") } else { base.to_string() };
    if idx.is_empty() {
        base
    } else {
        format!("{base}_{{{idx}}}")
    }
}

impl<F: ExactField> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", m.display(&self.vars))?;
            } else {
                write!(f, "{a}*{}", m.display(&self.vars))?;
            }
        }
        Ok(())
    }
}

impl<F: ExactField> Add for &Polynomial<F> {
    type Output = Polynomial<F>;

    /// Panics on mismatched variable sets; use [`Polynomial::checked_add`] otherwise.
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.checked_add(rhs).expect("polynomial variable sets differ")
    }
}

impl<F: ExactField> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.checked_sub(rhs).expect("polynomial variable sets differ")
    }
}

impl<F: ExactField> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.checked_mul(rhs).expect("polynomial variable sets differ")
    }
}

impl<F: ExactField> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn neg(self) -> Polynomial<F> {
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}
