use crate::exactmath::{ExactField, Matrix, Polynomial};

use super::{LieAlgebra, LieError};

/// Adjoint matrices, Cartan metric and the transformed matrices that act on
/// the basis viewed as polynomial variables.
///
/// * `a[i]` has entry `(j, k) = −c_ij^k` (row `j`, column `k`);
/// * `chi[(i, j)] = Tr(a[i]·a[j])`;
/// * `a_tilde[i] = chi⁻¹ · a[i] · chi`, read with rows as the image index:
///   `e_j ↦ Σ_k e_k · a_tilde[i][(k, j)]`.
///
/// With this reading `a_tilde[i]` coincides with `ad(e_i)` in column
/// convention, which is what reproduces the Weyl-extension action tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointData<F> {
    pub a: Vec<Matrix<F>>,
    pub chi: Matrix<F>,
    pub a_tilde: Vec<Matrix<F>>,
    labels: Vec<String>,
}

pub fn adjoint_data<F: ExactField>(g: &LieAlgebra<F>) -> Result<AdjointData<F>, LieError> {
    let n = g.dim();
    let a: Vec<Matrix<F>> = (0..n).map(|i| Matrix::from_fn(n, n, |j, k| -g.c(i, j, k).clone())).collect();
    let chi = Matrix::from_fn(n, n, |i, j| a[i].checked_mul(&a[j]).expect("square").trace());
    let chi_inv = chi.inverse().map_err(|_| LieError::NotSemisimple)?;
    let a_tilde =
        a.iter().map(|ai| chi_inv.checked_mul(ai).and_then(|m| m.checked_mul(&chi))).collect::<Result<Vec<_>, _>>()?;
    Ok(AdjointData { a, chi, a_tilde, labels: g.labels().to_vec() })
}

impl<F: ExactField> AdjointData<F> {
    pub fn dim(&self) -> usize {
        self.chi.rows()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Linear forms `e_j ↦ Σ_k (Ã_i)_{kj} e_k`, one per variable of `vars`.
    pub fn derivation_images(&self, i: usize, vars: &crate::Variables) -> Vec<Polynomial<F>> {
        let m = &self.a_tilde[i];
        (0..self.dim())
            .map(|j| {
                let mut p = Polynomial::zero(vars.clone());
                for k in 0..self.dim() {
                    if !m[(k, j)].is_zero() {
                        p = &p + &Polynomial::var(vars.clone(), k).scale(&m[(k, j)]);
                    }
                }
                p
            })
            .collect()
    }
}

/// Derivative at `t = 0` of the one-parameter group generated by basis
/// element `i`, acting on `p`: the Leibniz extension of `e_j ↦ Σ_k (Ã_i)_{kj} e_k`.
pub fn derivation<F: ExactField>(ad: &AdjointData<F>, i: usize, p: &Polynomial<F>) -> Polynomial<F> {
    let vars = p.vars().clone();
    assert_eq!(vars.len(), ad.dim(), "polynomial is not over the algebra's variables");
    let images = ad.derivation_images(i, &vars);
    let mut out = Polynomial::zero(vars);
    for (j, image) in images.iter().enumerate() {
        if image.is_zero() {
            continue;
        }
        let dp = p.partial_derivative(j);
        if !dp.is_zero() {
            out = &out + &(&dp * image);
        }
    }
    out
}

/// `exp(m) = Σ m^k / k!` for nilpotent `m`. Nilpotency is checked first
/// (`m^dim = 0`); `label` names the generator in the error.
pub fn nilpotent_exp<F: ExactField>(m: &Matrix<F>, label: &str) -> Result<Matrix<F>, LieError> {
    if !m.is_square() {
        return Err(crate::MathError::ShapeMismatch { left: (m.rows(), m.cols()), right: (m.rows(), m.cols()) }.into());
    }
    let n = m.rows();
    let mut out = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=n {
        term = term.checked_mul(m)?.scale(&(F::one() / F::from_i64(k as i64)));
        if term.is_zero() {
            return Ok(out);
        }
        out = out.checked_add(&term)?;
    }
    Err(LieError::NotNilpotent(label.to_string()))
}

/// True iff `s` preserves brackets on all basis pairs: `s[e_a, e_b] = [s e_a, s e_b]`,
/// with `s e_a` the `a`-th column of `s`.
pub fn check_automorphism<F: ExactField>(g: &LieAlgebra<F>, s: &Matrix<F>) -> bool {
    let n = g.dim();
    if s.rows() != n || s.cols() != n {
        return false;
    }
    let cols: Vec<Vec<F>> = (0..n).map(|a| s.column(a)).collect();
    for a in 0..n {
        for b in a + 1..n {
            let lhs = s.mul_vec(&g.bracket(a, b)).expect("square");
            let rhs = g.bracket_vec(&cols[a], &cols[b]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}
