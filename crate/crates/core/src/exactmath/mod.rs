//! Exact arithmetic substrate: rational scalars, sparse multivariate
//! polynomials, dense matrices and null-space computation.

mod matrix;
mod monomial;
mod parse;
mod polynomial;
mod scalar;

pub use matrix::{kernel_basis, Matrix, RowSpace};
pub use monomial::{Monomial, Variables};
pub use polynomial::{latex_name, Polynomial};
pub use scalar::{primitive_integer_vector, to_integers, ExactField};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum MathError {
    #[error("variable sets differ: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },
    #[error("no image given for variable {0}")]
    MissingImage(String),
    #[error("image of variable {0} is not a homogeneous linear form")]
    NonLinearImage(String),
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("matrix rows have different lengths")]
    RaggedRows,
    #[error("matrix is singular")]
    Singular,
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// All monomials of total degree `degree` in `nvars` variables, in
/// descending graded-lex order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        return if degree == 0 { vec![Monomial::one(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, degree, &mut vec![0; nvars], &mut out);
    out
}
