//! Lie algebras by structure constants, their adjoint data, derivations,
//! nilpotent exponentials and subalgebra embeddings.

mod adjoint;
mod algebra;
mod embedding;

pub use adjoint::{adjoint_data, check_automorphism, derivation, nilpotent_exp, AdjointData};
pub use algebra::{build_sl, LieAlgebra, SlTriple};
pub use embedding::{embed_subalgebra, sl2_in_sl3, SubgroupEmbedding};

use crate::exactmath::MathError;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("antisymmetry fails at ({i},{j},{k})")]
    Antisymmetry { i: usize, j: usize, k: usize },
    #[error("Jacobi fails at ({i},{j},{k})")]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("Cartan elements {i} and {j} do not commute")]
    CartanNotAbelian { i: usize, j: usize },
    #[error("triple (x={}, y={}, h={}) violates {relation}", triple.x, triple.y, triple.h)]
    BadTriple { triple: SlTriple, relation: String },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("duplicate basis label {0}")]
    DuplicateLabel(String),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("Cartan metric is singular: algebra not semisimple for this method")]
    NotSemisimple,
    #[error("adjoint matrix of {0} is not nilpotent")]
    NotNilpotent(String),
    #[error("basis change is singular")]
    SingularBasisChange,
    #[error(transparent)]
    Math(#[from] MathError),
}
