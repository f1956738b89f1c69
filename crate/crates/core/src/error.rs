use crate::exactmath::MathError;
use crate::liealg::LieError;
use crate::solver::SolverError;
use crate::torus::TorusError;
use crate::weyl::WeylError;

/// Any error raised by the library.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Math(#[from] MathError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}
