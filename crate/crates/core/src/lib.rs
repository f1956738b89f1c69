//! Polynomial invariants of adjoint Lie group actions, computed exactly.
//!
//! The pipeline runs torus weights → Hilbert basis of torus-invariant
//! monomials → Weyl-extension automorphisms → Reynolds "Weyl blocks" →
//! a homogeneous linear system whose kernel gives the group invariants.
//! Syzygies, Hironaka-style decompositions and Molien/Hilbert series are
//! available for checking that a set of invariants is complete.
//!
//! Every algebraic type is generic over an [`ExactField`]. The aliases below
//! fix the field to arbitrary-precision rationals, which is what the CLI and
//! the shipped examples use.

pub mod exactmath;
pub mod liealg;
pub mod series;
pub mod solver;
pub mod torus;
pub mod weyl;

mod error;

pub use error::Error;
pub use exactmath::{ExactField, MathError, Matrix, Monomial, Polynomial, Variables};

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision rational; the default scalar.
pub type Rational = num_rational::BigRational;
/// Rational with machine-word components; faster, may overflow on large inputs.
pub type SmallRational = num_rational::Ratio<i64>;

pub type Poly = Polynomial<Rational>;
pub type RatMatrix = Matrix<Rational>;
pub type LieAlgebra = liealg::LieAlgebra<Rational>;
pub type AdjointData = liealg::AdjointData<Rational>;
pub type SubgroupEmbedding = liealg::SubgroupEmbedding<Rational>;
pub type WeylOperatorSet = weyl::WeylOperatorSet<Rational>;
pub type WeylBlock = weyl::WeylBlock<Rational>;
pub type InvariantSystem = solver::InvariantSystem<Rational>;
pub type Invariant = solver::Invariant<Rational>;
pub type Syzygy = solver::Syzygy<Rational>;
pub type RationalSeriesForm = series::RationalSeriesForm<Integer>;
