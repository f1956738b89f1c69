//! The exact field trait every algebraic routine in this crate is generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact field of fractions over a signed integer type.
///
/// The invariant construction depends on exact zero tests (pivot selection,
/// kernel computation, "Δ = 0"), so floating-point types deliberately do not
/// implement this trait. Implemented for [`Ratio<T>`] over `BigInt`, `i64`
/// and `i128`.
pub trait ExactField: Clone + Eq + Hash + Debug + Display + Signed + FromStr + Send + Sync + 'static {
    /// Underlying integer ring.
    type Int: Integer + Signed + ToPrimitive + Clone + Eq + Hash + Debug + Display + Send + Sync + 'static;

    /// `num / den`, reduced. Panics if `den == 0`.
    fn from_ints(num: i64, den: i64) -> Self;

    fn from_int(n: Self::Int) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_ints(n, 1)
    }

    fn numer_int(&self) -> Self::Int;

    /// Always positive.
    fn denom_int(&self) -> Self::Int;

    fn is_integer(&self) -> bool {
        self.denom_int().is_one()
    }
}

impl<T> ExactField for Ratio<T>
where
    T: Integer
        + Signed
        + Clone
        + Eq
        + Hash
        + Debug
        + Display
        + FromStr
        + ToPrimitive
        + From<i64>
        + Send
        + Sync
        + 'static,
{
    type Int = T;

    fn from_ints(num: i64, den: i64) -> Self {
        Ratio::new(T::from(num), T::from(den))
    }

    fn from_int(n: T) -> Self {
        Ratio::from_integer(n)
    }

    fn numer_int(&self) -> T {
        self.numer().clone()
    }

    fn denom_int(&self) -> T {
        self.denom().clone()
    }
}

/// Scales a vector by a positive rational so that all entries are coprime
/// integers, then flips the sign so the first nonzero entry is positive.
///
/// The zero vector is returned unchanged.
pub fn primitive_integer_vector<F: ExactField>(v: &[F]) -> Vec<F> {
    let Some(first) = v.iter().find(|x| !x.is_zero()) else {
        return v.to_vec();
    };
    let mut num_gcd = F::Int::zero();
    let mut den_lcm = F::Int::one();
    for x in v.iter().filter(|x| !x.is_zero()) {
        num_gcd = num_gcd.gcd(&x.numer_int());
        den_lcm = den_lcm.lcm(&x.denom_int());
    }
    let mut scale = F::from_int(den_lcm) / F::from_int(num_gcd);
    if first.is_negative() {
        scale = -scale;
    }
    v.iter().map(|x| x.clone() * scale.clone()).collect()
}

/// Converts a vector of integral field elements to the integer ring.
///
/// Returns `None` if any entry has a nontrivial denominator.
pub fn to_integers<F: ExactField>(v: &[F]) -> Option<Vec<F::Int>> {
    v.iter().map(|x| x.is_integer().then(|| x.numer_int())).collect()
}
