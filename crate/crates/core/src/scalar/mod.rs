//! Scalar backends shared by every geometric module.
//!
//! Three backends implement [`Scalar`]: exact rationals, elements of a
//! polynomial quotient ring (see [`ring`]), and binary64 floats compared
//! against a tolerance.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub mod ideals;
pub mod poly;
pub mod rational;
pub mod ring;

pub use poly::{Monomial, Polynomial};
pub use rational::{format_rational, int, rat, rational_sqrt, rational_to_f64, Rational};
pub use ring::{IdealBuilder, ReductionStrategy, RelationIdeal, RingElem, RingError};

/// Absolute tolerance used by the float backend's [`Scalar::is_zero`];
/// frame components are O(1), so this acts as a relative bound.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(q: &Rational) -> Self;

    fn is_zero(&self) -> bool;

    /// Numeric value, when the scalar is a constant.
    fn to_f64(&self) -> Option<f64>;

    fn zero() -> Self {
        Self::from_rational(&<Rational as Zero>::zero())
    }

    fn one() -> Self {
        Self::from_rational(&<Rational as One>::one())
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&int(n))
    }

    fn ratio(numer: i64, denom: i64) -> Self {
        Self::from_rational(&rat(numer, denom))
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn scaled(&self, q: &Rational) -> Self {
        Self::from_rational(q) * self.clone()
    }
}

/// A [`Scalar`] with division by nonzero elements.
pub trait Field: Scalar + Div<Output = Self> {}

impl Scalar for f64 {
    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }

    fn is_zero(&self) -> bool {
        self.abs() <= DEFAULT_TOLERANCE
    }

    fn to_f64(&self) -> Option<f64> {
        Some(*self)
    }
}

impl Field for f64 {}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn to_f64(&self) -> Option<f64> {
        Some(rational_to_f64(self))
    }
}

impl Field for Rational {}

/// `|a − b| ≤ tol · max(1, |a|, |b|)`.
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

/// Sum of scalars, starting from zero.
pub fn sum<S: Scalar, I: IntoIterator<Item = S>>(items: I) -> S {
    items.into_iter().fold(S::zero(), |acc, x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d))
    }

    #[test]
    fn zero_tests() {
        assert!(Scalar::is_zero(&rat(0, 1)));
        assert!(Scalar::is_zero(&1e-12f64));
        assert!(!Scalar::is_zero(&1e-6f64));
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a + &b, &b + &a);
            if !Zero::is_zero(&a) {
                prop_assert_eq!(&a * (int(1) / &a), int(1));
            }
        }

        #[test]
        fn rational_canonical_denominator(a in small_rational(), b in small_rational()) {
            let q = &a * &b - &b;
            prop_assert!(q.denom() > &num_bigint::BigInt::from(0));
            let g = num_integer::Integer::gcd(q.numer(), q.denom());
            prop_assert!(g == num_bigint::BigInt::from(1));
        }
    }
}
