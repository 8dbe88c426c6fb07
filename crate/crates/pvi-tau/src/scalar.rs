//! Coefficient-ring abstraction.
//!
//! [`crate::poly::Poly`] is generic over its coefficient ring so that the
//! concrete pipeline (coefficients in Q) and the generic-parameter pipeline
//! (coefficients rational in the indeterminates r, s) run through one code
//! path. A `Scalar` is a commutative Q-algebra; a `FieldScalar` additionally
//! has inverses, which polynomial division and gcd need.
//!
//! Zero and one come from `num_traits`, so the concrete ring is plain
//! `BigRational` with no adapter type.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Commutative ring containing Q, with exact arithmetic.
pub trait Scalar: Clone + PartialEq + core::fmt::Debug + Zero + One {
    fn from_rational(value: Rational) -> Self;

    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_sub(&self, rhs: &Self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn ring_neg(&self) -> Self;

    /// Multiply by a rational constant (division by a nonzero rational goes
    /// through the inverse constant, so this is all the Q-action we need).
    fn mul_rational(&self, value: &Rational) -> Self;

    fn from_i64(value: i64) -> Self {
        Self::from_rational(Rational::from_integer(value.into()))
    }
}

/// Scalar ring in which every nonzero element is invertible.
pub trait FieldScalar: Scalar {
    /// Multiplicative inverse; `None` for zero.
    fn invert(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.invert().map(|inv| self.ring_mul(&inv))
    }
}

impl Scalar for Rational {
    fn from_rational(value: Rational) -> Self {
        value
    }

    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn ring_neg(&self) -> Self {
        -self
    }

    fn mul_rational(&self, value: &Rational) -> Self {
        self * value
    }
}

impl FieldScalar for Rational {
    fn invert(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}
