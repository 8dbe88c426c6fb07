//! Reduced rational functions of `t` over Q.
//!
//! Invariants: the denominator is monic and nonzero, and numerator and
//! denominator are coprime. Both are restored after every operation, so
//! equality is structural.


use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;

#[derive(Clone, PartialEq)]
pub struct RatFunc {
    num: Poly<Rational>,
    den: Poly<Rational>,
}

impl RatFunc {
    /// Build `num/den`, reducing to canonical form. Panics on a zero
    /// denominator polynomial; use [`RatFunc::div`] for fallible division.
    pub fn new(num: Poly<Rational>, den: Poly<Rational>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lead_inv = den.leading().recip();
        RatFunc {
            num: num.mul_rational(&lead_inv),
            den: den.mul_rational(&lead_inv),
        }
    }

    pub fn from_poly(p: Poly<Rational>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn from_rational(q: Rational) -> Self {
        RatFunc::from_poly(Poly::constant(q))
    }

    pub fn from_integer(n: i64) -> Self {
        RatFunc::from_poly(Poly::from_integers(&[n]))
    }

    /// The variable `t`.
    pub fn var() -> Self {
        RatFunc::from_poly(Poly::var())
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn num(&self) -> &Poly<Rational> {
        &self.num
    }

    pub fn den(&self) -> &Poly<Rational> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the function is a constant (numerator and denominator both
    /// constant; the denominator is then 1).
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        RatFunc::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.mul_rational(factor),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        Ok(RatFunc::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        Ok(RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// Quotient rule, reduced.
    pub fn derivative(&self) -> Self {
        if self.den.is_one() {
            return RatFunc::from_poly(self.num.derivative());
        }
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(num, &self.den * &self.den)
    }

    /// Substitute a polynomial for `t`.
    pub fn compose_poly(&self, inner: &Poly<Rational>) -> Self {
        RatFunc::new(self.num.compose(inner), self.den.compose(inner))
    }

    /// Exact evaluation; a pole is an error.
    pub fn eval(&self, at: &Rational) -> Result<Rational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::PoleEvaluation { at: at.clone() });
        }
        Ok(self.num.eval(at) / d)
    }

    /// Integer power, negative allowed for nonzero functions.
    pub fn powi(&self, exp: i32) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

impl core::ops::Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: Self) -> RatFunc {
        RatFunc::add(self, rhs)
    }
}

impl core::ops::Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: Self) -> RatFunc {
        RatFunc::sub(self, rhs)
    }
}

impl core::ops::Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: Self) -> RatFunc {
        RatFunc::mul(self, rhs)
    }
}

impl core::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

impl core::fmt::Display for RatFunc {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl core::fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// `t` as a polynomial, shorthand used all over the formula assembly.
pub fn tpoly() -> Poly<Rational> {
    Poly::var()
}

/// `t(t-1)` as a polynomial.
pub fn t_times_t_minus_1() -> Poly<Rational> {
    Poly::from_integers(&[0, -1, 1])
}
