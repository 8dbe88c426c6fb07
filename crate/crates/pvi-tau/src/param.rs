//! Polynomials in `t` whose coefficients are rational functions of the two
//! symbolic parameters `r` and `s`.
//!
//! The generic recurrence pipeline runs over [`ParamPoly`] =
//! `Poly<ParamScalar>`: the same polynomial code as the concrete pipeline,
//! specialized to a different coefficient ring. Coefficients are kept as
//! reduced *fractions* of bivariate polynomials because the Toda division
//! genuinely passes through rational-function intermediates before they
//! cancel; demanding polynomial coefficients throughout would spuriously
//! fail.
//!
//! Normalization: fractions are reduced by their polynomial gcd and rational
//! content, and the denominator is an integer-primitive polynomial whose
//! leading coefficient under graded lexicographic order with `r > s` is
//! positive (a constant denominator is exactly 1). The fixed order makes
//! witness output reproducible.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{format_rational, Integer, Rational};
use crate::scalar::{FieldScalar, Scalar};

/// Bivariate polynomial in (r, s) over Q, represented as a polynomial in `r`
/// whose coefficients are polynomials in `s`.
#[derive(Clone, PartialEq, Debug)]
pub struct RsPoly(Poly<Poly<Rational>>);

impl RsPoly {
    pub fn zero() -> Self {
        RsPoly(Poly::zero())
    }

    pub fn one() -> Self {
        RsPoly(Poly::one())
    }

    pub fn constant(q: Rational) -> Self {
        RsPoly(Poly::constant(Poly::constant(q)))
    }

    pub fn var_r() -> Self {
        RsPoly(Poly::new(alloc::vec![Poly::zero(), Poly::one()]))
    }

    pub fn var_s() -> Self {
        RsPoly(Poly::constant(Poly::var()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// True for a constant polynomial; returns the constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.0.is_zero() {
            return Some(Rational::zero());
        }
        if self.0.is_constant() && self.0.coeff(0).is_constant() {
            return Some(self.0.coeff(0).coeff(0));
        }
        None
    }

    pub fn add(&self, rhs: &Self) -> Self {
        RsPoly(self.0.add(&rhs.0))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        RsPoly(self.0.sub(&rhs.0))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        RsPoly(self.0.mul(&rhs.0))
    }

    pub fn neg(&self) -> Self {
        RsPoly(self.0.neg())
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        RsPoly(self.0.mul_rational(q))
    }

    pub fn eval(&self, r0: &Rational, s0: &Rational) -> Rational {
        self.0.map(|inner| inner.eval(s0)).eval(r0)
    }

    /// Coefficient of `r^i s^j`.
    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.0.coeff(i).coeff(j)
    }

    pub fn degree_r(&self) -> usize {
        self.0.degree_or_zero()
    }

    pub fn degree_s(&self) -> usize {
        self.0
            .coeffs()
            .iter()
            .map(Poly::degree_or_zero)
            .max()
            .unwrap_or(0)
    }

    /// All coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.0.coeffs().iter().all(Poly::is_integral)
    }

    /// Leading monomial under graded lex with r > s: highest total degree,
    /// ties broken by the larger power of r. Returns (i, j, coefficient);
    /// None for zero.
    pub fn leading_grlex(&self) -> Option<(usize, usize, Rational)> {
        let mut best: Option<(usize, usize, Rational)> = None;
        for (i, inner) in self.0.coeffs().iter().enumerate() {
            for (j, c) in inner.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let better = match &best {
                    None => true,
                    Some((bi, bj, _)) => {
                        let (ti, tb) = (i + j, bi + bj);
                        ti > tb || (ti == tb && i > *bi)
                    }
                };
                if better {
                    best = Some((i, j, c.clone()));
                }
            }
        }
        best
    }

    /// Signed rational content: the rational `c` such that `self / c` has
    /// coprime integer coefficients and positive grlex-leading coefficient.
    /// Zero for the zero polynomial.
    pub fn rational_content(&self) -> Rational {
        let Some((_, _, lead)) = self.leading_grlex() else {
            return Rational::zero();
        };
        let mut num_gcd = Integer::zero();
        let mut den_lcm = Integer::one();
        for inner in self.0.coeffs() {
            for c in inner.coeffs() {
                if c.is_zero() {
                    continue;
                }
                num_gcd = crate::rational::integer_gcd(&num_gcd, c.numer());
                den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
            }
        }
        let mag = Rational::new(num_gcd, den_lcm);
        if lead.is_negative() {
            -mag
        } else {
            mag
        }
    }

    /// Exact division: long division in `r` with exact coefficient division
    /// in `Q[s]`. When the quotient is genuinely polynomial every
    /// intermediate coefficient division is exact too, so no fractions
    /// appear; `None` otherwise.
    pub fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(RsPoly::zero());
        }
        let db = rhs.0.degree()?;
        let da = self.0.degree()?;
        if da < db {
            return None;
        }
        let lead = rhs.0.leading();
        let mut rem: Vec<Poly<Rational>> = self.0.coeffs().to_vec();
        let mut quot = alloc::vec![Poly::<Rational>::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = rem[k + db].clone();
            if top.is_zero() {
                continue;
            }
            let q = top.exact_div(&lead).ok()?;
            for (j, b) in rhs.0.coeffs().iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&q.mul(b));
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(RsPoly(Poly::new(quot)))
    }

    /// Gcd by a primitive pseudo-remainder sequence in `r` over `Q[s]`,
    /// normalized to integer-primitive with positive grlex lead.
    pub fn gcd(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.normalized_primitive();
        }
        if rhs.is_zero() {
            return self.normalized_primitive();
        }
        let (ca, pa) = self.split_s_content();
        let (cb, pb) = rhs.split_s_content();
        let content_gcd = ca.gcd(&cb);
        let mut a = pa.0;
        let mut b = pb.0;
        if a.degree_or_zero() < b.degree_or_zero() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = RsPoly(r).split_s_content().1 .0;
        }
        let prim = RsPoly(a);
        RsPoly(prim.0.map(|c| c.mul(&content_gcd))).normalized_primitive()
    }

    /// s-content (monic gcd in Q[s] of the r-coefficients) and the
    /// corresponding primitive part.
    fn split_s_content(&self) -> (Poly<Rational>, RsPoly) {
        let mut content = Poly::<Rational>::zero();
        for c in self.0.coeffs() {
            content = content.gcd(c);
        }
        if content.is_zero() {
            return (Poly::zero(), RsPoly::zero());
        }
        let prim = self.0.map(|c| c.exact_div(&content).expect("content divides"));
        (content, RsPoly(prim))
    }

    /// Divide out the rational content (integer-primitive, positive grlex
    /// lead). Zero stays zero.
    pub fn normalized_primitive(&self) -> Self {
        let c = self.rational_content();
        if c.is_zero() {
            return RsPoly::zero();
        }
        self.mul_rational(&c.recip())
    }
}

impl core::fmt::Display for RsPoly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(usize, usize, Rational)> = Vec::new();
        for (i, inner) in self.0.coeffs().iter().enumerate() {
            for (j, c) in inner.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    terms.push((i, j, c.clone()));
                }
            }
        }
        terms.sort_by_key(|(i, j, _)| (core::cmp::Reverse(i + j), core::cmp::Reverse(*i)));
        for (idx, (i, j, c)) in terms.iter().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one() && (*i, *j) != (0, 0);
            if !unit {
                write!(f, "{}", format_rational(&mag))?;
            }
            for (sym, e) in [("r", *i), ("s", *j)] {
                match e {
                    0 => {}
                    1 => write!(f, "{sym}")?,
                    _ => write!(f, "{sym}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// Reduced fraction of two bivariate polynomials — the coefficient field for
/// the generic pipeline.
#[derive(Clone, Debug)]
pub struct ParamScalar {
    num: RsPoly,
    den: RsPoly,
}

impl ParamScalar {
    pub fn new(num: RsPoly, den: RsPoly) -> Self {
        assert!(!den.is_zero(), "ParamScalar with zero denominator");
        ParamScalar { num, den }.reduce()
    }

    pub fn from_rs(p: RsPoly) -> Self {
        ParamScalar { num: p, den: RsPoly::one() }
    }

    pub fn var_r() -> Self {
        Self::from_rs(RsPoly::var_r())
    }

    pub fn var_s() -> Self {
        Self::from_rs(RsPoly::var_s())
    }

    pub fn num(&self) -> &RsPoly {
        &self.num
    }

    pub fn den(&self) -> &RsPoly {
        &self.den
    }

    fn reduce(self) -> Self {
        if self.num.is_zero() {
            return ParamScalar { num: RsPoly::zero(), den: RsPoly::one() };
        }
        let g = self.num.gcd(&self.den);
        let (mut num, mut den) = if g.as_constant().is_some() {
            (self.num, self.den)
        } else {
            (
                self.num.exact_div(&g).expect("gcd divides numerator"),
                self.den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        // Denominator becomes integer-primitive with positive grlex lead;
        // the rational factor moves into the numerator.
        let c = den.rational_content();
        num = num.mul_rational(&c.recip());
        den = den.mul_rational(&c.recip());
        ParamScalar { num, den }
    }

    /// Evaluate at concrete parameters; a vanishing denominator is a
    /// parameter pole.
    pub fn eval(&self, r0: &Rational, s0: &Rational) -> Result<Rational> {
        let d = self.den.eval(r0, s0);
        if d.is_zero() {
            return Err(Error::ParameterPole(alloc::format!(
                "denominator {} vanishes at (r, s) = ({}, {})",
                self.den,
                format_rational(r0),
                format_rational(s0)
            )));
        }
        Ok(self.num.eval(r0, s0) / d)
    }

    /// Member of `Z[r, s]`: denominator exactly one, integer coefficients.
    pub fn is_integer_polynomial(&self) -> bool {
        self.den.is_one() && self.num.is_integral()
    }

    pub fn invert_checked(&self) -> Result<Self> {
        self.invert().ok_or(Error::DivisionByZeroFunction)
    }
}

impl PartialEq for ParamScalar {
    fn eq(&self, other: &Self) -> bool {
        // Reduced canonical form makes equality structural.
        self.num == other.num && self.den == other.den
    }
}

impl core::fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl num_traits::Zero for ParamScalar {
    fn zero() -> Self {
        Self::from_rs(RsPoly::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl num_traits::One for ParamScalar {
    fn one() -> Self {
        Self::from_rs(RsPoly::one())
    }
}

impl core::ops::Add for ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: Self) -> ParamScalar {
        Scalar::ring_add(&self, &rhs)
    }
}

impl core::ops::Mul for ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: Self) -> ParamScalar {
        Scalar::ring_mul(&self, &rhs)
    }
}

impl Scalar for ParamScalar {
    fn from_rational(value: Rational) -> Self {
        Self::from_rs(RsPoly::constant(value))
    }

    fn ring_add(&self, rhs: &Self) -> Self {
        ParamScalar::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    fn ring_sub(&self, rhs: &Self) -> Self {
        ParamScalar::new(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    fn ring_mul(&self, rhs: &Self) -> Self {
        ParamScalar::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    fn ring_neg(&self) -> Self {
        ParamScalar { num: self.num.neg(), den: self.den.clone() }
    }

    fn mul_rational(&self, value: &Rational) -> Self {
        if value.is_zero() {
            return num_traits::Zero::zero();
        }
        ParamScalar { num: self.num.mul_rational(value), den: self.den.clone() }
    }
}

impl FieldScalar for ParamScalar {
    fn invert(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(ParamScalar::new(self.den.clone(), self.num.clone()))
        }
    }
}

/// Polynomial in `t` over the (r, s) parameter field.
pub type ParamPoly = Poly<ParamScalar>;

/// Coefficient-wise evaluation at concrete parameters.
pub fn pp_eval(a: &ParamPoly, r0: &Rational, s0: &Rational) -> Result<Poly<Rational>> {
    let mut out = Vec::with_capacity(a.coeffs().len());
    for c in a.coeffs() {
        out.push(c.eval(r0, s0)?);
    }
    Ok(Poly::new(out))
}

/// Outcome of the `Z[r,s,t]` membership test.
#[derive(Clone, Debug)]
pub struct ZrstCheck {
    /// Degree in t and the offending coefficient, when membership fails.
    pub witness: Option<(usize, ParamScalar)>,
}

impl ZrstCheck {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }

    pub fn describe(&self) -> String {
        match &self.witness {
            None => String::from("in Z[r,s,t]"),
            Some((k, c)) => alloc::format!("coefficient of t^{k} is {c}, not in Z[r,s]"),
        }
    }
}

/// Membership in `Z[r, s, t]`: every coefficient has denominator one and
/// integer numerator coefficients. On failure the lowest offending
/// coefficient is the witness.
pub fn pp_is_in_zrst(a: &ParamPoly) -> ZrstCheck {
    for (k, c) in a.coeffs().iter().enumerate() {
        if !c.is_integer_polynomial() {
            return ZrstCheck { witness: Some((k, c.clone())) };
        }
    }
    ZrstCheck { witness: None }
}
