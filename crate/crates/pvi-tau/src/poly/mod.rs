//! Dense univariate polynomials over an exact coefficient ring.
//!
//! Coefficients are stored ascending in the variable `t`, with the invariant
//! that the last stored coefficient is nonzero (the zero polynomial is the
//! empty list). Everything here is exact; the polynomial in this hierarchy
//! is dense by nature (every degree is populated), so no sparse storage.

mod gcd;
mod resultant;

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{integer_gcd, Integer, Rational};
use crate::scalar::{FieldScalar, Scalar};

/// Products with both factors above this length go through Karatsuba.
/// Coefficients grow fast with the recurrence index, so subquadratic
/// multiplication is what keeps the deep runs in the seconds range.
const KARATSUBA_THRESHOLD: usize = 32;

/// Dense univariate polynomial in `t`, coefficients ascending.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(S::one())
    }

    /// The variable `t`.
    pub fn var() -> Self {
        Poly::new(vec![S::zero(), S::one()])
    }

    pub fn constant(value: S) -> Self {
        Poly::new(vec![value])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == S::one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as degree 0.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    /// Coefficient of `t^k`, zero beyond the stored length.
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> S {
        self.coeffs.last().cloned().unwrap_or_else(S::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> S {
        self.coeff(0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k).ring_add(&rhs.coeff(k)));
        }
        Poly::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k).ring_sub(&rhs.coeff(k)));
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(Scalar::ring_neg).collect(),
        }
    }

    pub fn scalar_mul(&self, factor: &S) -> Self {
        if factor.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|c| c.ring_mul(factor)).collect())
    }

    pub fn mul_rational(&self, factor: &Rational) -> Self {
        if num_traits::Zero::is_zero(factor) {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|c| c.mul_rational(factor)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        Poly::new(mul_slices(&self.coeffs, &rhs.coeffs))
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = Poly::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal derivative d/dt.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.mul_rational(&Rational::from_integer(Integer::from(k))));
        }
        Poly::new(out)
    }

    /// Horner evaluation at a scalar.
    pub fn eval(&self, at: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.ring_mul(at).ring_add(c);
        }
        acc
    }

    /// Substitute another polynomial for `t`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Map coefficients into another scalar ring.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Pseudo-remainder `lc(rhs)^(deg self - deg rhs + 1) * self mod rhs`,
    /// defined over any coefficient ring (no divisions). Requires
    /// `deg self >= deg rhs` and a nonzero divisor.
    pub fn pseudo_rem(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "pseudo_rem by zero");
        let db = rhs.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return self.clone();
        }
        let lead = rhs.leading();
        let mut rem = self.coeffs.clone();
        let mut spare = self.coeffs.len() - db;
        loop {
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
            if rem.len() <= db {
                break;
            }
            let k = rem.len() - 1 - db;
            let top = rem.pop().unwrap();
            for c in rem.iter_mut() {
                *c = c.ring_mul(&lead);
            }
            for (j, bc) in rhs.coeffs[..db].iter().enumerate() {
                rem[k + j] = rem[k + j].ring_sub(&top.ring_mul(bc));
            }
            spare -= 1;
        }
        let mut out = Poly::new(rem);
        for _ in 0..spare {
            out = out.scalar_mul(&lead);
        }
        out
    }
}

/// Remainder of a division that was supposed to be exact.
#[derive(Debug, Clone, PartialEq)]
pub struct NonExactDivision<S: Scalar> {
    pub remainder: Poly<S>,
}

impl<S: FieldScalar> Poly<S> {
    /// Long division: `self = q * rhs + r` with `deg r < deg rhs`.
    ///
    /// Panics on a zero divisor; callers guard.
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "polynomial division by zero");
        let db = rhs.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = rhs
            .leading()
            .invert()
            .expect("leading coefficient of a trimmed polynomial is nonzero");
        let mut rem = self.coeffs.clone();
        let dq = self.coeffs.len() - 1 - db;
        let mut quot = vec![S::zero(); dq + 1];
        for k in (0..=dq).rev() {
            let c = rem[k + db].ring_mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].ring_sub(&c.ring_mul(b));
            }
            quot[k] = c;
        }
        rem.truncate(db);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact division; the remainder must vanish. A nonzero remainder
    /// signals a violated recurrence hypothesis upstream and is returned to
    /// the caller rather than swallowed.
    pub fn exact_div(&self, rhs: &Self) -> core::result::Result<Self, NonExactDivision<S>> {
        let (q, r) = self.div_rem(rhs);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(NonExactDivision { remainder: r })
        }
    }

    /// Scale so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.leading().invert().expect("nonzero leading coefficient");
        self.scalar_mul(&inv)
    }
}

impl Poly<Rational> {
    /// Convenience constructor from ascending integer coefficients.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        Poly::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(Integer::from(c)))
                .collect(),
        )
    }

    /// Exact division wrapped into the crate error type.
    pub fn exact_div_err(&self, rhs: &Self) -> Result<Self> {
        self.exact_div(rhs)
            .map_err(|e| Error::NonExactDivision { remainder: e.remainder })
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// Content and primitive part of an integer-coefficient polynomial.
    ///
    /// The content is the (nonnegative) gcd of the coefficients, zero only
    /// for the zero polynomial. The primitive part keeps the original signs:
    /// `-6t + 12` splits as `(6, -t + 2)`. This is the sign convention used
    /// everywhere downstream.
    pub fn content_primitive(&self) -> Result<(Integer, Poly<Rational>)> {
        for (degree, c) in self.coeffs.iter().enumerate() {
            if !c.denom().is_one() {
                return Err(Error::NonIntegralInput { degree, coefficient: c.clone() });
            }
        }
        let mut content = Integer::zero();
        for c in &self.coeffs {
            content = integer_gcd(&content, c.numer());
            if content.is_one() {
                return Ok((content, self.clone()));
            }
        }
        if content.is_zero() {
            return Ok((Integer::zero(), Poly::zero()));
        }
        let inv = Rational::new(Integer::one(), content.clone());
        Ok((content, self.mul_rational(&inv)))
    }

    /// Least common multiple of the coefficient denominators (one for the
    /// zero polynomial), and the integer coefficients of `lcm * self`.
    pub(crate) fn clear_denominators(&self) -> (Integer, Vec<Integer>) {
        let mut lcm = Integer::one();
        for c in &self.coeffs {
            lcm = num_integer::Integer::lcm(&lcm, c.denom());
        }
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        (lcm, ints)
    }

    /// Largest coefficient magnitude in bits; 0 for the zero polynomial.
    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|c| crate::rational::bit_length(c.numer()).max(crate::rational::bit_length(c.denom())))
            .max()
            .unwrap_or(0)
    }
}

fn mul_slices<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    if a.len().min(b.len()) < KARATSUBA_THRESHOLD {
        mul_schoolbook(a, b)
    } else {
        mul_karatsuba(a, b)
    }
}

fn mul_schoolbook<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let mut out = vec![S::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].ring_add(&ai.ring_mul(bj));
        }
    }
    out
}

fn add_into<S: Scalar>(acc: &mut Vec<S>, src: &[S], offset: usize) {
    if acc.len() < src.len() + offset {
        acc.resize(src.len() + offset, S::zero());
    }
    for (k, c) in src.iter().enumerate() {
        acc[k + offset] = acc[k + offset].ring_add(c);
    }
}

fn mul_karatsuba<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let half = a.len().max(b.len()).div_ceil(2);
    if a.len() <= half || b.len() <= half {
        // Too lopsided to split both; fall back on one level of blocking.
        let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let mut out = vec![S::zero(); a.len() + b.len() - 1];
        let mut offset = 0;
        for chunk in long.chunks(half) {
            add_into(&mut out, &mul_slices(short, chunk), offset);
            offset += half;
        }
        out.truncate(a.len() + b.len() - 1);
        return out;
    }
    let (a0, a1) = a.split_at(half);
    let (b0, b1) = b.split_at(half);
    let low = mul_slices(a0, b0);
    let high = mul_slices(a1, b1);
    let a_sum: Vec<S> = (0..half)
        .map(|k| {
            let hi = a1.get(k).cloned().unwrap_or_else(S::zero);
            a0[k].ring_add(&hi)
        })
        .collect();
    let b_sum: Vec<S> = (0..half)
        .map(|k| {
            let hi = b1.get(k).cloned().unwrap_or_else(S::zero);
            b0[k].ring_add(&hi)
        })
        .collect();
    let mut mid = mul_slices(&trim(a_sum), &trim(b_sum));
    for (k, c) in low.iter().enumerate() {
        if k < mid.len() {
            mid[k] = mid[k].ring_sub(c);
        } else {
            mid.resize(k + 1, S::zero());
            mid[k] = c.ring_neg();
        }
    }
    for (k, c) in high.iter().enumerate() {
        if k < mid.len() {
            mid[k] = mid[k].ring_sub(c);
        } else {
            mid.resize(k + 1, S::zero());
            mid[k] = c.ring_neg();
        }
    }
    let mut out = vec![S::zero(); a.len() + b.len() - 1];
    add_into(&mut out, &low, 0);
    add_into(&mut out, &mid, half);
    add_into(&mut out, &high, 2 * half);
    out.truncate(a.len() + b.len() - 1);
    out
}

fn trim<S: Scalar>(mut v: Vec<S>) -> Vec<S> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Nesting: a polynomial ring is itself a scalar ring, so towers like
/// `Poly<Poly<Poly<Rational>>>` give small multivariate rings for the
/// symbolic cross-checks.
impl<S: Scalar> num_traits::Zero for Poly<S> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<S: Scalar> num_traits::One for Poly<S> {
    fn one() -> Self {
        Poly::constant(S::one())
    }
}

impl<S: Scalar> core::ops::Add for Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: Self) -> Poly<S> {
        Poly::add(&self, &rhs)
    }
}

impl<S: Scalar> core::ops::Mul for Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: Self) -> Poly<S> {
        Poly::mul(&self, &rhs)
    }
}

impl<S: Scalar> Scalar for Poly<S> {
    fn from_rational(value: Rational) -> Self {
        Poly::constant(S::from_rational(value))
    }

    fn ring_add(&self, rhs: &Self) -> Self {
        Poly::add(self, rhs)
    }

    fn ring_sub(&self, rhs: &Self) -> Self {
        Poly::sub(self, rhs)
    }

    fn ring_mul(&self, rhs: &Self) -> Self {
        Poly::mul(self, rhs)
    }

    fn ring_neg(&self) -> Self {
        Poly::neg(self)
    }

    fn mul_rational(&self, value: &Rational) -> Self {
        Poly::mul_rational(self, value)
    }
}

impl<S: Scalar> core::ops::Add for &Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: Self) -> Poly<S> {
        Poly::add(self, rhs)
    }
}

impl<S: Scalar> core::ops::Sub for &Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: Self) -> Poly<S> {
        Poly::sub(self, rhs)
    }
}

impl<S: Scalar> core::ops::Mul for &Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: Self) -> Poly<S> {
        Poly::mul(self, rhs)
    }
}

impl<S: Scalar> core::ops::Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        Poly::neg(self)
    }
}

impl core::fmt::Display for Poly<Rational> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && k != 0;
            if !unit_coeff {
                write!(f, "{}", crate::rational::format_rational(&mag))?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl<S: Scalar> core::fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

pub use gcd::{is_coprime, is_prime_u64};
pub use resultant::{discriminant, resultant};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn p(coeffs: &[i64]) -> Poly<Rational> {
        Poly::from_integers(coeffs)
    }

    #[test]
    fn derivative_power_rule() {
        // d/dt (42t^4 - 84t^3 + 56t^2 - 14t + 1)
        let input = p(&[1, -14, 56, -84, 42]);
        assert_eq!(input.derivative(), p(&[-14, 112, -252, 168]));
    }

    #[test]
    fn product_of_seed_factors() {
        // (2t - 1)(10t^2 - 10t + 1) = 20t^3 - 30t^2 + 12t - 1
        let a = p(&[-1, 2]);
        let b = p(&[1, -10, 10]);
        assert_eq!(&a * &b, p(&[-1, 12, -30, 20]));
    }

    #[test]
    fn evaluate_at_one() {
        assert_eq!(p(&[1, -5, 5]).eval(&rat(1)), rat(1));
        assert_eq!(p(&[1, -5, 5]).eval(&rat(2)), rat(11));
    }

    #[test]
    fn exact_division() {
        // (t^2 - 1) / (t - 1) = t + 1
        assert_eq!(p(&[-1, 0, 1]).exact_div(&p(&[-1, 1])).unwrap(), p(&[1, 1]));
        // Example 2 factorization
        assert_eq!(
            p(&[-1, 12, -30, 20]).exact_div(&p(&[-1, 2])).unwrap(),
            p(&[1, -10, 10])
        );
        // (t^2 + 1) / (t - 1) leaves remainder 2
        let err = p(&[1, 0, 1]).exact_div(&p(&[-1, 1])).unwrap_err();
        assert_eq!(err.remainder, p(&[2]));
    }

    #[test]
    fn division_by_higher_degree() {
        let (q, r) = p(&[1, 1]).div_rem(&p(&[0, 0, 1]));
        assert!(q.is_zero());
        assert_eq!(r, p(&[1, 1]));
    }

    #[test]
    fn content_and_primitive() {
        let (content, prim) = p(&[3, -15, 15]).content_primitive().unwrap();
        assert_eq!(content, Integer::from(3));
        assert_eq!(prim, p(&[1, -5, 5]));

        let (content, prim) = p(&[1, -5, 5]).content_primitive().unwrap();
        assert_eq!(content, Integer::from(1));
        assert_eq!(prim, p(&[1, -5, 5]));

        // -6t + 12: positive content, primitive keeps the sign.
        let (content, prim) = p(&[12, -6]).content_primitive().unwrap();
        assert_eq!(content, Integer::from(6));
        assert_eq!(prim, p(&[2, -1]));

        let (content, prim) = Poly::zero().content_primitive().unwrap();
        assert_eq!(content, Integer::zero());
        assert!(prim.is_zero());

        let half = Poly::new(vec![ratio(1, 2)]);
        assert!(matches!(
            half.content_primitive(),
            Err(Error::NonIntegralInput { degree: 0, .. })
        ));
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        // Deterministic pseudo-random coefficients across the threshold.
        let mut seed: u64 = 0x9e3779b97f4a7c15;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) as i64) - (1 << 30)
        };
        for (la, lb) in [(40usize, 57usize), (65, 82), (90, 107), (40, 150), (33, 200)] {
            let a: Vec<Rational> = (0..la).map(|_| rat(next())).collect();
            let b: Vec<Rational> = (0..lb).map(|_| rat(next())).collect();
            assert_eq!(
                trim(mul_schoolbook(&a, &b)),
                trim(mul_karatsuba(&a, &b)),
                "lengths {la} x {lb}"
            );
        }
    }

    #[test]
    fn compose_substitutes() {
        // (t^2 + 1) ∘ (t - 1) = t^2 - 2t + 2
        let outer = p(&[1, 0, 1]);
        let inner = p(&[-1, 1]);
        assert_eq!(outer.compose(&inner), p(&[2, -2, 1]));
    }

    #[test]
    fn display_is_conventional() {
        use alloc::string::ToString;
        assert_eq!(p(&[1, -5, 5]).to_string(), "5t^2 - 5t + 1");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
        assert_eq!(Poly::<Rational>::zero().to_string(), "0");
        assert_eq!(Poly::new(vec![ratio(1, 2), rat(1)]).to_string(), "t + 1/2");
    }

    #[test]
    fn nested_polynomials_multiply() {
        // (q + t)^2 = q^2 + 2tq + t^2 over Q[t][q]
        let t_inner: Poly<Rational> = Poly::var();
        let q: Poly<Poly<Rational>> = Poly::var();
        let t_lift = Poly::constant(t_inner.clone());
        let sum = q.add(&t_lift);
        let sq = sum.mul(&sum);
        assert_eq!(sq.coeff(0), t_inner.mul(&t_inner));
        assert_eq!(sq.coeff(1), t_inner.mul_rational(&rat(2)));
        assert_eq!(sq.coeff(2), Poly::one());
    }
}
