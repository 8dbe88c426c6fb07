//! Closed-form inputs of the hierarchy: the polynomial family `W(r, m, s)`,
//! the terminating hypergeometric `z`, the `V(a, m, b, n)` family, the seed
//! solution `q`, and the three parameter charts.
//!
//! Binomials with non-integer upper argument are falling factorials
//! throughout, and factorial ratios are Pochhammer symbols, so rational
//! parameter values are first-class. The builders for `W`, `z`, `V` are
//! generic over the coefficient ring: the concrete and the symbolic
//! pipelines share one implementation.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::param::{ParamPoly, ParamScalar};
use crate::poly::Poly;
use crate::ratfunc::{t_times_t_minus_1, RatFunc};
use crate::rational::{factorial, pochhammer, rat, ratio, Rational};
use crate::scalar::Scalar;

/// Seed parameters (r, m, s) of the hypergeometric chart.
#[derive(Clone, PartialEq, Debug)]
pub struct SeedParams {
    pub r: Rational,
    pub m: u32,
    pub s: Rational,
}

impl SeedParams {
    pub fn new(r: Rational, m: u32, s: Rational) -> Self {
        SeedParams { r, m, s }
    }

    pub fn from_integers(r: i64, m: u32, s: i64) -> Self {
        SeedParams::new(rat(r), m, rat(s))
    }

    /// `s` must avoid 0, -1, -2, ... for the hypergeometric seed to exist.
    pub fn s_is_regular(&self) -> bool {
        !(self.s.denom().is_one() && !self.s.numer().is_positive())
    }

    pub fn describe(&self) -> alloc::string::String {
        format!(
            "(r, m, s) = ({}, {}, {})",
            crate::rational::format_rational(&self.r),
            self.m,
            crate::rational::format_rational(&self.s)
        )
    }
}

/// Okamoto parameters b = (b1, b2, b3, b4).
#[derive(Clone, PartialEq, Debug)]
pub struct OkamotoParams {
    pub b1: Rational,
    pub b2: Rational,
    pub b3: Rational,
    pub b4: Rational,
}

impl OkamotoParams {
    pub fn new(b1: Rational, b2: Rational, b3: Rational, b4: Rational) -> Self {
        OkamotoParams { b1, b2, b3, b4 }
    }

    /// Chart for the collapsed formulas: b1 = b3 + 1.
    pub fn is_collapsed_chart(&self) -> bool {
        self.b1 == &self.b3 + rat(1)
    }

    /// b3-shifted parameters (the Bäcklund target chart).
    pub fn shift_b3(&self) -> Self {
        OkamotoParams::new(self.b1.clone(), self.b2.clone(), &self.b3 + rat(1), self.b4.clone())
    }

    /// b4-shifted parameters (the sigma family).
    pub fn shift_b4(&self) -> Self {
        OkamotoParams::new(self.b1.clone(), self.b2.clone(), self.b3.clone(), &self.b4 + rat(1))
    }

    /// Second elementary symmetric function of all four entries.
    pub fn sigma(&self) -> Rational {
        let OkamotoParams { b1, b2, b3, b4 } = self;
        b1 * b2 + b1 * b3 + b1 * b4 + b2 * b3 + b2 * b4 + b3 * b4
    }

    /// Second elementary symmetric function of (b1, b3, b4).
    pub fn sigma_prime(&self) -> Rational {
        let OkamotoParams { b1, b3, b4, .. } = self;
        b1 * b3 + b1 * b4 + b3 * b4
    }

    /// Third elementary symmetric function of all four entries.
    pub fn e3(&self) -> Rational {
        let OkamotoParams { b1, b2, b3, b4 } = self;
        b1 * b2 * b3 + b1 * b2 * b4 + b1 * b3 * b4 + b2 * b3 * b4
    }

    pub fn product(&self) -> Rational {
        &self.b1 * &self.b2 * &self.b3 * &self.b4
    }
}

/// Painlevé VI parameters.
#[derive(Clone, PartialEq, Debug)]
pub struct PviParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta: Rational,
}

impl PviParams {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational, delta: Rational) -> Self {
        PviParams { alpha, beta, gamma, delta }
    }
}

fn half() -> Rational {
    ratio(1, 2)
}

/// Hypergeometric chart -> Okamoto chart:
/// b1 = (m+r+1)/2, b2 = (m-r+2s-1)/2, b3 = (r+m-1)/2, b4 = (m-r-1)/2.
/// Guarantees b1 = b3 + 1.
pub fn chart_okamoto(p: &SeedParams) -> OkamotoParams {
    let m = rat(p.m as i64);
    let b1 = (&m + &p.r + rat(1)) * half();
    let b2 = (&m - &p.r + rat(2) * &p.s - rat(1)) * half();
    let b3 = (&p.r + &m - rat(1)) * half();
    let b4 = (&m - &p.r - rat(1)) * half();
    OkamotoParams::new(b1, b2, b3, b4)
}

/// The sigma family's chart shift: (r, m, s) -> (r-1, m+1, s-1). Matches the
/// b4 -> b4 + 1 shift in the Okamoto chart.
pub fn chart_sigma_shift(p: &SeedParams) -> SeedParams {
    SeedParams::new(&p.r - rat(1), p.m + 1, &p.s - rat(1))
}

/// Inverse of [`chart_sigma_shift`]. The m index must be positive.
pub fn chart_sigma_unshift(p: &SeedParams) -> SeedParams {
    assert!(p.m >= 1, "cannot unshift m = 0");
    SeedParams::new(&p.r + rat(1), p.m - 1, &p.s + rat(1))
}

/// P_VI parameters after n Bäcklund steps (n = 0 is the seed):
/// alpha = (n+r)^2/2, beta = -(m+s)^2/2, gamma = (r-s+1)^2/2,
/// delta = (1-(n+m)^2)/2.
pub fn pvi_params_at(n: u32, p: &SeedParams) -> PviParams {
    let n = rat(n as i64);
    let m = rat(p.m as i64);
    let a = &n + &p.r;
    let b = &m + &p.s;
    let c = &p.r - &p.s + rat(1);
    let d = &n + &m;
    PviParams::new(
        &a * &a * half(),
        -(&b * &b) * half(),
        &c * &c * half(),
        (rat(1) - &d * &d) * half(),
    )
}

/// The same parameters computed through the Okamoto chart of
/// b_n = (b1, b2, b3 + n, b4):
/// alpha = (b3+n-b4)^2/2, beta = -(b1+b2)^2/2, gamma = (b1-b2)^2/2,
/// delta = -(b3+n+b4)(b3+n+b4+2)/2. Must agree with [`pvi_params_at`].
pub fn pvi_params_from_chart(n: u32, b: &OkamotoParams) -> PviParams {
    let n = rat(n as i64);
    let a = &b.b3 + &n - &b.b4;
    let bb = &b.b1 + &b.b2;
    let c = &b.b1 - &b.b2;
    let d = &b.b3 + &n + &b.b4;
    PviParams::new(
        &a * &a * half(),
        -(&bb * &bb) * half(),
        &c * &c * half(),
        -(&d * (&d + rat(2))) * half(),
    )
}

/// Binomial `C(x, k)` with the upper argument in an arbitrary Q-algebra,
/// via the falling factorial.
pub fn binomial_in<S: Scalar>(x: &S, k: usize) -> S {
    let mut acc = S::one();
    for i in 0..k {
        acc = acc.ring_mul(&x.ring_sub(&S::from_i64(i as i64)));
    }
    acc.mul_rational(&Rational::new(1.into(), factorial(k)))
}

/// `W(r, m, s)`: degree-m polynomial with coefficient of `t^(m-j)` equal to
/// `(-1)^j C(r+m+1-j, m-j) C(s+m, j)`. Generic over the coefficient ring.
pub fn w_poly_in<S: Scalar>(r: &S, m: u32, s: &S) -> Poly<S> {
    let m = m as usize;
    let mut coeffs = alloc::vec![S::zero(); m + 1];
    for j in 0..=m {
        let upper = r.ring_add(&S::from_i64((m + 1 - j) as i64));
        let left = binomial_in(&upper, m - j);
        let right = binomial_in(&s.ring_add(&S::from_i64(m as i64)), j);
        let mut term = left.ring_mul(&right);
        if j % 2 == 1 {
            term = term.ring_neg();
        }
        coeffs[m - j] = term;
    }
    Poly::new(coeffs)
}

/// Concrete `W(r, m, s)` over Q.
pub fn w_poly(r: &Rational, m: u32, s: &Rational) -> Poly<Rational> {
    w_poly_in(r, m, s)
}

/// Symbolic `W(r, m, s)` with r, s as indeterminates.
pub fn w_poly_symbolic(m: u32) -> ParamPoly {
    w_poly_in(&ParamScalar::var_r(), m, &ParamScalar::var_s())
}

/// Terminating hypergeometric `z = 2F1(r, -m, s; t)`: the coefficient of
/// `t^j` is `(-1)^j C(r+j-1, j) C(m, j) / C(s+j-1, j)`.
pub fn hypergeom_z(p: &SeedParams) -> Result<Poly<Rational>> {
    let m = p.m as usize;
    let mut coeffs = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let denom = crate::rational::binomial_falling(&(&p.s + rat(j as i64 - 1)), j);
        if denom.is_zero() {
            return Err(Error::ParameterPole(format!(
                "C(s+{}-1, {}) vanishes at s = {}",
                j,
                j,
                crate::rational::format_rational(&p.s)
            )));
        }
        let num = crate::rational::binomial_falling(&(&p.r + rat(j as i64 - 1)), j)
            * Rational::from_integer(crate::rational::binomial_nat(m, j));
        let mut c = num / denom;
        if j % 2 == 1 {
            c = -c;
        }
        coeffs.push(c);
    }
    Ok(Poly::new(coeffs))
}

/// `V(a, m, b, n)`: coefficient of `t^j` is
/// `(-1)^(j+1) C(n+m+a, b-j) C(a+j, j)`, j = 0..b.
pub fn v_poly(a: &Rational, m: u32, b: u32, n: u32) -> Poly<Rational> {
    let b = b as usize;
    let top = a + rat((n + m) as i64);
    let mut coeffs = Vec::with_capacity(b + 1);
    for j in 0..=b {
        let left = crate::rational::binomial_falling(&top, b - j);
        let right = crate::rational::binomial_falling(&(a + rat(j as i64)), j);
        let mut term = left * right;
        if j % 2 == 0 {
            term = -term;
        }
        coeffs.push(term);
    }
    Poly::new(coeffs)
}

/// The seed solution `q = t + t(t-1) z' / (r z)`, reduced.
pub fn seed_q(p: &SeedParams) -> Result<RatFunc> {
    if p.r.is_zero() {
        return Err(Error::ParameterPole(alloc::string::String::from("r = 0 in seed q")));
    }
    let z = hypergeom_z(p)?;
    if z.is_zero() {
        return Err(Error::ParameterPole(alloc::string::String::from("z vanishes identically")));
    }
    let tt1 = t_times_t_minus_1();
    // q = [ t * r z + t(t-1) z' ] / (r z)
    let rz = z.mul_rational(&p.r);
    let num = &Poly::var().mul(&rz) + &tt1.mul(&z.derivative());
    Ok(RatFunc::new(num, rz))
}

/// Residual of the closed-form identity for the seed combination
/// `(s-r-1) z' + (r+m+1)(t z' + r z) = (-1)^m m! r(r+1) / poch(s, m) * W(r,m,s)`.
/// Zero iff the identity holds; both sides are expanded independently.
pub fn lemma1_residual(p: &SeedParams) -> Result<Poly<Rational>> {
    let z = hypergeom_z(p)?;
    let zp = z.derivative();
    let m = p.m as usize;

    let lhs_left = zp.mul_rational(&(&p.s - &p.r - rat(1)));
    let t_zp = Poly::var().mul(&zp);
    let lhs_right = (&t_zp + &z.mul_rational(&p.r)).mul_rational(&(&p.r + rat(m as i64) + rat(1)));
    let lhs = &lhs_left + &lhs_right;

    let poch = pochhammer(&p.s, m);
    if poch.is_zero() {
        return Err(Error::ParameterPole(format!(
            "Pochhammer (s)_m vanishes at s = {}",
            crate::rational::format_rational(&p.s)
        )));
    }
    let mut scale = Rational::from_integer(factorial(m)) * &p.r * (&p.r + rat(1)) / poch;
    if m % 2 == 1 {
        scale = -scale;
    }
    let rhs = w_poly(&p.r, p.m, &p.s).mul_rational(&scale);

    Ok(&lhs - &rhs)
}

/// Residual of the hypergeometric equation
/// `t(1-t) z'' + (s - (r-m+1) t) z' + m r z = 0` for the terminating z.
pub fn hypergeom_ode_residual(p: &SeedParams) -> Result<Poly<Rational>> {
    let z = hypergeom_z(p)?;
    let zp = z.derivative();
    let zpp = zp.derivative();
    let t_one_minus_t = Poly::from_integers(&[0, 1, -1]);
    let coeff_zp = Poly::new(alloc::vec![
        p.s.clone(),
        -(&p.r - rat(p.m as i64) + rat(1)),
    ]);
    let term3 = z.mul_rational(&(rat(p.m as i64) * &p.r));
    Ok(&(&t_one_minus_t.mul(&zpp) + &coeff_zp.mul(&zp)) + &term3)
}

/// Generic-ring k-coefficient of the bilinear recurrences, usable with the
/// symbolic r of the `Z[r,s,t]` experiments; see
/// [`crate::toda::k_coefficient`] for the concrete form.
pub fn k_coefficient_in<S: Scalar>(family: crate::toda::Family, n: u32, r: &S) -> S {
    let n_minus_1 = S::from_i64(n as i64 - 1);
    let shift = match family {
        crate::toda::Family::T => S::from_i64(n as i64),
        crate::toda::Family::S => S::from_i64(n as i64 - 1),
    };
    n_minus_1.ring_mul(&r.ring_add(&shift))
}

/// Dual-route consistency of the parameter charts; zero residuals iff the
/// direct formulas agree with the Okamoto-chart route.
pub fn chart_consistency_residual(n: u32, p: &SeedParams) -> [Rational; 4] {
    let direct = pvi_params_at(n, p);
    let via_chart = pvi_params_from_chart(n, &chart_okamoto(p));
    [
        direct.alpha - via_chart.alpha,
        direct.beta - via_chart.beta,
        direct.gamma - via_chart.gamma,
        direct.delta - via_chart.delta,
    ]
}
