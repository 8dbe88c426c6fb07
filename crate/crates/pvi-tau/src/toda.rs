//! The bilinear Toda engine: generates the polynomial families `T_n`, `S_n`
//! under pluggable normalization schedules, tracking integer contents and
//! recording anomalies as data.
//!
//! The engine never reduces by content unless the strategy says so — the
//! integrality experiments are precisely about which constants appear, so a
//! failed exact division or a degree-law violation terminates or flags the
//! run and is reported with its index, never silently absorbed.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::param::{ParamPoly, ParamScalar};
use crate::poly::{NonExactDivision, Poly};
use crate::rational::{rat, ratio, Integer, Rational};
use crate::scalar::{FieldScalar, Scalar};
use crate::seeds::{chart_sigma_shift, k_coefficient_in, w_poly, w_poly_in, SeedParams};

/// Which of the two bilinear families a run generates. A family-S run at
/// base parameters (r, m, s) seeds from the sigma-shifted chart
/// (r-1, m+1, s-1) and uses the shifted quadratic coefficient.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    T,
    S,
}

impl Family {
    pub fn letter(&self) -> char {
        match self {
            Family::T => 'T',
            Family::S => 'S',
        }
    }
}

/// Coefficient of the quadratic term: `(n-1)(n+r)` for T, `(n-1)(n+r-1)`
/// for S. The S form uses the printed reading; reading it as "(n-1)(n+r')
/// with r' the shifted chart's r" gives the same value since r' = r - 1.
pub fn k_coefficient(family: Family, n: u32, r: &Rational) -> Rational {
    k_coefficient_in(family, n, r)
}

/// Normalizing-constant schedules c(n).
#[derive(Clone, PartialEq, Debug)]
pub enum CnSchedule {
    /// c(n) = 1.
    Unit,
    /// The prime-p schedule: `p^2 (p+n)(p+n-2)` when n = 1 mod p,
    /// `(p+n)(p+n-2)/p` when n = 0 or 2 mod p, `(p+n)(p+n-2)` otherwise.
    Prime(u64),
    /// The power-of-two schedule of the (4, 3, 1) run: `(n+2)(n+4)/8` for
    /// even n, `4(n+2)(n+4)` for n = 3 mod 4, `16(n+2)(n+4)` for n = 1 mod 4.
    Example3,
    /// c(n) = (n + r - 1)^2, the square schedule of the S family.
    SquareShift,
    /// c(n) equal to the quadratic coefficient k(n); this is the
    /// normalization under which the product formula for q_n is stated.
    KMatched,
    /// Explicit values for n = 2, 3, ...; generation past the end of the
    /// table is an anomaly.
    Table(Vec<Rational>),
}

impl CnSchedule {
    /// The scheduled constant at step n (n >= 2). `family` and `r` supply
    /// the context for the r-dependent schedules.
    pub fn value(&self, n: u32, family: Family, r: &Rational) -> Option<Rational> {
        let n_i = n as i64;
        match self {
            CnSchedule::Unit => Some(Rational::one()),
            CnSchedule::Prime(p) => {
                let p_i = *p as i64;
                let base = rat(p_i + n_i) * rat(p_i + n_i - 2);
                Some(match n % (*p as u32) {
                    1 => rat(p_i * p_i) * base,
                    0 | 2 => base / rat(p_i),
                    _ => base,
                })
            }
            CnSchedule::Example3 => {
                let base = rat(n_i + 2) * rat(n_i + 4);
                Some(match n % 4 {
                    0 | 2 => base / rat(8),
                    3 => rat(4) * base,
                    _ => rat(16) * base,
                })
            }
            CnSchedule::SquareShift => {
                let root = rat(n_i - 1) + r;
                Some(&root * &root)
            }
            CnSchedule::KMatched => Some(k_coefficient(family, n, r)),
            CnSchedule::Table(values) => values.get(n as usize - 2).cloned(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            CnSchedule::Unit => String::from("unit"),
            CnSchedule::Prime(p) => format!("prime:{p}"),
            CnSchedule::Example3 => String::from("example3"),
            CnSchedule::SquareShift => String::from("square-shift"),
            CnSchedule::KMatched => String::from("k-matched"),
            CnSchedule::Table(values) => {
                let items: Vec<String> =
                    values.iter().map(crate::rational::format_rational).collect();
                format!("table:{}", items.join(","))
            }
        }
    }

    /// Seed scaling conventionally paired with the schedule: the prime-p
    /// runs start from W/p, everything else from the unscaled seed.
    pub fn default_seed_scale(&self) -> Rational {
        match self {
            CnSchedule::Prime(p) => ratio(1, *p as i64),
            _ => Rational::one(),
        }
    }
}

/// How each new term is normalized.
#[derive(Clone, PartialEq, Debug)]
pub enum NormalizationStrategy {
    /// c(n) = 1, keep whatever the bilinear form produces.
    Raw,
    /// Divide by the scheduled constant.
    Schedule(CnSchedule),
    /// Divide each new term by its integer content and record it; only
    /// meaningful while coefficients stay integral.
    AutoPrimitive,
}

impl NormalizationStrategy {
    pub fn describe(&self) -> String {
        match self {
            NormalizationStrategy::Raw => String::from("raw"),
            NormalizationStrategy::Schedule(s) => format!("schedule({})", s.describe()),
            NormalizationStrategy::AutoPrimitive => String::from("auto-primitive"),
        }
    }
}

/// Events recorded while generating a sequence. These are data, not errors:
/// the experiments are about finding where claims fail.
#[derive(Clone, PartialEq, Debug)]
pub enum Anomaly {
    /// The bilinear step at index n was not an exact division; the run stops.
    NonExactDivision { n: u32, remainder: Poly<Rational> },
    /// deg T_n differs from the degree law.
    DegreeViolation { n: u32, expected: usize, actual: Option<usize> },
    /// A step produced non-integer coefficients under an integrality claim.
    NonIntegral { n: u32 },
    /// The explicit table ran out before the requested length.
    ScheduleExhausted { n: u32 },
    /// A zero polynomial appeared, so the recurrence cannot continue.
    ZeroPolynomial { n: u32 },
}

impl Anomaly {
    pub fn index(&self) -> u32 {
        match self {
            Anomaly::NonExactDivision { n, .. }
            | Anomaly::DegreeViolation { n, .. }
            | Anomaly::NonIntegral { n }
            | Anomaly::ScheduleExhausted { n }
            | Anomaly::ZeroPolynomial { n } => *n,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Anomaly::NonExactDivision { n, remainder } => {
                format!("step {n}: division not exact, remainder {remainder}")
            }
            Anomaly::DegreeViolation { n, expected, actual } => match actual {
                Some(actual) => format!("T_{n}: degree {actual}, degree law expects {expected}"),
                None => format!("T_{n}: zero polynomial, degree law expects {expected}"),
            },
            Anomaly::NonIntegral { n } => format!("T_{n}: non-integral coefficients"),
            Anomaly::ScheduleExhausted { n } => format!("step {n}: schedule table exhausted"),
            Anomaly::ZeroPolynomial { n } => format!("T_{n}: zero polynomial"),
        }
    }
}

/// A generated family with its bookkeeping. `poly(n)` is 1-indexed the way
/// the recurrence is written; `poly(1)` is the constant 1.
#[derive(Clone, PartialEq, Debug)]
pub struct TauSequence {
    pub family: Family,
    pub params: SeedParams,
    pub strategy: NormalizationStrategy,
    pub seed_scale: Rational,
    polys: Vec<Poly<Rational>>,
    contents: Vec<Option<Integer>>,
    pub anomalies: Vec<Anomaly>,
}

impl TauSequence {
    /// Rebuild a clean (anomaly-free) sequence from stored parts, e.g. a
    /// cache document. The basic shape invariants are re-checked; the
    /// mathematical content is trusted to the store.
    pub fn from_parts(
        family: Family,
        params: SeedParams,
        strategy: NormalizationStrategy,
        seed_scale: Rational,
        polys: Vec<Poly<Rational>>,
        contents: Vec<Option<Integer>>,
    ) -> Result<Self> {
        if polys.len() < 2 {
            return Err(Error::InvalidInput(String::from("sequence needs at least two entries")));
        }
        if !polys[0].is_one() {
            return Err(Error::InvalidInput(String::from("first entry must be the constant 1")));
        }
        if contents.len() != polys.len() {
            return Err(Error::InvalidInput(String::from("contents length mismatch")));
        }
        Ok(TauSequence {
            family,
            params,
            strategy,
            seed_scale,
            polys,
            contents,
            anomalies: Vec::new(),
        })
    }

    /// Number of generated polynomials (highest index n).
    pub fn len(&self) -> u32 {
        self.polys.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn poly(&self, n: u32) -> Result<&Poly<Rational>> {
        if n == 0 || n as usize > self.polys.len() {
            return Err(Error::SequenceTooShort { wanted: n as usize, len: self.polys.len() });
        }
        Ok(&self.polys[n as usize - 1])
    }

    pub fn polys(&self) -> &[Poly<Rational>] {
        &self.polys
    }

    pub fn contents(&self) -> &[Option<Integer>] {
        &self.contents
    }

    /// Per-step integer contents for the steps where coefficients are
    /// integral; the "best possible" claim holds iff every entry is 1.
    pub fn content_trace(&self) -> Vec<(u32, Integer)> {
        self.contents
            .iter()
            .enumerate()
            .skip(1)
            .filter_map(|(i, c)| c.clone().map(|c| (i as u32 + 1, c)))
            .collect()
    }

    /// True when generation reached the requested length with no anomalies.
    pub fn clean(&self) -> bool {
        self.anomalies.is_empty()
    }

    fn expected_degree(&self, n: u32) -> usize {
        let width = match self.family {
            Family::T => self.params.m as usize,
            Family::S => self.params.m as usize + 1,
        };
        width * (n as usize - 1)
    }
}

/// The bilinear right-hand side
/// `(t^2 - t)(T T'' - T'^2) + (2t - 1) T T' + k T^2`, over any scalar ring.
pub fn toda_rhs<S: Scalar>(tn: &Poly<S>, k: &S) -> Poly<S> {
    let d1 = tn.derivative();
    let d2 = d1.derivative();
    let tt1: Poly<S> = Poly::new(alloc::vec![S::zero(), S::one().ring_neg(), S::one()]);
    let two_t_minus_1: Poly<S> = Poly::new(alloc::vec![S::one().ring_neg(), S::from_i64(2)]);
    let wronskian = tn.mul(&d2).sub(&d1.mul(&d1));
    tt1.mul(&wronskian)
        .add(&two_t_minus_1.mul(&tn.mul(&d1)))
        .add(&tn.mul(tn).scalar_mul(k))
}

/// One bilinear step: `toda_rhs(cur, k) / (c * prev)`, which must divide
/// exactly.
pub fn toda_step<S: FieldScalar>(
    prev: &Poly<S>,
    cur: &Poly<S>,
    k: &S,
    c: &S,
) -> core::result::Result<Poly<S>, NonExactDivision<S>> {
    assert!(!prev.is_zero(), "toda_step with zero previous term");
    assert!(!c.is_zero(), "toda_step with zero normalizing constant");
    toda_rhs(cur, k).exact_div(&prev.scalar_mul(c))
}

/// Generate a family through index `n_max` (so `n_max` polynomials,
/// starting from T_1 = 1). The seed is `seed_scale * W` of the family's
/// chart. Anomalies are recorded on the sequence; only invalid requests are
/// hard errors.
pub fn generate_sequence(
    family: Family,
    params: &SeedParams,
    n_max: u32,
    strategy: NormalizationStrategy,
    seed_scale: &Rational,
) -> Result<TauSequence> {
    if n_max < 2 {
        return Err(Error::InvalidInput(String::from("sequence length must be at least 2")));
    }
    if seed_scale.is_zero() {
        return Err(Error::InvalidInput(String::from("seed scale must be nonzero")));
    }
    let seed_chart = match family {
        Family::T => params.clone(),
        Family::S => chart_sigma_shift(params),
    };
    let seed = w_poly(&seed_chart.r, seed_chart.m, &seed_chart.s).mul_rational(seed_scale);
    let mut seq = TauSequence {
        family,
        params: params.clone(),
        strategy,
        seed_scale: seed_scale.clone(),
        polys: alloc::vec![Poly::one(), seed],
        contents: Vec::new(),
        anomalies: Vec::new(),
    };
    record_content(&mut seq.contents, &seq.polys[0]);
    record_content(&mut seq.contents, &seq.polys[1]);
    if seq.polys[1].degree() != Some(seq.expected_degree(2)) {
        seq.anomalies.push(Anomaly::DegreeViolation {
            n: 2,
            expected: seq.expected_degree(2),
            actual: seq.polys[1].degree(),
        });
    }

    while (seq.polys.len() as u32) < n_max {
        let n = seq.polys.len() as u32; // creating T_{n+1} from step index n
        let k = k_coefficient(family, n, &params.r);
        let c = match &seq.strategy {
            NormalizationStrategy::Raw | NormalizationStrategy::AutoPrimitive => Rational::one(),
            NormalizationStrategy::Schedule(schedule) => {
                match schedule.value(n, family, &params.r) {
                    Some(c) => c,
                    None => {
                        seq.anomalies.push(Anomaly::ScheduleExhausted { n });
                        break;
                    }
                }
            }
        };
        if c.is_zero() {
            return Err(Error::InvalidInput(format!("schedule constant c({n}) is zero")));
        }
        let prev = &seq.polys[n as usize - 2];
        let cur = &seq.polys[n as usize - 1];
        if prev.is_zero() {
            seq.anomalies.push(Anomaly::ZeroPolynomial { n });
            break;
        }
        let mut next = match toda_step(prev, cur, &k, &c) {
            Ok(next) => next,
            Err(err) => {
                seq.anomalies.push(Anomaly::NonExactDivision { n, remainder: err.remainder });
                break;
            }
        };
        if seq.strategy == NormalizationStrategy::AutoPrimitive {
            match next.content_primitive() {
                Ok((content, primitive)) => {
                    seq.contents.push(Some(content));
                    next = primitive;
                }
                Err(_) => {
                    seq.anomalies.push(Anomaly::NonIntegral { n: n + 1 });
                    seq.contents.push(None);
                }
            }
        } else {
            record_content(&mut seq.contents, &next);
        }
        let expected = seq.expected_degree(n + 1);
        if next.degree() != Some(expected) {
            seq.anomalies.push(Anomaly::DegreeViolation {
                n: n + 1,
                expected,
                actual: next.degree(),
            });
        }
        seq.polys.push(next);
    }
    Ok(seq)
}

fn record_content(contents: &mut Vec<Option<Integer>>, poly: &Poly<Rational>) {
    contents.push(poly.content_primitive().ok().map(|(c, _)| c));
}

/// Anomalies of a generic (symbolic r, s) run.
#[derive(Clone, Debug)]
pub enum GenericAnomaly {
    NonExactDivision { n: u32 },
}

/// Generic Toda run over the (r, s) parameter field with c(n) = k(n) and the
/// factorial-scaled seed `m! W(r, m, s)` (T) or `(m+1)! W(r-1, m+1, s-1)`
/// (S). Coefficient swell binds this to desk-scale m and n.
pub fn generate_generic(
    family: Family,
    m: u32,
    n_max: u32,
) -> (Vec<ParamPoly>, Vec<GenericAnomaly>) {
    let r = ParamScalar::var_r();
    let s = ParamScalar::var_s();
    let (seed, seed_m) = match family {
        Family::T => (w_poly_in(&r, m, &s), m),
        Family::S => {
            let rm1 = r.ring_sub(&ParamScalar::one());
            let sm1 = s.ring_sub(&ParamScalar::one());
            (w_poly_in(&rm1, m + 1, &sm1), m + 1)
        }
    };
    let seed = seed.mul_rational(&Rational::from_integer(crate::rational::factorial(
        seed_m as usize,
    )));
    let mut polys: Vec<ParamPoly> = alloc::vec![Poly::one(), seed];
    let mut anomalies = Vec::new();
    while (polys.len() as u32) < n_max {
        let n = polys.len() as u32;
        let k = k_coefficient_in::<ParamScalar>(family, n, &r);
        let c = k.clone(); // the log-derivative form normalizes by k(n)
        let prev = &polys[n as usize - 2];
        let cur = &polys[n as usize - 1];
        match toda_step(prev, cur, &k, &c) {
            Ok(next) => polys.push(next),
            Err(_) => {
                anomalies.push(GenericAnomaly::NonExactDivision { n });
                break;
            }
        }
    }
    (polys, anomalies)
}

/// Residual of the additive-constant identity linking the sigma-form Toda
/// equation `d/dt(t(t-1) d/dt log tau_n) + (b1+b3+n)(b3+b4+n) = c tau+ tau- / tau^2`
/// to the polynomial recurrence: subtracting the second difference of the
/// ansatz exponents from the chart constant must leave exactly (n-1)(n+r).
/// Zero for every n and chart, which is what reconciles the two printed
/// forms of the recurrence.
pub fn toda_sigma_constant_residual(n: u32, params: &SeedParams) -> Rational {
    let b = crate::seeds::chart_okamoto(params);
    let n_r = rat(n as i64);
    let chart_constant = (&b.b1 + &b.b3 + &n_r) * (&b.b3 + &b.b4 + &n_r);
    let m = rat(params.m as i64);
    // ansatz exponent sum E + F at index n
    let e = &m * (&m + &params.s + &n_r - rat(1));
    let f = &m * (&n_r + &params.r - &params.s);
    let intro_constant = (&n_r - rat(1)) * (&n_r + &params.r);
    chart_constant - e - f - intro_constant
}
