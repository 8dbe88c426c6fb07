//! Batch experiments for the number-theoretic conjectures: integrality and
//! primitivity of the scheduled recurrences, integrality over `Z[r,s,t]` of
//! the generic runs, and the discriminant factorization model.
//!
//! Conjecture outcomes are report data with explicit pass/fail/flagged
//! states; the library never asserts a conjecture as an internal invariant.
//! Identical inputs produce identical reports.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::param::{pp_eval, pp_is_in_zrst};
use crate::poly::discriminant;
use crate::rational::{format_rational, rat, ratio, Rational};
use crate::seeds::SeedParams;
use crate::toda::{
    generate_generic, generate_sequence, CnSchedule, Family, NormalizationStrategy, TauSequence,
};

/// Status of one conjecture instance.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InstanceStatus {
    Pass,
    Fail,
    /// The instance ran but its meaning is interpretive (a typo-reading
    /// resolution, a recorded constant); it never fails a run by itself.
    Flagged,
}

impl InstanceStatus {
    pub fn label(&self) -> &'static str {
        match self {
            InstanceStatus::Pass => "PASS",
            InstanceStatus::Fail => "FAIL",
            InstanceStatus::Flagged => "FLAGGED",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConjectureInstance {
    pub label: String,
    pub status: InstanceStatus,
    pub detail: String,
}

impl ConjectureInstance {
    fn pass(label: String, detail: String) -> Self {
        ConjectureInstance { label, status: InstanceStatus::Pass, detail }
    }

    fn fail(label: String, detail: String) -> Self {
        ConjectureInstance { label, status: InstanceStatus::Fail, detail }
    }

    fn flagged(label: String, detail: String) -> Self {
        ConjectureInstance { label, status: InstanceStatus::Flagged, detail }
    }
}

/// A deterministic, reproducible experiment report.
#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub id: String,
    pub instances: Vec<ConjectureInstance>,
}

impl ConjectureReport {
    pub fn all_passed(&self) -> bool {
        !self.instances.iter().any(|i| i.status == InstanceStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConjectureInstance> {
        self.instances.iter().filter(|i| i.status == InstanceStatus::Fail)
    }
}

/// Integrality + primitivity audit of a generated sequence: every step must
/// have integer coefficients with content one.
fn audit_integral_primitive(report: &mut ConjectureReport, seq: &TauSequence) {
    let family = seq.family.letter();
    for n in 2..=seq.len() {
        let poly = seq.poly(n).expect("in range");
        let label = format!("{family}_{n}");
        match poly.content_primitive() {
            Err(_) => report.instances.push(ConjectureInstance::fail(
                label,
                String::from("non-integer coefficients"),
            )),
            Ok((content, _)) => {
                if content.is_one() {
                    report
                        .instances
                        .push(ConjectureInstance::pass(label, String::from("integral, content 1")));
                } else {
                    report.instances.push(ConjectureInstance::fail(
                        label,
                        format!("integral but content {content}"),
                    ));
                }
            }
        }
    }
    for anomaly in &seq.anomalies {
        report
            .instances
            .push(ConjectureInstance::fail(format!("anomaly@{}", anomaly.index()), anomaly.describe()));
    }
}

/// The prime-p experiment: seed `W(p, p-1, 1)/p`, prime-p schedule, and the
/// claim that every `T_n` is integral and primitive.
pub fn conj4_check(p: u64, n_max: u32) -> Result<ConjectureReport> {
    if p < 3 || !crate::poly::is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("p = {p} is not a prime >= 3")));
    }
    if n_max < 2 {
        return Err(Error::InvalidInput(String::from("need N >= 2")));
    }
    let params = SeedParams::from_integers(p as i64, p as u32 - 1, 1);
    let schedule = CnSchedule::Prime(p);
    let seed_scale = schedule.default_seed_scale();
    let seq = generate_sequence(
        Family::T,
        &params,
        n_max,
        NormalizationStrategy::Schedule(schedule),
        &seed_scale,
    )?;
    let mut report = ConjectureReport { id: format!("c4:p={p}:N={n_max}"), instances: Vec::new() };
    audit_integral_primitive(&mut report, &seq);
    Ok(report)
}

/// Printed seeds of the worked examples, asserted before any recurrence
/// step runs (golden values).
fn golden_seed_instance(
    seq: &TauSequence,
    expected: &crate::poly::Poly<Rational>,
    label: &str,
) -> ConjectureInstance {
    let seed = seq.poly(2).expect("seed exists");
    if seed == expected {
        ConjectureInstance::pass(String::from(label), format!("seed = {expected}"))
    } else {
        ConjectureInstance::fail(String::from(label), format!("seed {seed} != printed {expected}"))
    }
}

/// The three worked examples: (3,2,1) with the prime-3 and square schedules
/// (both families), (4,3,1) with the power-of-two schedule, (5,4,1) with the
/// prime-5 schedule.
pub fn examples_check(which: u8, n_max: u32) -> Result<ConjectureReport> {
    if n_max < 2 {
        return Err(Error::InvalidInput(String::from("need N >= 2")));
    }
    let mut report =
        ConjectureReport { id: format!("example{which}:N={n_max}"), instances: Vec::new() };
    match which {
        2 => {
            let params = SeedParams::from_integers(3, 2, 1);
            let t_seq = generate_sequence(
                Family::T,
                &params,
                n_max,
                NormalizationStrategy::Schedule(CnSchedule::Prime(3)),
                &ratio(1, 3),
            )?;
            report.instances.push(golden_seed_instance(
                &t_seq,
                &crate::poly::Poly::from_integers(&[1, -5, 5]),
                "T_2=W(3,2,1)/3",
            ));
            audit_integral_primitive(&mut report, &t_seq);
            let s_seq = generate_sequence(
                Family::S,
                &params,
                n_max,
                NormalizationStrategy::Schedule(CnSchedule::SquareShift),
                &Rational::one(),
            )?;
            report.instances.push(golden_seed_instance(
                &s_seq,
                &crate::poly::Poly::from_integers(&[-1, 12, -30, 20]),
                "S_2=W(2,3,0)",
            ));
            audit_integral_primitive(&mut report, &s_seq);
        }
        3 => {
            let params = SeedParams::from_integers(4, 3, 1);
            let t_seq = generate_sequence(
                Family::T,
                &params,
                n_max,
                NormalizationStrategy::Schedule(CnSchedule::Example3),
                &ratio(1, 4),
            )?;
            report.instances.push(golden_seed_instance(
                &t_seq,
                &crate::poly::Poly::from_integers(&[-1, 9, -21, 14]),
                "T_2=W(4,3,1)/4",
            ));
            audit_integral_primitive(&mut report, &t_seq);
        }
        4 => {
            let params = SeedParams::from_integers(5, 4, 1);
            let t_seq = generate_sequence(
                Family::T,
                &params,
                n_max,
                NormalizationStrategy::Schedule(CnSchedule::Prime(5)),
                &ratio(1, 5),
            )?;
            report.instances.push(golden_seed_instance(
                &t_seq,
                &crate::poly::Poly::from_integers(&[1, -14, 56, -84, 42]),
                "T_2=W(5,4,1)/5",
            ));
            audit_integral_primitive(&mut report, &t_seq);
        }
        other => {
            return Err(Error::InvalidInput(format!("no example {other}; pick 2, 3 or 4")));
        }
    }
    Ok(report)
}

/// The `Z[r,s,t]` integrality experiment: generic Toda runs from the
/// factorial-scaled seeds, with membership checked per step and a
/// specialization cross-check against the concrete pipeline.
pub fn conj3_check(m: u32, n_max: u32) -> Result<ConjectureReport> {
    if !(1..=3).contains(&m) || !(2..=5).contains(&n_max) {
        // coefficient swell binds the generic pipeline to desk scale
        return Err(Error::InvalidInput(format!(
            "generic run capped at m <= 3, N <= 5 (asked m = {m}, N = {n_max})"
        )));
    }
    let mut report = ConjectureReport { id: format!("c3:m={m}:N={n_max}"), instances: Vec::new() };
    for family in [Family::T, Family::S] {
        let (polys, anomalies) = generate_generic(family, m, n_max);
        for (i, poly) in polys.iter().enumerate().skip(1) {
            let n = i + 1;
            let check = pp_is_in_zrst(poly);
            let label = format!("{}_{n} in Z[r,s,t]", family.letter());
            if check.holds() {
                report.instances.push(ConjectureInstance::pass(label, String::from("integral")));
            } else {
                report.instances.push(ConjectureInstance::fail(label, check.describe()));
            }
        }
        for anomaly in anomalies {
            let crate::toda::GenericAnomaly::NonExactDivision { n } = anomaly;
            report.instances.push(ConjectureInstance::fail(
                format!("{}-generic anomaly", family.letter()),
                format!("non-exact division at step {n}"),
            ));
        }
        // specialization cross-check at (r, s) = (3, 1)
        let scale = Rational::from_integer(crate::rational::factorial(match family {
            Family::T => m as usize,
            Family::S => m as usize + 1,
        }));
        let concrete = generate_sequence(
            family,
            &SeedParams::from_integers(3, m, 1),
            n_max,
            NormalizationStrategy::Schedule(CnSchedule::KMatched),
            &scale,
        )?;
        let (generic, _) = generate_generic(family, m, n_max);
        let mut consistent = true;
        for n in 1..=n_max.min(generic.len() as u32) {
            let specialized = pp_eval(&generic[n as usize - 1], &rat(3), &rat(1))?;
            if &specialized != concrete.poly(n)? {
                consistent = false;
            }
        }
        let label = format!("{}-specialization (r,s)=(3,1)", family.letter());
        report.instances.push(if consistent {
            ConjectureInstance::pass(label, String::from("generic run specializes to concrete run"))
        } else {
            ConjectureInstance::fail(label, String::from("specialization mismatch"))
        });
    }
    Ok(report)
}

/// Reading of the suspected typo in the third product of the discriminant
/// model.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Conj2Reading {
    /// `(s + m + m - 1 - j)` as printed.
    MPrinted,
    /// `(s + n + m - 1 - j)`, the symmetric variant.
    NSymmetric,
}

impl Conj2Reading {
    pub fn label(&self) -> &'static str {
        match self {
            Conj2Reading::MPrinted => "printed (s+2m-1-j)",
            Conj2Reading::NSymmetric => "symmetric (s+n+m-1-j)",
        }
    }
}

/// The discriminant factorization model: three factor families with
/// exponents `h(k, j) = k j^2 - (j^3 + 2j)/3`.
#[derive(Clone, Debug)]
pub struct DiscriminantModel {
    pub n: u32,
    pub m: u32,
    pub reading: Conj2Reading,
}

/// One linear factor `c0 + cr r + cs s` with its exponent.
#[derive(Clone, Debug)]
pub struct ModelFactor {
    pub c0: i64,
    pub cr: i64,
    pub cs: i64,
    pub exponent: u64,
}

impl ModelFactor {
    fn eval(&self, r0: &Rational, s0: &Rational) -> Rational {
        rat(self.c0) + rat(self.cr) * r0 + rat(self.cs) * s0
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.cr != 0 {
            parts.push(if self.cr == 1 { String::from("r") } else { format!("{}r", self.cr) });
        }
        if self.cs != 0 {
            parts.push(if self.cs == 1 { String::from("s") } else { format!("{}s", self.cs) });
        }
        if self.c0 != 0 || parts.is_empty() {
            parts.push(format!("{}", self.c0));
        }
        format!("({})^{}", parts.join("+").replace("+-", "-"), self.exponent)
    }
}

/// `h(k, j) = k j^2 - (j^3 + 2j)/3`, always an integer; the model is only
/// valid where it is nonnegative.
pub fn h_exponent(k: i64, j: i64) -> i64 {
    k * j * j - (j * j * j + 2 * j) / 3
}

impl DiscriminantModel {
    pub fn new(n: u32, m: u32, reading: Conj2Reading) -> Result<Self> {
        if n < 2 || m < 1 {
            return Err(Error::InvalidInput(String::from("model needs n >= 2, m >= 1")));
        }
        let model = DiscriminantModel { n, m, reading };
        // exponents must be nonnegative in the used ranges
        for (k, j) in model.exponent_args() {
            if h_exponent(k, j) < 0 {
                return Err(Error::InvalidInput(format!(
                    "negative exponent h({k},{j}) in the model ranges"
                )));
            }
        }
        Ok(model)
    }

    fn exponent_args(&self) -> Vec<(i64, i64)> {
        let (n, m) = (self.n as i64, self.m as i64);
        let mut args = Vec::new();
        for j in 1..m {
            args.push((n - 1, j));
            args.push((m, j));
        }
        for j in m..n {
            args.push((j, m));
        }
        args
    }

    /// The linear factors with exponents, in deterministic order.
    pub fn factors(&self) -> Vec<ModelFactor> {
        let (n, m) = (self.n as i64, self.m as i64);
        let mut out = Vec::new();
        for j in 1..m {
            let e = h_exponent(n - 1, j) as u64;
            out.push(ModelFactor { c0: n + m - j, cr: 1, cs: 0, exponent: e });
            out.push(ModelFactor { c0: j, cr: 0, cs: 1, exponent: e });
            out.push(ModelFactor { c0: m - 1 - j, cr: -1, cs: 1, exponent: e });
        }
        for j in 1..m {
            let e = h_exponent(m, j) as u64;
            out.push(ModelFactor { c0: 1 + j, cr: 1, cs: 0, exponent: e });
            out.push(ModelFactor { c0: n + m - 1 - j, cr: 0, cs: 1, exponent: e });
            out.push(ModelFactor { c0: -n + j, cr: -1, cs: 1, exponent: e });
        }
        for j in m..n {
            let e = h_exponent(j, m) as u64;
            let second_c0 = match self.reading {
                Conj2Reading::MPrinted => m + m - 1 - j,
                Conj2Reading::NSymmetric => n + m - 1 - j,
            };
            out.push(ModelFactor { c0: 1 + j, cr: 1, cs: 0, exponent: e });
            out.push(ModelFactor { c0: second_c0, cr: 0, cs: 1, exponent: e });
            out.push(ModelFactor { c0: -n + j, cr: -1, cs: 1, exponent: e });
        }
        out
    }

    /// Total degree of the model product (the conjecture states
    /// `3 * C(m(n-1), 2)`).
    pub fn degree(&self) -> u64 {
        self.factors().iter().map(|f| f.exponent).sum()
    }

    /// Evaluate the product at a sample; a vanishing factor is an error
    /// because the ratio there is meaningless.
    pub fn eval(&self, r0: &Rational, s0: &Rational) -> Result<Rational> {
        let mut acc = Rational::one();
        for f in self.factors() {
            if f.exponent == 0 {
                continue;
            }
            let v = f.eval(r0, s0);
            if v.is_zero() {
                return Err(Error::SampleAtFactorZero {
                    r: r0.clone(),
                    s: s0.clone(),
                    factor: f.describe(),
                });
            }
            for _ in 0..f.exponent {
                acc *= &v;
            }
        }
        Ok(acc)
    }
}

/// `T_n(r, m, s)` under the product-formula normalization (c(n) = k(n),
/// seed W unscaled), the definition the discriminant conjecture points at.
fn conj2_tn(n: u32, m: u32, r0: &Rational, s0: &Rational) -> Result<crate::poly::Poly<Rational>> {
    let seq = generate_sequence(
        Family::T,
        &SeedParams::new(r0.clone(), m, s0.clone()),
        n.max(2),
        NormalizationStrategy::Schedule(CnSchedule::KMatched),
        &Rational::one(),
    )?;
    if !seq.clean() {
        return Err(Error::InvalidInput(format!(
            "sequence anomaly at (r, s) = ({}, {}): {}",
            format_rational(r0),
            format_rational(s0),
            seq.anomalies[0].describe()
        )));
    }
    Ok(seq.poly(n)?.clone())
}

/// Outcome of the ratio-constancy and degree experiments for one (n, m).
#[derive(Clone, Debug)]
pub struct Conj2Report {
    pub id: String,
    /// Per-reading: the sample ratios disc/model and whether they all agree.
    pub printed_constant: Option<Rational>,
    pub symmetric_constant: Option<Rational>,
    /// Estimated total (r, s)-degree of the discriminant along a generic
    /// line, and the stated degree 3 C(m(n-1), 2).
    pub degree_estimate: Option<u64>,
    pub stated_degree: u64,
    pub instances: Vec<ConjectureInstance>,
}

impl Conj2Report {
    pub fn winning_reading(&self) -> Option<Conj2Reading> {
        match (&self.printed_constant, &self.symmetric_constant) {
            (Some(_), None) => Some(Conj2Reading::MPrinted),
            (None, Some(_)) => Some(Conj2Reading::NSymmetric),
            // both constant can happen when the readings coincide (j range
            // empty or n = m cancellation); prefer the printed one
            (Some(_), Some(_)) => Some(Conj2Reading::MPrinted),
            (None, None) => None,
        }
    }

    pub fn all_passed(&self) -> bool {
        !self.instances.iter().any(|i| i.status == InstanceStatus::Fail)
    }
}

/// Ratio-constancy across samples for both typo readings, plus the degree
/// interpolation along a generic line. Exact rationals throughout; no
/// tolerance anywhere.
pub fn conj2_check(n: u32, m: u32, samples: &[(Rational, Rational)]) -> Result<Conj2Report> {
    if samples.len() < 2 {
        return Err(Error::InvalidInput(String::from("need at least 2 samples")));
    }
    let mut report = Conj2Report {
        id: format!("c2:n={n}:m={m}:samples={}", samples.len()),
        printed_constant: None,
        symmetric_constant: None,
        degree_estimate: None,
        stated_degree: 0,
        instances: Vec::new(),
    };

    // discriminants at the samples
    let mut discs = Vec::new();
    for (r0, s0) in samples {
        let tn = conj2_tn(n, m, r0, s0)?;
        let d = discriminant(&tn)?;
        if d.is_zero() {
            return Err(Error::InvalidInput(format!(
                "discriminant vanishes at sample ({}, {})",
                format_rational(r0),
                format_rational(s0)
            )));
        }
        discs.push(d);
    }

    for reading in [Conj2Reading::MPrinted, Conj2Reading::NSymmetric] {
        let model = DiscriminantModel::new(n, m, reading)?;
        let binom: u64 = crate::rational::binomial_nat((m * (n - 1)) as usize, 2)
            .try_into()
            .map_err(|_| Error::InvalidInput(String::from("stated degree overflows")))?;
        report.stated_degree = 3 * binom;
        let mut ratios = Vec::new();
        for ((r0, s0), disc) in samples.iter().zip(&discs) {
            let mv = model.eval(r0, s0)?;
            ratios.push(disc / mv);
        }
        let constant = ratios.windows(2).all(|w| w[0] == w[1]);
        let label = format!("ratio-constancy[{}]", reading.label());
        if constant {
            let c = ratios[0].clone();
            report.instances.push(ConjectureInstance::flagged(
                label,
                format!("constant ratio {}", format_rational(&c)),
            ));
            match reading {
                Conj2Reading::MPrinted => report.printed_constant = Some(c),
                Conj2Reading::NSymmetric => report.symmetric_constant = Some(c),
            }
        } else {
            let shown: Vec<String> = ratios.iter().map(format_rational).collect();
            report
                .instances
                .push(ConjectureInstance::flagged(label, format!("ratios differ: {}", shown.join(", "))));
        }
    }

    // degree estimate along the line (r, s) = (1/2 + u, 1/3 + 2u)
    let budget = report.stated_degree as usize + 3;
    let mut values = Vec::with_capacity(budget);
    let mut failed_sample = false;
    for u in 0..budget {
        let r0 = ratio(1, 2) + rat(u as i64);
        let s0 = ratio(1, 3) + rat(2 * u as i64);
        match conj2_tn(n, m, &r0, &s0).and_then(|tn| discriminant(&tn)) {
            Ok(v) => values.push(v),
            Err(_) => {
                failed_sample = true;
                break;
            }
        }
    }
    if failed_sample {
        report.instances.push(ConjectureInstance::flagged(
            String::from("degree"),
            String::from("interpolation line hit a degenerate sample; no estimate"),
        ));
    } else {
        // Newton forward differences: the degree is the largest order with a
        // nonzero difference, provided the tail vanishes.
        let mut diffs = values;
        let mut degree = 0usize;
        let mut order = 0usize;
        while diffs.len() > 1 {
            if diffs.iter().any(|v| !v.is_zero()) && order > degree {
                degree = order;
            }
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
            order += 1;
        }
        if diffs.iter().any(|v| !v.is_zero()) && order > degree {
            degree = order;
        }
        let estimate = degree as u64;
        report.degree_estimate = Some(estimate);
        let status = if estimate == report.stated_degree {
            ConjectureInstance::pass(
                String::from("degree"),
                format!("interpolated degree {estimate} matches stated {}", report.stated_degree),
            )
        } else {
            ConjectureInstance::flagged(
                String::from("degree"),
                format!("interpolated degree {estimate}, stated {}", report.stated_degree),
            )
        };
        report.instances.push(status);
    }

    // at least one reading must be ratio-constant for the experiment to count
    // as supporting evidence; neither being constant is a finding, not a crash
    if report.printed_constant.is_none() && report.symmetric_constant.is_none() {
        report.instances.push(ConjectureInstance::fail(
            String::from("support"),
            String::from("no reading gives a constant ratio"),
        ));
    } else {
        report.instances.push(ConjectureInstance::pass(
            String::from("support"),
            format!(
                "winning reading: {}",
                report.winning_reading().map(|r| r.label()).unwrap_or("none")
            ),
        ));
    }
    Ok(report)
}

/// Verdict of the "best possible" scan: all contents 1 over the run; any
/// content d > 1 at step n comes with the refined constant c(n) * d that
/// would have been exact there.
#[derive(Clone, Debug)]
pub struct BestPossibleReport {
    pub verdict: bool,
    pub entries: Vec<(u32, crate::rational::Integer)>,
    /// (step n, suggested c(n) * d) for each content d > 1.
    pub refinements: Vec<(u32, Rational)>,
}

pub fn best_possible_scan(seq: &TauSequence) -> BestPossibleReport {
    let entries = seq.content_trace();
    let mut refinements = Vec::new();
    for (idx, content) in &entries {
        if content.is_one() || *idx < 3 {
            continue;
        }
        // T_idx was produced at recurrence step n = idx - 1
        let n = idx - 1;
        let c = match &seq.strategy {
            NormalizationStrategy::Schedule(schedule) => schedule
                .value(n, seq.family, &seq.params.r)
                .unwrap_or_else(Rational::one),
            _ => Rational::one(),
        };
        refinements.push((n, c * Rational::from_integer(content.clone())));
    }
    let verdict = entries.iter().all(|(_, c)| c.is_one()) && seq.anomalies.is_empty();
    BestPossibleReport { verdict, entries, refinements }
}
