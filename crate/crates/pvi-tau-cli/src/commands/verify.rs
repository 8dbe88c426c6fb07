use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, bail};
use num_traits::Zero;
use rayon::prelude::*;

use pvi_tau::backlund::{
    self, h_function, h_sigma_residual, q1_collapsed, riccati_residual, seed_pair, HOdeReading,
    Readings,
};
use pvi_tau::rational::{format_rational, rat, ratio, Rational};
use pvi_tau::seeds::{
    chart_okamoto, hypergeom_ode_residual, lemma1_residual, pvi_params_at, seed_q, PviParams,
    SeedParams,
};
use pvi_tau::toda::toda_sigma_constant_residual;
use pvi_tau::verify::{
    hankel_check, polynomiality_condition, prop2_qn, pvi_residual, pvi_residual_cleared,
    qn_from_theorem, DEFAULT_GRID,
};
use pvi_tau::Poly;

use crate::cache::{resolve_cache_dir, SequenceStore};
use crate::docs::{to_json, CheckDoc, ReportDoc, SCHEMA_VERSION};

use super::{configure_jobs, emit, parse_flag_rational};

pub const SUITES: [&str; 12] = [
    "riccati",
    "seed-pvi",
    "collapse",
    "theorem-qn",
    "lemma1",
    "prop1",
    "prop2",
    "hankel",
    "polynomiality",
    "h-sigma",
    "hypergeom-ode",
    "toda-sigma",
];

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    /// Suite to run; `all` runs every one.
    #[arg(long, default_value = "all")]
    pub suite: String,

    /// Restrict to one parameter triple instead of the default grid.
    #[arg(short, long, allow_hyphen_values = true)]
    pub r: Option<String>,
    #[arg(short, long)]
    pub m: Option<u32>,
    #[arg(short, long, allow_hyphen_values = true)]
    pub s: Option<String>,

    /// Highest Bäcklund index n for the residual suites.
    #[arg(short = 'N', long = "depth", default_value_t = 6)]
    pub n_max: u32,

    /// Perturb a target parameter, e.g. `alpha=+1` or `gamma=-1/2`
    /// (negative control: must produce a nonzero residual and exit 1).
    #[arg(long)]
    pub perturb: Vec<String>,

    /// Select a typo-resolution reading: collapsed-num-with-t,
    /// v-trailing-q, bplus-sum-shifted, hode-squared-product.
    #[arg(long = "flag-reading")]
    pub flag_readings: Vec<String>,

    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Parallel workers for the grid fan-out (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
}

fn parse_perturbations(specs: &[String]) -> anyhow::Result<Vec<(String, Rational)>> {
    specs
        .iter()
        .map(|spec| {
            let (field, amount) = spec
                .split_once('=')
                .ok_or_else(|| anyhow!("--perturb wants field=delta, got {spec:?}"))?;
            if !["alpha", "beta", "gamma", "delta"].contains(&field) {
                bail!("unknown parameter {field:?} in --perturb");
            }
            let delta = parse_flag_rational("perturb", amount.trim_start_matches('+'))?;
            Ok((field.to_string(), delta))
        })
        .collect()
}

fn apply_perturbations(pv: &mut PviParams, perturbations: &[(String, Rational)]) {
    for (field, delta) in perturbations {
        match field.as_str() {
            "alpha" => pv.alpha += delta,
            "beta" => pv.beta += delta,
            "gamma" => pv.gamma += delta,
            "delta" => pv.delta += delta,
            _ => unreachable!("validated"),
        }
    }
}

fn parse_readings(flags: &[String]) -> anyhow::Result<(Readings, HOdeReading)> {
    let mut readings = Readings::default();
    let mut hode = HOdeReading::ProductOfSquaredSecond;
    for flag in flags {
        match flag.as_str() {
            "collapsed-num-with-t" => readings.collapsed_numerator_with_t = true,
            "v-trailing-q" => readings.v_trailing_q = true,
            "bplus-sum-shifted" => readings.b_plus_sum_shifted = true,
            "hode-squared-product" => hode = HOdeReading::SquaredProduct,
            other => bail!("unknown --flag-reading {other:?}"),
        }
    }
    Ok((readings, hode))
}

struct SuiteContext {
    grid: Vec<SeedParams>,
    n_max: u32,
    perturbations: Vec<(String, Rational)>,
    readings: Readings,
    hode: HOdeReading,
    store: SequenceStore,
}

fn check(
    subject: &str,
    params: String,
    started: Instant,
    zero: bool,
    witness: Option<String>,
    detail: String,
) -> CheckDoc {
    CheckDoc {
        subject: subject.into(),
        params,
        status: if zero { "zero" } else { "nonzero" }.into(),
        witness: if zero { None } else { witness },
        detail,
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}

fn flagged(subject: &str, params: String, started: Instant, detail: String) -> CheckDoc {
    CheckDoc {
        subject: subject.into(),
        params,
        status: "flagged".into(),
        witness: None,
        detail,
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}

fn suite_riccati(ctx: &SuiteContext) -> Vec<CheckDoc> {
    ctx.grid
        .iter()
        .map(|p| {
            let started = Instant::now();
            match seed_q(p) {
                Ok(q) => {
                    let residual = riccati_residual(&q, &chart_okamoto(p));
                    check(
                        "riccati",
                        p.describe(),
                        started,
                        residual.is_zero(),
                        Some(residual.to_string()),
                        "seed q against the Riccati equation".into(),
                    )
                }
                Err(e) => check("riccati", p.describe(), started, false, Some(e.to_string()), "seed construction failed".into()),
            }
        })
        .collect()
}

fn suite_seed_pvi(ctx: &SuiteContext) -> Vec<CheckDoc> {
    ctx.grid
        .iter()
        .map(|p| {
            let started = Instant::now();
            let mut pv = pvi_params_at(0, p);
            apply_perturbations(&mut pv, &ctx.perturbations);
            let outcome = seed_q(p).and_then(|q| pvi_residual(&q, &pv));
            match outcome {
                Ok(residual) => check(
                    "seed-pvi",
                    p.describe(),
                    started,
                    residual.is_zero(),
                    Some(residual.to_string()),
                    format!(
                        "P_VI({}, {}, {}, {})",
                        format_rational(&pv.alpha),
                        format_rational(&pv.beta),
                        format_rational(&pv.gamma),
                        format_rational(&pv.delta)
                    ),
                ),
                Err(e) => check("seed-pvi", p.describe(), started, false, Some(e.to_string()), "residual failed".into()),
            }
        })
        .collect()
}

fn suite_collapse(ctx: &SuiteContext) -> Vec<CheckDoc> {
    ctx.grid
        .iter()
        .map(|p| {
            let started = Instant::now();
            let pair = seed_pair(p);
            let (q, momentum, b) = match pair {
                Ok(v) => v,
                Err(e) => {
                    return check("collapse", p.describe(), started, false, Some(e.to_string()), "seed failed".into())
                }
            };
            let q1 = match q1_collapsed(&q, &b) {
                Ok(v) => v,
                Err(e) => {
                    return check("collapse", p.describe(), started, false, Some(e.to_string()), "collapse failed".into())
                }
            };
            if q1.is_constant() {
                // the degenerate chart: the transformation image is a
                // constant (gamma = 0 solution); recorded, not asserted
                return flagged(
                    "collapse",
                    p.describe(),
                    started,
                    format!("degenerate chart: q1 = {q1} identically (b1 = b2)"),
                );
            }
            match backlund::backlund_qplus(&momentum, &q, &b, ctx.readings) {
                Ok(outcome) => check(
                    "collapse",
                    p.describe(),
                    started,
                    outcome.qplus == q1,
                    Some(outcome.qplus.to_string()),
                    format!("routes: {}", outcome.describe()),
                ),
                Err(e) => check("collapse", p.describe(), started, false, Some(e.to_string()), "no route survived".into()),
            }
        })
        .collect()
}

fn suite_theorem_qn(ctx: &SuiteContext) -> Vec<CheckDoc> {
    let instances: Vec<(SeedParams, u32)> = ctx
        .grid
        .iter()
        .flat_map(|p| (1..=ctx.n_max).map(move |n| (p.clone(), n)))
        .collect();
    let mut docs: Vec<((String, u32), CheckDoc)> = instances
        .par_iter()
        .map(|(p, n)| {
            let started = Instant::now();
            let label = format!("{} n={n}", p.describe());
            let doc = (|| -> anyhow::Result<CheckDoc> {
                let tseq = ctx.store.sequence(
                    pvi_tau::toda::Family::T,
                    p,
                    ctx.n_max + 1,
                    pvi_tau::toda::NormalizationStrategy::Schedule(pvi_tau::toda::CnSchedule::KMatched),
                    &rat(1),
                )?;
                let sseq = ctx.store.sequence(
                    pvi_tau::toda::Family::S,
                    p,
                    ctx.n_max.max(2),
                    pvi_tau::toda::NormalizationStrategy::Schedule(pvi_tau::toda::CnSchedule::KMatched),
                    &rat(1),
                )?;
                let qn = qn_from_theorem(*n, &tseq, &sseq)?;
                let mut pv = pvi_params_at(*n, p);
                apply_perturbations(&mut pv, &ctx.perturbations);
                if qn.is_constant() {
                    let cleared = pvi_residual_cleared(&qn, &pv);
                    if cleared.is_zero() && pv.gamma.is_zero() && qn == pvi_tau::RatFunc::one() {
                        return Ok(flagged(
                            "theorem-qn",
                            label.clone(),
                            started,
                            "q_n = 1 identically: degenerate gamma = 0 solution; cleared residual zero".into(),
                        ));
                    }
                    return Ok(check(
                        "theorem-qn",
                        label.clone(),
                        started,
                        false,
                        Some(format!("constant q_n = {qn}")),
                        "degenerate q_n with nonzero cleared residual".into(),
                    ));
                }
                let residual = pvi_residual(&qn, &pv)?;
                Ok(check(
                    "theorem-qn",
                    label.clone(),
                    started,
                    residual.is_zero(),
                    Some(residual.to_string()),
                    "master identity".into(),
                ))
            })()
            .unwrap_or_else(|e| {
                check("theorem-qn", label.clone(), started, false, Some(e.to_string()), "failed".into())
            });
            ((p.describe(), *n), doc)
        })
        .collect();
    docs.sort_by(|a, b| a.0.cmp(&b.0));
    docs.into_iter().map(|(_, d)| d).collect()
}

fn suite_lemma1(_: &SuiteContext) -> Vec<CheckDoc> {
    let started = Instant::now();
    let mut bad = Vec::new();
    let mut count = 0u32;
    for m in 1..=8u32 {
        for rv in [rat(1), rat(3), ratio(-2, 3), ratio(7, 2), rat(5)] {
            for sv in [rat(1), rat(2), ratio(1, 2), ratio(-5, 3), rat(4)] {
                let p = SeedParams::new(rv.clone(), m, sv.clone());
                count += 1;
                match lemma1_residual(&p) {
                    Ok(res) if res.is_zero() => {}
                    Ok(_) | Err(_) => bad.push(p.describe()),
                }
            }
        }
    }
    vec![check(
        "lemma1",
        format!("m=1..8 x 5x5 rational grid ({count} instances)"),
        started,
        bad.is_empty(),
        Some(bad.join("; ")),
        "seed combination identity".into(),
    )]
}

fn suite_prop1(ctx: &SuiteContext) -> Vec<CheckDoc> {
    ctx.grid
        .iter()
        .map(|p| {
            let started = Instant::now();
            match backlund::prop1_check(p) {
                Ok(res) => check(
                    "prop1",
                    p.describe(),
                    started,
                    res.is_zero(),
                    Some(res.to_string()),
                    "log-derivative chain for T_2 = W".into(),
                ),
                Err(e) => check("prop1", p.describe(), started, false, Some(e.to_string()), "failed".into()),
            }
        })
        .collect()
}

fn suite_prop2(_: &SuiteContext) -> Vec<CheckDoc> {
    let mut docs = Vec::new();
    for n in 1..=3u32 {
        for m in 1..=2u32 {
            for rv in [rat(1), rat(2)] {
                let started = Instant::now();
                let label = format!("n={n} m={m} r={}", format_rational(&rv));
                match prop2_qn(n, &rv, m) {
                    Ok(out) => {
                        let zero = out.chart_gamma_solves;
                        let resolution = match (out.printed_gamma_solves, out.chart_gamma_solves) {
                            (false, true) => "gamma resolution: +1/2 (chart), printed -1/2 refuted",
                            (true, false) => "gamma resolution: -1/2 (printed)",
                            (true, true) => "both gamma readings solve",
                            (false, false) => "neither gamma reading solves",
                        };
                        docs.push(check(
                            "prop2",
                            label,
                            started,
                            zero,
                            Some(out.qn.to_string()),
                            resolution.into(),
                        ));
                    }
                    Err(e) => docs.push(check("prop2", label, started, false, Some(e.to_string()), "failed".into())),
                }
            }
        }
    }
    docs
}

fn suite_hankel(ctx: &SuiteContext) -> Vec<CheckDoc> {
    let params = ctx.grid.first().cloned().unwrap_or(SeedParams::from_integers(3, 2, 1));
    (1..=4u32)
        .map(|n| {
            let started = Instant::now();
            match hankel_check(n, &params) {
                Ok(out) => {
                    let constant = out
                        .constant
                        .as_ref()
                        .map(format_rational)
                        .unwrap_or_else(|| "-".into());
                    check(
                        "hankel",
                        format!("{} n={n}", params.describe()),
                        started,
                        out.proportional && out.constant.is_some_and(|c| !c.is_zero()),
                        None,
                        format!("determinant/expected constant: {constant}"),
                    )
                }
                Err(e) => check(
                    "hankel",
                    format!("{} n={n}", params.describe()),
                    started,
                    false,
                    Some(e.to_string()),
                    "failed".into(),
                ),
            }
        })
        .collect()
}

fn suite_polynomiality(_: &SuiteContext) -> Vec<CheckDoc> {
    let started = Instant::now();
    let zero_case = polynomiality_condition(&Poly::from_integers(&[0, -1, 1]), &Poly::from_integers(&[-1, 2]));
    let control = polynomiality_condition(&Poly::from_integers(&[0, 1]), &Poly::from_integers(&[1]));
    vec![
        check(
            "polynomiality",
            "(t^2 - t, 2t - 1)".into(),
            started,
            zero_case.is_zero(),
            Some(zero_case.to_string()),
            "sufficient condition for polynomial recurrences".into(),
        ),
        check(
            "polynomiality-control",
            "(t, 1)".into(),
            started,
            control == Poly::from_integers(&[0, 2]),
            Some(control.to_string()),
            "negative control must give 2t".into(),
        ),
    ]
}

fn suite_h_sigma(ctx: &SuiteContext) -> Vec<CheckDoc> {
    ctx.grid
        .iter()
        .map(|p| {
            let started = Instant::now();
            let outcome = seed_pair(p).and_then(|(q, momentum, b)| {
                let h = h_function(&momentum, &q, &b)?;
                Ok((h_sigma_residual(&h, &b, ctx.hode), b, h))
            });
            match outcome {
                Ok((res, b, h)) => {
                    let other = h_sigma_residual(
                        &h,
                        &b,
                        match ctx.hode {
                            HOdeReading::ProductOfSquaredSecond => HOdeReading::SquaredProduct,
                            HOdeReading::SquaredProduct => HOdeReading::ProductOfSquaredSecond,
                        },
                    );
                    check(
                        "h-sigma",
                        p.describe(),
                        started,
                        res.is_zero(),
                        Some(res.to_string()),
                        format!(
                            "reading {:?}; alternate parse residual zero: {}",
                            ctx.hode,
                            other.is_zero()
                        ),
                    )
                }
                Err(e) => check("h-sigma", p.describe(), started, false, Some(e.to_string()), "failed".into()),
            }
        })
        .collect()
}

fn suite_hypergeom_ode(ctx: &SuiteContext) -> Vec<CheckDoc> {
    ctx.grid
        .iter()
        .map(|p| {
            let started = Instant::now();
            match hypergeom_ode_residual(p) {
                Ok(res) => check(
                    "hypergeom-ode",
                    p.describe(),
                    started,
                    res.is_zero(),
                    Some(res.to_string()),
                    "terminating series against the printed equation".into(),
                ),
                Err(e) => check("hypergeom-ode", p.describe(), started, false, Some(e.to_string()), "failed".into()),
            }
        })
        .collect()
}

fn suite_toda_sigma(ctx: &SuiteContext) -> Vec<CheckDoc> {
    let started = Instant::now();
    let mut bad = Vec::new();
    for p in &ctx.grid {
        for n in 2..=ctx.n_max.max(8) {
            if !toda_sigma_constant_residual(n, p).is_zero() {
                bad.push(format!("{} n={n}", p.describe()));
            }
        }
    }
    vec![check(
        "toda-sigma",
        "grid x n".into(),
        started,
        bad.is_empty(),
        Some(bad.join("; ")),
        "sigma-form additive constant reconciles with (n-1)(n+r)".into(),
    )]
}

pub fn run(args: VerifyArgs) -> anyhow::Result<i32> {
    configure_jobs(args.jobs);
    let grid: Vec<SeedParams> = match (&args.r, &args.m, &args.s) {
        (Some(r), Some(m), Some(s)) => vec![SeedParams::new(
            parse_flag_rational("r", r)?,
            *m,
            parse_flag_rational("s", s)?,
        )],
        (None, None, None) => DEFAULT_GRID
            .iter()
            .map(|(r, m, s)| SeedParams::from_integers(*r, *m, *s))
            .collect(),
        _ => bail!("give all of -r, -m, -s or none"),
    };
    let (readings, hode) = parse_readings(&args.flag_readings)?;
    let ctx = SuiteContext {
        grid,
        n_max: args.n_max,
        perturbations: parse_perturbations(&args.perturb)?,
        readings,
        hode,
        store: SequenceStore::new(resolve_cache_dir(args.cache_dir.as_deref())),
    };

    let selected: Vec<&str> = if args.suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&args.suite.as_str()) {
        vec![args.suite.as_str()]
    } else {
        bail!("unknown suite {:?}; choose one of {} or all", args.suite, SUITES.join(", "));
    };

    let mut checks = Vec::new();
    for suite in selected {
        let mut docs = match suite {
            "riccati" => suite_riccati(&ctx),
            "seed-pvi" => suite_seed_pvi(&ctx),
            "collapse" => suite_collapse(&ctx),
            "theorem-qn" => suite_theorem_qn(&ctx),
            "lemma1" => suite_lemma1(&ctx),
            "prop1" => suite_prop1(&ctx),
            "prop2" => suite_prop2(&ctx),
            "hankel" => suite_hankel(&ctx),
            "polynomiality" => suite_polynomiality(&ctx),
            "h-sigma" => suite_h_sigma(&ctx),
            "hypergeom-ode" => suite_hypergeom_ode(&ctx),
            "toda-sigma" => suite_toda_sigma(&ctx),
            _ => unreachable!("validated"),
        };
        checks.append(&mut docs);
    }

    for doc in &checks {
        eprintln!("[{}] {} {} — {}", doc.status, doc.subject, doc.params, doc.detail);
    }
    let failed = checks.iter().filter(|c| c.status == "nonzero").count();
    let report = ReportDoc {
        schema: SCHEMA_VERSION,
        kind: "verification".into(),
        command: format!("verify --suite {}", args.suite),
        checks,
    };
    emit(args.out.as_ref(), &to_json(&report))?;
    if failed > 0 {
        eprintln!("{failed} check(s) with nonzero residual");
        Ok(1)
    } else {
        Ok(0)
    }
}
