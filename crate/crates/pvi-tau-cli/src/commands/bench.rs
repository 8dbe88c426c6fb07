use std::path::PathBuf;
use std::time::Instant;

use pvi_tau::poly::Poly;
use pvi_tau::rational::rat;
use pvi_tau::toda::{k_coefficient, toda_step, Family, NormalizationStrategy};

use crate::docs::{parse_family, to_json, BenchDoc, BenchStepDoc, SCHEMA_VERSION};

use super::{emit, parse_flag_rational, ParamArgs};

#[derive(clap::Args, Debug)]
pub struct BenchArgs {
    #[arg(long, default_value = "T")]
    pub family: String,

    #[command(flatten)]
    pub params: ParamArgs,

    #[arg(short = 'N', long = "length", default_value_t = 12)]
    pub n_max: u32,

    #[arg(long)]
    pub schedule: Option<String>,

    #[arg(long, allow_hyphen_values = true)]
    pub seed_scale: Option<String>,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Step the recurrence manually so each index gets its own wall time and
/// coefficient-size snapshot. The polynomials are identical to the engine's
/// (same seeds, same constants); only the bookkeeping differs.
pub fn run(args: BenchArgs) -> anyhow::Result<i32> {
    let family = parse_family(&args.family)?;
    let params = args.params.seed_params()?;
    let strategy = super::seq::build_strategy(args.schedule.as_deref(), None)?;
    let seed_scale = match &args.seed_scale {
        Some(text) => parse_flag_rational("seed-scale", text)?,
        None => match &strategy {
            NormalizationStrategy::Schedule(s) => s.default_seed_scale(),
            _ => rat(1),
        },
    };

    let total = Instant::now();
    let seed_chart = match family {
        Family::T => params.clone(),
        Family::S => pvi_tau::seeds::chart_sigma_shift(&params),
    };
    let seed =
        pvi_tau::seeds::w_poly(&seed_chart.r, seed_chart.m, &seed_chart.s).mul_rational(&seed_scale);
    let mut polys: Vec<Poly<pvi_tau::Rational>> = vec![Poly::one(), seed];
    let mut steps = vec![step_doc(1, &polys[0], 0), step_doc(2, &polys[1], 0)];

    while (polys.len() as u32) < args.n_max {
        let n = polys.len() as u32;
        let c = match &strategy {
            NormalizationStrategy::Schedule(schedule) => {
                match schedule.value(n, family, &params.r) {
                    Some(c) => c,
                    None => anyhow::bail!("schedule exhausted at step {n}"),
                }
            }
            _ => rat(1),
        };
        let k = k_coefficient(family, n, &params.r);
        let t0 = Instant::now();
        let next = toda_step(&polys[n as usize - 2], &polys[n as usize - 1], &k, &c)
            .map_err(|e| anyhow::anyhow!("division not exact at step {n}: remainder {}", e.remainder))?;
        let elapsed = t0.elapsed().as_millis() as u64;
        steps.push(step_doc(n + 1, &next, elapsed));
        polys.push(next);
    }

    let doc = BenchDoc {
        schema: SCHEMA_VERSION,
        kind: "bench".into(),
        label: format!(
            "{} {} N={} {}",
            family.letter(),
            params.describe(),
            args.n_max,
            strategy.describe()
        ),
        steps,
        total_ms: total.elapsed().as_millis() as u64,
    };
    for step in &doc.steps {
        eprintln!(
            "n={:>3}  degree {:>5}  max coeff bits {:>8}  {} ms",
            step.n, step.degree, step.max_coeff_bits, step.elapsed_ms
        );
    }
    emit(args.out.as_ref(), &to_json(&doc))?;
    Ok(0)
}

fn step_doc(n: u32, poly: &Poly<pvi_tau::Rational>, elapsed_ms: u64) -> BenchStepDoc {
    BenchStepDoc {
        n,
        degree: poly.degree().unwrap_or(0),
        max_coeff_bits: poly.max_coeff_bits(),
        elapsed_ms,
    }
}
