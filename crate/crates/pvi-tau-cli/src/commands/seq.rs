use std::path::PathBuf;

use anyhow::bail;

use pvi_tau::rational::format_rational;
use pvi_tau::toda::{Family, NormalizationStrategy};

use crate::cache::{resolve_cache_dir, SequenceStore};
use crate::docs::{parse_family, parse_schedule, sequence_to_doc, to_json};

use super::{emit, parse_flag_rational, ParamArgs};

#[derive(clap::Args, Debug)]
pub struct SeqArgs {
    /// Family to generate: T or S.
    #[arg(long, default_value = "T")]
    pub family: String,

    #[command(flatten)]
    pub params: ParamArgs,

    /// Highest index n to generate (the sequence runs T_1 .. T_N).
    #[arg(short = 'N', long = "length", default_value_t = 10)]
    pub n_max: u32,

    /// Normalizing schedule: unit, prime:P, example3, square-shift,
    /// k-matched, or table:c2,c3,...
    #[arg(long)]
    pub schedule: Option<String>,

    /// Normalization strategy; defaults to the schedule when one is given,
    /// raw otherwise.
    #[arg(long, value_parser = ["raw", "schedule", "auto-primitive"])]
    pub strategy: Option<String>,

    /// Seed scaling (rational); defaults to 1/p for prime:p schedules and 1
    /// otherwise.
    #[arg(long, allow_hyphen_values = true)]
    pub seed_scale: Option<String>,

    /// Write the sequence document here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Directory for the on-disk sequence cache (also PVI_TAU_CACHE_DIR).
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

pub fn build_strategy(
    schedule: Option<&str>,
    strategy: Option<&str>,
) -> anyhow::Result<NormalizationStrategy> {
    let schedule = schedule.map(parse_schedule).transpose()?;
    match (strategy, schedule) {
        (None, None) => Ok(NormalizationStrategy::Raw),
        (None, Some(s)) | (Some("schedule"), Some(s)) => Ok(NormalizationStrategy::Schedule(s)),
        (Some("schedule"), None) => bail!("--strategy schedule needs --schedule"),
        (Some("raw"), None) => Ok(NormalizationStrategy::Raw),
        (Some("auto-primitive"), None) => Ok(NormalizationStrategy::AutoPrimitive),
        (Some(other), Some(_)) => {
            bail!("--schedule conflicts with --strategy {other}")
        }
        (Some(other), None) => bail!("unknown strategy {other:?}"),
    }
}

pub fn run(args: SeqArgs) -> anyhow::Result<i32> {
    let family: Family = parse_family(&args.family)?;
    let params = args.params.seed_params()?;
    let strategy = build_strategy(args.schedule.as_deref(), args.strategy.as_deref())?;
    let seed_scale = match &args.seed_scale {
        Some(text) => parse_flag_rational("seed-scale", text)?,
        None => match &strategy {
            NormalizationStrategy::Schedule(s) => s.default_seed_scale(),
            _ => pvi_tau::rational::rat(1),
        },
    };

    let store = SequenceStore::new(resolve_cache_dir(args.cache_dir.as_deref()));
    let seq = store.sequence(family, &params, args.n_max, strategy, &seed_scale)?;

    // summary on stderr so stdout stays a clean document
    for n in 1..=seq.len() {
        let poly = seq.poly(n).expect("in range");
        eprintln!(
            "{}_{}: degree {}, content {}",
            family.letter(),
            n,
            poly.degree().map_or_else(|| "-".into(), |d| d.to_string()),
            seq.contents()[n as usize - 1]
                .as_ref()
                .map_or_else(|| "-".into(), |c| c.to_string()),
        );
    }
    for anomaly in &seq.anomalies {
        eprintln!("anomaly: {}", anomaly.describe());
    }
    eprintln!(
        "{} polynomials at {} (seed scale {})",
        seq.len(),
        params.describe(),
        format_rational(&seed_scale)
    );

    emit(args.out.as_ref(), &to_json(&sequence_to_doc(&seq)))?;
    Ok(0)
}
