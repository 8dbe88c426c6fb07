pub mod bench;
pub mod conjecture;
pub mod seq;
pub mod verify;

use std::path::PathBuf;

use anyhow::Context;

use pvi_tau::rational::{parse_rational, Rational};
use pvi_tau::seeds::SeedParams;

/// Shared parameter triple flags.
#[derive(clap::Args, Clone, Debug)]
pub struct ParamArgs {
    /// First parameter r (rational, e.g. 3 or 7/2).
    #[arg(short, long, allow_hyphen_values = true)]
    pub r: String,
    /// Nonnegative integer parameter m.
    #[arg(short, long)]
    pub m: u32,
    /// Third parameter s (rational).
    #[arg(short, long, allow_hyphen_values = true)]
    pub s: String,
}

impl ParamArgs {
    pub fn seed_params(&self) -> anyhow::Result<SeedParams> {
        Ok(SeedParams::new(
            parse_flag_rational("r", &self.r)?,
            self.m,
            parse_flag_rational("s", &self.s)?,
        ))
    }
}

pub fn parse_flag_rational(name: &str, text: &str) -> anyhow::Result<Rational> {
    parse_rational(text).with_context(|| format!("--{name} wants a rational like 3 or -5/7, got {text:?}"))
}

/// Write a document to `--out` or print it.
pub fn emit(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent).context("create output directory")?;
                }
            }
            std::fs::write(path, text).with_context(|| format!("write {}", path.display()))?;
            println!("wrote {}", path.display());
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Install the global rayon pool honoring `--jobs`; the default keeps
/// rayon's own core count.
pub fn configure_jobs(jobs: Option<usize>) {
    if let Some(jobs) = jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global();
    }
}
