//! Sequence store: an in-process map shared by parallel sweeps plus an
//! optional on-disk JSON cache.
//!
//! Keys cover everything that determines the output (family, parameters,
//! strategy, seed scale, length, schema version), so a hit is bit-exact by
//! construction. Only clean (anomaly-free) runs are persisted; anomalous
//! runs are regenerated so the anomaly data stays typed.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use anyhow::Context;

use pvi_tau::rational::{format_rational, Rational};
use pvi_tau::seeds::SeedParams;
use pvi_tau::toda::{generate_sequence, Family, NormalizationStrategy, TauSequence};

use crate::docs::{doc_to_sequence, sequence_to_doc, to_json, SequenceDoc, SCHEMA_VERSION};

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "PVI_TAU_CACHE_DIR";

pub fn resolve_cache_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(dir) = flag {
        return Some(dir.to_path_buf());
    }
    std::env::var_os(CACHE_ENV).map(PathBuf::from)
}

fn sanitize(text: &str) -> String {
    text.chars()
        .map(|c| match c {
            '/' => 'd',
            ':' => '-',
            '(' | ')' | ',' => '_',
            other => other,
        })
        .collect()
}

fn cache_file_name(
    family: Family,
    params: &SeedParams,
    strategy: &NormalizationStrategy,
    seed_scale: &Rational,
    n_max: u32,
) -> String {
    format!(
        "seq_{}_r{}_m{}_s{}_{}_scale{}_N{}_v{}.json",
        family.letter(),
        sanitize(&format_rational(&params.r)),
        params.m,
        sanitize(&format_rational(&params.s)),
        sanitize(&strategy.describe()),
        sanitize(&format_rational(seed_scale)),
        n_max,
        SCHEMA_VERSION,
    )
}

type Key = (char, String, u32, String, String, String, u32);

fn memory_key(
    family: Family,
    params: &SeedParams,
    strategy: &NormalizationStrategy,
    seed_scale: &Rational,
    n_max: u32,
) -> Key {
    (
        family.letter(),
        format_rational(&params.r),
        params.m,
        format_rational(&params.s),
        strategy.describe().to_string(),
        format_rational(seed_scale),
        n_max,
    )
}

/// Shared sequence store. Cloning shares the underlying map.
#[derive(Clone, Default)]
pub struct SequenceStore {
    memory: Arc<Mutex<BTreeMap<Key, Arc<TauSequence>>>>,
    disk_dir: Option<PathBuf>,
}

impl SequenceStore {
    pub fn new(disk_dir: Option<PathBuf>) -> Self {
        SequenceStore { memory: Arc::default(), disk_dir }
    }

    /// Fetch or generate. Generation is pure, so concurrent duplicate work
    /// is wasteful but harmless; insertion keeps the first computed value
    /// (all values for one key are identical anyway).
    pub fn sequence(
        &self,
        family: Family,
        params: &SeedParams,
        n_max: u32,
        strategy: NormalizationStrategy,
        seed_scale: &Rational,
    ) -> anyhow::Result<Arc<TauSequence>> {
        let key = memory_key(family, params, &strategy, seed_scale, n_max);
        if let Some(hit) = self.memory.lock().expect("store lock").get(&key) {
            return Ok(hit.clone());
        }
        if let Some(seq) = self.load_disk(family, params, &strategy, seed_scale, n_max) {
            let seq = Arc::new(seq);
            self.memory
                .lock()
                .expect("store lock")
                .entry(key)
                .or_insert_with(|| seq.clone());
            return Ok(seq);
        }
        let seq = generate_sequence(family, params, n_max, strategy.clone(), seed_scale)
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        if seq.clean() {
            self.store_disk(&seq, n_max);
        }
        let seq = Arc::new(seq);
        let stored = self
            .memory
            .lock()
            .expect("store lock")
            .entry(key)
            .or_insert_with(|| seq.clone())
            .clone();
        Ok(stored)
    }

    fn load_disk(
        &self,
        family: Family,
        params: &SeedParams,
        strategy: &NormalizationStrategy,
        seed_scale: &Rational,
        n_max: u32,
    ) -> Option<TauSequence> {
        let dir = self.disk_dir.as_ref()?;
        let path = dir.join(cache_file_name(family, params, strategy, seed_scale, n_max));
        let text = std::fs::read_to_string(path).ok()?;
        let doc: SequenceDoc = serde_json::from_str(&text).ok()?;
        doc_to_sequence(&doc).ok()
    }

    fn store_disk(&self, seq: &TauSequence, n_max: u32) {
        let Some(dir) = self.disk_dir.as_ref() else { return };
        let write = || -> anyhow::Result<()> {
            std::fs::create_dir_all(dir).context("create cache dir")?;
            let path = dir.join(cache_file_name(
                seq.family,
                &seq.params,
                &seq.strategy,
                &seq.seed_scale,
                n_max,
            ));
            std::fs::write(path, to_json(&sequence_to_doc(seq))).context("write cache file")
        };
        // Cache writes are best effort; the math result is already in hand.
        if let Err(err) = write() {
            eprintln!("warning: cache write failed: {err}");
        }
    }
}
