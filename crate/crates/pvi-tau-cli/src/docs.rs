//! Document formats: structured JSON objects, one per sequence or report.
//!
//! Every number is a decimal string ("5" or "-5/3"), polynomial
//! coefficients ascending — exact, diffable, and binary-float free. Field
//! order is fixed by the struct definitions, so write -> read -> write is
//! byte-identical.

use anyhow::{anyhow, bail, Context};
use serde::{Deserialize, Serialize};

use pvi_tau::poly::Poly;
use pvi_tau::rational::{format_rational, parse_rational, Rational};
use pvi_tau::seeds::SeedParams;
use pvi_tau::toda::{CnSchedule, Family, NormalizationStrategy, TauSequence};

/// Schema version of all documents; math changes that alter outputs bump it.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct SequenceDoc {
    pub schema: u32,
    pub kind: String,
    pub family: String,
    pub r: String,
    pub m: u32,
    pub s: String,
    pub strategy: String,
    pub seed_scale: String,
    pub n: u32,
    /// Ascending coefficients, one inner list per polynomial T_1 .. T_n.
    pub polys: Vec<Vec<String>>,
    /// Integer content per step when coefficients are integral.
    pub contents: Vec<Option<String>>,
    pub anomalies: Vec<String>,
}

pub fn poly_to_strings(p: &Poly<Rational>) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

pub fn poly_from_strings(coeffs: &[String]) -> anyhow::Result<Poly<Rational>> {
    let parsed: Option<Vec<Rational>> = coeffs.iter().map(|c| parse_rational(c)).collect();
    Ok(Poly::new(parsed.ok_or_else(|| anyhow!("bad coefficient string"))?))
}

pub fn sequence_to_doc(seq: &TauSequence) -> SequenceDoc {
    SequenceDoc {
        schema: SCHEMA_VERSION,
        kind: "sequence".into(),
        family: seq.family.letter().to_string(),
        r: format_rational(&seq.params.r),
        m: seq.params.m,
        s: format_rational(&seq.params.s),
        strategy: seq.strategy.describe().to_string(),
        seed_scale: format_rational(&seq.seed_scale),
        n: seq.len(),
        polys: seq.polys().iter().map(poly_to_strings).collect(),
        contents: seq
            .contents()
            .iter()
            .map(|c| c.as_ref().map(|v| v.to_string()))
            .collect(),
        anomalies: seq.anomalies.iter().map(|a| a.describe()).collect(),
    }
}

pub fn parse_family(text: &str) -> anyhow::Result<Family> {
    match text {
        "T" | "t" => Ok(Family::T),
        "S" | "s" => Ok(Family::S),
        other => bail!("unknown family {other:?}; expected T or S"),
    }
}

/// Parse a schedule spec: `unit`, `prime:P`, `example3`, `square-shift`,
/// `k-matched`, `table:c2,c3,...`.
pub fn parse_schedule(text: &str) -> anyhow::Result<CnSchedule> {
    if let Some(p) = text.strip_prefix("prime:") {
        let p: u64 = p.parse().context("prime schedule needs an integer")?;
        if p < 2 {
            bail!("prime schedule needs p >= 2, got {p}");
        }
        return Ok(CnSchedule::Prime(p));
    }
    if let Some(list) = text.strip_prefix("table:") {
        let values: Option<Vec<Rational>> = list.split(',').map(parse_rational).collect();
        let values = values.ok_or_else(|| anyhow!("bad table entry in {text:?}"))?;
        if values.is_empty() {
            bail!("empty schedule table");
        }
        if values.iter().any(num_traits::Zero::is_zero) {
            bail!("schedule constants must be nonzero");
        }
        return Ok(CnSchedule::Table(values));
    }
    match text {
        "unit" => Ok(CnSchedule::Unit),
        "example3" => Ok(CnSchedule::Example3),
        "square-shift" => Ok(CnSchedule::SquareShift),
        "k-matched" => Ok(CnSchedule::KMatched),
        other => bail!("unknown schedule {other:?}"),
    }
}

/// Inverse of `NormalizationStrategy::describe`.
pub fn parse_strategy(text: &str) -> anyhow::Result<NormalizationStrategy> {
    match text {
        "raw" => Ok(NormalizationStrategy::Raw),
        "auto-primitive" => Ok(NormalizationStrategy::AutoPrimitive),
        other => {
            let inner = other
                .strip_prefix("schedule(")
                .and_then(|rest| rest.strip_suffix(')'))
                .ok_or_else(|| anyhow!("unknown strategy {other:?}"))?;
            Ok(NormalizationStrategy::Schedule(parse_schedule(inner)?))
        }
    }
}

/// Rebuild the in-memory sequence from a clean cached document. Documents
/// with anomalies are not reused (the caller regenerates instead).
pub fn doc_to_sequence(doc: &SequenceDoc) -> anyhow::Result<TauSequence> {
    if doc.schema != SCHEMA_VERSION {
        bail!("schema {} does not match current {}", doc.schema, SCHEMA_VERSION);
    }
    if !doc.anomalies.is_empty() {
        bail!("document with anomalies is not reusable");
    }
    if doc.n as usize != doc.polys.len() {
        bail!("document length field {} does not match {} polynomials", doc.n, doc.polys.len());
    }
    let family = parse_family(&doc.family)?;
    let r = parse_rational(&doc.r).ok_or_else(|| anyhow!("bad r"))?;
    let s = parse_rational(&doc.s).ok_or_else(|| anyhow!("bad s"))?;
    let seed_scale = parse_rational(&doc.seed_scale).ok_or_else(|| anyhow!("bad seed scale"))?;
    let strategy = parse_strategy(&doc.strategy)?;
    let polys: anyhow::Result<Vec<Poly<Rational>>> =
        doc.polys.iter().map(|c| poly_from_strings(c)).collect();
    let contents: anyhow::Result<Vec<Option<pvi_tau::rational::Integer>>> = doc
        .contents
        .iter()
        .map(|c| {
            c.as_ref()
                .map(|v| v.parse().map_err(|_| anyhow!("bad content")))
                .transpose()
        })
        .collect();
    TauSequence::from_parts(
        family,
        SeedParams::new(r, doc.m, s),
        strategy,
        seed_scale,
        polys?,
        contents?,
    )
    .map_err(|e| anyhow!("{e}"))
}

/// One verification check in a report document.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct CheckDoc {
    pub subject: String,
    pub params: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub detail: String,
    pub elapsed_ms: u64,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ReportDoc {
    pub schema: u32,
    pub kind: String,
    pub command: String,
    pub checks: Vec<CheckDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct BenchStepDoc {
    pub n: u32,
    pub degree: usize,
    pub max_coeff_bits: u64,
    pub elapsed_ms: u64,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct BenchDoc {
    pub schema: u32,
    pub kind: String,
    pub label: String,
    pub steps: Vec<BenchStepDoc>,
    pub total_ms: u64,
}

/// Canonical rendering used for files and stdout.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("serializable");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use pvi_tau::rational::{rat, ratio};
    use pvi_tau::toda::generate_sequence;

    #[test]
    fn sequence_doc_round_trip_is_byte_identical() {
        let seq = generate_sequence(
            Family::T,
            &SeedParams::from_integers(3, 2, 1),
            5,
            NormalizationStrategy::Schedule(CnSchedule::Prime(3)),
            &ratio(1, 3),
        )
        .unwrap();
        let doc = sequence_to_doc(&seq);
        let text = to_json(&doc);
        let parsed: SequenceDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(to_json(&parsed), text);
        // and the rebuilt sequence matches the original
        let rebuilt = doc_to_sequence(&parsed).unwrap();
        assert_eq!(&rebuilt, &seq);
    }

    #[test]
    fn strategy_and_schedule_parsing() {
        for s in [
            "raw",
            "auto-primitive",
            "schedule(unit)",
            "schedule(prime:7)",
            "schedule(example3)",
            "schedule(square-shift)",
            "schedule(k-matched)",
            "schedule(table:5,7/2,9)",
        ] {
            let strategy = parse_strategy(s).unwrap();
            assert_eq!(strategy.describe(), s, "round trip of {s}");
        }
        assert!(parse_strategy("schedule(prime:x)").is_err());
        assert!(parse_strategy("nope").is_err());
    }

    #[test]
    fn polynomial_strings_round_trip() {
        let p = Poly::new(vec![rat(3), ratio(-5, 7), rat(0), rat(2)]);
        let strings = poly_to_strings(&p);
        assert_eq!(strings, vec!["3", "-5/7", "0", "2"]);
        assert_eq!(poly_from_strings(&strings).unwrap(), p);
    }
}
