//! JSON report assembly. Field order and BTreeMap keys keep the output
//! byte-stable for fixed inputs (golden-file tested); `elapsed_ms` in
//! verification reports is the only timing-dependent field.

use qbent::functions::QFunc;
use qbent::metrics::{MetricReport, MetricsError};
use qbent::search::{ClassSummary, TheoremReport};
use qbent::spectrum::{classify_spectrum, walsh_transform};
use serde::Serialize;
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

/// The full classification record for one function.
#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub q: u32,
    pub n: usize,
    pub balanced: bool,
    pub walsh_support_size: usize,
    /// |W|² rendered exactly (decimal when rational, `q:[...]` otherwise)
    /// mapped to its multiplicity.
    pub magnitude_histogram: BTreeMap<String, u64>,
    pub is_bent: bool,
    pub is_regular: bool,
    pub plateaued_s: Option<usize>,
    /// Dual function as `.qf` text, for regular bent inputs.
    pub dual: Option<String>,
    pub cor: usize,
    pub nl: usize,
    pub strong_nl: Option<usize>,
    pub divisibility_order: usize,
    /// Full coefficient dump in index order, behind --dump-spectrum.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<String>>,
}

pub fn analyze(
    f: &QFunc,
    strong_nl_budget: Option<u64>,
    dump_spectrum: bool,
) -> Result<AnalysisReport, MetricsError> {
    let spec = walsh_transform(f);
    let class = classify_spectrum(&spec);
    let metrics = MetricReport::compute(f, strong_nl_budget)?;
    let mut histogram = BTreeMap::new();
    for w in spec.coefficients() {
        let norm = w.norm_sq();
        let key = match norm.as_rational_integer() {
            Some(v) => v.to_string(),
            None => norm.to_string(),
        };
        *histogram.entry(key).or_insert(0) += 1;
    }
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        q: f.q(),
        n: f.n(),
        balanced: metrics.balanced,
        walsh_support_size: spec.support_size(),
        magnitude_histogram: histogram,
        is_bent: class.is_bent,
        is_regular: class.regular,
        plateaued_s: class.plateaued_s,
        dual: class.dual.map(|d| d.serialize()),
        cor: metrics.cor,
        nl: metrics.nl,
        strong_nl: metrics.strong_nl,
        divisibility_order: metrics.divisibility_order,
        spectrum: dump_spectrum.then(|| spec.coefficients().iter().map(|c| c.to_string()).collect()),
    })
}

#[derive(Debug, Serialize)]
pub struct VerifyJson {
    pub schema_version: u32,
    pub theorem: String,
    pub params: BTreeMap<String, u64>,
    pub pass: bool,
    pub counts: BTreeMap<String, u64>,
    pub witnesses: Vec<String>,
    pub elapsed_ms: u64,
}

pub fn verify_json(report: &TheoremReport) -> VerifyJson {
    VerifyJson {
        schema_version: SCHEMA_VERSION,
        theorem: report.theorem.clone(),
        params: report.params.clone(),
        pass: report.pass,
        counts: report.counts.clone(),
        witnesses: report.witnesses.clone(),
        elapsed_ms: report.elapsed_ms as u64,
    }
}

#[derive(Debug, Serialize)]
pub struct SearchJson {
    pub schema_version: u32,
    pub q: u32,
    pub n: usize,
    pub class: String,
    pub shard: [usize; 2],
    pub count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_distance: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_pairs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histogram: Option<BTreeMap<String, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histogram_overflow: Option<u64>,
}

pub fn search_json(
    q: u32,
    n: usize,
    class: &str,
    shard: (usize, usize),
    members: &[QFunc],
    scan: Option<&ClassSummary>,
) -> SearchJson {
    let mut out = SearchJson {
        schema_version: SCHEMA_VERSION,
        q,
        n,
        class: class.to_string(),
        shard: [shard.0, shard.1],
        count: members.len(),
        min_distance: None,
        minimal_pairs: None,
        witness: None,
        histogram: None,
        histogram_overflow: None,
    };
    if let Some(summary) = scan {
        out.min_distance = summary.min_distance;
        out.minimal_pairs = Some(summary.witnesses.len());
        out.witness = summary
            .witnesses
            .first()
            .map(|&(i, j)| [members[i].serialize(), members[j].serialize()]);
        out.histogram = Some(
            summary
                .histogram
                .iter()
                .map(|(d, c)| (d.to_string(), *c))
                .collect(),
        );
        out.histogram_overflow = Some(summary.histogram_overflow);
    }
    out
}

#[derive(Debug, Serialize)]
pub struct ConstructJson {
    pub schema_version: u32,
    pub constructor: String,
    pub written: Vec<String>,
}

pub fn construct_json(name: &str, written: &[std::path::PathBuf]) -> ConstructJson {
    ConstructJson {
        schema_version: SCHEMA_VERSION,
        constructor: name.to_string(),
        written: written.iter().map(|p| p.display().to_string()).collect(),
    }
}
