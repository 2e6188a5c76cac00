//! Exhaustive and structured search over truth-table space: class
//! enumeration with deterministic sharding, minimal-distance scans with
//! witnesses, neighbor counting around bent functions, and the
//! theorem-verification drivers behind the CLI `verify` subcommand.

use crate::constructions::make_qn;
use crate::functions::{domain_size, point_at, QFunc};
use crate::metrics::{tarannikov_check, walsh_divisibility_order};
use crate::spectrum::classify;
use crate::subspaces::{enumerate_cosets, enumerate_subspaces, Coset, Subspace};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("scan of {needed} candidates exceeds the budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("class of {got} members is too large for a pairwise scan (max {max})")]
    ClassTooLarge { got: usize, max: usize },
    #[error("shard index {index} out of range for {total} shards")]
    ShardOutOfRange { index: usize, total: usize },
    #[error("unknown theorem {0:?}")]
    UnknownTheorem(String),
    #[error("missing parameter {0}")]
    MissingParam(&'static str),
    #[error("unsupported parameters: {0}")]
    UnsupportedParams(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Class selector for enumeration.
#[derive(Clone)]
pub enum ClassPredicate {
    All,
    Bent,
    RegularBent,
    Plateaued(usize),
    Balanced,
    Custom(Arc<dyn Fn(&QFunc) -> bool + Send + Sync>),
}

impl std::fmt::Debug for ClassPredicate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassPredicate::All => write!(f, "All"),
            ClassPredicate::Bent => write!(f, "Bent"),
            ClassPredicate::RegularBent => write!(f, "RegularBent"),
            ClassPredicate::Plateaued(s) => write!(f, "Plateaued({s})"),
            ClassPredicate::Balanced => write!(f, "Balanced"),
            ClassPredicate::Custom(_) => write!(f, "Custom"),
        }
    }
}

impl ClassPredicate {
    fn matches(&self, f: &QFunc) -> bool {
        match self {
            ClassPredicate::All => true,
            ClassPredicate::Bent => classify(f).is_bent,
            ClassPredicate::RegularBent => {
                let c = classify(f);
                c.is_bent && c.regular
            }
            ClassPredicate::Plateaued(s) => classify(f).plateaued_s == Some(*s),
            ClassPredicate::Balanced => f.is_balanced(),
            ClassPredicate::Custom(p) => p(f),
        }
    }
}

/// An exhaustive scan task: which space, which class, which shard.
/// Enumeration order is the lexicographic order of truth tables; shard
/// (i, t) keeps the tables whose counter index is ≡ i mod t.
#[derive(Debug, Clone)]
pub struct SearchTask {
    pub q: u32,
    pub n: usize,
    pub predicate: ClassPredicate,
    pub shard: (usize, usize),
    pub budget: u64,
}

pub const DEFAULT_SCAN_BUDGET: u64 = 4_000_000;

impl SearchTask {
    pub fn new(q: u32, n: usize, predicate: ClassPredicate) -> Self {
        SearchTask {
            q,
            n,
            predicate,
            shard: (0, 1),
            budget: DEFAULT_SCAN_BUDGET,
        }
    }

    pub fn with_shard(mut self, index: usize, total: usize) -> Self {
        self.shard = (index, total);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    fn space_size(&self) -> Result<u64, SearchError> {
        let points = domain_size(self.q, self.n);
        (self.q as u128)
            .checked_pow(points as u32)
            .filter(|&total| total <= self.budget as u128)
            .map(|total| total as u64)
            .ok_or(SearchError::BudgetExceeded {
                needed: (self.q as u128).checked_pow(points as u32).unwrap_or(u128::MAX),
                budget: self.budget,
            })
    }
}

/// Decodes scan counter `code` into a truth table. The last table entry is
/// the fastest-moving digit, so increasing counters enumerate tables in
/// lexicographic order.
fn table_of_code(q: u32, points: usize, mut code: u64) -> Vec<u8> {
    let mut table = vec![0u8; points];
    for slot in table.iter_mut().rev() {
        *slot = (code % q as u64) as u8;
        code /= q as u64;
    }
    table
}

/// Every function of the shard satisfying the predicate, each exactly once,
/// in lexicographic table order.
pub fn enumerate_class(task: &SearchTask) -> Result<Vec<QFunc>, SearchError> {
    let (index, total) = task.shard;
    if total == 0 || index >= total {
        return Err(SearchError::ShardOutOfRange { index, total });
    }
    let size = task.space_size()?;
    let points = domain_size(task.q, task.n);
    const CHUNK: u64 = 8192;
    let chunks: Vec<u64> = (0..size.div_ceil(CHUNK)).collect();
    let found: Vec<Vec<QFunc>> = chunks
        .par_iter()
        .map(|&chunk| {
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(size);
            let mut out = Vec::new();
            for code in lo..hi {
                if code as usize % total != index {
                    continue;
                }
                let f = QFunc::new(task.q, task.n, table_of_code(task.q, points, code)).unwrap();
                if task.predicate.matches(&f) {
                    out.push(f);
                }
            }
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// Summary of a pairwise minimal-distance scan over a class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSummary {
    pub class_size: usize,
    pub min_distance: Option<usize>,
    /// All index pairs realizing the minimum, in scan order.
    pub witnesses: Vec<(usize, usize)>,
    /// distance → pair count, for distances up to the cap.
    pub histogram: BTreeMap<usize, u64>,
    /// Pairs beyond the cap (their exact distances are not computed).
    pub histogram_overflow: u64,
}

pub const MAX_PAIRWISE_CLASS: usize = 100_000;

/// Enumerates the class and scans all pairs, early-exiting each distance at
/// max(current minimum, histogram cap). All ties are reported.
pub fn min_distance_in_class(
    task: &SearchTask,
    histogram_cap: usize,
) -> Result<ClassSummary, SearchError> {
    let class = enumerate_class(task)?;
    min_distance_of(&class, histogram_cap)
}

/// The pairwise scan itself, reusable on externally materialized classes.
pub fn min_distance_of(class: &[QFunc], histogram_cap: usize) -> Result<ClassSummary, SearchError> {
    if class.len() > MAX_PAIRWISE_CLASS {
        return Err(SearchError::ClassTooLarge {
            got: class.len(),
            max: MAX_PAIRWISE_CLASS,
        });
    }
    struct Partial {
        min: usize,
        ties: Vec<(usize, usize)>,
        hist: BTreeMap<usize, u64>,
        overflow: u64,
    }
    let rows: Vec<Partial> = (0..class.len())
        .into_par_iter()
        .map(|i| {
            let mut p = Partial {
                min: usize::MAX,
                ties: Vec::new(),
                hist: BTreeMap::new(),
                overflow: 0,
            };
            for j in i + 1..class.len() {
                let cap = histogram_cap.max(p.min.min(class[i].len()));
                match class[i].distance_capped(&class[j], cap) {
                    Some(d) => {
                        if d <= histogram_cap {
                            *p.hist.entry(d).or_insert(0) += 1;
                        } else {
                            p.overflow += 1;
                        }
                        if d < p.min {
                            p.min = d;
                            p.ties.clear();
                            p.ties.push((i, j));
                        } else if d == p.min {
                            p.ties.push((i, j));
                        }
                    }
                    None => p.overflow += 1,
                }
            }
            p
        })
        .collect();
    let mut summary = ClassSummary {
        class_size: class.len(),
        min_distance: None,
        witnesses: Vec::new(),
        histogram: BTreeMap::new(),
        histogram_overflow: 0,
    };
    let global_min = rows.iter().map(|p| p.min).min().unwrap_or(usize::MAX);
    for p in rows {
        summary.histogram_overflow += p.overflow;
        for (d, c) in p.hist {
            *summary.histogram.entry(d).or_insert(0) += c;
        }
        if p.min == global_min {
            summary.witnesses.extend(p.ties);
        }
    }
    if global_min != usize::MAX {
        summary.min_distance = Some(global_min);
    }
    summary.witnesses.sort_unstable();
    Ok(summary)
}

/// If f - g is a constant c ≠ 0 on a coset and zero elsewhere, returns that
/// coset and c.
pub fn difference_as_flat(f: &QFunc, g: &QFunc) -> Option<(Coset, u8)> {
    let q = f.q();
    let n = f.n();
    let mut support = Vec::new();
    let mut constant = None;
    for idx in 0..domain_size(q, n) {
        let d = (f.value_at_index(idx) as u32 + q - g.value_at_index(idx) as u32) % q;
        if d != 0 {
            match constant {
                None => constant = Some(d as u8),
                Some(c) if c as u32 != d => return None,
                _ => {}
            }
            support.push(point_at(q, n, idx));
        }
    }
    let c = constant?;
    // support must be a coset: translate to the first point and check closure
    let base = support[0].clone();
    let translated: Vec<Vec<u8>> = support
        .iter()
        .map(|p| {
            p.iter()
                .zip(&base)
                .map(|(&a, &b)| ((a as u32 + q - b as u32) % q) as u8)
                .collect()
        })
        .collect();
    let sub = Subspace::from_vectors(q, n, &translated).ok()?;
    if sub.size() != support.len() {
        return None;
    }
    let coset = Coset::new(sub, &base).ok()?;
    if !support.iter().all(|p| coset.contains(p)) {
        return None;
    }
    Some((coset, c))
}

/// Breakdown of the structured neighbor search per candidate subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborBreakdown {
    pub subspace: Subspace,
    pub candidates: usize,
    pub bent: usize,
    pub regular_bent: usize,
}

#[derive(Debug, Clone)]
pub struct NeighborSearch {
    pub neighbors: Vec<QFunc>,
    pub subspaces: usize,
    pub candidates: usize,
    pub bent_total: usize,
    pub regular_total: usize,
    pub per_subspace: Vec<NeighborBreakdown>,
}

/// Bent (optionally regular) neighbors of a bent f on F_q^{2m} at distance
/// q^m, by the structured search: every such neighbor differs by c·χ[coset]
/// with an m-dimensional coset, so it suffices to classify all
/// candidates f + c·χ[coset].
pub fn bent_neighbors_at(f: &QFunc, require_regular: bool) -> Result<NeighborSearch, SearchError> {
    let n = f.n();
    if n % 2 != 0 {
        return Err(SearchError::Precondition(
            "ambient variable count must be even".into(),
        ));
    }
    if !classify(f).is_bent {
        return Err(SearchError::Precondition("input must be bent".into()));
    }
    let q = f.q();
    let half = n / 2;
    let subs = enumerate_subspaces(q, n, half).unwrap();
    let per_subspace: Vec<NeighborBreakdown> = subs
        .par_iter()
        .map(|sub| {
            let mut breakdown = NeighborBreakdown {
                subspace: sub.clone(),
                candidates: 0,
                bent: 0,
                regular_bent: 0,
            };
            for coset in enumerate_cosets(sub) {
                let indices = coset.indices();
                for c in 1..q as u8 {
                    breakdown.candidates += 1;
                    let cand = f.add_at_indices(indices.iter().copied(), c);
                    let class = classify(&cand);
                    if class.is_bent {
                        breakdown.bent += 1;
                        if class.regular {
                            breakdown.regular_bent += 1;
                        }
                    }
                }
            }
            breakdown
        })
        .collect();
    // second pass only over accepted candidates keeps the hot loop light
    let mut neighbors = Vec::new();
    for sub in &subs {
        for coset in enumerate_cosets(sub) {
            let indices = coset.indices();
            for c in 1..q as u8 {
                let cand = f.add_at_indices(indices.iter().copied(), c);
                let class = classify(&cand);
                if class.is_bent && (!require_regular || class.regular) {
                    neighbors.push(cand);
                }
            }
        }
    }
    Ok(NeighborSearch {
        neighbors,
        subspaces: subs.len(),
        candidates: per_subspace.iter().map(|b| b.candidates).sum(),
        bent_total: per_subspace.iter().map(|b| b.bent).sum(),
        regular_total: per_subspace.iter().map(|b| b.regular_bent).sum(),
        per_subspace,
    })
}

/// Brute-force oracle for the structured neighbor search: scans the entire
/// table space for bent (optionally regular) functions at distance exactly
/// `dist` from f. Feasible only where the full space fits the budget.
pub fn bent_neighbors_unstructured(
    f: &QFunc,
    dist: usize,
    require_regular: bool,
    budget: u64,
) -> Result<Vec<QFunc>, SearchError> {
    let task = SearchTask::new(f.q(), f.n(), ClassPredicate::All).with_budget(budget);
    let size = task.space_size()?;
    let points = domain_size(task.q, task.n);
    const CHUNK: u64 = 8192;
    let chunks: Vec<u64> = (0..size.div_ceil(CHUNK)).collect();
    let found: Vec<Vec<QFunc>> = chunks
        .par_iter()
        .map(|&chunk| {
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(size);
            let mut out = Vec::new();
            for code in lo..hi {
                let g = QFunc::new(task.q, task.n, table_of_code(task.q, points, code)).unwrap();
                if f.distance_capped(&g, dist) != Some(dist) {
                    continue;
                }
                let class = classify(&g);
                if class.is_bent && (!require_regular || class.regular) {
                    out.push(g);
                }
            }
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// Machine-readable verification result, serialized as-is by the CLI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub theorem: String,
    pub params: BTreeMap<String, u64>,
    pub pass: bool,
    pub counts: BTreeMap<String, u64>,
    pub witnesses: Vec<String>,
    pub elapsed_ms: u128,
}

impl TheoremReport {
    fn new(theorem: &str) -> Self {
        TheoremReport {
            theorem: theorem.to_string(),
            params: BTreeMap::new(),
            pass: false,
            counts: BTreeMap::new(),
            witnesses: Vec::new(),
            elapsed_ms: 0,
        }
    }
}

/// The expected neighbor count q^n·(q^{n-1}+1)···(q+1)·(q-1).
pub fn quadratic_neighbor_count(q: u64, n: u32) -> u64 {
    let mut count = q.pow(n) * (q - 1);
    for i in 1..n {
        count *= q.pow(i) + 1;
    }
    count
}

/// The count of maximal totally isotropic subspaces, ∏_{i=1..n} (q^{n-i}+1).
pub fn isotropic_count(q: u64, n: u32) -> u64 {
    (0..n).map(|j| q.pow(j) + 1).product()
}

/// Runs one of the named verification drivers. Returns an explanatory error
/// for unknown names, missing parameters, or unsupported scales.
pub fn verify_theorem(
    name: &str,
    q: Option<u32>,
    n: Option<usize>,
    s: Option<usize>,
) -> Result<TheoremReport, SearchError> {
    let start = Instant::now();
    let mut report = match name {
        "thm1" => verify_thm1(q.ok_or(SearchError::MissingParam("q"))?, n.ok_or(SearchError::MissingParam("n"))?)?,
        "thm2" => verify_thm2(
            q.ok_or(SearchError::MissingParam("q"))?,
            n.ok_or(SearchError::MissingParam("n"))?,
            s.ok_or(SearchError::MissingParam("s"))?,
        )?,
        "cor3" => verify_cor3(q.ok_or(SearchError::MissingParam("q"))?, n.ok_or(SearchError::MissingParam("n"))?)?,
        "prop6" => verify_prop6(q.ok_or(SearchError::MissingParam("q"))?, n.ok_or(SearchError::MissingParam("n"))?)?,
        "thm3" => verify_thm3(n.ok_or(SearchError::MissingParam("n"))?)?,
        "thm4" => verify_thm4(n.ok_or(SearchError::MissingParam("n"))?)?,
        "lemma2" => verify_lemma2(n.ok_or(SearchError::MissingParam("n"))?)?,
        "cor4" => verify_cor4(q.ok_or(SearchError::MissingParam("q"))?)?,
        other => return Err(SearchError::UnknownTheorem(other.to_string())),
    };
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Minimal distance within the regular bent class equals q^{n/2}, and every
/// minimal difference is c·χ[coset] of dimension n/2.
fn verify_thm1(q: u32, n: usize) -> Result<TheoremReport, SearchError> {
    let mut report = TheoremReport::new("thm1");
    report.params.insert("q".into(), q as u64);
    report.params.insert("n".into(), n as u64);
    if n % 2 != 0 {
        return Err(SearchError::UnsupportedParams("n must be even".into()));
    }
    let class = enumerate_class(&SearchTask::new(q, n, ClassPredicate::RegularBent))?;
    let bound = domain_size(q, n / 2);
    let summary = min_distance_of(&class, 2 * bound)?;
    let structure_ok = summary.witnesses.iter().all(|&(i, j)| {
        difference_as_flat(&class[i], &class[j])
            .is_some_and(|(coset, _)| coset.dim() == n / 2)
    });
    report.counts.insert("class_size".into(), class.len() as u64);
    if let Some(min) = summary.min_distance {
        report.counts.insert("min_distance".into(), min as u64);
        report
            .counts
            .insert("minimal_pairs".into(), summary.witnesses.len() as u64);
        report.pass = min == bound && structure_ok;
        if let Some(&(i, j)) = summary.witnesses.first() {
            report.witnesses.push(class[i].serialize());
            report.witnesses.push(class[j].serialize());
        }
    }
    Ok(report)
}

/// Minimal distance within the s-plateaued class is at least the stated
/// power bound; the report records whether it is attained.
fn verify_thm2(q: u32, n: usize, s: usize) -> Result<TheoremReport, SearchError> {
    let mut report = TheoremReport::new("thm2");
    report.params.insert("q".into(), q as u64);
    report.params.insert("n".into(), n as u64);
    report.params.insert("s".into(), s as u64);
    let bound = match q {
        2 => {
            if (s + n) % 2 != 0 {
                1usize
            } else {
                1usize << ((s + n - 2) / 2)
            }
        }
        3 => 3usize.pow(((s + n - 1) / 2) as u32),
        _ => return Err(SearchError::UnsupportedParams("q must be 2 or 3".into())),
    };
    let class = enumerate_class(&SearchTask::new(q, n, ClassPredicate::Plateaued(s)))?;
    let summary = min_distance_of(&class, 2 * bound)?;
    report.counts.insert("class_size".into(), class.len() as u64);
    report.counts.insert("bound".into(), bound as u64);
    match summary.min_distance {
        Some(min) => {
            report.counts.insert("min_distance".into(), min as u64);
            report
                .counts
                .insert("minimal_pairs".into(), summary.witnesses.len() as u64);
            report.pass = min >= bound;
            if let Some(&(i, j)) = summary.witnesses.first() {
                report.witnesses.push(class[i].serialize());
                report.witnesses.push(class[j].serialize());
            }
        }
        None => report.pass = true, // vacuous: fewer than two members
    }
    Ok(report)
}

/// The structured neighbor count around Q_n matches the closed formula; at
/// (q=3, n=1) the unstructured full scan confirms the same set.
fn verify_cor3(q: u32, n: usize) -> Result<TheoremReport, SearchError> {
    let mut report = TheoremReport::new("cor3");
    report.params.insert("q".into(), q as u64);
    report.params.insert("n".into(), n as u64);
    if q == 2 {
        return Err(SearchError::UnsupportedParams("q must be odd".into()));
    }
    let f = make_qn(q, n).map_err(|e| SearchError::UnsupportedParams(e.to_string()))?;
    let search = bent_neighbors_at(&f, true)?;
    let expected = quadratic_neighbor_count(q as u64, n as u32);
    report.counts.insert("subspaces".into(), search.subspaces as u64);
    report.counts.insert("candidates".into(), search.candidates as u64);
    report.counts.insert("bent".into(), search.bent_total as u64);
    report
        .counts
        .insert("regular_bent".into(), search.regular_total as u64);
    report.counts.insert("expected".into(), expected);
    let mut pass = search.neighbors.len() as u64 == expected;
    // all structured neighbors really sit at distance q^n
    let dist = domain_size(q, n);
    pass &= search
        .neighbors
        .iter()
        .all(|g| f.distance(g).unwrap() == dist);
    if q == 3 && n == 1 {
        let unstructured = bent_neighbors_unstructured(&f, dist, true, DEFAULT_SCAN_BUDGET)?;
        report
            .counts
            .insert("unstructured".into(), unstructured.len() as u64);
        let mut a: Vec<&QFunc> = search.neighbors.iter().collect();
        let mut b: Vec<&QFunc> = unstructured.iter().collect();
        a.sort_by_key(|f| f.table().to_vec());
        b.sort_by_key(|f| f.table().to_vec());
        pass &= a == b;
    }
    report.pass = pass;
    if let Some(g) = search.neighbors.first() {
        report.witnesses.push(g.serialize());
    }
    Ok(report)
}

/// Maximal totally isotropic subspace counts of Q_n match ∏ (q^{n-i}+1).
fn verify_prop6(q: u32, n: usize) -> Result<TheoremReport, SearchError> {
    let mut report = TheoremReport::new("prop6");
    report.params.insert("q".into(), q as u64);
    report.params.insert("n".into(), n as u64);
    let f = make_qn(q, n).map_err(|e| SearchError::UnsupportedParams(e.to_string()))?;
    let found = crate::subspaces::totally_isotropic_subspaces(&f, n)
        .map_err(|e| SearchError::UnsupportedParams(e.to_string()))?;
    let expected = isotropic_count(q as u64, n as u32);
    report.counts.insert("count".into(), found.len() as u64);
    report.counts.insert("expected".into(), expected);
    report.pass = found.len() as u64 == expected;
    Ok(report)
}

/// Balanced binary functions with cor ≤ n-2 obey nl ≤ 2^{n-1} - 2^{cor+1},
/// and every equality case is plateaued.
fn verify_thm3(n: usize) -> Result<TheoremReport, SearchError> {
    let mut report = TheoremReport::new("thm3");
    report.params.insert("n".into(), n as u64);
    let class = enumerate_class(&SearchTask::new(2, n, ClassPredicate::Balanced))?;
    let mut checked = 0u64;
    let mut equalities = 0u64;
    let mut pass = true;
    for f in &class {
        let check = match tarannikov_check(f) {
            Ok(c) => c,
            Err(_) => continue, // cor = n-1 falls outside the hypothesis
        };
        checked += 1;
        if !check.holds || !check.equality_implies_plateaued {
            pass = false;
            report.witnesses.push(f.serialize());
        }
        if check.equality {
            equalities += 1;
        }
    }
    report.counts.insert("balanced".into(), class.len() as u64);
    report.counts.insert("checked".into(), checked);
    report.counts.insert("equality_cases".into(), equalities);
    report.pass = pass;
    Ok(report)
}

/// Balanced ternary functions obey nl ≤ 2·3^{n-1} - 3^{cor-1}, with every
/// equality case plateaued.
fn verify_thm4(n: usize) -> Result<TheoremReport, SearchError> {
    let mut report = TheoremReport::new("thm4");
    report.params.insert("n".into(), n as u64);
    let class = enumerate_class(&SearchTask::new(3, n, ClassPredicate::Balanced))?;
    let mut equalities = 0u64;
    let mut pass = true;
    for f in &class {
        let check = tarannikov_check(f).map_err(|e| SearchError::Precondition(e.to_string()))?;
        if !check.holds || !check.equality_implies_plateaued {
            pass = false;
            report.witnesses.push(f.serialize());
        }
        if check.equality {
            equalities += 1;
        }
    }
    report.counts.insert("balanced".into(), class.len() as u64);
    report.counts.insert("equality_cases".into(), equalities);
    report.pass = pass;
    Ok(report)
}

/// Every Walsh coefficient of a balanced ternary function is divisible by
/// 3^{cor(f)}.
fn verify_lemma2(n: usize) -> Result<TheoremReport, SearchError> {
    let mut report = TheoremReport::new("lemma2");
    report.params.insert("n".into(), n as u64);
    let class = enumerate_class(&SearchTask::new(3, n, ClassPredicate::Balanced))?;
    let mut pass = true;
    for f in &class {
        let cor = crate::metrics::correlation_immunity(f);
        if walsh_divisibility_order(f) < cor {
            pass = false;
            report.witnesses.push(f.serialize());
        }
    }
    report.counts.insert("balanced".into(), class.len() as u64);
    report.pass = pass;
    Ok(report)
}

/// Exhaustive bent counts of two-variable functions against the q^q·q!
/// lower bound (an equality for q = 2).
fn verify_cor4(q: u32) -> Result<TheoremReport, SearchError> {
    let mut report = TheoremReport::new("cor4");
    report.params.insert("q".into(), q as u64);
    if q != 2 && q != 3 {
        return Err(SearchError::UnsupportedParams("q must be 2 or 3".into()));
    }
    let class = enumerate_class(&SearchTask::new(q, 2, ClassPredicate::Bent))?;
    let factorial: u64 = (1..=q as u64).product();
    let bound = (q as u64).pow(q) * factorial;
    report.counts.insert("bent".into(), class.len() as u64);
    report.counts.insert("bound".into(), bound);
    report.pass = if q == 2 {
        class.len() as u64 == bound
    } else {
        class.len() as u64 >= bound
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{base_r, base_r_prime, base_t, base_t_prime};
    use crate::spectrum::walsh_transform;
    use std::collections::HashSet;

    #[test]
    fn enumerate_binary_bent() {
        let class = enumerate_class(&SearchTask::new(2, 2, ClassPredicate::Bent)).unwrap();
        assert_eq!(class.len(), 8);
    }

    #[test]
    fn enumerate_ternary_univariate_bent_contains_seeds() {
        let class = enumerate_class(&SearchTask::new(3, 1, ClassPredicate::Plateaued(0))).unwrap();
        assert!(class.contains(&base_t()));
        assert!(class.contains(&base_t_prime()));
        // one ternary variable: exactly the 18 non-affine functions are bent
        assert_eq!(class.len(), 18);
    }

    #[test]
    fn impossible_class_is_empty() {
        // q=2, n=2, s=1: the norm 2^{n+s} = 8 is not an integer square
        let class = enumerate_class(&SearchTask::new(2, 2, ClassPredicate::Plateaued(1))).unwrap();
        assert!(class.is_empty());
    }

    #[test]
    fn shards_partition_the_stream() {
        let full: HashSet<QFunc> = enumerate_class(&SearchTask::new(2, 2, ClassPredicate::Bent))
            .unwrap()
            .into_iter()
            .collect();
        for total in [2usize, 3, 5] {
            let mut merged = HashSet::new();
            for index in 0..total {
                let shard = enumerate_class(
                    &SearchTask::new(2, 2, ClassPredicate::Bent).with_shard(index, total),
                )
                .unwrap();
                for f in shard {
                    assert!(merged.insert(f), "duplicate across shards");
                }
            }
            assert_eq!(merged, full, "total={total}");
        }
    }

    #[test]
    fn budget_guard() {
        let task = SearchTask::new(3, 3, ClassPredicate::All);
        assert!(matches!(
            enumerate_class(&task),
            Err(SearchError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            enumerate_class(&SearchTask::new(2, 2, ClassPredicate::All).with_shard(3, 2)),
            Err(SearchError::ShardOutOfRange { .. })
        ));
    }

    #[test]
    fn min_distance_ternary_univariate_bent() {
        let task = SearchTask::new(3, 1, ClassPredicate::Plateaued(0));
        let summary = min_distance_in_class(&task, 3).unwrap();
        assert_eq!(summary.min_distance, Some(1));
        // (T, T') is among the witnesses
        let class = enumerate_class(&task).unwrap();
        let ti = class.iter().position(|f| f == &base_t()).unwrap();
        let tpi = class.iter().position(|f| f == &base_t_prime()).unwrap();
        let pair = (ti.min(tpi), ti.max(tpi));
        assert!(summary.witnesses.contains(&pair));
    }

    #[test]
    fn difference_flat_detection() {
        let f = make_qn(3, 1).unwrap();
        let line = Subspace::from_vectors(3, 2, &[vec![1, 0]]).unwrap();
        let coset = Coset::new(line, &[0, 1]).unwrap();
        let g = f.add_at_indices(coset.indices(), 2);
        let (found, c) = difference_as_flat(&g, &f).unwrap();
        assert_eq!(found, coset);
        assert_eq!(c, 2);
        // a non-flat difference is rejected
        let h = f.add_at_indices([0usize, 1, 3].into_iter(), 1);
        assert!(difference_as_flat(&h, &f).is_none());
    }

    #[test]
    fn neighbors_of_q1() {
        let f = make_qn(3, 1).unwrap();
        let search = bent_neighbors_at(&f, true).unwrap();
        // two isotropic lines × three cosets × two nonzero constants, and
        // every one of those modifications is regular bent; the raw scan of
        // all 3^9 tables below confirms the count independently
        assert_eq!(search.neighbors.len(), 12);
        assert_eq!(search.subspaces, 4);
        // candidate pool: 4 subspaces × 3 cosets × 2 constants
        assert_eq!(search.candidates, 24);
        let unstructured = bent_neighbors_unstructured(&f, 3, true, DEFAULT_SCAN_BUDGET).unwrap();
        let a: HashSet<QFunc> = search.neighbors.into_iter().collect();
        let b: HashSet<QFunc> = unstructured.into_iter().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn verify_drivers() {
        // the closed-form neighbor count undercounts by a factor of two: the
        // structured and unstructured searches agree on 12, so the driver
        // honestly reports the mismatch
        let cor3 = verify_theorem("cor3", Some(3), Some(1), None).unwrap();
        assert!(!cor3.pass);
        assert_eq!(cor3.counts["regular_bent"], 12);
        assert_eq!(cor3.counts["unstructured"], 12);
        assert_eq!(cor3.counts["expected"], 6);

        let prop6 = verify_theorem("prop6", Some(3), Some(2), None).unwrap();
        assert!(prop6.pass);
        assert_eq!(prop6.counts["count"], 8);

        let cor4 = verify_theorem("cor4", Some(2), None, None).unwrap();
        assert!(cor4.pass);
        assert_eq!(cor4.counts["bent"], 8);

        assert!(matches!(
            verify_theorem("nope", None, None, None),
            Err(SearchError::UnknownTheorem(_))
        ));
        assert!(matches!(
            verify_theorem("thm2", Some(2), Some(4), None),
            Err(SearchError::MissingParam("s"))
        ));
    }

    #[test]
    fn verify_thm2_small() {
        let report = verify_theorem("thm2", Some(3), Some(1), Some(0)).unwrap();
        assert!(report.pass);
        assert_eq!(report.counts["min_distance"], 1);
        assert_eq!(report.counts["bound"], 1);
    }

    #[test]
    fn formula_helpers() {
        assert_eq!(quadratic_neighbor_count(3, 1), 6);
        assert_eq!(quadratic_neighbor_count(3, 2), 72);
        assert_eq!(isotropic_count(3, 1), 2);
        assert_eq!(isotropic_count(3, 2), 8);
        assert_eq!(isotropic_count(2, 2), 6);
    }

    #[test]
    fn seeds_are_not_left_in_reports() {
        // base_r / base_r_prime are wired through thm2 at (2,4,2) in the
        // acceptance suite; here just confirm they classify as expected
        assert_eq!(classify(&base_r()).plateaued_s, Some(2));
        assert_eq!(classify(&base_r_prime()).plateaued_s, Some(2));
    }

    #[test]
    fn walsh_spectrum_support_matches_class() {
        let f = base_t();
        assert_eq!(walsh_transform(&f).support_size(), 3);
    }
}

