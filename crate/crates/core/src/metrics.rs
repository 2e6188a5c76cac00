//! Nonlinearity, strong nonlinearity, correlation immunity, Walsh
//! divisibility, and the bound checks tying nonlinearity to correlation
//! immunity for q = 2 and q = 3.

use crate::constructions::Q4Func;
use crate::cyclotomic::CycInt;
use crate::functions::{domain_size, point_at, QFunc};
use crate::spectrum::{classify, walsh_transform};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricsError {
    #[error("operation requires q in {{2,3}}, got q = {0}")]
    UnsupportedModulus(u32),
    #[error("estimated work {needed} exceeds the budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("function must be balanced")]
    Unbalanced,
    #[error("correlation immunity {cor} exceeds n-2 = {max}")]
    CorTooLarge { cor: usize, max: usize },
}

/// Default work budget for strong-nonlinearity searches; generous enough for
/// order-4 functions of up to three variables.
pub const DEFAULT_STRONG_NL_BUDGET: u64 = 50_000_000;

/// Hamming distance from f to the q^{n+1} affine functions, computed with one
/// difference-value histogram per linear part: nl = q^n - max_{y,a} #{x :
/// f(x) - ⟨x,y⟩ = a}.
pub fn nonlinearity(f: &QFunc) -> usize {
    let q = f.q();
    let n = f.n();
    let size = domain_size(q, n);
    let points: Vec<Vec<u8>> = (0..size).map(|i| point_at(q, n, i)).collect();
    let mut best = 0usize;
    for y in &points {
        let mut hist = vec![0usize; q as usize];
        for (x, &fx) in points.iter().zip(f.table()) {
            let mut ip = 0u64;
            for (&a, &b) in x.iter().zip(y) {
                ip += a as u64 * b as u64;
            }
            let d = (fx as u64 + q as u64 - ip % q as u64) % q as u64;
            hist[d as usize] += 1;
        }
        best = best.max(*hist.iter().max().unwrap());
    }
    size - best
}

/// Nonlinearity from the Walsh spectrum; defined for q ∈ {2, 3}.
/// q = 2: 2^{n-1} - max|W|/2.  q = 3: 2·3^{n-1} - max_{a,y} 2Re(ξ^a W(y))/3.
pub fn nonlinearity_spectral(f: &QFunc) -> Result<usize, MetricsError> {
    let q = f.q();
    let n = f.n();
    let spec = walsh_transform(f);
    match q {
        2 => {
            let max_abs = spec
                .coefficients()
                .iter()
                .map(|w| w.as_rational_integer().expect("binary W is rational").abs())
                .max()
                .unwrap();
            let size = BigInt::from(domain_size(2, n));
            let nl: BigInt = (size - max_abs) / 2;
            Ok(nl.to_usize().expect("desk-scale nonlinearity"))
        }
        3 => {
            let mut max2re: Option<BigInt> = None;
            for w in spec.coefficients() {
                for a in 0..3 {
                    let v = w.mul_root(a).twice_real_part().unwrap();
                    if max2re.as_ref().is_none_or(|m| &v > m) {
                        max2re = Some(v);
                    }
                }
            }
            let m2 = max2re.unwrap();
            let nl: BigInt = (BigInt::from(2) * BigInt::from(domain_size(3, n)) - m2) / 3;
            Ok(nl.to_usize().expect("desk-scale nonlinearity"))
        }
        q => Err(MetricsError::UnsupportedModulus(q)),
    }
}

/// Permutations of 0..q in lexicographic order.
fn permutations(q: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..q as u8).collect();
    fn rec(cur: &mut Vec<u8>, k: usize, out: &mut Vec<Vec<u8>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(cur, k + 1, out);
            cur.swap(k, i);
        }
    }
    rec(&mut cur, 0, &mut out);
    out.sort();
    out
}

/// Minimum distance from `table` to the isotopes of affine functions over the
/// additive group given by `add`.
///
/// Every isotope of an affine function can be written τ₀(π₁(x₁) ⊕ ... ⊕
/// πₙ(xₙ)) where each πᵢ is a permutation of F_q or the zero map (a zero
/// linear coefficient kills the coordinate; nonzero coefficients and the
/// constant are absorbed into the πᵢ and τ₀). The search enumerates exactly
/// that normal form, so it is a complete brute force over the isotopy class.
fn strong_nl_table(
    q: usize,
    n: usize,
    table: &[u8],
    add: impl Fn(u8, u8) -> u8,
    budget: u64,
) -> Result<usize, MetricsError> {
    let perms = permutations(q);
    let options = perms.len() as u64 + 1;
    let size = table.len() as u64;
    let needed = options
        .checked_pow(n as u32)
        .and_then(|t| t.checked_mul(size + perms.len() as u64 * q as u64))
        .ok_or(MetricsError::BudgetExceeded {
            needed: u64::MAX,
            budget,
        })?;
    if needed > budget {
        return Err(MetricsError::BudgetExceeded { needed, budget });
    }

    let points: Vec<Vec<u8>> = (0..table.len())
        .map(|i| point_at(q as u32, n, i))
        .collect();
    let mut choice = vec![0usize; n]; // index into perms, or perms.len() = zero map
    let mut best = table.len();
    loop {
        // base table B(x) = ⊕ᵢ πᵢ(xᵢ) and the coincidence matrix against f
        let mut counts = vec![vec![0usize; q]; q];
        for (x, &fx) in points.iter().zip(table) {
            let mut b = 0u8;
            for (i, &c) in choice.iter().enumerate() {
                if c < perms.len() {
                    b = add(b, perms[c][x[i] as usize]);
                }
            }
            counts[b as usize][fx as usize] += 1;
        }
        for tau0 in &perms {
            let hit: usize = (0..q).map(|v| counts[v][tau0[v] as usize]).sum();
            best = best.min(table.len() - hit);
        }
        // odometer over per-coordinate choices
        let mut i = 0;
        loop {
            if i == n {
                return Ok(best);
            }
            choice[i] += 1;
            if choice[i] <= perms.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Distance from f to the isotopes of affine functions over F_q (prime q).
/// For q = 2 and q = 3 this coincides with [`nonlinearity`].
pub fn strong_nonlinearity(f: &QFunc, budget: u64) -> Result<usize, MetricsError> {
    let q = f.q();
    strong_nl_table(q as usize, f.n(), f.table(), |a, b| ((a as u32 + b as u32) % q) as u8, budget)
}

/// Strong nonlinearity of an order-4 function; the additive group of F_4 is
/// bitwise XOR on the pair encoding.
pub fn strong_nonlinearity_q4(f: &Q4Func, budget: u64) -> Result<usize, MetricsError> {
    strong_nl_table(4, f.n(), f.table(), |a, b| a ^ b, budget)
}

/// Correlation immunity by the face definition, for any alphabet size:
/// the largest m = n-k (k >= 1) such that for every value the counts
/// |f^{-1}(a) ∩ Γ| agree across all k-dimensional axis-aligned faces Γ.
pub fn correlation_immunity_table(q: u32, n: usize, table: &[u8]) -> usize {
    for m in (1..n).rev() {
        if face_counts_uniform(q, n, table, n - m) {
            return m;
        }
    }
    0
}

fn face_counts_uniform(q: u32, n: usize, table: &[u8], k: usize) -> bool {
    // a k-face frees k coordinates and fixes the remaining n-k
    let qu = q as usize;
    let mut reference: Option<Vec<usize>> = None;
    let free_sets = combinations(n, k);
    for free in &free_sets {
        let fixed: Vec<usize> = (0..n).filter(|i| !free.contains(i)).collect();
        for assign_idx in 0..domain_size(q, fixed.len()) {
            let assign = point_at(q, fixed.len().max(1), assign_idx);
            let mut hist = vec![0usize; qu];
            for free_idx in 0..domain_size(q, k) {
                let free_vals = point_at(q, k.max(1), free_idx);
                let mut x = vec![0u8; n];
                for (&c, &v) in fixed.iter().zip(&assign) {
                    x[c] = v;
                }
                for (&c, &v) in free.iter().zip(&free_vals) {
                    x[c] = v;
                }
                let mut idx = 0usize;
                for &xi in x.iter().rev() {
                    idx = idx * qu + xi as usize;
                }
                hist[table[idx] as usize] += 1;
            }
            match &reference {
                None => reference = Some(hist),
                Some(r) => {
                    if r != &hist {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn correlation_immunity(f: &QFunc) -> usize {
    correlation_immunity_table(f.q(), f.n(), f.table())
}

pub fn correlation_immunity_q4(f: &Q4Func) -> usize {
    correlation_immunity_table(4, f.n(), f.table())
}

/// Spectral form for balanced functions: min weight over the Walsh support,
/// minus one.
pub fn correlation_immunity_spectral(f: &QFunc) -> Result<usize, MetricsError> {
    if !f.is_balanced() {
        return Err(MetricsError::Unbalanced);
    }
    let spec = walsh_transform(f);
    let q = f.q();
    let n = f.n();
    let min_wt = (0..domain_size(q, n))
        .filter(|&i| !spec.coefficients()[i].is_zero())
        .map(|i| point_at(q, n, i).iter().filter(|&&v| v != 0).count())
        .min()
        .expect("Parseval forces a nonzero coefficient");
    Ok(min_wt - 1)
}

/// The largest k with q^k dividing every Walsh coefficient.
pub fn walsh_divisibility_order(f: &QFunc) -> usize {
    let spec = walsh_transform(f);
    let q = BigInt::from(f.q());
    spec.coefficients()
        .iter()
        .filter(|w| !w.is_zero())
        .map(|w| cyc_valuation(w, &q))
        .min()
        .expect("Parseval forces a nonzero coefficient")
}

/// min over nonzero canonical coefficients of the q-adic valuation.
fn cyc_valuation(w: &CycInt, q: &BigInt) -> usize {
    w.coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| {
            let mut v = 0usize;
            let mut c = c.clone();
            while (&c % q).is_zero() {
                c /= q;
                v += 1;
            }
            v
        })
        .min()
        .unwrap()
}

/// Result of checking the nonlinearity/correlation-immunity bound
/// (q = 2: nl ≤ 2^{n-1} - 2^{cor+1};  q = 3: nl ≤ 2·3^{n-1} - 3^{cor-1}).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TarannikovCheck {
    pub cor: usize,
    pub nl: usize,
    /// The integer bound (for q = 3 with cor = 0 the exact bound is not an
    /// integer; `bound` is then its floor and `equality` cannot hold).
    pub bound: usize,
    pub holds: bool,
    /// True iff the exact bound is attained.
    pub equality: bool,
    /// The implication "equality ⇒ plateaued", verified on this function.
    pub equality_implies_plateaued: bool,
    pub plateaued_s: Option<usize>,
}

pub fn tarannikov_check(f: &QFunc) -> Result<TarannikovCheck, MetricsError> {
    if !f.is_balanced() {
        return Err(MetricsError::Unbalanced);
    }
    let n = f.n();
    let cor = correlation_immunity(f);
    let nl = nonlinearity(f);
    let (bound, holds, equality) = match f.q() {
        2 => {
            if cor > n - 2 {
                return Err(MetricsError::CorTooLarge { cor, max: n - 2 });
            }
            let bound = (1usize << (n - 1)) - (1usize << (cor + 1));
            (bound, nl <= bound, nl == bound)
        }
        3 => {
            // compare 3·nl against 2·3^n - 3^cor to stay in integers
            let scaled_bound = 2 * 3usize.pow(n as u32) - 3usize.pow(cor as u32);
            let bound = scaled_bound / 3;
            let holds = 3 * nl <= scaled_bound;
            let equality = cor >= 1 && 3 * nl == scaled_bound;
            (bound, holds, equality)
        }
        q => return Err(MetricsError::UnsupportedModulus(q)),
    };
    let plateaued_s = classify(f).plateaued_s;
    Ok(TarannikovCheck {
        cor,
        nl,
        bound,
        holds,
        equality,
        equality_implies_plateaued: !equality || plateaued_s.is_some(),
        plateaued_s,
    })
}

/// The metrics bundle embedded in analysis reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricReport {
    pub nl: usize,
    /// 2·3^{n-1} - 3^{cor-1}, present for q = 3 with cor >= 1.
    pub nl_bound_ternary: Option<usize>,
    pub cor: usize,
    pub balanced: bool,
    pub strong_nl: Option<usize>,
    pub divisibility_order: usize,
}

impl MetricReport {
    /// `strong_nl_budget = Some(b)` opts into the strong-nonlinearity search.
    pub fn compute(f: &QFunc, strong_nl_budget: Option<u64>) -> Result<Self, MetricsError> {
        let cor = correlation_immunity(f);
        let nl_bound_ternary = (f.q() == 3 && cor >= 1)
            .then(|| 2 * 3usize.pow((f.n() - 1) as u32) - 3usize.pow((cor - 1) as u32));
        let strong_nl = match strong_nl_budget {
            Some(budget) => Some(strong_nonlinearity(f, budget)?),
            None => None,
        };
        Ok(MetricReport {
            nl: nonlinearity(f),
            nl_bound_ternary,
            cor,
            balanced: f.is_balanced(),
            strong_nl,
            divisibility_order: walsh_divisibility_order(f),
        })
    }
}
