//! Linear algebra over F_q: subspaces in reduced row-echelon form, canonical
//! cosets, duals, enumeration, totally isotropic subspaces of quadratic forms,
//! and affinity/Poisson checks of functions restricted to cosets.

use crate::cyclotomic::CycInt;
use crate::functions::{domain_size, index_of, inner_product, mod_inverse, point_at, AffineFunc, QFunc};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubspaceError {
    #[error("dimension {k} out of range for F_q^{n}")]
    DimensionOutOfRange { k: usize, n: usize },
    #[error("vector length {got} does not match ambient dimension {expected}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("subspaces live in different ambient spaces")]
    SpaceMismatch,
}

/// A linear subspace of F_q^n, stored as a reduced row-echelon basis.
/// Equal subspaces have identical basis matrices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    q: u32,
    n: usize,
    basis: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Row-reduces `rows`, discarding dependent rows.
    pub fn from_vectors(q: u32, n: usize, rows: &[Vec<u8>]) -> Result<Self, SubspaceError> {
        for r in rows {
            if r.len() != n {
                return Err(SubspaceError::AmbientMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
        }
        let (basis, pivots) = rref(q, rows);
        Ok(Subspace {
            q,
            n,
            basis,
            pivots,
        })
    }

    pub fn zero(q: u32, n: usize) -> Self {
        Subspace {
            q,
            n,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(q: u32, n: usize) -> Self {
        Self::from_vectors(
            q,
            n,
            &(0..n)
                .map(|i| (0..n).map(|j| u8::from(i == j)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    pub fn size(&self) -> usize {
        domain_size(self.q, self.dim())
    }

    /// Reduces `v` modulo the subspace: pivot coordinates end up zero.
    /// The result is the canonical representative of v's coset.
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let q = self.q;
        let mut w: Vec<u32> = v.iter().map(|&x| x as u32).collect();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let factor = w[p] % q;
            if factor != 0 {
                for c in 0..self.n {
                    w[c] = (w[c] + (q - factor) * row[c] as u32) % q;
                }
            }
        }
        w.into_iter().map(|x| x as u8).collect()
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// All q^dim points of the subspace, in deterministic order.
    pub fn points(&self) -> Vec<Vec<u8>> {
        let k = self.dim();
        (0..domain_size(self.q, k))
            .map(|i| {
                let coeffs = point_at(self.q, k.max(1), i % domain_size(self.q, k.max(1)));
                self.combine(&coeffs[..k])
            })
            .collect()
    }

    fn combine(&self, coeffs: &[u8]) -> Vec<u8> {
        let mut v = vec![0u32; self.n];
        for (c, row) in coeffs.iter().zip(&self.basis) {
            for j in 0..self.n {
                v[j] += *c as u32 * row[j] as u32;
            }
        }
        v.into_iter().map(|x| (x % self.q) as u8).collect()
    }

    /// Γ^⊥ = {y : ⟨x,y⟩ = 0 for all x in Γ}.
    pub fn dual(&self) -> Subspace {
        // nullspace of the basis matrix, read off the RREF free columns
        let q = self.q;
        let n = self.n;
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; n];
            for &p in &self.pivots {
                s[p] = true;
            }
            s
        };
        let mut rows = Vec::new();
        for free in 0..n {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![0u8; n];
            v[free] = 1;
            for (row, &p) in self.basis.iter().zip(&self.pivots) {
                // solve ⟨row, v⟩ = 0 for the pivot coordinate
                let val = row[free] as u32 % q;
                v[p] = ((q - val) % q) as u8;
            }
            rows.push(v);
        }
        Subspace::from_vectors(q, n, &rows).unwrap()
    }
}

/// Reduced row echelon form over F_q; returns (rows, pivot columns).
fn rref(q: u32, rows: &[Vec<u8>]) -> (Vec<Vec<u8>>, Vec<usize>) {
    let n = rows.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as u32 % q).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = mod_inverse(m[rank][col] as u8, q).unwrap() as u32;
        for v in m[rank].iter_mut() {
            *v = (*v * inv) % q;
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..n {
                    m[r][c] = (m[r][c] + (q - f) * m[rank][c]) % q;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    let basis = m[..rank]
        .iter()
        .map(|r| r.iter().map(|&v| v as u8).collect())
        .collect();
    (basis, pivots)
}

/// A coset rep + Γ with the representative canonicalized by zeroing the
/// pivot coordinates; structural equality is coset equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coset {
    subspace: Subspace,
    rep: Vec<u8>,
}

impl Coset {
    pub fn new(subspace: Subspace, rep: &[u8]) -> Result<Self, SubspaceError> {
        if rep.len() != subspace.n() {
            return Err(SubspaceError::AmbientMismatch {
                expected: subspace.n(),
                got: rep.len(),
            });
        }
        let rep = subspace.reduce(rep);
        Ok(Coset { subspace, rep })
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn rep(&self) -> &[u8] {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn size(&self) -> usize {
        self.subspace.size()
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.subspace.reduce(v) == self.rep
    }

    /// Points rep + Σ t_i b_i in the order of the coefficient counter t.
    pub fn points(&self) -> Vec<Vec<u8>> {
        let q = self.subspace.q();
        self.subspace
            .points()
            .into_iter()
            .map(|p| {
                p.iter()
                    .zip(&self.rep)
                    .map(|(&a, &b)| ((a as u32 + b as u32) % q) as u8)
                    .collect()
            })
            .collect()
    }

    /// Table indices of the coset points.
    pub fn indices(&self) -> Vec<usize> {
        let q = self.subspace.q();
        self.points().iter().map(|p| index_of(q, p)).collect()
    }
}

/// All k-dimensional subspaces of F_q^n, each exactly once, by enumerating
/// RREF matrices per pivot-column pattern.
pub fn enumerate_subspaces(q: u32, n: usize, k: usize) -> Result<Vec<Subspace>, SubspaceError> {
    if k > n {
        return Err(SubspaceError::DimensionOutOfRange { k, n });
    }
    if k == 0 {
        return Ok(vec![Subspace::zero(q, n)]);
    }
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        // free positions: to the right of each pivot, excluding pivot columns
        let mut free = Vec::new();
        for (r, &p) in pivots.iter().enumerate() {
            for c in p + 1..n {
                if !pivots.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let mut counter = vec![0u8; free.len()];
        loop {
            let mut basis = vec![vec![0u8; n]; k];
            for (r, &p) in pivots.iter().enumerate() {
                basis[r][p] = 1;
            }
            for (&(r, c), &v) in free.iter().zip(&counter) {
                basis[r][c] = v;
            }
            out.push(Subspace {
                q,
                n,
                basis,
                pivots: pivots.clone(),
            });
            // increment the base-q counter
            let mut i = 0;
            loop {
                if i == counter.len() {
                    break;
                }
                counter[i] += 1;
                if (counter[i] as u32) < q {
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
            if i == counter.len() {
                break;
            }
        }
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
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
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// The q^{n-k} cosets of S, canonical representatives in index order.
pub fn enumerate_cosets(s: &Subspace) -> Vec<Coset> {
    let q = s.q();
    let n = s.n();
    let pivot_set: Vec<bool> = {
        let mut set = vec![false; n];
        for &p in s.pivots.iter() {
            set[p] = true;
        }
        set
    };
    let free_cols: Vec<usize> = (0..n).filter(|&c| !pivot_set[c]).collect();
    (0..domain_size(q, free_cols.len()))
        .map(|i| {
            let vals = point_at(q, free_cols.len().max(1), i);
            let mut rep = vec![0u8; n];
            for (&c, &v) in free_cols.iter().zip(&vals) {
                rep[c] = v;
            }
            Coset {
                subspace: s.clone(),
                rep,
            }
        })
        .collect()
}

/// Gaussian binomial [n choose k]_q, the number of k-dim subspaces of F_q^n.
pub fn gaussian_binomial(q: u64, n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= (q as u128).pow((n - i) as u32) - 1;
        den *= (q as u128).pow((k - i) as u32) - 1;
    }
    (num / den) as u64
}

/// All `dim`-dimensional subspaces on which `form` vanishes identically.
///
/// Depth-first basis extension: candidate rows have their leading 1 beyond
/// the previous pivot and zeros at earlier pivot columns, which bounds the
/// search to echelon bases; the results are then canonicalized to RREF and
/// deduplicated. Candidates are pre-filtered by isotropy of the vector and
/// vanishing of the polar form against the current basis, then confirmed by
/// evaluating `form` on the whole candidate span; the confirmation keeps the
/// search correct for q = 2 and for tables that are not genuine quadratic
/// forms.
pub fn totally_isotropic_subspaces(form: &QFunc, dim: usize) -> Result<Vec<Subspace>, SubspaceError> {
    let q = form.q();
    let n = form.n();
    if dim > n {
        return Err(SubspaceError::DimensionOutOfRange { k: dim, n });
    }
    let mut out = Vec::new();
    if dim == 0 {
        if form.eval(&vec![0u8; n]) == 0 {
            out.push(Subspace::zero(q, n));
        }
        return Ok(out);
    }

    struct Dfs<'a> {
        form: &'a QFunc,
        q: u32,
        n: usize,
        dim: usize,
        out: Vec<Subspace>,
    }

    impl Dfs<'_> {
        fn extend(&mut self, basis: &mut Vec<Vec<u8>>, pivots: &mut Vec<usize>, span: &Vec<Vec<u8>>) {
            if basis.len() == self.dim {
                self.out.push(Subspace {
                    q: self.q,
                    n: self.n,
                    basis: basis.clone(),
                    pivots: pivots.clone(),
                });
                return;
            }
            let start = pivots.last().map_or(0, |&p| p + 1);
            for pivot in start..self.n {
                // canonical extension rows: leading 1 at `pivot`, zeros at
                // earlier coordinates and at existing pivot columns
                let tail: Vec<usize> = (pivot + 1..self.n)
                    .filter(|c| !pivots.contains(c))
                    .collect();
                for t in 0..domain_size(self.q, tail.len()) {
                    let vals = point_at(self.q, tail.len().max(1), t);
                    let mut v = vec![0u8; self.n];
                    v[pivot] = 1;
                    for (&c, &val) in tail.iter().zip(&vals) {
                        v[c] = val;
                    }
                    if self.form.eval(&v) != 0 {
                        continue;
                    }
                    if !self.polar_vanishes(&v, basis) {
                        continue;
                    }
                    // exact confirmation on the full candidate span
                    let (ok, new_span) = self.span_isotropic(span, &v);
                    if !ok {
                        continue;
                    }
                    basis.push(v);
                    pivots.push(pivot);
                    self.extend(basis, pivots, &new_span);
                    pivots.pop();
                    basis.pop();
                }
            }
        }

        fn polar_vanishes(&self, v: &[u8], basis: &[Vec<u8>]) -> bool {
            basis.iter().all(|b| {
                let sum: Vec<u8> = v
                    .iter()
                    .zip(b)
                    .map(|(&a, &c)| ((a as u32 + c as u32) % self.q) as u8)
                    .collect();
                // B(v,b) = Q(v+b) - Q(v) - Q(b) with Q(v) = Q(b) = 0 here
                self.form.eval(&sum) == 0
            })
        }

        fn span_isotropic(&self, span: &[Vec<u8>], v: &[u8]) -> (bool, Vec<Vec<u8>>) {
            let mut new_span = span.to_vec();
            for a in 1..self.q {
                for w in span {
                    let p: Vec<u8> = v
                        .iter()
                        .zip(w)
                        .map(|(&x, &y)| ((a * x as u32 + y as u32) % self.q) as u8)
                        .collect();
                    if self.form.eval(&p) != 0 {
                        return (false, Vec::new());
                    }
                    new_span.push(p);
                }
            }
            (true, new_span)
        }
    }

    if form.eval(&vec![0u8; n]) != 0 {
        return Ok(out);
    }
    let mut dfs = Dfs {
        form,
        q,
        n,
        dim,
        out,
    };
    let mut basis = Vec::new();
    let mut pivots = Vec::new();
    let span = vec![vec![0u8; n]];
    dfs.extend(&mut basis, &mut pivots, &span);
    // echelon bases may repeat a subspace; canonicalize and deduplicate
    let mut seen = std::collections::HashSet::new();
    let mut unique = Vec::new();
    for s in dfs.out {
        let canonical = Subspace::from_vectors(q, n, &s.basis)?;
        if seen.insert(canonical.basis.clone()) {
            unique.push(canonical);
        }
    }
    Ok(unique)
}

/// If f restricted to the coset equals an affine function of the coset
/// coordinates (w.r.t. the canonical basis order), returns that description.
pub fn affine_on(f: &QFunc, coset: &Coset) -> Result<Option<AffineFunc>, SubspaceError> {
    if coset.subspace().q() != f.q() || coset.subspace().n() != f.n() {
        return Err(SubspaceError::SpaceMismatch);
    }
    let q = f.q();
    let k = coset.dim();
    let constant = f.eval(coset.rep());
    let mut coeffs = vec![0u8; k];
    for (i, c) in coeffs.iter_mut().enumerate() {
        let mut t = vec![0u8; k];
        t[i] = 1;
        let p = coset_point(coset, &t);
        *c = ((f.eval(&p) as u32 + q - constant as u32) % q) as u8;
    }
    let cand = AffineFunc::new(q, coeffs, constant).unwrap();
    for t_idx in 0..domain_size(q, k) {
        let t = point_at(q, k.max(1), t_idx);
        let t = &t[..k];
        let p = coset_point(coset, t);
        if f.eval(&p) != cand.eval(t).unwrap() {
            return Ok(None);
        }
    }
    Ok(Some(cand))
}

fn coset_point(coset: &Coset, t: &[u8]) -> Vec<u8> {
    let q = coset.subspace().q();
    let mut p: Vec<u32> = coset.rep().iter().map(|&v| v as u32).collect();
    for (c, row) in t.iter().zip(coset.subspace().basis()) {
        for j in 0..p.len() {
            p[j] += *c as u32 * row[j] as u32;
        }
    }
    p.into_iter().map(|v| (v % q) as u8).collect()
}

/// Both sides of the shifted Poisson summation identity for the unnormalized
/// Walsh transform,
///   Σ_{y ∈ a+Γ} W_f(y)  =  q^{dim Γ} · Σ_{x ∈ Γ^⊥} ξ^{f(x) - ⟨x,a⟩},
/// each computed by direct summation. Equality is the caller's check.
pub fn poisson_check(f: &QFunc, coset: &Coset) -> Result<(CycInt, CycInt), SubspaceError> {
    if coset.subspace().q() != f.q() || coset.subspace().n() != f.n() {
        return Err(SubspaceError::SpaceMismatch);
    }
    let q = f.q();
    let n = f.n();
    // lhs: naive Walsh coefficients summed over the coset
    let mut lhs = CycInt::zero(q);
    for y in coset.points() {
        for x_idx in 0..domain_size(q, n) {
            let x = point_at(q, n, x_idx);
            let e = f.eval(&x) as i64 - inner_product(&x, &y, q).unwrap() as i64;
            lhs.add_assign_rotated(&CycInt::one(q), e.rem_euclid(q as i64) as u32);
        }
    }
    // rhs: q^{dim} · Σ over the dual of ξ^{f(x) - ⟨x,a⟩}
    let dual = coset.subspace().dual();
    let mut rhs = CycInt::zero(q);
    for x in dual.points() {
        let e = f.eval(&x) as i64 - inner_product(&x, coset.rep(), q).unwrap() as i64;
        rhs.add_assign_rotated(&CycInt::one(q), e.rem_euclid(q as i64) as u32);
    }
    let scale = CycInt::from_int(q, num_bigint::BigInt::from(q).pow(coset.dim() as u32));
    rhs = rhs.checked_mul(&scale).unwrap();
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn span(q: u32, n: usize, rows: &[&[u8]]) -> Subspace {
        Subspace::from_vectors(q, n, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn make_qn(q: u32, half: usize) -> QFunc {
        QFunc::from_fn(q, 2 * half, |x| {
            let mut acc = 0u32;
            for i in 0..half {
                acc += x[i] as u32 * x[half + i] as u32;
            }
            (acc % q) as u8
        })
        .unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_subspaces(3, 2, 1).unwrap().len(), 4);
        assert_eq!(enumerate_subspaces(3, 2, 0).unwrap().len(), 1);
        assert_eq!(enumerate_subspaces(3, 2, 2).unwrap().len(), 1);
        for (q, n) in [(2u32, 4usize), (3, 3), (5, 2)] {
            for k in 0..=n {
                let subs = enumerate_subspaces(q, n, k).unwrap();
                assert_eq!(
                    subs.len() as u64,
                    gaussian_binomial(q as u64, n as u64, k as u64),
                    "count mismatch at ({q},{n},{k})"
                );
                // canonical bases are pairwise distinct
                let set: std::collections::HashSet<_> = subs.iter().map(|s| s.basis.clone()).collect();
                assert_eq!(set.len(), subs.len());
            }
        }
    }

    #[test]
    fn coset_enumeration_counts() {
        let s = span(3, 2, &[&[1, 1]]);
        let cosets = enumerate_cosets(&s);
        assert_eq!(cosets.len(), 3);
        let mut seen = std::collections::HashSet::new();
        for c in &cosets {
            for p in c.points() {
                assert!(seen.insert(p.clone()), "point {p:?} in two cosets");
            }
        }
        assert_eq!(seen.len(), 9);
    }

    #[test]
    fn dual_examples() {
        assert_eq!(Subspace::zero(3, 2).dual(), Subspace::full(3, 2));
        assert_eq!(Subspace::full(3, 2).dual(), Subspace::zero(3, 2));
        assert_eq!(span(3, 2, &[&[1, 1]]).dual(), span(3, 2, &[&[1, 2]]));
        let mut rng = StdRng::seed_from_u64(21);
        for _ in 0..30 {
            let q = 3;
            let n = 4;
            let k = rng.gen_range(0..=n);
            let rows: Vec<Vec<u8>> = (0..k)
                .map(|_| (0..n).map(|_| rng.gen_range(0..q) as u8).collect())
                .collect();
            let s = Subspace::from_vectors(q, n, &rows).unwrap();
            let d = s.dual();
            assert_eq!(s.dim() + d.dim(), n);
            assert_eq!(d.dual(), s);
            for x in s.points() {
                for y in d.points() {
                    assert_eq!(inner_product(&x, &y, q).unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn isotropic_counts_for_qn() {
        // Witt-index-n counts ∏ (q^{n-i} + 1)
        let q1 = make_qn(3, 1);
        let iso = totally_isotropic_subspaces(&q1, 1).unwrap();
        assert_eq!(iso.len(), 2);
        let axes: std::collections::HashSet<_> = iso.iter().map(|s| s.basis()[0].clone()).collect();
        assert!(axes.contains(&vec![1u8, 0]));
        assert!(axes.contains(&vec![0u8, 1]));

        assert_eq!(totally_isotropic_subspaces(&make_qn(3, 2), 2).unwrap().len(), 8);
        assert_eq!(totally_isotropic_subspaces(&make_qn(2, 2), 2).unwrap().len(), 6);
    }

    #[test]
    fn affine_on_examples() {
        let q1 = make_qn(3, 1);
        let u_axis = Coset::new(span(3, 2, &[&[1, 0]]), &[0, 0]).unwrap();
        let restr = affine_on(&q1, &u_axis).unwrap().unwrap();
        assert_eq!(restr.y, vec![0]);
        assert_eq!(restr.a, 0);

        let diag = Coset::new(span(3, 2, &[&[1, 1]]), &[0, 0]).unwrap();
        assert!(affine_on(&q1, &diag).unwrap().is_none());

        let point = Coset::new(Subspace::zero(3, 2), &[2, 1]).unwrap();
        let c = affine_on(&q1, &point).unwrap().unwrap();
        assert_eq!(c.a, q1.eval(&[2, 1]));
    }

    #[test]
    fn qn_affine_exactly_on_isotropic_cosets() {
        for (q, half) in [(3u32, 1usize), (3, 2)] {
            let f = make_qn(q, half);
            let n = 2 * half;
            let isotropic = totally_isotropic_subspaces(&f, half).unwrap();
            for s in &isotropic {
                for c in enumerate_cosets(s) {
                    assert!(affine_on(&f, &c).unwrap().is_some());
                }
            }
            for s in enumerate_subspaces(q, n, half).unwrap() {
                if isotropic.contains(&s) {
                    continue;
                }
                let zero_coset = Coset::new(s, &vec![0; n]).unwrap();
                assert!(affine_on(&f, &zero_coset).unwrap().is_none());
            }
        }
    }

    #[test]
    fn poisson_degenerate_cases() {
        let f = QFunc::parse("3 2\n012120201").unwrap();
        // Γ = {0}: both sides are W_f(a)
        let point = Coset::new(Subspace::zero(3, 2), &[1, 2]).unwrap();
        let (lhs, rhs) = poisson_check(&f, &point).unwrap();
        assert_eq!(lhs, rhs);
        // Γ = full space: both sides are q^n · ξ^{f(0)}
        let full = Coset::new(Subspace::full(3, 2), &[0, 0]).unwrap();
        let (lhs, rhs) = poisson_check(&f, &full).unwrap();
        assert_eq!(lhs, rhs);
        let expected = CycInt::root(3, f.eval(&[0, 0]) as i64)
            .unwrap()
            .checked_mul(&CycInt::from_int(3, 9))
            .unwrap();
        assert_eq!(lhs, expected);
    }

    #[test]
    fn poisson_randomized() {
        let mut rng = StdRng::seed_from_u64(22);
        for (q, n) in [(2u32, 4usize), (3, 2), (5, 1)] {
            for _ in 0..200 {
                let f = QFunc::from_fn(q, n, |_| rng.gen_range(0..q) as u8).unwrap();
                let k = rng.gen_range(0..=n);
                let rows: Vec<Vec<u8>> = (0..k)
                    .map(|_| (0..n).map(|_| rng.gen_range(0..q) as u8).collect())
                    .collect();
                let s = Subspace::from_vectors(q, n, &rows).unwrap();
                let rep: Vec<u8> = (0..n).map(|_| rng.gen_range(0..q) as u8).collect();
                let coset = Coset::new(s, &rep).unwrap();
                let (lhs, rhs) = poisson_check(&f, &coset).unwrap();
                assert_eq!(lhs, rhs, "poisson failed at q={q} n={n}");
            }
        }
    }

    #[test]
    fn coset_reps_are_canonical() {
        let s = span(3, 2, &[&[1, 2]]);
        let c1 = Coset::new(s.clone(), &[1, 0]).unwrap();
        let c2 = Coset::new(s.clone(), &[2, 2]).unwrap();
        // (2,2) = (1,0) + (1,2), same coset
        assert_eq!(c1, c2);
        assert!(c1.contains(&[2, 2]));
        assert!(!c1.contains(&[0, 0]));
    }
}
