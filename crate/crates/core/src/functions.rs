//! Truth-table representation of q-ary functions f: F_q^n → F_q, together
//! with points, inner products, Hamming distance, affine functions, affine
//! transformations and isotopies.

use crate::cyclotomic::is_prime;
use std::fmt;

/// Moduli the truth-table machinery supports.
pub const SUPPORTED_Q: [u32; 4] = [2, 3, 5, 7];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FuncError {
    #[error("unsupported modulus {0}: expected one of 2, 3, 5, 7")]
    UnsupportedModulus(u32),
    #[error("variable count must be at least 1")]
    NoVariables,
    #[error("table length {got} does not match q^n = {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("value {value} out of range at table index {index}")]
    ValueOutOfRange { index: usize, value: u8 },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("shape mismatch: ({q1}, {n1}) vs ({q2}, {n2})")]
    ShapeMismatch { q1: u32, n1: usize, q2: u32, n2: usize },
    #[error("vector length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("matrix is singular over F_q")]
    SingularMatrix,
    #[error("permutation table of length {got} is not a bijection on 0..{q}")]
    NotPermutation { q: u32, got: usize },
    #[error("isotopy has {got} permutations, expected n+1 = {expected}")]
    IsotopyArity { expected: usize, got: usize },
}

/// Number of points of F_q^n.
pub fn domain_size(q: u32, n: usize) -> usize {
    (q as usize).pow(n as u32)
}

/// Decodes a table index into the point (x_1, ..., x_n), x_1 least significant.
pub fn point_at(q: u32, n: usize, mut index: usize) -> Vec<u8> {
    let q = q as usize;
    let mut x = vec![0u8; n];
    for xi in x.iter_mut() {
        *xi = (index % q) as u8;
        index /= q;
    }
    x
}

/// Inverse of [`point_at`].
pub fn index_of(q: u32, x: &[u8]) -> usize {
    let q = q as usize;
    let mut idx = 0usize;
    for &xi in x.iter().rev() {
        idx = idx * q + xi as usize;
    }
    idx
}

/// ⟨x,y⟩ = Σ x_i·y_i mod q.
pub fn inner_product(x: &[u8], y: &[u8], q: u32) -> Result<u8, FuncError> {
    if x.len() != y.len() {
        return Err(FuncError::LengthMismatch(x.len(), y.len()));
    }
    let mut acc = 0u64;
    for (&a, &b) in x.iter().zip(y) {
        acc += a as u64 * b as u64;
    }
    Ok((acc % q as u64) as u8)
}

/// Number of nonzero coordinates.
pub fn hamming_weight(u: &[u8]) -> usize {
    u.iter().filter(|&&v| v != 0).count()
}

/// A q-ary function given by its full truth table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QFunc {
    q: u32,
    n: usize,
    table: Vec<u8>,
}

impl QFunc {
    pub fn new(q: u32, n: usize, table: Vec<u8>) -> Result<Self, FuncError> {
        if !is_prime(q) || !SUPPORTED_Q.contains(&q) {
            return Err(FuncError::UnsupportedModulus(q));
        }
        if n == 0 {
            return Err(FuncError::NoVariables);
        }
        let expected = domain_size(q, n);
        if table.len() != expected {
            return Err(FuncError::TableLength {
                expected,
                got: table.len(),
            });
        }
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v as u32 >= q) {
            return Err(FuncError::ValueOutOfRange { index, value });
        }
        Ok(QFunc { q, n, table })
    }

    /// Builds the table by evaluating `f` on every point in index order.
    pub fn from_fn(q: u32, n: usize, mut f: impl FnMut(&[u8]) -> u8) -> Result<Self, FuncError> {
        let table = (0..domain_size(q, n))
            .map(|i| f(&point_at(q, n, i)))
            .collect();
        Self::new(q, n, table)
    }

    pub fn constant(q: u32, n: usize, c: u8) -> Result<Self, FuncError> {
        Self::new(q, n, vec![c; domain_size(q, n)])
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value_at_index(&self, idx: usize) -> u8 {
        self.table[idx]
    }

    pub fn eval(&self, x: &[u8]) -> u8 {
        self.table[index_of(self.q, x)]
    }

    fn check_shape(&self, other: &Self) -> Result<(), FuncError> {
        if self.q != other.q || self.n != other.n {
            return Err(FuncError::ShapeMismatch {
                q1: self.q,
                n1: self.n,
                q2: other.q,
                n2: other.n,
            });
        }
        Ok(())
    }

    /// Number of arguments where the two functions differ.
    pub fn distance(&self, other: &Self) -> Result<usize, FuncError> {
        self.check_shape(other)?;
        Ok(self
            .table
            .iter()
            .zip(&other.table)
            .filter(|(a, b)| a != b)
            .count())
    }

    /// Distance, abandoned early once it exceeds `cap` (returns None then).
    pub fn distance_capped(&self, other: &Self, cap: usize) -> Option<usize> {
        let mut d = 0usize;
        for (a, b) in self.table.iter().zip(&other.table) {
            if a != b {
                d += 1;
                if d > cap {
                    return None;
                }
            }
        }
        Some(d)
    }

    /// True iff every value occurs exactly q^{n-1} times.
    pub fn is_balanced(&self) -> bool {
        let mut counts = vec![0usize; self.q as usize];
        for &v in &self.table {
            counts[v as usize] += 1;
        }
        let expected = domain_size(self.q, self.n - 1);
        counts.iter().all(|&c| c == expected)
    }

    /// Pointwise sum f + g mod q.
    pub fn add(&self, other: &Self) -> Result<Self, FuncError> {
        self.check_shape(other)?;
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(&a, &b)| ((a as u32 + b as u32) % self.q) as u8)
            .collect();
        Ok(QFunc {
            q: self.q,
            n: self.n,
            table,
        })
    }

    /// Pointwise f + c at the given indices (used for coset modifications).
    pub fn add_at_indices(&self, indices: impl IntoIterator<Item = usize>, c: u8) -> Self {
        let mut table = self.table.clone();
        for idx in indices {
            table[idx] = ((table[idx] as u32 + c as u32) % self.q) as u8;
        }
        QFunc {
            q: self.q,
            n: self.n,
            table,
        }
    }

    /// Parses the `.qf` text format: line 1 = `<q> <n>`, line 2 = q^n digits.
    pub fn parse(text: &str) -> Result<Self, FuncError> {
        let mut lines = text.split('\n');
        let header = lines.next().unwrap_or("");
        let mut parts = header.split_whitespace();
        let q: u32 = parts
            .next()
            .ok_or_else(|| parse_err(1, 1, "missing q"))?
            .parse()
            .map_err(|_| parse_err(1, 1, "q is not a number"))?;
        let n: usize = parts
            .next()
            .ok_or_else(|| parse_err(1, header.len().max(1), "missing n"))?
            .parse()
            .map_err(|_| parse_err(1, header.len().max(1), "n is not a number"))?;
        if parts.next().is_some() {
            return Err(parse_err(1, header.len(), "trailing tokens after q n"));
        }
        if !is_prime(q) || !SUPPORTED_Q.contains(&q) {
            return Err(parse_err(1, 1, &format!("unsupported modulus {q}")));
        }
        if n == 0 {
            return Err(parse_err(1, 1, "n must be at least 1"));
        }
        let body = lines.next().unwrap_or("");
        let body = body.strip_suffix('\r').unwrap_or(body);
        let expected = domain_size(q, n);
        let mut table = Vec::with_capacity(expected);
        for (col, ch) in body.chars().enumerate() {
            match ch.to_digit(10) {
                Some(d) if d < q => table.push(d as u8),
                Some(_) | None => {
                    return Err(parse_err(2, col + 1, &format!("invalid digit {ch:?}")))
                }
            }
        }
        if table.len() != expected {
            return Err(parse_err(
                2,
                body.len().max(1),
                &format!("table has {} entries, expected {expected}", table.len()),
            ));
        }
        for rest in lines {
            if !rest.trim().is_empty() {
                return Err(parse_err(3, 1, "unexpected content after table"));
            }
        }
        QFunc::new(q, n, table)
    }

    /// Canonical `.qf` serialization (with trailing newline).
    pub fn serialize(&self) -> String {
        let mut s = format!("{} {}\n", self.q, self.n);
        for &v in &self.table {
            s.push(char::from_digit(v as u32, 10).unwrap());
        }
        s.push('\n');
        s
    }
}

fn parse_err(line: usize, col: usize, msg: &str) -> FuncError {
    FuncError::Parse {
        line,
        col,
        msg: msg.to_string(),
    }
}

impl fmt::Display for QFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.serialize().trim_end())
    }
}

/// ℓ(x) = ⟨x,y⟩ + a over F_q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineFunc {
    pub q: u32,
    pub y: Vec<u8>,
    pub a: u8,
}

impl AffineFunc {
    pub fn new(q: u32, y: Vec<u8>, a: u8) -> Result<Self, FuncError> {
        if y.iter().any(|&v| v as u32 >= q) || a as u32 >= q {
            return Err(FuncError::ValueOutOfRange {
                index: 0,
                value: a,
            });
        }
        Ok(AffineFunc { q, y, a })
    }

    pub fn eval(&self, x: &[u8]) -> Result<u8, FuncError> {
        let ip = inner_product(x, &self.y, self.q)?;
        Ok(((ip as u32 + self.a as u32) % self.q) as u8)
    }

    pub fn to_qfunc(&self) -> Result<QFunc, FuncError> {
        let y = self.y.clone();
        let q = self.q;
        let a = self.a;
        QFunc::from_fn(q, y.len(), |x| {
            ((inner_product(x, &y, q).unwrap() as u32 + a as u32) % q) as u8
        })
    }

    /// All q^{n+1} affine functions of n variables, in deterministic order.
    pub fn enumerate(q: u32, n: usize) -> Vec<AffineFunc> {
        let mut out = Vec::with_capacity(domain_size(q, n) * q as usize);
        for i in 0..domain_size(q, n) {
            let y = point_at(q, n, i);
            for a in 0..q as u8 {
                out.push(AffineFunc { q, y: y.clone(), a });
            }
        }
        out
    }
}

pub(crate) fn mod_inverse(a: u8, q: u32) -> Option<u8> {
    (1..q).map(|x| x as u8).find(|&x| (a as u32 * x as u32) % q == 1)
}

/// x ↦ L·x + u with L invertible over F_q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineTransform {
    q: u32,
    n: usize,
    matrix: Vec<Vec<u8>>,
    shift: Vec<u8>,
}

impl AffineTransform {
    /// Rejects singular matrices at construction.
    pub fn new(q: u32, matrix: Vec<Vec<u8>>, shift: Vec<u8>) -> Result<Self, FuncError> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|row| row.len() != n) || shift.len() != n {
            return Err(FuncError::LengthMismatch(n, shift.len()));
        }
        if !Self::invertible(q, &matrix) {
            return Err(FuncError::SingularMatrix);
        }
        Ok(AffineTransform {
            q,
            n,
            matrix,
            shift,
        })
    }

    pub fn identity(q: u32, n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| u8::from(i == j)).collect())
            .collect();
        AffineTransform {
            q,
            n,
            matrix,
            shift: vec![0; n],
        }
    }

    fn invertible(q: u32, matrix: &[Vec<u8>]) -> bool {
        let n = matrix.len();
        let mut m: Vec<Vec<u32>> = matrix
            .iter()
            .map(|row| row.iter().map(|&v| v as u32).collect())
            .collect();
        let mut rank = 0;
        for col in 0..n {
            let pivot = (rank..n).find(|&r| m[r][col] % q != 0);
            let Some(p) = pivot else { continue };
            m.swap(rank, p);
            let inv = mod_inverse((m[rank][col] % q) as u8, q).unwrap() as u32;
            for v in m[rank].iter_mut() {
                *v = (*v * inv) % q;
            }
            for r in 0..n {
                if r != rank && m[r][col] % q != 0 {
                    let factor = m[r][col] % q;
                    for c in 0..n {
                        m[r][c] = (m[r][c] + (q - factor) * m[rank][c]) % q;
                    }
                }
            }
            rank += 1;
        }
        rank == n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn apply_point(&self, x: &[u8]) -> Vec<u8> {
        (0..self.n)
            .map(|i| {
                let mut acc = self.shift[i] as u64;
                for j in 0..self.n {
                    acc += self.matrix[i][j] as u64 * x[j] as u64;
                }
                (acc % self.q as u64) as u8
            })
            .collect()
    }

    /// Composition: (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &Self) -> Result<Self, FuncError> {
        if self.q != other.q || self.n != other.n {
            return Err(FuncError::LengthMismatch(self.n, other.n));
        }
        let q = self.q as u64;
        let n = self.n;
        let matrix: Vec<Vec<u8>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = 0u64;
                        for k in 0..n {
                            acc += self.matrix[i][k] as u64 * other.matrix[k][j] as u64;
                        }
                        (acc % q) as u8
                    })
                    .collect()
            })
            .collect();
        let shift = self.apply_point(&other.shift);
        AffineTransform::new(self.q, matrix, shift)
    }
}

/// g(x) = f(L·x + u) + ⟨x, y_ℓ⟩ + a_ℓ, pointwise.
pub fn apply_affine_transform(
    f: &QFunc,
    a: &AffineTransform,
    ell: &AffineFunc,
) -> Result<QFunc, FuncError> {
    if a.q() != f.q() || a.n() != f.n() || ell.q != f.q() || ell.y.len() != f.n() {
        return Err(FuncError::ShapeMismatch {
            q1: f.q(),
            n1: f.n(),
            q2: a.q(),
            n2: a.n(),
        });
    }
    QFunc::from_fn(f.q(), f.n(), |x| {
        let fx = f.eval(&a.apply_point(x));
        ((fx as u32 + ell.eval(x).unwrap() as u32) % f.q()) as u8
    })
}

/// A tuple (τ_0, ..., τ_n) of permutations of F_q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isotopy {
    q: u32,
    taus: Vec<Vec<u8>>,
}

impl Isotopy {
    pub fn new(q: u32, taus: Vec<Vec<u8>>) -> Result<Self, FuncError> {
        for tau in &taus {
            if !is_permutation(q, tau) {
                return Err(FuncError::NotPermutation { q, got: tau.len() });
            }
        }
        Ok(Isotopy { q, taus })
    }

    pub fn identity(q: u32, n: usize) -> Self {
        let id: Vec<u8> = (0..q as u8).collect();
        Isotopy {
            q,
            taus: vec![id; n + 1],
        }
    }

    pub fn taus(&self) -> &[Vec<u8>] {
        &self.taus
    }

    /// The isotopy whose application equals applying `first`, then `second`.
    pub fn compose(first: &Isotopy, second: &Isotopy) -> Result<Isotopy, FuncError> {
        if first.q != second.q || first.taus.len() != second.taus.len() {
            return Err(FuncError::IsotopyArity {
                expected: first.taus.len(),
                got: second.taus.len(),
            });
        }
        let mut taus = Vec::with_capacity(first.taus.len());
        // output relabelings compose outermost-last, inputs innermost-first
        taus.push(compose_perm(&second.taus[0], &first.taus[0]));
        for i in 1..first.taus.len() {
            taus.push(compose_perm(&first.taus[i], &second.taus[i]));
        }
        Ok(Isotopy { q: first.q, taus })
    }
}

fn is_permutation(q: u32, tau: &[u8]) -> bool {
    if tau.len() != q as usize {
        return false;
    }
    let mut seen = vec![false; q as usize];
    for &v in tau {
        if v as u32 >= q || seen[v as usize] {
            return false;
        }
        seen[v as usize] = true;
    }
    true
}

/// outer ∘ inner
fn compose_perm(outer: &[u8], inner: &[u8]) -> Vec<u8> {
    inner.iter().map(|&v| outer[v as usize]).collect()
}

/// g(x_1, ..., x_n) = τ_0(f(τ_1 x_1, ..., τ_n x_n)).
pub fn apply_isotopy(f: &QFunc, iso: &Isotopy) -> Result<QFunc, FuncError> {
    if iso.taus.len() != f.n() + 1 {
        return Err(FuncError::IsotopyArity {
            expected: f.n() + 1,
            got: iso.taus.len(),
        });
    }
    if iso.q != f.q() {
        return Err(FuncError::UnsupportedModulus(iso.q));
    }
    QFunc::from_fn(f.q(), f.n(), |x| {
        let mapped: Vec<u8> = x
            .iter()
            .enumerate()
            .map(|(i, &xi)| iso.taus[i + 1][xi as usize])
            .collect();
        iso.taus[0][f.eval(&mapped) as usize]
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    pub(crate) fn base_t() -> QFunc {
        // T(x) = x² over F_3
        QFunc::from_fn(3, 1, |x| (x[0] * x[0]) % 3).unwrap()
    }

    pub(crate) fn base_t_prime() -> QFunc {
        // T'(x) = x + 2x² over F_3
        QFunc::from_fn(3, 1, |x| (x[0] + 2 * x[0] * x[0]) % 3).unwrap()
    }

    fn base_r() -> QFunc {
        QFunc::from_fn(2, 4, |x| {
            ((x[0] + x[1]) * (x[2] + x[3]) + x[0] + x[2]) % 2
        })
        .unwrap()
    }

    fn base_r_prime() -> QFunc {
        QFunc::from_fn(2, 4, |x| {
            ((x[0] + x[3]) * (x[2] + x[1]) + x[0] + x[2]) % 2
        })
        .unwrap()
    }

    #[test]
    fn parse_example() {
        let f = QFunc::parse("3 1\n011").unwrap();
        assert_eq!(f.eval(&[0]), 0);
        assert_eq!(f.eval(&[1]), 1);
        assert_eq!(f.eval(&[2]), 1);
        assert_eq!(f, base_t());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            QFunc::parse("3 1\n01"),
            Err(FuncError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            QFunc::parse("3 1\n0112"),
            Err(FuncError::Parse { line: 2, .. })
        ));
        // digit out of range for q carries its column
        match QFunc::parse("2 2\n0120") {
            Err(FuncError::Parse { line, col, .. }) => {
                assert_eq!((line, col), (2, 3));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            QFunc::parse("4 1\n0123"),
            Err(FuncError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            QFunc::parse("3"),
            Err(FuncError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn serialize_round_trip_canonical() {
        let s = "3 2\n012012012\n";
        assert_eq!(QFunc::parse(s).unwrap().serialize(), s);
        // trailing newline is optional on input
        assert_eq!(QFunc::parse("2 1\n01").unwrap().serialize(), "2 1\n01\n");
    }

    #[test]
    fn inner_product_examples() {
        assert_eq!(inner_product(&[1, 2], &[2, 2], 3).unwrap(), 0);
        assert_eq!(inner_product(&[1, 2], &[0, 0], 3).unwrap(), 0);
        assert_eq!(inner_product(&[1, 1], &[1, 1], 2).unwrap(), 0);
        assert!(inner_product(&[1], &[1, 0], 3).is_err());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(base_t().distance(&base_t_prime()).unwrap(), 1);
        assert_eq!(base_r().distance(&base_r_prime()).unwrap(), 4);
        let f = base_r();
        assert_eq!(f.distance(&f).unwrap(), 0);
        assert!(base_t().distance(&base_r()).is_err());
    }

    #[test]
    fn weight_and_index_round_trip() {
        assert_eq!(hamming_weight(&[0, 2, 0, 1]), 2);
        for idx in 0..domain_size(3, 4) {
            assert_eq!(index_of(3, &point_at(3, 4, idx)), idx);
        }
    }

    #[test]
    fn balancedness() {
        let ell = AffineFunc::new(3, vec![1, 1], 0).unwrap().to_qfunc().unwrap();
        assert!(ell.is_balanced());
        assert!(!QFunc::constant(3, 2, 0).unwrap().is_balanced());
        assert!(!base_t().is_balanced());
    }

    #[test]
    fn affine_transform_identity_and_swap() {
        let f = QFunc::from_fn(3, 2, |x| (x[0] * x[1]) % 3).unwrap();
        let id = AffineTransform::identity(3, 2);
        let zero = AffineFunc::new(3, vec![0, 0], 0).unwrap();
        assert_eq!(apply_affine_transform(&f, &id, &zero).unwrap(), f);
        // swapping the two variables of v·u leaves the table unchanged
        let swap = AffineTransform::new(3, vec![vec![0, 1], vec![1, 0]], vec![0, 0]).unwrap();
        assert_eq!(apply_affine_transform(&f, &swap, &zero).unwrap(), f);
    }

    #[test]
    fn singular_matrix_rejected() {
        assert_eq!(
            AffineTransform::new(3, vec![vec![1, 2], vec![2, 4 % 3]], vec![0, 0]),
            Err(FuncError::SingularMatrix)
        );
    }

    #[test]
    fn transform_composition_matches_sequential_application() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let q = 3u32;
            let n = 2usize;
            let f = QFunc::from_fn(q, n, |_| rng.gen_range(0..3)).unwrap();
            let a1 = random_transform(&mut rng, q, n);
            let a2 = random_transform(&mut rng, q, n);
            let zero = AffineFunc::new(q, vec![0; n], 0).unwrap();
            let seq = apply_affine_transform(
                &apply_affine_transform(&f, &a1, &zero).unwrap(),
                &a2,
                &zero,
            )
            .unwrap();
            // applying a2 then a1-inside corresponds to f ∘ (a1 ∘ a2)
            let combined = a1.compose(&a2).unwrap();
            let direct = apply_affine_transform(&f, &combined, &zero).unwrap();
            assert_eq!(seq, direct);
        }
    }

    pub(crate) fn random_transform(rng: &mut StdRng, q: u32, n: usize) -> AffineTransform {
        loop {
            let matrix: Vec<Vec<u8>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(0..q) as u8).collect())
                .collect();
            let shift: Vec<u8> = (0..n).map(|_| rng.gen_range(0..q) as u8).collect();
            if let Ok(t) = AffineTransform::new(q, matrix, shift) {
                return t;
            }
        }
    }

    #[test]
    fn isotopy_examples() {
        let f = base_t();
        let id = Isotopy::identity(3, 1);
        assert_eq!(apply_isotopy(&f, &id).unwrap(), f);

        let plus_one = Isotopy::new(3, vec![vec![1, 2, 0], vec![0, 1, 2]]).unwrap();
        let g = apply_isotopy(&f, &plus_one).unwrap();
        for x in 0..3u8 {
            assert_eq!(g.eval(&[x]), (f.eval(&[x]) + 1) % 3);
        }

        assert!(Isotopy::new(3, vec![vec![0, 0, 2]]).is_err());
        let wrong_arity = Isotopy::identity(3, 2);
        assert!(apply_isotopy(&f, &wrong_arity).is_err());
    }

    #[test]
    fn isotopy_composition() {
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..25 {
            let q = 3u32;
            let n = 2usize;
            let f = QFunc::from_fn(q, n, |_| rng.gen_range(0..3)).unwrap();
            let i1 = random_isotopy(&mut rng, q, n);
            let i2 = random_isotopy(&mut rng, q, n);
            let seq = apply_isotopy(&apply_isotopy(&f, &i1).unwrap(), &i2).unwrap();
            let composed = Isotopy::compose(&i1, &i2).unwrap();
            assert_eq!(seq, apply_isotopy(&f, &composed).unwrap());
        }
    }

    #[test]
    fn isotopy_preserves_balancedness() {
        let mut rng = StdRng::seed_from_u64(13);
        let ell = AffineFunc::new(3, vec![1, 2], 1).unwrap().to_qfunc().unwrap();
        for _ in 0..20 {
            let iso = random_isotopy(&mut rng, 3, 2);
            assert!(apply_isotopy(&ell, &iso).unwrap().is_balanced());
        }
    }

    fn random_isotopy(rng: &mut StdRng, q: u32, n: usize) -> Isotopy {
        let taus = (0..=n)
            .map(|_| {
                let mut p: Vec<u8> = (0..q as u8).collect();
                for i in (1..p.len()).rev() {
                    p.swap(i, rng.gen_range(0..=i));
                }
                p
            })
            .collect();
        Isotopy::new(q, taus).unwrap()
    }

    proptest! {
        #[test]
        fn parse_serialize_round_trip(q in prop::sample::select(vec![2u32, 3]), n in 1usize..3, seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let f = QFunc::from_fn(q, n, |_| rng.gen_range(0..q) as u8).unwrap();
            prop_assert_eq!(QFunc::parse(&f.serialize()).unwrap(), f);
        }

        #[test]
        fn distance_is_a_metric(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let mk = |rng: &mut StdRng| QFunc::from_fn(3, 2, |_| rng.gen_range(0..3)).unwrap();
            let f = mk(&mut rng);
            let g = mk(&mut rng);
            let h = mk(&mut rng);
            let dfg = f.distance(&g).unwrap();
            prop_assert_eq!(dfg, g.distance(&f).unwrap());
            prop_assert_eq!(f.distance(&f).unwrap(), 0);
            prop_assert!(dfg <= f.distance(&h).unwrap() + h.distance(&g).unwrap());
        }
    }
}
