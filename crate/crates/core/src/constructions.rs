//! Explicit function families and plateaued-function transformations:
//! the quadratic form Q_n, diagonal squares, the Maiorana–McFarland-style
//! plateaued construction, coordinate fixing / linear extension / gluing,
//! coset modification, minimal-distance pairs, and order-4 quasigroups built
//! from Boolean functions.

use crate::functions::{domain_size, index_of, point_at, FuncError, QFunc};
use crate::spectrum::classify;
use crate::subspaces::{affine_on, Coset, SubspaceError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("permutation table of length {got} is not a bijection on {expected} points")]
    NotBijective { expected: usize, got: usize },
    #[error("block size k = {k} exceeds n = {n}")]
    BlockTooLarge { k: usize, n: usize },
    #[error("family has {got} members, expected q^k = {expected}")]
    FamilySize { expected: usize, got: usize },
    #[error("family member {0} is not plateaued")]
    MemberNotPlateaued(usize),
    #[error("family members {0} and {1} have different plateaued orders")]
    MixedOrders(usize, usize),
    #[error("family members {0} and {1} have overlapping Walsh supports")]
    OverlappingSupports(usize, usize),
    #[error("gluing over k = {k} coordinates requires k <= s = {s}")]
    GlueOrder { k: usize, s: usize },
    #[error("function is not plateaued")]
    NotPlateaued,
    #[error("function is not affine on the given coset")]
    NotAffineOnCoset,
    #[error("coset dimension {got} must equal (s+n)/2 = {expected}")]
    CosetDimension { expected: usize, got: usize },
    #[error("(s+n) = {0} is odd, no coset of dimension (s+n)/2 exists")]
    OddOrder(usize),
    #[error("modification constant must be a nonzero residue")]
    ZeroConstant,
    #[error("invalid pair parameters: q={q}, s={s} (need s >= 2 for q=2)")]
    InvalidPairSpec { q: u32, s: usize },
    #[error("order-4 table is not a quasigroup")]
    NotLatin,
    #[error("chain arity must be at least 2, got {0}")]
    ChainArity(usize),
    #[error(transparent)]
    Func(#[from] FuncError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
}

/// Q_n(v_1..v_n, u_1..u_n) = v_1·u_1 + ... + v_n·u_n over F_q, on 2n
/// variables ordered (v, u).
pub fn make_qn(q: u32, half: usize) -> Result<QFunc, FuncError> {
    QFunc::from_fn(q, 2 * half, |x| {
        let mut acc = 0u64;
        for i in 0..half {
            acc += x[i] as u64 * x[half + i] as u64;
        }
        (acc % q as u64) as u8
    })
}

/// x_1² + ... + x_n² over F_3.
pub fn make_diag_squares(n: usize) -> Result<QFunc, FuncError> {
    QFunc::from_fn(3, n, |x| {
        let mut acc = 0u32;
        for &xi in x {
            acc += (xi * xi) as u32;
        }
        (acc % 3) as u8
    })
}

/// The 2-plateaued seed R(x) = (x₁+x₂)(x₃+x₄) + x₁ + x₃ over F_2.
pub fn base_r() -> QFunc {
    QFunc::from_fn(2, 4, |x| ((x[0] + x[1]) * (x[2] + x[3]) + x[0] + x[2]) % 2).unwrap()
}

/// R'(x) = (x₁+x₄)(x₃+x₂) + x₁ + x₃, at distance 4 from R.
pub fn base_r_prime() -> QFunc {
    QFunc::from_fn(2, 4, |x| ((x[0] + x[3]) * (x[2] + x[1]) + x[0] + x[2]) % 2).unwrap()
}

/// The bent seed T(x) = x² over F_3.
pub fn base_t() -> QFunc {
    QFunc::from_fn(3, 1, |x| (x[0] * x[0]) % 3).unwrap()
}

/// T'(x) = x + 2x², at distance 1 from T.
pub fn base_t_prime() -> QFunc {
    QFunc::from_fn(3, 1, |x| (x[0] + 2 * x[0] * x[0]) % 3).unwrap()
}

fn check_bijection(table: &[usize], expected: usize) -> Result<(), ConstructError> {
    if table.len() != expected {
        return Err(ConstructError::NotBijective {
            expected,
            got: table.len(),
        });
    }
    let mut seen = vec![false; expected];
    for &v in table {
        if v >= expected || seen[v] {
            return Err(ConstructError::NotBijective {
                expected,
                got: table.len(),
            });
        }
        seen[v] = true;
    }
    Ok(())
}

/// F(x, y, z) = ⟨τ(x), y⟩ + ⟨σ(x^k), z⟩ + f(x) on 2n+k variables, a
/// k-plateaued function. `tau` permutes the points of F_q^n and `sigma` the
/// points of F_q^k, both given as index tables; x^k is the first k
/// coordinates of x. Variable blocks are ordered (x, y, z), x least
/// significant.
pub fn mm_plateaued(
    tau: &[usize],
    sigma: &[usize],
    f: &QFunc,
    k: usize,
) -> Result<QFunc, ConstructError> {
    let q = f.q();
    let n = f.n();
    if k > n {
        return Err(ConstructError::BlockTooLarge { k, n });
    }
    check_bijection(tau, domain_size(q, n))?;
    check_bijection(sigma, domain_size(q, k))?;
    let out = QFunc::from_fn(q, 2 * n + k, |p| {
        let x = &p[..n];
        let y = &p[n..2 * n];
        let z = &p[2 * n..];
        let tx = point_at(q, n, tau[index_of(q, x)]);
        let sxk = point_at(q, k.max(1), sigma[index_of(q, &x[..k])]);
        let mut acc = f.eval(x) as u64;
        for (a, b) in tx.iter().zip(y) {
            acc += *a as u64 * *b as u64;
        }
        for i in 0..k {
            acc += sxk[i] as u64 * z[i] as u64;
        }
        (acc % q as u64) as u8
    })?;
    Ok(out)
}

/// f(x̄, y) = g(x̄, a): the last k coordinates are pinned to `a` and become
/// dummy variables. The result stays on n+k variables.
pub fn fix_coordinates(g: &QFunc, a: &[u8]) -> Result<QFunc, ConstructError> {
    let q = g.q();
    let total = g.n();
    let k = a.len();
    if k > total {
        return Err(ConstructError::BlockTooLarge { k, n: total });
    }
    let out = QFunc::from_fn(q, total, |p| {
        let mut x = p.to_vec();
        x[total - k..].copy_from_slice(a);
        g.eval(&x)
    })?;
    Ok(out)
}

/// g(x̄, y) = f(x̄) + ⟨a, y⟩ on n+k variables, k = a.len(); lifts an
/// s-plateaued f to an (s+k)-plateaued g with Walsh mass at v = a.
pub fn extend_linear(f: &QFunc, a: &[u8]) -> Result<QFunc, ConstructError> {
    let q = f.q();
    let n = f.n();
    let k = a.len();
    let out = QFunc::from_fn(q, n + k, |p| {
        let mut acc = f.eval(&p[..n]) as u64;
        for (ai, yi) in a.iter().zip(&p[n..]) {
            acc += *ai as u64 * *yi as u64;
        }
        (acc % q as u64) as u8
    })?;
    Ok(out)
}

/// Glues q^k s-plateaued functions with pairwise disjoint Walsh supports into
/// one (s-k)-plateaued function of n+k variables: g(x̄, y) = f^{-y}(x̄).
///
/// `family[i]` is the member at a = point_at(q, k, i). All members must be
/// plateaued of the same order; overlapping supports are rejected with the
/// offending pair.
pub fn glue_disjoint(family: &[QFunc], k: usize) -> Result<QFunc, ConstructError> {
    let first = family.first().ok_or(ConstructError::FamilySize {
        expected: 1,
        got: 0,
    })?;
    let q = first.q();
    let n = first.n();
    let expected = domain_size(q, k);
    if family.len() != expected {
        return Err(ConstructError::FamilySize {
            expected,
            got: family.len(),
        });
    }
    let mut s = None;
    let mut supports: Vec<Vec<bool>> = Vec::with_capacity(family.len());
    for (i, member) in family.iter().enumerate() {
        let spec = crate::spectrum::walsh_transform(member);
        let class = crate::spectrum::classify_spectrum(&spec);
        let Some(si) = class.plateaued_s else {
            return Err(ConstructError::MemberNotPlateaued(i));
        };
        match s {
            None => s = Some(si),
            Some(s0) if s0 != si => return Err(ConstructError::MixedOrders(0, i)),
            _ => {}
        }
        supports.push(spec.coefficients().iter().map(|c| !c.is_zero()).collect());
    }
    let s = s.unwrap();
    if k > s {
        return Err(ConstructError::GlueOrder { k, s });
    }
    for i in 0..supports.len() {
        for j in i + 1..supports.len() {
            if supports[i].iter().zip(&supports[j]).any(|(&a, &b)| a && b) {
                return Err(ConstructError::OverlappingSupports(i, j));
            }
        }
    }
    let out = QFunc::from_fn(q, n + k, |p| {
        let y = &p[n..];
        let neg: Vec<u8> = y.iter().map(|&v| ((q - v as u32) % q) as u8).collect();
        family[index_of(q, &neg)].eval(&p[..n])
    })?;
    Ok(out)
}

/// f + c·χ[C] for an s-plateaued f that is affine on the coset C of dimension
/// (s+n)/2; the result is s-plateaued (and stays regular when f is).
pub fn subspace_modification(f: &QFunc, coset: &Coset, c: u8) -> Result<QFunc, ConstructError> {
    let q = f.q();
    if c == 0 || c as u32 >= q {
        return Err(ConstructError::ZeroConstant);
    }
    let class = classify(f);
    let Some(s) = class.plateaued_s else {
        return Err(ConstructError::NotPlateaued);
    };
    let n = f.n();
    if (s + n) % 2 != 0 {
        return Err(ConstructError::OddOrder(s + n));
    }
    let expected = (s + n) / 2;
    if coset.dim() != expected {
        return Err(ConstructError::CosetDimension {
            expected,
            got: coset.dim(),
        });
    }
    if affine_on(f, coset)?.is_none() {
        return Err(ConstructError::NotAffineOnCoset);
    }
    Ok(f.add_at_indices(coset.indices(), c))
}

/// Parameters for a pair of s-plateaued functions at the minimal distance:
/// q = 2 needs s >= 2 and yields n = 2+s+2t variables; q = 3 allows s >= 0
/// and yields n = 1+s+2t.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlateauedPairSpec {
    pub q: u32,
    pub s: usize,
    pub t: usize,
}

impl PlateauedPairSpec {
    pub fn new(q: u32, s: usize, t: usize) -> Result<Self, ConstructError> {
        match q {
            2 if s >= 2 => Ok(PlateauedPairSpec { q, s, t }),
            3 => Ok(PlateauedPairSpec { q, s, t }),
            _ => Err(ConstructError::InvalidPairSpec { q, s }),
        }
    }

    pub fn vars(&self) -> usize {
        match self.q {
            2 => 2 + self.s + 2 * self.t,
            _ => 1 + self.s + 2 * self.t,
        }
    }

    /// The minimal distance the pair realizes.
    pub fn distance(&self) -> usize {
        let n = self.vars();
        match self.q {
            2 => 1usize << ((self.s + n - 2) / 2),
            _ => 3usize.pow(((self.s + n - 1) / 2) as u32),
        }
    }

    fn extension(&self) -> usize {
        // number of linearly extended coordinates before gluing
        match self.q {
            2 => self.s - 2 + self.t,
            _ => self.s + self.t,
        }
    }
}

/// Builds a pair (h, h') of s-plateaued functions of spec.vars() variables at
/// exactly the minimal distance: both are linear extensions of the seed pair
/// over k₁ coordinates, glued over k₂ = t coordinates, with h' swapping the
/// seed in the zero slot.
pub fn minimal_pair(spec: PlateauedPairSpec) -> Result<(QFunc, QFunc), ConstructError> {
    let (seed, seed_prime) = match spec.q {
        2 => (base_r(), base_r_prime()),
        _ => (base_t(), base_t_prime()),
    };
    let q = spec.q;
    let k1 = spec.extension();
    let k2 = spec.t;
    // family index a runs over F_q^{k2}, zero-padded to k1 coordinates
    let build = |zero_seed: &QFunc| -> Result<QFunc, ConstructError> {
        let family: Vec<QFunc> = (0..domain_size(q, k2))
            .map(|i| {
                let mut a = point_at(q, k2.max(1), i);
                a.truncate(k2);
                a.resize(k1, 0);
                let base = if i == 0 { zero_seed } else { &seed };
                extend_linear(base, &a)
            })
            .collect::<Result<_, _>>()?;
        glue_disjoint(&family, k2)
    };
    Ok((build(&seed)?, build(&seed_prime)?))
}

/// GF(4) multiplication on the pair encoding (x, y) ↦ 2x + y.
pub fn gf4_mul(a: u8, b: u8) -> u8 {
    const TABLE: [[u8; 4]; 4] = [
        [0, 0, 0, 0],
        [0, 1, 2, 3],
        [0, 2, 3, 1],
        [0, 3, 1, 2],
    ];
    TABLE[a as usize][b as usize]
}

/// A function F_4^n → F_4 with F_4 elements encoded as bit pairs
/// (x, y) ↦ 2x + y; indexing follows the QFunc convention with q = 4.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Q4Func {
    n: usize,
    table: Vec<u8>,
}

impl Q4Func {
    pub fn new(n: usize, table: Vec<u8>) -> Result<Self, FuncError> {
        if n == 0 {
            return Err(FuncError::NoVariables);
        }
        let expected = 4usize.pow(n as u32);
        if table.len() != expected {
            return Err(FuncError::TableLength {
                expected,
                got: table.len(),
            });
        }
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v >= 4) {
            return Err(FuncError::ValueOutOfRange { index, value });
        }
        Ok(Q4Func { n, table })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(&[u8]) -> u8) -> Result<Self, FuncError> {
        let table = (0..4usize.pow(n as u32))
            .map(|i| f(&point_at(4, n, i)))
            .collect();
        Self::new(n, table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn eval(&self, x: &[u8]) -> u8 {
        self.table[index_of(4, x)]
    }

    pub fn distance(&self, other: &Self) -> Result<usize, FuncError> {
        if self.n != other.n {
            return Err(FuncError::ShapeMismatch {
                q1: 4,
                n1: self.n,
                q2: 4,
                n2: other.n,
            });
        }
        Ok(self
            .table
            .iter()
            .zip(&other.table)
            .filter(|(a, b)| a != b)
            .count())
    }

    /// Every unary restriction (all but one argument fixed) is a bijection.
    pub fn is_quasigroup(&self) -> bool {
        for coord in 0..self.n {
            let others = 4usize.pow((self.n - 1) as u32);
            for rest_idx in 0..others {
                let rest = point_at(4, (self.n - 1).max(1), rest_idx);
                let mut seen = [false; 4];
                for v in 0..4u8 {
                    let mut x: Vec<u8> = Vec::with_capacity(self.n);
                    x.extend_from_slice(&rest[..coord]);
                    x.push(v);
                    x.extend_from_slice(&rest[coord..self.n - 1]);
                    let out = self.eval(&x);
                    if seen[out as usize] {
                        return false;
                    }
                    seen[out as usize] = true;
                }
            }
        }
        true
    }

    /// Same `.qf`-shaped text as QFunc, with q = 4. Only order-4-aware
    /// readers accept it.
    pub fn serialize(&self) -> String {
        let mut s = format!("4 {}\n", self.n);
        for &v in &self.table {
            s.push(char::from_digit(v as u32, 10).unwrap());
        }
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self, FuncError> {
        let mut lines = text.split('\n');
        let header = lines.next().unwrap_or("").trim();
        let mut parts = header.split_whitespace();
        let q: u32 = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(FuncError::Parse {
                line: 1,
                col: 1,
                msg: "missing q".into(),
            })?;
        if q != 4 {
            return Err(FuncError::UnsupportedModulus(q));
        }
        let n: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(FuncError::Parse {
                line: 1,
                col: 1,
                msg: "missing n".into(),
            })?;
        let body = lines.next().unwrap_or("").trim_end();
        let mut table = Vec::new();
        for (col, ch) in body.chars().enumerate() {
            match ch.to_digit(10) {
                Some(d) if d < 4 => table.push(d as u8),
                _ => {
                    return Err(FuncError::Parse {
                        line: 2,
                        col: col + 1,
                        msg: format!("invalid digit {ch:?}"),
                    })
                }
            }
        }
        Self::new(n, table)
    }
}

/// The semilinear n-ary quasigroup of order 4 defined by a Boolean function
/// b: on bit pairs, the low bits XOR and the high bits XOR with the
/// correction b applied to the low bits,
///   f((x₁,y₁),...,(xₙ,yₙ)) = (x₁⊕...⊕xₙ⊕b(y), y₁⊕...⊕yₙ).
/// Every unary restriction is a bijection regardless of b, so the output is
/// an n-ary quasigroup; b ≡ 0 gives componentwise XOR.
pub fn semilinear_quasigroup(b: &QFunc) -> Result<Q4Func, ConstructError> {
    if b.q() != 2 {
        return Err(ConstructError::Func(FuncError::UnsupportedModulus(b.q())));
    }
    let n = b.n();
    let out = Q4Func::from_fn(n, |v| {
        let mut xs = 0u8;
        let mut ys = Vec::with_capacity(n);
        for &vi in v {
            xs ^= vi >> 1;
            ys.push(vi & 1);
        }
        2 * (xs ^ b.eval(&ys)) + ys.iter().fold(0, |acc, &y| acc ^ y)
    })?;
    Ok(out)
}

/// H(x_1, ..., x_m) = h(x_1, h(x_2, ..., h(x_{m-1}, x_m)...)) for a binary
/// quasigroup h of order 4.
pub fn chain_quasigroup(h: &Q4Func, arity: usize) -> Result<Q4Func, ConstructError> {
    if h.n() != 2 || !h.is_quasigroup() {
        return Err(ConstructError::NotLatin);
    }
    if arity < 2 {
        return Err(ConstructError::ChainArity(arity));
    }
    let out = Q4Func::from_fn(arity, |x| {
        let mut acc = x[arity - 1];
        for i in (0..arity - 1).rev() {
            acc = h.eval(&[x[i], acc]);
        }
        acc
    })?;
    Ok(out)
}
