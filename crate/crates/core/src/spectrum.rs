//! Exact Walsh–Hadamard spectra over Z[ξ_q] and spectral classification:
//! bent, s-plateaued, regularity, duals, convolution identities and the
//! uncertainty principle.
//!
//! Spectra are stored unnormalized, W_f(y) = Σ_x ξ^{f(x) - ⟨x,y⟩}, so every
//! classification decision is an exact integer-ring identity.

use crate::cyclotomic::CycInt;
use crate::functions::{domain_size, index_of, point_at, QFunc};
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectrumError {
    #[error("table length {got} does not match q^n = {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("uncertainty check requires a nonzero input")]
    ZeroInput,
}

/// The linear transform v ↦ (y ↦ Σ_x ξ^{-⟨x,y⟩} v(x)) on CycInt tables,
/// computed by an n-stage butterfly: stage i applies the q×q kernel
/// ξ^{-x_i·y_i} along coordinate i (x_1 least significant, contiguous
/// stride at the innermost coordinate).
pub fn transform_table(q: u32, n: usize, values: &[CycInt]) -> Result<Vec<CycInt>, SpectrumError> {
    let size = domain_size(q, n);
    if values.len() != size {
        return Err(SpectrumError::TableLength {
            expected: size,
            got: values.len(),
        });
    }
    let qu = q as usize;
    // rotation amounts for the kernel: ξ^{-s·t} = ξ^{rot[s][t]}
    let rot: Vec<Vec<u32>> = (0..qu)
        .map(|s| {
            (0..qu)
                .map(|t| ((qu - (s * t) % qu) % qu) as u32)
                .collect()
        })
        .collect();
    let mut cur = values.to_vec();
    let mut stride = 1usize;
    for _ in 0..n {
        let mut next = vec![CycInt::zero(q); size];
        let block = stride * qu;
        for base in (0..size).step_by(block) {
            for off in 0..stride {
                let b = base + off;
                for (s, rot_s) in rot.iter().enumerate() {
                    let acc = &mut next[b + s * stride];
                    for (t, &r) in rot_s.iter().enumerate() {
                        acc.add_assign_rotated(&cur[b + t * stride], r);
                    }
                }
            }
        }
        cur = next;
        stride *= qu;
    }
    Ok(cur)
}

/// Lifts f to the table x ↦ ξ^{f(x)}.
pub fn character_table(f: &QFunc) -> Vec<CycInt> {
    f.table()
        .iter()
        .map(|&v| CycInt::root(f.q(), v as i64).unwrap())
        .collect()
}

/// The full table of q^n unnormalized Walsh coefficients of f.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    q: u32,
    n: usize,
    w: Vec<CycInt>,
}

impl WalshSpectrum {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[CycInt] {
        &self.w
    }

    pub fn coefficient_at(&self, y: &[u8]) -> &CycInt {
        &self.w[index_of(self.q, y)]
    }

    pub fn support_size(&self) -> usize {
        self.w.iter().filter(|c| !c.is_zero()).count()
    }

    /// Σ_y |W(y)|² as an exact ring element; equals q^{2n} for every spectrum
    /// of a q-ary function.
    pub fn parseval_sum(&self) -> CycInt {
        let mut acc = CycInt::zero(self.q);
        for c in &self.w {
            acc.add_assign_ref(&c.norm_sq());
        }
        acc
    }

    pub fn parseval_ok(&self) -> bool {
        self.parseval_sum() == CycInt::from_int(self.q, BigInt::from(self.q).pow(2 * self.n as u32))
    }
}

/// Exact spectrum via the fast transform of ξ^f.
pub fn walsh_transform(f: &QFunc) -> WalshSpectrum {
    let w = transform_table(f.q(), f.n(), &character_table(f)).unwrap();
    let spec = WalshSpectrum {
        q: f.q(),
        n: f.n(),
        w,
    };
    debug_assert!(spec.parseval_ok());
    spec
}

/// True iff transforming twice returns q^n · ξ^{f(-x)} exactly.
pub fn inversion_check(f: &QFunc) -> bool {
    let q = f.q();
    let n = f.n();
    let twice = transform_table(q, n, &transform_table(q, n, &character_table(f)).unwrap()).unwrap();
    let scale = CycInt::from_int(q, BigInt::from(q).pow(n as u32));
    (0..domain_size(q, n)).all(|idx| {
        let x = point_at(q, n, idx);
        let neg: Vec<u8> = x.iter().map(|&v| ((q - v as u32) % q) as u8).collect();
        let expected = CycInt::root(q, f.eval(&neg) as i64)
            .unwrap()
            .checked_mul(&scale)
            .unwrap();
        twice[idx] == expected
    })
}

/// Classification facts derived from a spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralClass {
    pub is_bent: bool,
    /// Present iff |W|² takes only the values {0, q^{n+s}} with support q^{n-s}.
    pub plateaued_s: Option<usize>,
    /// Plateaued with (n+s) even and every nonzero W(y) = +q^{(n+s)/2}·ξ^{a(y)}.
    pub regular: bool,
    /// The dual table a(y), present for regular bent functions.
    pub dual: Option<QFunc>,
    /// Per-point (sign, a) with W(y) = ±q^{(n+s)/2}·ξ^a; None entries at
    /// zeros. Present when plateaued with (n+s) even.
    pub sign_table: Option<Vec<Option<(bool, u8)>>>,
}

/// Classifies a spectrum by exact ring identities. The plateaued order is
/// read off the support size and confirmed by norm equality on every
/// nonzero coefficient.
pub fn classify_spectrum(spec: &WalshSpectrum) -> SpectralClass {
    let q = spec.q();
    let n = spec.n();
    let support = spec.support_size();
    let not_plateaued = SpectralClass {
        is_bent: false,
        plateaued_s: None,
        regular: false,
        dual: None,
        sign_table: None,
    };
    // support must be q^{n-s} for some 0 <= s <= n
    let mut s = None;
    let mut m = 1usize;
    for cand_s in (0..=n).rev() {
        if m == support {
            s = Some(cand_s);
            break;
        }
        m *= q as usize;
    }
    if m == support && s.is_none() {
        s = Some(0);
    }
    let Some(s) = s else {
        return not_plateaued;
    };
    let norm_expected = CycInt::from_int(q, BigInt::from(q).pow((n + s) as u32));
    for c in spec.coefficients() {
        if !c.is_zero() && c.norm_sq() != norm_expected {
            return not_plateaued;
        }
    }

    let mut regular = false;
    let mut dual = None;
    let mut sign_table = None;
    if (n + s) % 2 == 0 {
        let magnitude = BigInt::from(q).pow(((n + s) / 2) as u32);
        let mut signs: Vec<Option<(bool, u8)>> = Vec::with_capacity(spec.coefficients().len());
        let mut all_plus = true;
        let mut ok = true;
        for c in spec.coefficients() {
            if c.is_zero() {
                signs.push(None);
                continue;
            }
            match decompose_signed(c, &magnitude) {
                Some((plus, a)) => {
                    all_plus &= plus;
                    signs.push(Some((plus, a)));
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            regular = all_plus;
            if regular && s == 0 {
                let table: Vec<u8> = signs.iter().map(|e| e.unwrap().1).collect();
                dual = Some(QFunc::new(q, n, table).unwrap());
            }
            sign_table = Some(signs);
        }
    }

    SpectralClass {
        is_bent: s == 0,
        plateaued_s: Some(s),
        regular,
        dual,
        sign_table,
    }
}

/// Writes w as ±magnitude·ξ^a. For q = 2 the sign is normalized to +
/// (since -ξ^a = ξ^{a+1} there).
fn decompose_signed(w: &CycInt, magnitude: &BigInt) -> Option<(bool, u8)> {
    let (c, b) = w.unit_decompose()?;
    if &c == magnitude {
        return Some((true, b as u8));
    }
    if c == -magnitude {
        if w.modulus() == 2 {
            return Some((true, (b as u8 + 1) % 2));
        }
        return Some((false, b as u8));
    }
    None
}

pub fn classify(f: &QFunc) -> SpectralClass {
    classify_spectrum(&walsh_transform(f))
}

/// Autocorrelation test for bentness: Σ_x ξ^{f(x) - f(x-z)} must be q^n at
/// z = 0 and vanish elsewhere. Computed by direct summation, independently
/// of the transform.
pub fn bent_convolution_check(f: &QFunc) -> bool {
    let q = f.q();
    let n = f.n();
    let size = domain_size(q, n);
    for z_idx in 0..size {
        let z = point_at(q, n, z_idx);
        let mut acc = CycInt::zero(q);
        for x_idx in 0..size {
            let x = point_at(q, n, x_idx);
            let diff: Vec<u8> = x
                .iter()
                .zip(&z)
                .map(|(&a, &b)| ((a as u32 + q - b as u32) % q) as u8)
                .collect();
            let e = (f.eval(&x) as i64 - f.eval(&diff) as i64).rem_euclid(q as i64);
            acc.add_assign_rotated(&CycInt::one(q), e as u32);
        }
        let expected = if z_idx == 0 {
            CycInt::from_int(q, size as i64)
        } else {
            CycInt::zero(q)
        };
        if acc != expected {
            return false;
        }
    }
    true
}

/// Spectral form of the plateaued triple-convolution identity: there must be
/// a single norm value M with |W(y)|²·W(y) = M·W(y) for every y. Working in
/// the squared form keeps the check exact even when n+s is odd and μ itself
/// is irrational.
pub fn plateaued_convolution_check(f: &QFunc) -> bool {
    let spec = walsh_transform(f);
    let Some(reference) = spec.coefficients().iter().find(|c| !c.is_zero()) else {
        return false;
    };
    let m = reference.norm_sq();
    spec.coefficients().iter().all(|w| {
        let lhs = w.norm_sq().checked_mul(w).unwrap();
        let rhs = m.checked_mul(w).unwrap();
        lhs == rhs
    })
}

/// Support sizes (|supp g|, |supp ĝ|) for the uncertainty principle; their
/// product is at least q^n, with equality only on c·ξ^{⟨z,·⟩}·χ[coset].
pub fn uncertainty_check(q: u32, n: usize, g: &[CycInt]) -> Result<(usize, usize), SpectrumError> {
    if g.iter().all(|c| c.is_zero()) {
        return Err(SpectrumError::ZeroInput);
    }
    let hat = transform_table(q, n, g)?;
    let s1 = g.iter().filter(|c| !c.is_zero()).count();
    let s2 = hat.iter().filter(|c| !c.is_zero()).count();
    Ok((s1, s2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{inner_product, AffineFunc};
    use crate::subspaces::{Coset, Subspace};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn naive_walsh(f: &QFunc) -> Vec<CycInt> {
        let q = f.q();
        let n = f.n();
        (0..domain_size(q, n))
            .map(|y_idx| {
                let y = point_at(q, n, y_idx);
                let mut acc = CycInt::zero(q);
                for x_idx in 0..domain_size(q, n) {
                    let x = point_at(q, n, x_idx);
                    let e = (f.eval(&x) as i64 - inner_product(&x, &y, q).unwrap() as i64)
                        .rem_euclid(q as i64);
                    acc.add_assign_rotated(&CycInt::one(q), e as u32);
                }
                acc
            })
            .collect()
    }

    fn random_func(rng: &mut StdRng, q: u32, n: usize) -> QFunc {
        QFunc::from_fn(q, n, |_| rng.gen_range(0..q) as u8).unwrap()
    }

    fn base_t() -> QFunc {
        QFunc::parse("3 1\n011").unwrap()
    }

    fn base_r() -> QFunc {
        QFunc::from_fn(2, 4, |x| ((x[0] + x[1]) * (x[2] + x[3]) + x[0] + x[2]) % 2).unwrap()
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
    fn walsh_of_zero_function() {
        let f = QFunc::constant(2, 1, 0).unwrap();
        let spec = walsh_transform(&f);
        assert_eq!(spec.coefficients()[0], CycInt::from_int(2, 2));
        assert_eq!(spec.coefficients()[1], CycInt::zero(2));
    }

    #[test]
    fn walsh_of_t_at_zero() {
        // W_T(0) = ξ⁰ + ξ¹ + ξ¹ = 1 + 2ξ
        let spec = walsh_transform(&base_t());
        let mut expected = CycInt::one(3);
        expected.add_assign_rotated(&CycInt::from_int(3, 2), 1);
        assert_eq!(spec.coefficient_at(&[0]), &expected);
    }

    #[test]
    fn fast_equals_naive() {
        let mut rng = StdRng::seed_from_u64(31);
        for (q, n, rounds) in [(3u32, 2usize, 25), (2, 4, 25), (5, 1, 25)] {
            for _ in 0..rounds {
                let f = random_func(&mut rng, q, n);
                assert_eq!(walsh_transform(&f).coefficients(), naive_walsh(&f).as_slice());
            }
        }
    }

    #[test]
    fn parseval_exact() {
        let mut rng = StdRng::seed_from_u64(32);
        for (q, n) in [(2u32, 5usize), (3, 3), (5, 2), (7, 1)] {
            for _ in 0..10 {
                let f = random_func(&mut rng, q, n);
                assert!(walsh_transform(&f).parseval_ok());
            }
        }
    }

    #[test]
    fn inversion_examples() {
        assert!(inversion_check(&QFunc::constant(3, 2, 0).unwrap()));
        let mut rng = StdRng::seed_from_u64(33);
        for _ in 0..10 {
            assert!(inversion_check(&random_func(&mut rng, 3, 2)));
            assert!(inversion_check(&random_func(&mut rng, 2, 4)));
        }
    }

    #[test]
    fn classify_qn_regular_bent() {
        let class = classify(&make_qn(3, 1));
        assert!(class.is_bent);
        assert_eq!(class.plateaued_s, Some(0));
        assert!(class.regular);
        let dual = class.dual.expect("regular bent has a dual");
        // the dual is itself bent
        assert!(classify(&dual).is_bent);
    }

    #[test]
    fn classify_r_two_plateaued() {
        let class = classify(&base_r());
        assert_eq!(class.plateaued_s, Some(2));
        assert!(!class.is_bent);
    }

    #[test]
    fn classify_t_bent_not_regular() {
        let class = classify(&base_t());
        assert!(class.is_bent);
        assert_eq!(class.plateaued_s, Some(0));
        // n + s = 1 is odd: the parity obstruction rules out regularity
        assert!(!class.regular);
        assert!(class.sign_table.is_none());
    }

    #[test]
    fn classify_affine_is_n_plateaued() {
        let ell = AffineFunc::new(3, vec![1, 2], 1).unwrap().to_qfunc().unwrap();
        let class = classify(&ell);
        assert_eq!(class.plateaued_s, Some(2));
        assert!(!class.is_bent);
        let spec = walsh_transform(&ell);
        assert_eq!(spec.support_size(), 1);
    }

    #[test]
    fn classify_binary_bent_is_regular_with_dual() {
        let f = make_qn(2, 2);
        let class = classify(&f);
        assert!(class.is_bent && class.regular);
        let dual = class.dual.unwrap();
        // dual of the dual is f again (binary bent duality)
        assert_eq!(classify(&dual).dual.unwrap(), f);
    }

    #[test]
    fn bent_convolution_examples() {
        assert!(bent_convolution_check(&make_qn(3, 1)));
        assert!(!bent_convolution_check(&QFunc::constant(3, 2, 0).unwrap()));
        let mut rng = StdRng::seed_from_u64(34);
        for _ in 0..200 {
            let f = random_func(&mut rng, 3, 2);
            assert_eq!(bent_convolution_check(&f), classify(&f).is_bent);
        }
    }

    #[test]
    fn plateaued_convolution_examples() {
        assert!(plateaued_convolution_check(&base_r()));
        assert!(plateaued_convolution_check(&base_t()));
        // a function with mixed norms is rejected
        let f = QFunc::parse("3 2\n000000001").unwrap();
        assert!(!plateaued_convolution_check(&f));
        assert!(classify(&f).plateaued_s.is_none());
        let mut rng = StdRng::seed_from_u64(35);
        for _ in 0..100 {
            let f = random_func(&mut rng, 3, 2);
            assert_eq!(
                plateaued_convolution_check(&f),
                classify(&f).plateaued_s.is_some()
            );
        }
    }

    #[test]
    fn triple_convolution_direct_summation_agrees() {
        // the time-domain form of the plateaued identity: with h(x) = f(-x),
        //   ξ^f * conj(ξ^h) * ξ^f = μ²·ξ^f
        // (spectrum of the left side is W·conj(W)·W = |W|²·W). Checked by
        // literal convolution sums on a binary and a ternary plateaued
        // function, including one whose Walsh support is not symmetric.
        for (f, mu_sq) in [(base_r(), 64i64), (crate::constructions::extend_linear(&base_t(), &[1]).unwrap(), 27)] {
            let q = f.q();
            let n = f.n();
            let size = domain_size(q, n);
            let xi_f: Vec<CycInt> = character_table(&f);
            let conj_xi_h: Vec<CycInt> = (0..size)
                .map(|i| {
                    let x = point_at(q, n, i);
                    let neg: Vec<u8> = x.iter().map(|&v| ((q - v as u32) % q) as u8).collect();
                    CycInt::root(q, f.eval(&neg) as i64).unwrap().conj()
                })
                .collect();
            let conv = |a: &[CycInt], b: &[CycInt]| -> Vec<CycInt> {
                (0..size)
                    .map(|z_idx| {
                        let z = point_at(q, n, z_idx);
                        let mut acc = CycInt::zero(q);
                        for x_idx in 0..size {
                            let x = point_at(q, n, x_idx);
                            let diff: Vec<u8> = z
                                .iter()
                                .zip(&x)
                                .map(|(&a_, &b_)| ((a_ as u32 + q - b_ as u32) % q) as u8)
                                .collect();
                            acc.add_assign_ref(
                                &a[x_idx].checked_mul(&b[index_of(q, &diff)]).unwrap(),
                            );
                        }
                        acc
                    })
                    .collect()
            };
            let triple = conv(&conv(&xi_f, &conj_xi_h), &xi_f);
            let scale = CycInt::from_int(q, mu_sq);
            for (z_idx, val) in triple.iter().enumerate() {
                let expected = CycInt::root(q, f.table()[z_idx] as i64)
                    .unwrap()
                    .checked_mul(&scale)
                    .unwrap();
                assert_eq!(val, &expected, "q={q} z={z_idx}");
            }
        }
    }

    #[test]
    fn uncertainty_examples() {
        // χ[line] in F_3²
        let line = Subspace::from_vectors(3, 2, &[vec![1, 0]]).unwrap();
        let coset = Coset::new(line, &[0, 0]).unwrap();
        let mut g = vec![CycInt::zero(3); 9];
        for idx in coset.indices() {
            g[idx] = CycInt::one(3);
        }
        assert_eq!(uncertainty_check(3, 2, &g).unwrap(), (3, 3));

        // χ[{0}]
        let mut point = vec![CycInt::zero(3); 9];
        point[0] = CycInt::one(3);
        assert_eq!(uncertainty_check(3, 2, &point).unwrap(), (1, 9));

        // ξ^T - ξ^{T'} has supports (1, 3): product exactly q^n
        let t = base_t();
        let tp = QFunc::parse("3 1\n001").unwrap();
        let g: Vec<CycInt> = character_table(&t)
            .iter()
            .zip(character_table(&tp).iter())
            .map(|(a, b)| a - b)
            .collect();
        let (s1, s2) = uncertainty_check(3, 1, &g).unwrap();
        assert_eq!((s1, s2), (1, 3));

        assert_eq!(
            uncertainty_check(3, 1, &vec![CycInt::zero(3); 3]),
            Err(SpectrumError::ZeroInput)
        );
    }

    #[test]
    fn classify_invariant_under_affine_transforms() {
        use crate::functions::tests::random_transform;
        use crate::functions::{apply_affine_transform, AffineFunc};
        let mut rng = StdRng::seed_from_u64(36);
        for _ in 0..30 {
            let f = random_func(&mut rng, 3, 2);
            let a = random_transform(&mut rng, 3, 2);
            let ell = AffineFunc::new(
                3,
                (0..2).map(|_| rng.gen_range(0..3)).collect(),
                rng.gen_range(0..3),
            )
            .unwrap();
            let g = apply_affine_transform(&f, &a, &ell).unwrap();
            assert_eq!(classify(&f).plateaued_s, classify(&g).plateaued_s);
        }
    }
}
