//! Exact arithmetic in the ring Z[ξ] of cyclotomic integers, where ξ is a
//! primitive q-th root of unity and q is prime.
//!
//! Elements are kept in the canonical basis {1, ξ, ..., ξ^{q-2}}; the relation
//! 1 + ξ + ... + ξ^{q-1} = 0 is applied eagerly, so equality, divisibility and
//! unit-root decomposition are decided by coefficient inspection alone.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

/// Errors raised by cyclotomic arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycError {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u32),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("exact real part is only defined for q <= 3, got q = {0}")]
    ExactRealUnsupported(u32),
}

pub(crate) fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A cyclotomic integer: an exact element of Z[ξ_q] for prime q.
///
/// `coeffs` has length exactly q-1 and represents Σ coeffs[j]·ξ^j.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    q: u32,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    /// The zero element of Z[ξ_q].
    pub fn zero(q: u32) -> Self {
        assert!(is_prime(q), "modulus must be prime");
        CycInt {
            q,
            coeffs: vec![BigInt::zero(); (q - 1) as usize],
        }
    }

    /// The multiplicative identity.
    pub fn one(q: u32) -> Self {
        Self::from_int(q, 1)
    }

    /// The rational integer n, embedded as n·1.
    pub fn from_int<T: Into<BigInt>>(q: u32, n: T) -> Self {
        let mut r = Self::zero(q);
        r.coeffs[0] = n.into();
        r
    }

    /// Canonical form of ξ^k. `k` is reduced mod q; for k = q-1 this yields
    /// the all-(-1) coefficient vector forced by 1 + ξ + ... + ξ^{q-1} = 0.
    pub fn root(q: u32, k: i64) -> Result<Self, CycError> {
        if !is_prime(q) {
            return Err(CycError::NonPrimeModulus(q));
        }
        let k = k.rem_euclid(q as i64) as usize;
        let mut exps = vec![BigInt::zero(); q as usize];
        exps[k] = BigInt::from(1);
        Ok(Self::from_exponents(q, exps))
    }

    /// Builds the canonical form from a full exponent vector Σ vals[e]·ξ^e,
    /// e = 0..q-1, eliminating the ξ^{q-1} slot via the cyclotomic relation.
    fn from_exponents(q: u32, mut vals: Vec<BigInt>) -> Self {
        debug_assert_eq!(vals.len(), q as usize);
        let top = vals.pop().unwrap();
        for v in vals.iter_mut() {
            *v -= &top;
        }
        CycInt { q, coeffs: vals }
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    /// Canonical coefficients in the basis {1, ξ, ..., ξ^{q-2}}.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_modulus(&self, other: &Self) -> Result<(), CycError> {
        if self.q != other.q {
            return Err(CycError::ModulusMismatch(self.q, other.q));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CycError> {
        self.check_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycInt { q: self.q, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.check_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycInt { q: self.q, coeffs })
    }

    pub fn neg(&self) -> Self {
        CycInt {
            q: self.q,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Exact ring product, schoolbook over exponents followed by reduction.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, CycError> {
        self.check_modulus(other)?;
        let q = self.q as usize;
        let mut exps = vec![BigInt::zero(); q];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                exps[(i + j) % q] += a * b;
            }
        }
        Ok(Self::from_exponents(self.q, exps))
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        debug_assert_eq!(self.q, other.q);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn sub_assign_ref(&mut self, other: &Self) {
        debug_assert_eq!(self.q, other.q);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
    }

    /// Multiplication by ξ^k, as a coefficient rotation with reduction.
    pub fn mul_root(&self, k: i64) -> Self {
        let q = self.q as usize;
        let k = k.rem_euclid(self.q as i64) as usize;
        let mut exps = vec![BigInt::zero(); q];
        for (j, c) in self.coeffs.iter().enumerate() {
            exps[(j + k) % q] += c;
        }
        Self::from_exponents(self.q, exps)
    }

    /// In-place `self += other · ξ^k`. The workhorse of the fast transform:
    /// no general multiplication, only index rotation and addition.
    pub fn add_assign_rotated(&mut self, other: &Self, k: u32) {
        debug_assert_eq!(self.q, other.q);
        let q = self.q as usize;
        let k = (k as usize) % q;
        for (j, c) in other.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (j + k) % q;
            if e == q - 1 {
                for m in 0..q - 1 {
                    self.coeffs[m] -= c;
                }
            } else {
                self.coeffs[e] += c;
            }
        }
    }

    /// Complex conjugation, ξ^k ↦ ξ^{q-k}; an involutive ring automorphism.
    pub fn conj(&self) -> Self {
        let q = self.q as usize;
        let mut exps = vec![BigInt::zero(); q];
        for (j, c) in self.coeffs.iter().enumerate() {
            exps[(q - j) % q] += c;
        }
        Self::from_exponents(self.q, exps)
    }

    /// a·conj(a), an element of the real subring of Z[ξ_q].
    pub fn norm_sq(&self) -> Self {
        self.checked_mul(&self.conj()).unwrap()
    }

    /// Some(n) when this element is the rational integer n·1, None otherwise.
    pub fn as_rational_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Decomposes `self` as c·ξ^b if possible, trying each b in 0..q and
    /// testing whether self·ξ^{-b} is a rational integer. Zero yields (0, 0).
    pub fn unit_decompose(&self) -> Option<(BigInt, u32)> {
        for b in 0..self.q {
            if let Some(c) = self.mul_root(-(b as i64)).as_rational_integer() {
                return Some((c, b));
            }
        }
        None
    }

    /// True iff every canonical coefficient is divisible by p.
    pub fn divisible_by(&self, p: &BigInt) -> bool {
        assert!(p.is_positive(), "divisor must be >= 1");
        self.coeffs.iter().all(|c| (c % p).is_zero())
    }

    /// Exact 2·Re(self); defined only for q ∈ {2, 3} where real parts of
    /// canonical basis elements are half-integers.
    pub fn twice_real_part(&self) -> Result<BigInt, CycError> {
        match self.q {
            2 => Ok(&self.coeffs[0] * 2),
            3 => Ok(&self.coeffs[0] * 2 - &self.coeffs[1]),
            q => Err(CycError::ExactRealUnsupported(q)),
        }
    }

    /// Floating-point image under ξ ↦ e^{2πi/q}, as (re, im).
    /// Diagnostic cross-check of the exact reduction; never used in product
    /// decision paths.
    pub fn embed(&self) -> (f64, f64) {
        let q = self.q as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let phi = 2.0 * std::f64::consts::PI * (j as f64) / q;
            re += c * phi.cos();
            im += c * phi.sin();
        }
        (re, im)
    }

    pub fn abs_sq_f64(&self) -> f64 {
        let (re, im) = self.embed();
        re * re + im * im
    }
}

impl fmt::Display for CycInt {
    /// `q:[c0,c1,...]`, the form embedded in JSON reports.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[", self.q)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

impl std::ops::Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.checked_add(rhs).unwrap()
    }
}

impl std::ops::Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.checked_sub(rhs).unwrap()
    }
}

impl std::ops::Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.checked_mul(rhs).unwrap()
    }
}

impl std::ops::Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt::neg(self)
    }
}
