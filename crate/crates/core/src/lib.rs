//! Exact-arithmetic analysis and construction of q-ary bent and plateaued
//! functions.
//!
//! Everything is computed in the ring Z[ξ_q] of cyclotomic integers, so
//! classification facts (bentness, plateaued order, regularity, duals),
//! metrics (nonlinearity, correlation immunity, Walsh divisibility) and the
//! search drivers are exact integer identities with no floating-point path.
//!
//! Modules:
//! - [`cyclotomic`]: the ring Z[ξ_q] with conjugation, norms, unit-root
//!   decomposition and divisibility.
//! - [`functions`]: truth tables over F_q^n, affine functions and
//!   transformations, isotopies, the `.qf` text format.
//! - [`subspaces`]: RREF subspaces and cosets, duals, enumeration, totally
//!   isotropic subspaces, Poisson summation.
//! - [`spectrum`]: the exact fast Walsh–Hadamard transform and spectral
//!   classification.
//! - [`metrics`]: nonlinearity (direct and spectral), strong nonlinearity,
//!   correlation immunity, divisibility orders, bound checks.
//! - [`constructions`]: the function families (quadratic forms, diagonal
//!   squares, plateaued lifts, gluing, coset modification, minimal pairs,
//!   order-4 quasigroups).
//! - [`search`]: exhaustive class enumeration, minimal-distance scans,
//!   neighbor counting and verification drivers.

pub mod constructions;
pub mod cyclotomic;
pub mod functions;
pub mod metrics;
pub mod search;
pub mod spectrum;
pub mod subspaces;

pub use cyclotomic::CycInt;
pub use functions::QFunc;
pub use spectrum::{classify, walsh_transform, SpectralClass, WalshSpectrum};
