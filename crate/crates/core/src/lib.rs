//! Numerical laboratory for eigenfamilies, harmonic morphisms and
//! codimension-two minimal level sets on the compact matrix groups
//! SU(n), SO(n) and Sp(n).
//!
//! The crate is `no_std` (with `alloc`): every routine is pure given its
//! inputs and an explicit RNG seed, so the whole library can be driven
//! deterministically from the companion CLI crate or from tests.
//!
//! Module map:
//!
//! * [`linalg`]  — dense complex matrices, LU, polar/exponential/log maps,
//!   Hessenberg–QR eigenvalues; everything sized for m ≤ 10.
//! * [`group`]   — group realizations, orthonormal Lie-algebra bases,
//!   Haar sampling, exponential curves and the polar retraction.
//! * [`fields`]  — complex scalar fields on a group with structured tags
//!   that admit exact first/second derivatives along exponential curves.
//! * [`calculus`] — directional derivatives, the Laplacian, gradients and
//!   the conformality operator kappa; exact where possible, finite
//!   differences otherwise.
//! * [`roots`]   — root systems of types A–D, half-sums, Casimir scalars
//!   in the trace-form normalization, and cross-checks against measured
//!   Laplacian eigenvalues.
//! * [`families`] — the catalogue of eigenfamily constructors, the
//!   verification engine, and products of kappa-compatible families.
//! * [`morphism`] — projective-line valued maps built from a family and a
//!   pair of homogeneous polynomials, verified in affine charts.
//! * [`levelset`] — level sets of complex constraints, Newton projection,
//!   regularity diagnostics and mean-curvature estimation.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod calculus;
pub mod error;
pub mod families;
pub mod fields;
pub mod group;
pub mod levelset;
pub mod linalg;
pub mod morphism;
pub mod roots;
pub mod tol;

pub use error::{Error, Result};
pub use linalg::{CMat, C64};
