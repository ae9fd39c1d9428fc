//! Shared helpers for the integration tests.
#![allow(dead_code)]

use lie_eigenlab_core::group::{AlgebraBasis, GaussStream, GroupSpec};
use lie_eigenlab_core::linalg::{CMat, C64};

pub fn assert_close(actual: f64, expected: f64, tol: f64, what: &str) {
    assert!(
        (actual - expected).abs() < tol,
        "{what}: got {actual:.12e}, expected {expected:.12e} (tol {tol:.1e})"
    );
}

pub fn assert_small(value: f64, tol: f64, what: &str) {
    assert!(value < tol, "{what}: {value:.3e} exceeds {tol:.1e}");
}

pub fn assert_cclose(actual: C64, expected: C64, tol: f64, what: &str) {
    let d = (actual - expected).norm();
    assert!(
        d < tol,
        "{what}: got {actual}, expected {expected} (|diff| = {d:.3e} > {tol:.1e})"
    );
}

/// Brute-force Casimir matrix `Σ_X X²` acting on the defining
/// representation, straight from an explicit orthonormal basis.
pub fn casimir_matrix(basis: &AlgebraBasis) -> CMat {
    let m = basis.spec().matrix_size();
    let mut acc = CMat::zeros(m, m);
    for x in basis.iter() {
        acc.add_assign(&x.mat().mul(x.mat()));
    }
    acc
}

/// Brute-force adjoint Casimir `Σ_X [X, [X, A]]`.
pub fn adjoint_casimir(basis: &AlgebraBasis, a: &CMat) -> CMat {
    let m = basis.spec().matrix_size();
    let mut acc = CMat::zeros(m, m);
    for x in basis.iter() {
        acc.add_assign(&x.mat().commutator(&x.mat().commutator(a)));
    }
    acc
}

pub fn random_cvec(stream: &mut GaussStream, len: usize) -> Vec<C64> {
    (0..len).map(|_| stream.next_cgauss()).collect()
}

pub fn random_cmat(stream: &mut GaussStream, n: usize) -> CMat {
    CMat::from_fn(n, n, |_, _| stream.next_cgauss())
}

pub fn all_specs() -> Vec<GroupSpec> {
    vec![
        GroupSpec::su(2).unwrap(),
        GroupSpec::su(3).unwrap(),
        GroupSpec::su(4).unwrap(),
        GroupSpec::su(5).unwrap(),
        GroupSpec::so(3).unwrap(),
        GroupSpec::so(4).unwrap(),
        GroupSpec::so(5).unwrap(),
        GroupSpec::so(6).unwrap(),
        GroupSpec::sp(1).unwrap(),
        GroupSpec::sp(2).unwrap(),
        GroupSpec::sp(3).unwrap(),
    ]
}
