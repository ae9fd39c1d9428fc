//! Projective-line valued maps: construction preconditions, chart
//! verification, conformal/scaling invariance, and the singular-set
//! probe with an explicit witness construction.

mod common;

use common::{assert_cclose, assert_small};
use lie_eigenlab_core::families::{su_standard, su_tensor, EigenFamily};
use lie_eigenlab_core::fields::{CoeffForm, ScalarField};
use lie_eigenlab_core::group::{GaussStream, GroupElement, GroupSpec};
use lie_eigenlab_core::linalg::{CMat, C64};
use lie_eigenlab_core::morphism::{
    build_morphism, linearly_independent, singular_set_probe, verify_harmonic_morphism, Chart,
    HomogeneousPoly,
};
use lie_eigenlab_core::Error;

fn e(k: usize, len: usize) -> Vec<C64> {
    let mut v = vec![C64::ZERO; len];
    v[k] = C64::ONE;
    v
}

fn x(vars: usize, var: usize) -> HomogeneousPoly {
    HomogeneousPoly::variable(vars, var).unwrap()
}

fn hopf() -> (EigenFamily, HomogeneousPoly, HomogeneousPoly) {
    let fam = su_standard(2, &e(0, 2)).unwrap();
    (fam, x(2, 0), x(2, 1))
}

#[test]
fn hopf_morphism_evaluates_to_the_coefficient_pair() {
    let (fam, p_poly, q_poly) = hopf();
    let m = build_morphism(&fam, None, p_poly, q_poly).unwrap();
    let g = lie_eigenlab_core::group::haar_sample(&fam.spec(), 3);
    let (u, v) = m.homogeneous(&g);
    assert_cclose(u, g.mat()[(0, 0)], 1e-15, "P component is z_11");
    assert_cclose(v, g.mat()[(1, 0)], 1e-15, "Q component is z_21");
}

#[test]
fn morphism_construction_rejects_bad_polynomial_pairs() {
    let (fam, p_poly, _) = hopf();
    // P = Q: dependent
    let err = build_morphism(&fam, None, p_poly.clone(), p_poly.clone());
    assert!(matches!(err, Err(Error::Precondition(_))));
    // degree mismatch
    let quad = HomogeneousPoly::new(2, vec![(vec![1, 1], C64::ONE)]).unwrap();
    let err = build_morphism(&fam, None, p_poly.clone(), quad);
    assert!(matches!(err, Err(Error::Precondition(_))));
    // scalar multiples are dependent even with different coefficients
    let p2 = p_poly.scale(C64::new(0.0, 2.0));
    assert!(!linearly_independent(&p_poly, &p2));
}

#[test]
fn homogeneous_poly_validation() {
    assert!(HomogeneousPoly::new(2, vec![]).is_err(), "empty polynomial");
    assert!(
        HomogeneousPoly::new(2, vec![(vec![1, 0], C64::ONE), (vec![1, 1], C64::ONE)]).is_err(),
        "mixed degrees"
    );
    assert!(
        HomogeneousPoly::new(2, vec![(vec![1, 0], C64::ZERO)]).is_err(),
        "all-zero coefficients"
    );
    assert!(
        HomogeneousPoly::new(2, vec![(vec![1, 0, 0], C64::ONE)]).is_err(),
        "bad arity"
    );
}

#[test]
fn hopf_chart_residuals_vanish() {
    let (fam, p_poly, q_poly) = hopf();
    let m = build_morphism(&fam, None, p_poly, q_poly).unwrap();
    let report = verify_harmonic_morphism(&m, 100, 5, 1e-8, 0.1, Chart::POverQ).unwrap();
    assert!(report.passed, "{report:?}");
    assert!(!report.inconclusive);
    assert_small(report.max_tau, 1e-8, "tau residual");
    assert_small(report.max_kappa, 1e-8, "kappa residual");
    assert_small(
        report.fd_crosscheck.unwrap(),
        1e-5,
        "FD cross-check of the quotient calculus",
    );
}

#[test]
fn degree_two_charts_over_su3_pass() {
    let fam = su_standard(3, &e(0, 3)).unwrap();
    // P = x1^2, Q = x1 x2
    let p_poly = HomogeneousPoly::new(3, vec![(vec![2, 0, 0], C64::ONE)]).unwrap();
    let q_poly = HomogeneousPoly::new(3, vec![(vec![1, 1, 0], C64::ONE)]).unwrap();
    let m = build_morphism(&fam, None, p_poly, q_poly).unwrap();
    let report = verify_harmonic_morphism(&m, 60, 7, 1e-7, 0.1, Chart::POverQ).unwrap();
    assert!(report.passed, "{report:?}");
}

#[test]
fn non_eigenfamily_inputs_fail_the_conformality_check() {
    let spec = GroupSpec::su(3).unwrap();
    // f1 = z_11 and f2 = z_11 + z_22: a family-shaped set that is NOT an
    // eigenfamily (kappa is not proportional across these members)
    let f1 = ScalarField::coefficient(spec, CoeffForm::Hermitian, e(0, 3), e(0, 3)).unwrap();
    let f22 = ScalarField::coefficient(spec, CoeffForm::Hermitian, e(1, 3), e(1, 3)).unwrap();
    let f2 =
        ScalarField::linear_combination(spec, &[f1.clone(), f22], &[C64::ONE, C64::ONE]).unwrap();
    let fam = EigenFamily::from_members(spec, "not an eigenfamily", vec![f1, f2]).unwrap();
    let m = build_morphism(&fam, None, x(2, 0), x(2, 1)).unwrap();
    let report = verify_harmonic_morphism(&m, 60, 11, 1e-7, 0.1, Chart::POverQ).unwrap();
    assert!(!report.passed);
    assert!(
        report.max_kappa > 0.01,
        "kappa residual must be O(1), got {:.3e}",
        report.max_kappa
    );
}

#[test]
fn chart_choice_does_not_change_the_verdict() {
    let (fam, p_poly, q_poly) = hopf();
    let m = build_morphism(&fam, None, p_poly, q_poly).unwrap();
    let a = verify_harmonic_morphism(&m, 80, 13, 1e-8, 0.1, Chart::POverQ).unwrap();
    let b = verify_harmonic_morphism(&m, 80, 13, 1e-8, 0.1, Chart::QOverP).unwrap();
    assert_eq!(a.passed, b.passed, "chart invariance of the verdict");

    let fam3 = su_standard(3, &e(0, 3)).unwrap();
    let m3 = build_morphism(&fam3, None, x(3, 0), x(3, 2)).unwrap();
    let a3 = verify_harmonic_morphism(&m3, 80, 14, 1e-7, 0.1, Chart::POverQ).unwrap();
    let b3 = verify_harmonic_morphism(&m3, 80, 14, 1e-7, 0.1, Chart::QOverP).unwrap();
    assert!(a3.passed && b3.passed, "{a3:?} vs {b3:?}");
}

#[test]
fn common_scaling_of_the_polynomials_changes_nothing() {
    let (fam, p_poly, q_poly) = hopf();
    let z = C64::new(-1.7, 0.9);
    let m1 = build_morphism(&fam, None, p_poly.clone(), q_poly.clone()).unwrap();
    let m2 = build_morphism(&fam, None, p_poly.scale(z), q_poly.scale(z)).unwrap();
    let r1 = verify_harmonic_morphism(&m1, 60, 17, 1e-8, 0.1, Chart::POverQ).unwrap();
    let r2 = verify_harmonic_morphism(&m2, 60, 17, 1e-8, 0.1, Chart::POverQ).unwrap();
    assert_eq!(r1.passed, r2.passed);
    assert!(
        (r1.max_tau - r2.max_tau).abs() < 1e-12,
        "{} vs {}",
        r1.max_tau,
        r2.max_tau
    );
    assert!((r1.max_kappa - r2.max_kappa).abs() < 1e-12);
}

/// Ten random homogeneous pairs of degree <= 3 over each catalogued
/// family must verify at 1e-7 — the computational content of the
/// rational-map construction.
#[test]
fn random_polynomial_pairs_over_catalogued_families_verify() {
    let families: Vec<EigenFamily> = vec![
        su_standard(2, &e(0, 2)).unwrap(),
        su_standard(3, &e(0, 3)).unwrap(),
        su_tensor(3, &e(0, 3), &e(1, 3)).unwrap(),
    ];
    let mut stream = GaussStream::new(101);
    for fam in &families {
        let k = fam.len();
        for trial in 0..10 {
            let degree = 1 + (trial % 3) as u32;
            let (p_poly, q_poly) = random_pair(&mut stream, k, degree);
            let m = match build_morphism(fam, None, p_poly, q_poly) {
                Ok(m) => m,
                Err(_) => continue, // dependent draw; vanishing probability
            };
            let report =
                verify_harmonic_morphism(&m, 40, 200 + trial as u64, 1e-7, 0.1, Chart::POverQ)
                    .unwrap();
            assert!(
                report.passed || report.inconclusive,
                "family {} trial {trial}: {report:?}",
                fam.label()
            );
        }
    }
}

fn random_monomial(stream: &mut GaussStream, vars: usize, degree: u32) -> Vec<u32> {
    let mut idx = vec![0u32; vars];
    for _ in 0..degree {
        let slot = (stream.next_gauss().abs() * 7.0) as usize % vars;
        idx[slot] += 1;
    }
    idx
}

fn random_pair(
    stream: &mut GaussStream,
    vars: usize,
    degree: u32,
) -> (HomogeneousPoly, HomogeneousPoly) {
    let build = |stream: &mut GaussStream| {
        let terms: Vec<(Vec<u32>, C64)> = (0..3)
            .map(|_| (random_monomial(stream, vars, degree), stream.next_cgauss()))
            .collect();
        HomogeneousPoly::new(vars, terms).unwrap()
    };
    (build(stream), build(stream))
}

#[test]
fn hopf_singular_set_probe_reports_a_positive_floor() {
    let (fam, p_poly, q_poly) = hopf();
    let m = build_morphism(&fam, None, p_poly, q_poly).unwrap();
    let probe = singular_set_probe(&m, 10_000, 19, 0.01);
    assert!(
        probe.min_of_max > 0.01,
        "Hopf data has empty Z; min = {:.3}",
        probe.min_of_max
    );
    assert!(probe.likely_empty);
    // |u|^2 + |v|^2 = 1 exactly on SU(2) with orthonormal index vectors,
    // so the minimum of max(|u|, |v|) is bounded below by 1/sqrt(2)
    assert!(
        probe.min_of_max > 0.5,
        "analytic floor 1/sqrt(2), got {:.3}",
        probe.min_of_max
    );
}

/// On SU(3) the set Z is nonempty: a witness is constructed by mapping
/// the generator into the common kernel of both index functionals.
#[test]
fn su3_singular_set_is_nonempty_with_an_explicit_witness() {
    let fam = su_standard(3, &e(0, 3)).unwrap();
    let m = build_morphism(&fam, None, x(3, 0), x(3, 1)).unwrap();
    // witness: permutation z0 e1 = e3, e2 -> e1, e3 -> e2 (determinant +1)
    let mut z0 = CMat::zeros(3, 3);
    z0[(2, 0)] = C64::ONE;
    z0[(0, 1)] = C64::ONE;
    z0[(1, 2)] = C64::ONE;
    let witness = GroupElement::new(GroupSpec::su(3).unwrap(), z0, 1e-12).unwrap();
    let (u, v) = m.homogeneous(&witness);
    assert_small(u.norm().max(v.norm()), 1e-15, "witness lies in Z");
    let probe = singular_set_probe(&m, 10_000, 23, 0.25);
    assert!(
        !probe.likely_empty,
        "sampling should approach Z (min {:.3} must stay below 0.25)",
        probe.min_of_max
    );
}

#[test]
fn empty_sampling_yields_a_zero_floor() {
    let (fam, p_poly, q_poly) = hopf();
    let m = build_morphism(&fam, None, p_poly, q_poly).unwrap();
    let probe = singular_set_probe(&m, 0, 1, 0.01);
    assert_eq!(probe.min_of_max, 0.0);
    assert!(!probe.likely_empty);
}

#[test]
fn verification_is_inconclusive_when_the_chart_is_empty() {
    let spec = GroupSpec::su(2).unwrap();
    let member = ScalarField::coefficient(spec, CoeffForm::Hermitian, e(0, 2), e(0, 2)).unwrap();
    let zero = ScalarField::constant(spec, C64::ZERO);
    let fam = EigenFamily::from_members(spec, "degenerate pair", vec![member, zero]).unwrap();
    let m = build_morphism(&fam, None, x(2, 0), x(2, 1)).unwrap();
    let report = verify_harmonic_morphism(&m, 30, 3, 1e-8, 0.1, Chart::POverQ).unwrap();
    assert!(report.inconclusive);
    assert!(!report.passed);
    assert_eq!(report.samples_used, 0);
}
