//! Level-set machinery: eigenvalue-gap tests with a discriminant oracle,
//! Newton projection against a penalty-descent oracle, the commutator
//! gradient formula, tangent frames, mean-curvature certification with
//! h-refinement, codimension via local PCA, and leaf disjointness.

mod common;

use common::{assert_cclose, assert_small, random_cmat};
use lie_eigenlab_core::calculus::{directional_derivative, gradient_coeffs, FdScheme};
use lie_eigenlab_core::families::su_standard;
use lie_eigenlab_core::fields::ScalarField;
use lie_eigenlab_core::group::{build_basis, group_exp, haar_sample, GaussStream, GroupSpec};
use lie_eigenlab_core::levelset::{
    bilinear_column_field, bilinear_gradient_formula, distinct_eigenvalues, mean_curvature,
    newton_project, random_distinct_matrix, regularity_check, sample_manifold, LevelSetSpec,
};
use lie_eigenlab_core::linalg::{eigenvalues, sym_eigenvalues, CMat, C64};
use lie_eigenlab_core::morphism::HomogeneousPoly;
use lie_eigenlab_core::Error;

fn diag(vals: &[f64]) -> CMat {
    CMat::diag(&vals.iter().map(|&v| C64::new(v, 0.0)).collect::<Vec<_>>())
}

fn e(k: usize, len: usize) -> Vec<C64> {
    let mut v = vec![C64::ZERO; len];
    v[k] = C64::ONE;
    v
}

// ---------------------------------------------------------------------
// eigenvalue separation

#[test]
fn distinct_eigenvalues_on_explicit_diagonals() {
    assert!(distinct_eigenvalues(&diag(&[1.0, 2.0, 3.0]), 1e-8).unwrap());
    assert!(!distinct_eigenvalues(&diag(&[1.0, 1.0, 2.0]), 1e-8).unwrap());
}

/// Characteristic polynomial coefficients (monic, ascending order) by
/// the Faddeev–LeVerrier recursion B_k = M B_{k-1} + c_{n-k} I with
/// c_{n-k} = -tr(M B_{k-1})/k.
fn char_poly(m: &CMat) -> Vec<C64> {
    let n = m.nrows();
    let mut coeffs = vec![C64::ZERO; n + 1];
    coeffs[n] = C64::ONE;
    let mut b = CMat::identity(n);
    for k in 1..=n {
        let mb = m.mul(&b);
        let c = -mb.trace() / C64::new(k as f64, 0.0);
        coeffs[n - k] = c;
        b = mb;
        for i in 0..n {
            b[(i, i)] += c;
        }
    }
    coeffs
}

/// Resultant of p and its derivative via the Sylvester matrix; the
/// discriminant is that resultant up to a known sign/scale, and it
/// vanishes exactly when eigenvalues collide.
fn discriminant(coeffs: &[C64]) -> C64 {
    let n = coeffs.len() - 1;
    let deriv: Vec<C64> = (1..=n)
        .map(|k| coeffs[k] * C64::new(k as f64, 0.0))
        .collect();
    // Sylvester matrix of p (degree n) and p' (degree n-1): (2n-1) square
    let size = 2 * n - 1;
    let mut s = CMat::zeros(size, size);
    for row in 0..n - 1 {
        for (j, &c) in coeffs.iter().rev().enumerate() {
            s[(row, row + j)] = c;
        }
    }
    for row in 0..n {
        for (j, &c) in deriv.iter().rev().enumerate() {
            s[(n - 1 + row, row + j)] = c;
        }
    }
    s.det().unwrap()
}

#[test]
fn eigenvalue_gaps_match_the_discriminant_oracle() {
    let mut stream = GaussStream::new(7);
    for trial in 0..6 {
        let m = random_cmat(&mut stream, 4);
        let eigs = eigenvalues(&m).unwrap();
        // eigenvalues must satisfy the characteristic polynomial
        let coeffs = char_poly(&m);
        for l in &eigs {
            let mut val = C64::ZERO;
            let mut pow = C64::ONE;
            for c in coeffs.iter() {
                val += c * pow;
                pow *= l;
            }
            assert_small(
                val.norm(),
                1e-8,
                &format!("char poly residual, trial {trial}"),
            );
        }
        // discriminant from the resultant equals the product of squared gaps
        let disc = discriminant(&coeffs);
        let mut gap_product = C64::ONE;
        for i in 0..eigs.len() {
            for j in i + 1..eigs.len() {
                let d = eigs[i] - eigs[j];
                gap_product *= d * d;
            }
        }
        let rel = (disc - gap_product).norm() / gap_product.norm().max(1e-300);
        assert_small(
            rel,
            1e-6,
            &format!("discriminant vs gap product, trial {trial}"),
        );
        assert!(
            distinct_eigenvalues(&m, 1e-8).unwrap(),
            "Gaussian matrices have distinct spectra"
        );
    }
}

#[test]
fn random_distinct_matrix_generator_delivers() {
    for seed in 0..5u64 {
        let h = random_distinct_matrix(3, seed).unwrap();
        assert!(distinct_eigenvalues(&h, 1e-8).unwrap());
    }
}

// ---------------------------------------------------------------------
// gradient formula and regularity

#[test]
fn commutator_formula_matches_structured_and_fd_gradients() {
    let mut stream = GaussStream::new(11);
    for n in [3usize, 4] {
        let spec = GroupSpec::su(n).unwrap();
        let basis = build_basis(&spec).unwrap();
        let scheme = FdScheme::default();
        for trial in 0..50 {
            let h = random_cmat(&mut stream, n);
            let field = bilinear_column_field(spec, &h).unwrap();
            let z = haar_sample(&spec, 1000 + trial);
            let grads = gradient_coeffs(&field, &z, &basis, &scheme).unwrap();
            // black-box view forces the FD route
            let f2 = field.clone();
            let bb = ScalarField::opaque(spec, move |m: &CMat| f2.eval_mat(m));
            for (x, g) in basis.iter().zip(&grads) {
                let formula = bilinear_gradient_formula(&h, &z, x.mat());
                assert_cclose(
                    formula,
                    *g,
                    1e-10,
                    "commutator formula vs structured gradient",
                );
                let fd = directional_derivative(&bb, &z, x, &scheme).unwrap().value;
                assert_cclose(formula, fd, 1e-9, "commutator formula vs FD gradient");
            }
        }
    }
}

#[test]
fn identity_matrix_gives_an_identically_zero_gradient() {
    let spec = GroupSpec::su(3).unwrap();
    let basis = build_basis(&spec).unwrap();
    let h = CMat::identity(3);
    for seed in 0..10 {
        let z = haar_sample(&spec, seed);
        for x in basis.iter() {
            assert_small(
                bilinear_gradient_formula(&h, &z, x.mat()).norm(),
                1e-14,
                "H = I kills the commutator",
            );
        }
    }
    assert!(matches!(
        LevelSetSpec::bilinear(spec, h),
        Err(Error::Singular(_))
    ));
}

/// The differential extends complex-linearly to the complexified
/// algebra: values on iX are i times values on X, and vanishing of the
/// real gradient forces vanishing of the whole complexified one.
#[test]
fn complexified_differential_is_complex_linear() {
    let spec = GroupSpec::su(3).unwrap();
    let basis = build_basis(&spec).unwrap();
    let mut stream = GaussStream::new(13);
    let h = random_cmat(&mut stream, 3);
    let z = haar_sample(&spec, 17);
    let i = C64::new(0.0, 1.0);
    for x in basis.iter() {
        let on_x = bilinear_gradient_formula(&h, &z, x.mat());
        let on_ix = bilinear_gradient_formula(&h, &z, &x.mat().scale(i));
        assert_cclose(on_ix, i * on_x, 1e-13, "dPhi(iX) = i dPhi(X)");
    }
    // near the degenerate case H = I + eps E the whole complexified
    // differential scales with eps, pinned by linearity in H
    let eps = 1e-9;
    let h_near = CMat::identity(3).add(&random_cmat(&mut stream, 3).scale(C64::new(eps, 0.0)));
    let mut sup_real = 0.0f64;
    let mut sup_complex = 0.0f64;
    for x in basis.iter() {
        sup_real = sup_real.max(bilinear_gradient_formula(&h_near, &z, x.mat()).norm());
        sup_complex =
            sup_complex.max(bilinear_gradient_formula(&h_near, &z, &x.mat().scale(i)).norm());
    }
    assert!(sup_real < 10.0 * eps, "real differential is O(eps)");
    assert!(
        sup_complex <= sup_real + 1e-15,
        "complex directions add nothing beyond linearity"
    );
}

#[test]
fn regularity_holds_on_sampled_points_with_distinct_eigenvalues() {
    let spec = GroupSpec::su(3).unwrap();
    let ls = LevelSetSpec::bilinear(spec, diag(&[1.0, 2.0, 3.0])).unwrap();
    let cloud = sample_manifold(&ls, 200, 3, 1e-12).unwrap();
    assert_eq!(cloud.points.len(), 200);
    for pt in &cloud.points {
        assert!(pt.constraint_norm < 1e-12);
        let reg = regularity_check(&ls, &pt.element).unwrap();
        assert!(reg.sigma_min > 1e-3, "sigma_min = {:.3e}", reg.sigma_min);
        assert_small(
            reg.commutator_discrepancy.unwrap(),
            1e-10,
            "commutator check at sample",
        );
    }
}

// ---------------------------------------------------------------------
// Newton projection

#[test]
fn projection_is_a_fixed_point_on_the_level_set() {
    let spec = GroupSpec::su(3).unwrap();
    let ls = LevelSetSpec::bilinear(spec, diag(&[1.0, 2.0, 3.0])).unwrap();
    let start = haar_sample(&spec, 5);
    let pt = newton_project(&ls, &start, 30, 1e-12).unwrap();
    let again = newton_project(&ls, &pt.element, 30, 1e-12).unwrap();
    assert_eq!(again.iterations, 0, "already on the set");
    assert_small(pt.element.distance(&again.element), 1e-15, "fixed point");
}

#[test]
fn projection_converges_quickly_and_stays_on_the_group() {
    let spec = GroupSpec::su(3).unwrap();
    let ls = LevelSetSpec::bilinear(spec, diag(&[1.0, 2.0, 3.0])).unwrap();
    for seed in 0..10u64 {
        let start = haar_sample(&spec, 100 + seed);
        let pt = newton_project(&ls, &start, 30, 1e-12).unwrap();
        assert!(pt.iterations <= 8, "needed {} iterations", pt.iterations);
        assert!(pt.constraint_norm < 1e-12);
        assert!(pt.element.membership_residual() < 1e-11);
    }
}

/// Penalty-descent oracle: gradient descent on |Psi|² from the same
/// start must land on (essentially) the same nearby point.
#[test]
fn projection_agrees_with_a_penalty_descent_oracle() {
    let spec = GroupSpec::su(3).unwrap();
    let basis = build_basis(&spec).unwrap();
    let ls = LevelSetSpec::bilinear(spec, diag(&[1.0, 2.0, 3.0])).unwrap();
    let scheme = FdScheme::default();
    for seed in 0..10u64 {
        let start = haar_sample(&spec, 300 + seed);
        let newton_pt = newton_project(&ls, &start, 30, 1e-12).unwrap();

        // descent: p <- retract(p exp(-eta * grad |Psi|^2)) in basis coords
        let field = match ls.constraint() {
            lie_eigenlab_core::levelset::Constraint::Complex(f) => f.clone(),
            _ => unreachable!(),
        };
        let mut p = start.clone();
        let mut eta = 0.5f64;
        let mut value = field.eval(&p).norm_sqr();
        for _ in 0..400 {
            if value < 1e-16 {
                break;
            }
            let grads = gradient_coeffs(&field, &p, &basis, &scheme).unwrap();
            let psi = field.eval(&p);
            // grad |Psi|^2 coords = 2 Re(conj(Psi) X(Psi))
            let g: Vec<f64> = grads.iter().map(|x| 2.0 * (psi.conj() * x).re).collect();
            let step: Vec<f64> = g.iter().map(|gi| -eta * gi).collect();
            let x = basis.combine(&step);
            let cand = group_exp(&p, &x, 1.0).unwrap();
            let cand_val = field.eval(&cand).norm_sqr();
            if cand_val < value {
                p = cand;
                value = cand_val;
                eta *= 1.2;
            } else {
                eta *= 0.5;
            }
        }
        assert!(
            value < 1e-14,
            "descent oracle reached |Psi|^2 = {value:.3e}"
        );
        // both routes land on the manifold; Newton may overshoot the
        // steepest path from a far start but must not wander
        let moved = start.distance(&newton_pt.element);
        let descent_moved = start.distance(&p);
        assert!(
            moved <= 2.0 * descent_moved + 0.1,
            "newton travelled {moved:.3}, descent {descent_moved:.3}"
        );
    }

    // from a start already near the set both routes chase the same
    // nearest point, so the landings must essentially coincide
    for seed in 0..6u64 {
        let on_m = newton_project(&ls, &haar_sample(&spec, 700 + seed), 30, 1e-12).unwrap();
        let mut stream = GaussStream::new(800 + seed);
        let coeffs: Vec<f64> = (0..basis.len())
            .map(|_| 0.05 * stream.next_gauss())
            .collect();
        let x = basis.combine(&coeffs);
        let start = group_exp(&on_m.element, &x, 1.0).unwrap();
        let dist_to_set = start.distance(&on_m.element);

        let newton_pt = newton_project(&ls, &start, 30, 1e-12).unwrap();
        let field = match ls.constraint() {
            lie_eigenlab_core::levelset::Constraint::Complex(f) => f.clone(),
            _ => unreachable!(),
        };
        let mut p = start.clone();
        let mut eta = 0.25f64;
        let mut value = field.eval(&p).norm_sqr();
        for _ in 0..600 {
            if value < 1e-18 {
                break;
            }
            let grads = gradient_coeffs(&field, &p, &basis, &scheme).unwrap();
            let psi = field.eval(&p);
            let g: Vec<f64> = grads.iter().map(|x| 2.0 * (psi.conj() * x).re).collect();
            let step: Vec<f64> = g.iter().map(|gi| -eta * gi).collect();
            let x = basis.combine(&step);
            let cand = group_exp(&p, &x, 1.0).unwrap();
            let cand_val = field.eval(&cand).norm_sqr();
            if cand_val < value {
                p = cand;
                value = cand_val;
                eta *= 1.2;
            } else {
                eta *= 0.5;
            }
        }
        assert!(
            value < 1e-16,
            "near-start descent reached |Psi|^2 = {value:.3e}"
        );
        let dist = newton_pt.element.distance(&p);
        assert!(
            dist < 0.25 * dist_to_set.max(1e-6),
            "seed {seed}: near-start landings differ by {dist:.3e} (offset {dist_to_set:.3e})"
        );
    }
}

#[test]
fn projection_reports_singularity_for_identity_like_h() {
    let spec = GroupSpec::su(3).unwrap();
    // H = I is rejected at spec construction; a nonzero multiple of I too
    assert!(matches!(
        LevelSetSpec::bilinear(spec, CMat::identity(3).scale(C64::new(2.5, 0.0))),
        Err(Error::Singular(_))
    ));
}

// ---------------------------------------------------------------------
// tangent frames

#[test]
fn tangent_dimension_is_algebra_dim_minus_codim() {
    let su3 = GroupSpec::su(3).unwrap();
    let ls3 = LevelSetSpec::bilinear(su3, diag(&[1.0, 2.0, 3.0])).unwrap();
    let pt = newton_project(&ls3, &haar_sample(&su3, 7), 30, 1e-12).unwrap();
    assert_eq!(pt.tangent.len(), 6, "su(3): 8 - 2");

    let su4 = GroupSpec::su(4).unwrap();
    let ls4 = LevelSetSpec::bilinear(su4, diag(&[1.0, 2.0, 3.0, 4.0])).unwrap();
    let pt4 = newton_project(&ls4, &haar_sample(&su4, 8), 30, 1e-12).unwrap();
    assert_eq!(pt4.tangent.len(), 13, "su(4): 15 - 2");
}

#[test]
fn standalone_tangent_basis_matches_the_projected_frame() {
    let spec = GroupSpec::su(4).unwrap();
    let ls = LevelSetSpec::bilinear(spec, diag(&[1.0, 2.0, 3.0, 4.0])).unwrap();
    let pt = newton_project(&ls, &haar_sample(&spec, 31), 30, 1e-12).unwrap();
    let frame = lie_eigenlab_core::levelset::tangent_basis(&ls, &pt.element).unwrap();
    assert_eq!(frame.len(), 13);
    for (a, b) in frame.iter().zip(&pt.tangent) {
        assert_small(
            a.mat().sub(b.mat()).max_abs(),
            1e-12,
            "standalone frame equals cached frame",
        );
    }
    // rank-deficient request errors out: the identity-like direction
    let fam = su_standard(2, &e(0, 2)).unwrap();
    let field = fam.members()[0].clone();
    let flat =
        LevelSetSpec::real_shifted(GroupSpec::su(2).unwrap(), field, 1.8, "unreachable slice")
            .unwrap();
    // |<za,c>| <= 1, so Re psi - 1.8 never vanishes and the projection
    // must fail rather than fabricate a point
    assert!(newton_project(
        &flat,
        &haar_sample(&GroupSpec::su(2).unwrap(), 1),
        40,
        1e-12
    )
    .is_err());
}

#[test]
fn tangent_vectors_annihilate_the_constraint() {
    let spec = GroupSpec::su(3).unwrap();
    let ls = LevelSetSpec::bilinear(spec, diag(&[1.0, 2.0, 3.0])).unwrap();
    let scheme = FdScheme::default();
    let pt = newton_project(&ls, &haar_sample(&spec, 9), 30, 1e-12).unwrap();
    let field = match ls.constraint() {
        lie_eigenlab_core::levelset::Constraint::Complex(f) => f.clone(),
        _ => unreachable!(),
    };
    for t in &pt.tangent {
        let d = directional_derivative(&field, &pt.element, t, &scheme).unwrap();
        assert_small(d.value.norm(), 1e-10, "tangent direction kills dPsi");
        assert_small((t.norm() - 1.0).abs(), 1e-10, "tangent frame is normalized");
    }
    // pairwise orthogonality
    for i in 0..pt.tangent.len() {
        for j in i + 1..pt.tangent.len() {
            assert_small(
                pt.tangent[i].inner(&pt.tangent[j]).abs(),
                1e-10,
                "tangent frame orthogonal",
            );
        }
    }
}

// ---------------------------------------------------------------------
// mean curvature

fn hopf_fiber_spec() -> LevelSetSpec {
    let fam = su_standard(2, &e(0, 2)).unwrap();
    let p_poly = HomogeneousPoly::variable(2, 0).unwrap();
    let q_poly = HomogeneousPoly::variable(2, 1).unwrap();
    LevelSetSpec::fiber(&fam, &p_poly, &q_poly, (C64::ONE, C64::ONE)).unwrap()
}

#[test]
fn hopf_fibers_are_geodesic_circles() {
    let ls = hopf_fiber_spec();
    let spec = ls.spec();
    for seed in 0..5u64 {
        let pt = newton_project(&ls, &haar_sample(&spec, 40 + seed), 30, 1e-13).unwrap();
        assert_eq!(
            pt.tangent.len(),
            1,
            "circle fibers in a 3-dimensional group"
        );
        let report = mean_curvature(&ls, &pt, 1e-3).unwrap();
        assert_small(report.normal_norm, 1e-6, "Hopf fibers are minimal");
    }
}

#[test]
fn bilinear_level_sets_are_minimal_with_quadratic_h_refinement() {
    let spec = GroupSpec::su(3).unwrap();
    let ls = LevelSetSpec::bilinear(spec, diag(&[1.0, 2.0, 3.0])).unwrap();
    let cloud = sample_manifold(&ls, 20, 21, 1e-13).unwrap();
    let mut worst_h = 0.0f64;
    let mut ratios = Vec::new();
    for pt in &cloud.points {
        let fine = mean_curvature(&ls, pt, 1e-3).unwrap();
        assert!(
            fine.normal_norm < 5e-4,
            "norm {:.3e} at h = 1e-3",
            fine.normal_norm
        );
        worst_h = worst_h.max(fine.normal_norm);
        let coarse = mean_curvature(&ls, pt, 2e-3).unwrap();
        if fine.normal_norm > 1e-9 {
            ratios.push(coarse.normal_norm / fine.normal_norm);
        }
    }
    assert!(!ratios.is_empty());
    let mean_ratio: f64 = ratios.iter().sum::<f64>() / ratios.len() as f64;
    assert!(
        (3.0..=5.0).contains(&mean_ratio),
        "h-refinement factor {mean_ratio:.2} outside [3, 5] (worst norm {worst_h:.3e})"
    );
}

#[test]
fn the_control_surface_is_flagged_non_minimal() {
    // Re <za, c> - <za, d> = 0.3 on SU(2): a round sphere-like slice,
    // decisively non-minimal
    let fam = su_standard(2, &e(0, 2)).unwrap();
    let p_poly = HomogeneousPoly::variable(2, 0).unwrap();
    let q_poly = HomogeneousPoly::variable(2, 1).unwrap();
    let fiber = LevelSetSpec::fiber(&fam, &p_poly, &q_poly, (C64::ONE, C64::ONE)).unwrap();
    let field = match fiber.constraint() {
        lie_eigenlab_core::levelset::Constraint::Complex(f) => f.clone(),
        _ => unreachable!(),
    };
    let spec = fiber.spec();
    let ls = LevelSetSpec::real_shifted(spec, field, 0.3, "control slice").unwrap();
    assert_eq!(ls.codim(), 1);
    let mut flagged = 0usize;
    for seed in 0..6u64 {
        let pt = match newton_project(&ls, &haar_sample(&spec, 60 + seed), 40, 1e-13) {
            Ok(p) => p,
            Err(_) => continue,
        };
        assert_eq!(pt.tangent.len(), 2);
        let report = mean_curvature(&ls, &pt, 1e-3).unwrap();
        if report.normal_norm > 1e-2 {
            flagged += 1;
        }
    }
    assert!(
        flagged >= 4,
        "control surface must show O(1) mean curvature (flagged {flagged}/6)"
    );
}

#[test]
fn mean_curvature_rejects_out_of_range_steps() {
    let ls = hopf_fiber_spec();
    let pt = newton_project(&ls, &haar_sample(&ls.spec(), 3), 30, 1e-13).unwrap();
    assert!(mean_curvature(&ls, &pt, 1e-5).is_err());
    assert!(mean_curvature(&ls, &pt, 0.5).is_err());
}

// ---------------------------------------------------------------------
// sampling

#[test]
fn sampled_clouds_are_on_the_manifold_and_deduplicated() {
    let spec = GroupSpec::su(3).unwrap();
    let ls = LevelSetSpec::bilinear(spec, diag(&[1.0, 2.0, 3.0])).unwrap();
    let cloud = sample_manifold(&ls, 500, 1, 1e-12).unwrap();
    assert_eq!(cloud.points.len(), 500);
    assert!(!cloud.low_yield);
    for pt in &cloud.points {
        assert!(pt.constraint_norm < 1e-12);
    }
    for i in (0..cloud.points.len()).step_by(50) {
        for j in (i + 1..cloud.points.len()).step_by(71) {
            assert!(cloud.points[i].element.distance(&cloud.points[j].element) > 1e-8);
        }
    }
    let empty = sample_manifold(&ls, 0, 1, 1e-12).unwrap();
    assert!(empty.points.is_empty());
}

#[test]
fn deterministic_sampling_for_a_fixed_seed() {
    let spec = GroupSpec::su(3).unwrap();
    let ls = LevelSetSpec::bilinear(spec, diag(&[1.0, 2.0, 3.0])).unwrap();
    let a = sample_manifold(&ls, 10, 77, 1e-12).unwrap();
    let b = sample_manifold(&ls, 10, 77, 1e-12).unwrap();
    for (x, y) in a.points.iter().zip(&b.points) {
        assert_eq!(x.element.mat().data(), y.element.mat().data());
    }
}

/// Local PCA oracle: a cloud of projected perturbations at scale 0.05
/// around a manifold point must show d-2 dominant directions.
#[test]
fn local_pca_confirms_the_codimension() {
    let spec = GroupSpec::su(3).unwrap();
    let d = spec.algebra_dim();
    let ls = LevelSetSpec::bilinear(spec, diag(&[1.0, 2.0, 3.0])).unwrap();
    let center = newton_project(&ls, &haar_sample(&spec, 12), 30, 1e-13).unwrap();
    let scale = 0.05;
    let mut stream = GaussStream::new(13);
    let mut cloud: Vec<Vec<f64>> = Vec::new();
    for _ in 0..50 {
        let coeffs: Vec<f64> = (0..center.tangent.len())
            .map(|_| stream.next_gauss())
            .collect();
        let norm: f64 = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        let mut dir = center.element.spec().identity().mat().scale(C64::ZERO);
        for (c, t) in coeffs.iter().zip(&center.tangent) {
            dir.add_assign(&t.mat().scale(C64::new(c / norm, 0.0)));
        }
        let x = lie_eigenlab_core::group::AlgebraVector::new(spec, dir, 1e-9).unwrap();
        let moved = group_exp(&center.element, &x, scale).unwrap();
        let projected = newton_project(&ls, &moved, 30, 1e-13).unwrap();
        // embed as a real vector of matrix entries
        let emb: Vec<f64> = projected
            .element
            .mat()
            .data()
            .iter()
            .flat_map(|z| [z.re, z.im])
            .collect();
        cloud.push(emb);
    }
    let dim = cloud[0].len();
    let mean: Vec<f64> = (0..dim)
        .map(|i| cloud.iter().map(|v| v[i]).sum::<f64>() / cloud.len() as f64)
        .collect();
    let mut cov = vec![vec![0.0f64; dim]; dim];
    for v in &cloud {
        for i in 0..dim {
            for j in 0..dim {
                cov[i][j] += (v[i] - mean[i]) * (v[j] - mean[j]) / cloud.len() as f64;
            }
        }
    }
    let eigs = sym_eigenvalues(&cov);
    let tangent_dim = d - 2;
    let split = eigs[tangent_dim - 1] / eigs[tangent_dim].max(1e-300);
    assert!(
        split > 50.0,
        "PCA spectrum must drop after {tangent_dim} directions: {:?}",
        &eigs[..(tangent_dim + 2).min(eigs.len())]
    );
}

/// Two different leaves of one pencil meet only on Z; with Hopf data Z
/// is empty, so points on one leaf keep |Psi| of the other bounded away
/// from zero.
#[test]
fn pencil_leaves_are_disjoint_away_from_the_common_zero_set() {
    let fam = su_standard(2, &e(0, 2)).unwrap();
    let p_poly = HomogeneousPoly::variable(2, 0).unwrap();
    let q_poly = HomogeneousPoly::variable(2, 1).unwrap();
    let leaf1 = LevelSetSpec::fiber(&fam, &p_poly, &q_poly, (C64::ONE, C64::ONE)).unwrap();
    let leaf2 =
        LevelSetSpec::fiber(&fam, &p_poly, &q_poly, (C64::new(-0.4, 1.1), C64::ONE)).unwrap();
    let field2 = match leaf2.constraint() {
        lie_eigenlab_core::levelset::Constraint::Complex(f) => f.clone(),
        _ => unreachable!(),
    };
    let cloud = sample_manifold(&leaf1, 30, 5, 1e-12).unwrap();
    for pt in &cloud.points {
        let v = field2.eval(&pt.element).norm();
        assert!(v > 1e-3, "leaf separation: |Psi_2| = {v:.3e} on leaf 1");
    }
}

#[test]
fn fiber_specs_reject_the_zero_pencil_parameter() {
    let fam = su_standard(2, &e(0, 2)).unwrap();
    let p_poly = HomogeneousPoly::variable(2, 0).unwrap();
    let q_poly = HomogeneousPoly::variable(2, 1).unwrap();
    assert!(matches!(
        LevelSetSpec::fiber(&fam, &p_poly, &q_poly, (C64::ZERO, C64::ZERO)),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn bilinear_specs_validate_the_matrix_shape() {
    let spec = GroupSpec::su(3).unwrap();
    assert!(matches!(
        LevelSetSpec::bilinear(spec, CMat::identity(2)),
        Err(Error::InvalidSpec(_))
    ));
    assert!(
        bilinear_column_field(spec, &CMat::zeros(3, 3)).is_err(),
        "zero H has no terms"
    );
}

#[test]
fn eigenvalue_solver_resolves_tight_clusters() {
    let m = diag(&[1.0, 1.0 + 1e-12, 2.0]);
    assert!(
        !distinct_eigenvalues(&m, 1e-8).unwrap(),
        "a 1e-12 gap is below the relative threshold"
    );
    assert!(distinct_eigenvalues(&m, 1e-14).unwrap());
    // Hermitian case with known spectrum {3, 1}
    let h = CMat::from_rows(
        2,
        2,
        &[
            C64::new(2.0, 0.0),
            C64::new(0.0, -1.0),
            C64::new(0.0, 1.0),
            C64::new(2.0, 0.0),
        ],
    );
    let mut eigs = eigenvalues(&h).unwrap();
    eigs.sort_by(|a, b| a.re.total_cmp(&b.re));
    assert!((eigs[0] - C64::ONE).norm() < 1e-12);
    assert!((eigs[1] - C64::new(3.0, 0.0)).norm() < 1e-12);
}
