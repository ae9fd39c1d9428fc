//! The acceptance criteria, each pinned to its stated tolerance and
//! runtime budget. Criteria are pure functions returning check lists,
//! shared by the `acceptance` subcommand and the acceptance test
//! target.

use crate::commands::run_command;
use crate::config::RunConfig;
use crate::par::par_map;
use crate::report::CheckResult;
use crate::{CliError, CliResult};
use lie_eigenlab_core::calculus::{directional_derivative, gradient_coeffs, kappa, FdScheme};
use lie_eigenlab_core::families::{
    product_family, so_isotropic, sp_standard, su_dual, su_extended, su_standard, su_tensor,
    verify_family, EigenFamily, VerifyStatus,
};
use lie_eigenlab_core::fields::{CoeffForm, ScalarField};
use lie_eigenlab_core::group::{
    build_basis, haar_points, haar_sample, retract_to_group, GaussStream, GroupSpec,
};
use lie_eigenlab_core::levelset::{
    bilinear_column_field, bilinear_gradient_formula, distinct_eigenvalues, mean_curvature,
    newton_project, random_distinct_matrix, sample_manifold, LevelSetSpec,
};
use lie_eigenlab_core::linalg::{CMat, C64};
use lie_eigenlab_core::morphism::{
    build_morphism, singular_set_probe, verify_harmonic_morphism, Chart, HomogeneousPoly,
};
use lie_eigenlab_core::tol::Tolerances;

#[derive(Debug, Clone)]
pub struct Criterion {
    pub number: u8,
    pub name: &'static str,
    pub checks: Vec<CheckResult>,
    pub elapsed_seconds: f64,
    pub budget_seconds: Option<f64>,
}

impl Criterion {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    /// The failing checks, for compact reporting.
    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

fn e(k: usize, len: usize) -> Vec<C64> {
    let mut v = vec![C64::ZERO; len];
    v[k] = C64::ONE;
    v
}

fn timed(
    number: u8,
    name: &'static str,
    budget_seconds: Option<f64>,
    body: impl FnOnce() -> CliResult<Vec<CheckResult>>,
) -> CliResult<Criterion> {
    let t0 = std::time::Instant::now();
    let checks = body()?;
    Ok(Criterion {
        number,
        name,
        checks,
        elapsed_seconds: t0.elapsed().as_secs_f64(),
        budget_seconds,
    })
}

/// Criterion 1 — measured Laplacian eigenvalue of the standard family on
/// SU(2..5) equals -(n²-1)/n, the brute-force Casimir sum, and the
/// root-system scalar, all within 1e-9.
pub fn criterion_1() -> CliResult<Criterion> {
    timed(1, "casimir-agreement", Some(10.0), || {
        let mut checks = Vec::new();
        for n in 2..=5usize {
            let spec = GroupSpec::su(n).map_err(CliError::setup)?;
            let closed_form = -((n * n - 1) as f64) / n as f64;
            // brute-force Casimir sum over the explicit basis
            let basis = build_basis(&spec).map_err(CliError::setup)?;
            let mut cas = CMat::zeros(n, n);
            for x in basis.iter() {
                cas.add_assign(&x.mat().mul(x.mat()));
            }
            let brute = cas
                .sub(&CMat::identity(n).scale(C64::new(closed_form, 0.0)))
                .max_abs();
            checks.push(CheckResult::bound(
                format!("c1/su{n}/brute-force-sum"),
                brute,
                1e-9,
            ));
            // root-system scalar
            let rs = lie_eigenlab_core::roots::root_system(&spec).map_err(CliError::setup)?;
            let alpha = lie_eigenlab_core::roots::casimir_eigenvalue(
                &lie_eigenlab_core::roots::standard_weight(&rs),
                &rs,
            )
            .map_err(CliError::setup)?;
            checks.push(CheckResult::bound(
                format!("c1/su{n}/alpha-vs-closed-form"),
                (alpha - closed_form).abs(),
                1e-9,
            ));
            // measured Laplacian eigenvalue of the standard family
            let fam = su_standard(n, &e(0, n)).map_err(CliError::setup)?;
            let report =
                verify_family(&fam, 50, 1000 + n as u64, 1e-8).map_err(CliError::runtime)?;
            checks.push(
                CheckResult::bound(
                    format!("c1/su{n}/measured-vs-alpha"),
                    (report.lambda_hat - C64::new(alpha, 0.0)).norm(),
                    1e-9,
                )
                .with_detail(format!("measured {:+.12}", report.lambda_hat.re)),
            );
        }
        Ok(checks)
    })
}

/// Criterion 2 — the tensor family on SU(3) and SU(4) has mu = -2 with
/// spread below 1e-9 over at least 20 member pairs and 50 Haar points.
pub fn criterion_2() -> CliResult<Criterion> {
    timed(2, "tensor-mu-minus-two", Some(30.0), || {
        let mut checks = Vec::new();
        for n in [3usize, 4] {
            let fam = su_tensor(n, &e(0, n), &e(1, n)).map_err(CliError::setup)?;
            let report =
                verify_family(&fam, 50, 2000 + n as u64, 1e-8).map_err(CliError::runtime)?;
            checks.push(CheckResult::stated(
                format!("c2/su{n}/pair-count"),
                report.pairs as f64,
                20.0,
                report.pairs >= 20,
            ));
            checks.push(
                CheckResult::bound(
                    format!("c2/su{n}/mu-vs-minus-two"),
                    (report.mu_hat - C64::new(-2.0, 0.0)).norm(),
                    1e-9,
                )
                .with_detail(format!(
                    "mu_hat = {:+.12}{:+.12}i",
                    report.mu_hat.re, report.mu_hat.im
                )),
            );
            checks.push(CheckResult::bound(
                format!("c2/su{n}/mu-spread"),
                report.mu_spread,
                1e-9,
            ));
        }
        Ok(checks)
    })
}

/// Criterion 3 — the claimed orthogonality kappa(z_i1, conj(z_k2)) = 0
/// on SU(3), and the product construction over those two column
/// families reproducing the tensor family's verdict.
///
/// The first clause is implemented exactly as stated. The measured law
/// is kappa = -(1/n)·z_i1·conj(z_k2), so that clause fails by O(0.1);
/// the detail strings carry the fitted ratio for the record.
pub fn criterion_3() -> CliResult<Criterion> {
    timed(3, "kappa-orthogonality", None, || {
        let mut checks = Vec::new();
        let n = 3usize;
        let spec = GroupSpec::su(n).map_err(CliError::setup)?;
        let basis = build_basis(&spec).map_err(CliError::setup)?;
        let scheme = FdScheme::default();
        let cols = su_standard(n, &e(0, n)).map_err(CliError::setup)?;
        let dual_cols = su_dual(n, &e(1, n)).map_err(CliError::setup)?;
        let points = haar_points(&spec, 50, 3003);
        let mut max_kappa = 0.0f64;
        let mut ratio_num = C64::ZERO;
        let mut ratio_den = 0.0f64;
        for phi in cols.members() {
            for psi in dual_cols.members() {
                for p in &points {
                    let k = kappa(phi, psi, p, &basis, &scheme)
                        .map_err(CliError::runtime)?
                        .value;
                    max_kappa = max_kappa.max(k.norm());
                    let prod = phi.eval(p) * psi.eval(p);
                    ratio_num += prod.conj() * k;
                    ratio_den += prod.norm_sqr();
                }
            }
        }
        let fitted = ratio_num / C64::new(ratio_den.max(1e-300), 0.0);
        checks.push(
            CheckResult::bound("c3/su3/kappa-zi1-zk2-zero", max_kappa, 1e-10).with_detail(format!(
                "measured law kappa = nu * phi * psi with nu = {:+.9}{:+.9}i (= -1/n)",
                fitted.re, fitted.im
            )),
        );
        // the product construction must reproduce the tensor verdict
        let prod_fam =
            product_family(&cols, &dual_cols, 20, 3004, 1e-10).map_err(CliError::runtime)?;
        let prod_report = verify_family(&prod_fam, 50, 3005, 1e-8).map_err(CliError::runtime)?;
        let tensor = su_tensor(n, &e(0, n), &e(1, n)).map_err(CliError::setup)?;
        let tensor_report = verify_family(&tensor, 50, 3005, 1e-8).map_err(CliError::runtime)?;
        let same_verdict =
            prod_report.status == tensor_report.status && prod_report.status == VerifyStatus::Pass;
        checks.push(
            CheckResult::stated(
                "c3/su3/product-reproduces-tensor-verdict",
                (prod_report.mu_hat - tensor_report.mu_hat).norm(),
                1e-9,
                same_verdict,
            )
            .with_detail(format!(
                "product: {:?} (mu {:+.9}), tensor: {:?} (mu {:+.9})",
                prod_report.status,
                prod_report.mu_hat.re,
                tensor_report.status,
                tensor_report.mu_hat.re
            )),
        );
        Ok(checks)
    })
}

/// Criterion 4 — every catalogued constructor passes verify_family at
/// tolerance 1e-8 with 50 Haar points.
pub fn criterion_4() -> CliResult<Criterion> {
    timed(4, "eigenfamily-suite", Some(120.0), || {
        let mut iso = vec![C64::ZERO; 4];
        iso[0] = C64::ONE;
        iso[1] = C64::new(0.0, 1.0);
        let entries: Vec<(String, EigenFamily)> = vec![
            (
                "c4/su3-standard".into(),
                su_standard(3, &e(0, 3)).map_err(CliError::setup)?,
            ),
            (
                "c4/so4-isotropic".into(),
                so_isotropic(4, &iso).map_err(CliError::setup)?,
            ),
            (
                "c4/sp2-standard".into(),
                sp_standard(2, &e(0, 4)).map_err(CliError::setup)?,
            ),
            (
                "c4/su3-dual".into(),
                su_dual(3, &e(0, 3)).map_err(CliError::setup)?,
            ),
            (
                "c4/su3-tensor".into(),
                su_tensor(3, &e(0, 3), &e(1, 3)).map_err(CliError::setup)?,
            ),
            (
                "c4/su4-extended-s2".into(),
                su_extended(4, 2).map_err(CliError::setup)?,
            ),
        ];
        let reports: Vec<CliResult<CheckResult>> = par_map(entries.len(), |i| {
            let (name, fam) = &entries[i];
            let report =
                verify_family(fam, 50, 4000 + i as u64, 1e-8).map_err(CliError::runtime)?;
            let worst = report
                .tau_residual
                .max(report.kappa_residual)
                .max(report.lambda_spread)
                .max(report.mu_spread);
            Ok(CheckResult::stated(
                name.clone(),
                worst,
                1e-8,
                report.status == VerifyStatus::Pass,
            )
            .with_detail(format!(
                "lambda {:+.9}, mu {:+.9}{:+.9}i, status {:?}",
                report.lambda_hat.re, report.mu_hat.re, report.mu_hat.im, report.status
            )))
        });
        reports.into_iter().collect()
    })
}

fn random_monomial(stream: &mut GaussStream, vars: usize, degree: u32) -> Vec<u32> {
    let mut idx = vec![0u32; vars];
    for _ in 0..degree {
        let slot = (stream.next_gauss().abs() * 13.0) as usize % vars;
        idx[slot] += 1;
    }
    idx
}

fn random_poly(stream: &mut GaussStream, vars: usize, degree: u32) -> HomogeneousPoly {
    loop {
        let terms: Vec<(Vec<u32>, C64)> = (0..3)
            .map(|_| (random_monomial(stream, vars, degree), stream.next_cgauss()))
            .collect();
        if let Ok(p) = HomogeneousPoly::new(vars, terms) {
            return p;
        }
    }
}

/// Criterion 5 — ten random homogeneous pairs of degree <= 3 over each
/// catalogued family verify at 1e-7 away from the chart boundary, and
/// the SU(2) Hopf example passes with a positive singular-set floor.
pub fn criterion_5() -> CliResult<Criterion> {
    timed(5, "harmonic-morphism-suite", None, || {
        let mut iso = vec![C64::ZERO; 4];
        iso[0] = C64::ONE;
        iso[1] = C64::new(0.0, 1.0);
        let families: Vec<(&'static str, EigenFamily)> = vec![
            (
                "su2-standard",
                su_standard(2, &e(0, 2)).map_err(CliError::setup)?,
            ),
            (
                "su3-standard",
                su_standard(3, &e(0, 3)).map_err(CliError::setup)?,
            ),
            ("su3-dual", su_dual(3, &e(0, 3)).map_err(CliError::setup)?),
            (
                "so4-isotropic",
                so_isotropic(4, &iso).map_err(CliError::setup)?,
            ),
            (
                "sp2-standard",
                sp_standard(2, &e(0, 4)).map_err(CliError::setup)?,
            ),
            (
                "su3-tensor",
                su_tensor(3, &e(0, 3), &e(1, 3)).map_err(CliError::setup)?,
            ),
        ];
        let results: Vec<CliResult<CheckResult>> = par_map(families.len(), |fi| {
            let (name, fam) = &families[fi];
            let mut stream = GaussStream::new(5000 + fi as u64);
            let k = fam.len();
            let mut worst = 0.0f64;
            let mut used = 0usize;
            for trial in 0..10u32 {
                let degree = 1 + trial % 3;
                let p_poly = random_poly(&mut stream, k, degree);
                let q_poly = random_poly(&mut stream, k, degree);
                let m = match build_morphism(fam, None, p_poly, q_poly) {
                    Ok(m) => m,
                    Err(_) => continue, // dependent draw
                };
                let report =
                    verify_harmonic_morphism(&m, 30, 5100 + trial as u64, 1e-7, 0.1, Chart::POverQ)
                        .map_err(CliError::runtime)?;
                if report.inconclusive {
                    continue;
                }
                used += 1;
                worst = worst.max(report.max_tau).max(report.max_kappa);
            }
            Ok(
                CheckResult::bound(format!("c5/{name}/chart-residuals"), worst, 1e-7)
                    .with_detail(format!("{used} random (P,Q) pairs evaluated")),
            )
        });
        let mut checks: Vec<CheckResult> = results.into_iter().collect::<CliResult<_>>()?;
        // the Hopf example
        let hopf_fam = su_standard(2, &e(0, 2)).map_err(CliError::setup)?;
        let p_poly = HomogeneousPoly::variable(2, 0).map_err(CliError::setup)?;
        let q_poly = HomogeneousPoly::variable(2, 1).map_err(CliError::setup)?;
        let hopf = build_morphism(&hopf_fam, None, p_poly, q_poly).map_err(CliError::setup)?;
        let report = verify_harmonic_morphism(&hopf, 100, 5200, 1e-8, 0.1, Chart::POverQ)
            .map_err(CliError::runtime)?;
        checks.push(CheckResult::bound("c5/hopf/max-tau", report.max_tau, 1e-8));
        checks.push(CheckResult::bound(
            "c5/hopf/max-kappa",
            report.max_kappa,
            1e-8,
        ));
        let probe = singular_set_probe(&hopf, 10_000, 5201, 0.01);
        checks.push(
            CheckResult::floor("c5/hopf/singular-set-floor", probe.min_of_max, 0.01)
                .with_detail("Z empty for independent index vectors".to_string()),
        );
        Ok(checks)
    })
}

/// Criterion 6 — the main construction at desk scale: five random
/// distinct-eigenvalue H on SU(3) and SU(4), 20 sampled points each;
/// membership 1e-12, regularity floor 1e-4, mean curvature below 5e-4
/// at h = 1e-3 with an h-refinement factor in [3, 5]; and the
/// non-minimal control surface must fail the same test.
pub fn criterion_6() -> CliResult<Criterion> {
    timed(6, "main-theorem-desk-scale", Some(300.0), || {
        let units: Vec<(usize, u64)> = [3usize, 4]
            .iter()
            .flat_map(|&n| (0..5u64).map(move |k| (n, k)))
            .collect();
        let results: Vec<CliResult<Vec<CheckResult>>> = par_map(units.len(), |ui| {
            let (n, hk) = units[ui];
            let spec = GroupSpec::su(n).map_err(CliError::setup)?;
            let h_mat =
                random_distinct_matrix(n, 6000 + 17 * hk + n as u64).map_err(CliError::setup)?;
            if !distinct_eigenvalues(&h_mat, 1e-8).map_err(CliError::setup)? {
                return Err(CliError::numerical(
                    "generated H lost its eigenvalue separation",
                ));
            }
            let ls = LevelSetSpec::bilinear(spec, h_mat).map_err(CliError::setup)?;
            let cloud = sample_manifold(&ls, 20, 6100 + hk, 1e-12).map_err(CliError::runtime)?;
            let tag = format!("c6/su{n}/h{hk}");
            let mut checks = Vec::new();
            let max_psi = cloud
                .points
                .iter()
                .map(|p| p.constraint_norm)
                .fold(0.0f64, f64::max);
            checks.push(CheckResult::bound(format!("{tag}/max-psi"), max_psi, 1e-12));
            let mut min_sigma = f64::INFINITY;
            for pt in &cloud.points {
                min_sigma = min_sigma.min(pt.sigma_min);
            }
            checks.push(CheckResult::floor(
                format!("{tag}/min-sigma"),
                min_sigma,
                1e-4,
            ));
            let mut max_curv = 0.0f64;
            for pt in &cloud.points {
                let report = mean_curvature(&ls, pt, 1e-3).map_err(CliError::runtime)?;
                max_curv = max_curv.max(report.normal_norm);
            }
            checks.push(CheckResult::bound(
                format!("{tag}/max-curvature"),
                max_curv,
                5e-4,
            ));
            // halving measurement on the 4e-3 -> 2e-3 pair, where the h²
            // truncation term is far above the projection noise floor;
            // points below that floor are skipped and the median guards
            // against sigma-amplified outliers
            let mut ratios = Vec::new();
            for pt in cloud.points.iter().take(8) {
                let coarse = mean_curvature(&ls, pt, 4e-3).map_err(CliError::runtime)?;
                if coarse.normal_norm < 5e-8 {
                    continue;
                }
                let halved = mean_curvature(&ls, pt, 2e-3).map_err(CliError::runtime)?;
                ratios.push(coarse.normal_norm / halved.normal_norm);
            }
            ratios.sort_by(f64::total_cmp);
            let (ratio, detail) = if ratios.is_empty() {
                (f64::NAN, "no point had enough curvature signal".to_string())
            } else {
                (
                    ratios[ratios.len() / 2],
                    format!("median of {} point ratios", ratios.len()),
                )
            };
            checks.push(
                CheckResult::stated(
                    format!("{tag}/h-refinement"),
                    ratio,
                    4.0,
                    (3.0..=5.0).contains(&ratio),
                )
                .with_detail(detail),
            );
            Ok(checks)
        });
        let mut checks = Vec::new();
        for r in results {
            checks.extend(r?);
        }
        // non-minimal control: Re Psi = 0.3 on SU(2) must FAIL minimality
        let fam = su_standard(2, &e(0, 2)).map_err(CliError::setup)?;
        let p_poly = HomogeneousPoly::variable(2, 0).map_err(CliError::setup)?;
        let q_poly = HomogeneousPoly::variable(2, 1).map_err(CliError::setup)?;
        let fiber = LevelSetSpec::fiber(&fam, &p_poly, &q_poly, (C64::ONE, C64::ONE))
            .map_err(CliError::setup)?;
        let field = match fiber.constraint() {
            lie_eigenlab_core::levelset::Constraint::Complex(f) => f.clone(),
            _ => unreachable!(),
        };
        let spec2 = fiber.spec();
        let control = LevelSetSpec::real_shifted(spec2, field, 0.3, "non-minimal control")
            .map_err(CliError::setup)?;
        let mut control_max = 0.0f64;
        let mut measured = 0usize;
        for seed in 0..8u64 {
            let Ok(pt) = newton_project(&control, &haar_sample(&spec2, 6200 + seed), 40, 1e-13)
            else {
                continue;
            };
            let report = mean_curvature(&control, &pt, 1e-3).map_err(CliError::runtime)?;
            control_max = control_max.max(report.normal_norm);
            measured += 1;
        }
        checks.push(
            CheckResult::floor("c6/control/non-minimal-norm", control_max, 1e-2)
                .with_detail(format!("{measured} control points measured")),
        );
        Ok(checks)
    })
}

/// Criterion 7 — the commutator gradient expression matches
/// finite-difference gradients of the bilinear column form at 1e-9 on
/// 100 random (z, H); H = I gives the identically-zero gradient.
pub fn criterion_7() -> CliResult<Criterion> {
    timed(7, "gradient-formula", None, || {
        let mut checks = Vec::new();
        let scheme = FdScheme::default();
        let units: Vec<(usize, usize)> = vec![(3, 60), (4, 40)];
        let results: Vec<CliResult<CheckResult>> = par_map(units.len(), |ui| {
            let (n, trials) = units[ui];
            let spec = GroupSpec::su(n).map_err(CliError::setup)?;
            let basis = build_basis(&spec).map_err(CliError::setup)?;
            let mut stream = GaussStream::new(7000 + n as u64);
            let mut worst_fd = 0.0f64;
            let mut worst_exact = 0.0f64;
            for trial in 0..trials {
                let h: CMat = CMat::from_fn(n, n, |_, _| stream.next_cgauss());
                let field = bilinear_column_field(spec, &h).map_err(CliError::setup)?;
                let z = haar_sample(&spec, 7100 + trial as u64);
                let grads =
                    gradient_coeffs(&field, &z, &basis, &scheme).map_err(CliError::runtime)?;
                let f2 = field.clone();
                let bb = ScalarField::opaque(spec, move |m: &CMat| f2.eval_mat(m));
                for (x, g) in basis.iter().zip(&grads) {
                    let formula = bilinear_gradient_formula(&h, &z, x.mat());
                    worst_exact = worst_exact.max((formula - g).norm());
                    let fd = directional_derivative(&bb, &z, x, &scheme)
                        .map_err(CliError::runtime)?
                        .value;
                    worst_fd = worst_fd.max((formula - fd).norm());
                }
            }
            Ok(
                CheckResult::bound(format!("c7/su{n}/commutator-vs-fd"), worst_fd, 1e-9)
                    .with_detail(format!("structured-route discrepancy {worst_exact:.3e}")),
            )
        });
        checks.extend(results.into_iter().collect::<CliResult<Vec<_>>>()?);
        // H = I
        let spec = GroupSpec::su(3).map_err(CliError::setup)?;
        let basis = build_basis(&spec).map_err(CliError::setup)?;
        let id = CMat::identity(3);
        let mut worst = 0.0f64;
        for seed in 0..10u64 {
            let z = haar_sample(&spec, 7500 + seed);
            for x in basis.iter() {
                worst = worst.max(bilinear_gradient_formula(&id, &z, x.mat()).norm());
            }
        }
        checks.push(CheckResult::bound(
            "c7/identity-h-zero-gradient",
            worst,
            1e-13,
        ));
        Ok(checks)
    })
}

/// Criterion 8 — numerical hygiene: O(h²) refinement of the 2nd-order
/// scheme, Haar membership, basis Gram and retraction idempotence at
/// their stated tolerances, and byte-identical reports for fixed seeds.
pub fn criterion_8() -> CliResult<Criterion> {
    timed(8, "numerical-hygiene", None, || {
        let tols = Tolerances::standard();
        let mut checks = Vec::new();

        // O(h^2) refinement of the order-2 scheme on a structured field
        let spec = GroupSpec::su(3).map_err(CliError::setup)?;
        let basis = build_basis(&spec).map_err(CliError::setup)?;
        let mut stream = GaussStream::new(8000);
        let a: Vec<C64> = (0..3).map(|_| stream.next_cgauss()).collect();
        let c: Vec<C64> = (0..3).map(|_| stream.next_cgauss()).collect();
        let field =
            ScalarField::coefficient(spec, CoeffForm::Hermitian, a, c).map_err(CliError::setup)?;
        let f2 = field.clone();
        let bb = ScalarField::opaque(spec, move |m: &CMat| f2.eval_mat(m));
        let mut err_coarse = 0.0f64;
        let mut err_fine = 0.0f64;
        for (idx, p) in haar_points(&spec, 6, 8001).iter().enumerate() {
            let x = &basis.vectors()[idx % basis.len()];
            let exact = directional_derivative(&field, p, x, &FdScheme::default())
                .map_err(CliError::runtime)?
                .value;
            let coarse = directional_derivative(&bb, p, x, &FdScheme::central2(1e-4, 1e-3))
                .map_err(CliError::runtime)?
                .value;
            let fine = directional_derivative(&bb, p, x, &FdScheme::central2(5e-5, 1e-3))
                .map_err(CliError::runtime)?
                .value;
            err_coarse = err_coarse.max((coarse - exact).norm());
            err_fine = err_fine.max((fine - exact).norm());
        }
        let factor = err_coarse / err_fine.max(1e-300);
        checks.push(CheckResult::stated(
            "c8/fd-refinement-factor",
            factor,
            4.0,
            (3.5..=4.5).contains(&factor),
        ));

        // membership / Gram / retraction at the stated tolerances
        let mut worst_haar = 0.0f64;
        let mut worst_gram = 0.0f64;
        let mut worst_retract = 0.0f64;
        for spec in [
            GroupSpec::su(2),
            GroupSpec::su(3),
            GroupSpec::su(4),
            GroupSpec::so(3),
            GroupSpec::so(4),
            GroupSpec::sp(1),
            GroupSpec::sp(2),
        ] {
            let spec = spec.map_err(CliError::setup)?;
            let g = haar_sample(&spec, 8100);
            worst_haar = worst_haar.max(g.membership_residual());
            let basis = build_basis(&spec).map_err(CliError::setup)?;
            worst_gram = worst_gram.max(basis.gram_residual());
            let r = retract_to_group(g.mat(), &spec, &tols).map_err(CliError::runtime)?;
            worst_retract = worst_retract.max(g.distance(&r));
        }
        checks.push(CheckResult::bound(
            "c8/haar-membership",
            worst_haar,
            tols.membership,
        ));
        checks.push(CheckResult::bound("c8/basis-gram", worst_gram, tols.gram));
        checks.push(CheckResult::bound(
            "c8/retraction-idempotence",
            worst_retract,
            tols.retraction,
        ));

        // byte-identical reports for a fixed seed
        let mut cfg = RunConfig {
            command: "verify-family".into(),
            group: "su".into(),
            n: 3,
            family: Some("tensor".into()),
            samples: 20,
            seed: 4242,
            ..RunConfig::default()
        };
        let first = run_command(&cfg)?;
        let second = run_command(&cfg)?;
        let identical = first.canonical_json() == second.canonical_json();
        checks.push(CheckResult::stated(
            "c8/byte-identical-json",
            if identical { 0.0 } else { 1.0 },
            0.5,
            identical,
        ));

        // byte-identical CSV from the sampling command
        let dir = std::env::temp_dir().join(format!("lie-eigenlab-c8-{}", std::process::id()));
        std::fs::create_dir_all(&dir)
            .map_err(|e| CliError::config(format!("cannot create temp dir: {e}")))?;
        let h_path = dir.join("h.txt");
        std::fs::write(&h_path, "1 0 0 0 0 0\n0 0 2 0 0 0\n0 0 0 0 3 0\n")
            .map_err(|e| CliError::config(format!("cannot write temp H: {e}")))?;
        cfg.command = "sample-manifold".into();
        cfg.h_matrix = Some(h_path.display().to_string());
        cfg.samples = 15;
        cfg.spot_checks = 2;
        cfg.out = Some(dir.join("cloud-a").display().to_string());
        run_command(&cfg)?;
        cfg.out = Some(dir.join("cloud-b").display().to_string());
        run_command(&cfg)?;
        let csv_a = std::fs::read(dir.join("cloud-a.csv"))
            .map_err(|e| CliError::numerical(format!("missing CSV: {e}")))?;
        let csv_b = std::fs::read(dir.join("cloud-b.csv"))
            .map_err(|e| CliError::numerical(format!("missing CSV: {e}")))?;
        let csv_same = csv_a == csv_b;
        checks.push(CheckResult::stated(
            "c8/byte-identical-csv",
            if csv_same { 0.0 } else { 1.0 },
            0.5,
            csv_same,
        ));
        let _ = std::fs::remove_dir_all(&dir);
        Ok(checks)
    })
}

/// Run the full suite or a `--only` subset (matched by number or name
/// substring).
pub fn run(only: Option<&str>) -> CliResult<Vec<Criterion>> {
    let all: Vec<fn() -> CliResult<Criterion>> = vec![
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
    ];
    let mut out = Vec::new();
    for (idx, f) in all.iter().enumerate() {
        let number = (idx + 1) as u8;
        if let Some(filter) = only {
            let name = CRITERION_NAMES[idx];
            let matches = filter == number.to_string() || name.contains(filter);
            if !matches {
                continue;
            }
        }
        out.push(f()?);
    }
    Ok(out)
}

pub const CRITERION_NAMES: [&str; 8] = [
    "casimir-agreement",
    "tensor-mu-minus-two",
    "kappa-orthogonality",
    "eigenfamily-suite",
    "harmonic-morphism-suite",
    "main-theorem-desk-scale",
    "gradient-formula",
    "numerical-hygiene",
];
