//! The five CLI commands. Each one validates its inputs (setup stage,
//! exit code 2 on failure), runs the experiment (runtime stage, exit
//! code 3 on numerical failure) and produces a report envelope.

use crate::config::RunConfig;
use crate::io;
use crate::par::par_map;
use crate::report::{CheckResult, ReportEnvelope};
use crate::{CliError, CliResult};
use lie_eigenlab_core::families::{
    self, catalogue_family, crosscheck_casimir, verify_family, CatalogueLabel, EigenFamily,
    VerifyStatus,
};
use lie_eigenlab_core::fields::{CoeffForm, ScalarField};
use lie_eigenlab_core::group::GroupFamily;
use lie_eigenlab_core::levelset::{self, mean_curvature, regularity_check, LevelSetSpec};
use lie_eigenlab_core::linalg::{CMat, C64};
use lie_eigenlab_core::morphism::{
    build_morphism, singular_set_probe, verify_harmonic_morphism, Chart,
};
use std::path::{Path, PathBuf};

fn parse_label(cfg: &RunConfig) -> CliResult<CatalogueLabel> {
    let name = cfg
        .family
        .as_deref()
        .ok_or_else(|| CliError::config("a --family label is required"))?;
    CatalogueLabel::parse(name).ok_or_else(|| {
        CliError::config(format!(
            "unknown family '{name}' (standard | dual | isotropic | tensor | extended)"
        ))
    })
}

/// Build the requested family, honoring generator overrides from files.
pub fn build_family(cfg: &RunConfig) -> CliResult<EigenFamily> {
    let spec = cfg.group_spec()?;
    let label = parse_label(cfg)?;
    let gen_a = cfg
        .gen_a
        .as_ref()
        .map(|p| io::read_complex_vector(Path::new(p)))
        .transpose()?;
    let gen_b = cfg
        .gen_b
        .as_ref()
        .map(|p| io::read_complex_vector(Path::new(p)))
        .transpose()?;
    let built = match (label, gen_a) {
        (CatalogueLabel::Standard, Some(a)) if spec.family() == GroupFamily::SpecialUnitary => {
            families::su_standard(cfg.n, &a)
        }
        (CatalogueLabel::Standard, Some(a)) if spec.family() == GroupFamily::Symplectic => {
            families::sp_standard(cfg.n, &a)
        }
        (CatalogueLabel::Dual, Some(a)) => families::su_dual(cfg.n, &a),
        (CatalogueLabel::Isotropic, Some(a)) => families::so_isotropic(cfg.n, &a),
        (CatalogueLabel::Tensor, Some(a)) => {
            let b = match gen_b {
                Some(b) => b,
                None => {
                    let mut b = vec![C64::ZERO; cfg.n];
                    b[1] = C64::ONE;
                    b
                }
            };
            families::su_tensor(cfg.n, &a, &b)
        }
        (label, None) => catalogue_family(&spec, label, cfg.s),
        (CatalogueLabel::Extended, Some(_)) => {
            return Err(CliError::config(
                "the extended family takes --s, not generator files",
            ))
        }
        (label, Some(_)) => {
            return Err(CliError::config(format!(
                "family '{}' does not exist on {}",
                label.as_str(),
                spec.name()
            )))
        }
    };
    let mut family = built.map_err(CliError::setup)?;
    if cfg.inject_defect {
        let spec = family.spec();
        let m = spec.matrix_size();
        let mut a = vec![C64::ZERO; m];
        a[1 % m] = C64::ONE;
        let mut c = vec![C64::ZERO; m];
        c[0] = C64::ONE;
        let stray =
            ScalarField::coefficient(spec, CoeffForm::Hermitian, a, c).map_err(CliError::setup)?;
        let mut members = family.members().to_vec();
        members.push(stray);
        family = EigenFamily::from_members(
            spec,
            format!("{} (defect injected)", family.label()),
            members,
        )
        .map_err(CliError::setup)?;
    }
    Ok(family)
}

/// `casimir`: print the Casimir scalar of a named family and its
/// cross-check against the measured Laplacian eigenvalue.
pub fn cmd_casimir(cfg: &RunConfig) -> CliResult<ReportEnvelope> {
    let spec = cfg.group_spec()?;
    let label = parse_label(cfg)?;
    let rs = lie_eigenlab_core::roots::root_system(&spec).map_err(CliError::setup)?;
    let weight = families::catalogue_weight(label, &rs);
    let predicted =
        lie_eigenlab_core::roots::casimir_eigenvalue(&weight, &rs).map_err(CliError::setup)?;
    let cross =
        crosscheck_casimir(&spec, label, cfg.samples, cfg.seed).map_err(CliError::runtime)?;
    println!(
        "alpha_lambda({} {}) = {predicted:.12}",
        spec.name(),
        label.as_str()
    );
    println!("measured tau eigenvalue = {:.12}", cross.measured);
    println!("discrepancy = {:.3e}", cross.discrepancy);
    let checks = vec![CheckResult::bound(
        "casimir/crosscheck-discrepancy",
        cross.discrepancy,
        cfg.tol.max(1e-9),
    )
    .with_detail(format!(
        "predicted {predicted:.12}, measured {:.12}",
        cross.measured
    ))];
    Ok(ReportEnvelope::new(cfg.clone(), checks, Vec::new()))
}

/// `verify-family`: run the two defining identities of a family.
pub fn cmd_verify_family(cfg: &RunConfig) -> CliResult<ReportEnvelope> {
    let family = build_family(cfg)?;
    let report =
        verify_family(&family, cfg.samples, cfg.seed, cfg.tol).map_err(CliError::runtime)?;
    let mut checks = vec![
        CheckResult::bound("verify-family/tau-residual", report.tau_residual, cfg.tol),
        CheckResult::bound(
            "verify-family/kappa-residual",
            report.kappa_residual,
            cfg.tol,
        ),
        CheckResult::bound("verify-family/lambda-spread", report.lambda_spread, cfg.tol),
        CheckResult::bound("verify-family/mu-spread", report.mu_spread, cfg.tol).with_detail(
            format!(
                "lambda_hat = {:+.9}{:+.9}i, mu_hat = {:+.9}{:+.9}i over {} members, {} pairs",
                report.lambda_hat.re,
                report.lambda_hat.im,
                report.mu_hat.re,
                report.mu_hat.im,
                report.members,
                report.pairs
            ),
        ),
    ];
    if let Some(expected) = family.expected_lambda {
        let dev = (report.lambda_hat - C64::new(expected, 0.0)).norm();
        checks.push(
            CheckResult::bound("verify-family/lambda-vs-casimir", dev, cfg.tol)
                .with_detail(format!("expected {expected:.9}")),
        );
    }
    if let Some(expected) = family.expected_mu {
        let dev = (report.mu_hat - C64::new(expected, 0.0)).norm();
        checks.push(
            CheckResult::bound("verify-family/mu-vs-expected", dev, cfg.tol)
                .with_detail(format!("expected {expected:.9}")),
        );
    }
    let mut warnings = Vec::new();
    if report.status == VerifyStatus::Inconclusive {
        warnings.push("verification inconclusive: all member values vanished".to_string());
        checks.clear();
    }
    for line in &warnings {
        eprintln!("warning: {line}");
    }
    let envelope = ReportEnvelope::new(cfg.clone(), checks, warnings);
    println!("verify-family [{}]: {}", family.label(), envelope.verdict);
    Ok(envelope)
}

/// `verify-morphism`: chart harmonicity and conformality of [P, Q] over
/// a family, plus the singular-set probe.
pub fn cmd_verify_morphism(cfg: &RunConfig) -> CliResult<ReportEnvelope> {
    let family = build_family(cfg)?;
    let k = family.len();
    let p_path = cfg
        .poly_p
        .as_ref()
        .ok_or_else(|| CliError::config("--poly-p file is required"))?;
    let q_path = cfg
        .poly_q
        .as_ref()
        .ok_or_else(|| CliError::config("--poly-q file is required"))?;
    let p_poly = io::read_poly(Path::new(p_path), k)?;
    let q_poly = io::read_poly(Path::new(q_path), k)?;
    let morphism = build_morphism(&family, None, p_poly, q_poly).map_err(CliError::setup)?;
    let report = verify_harmonic_morphism(
        &morphism,
        cfg.samples,
        cfg.seed,
        cfg.tol,
        0.1,
        Chart::POverQ,
    )
    .map_err(CliError::runtime)?;
    let probe = singular_set_probe(&morphism, cfg.samples.max(1000), cfg.seed ^ 0x5a5a, 0.01);
    let mut warnings = Vec::new();
    let mut checks = Vec::new();
    if report.inconclusive {
        warnings.push("all samples fell outside the chart guard".to_string());
    } else {
        checks.push(
            CheckResult::bound("verify-morphism/max-tau", report.max_tau, cfg.tol).with_detail(
                format!(
                    "{} of {} samples used, median |Q.Phi| = {:.3e}",
                    report.samples_used, report.samples_total, report.median_denominator
                ),
            ),
        );
        checks.push(CheckResult::bound(
            "verify-morphism/max-kappa",
            report.max_kappa,
            cfg.tol,
        ));
        if let Some(fd) = report.fd_crosscheck {
            checks.push(CheckResult::bound(
                "verify-morphism/fd-crosscheck",
                fd,
                1e-4,
            ));
        }
    }
    checks.push(
        CheckResult::stated(
            "verify-morphism/singular-set-floor",
            probe.min_of_max,
            probe.floor,
            true,
        )
        .with_detail(if probe.likely_empty {
            "minimum stayed above the floor: Z likely empty (statistical evidence only)"
        } else {
            "sampling approached the common zero set"
        }),
    );
    let envelope = ReportEnvelope::new(cfg.clone(), checks, warnings);
    println!(
        "verify-morphism [{}]: {}",
        morphism.label(),
        envelope.verdict
    );
    Ok(envelope)
}

fn resolve_h_matrix(cfg: &RunConfig, m: usize) -> CliResult<CMat> {
    let source = cfg.h_matrix.as_deref().ok_or_else(|| {
        CliError::config("--h-matrix (file, inline:..., random-distinct) is required")
    })?;
    let h = if source == "random-distinct" {
        levelset::random_distinct_matrix(m, cfg.seed).map_err(CliError::setup)?
    } else if let Some(raw) = source.strip_prefix("inline:") {
        let numbers: Vec<f64> = raw
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| CliError::config(format!("bad inline number '{t}'")))
            })
            .collect::<CliResult<_>>()?;
        if numbers.len() != 2 * m * m {
            return Err(CliError::config(format!(
                "inline H needs {} re/im numbers for a {m}x{m} matrix, got {}",
                2 * m * m,
                numbers.len()
            )));
        }
        let entries: Vec<C64> = numbers.chunks(2).map(|c| C64::new(c[0], c[1])).collect();
        CMat::from_rows(m, m, &entries)
    } else {
        let h = io::read_complex_matrix(Path::new(source))?;
        if h.nrows() != m {
            return Err(CliError::config(format!(
                "H in {source} is {}x{}, expected {m}x{m}",
                h.nrows(),
                h.ncols()
            )));
        }
        h
    };
    Ok(h)
}

/// `sample-manifold`: sample the bilinear level set, export CSV/PLY and
/// run regularity + curvature spot checks.
pub fn cmd_sample_manifold(cfg: &RunConfig) -> CliResult<ReportEnvelope> {
    let spec = cfg.group_spec()?;
    if spec.family() != GroupFamily::SpecialUnitary {
        return Err(CliError::config(
            "sample-manifold works on the special unitary realization",
        ));
    }
    let h = resolve_h_matrix(cfg, spec.matrix_size())?;
    let distinct = levelset::distinct_eigenvalues(&h, 1e-8).map_err(CliError::setup)?;
    let ls = LevelSetSpec::bilinear(spec, h).map_err(CliError::setup)?;

    let cloud =
        levelset::sample_manifold(&ls, cfg.samples, cfg.seed, 1e-12).map_err(CliError::runtime)?;
    let mut warnings = Vec::new();
    if !distinct {
        warnings.push(
            "H does not have well-separated eigenvalues; minimality is not guaranteed".into(),
        );
    }
    if cloud.low_yield {
        warnings.push(format!(
            "sampling yield below half the request: {} of {} after {} attempts",
            cloud.points.len(),
            cfg.samples,
            cloud.attempts
        ));
    }

    let mut checks = Vec::new();
    let worst_psi = cloud
        .points
        .iter()
        .map(|p| p.constraint_norm)
        .fold(0.0f64, f64::max);
    let worst_membership = cloud
        .points
        .iter()
        .map(|p| p.element.membership_residual())
        .fold(0.0f64, f64::max);
    checks.push(
        CheckResult::bound("sample-manifold/max-psi", worst_psi, 1e-12)
            .with_detail(format!("{} points", cloud.points.len())),
    );
    checks.push(CheckResult::bound(
        "sample-manifold/max-membership",
        worst_membership,
        1e-11,
    ));

    // spot diagnostics on a prefix of the cloud, in parallel
    let spots = cfg.spot_checks.min(cloud.points.len());
    let spot_results: Vec<CliResult<(f64, f64, Option<f64>)>> = par_map(spots, |i| {
        let pt = &cloud.points[i];
        let reg = regularity_check(&ls, &pt.element).map_err(CliError::runtime)?;
        let curv = mean_curvature(&ls, pt, cfg.h_step).map_err(CliError::runtime)?;
        Ok((reg.sigma_min, curv.normal_norm, reg.commutator_discrepancy))
    });
    let mut curvatures: Vec<Option<f64>> = vec![None; cloud.points.len()];
    let mut min_sigma = f64::INFINITY;
    let mut max_curv: f64 = 0.0;
    let mut max_comm: f64 = 0.0;
    for (i, r) in spot_results.into_iter().enumerate() {
        let (sigma, curv, comm) = r?;
        min_sigma = min_sigma.min(sigma);
        max_curv = max_curv.max(curv);
        if let Some(c) = comm {
            max_comm = max_comm.max(c);
        }
        curvatures[i] = Some(curv);
    }
    if spots > 0 {
        checks.push(CheckResult::floor(
            "sample-manifold/min-sigma",
            min_sigma,
            1e-4,
        ));
        checks.push(
            CheckResult::bound("sample-manifold/max-curvature", max_curv, 5e-4)
                .with_detail(format!("{spots} spot checks at h = {:.1e}", cfg.h_step)),
        );
        checks.push(CheckResult::bound(
            "sample-manifold/gradient-formula",
            max_comm,
            1e-9,
        ));
    }

    if let Some(out) = &cfg.out {
        let base = PathBuf::from(out);
        let formats: Vec<&str> = cfg.format.iter().map(String::as_str).collect();
        if formats.contains(&"csv") || formats.contains(&"json") || formats.is_empty() {
            io::write_file(
                &base.with_extension("csv"),
                &io::cloud_csv(&cloud.points, &curvatures),
            )?;
        }
        if formats.contains(&"ply") {
            io::write_file(
                &base.with_extension("ply"),
                &io::cloud_ply(&cloud.points, &io::default_chart()),
            )?;
        }
    }
    for line in &warnings {
        eprintln!("warning: {line}");
    }
    let envelope = ReportEnvelope::new(cfg.clone(), checks, warnings);
    println!("sample-manifold [{}]: {}", ls.label(), envelope.verdict);
    Ok(envelope)
}

/// `acceptance`: run the acceptance criteria (optionally a `--only`
/// subset) and fold every check into one envelope.
pub fn cmd_acceptance(cfg: &RunConfig) -> CliResult<ReportEnvelope> {
    let criteria = crate::acceptance::run(cfg.only.as_deref())?;
    if criteria.is_empty() {
        return Err(CliError::config(format!(
            "--only '{}' matched no acceptance criterion",
            cfg.only.as_deref().unwrap_or("")
        )));
    }
    let mut checks = Vec::new();
    let mut warnings = Vec::new();
    for c in &criteria {
        let ok = c.passed();
        println!(
            "criterion {} ({}): {} [{} checks, {:.1}s]",
            c.number,
            c.name,
            if ok { "PASS" } else { "FAIL" },
            c.checks.len(),
            c.elapsed_seconds
        );
        if let Some(budget) = c.budget_seconds {
            if c.elapsed_seconds > budget {
                warnings.push(format!(
                    "criterion {} exceeded its {budget:.0}s budget ({:.1}s); checks still evaluated",
                    c.number, c.elapsed_seconds
                ));
            }
        }
        checks.extend(c.checks.iter().cloned());
    }
    for line in &warnings {
        eprintln!("warning: {line}");
    }
    Ok(ReportEnvelope::new(cfg.clone(), checks, warnings))
}

/// Dispatch used by `main` and by the CLI tests.
pub fn run_command(cfg: &RunConfig) -> CliResult<ReportEnvelope> {
    let started = std::time::SystemTime::now();
    let t0 = std::time::Instant::now();
    let mut envelope = match cfg.command.as_str() {
        "casimir" => cmd_casimir(cfg)?,
        "verify-family" => cmd_verify_family(cfg)?,
        "verify-morphism" => cmd_verify_morphism(cfg)?,
        "sample-manifold" => cmd_sample_manifold(cfg)?,
        "acceptance" => cmd_acceptance(cfg)?,
        other => return Err(CliError::config(format!("unknown command '{other}'"))),
    };
    envelope.stamp(started, t0.elapsed().as_secs_f64());
    if let Some(out) = &cfg.out {
        let path = PathBuf::from(out).with_extension("json");
        io::write_file(&path, &envelope.to_json())?;
    }
    Ok(envelope)
}

/// Exit code for a finished envelope.
pub fn envelope_exit(envelope: &ReportEnvelope) -> crate::ExitCode {
    if envelope.verdict == "pass" {
        crate::ExitCode::Pass
    } else {
        crate::ExitCode::CheckFail
    }
}
