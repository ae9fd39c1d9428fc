//! The eigenfamily catalogue and its verification engine.
//!
//! An eigenfamily is a set `E` of complex functions sharing two
//! constants: `τ(φ) = λ φ` for every member and `κ(φ,ψ) = μ φψ` for
//! every pair. Index spaces are infinite (all of C^n, all matrices);
//! only a canonical basis of members is stored and linearity covers the
//! rest.
//!
//! `verify_family` fits λ and μ by least squares over Haar samples and
//! reports max residuals and the cross-member spread of the fitted
//! constants, so a family that is *not* an eigenfamily shows up as an
//! O(1) residual instead of a division-by-small-number artifact.

use crate::calculus::{self, FdScheme};
use crate::error::{Error, Result};
use crate::fields::{CoeffForm, ScalarField};
use crate::group::{build_basis, haar_points, GroupSpec};
use crate::linalg::{vdot, C64};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// An indexed family of scalar fields with (optionally) expected
/// constants from representation theory.
#[derive(Debug, Clone)]
pub struct EigenFamily {
    spec: GroupSpec,
    label: String,
    members: Vec<ScalarField>,
    /// Casimir prediction for λ when derivable.
    pub expected_lambda: Option<f64>,
    /// Known conformality constant (e.g. -2 for the tensor family);
    /// `None` means "measured".
    pub expected_mu: Option<f64>,
}

impl EigenFamily {
    /// Wrap explicit members (used by tests and for product families).
    pub fn from_members(
        spec: GroupSpec,
        label: impl Into<String>,
        members: Vec<ScalarField>,
    ) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Precondition(
                "a family needs at least one member".into(),
            ));
        }
        for m in &members {
            if m.spec() != spec {
                return Err(Error::SpecMismatch(
                    "family member on a different group".into(),
                ));
            }
        }
        Ok(EigenFamily {
            spec,
            label: label.into(),
            members,
            expected_lambda: None,
            expected_mu: None,
        })
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn members(&self) -> &[ScalarField] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn unit_vec(m: usize, k: usize) -> Vec<C64> {
    let mut v = vec![C64::ZERO; m];
    v[k] = C64::ONE;
    v
}

fn check_nonzero(a: &[C64], what: &str) -> Result<()> {
    if a.iter().map(|z| z.norm_sqr()).sum::<f64>() < 1e-28 {
        return Err(Error::Precondition(format!("{what} must be nonzero")));
    }
    Ok(())
}

/// `E_a = { z ↦ ⟨z a, c⟩ : c ∈ C^n }` on SU(n); stored members use the
/// standard basis for `c`.
pub fn su_standard(n: usize, a: &[C64]) -> Result<EigenFamily> {
    let spec = GroupSpec::su(n)?;
    check_nonzero(a, "generator a")?;
    if a.len() != n {
        return Err(Error::InvalidSpec(format!(
            "generator must have length {n}"
        )));
    }
    let members = (0..n)
        .map(|k| ScalarField::coefficient(spec, CoeffForm::Hermitian, a.to_vec(), unit_vec(n, k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(EigenFamily {
        spec,
        label: format!("su({n}) standard"),
        members,
        expected_lambda: Some(-((n * n - 1) as f64) / n as f64),
        expected_mu: None,
    })
}

/// `E*_a = { z ↦ ⟨c, z a⟩ : c ∈ C^n }` on SU(n): the conjugate-coefficient
/// family, with the same Laplacian eigenvalue as the standard one.
pub fn su_dual(n: usize, a: &[C64]) -> Result<EigenFamily> {
    let spec = GroupSpec::su(n)?;
    check_nonzero(a, "generator a")?;
    if a.len() != n {
        return Err(Error::InvalidSpec(format!(
            "generator must have length {n}"
        )));
    }
    let members = (0..n)
        .map(|k| {
            ScalarField::coefficient(spec, CoeffForm::HermitianDual, a.to_vec(), unit_vec(n, k))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EigenFamily {
        spec,
        label: format!("su({n}) dual"),
        members,
        expected_lambda: Some(-((n * n - 1) as f64) / n as f64),
        expected_mu: None,
    })
}

/// Exact isotropy test for vectors with Gaussian-integer entries, with a
/// 1e-12 floating tolerance otherwise.
fn isotropy_defect(a: &[C64]) -> f64 {
    let all_gaussian_int = a.iter().all(|z| {
        let r = libm::round(z.re);
        let i = libm::round(z.im);
        z.re == r && z.im == i && libm::fabs(r) < 1e6 && libm::fabs(i) < 1e6
    });
    if all_gaussian_int {
        let (mut re, mut im) = (0i64, 0i64);
        for z in a {
            let (zr, zi) = (z.re as i64, z.im as i64);
            re += zr * zr - zi * zi;
            im += 2 * zr * zi;
        }
        if re == 0 && im == 0 {
            return 0.0;
        }
        return f64::INFINITY;
    }
    let s: C64 = a.iter().map(|z| z * z).sum();
    s.norm()
}

/// `E_a = { x ↦ (x a, b) : b ∈ C^n }` on SO(n) for an isotropic
/// generator `a` (Σ a_i² = 0).
pub fn so_isotropic(n: usize, a: &[C64]) -> Result<EigenFamily> {
    let spec = GroupSpec::so(n)?;
    check_nonzero(a, "generator a")?;
    if a.len() != n {
        return Err(Error::InvalidSpec(format!(
            "generator must have length {n}"
        )));
    }
    let defect = isotropy_defect(a);
    if defect > 1e-12 {
        return Err(Error::Precondition(format!(
            "generator is not isotropic: |Σ a_i²| = {defect:.3e}"
        )));
    }
    let members = (0..n)
        .map(|k| ScalarField::coefficient(spec, CoeffForm::Bilinear, a.to_vec(), unit_vec(n, k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(EigenFamily {
        spec,
        label: format!("so({n}) isotropic"),
        members,
        expected_lambda: Some(-((n - 1) as f64) / 2.0),
        expected_mu: None,
    })
}

/// `E_a = { q ↦ ⟨q a, c⟩ : c ∈ C^{2n} }` on Sp(n).
pub fn sp_standard(n: usize, a: &[C64]) -> Result<EigenFamily> {
    let spec = GroupSpec::sp(n)?;
    check_nonzero(a, "generator a")?;
    let m = 2 * n;
    if a.len() != m {
        return Err(Error::InvalidSpec(format!(
            "generator must have length {m}"
        )));
    }
    let members = (0..m)
        .map(|k| ScalarField::coefficient(spec, CoeffForm::Hermitian, a.to_vec(), unit_vec(m, k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(EigenFamily {
        spec,
        label: format!("sp({n}) standard"),
        members,
        expected_lambda: Some(-((2 * n + 1) as f64) / 2.0),
        expected_mu: None,
    })
}

/// The tensor family on SU(n): members `z ↦ ⟨z a, c⟩ · ⟨d, z b⟩` for the
/// standard index basis `(c, d) = (e_i, e_k)`, built over a fixed
/// orthogonal pair `a ⊥ b`. For `a = e_1, b = e_2` the members are
/// `z ↦ z_{i1} conj(z_{k2})` and the whole family is
/// `{ z ↦ z_1^t A conj(z_2) : A ∈ C^{n×n} }`.
pub fn su_tensor(n: usize, a: &[C64], b: &[C64]) -> Result<EigenFamily> {
    let spec = GroupSpec::su(n)?;
    check_nonzero(a, "generator a")?;
    check_nonzero(b, "generator b")?;
    if a.len() != n || b.len() != n {
        return Err(Error::InvalidSpec(format!(
            "generators must have length {n}"
        )));
    }
    let overlap = vdot(a, b).norm();
    let scale = libm::sqrt(a.iter().map(|z| z.norm_sqr()).sum::<f64>())
        * libm::sqrt(b.iter().map(|z| z.norm_sqr()).sum::<f64>());
    if overlap > 1e-12 * scale.max(1.0) {
        return Err(Error::Precondition(format!(
            "generators must be orthogonal, |⟨a,b⟩| = {overlap:.3e}"
        )));
    }
    let mut members = Vec::with_capacity(n * n);
    for i in 0..n {
        let phi = ScalarField::coefficient(spec, CoeffForm::Hermitian, a.to_vec(), unit_vec(n, i))?;
        for k in 0..n {
            let psi = ScalarField::coefficient(
                spec,
                CoeffForm::HermitianDual,
                b.to_vec(),
                unit_vec(n, k),
            )?;
            members.push(ScalarField::product(&phi, &psi)?);
        }
    }
    Ok(EigenFamily {
        spec,
        label: format!("su({n}) tensor"),
        members,
        expected_lambda: Some(-2.0 * n as f64),
        expected_mu: Some(-2.0),
    })
}

/// The multi-block extension of the tensor family: sums
/// `Σ_{r=1..s} z_{2r-1}^t A_r conj(z_{2r})` over disjoint column pairs,
/// for `2s ≤ n`. Stored members are the single products
/// `z ↦ z_{i,2r-1} conj(z_{k,2r})`, which span the same space.
///
/// For s = 1 this is exactly [`su_tensor`] with the first two columns.
/// For s ≥ 2 the construction does *not* satisfy the shared-constant
/// pair law: cross-block pairs have κ(F,G)(I) = 0 while same-block
/// pairs force μ = -2, so [`verify_family`] reports Fail with an O(1)
/// residual. The constructor is kept so that the failure is measured
/// rather than assumed.
pub fn su_extended(n: usize, s: usize) -> Result<EigenFamily> {
    let spec = GroupSpec::su(n)?;
    if s == 0 {
        return Err(Error::Precondition("s must be positive".into()));
    }
    if 2 * s > n {
        return Err(Error::Precondition(format!(
            "need 2s <= n, got s = {s}, n = {n}"
        )));
    }
    let mut members = Vec::with_capacity(s * n * n);
    for r in 0..s {
        let a = unit_vec(n, 2 * r);
        let b = unit_vec(n, 2 * r + 1);
        for i in 0..n {
            let phi =
                ScalarField::coefficient(spec, CoeffForm::Hermitian, a.clone(), unit_vec(n, i))?;
            for k in 0..n {
                let psi = ScalarField::coefficient(
                    spec,
                    CoeffForm::HermitianDual,
                    b.clone(),
                    unit_vec(n, k),
                )?;
                members.push(ScalarField::product(&phi, &psi)?);
            }
        }
    }
    Ok(EigenFamily {
        spec,
        label: format!("su({n}) extended s={s}"),
        members,
        expected_lambda: Some(-2.0 * n as f64),
        expected_mu: Some(-2.0),
    })
}

/// Outcome of a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyStatus {
    Pass,
    Fail,
    /// Degenerate fit: all member values vanished at all samples.
    Inconclusive,
}

/// Measured constants and residuals for one family.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub samples: usize,
    pub members: usize,
    pub pairs: usize,
    pub lambda_hat: C64,
    pub lambda_spread: f64,
    pub tau_residual: f64,
    pub mu_hat: C64,
    pub mu_spread: f64,
    pub kappa_residual: f64,
    pub tolerance: f64,
    pub status: VerifyStatus,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == VerifyStatus::Pass
    }
}

fn lsq_ratio(num: C64, den: f64) -> Option<C64> {
    if den < 1e-20 {
        None
    } else {
        Some(num / C64::new(den, 0.0))
    }
}

/// Fit `τ(φ) = λ̂ φ` and `κ(φ,ψ) = μ̂ φψ` over Haar samples and report
/// residuals and cross-member spreads.
pub fn verify_family(
    family: &EigenFamily,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport> {
    if family.is_empty() {
        return Err(Error::Precondition("family has no members".into()));
    }
    let spec = family.spec();
    let basis = build_basis(&spec)?;
    let scheme = FdScheme::default();
    let n_members = family.len();
    let inconclusive = |pairs: usize| VerificationReport {
        samples,
        members: n_members,
        pairs,
        lambda_hat: C64::ZERO,
        lambda_spread: 0.0,
        tau_residual: 0.0,
        mu_hat: C64::ZERO,
        mu_spread: 0.0,
        kappa_residual: 0.0,
        tolerance: tol,
        status: VerifyStatus::Inconclusive,
    };
    if samples == 0 {
        return Ok(inconclusive(0));
    }
    let points = haar_points(&spec, samples, seed);

    // values, Laplacians and gradients of every member at every point
    let mut vals = vec![vec![C64::ZERO; samples]; n_members];
    let mut taus = vec![vec![C64::ZERO; samples]; n_members];
    let mut grads: Vec<Vec<Vec<C64>>> = vec![Vec::with_capacity(samples); n_members];
    for (i, member) in family.members().iter().enumerate() {
        for (p_idx, p) in points.iter().enumerate() {
            vals[i][p_idx] = member.eval(p);
            taus[i][p_idx] = calculus::laplacian(member, p, &basis, &scheme)?.value;
            grads[i].push(calculus::gradient_coeffs(member, p, &basis, &scheme)?);
        }
    }

    // pooled and per-member least-squares fits of lambda
    let mut num_all = C64::ZERO;
    let mut den_all = 0.0f64;
    let mut per_member: Vec<Option<C64>> = Vec::with_capacity(n_members);
    for i in 0..n_members {
        let mut num = C64::ZERO;
        let mut den = 0.0f64;
        for p_idx in 0..samples {
            num += vals[i][p_idx].conj() * taus[i][p_idx];
            den += vals[i][p_idx].norm_sqr();
        }
        num_all += num;
        den_all += den;
        per_member.push(lsq_ratio(num, den));
    }
    let lambda_hat = match lsq_ratio(num_all, den_all) {
        Some(l) => l,
        None => return Ok(inconclusive(0)),
    };
    let lambda_spread = per_member
        .iter()
        .flatten()
        .map(|l| (l - lambda_hat).norm())
        .fold(0.0, f64::max);
    let mut tau_residual = 0.0f64;
    for i in 0..n_members {
        for p_idx in 0..samples {
            tau_residual = tau_residual.max((taus[i][p_idx] - lambda_hat * vals[i][p_idx]).norm());
        }
    }

    // kappa over all unordered pairs (including i = j)
    let mut num_mu = C64::ZERO;
    let mut den_mu = 0.0f64;
    let mut pair_fits: Vec<(usize, usize, Option<C64>)> = Vec::new();
    let mut kappas = Vec::new();
    for i in 0..n_members {
        for j in i..n_members {
            let mut num = C64::ZERO;
            let mut den = 0.0f64;
            let mut row = vec![C64::ZERO; samples];
            for p_idx in 0..samples {
                let k = calculus::kappa_from_grads(&grads[i][p_idx], &grads[j][p_idx]);
                let prod = vals[i][p_idx] * vals[j][p_idx];
                num += prod.conj() * k;
                den += prod.norm_sqr();
                row[p_idx] = k;
            }
            num_mu += num;
            den_mu += den;
            pair_fits.push((i, j, lsq_ratio(num, den)));
            kappas.push(row);
        }
    }
    let n_pairs = pair_fits.len();
    let mu_hat = match lsq_ratio(num_mu, den_mu) {
        Some(m) => m,
        None => return Ok(inconclusive(n_pairs)),
    };
    let mu_spread = pair_fits
        .iter()
        .filter_map(|(_, _, f)| f.as_ref())
        .map(|m| (m - mu_hat).norm())
        .fold(0.0, f64::max);
    let mut kappa_residual = 0.0f64;
    for (row, (i, j, _)) in kappas.iter().zip(&pair_fits) {
        for p_idx in 0..samples {
            let prod = vals[*i][p_idx] * vals[*j][p_idx];
            kappa_residual = kappa_residual.max((row[p_idx] - mu_hat * prod).norm());
        }
    }

    let ok = tau_residual < tol && kappa_residual < tol && lambda_spread < tol && mu_spread < tol;
    Ok(VerificationReport {
        samples,
        members: n_members,
        pairs: n_pairs,
        lambda_hat,
        lambda_spread,
        tau_residual,
        mu_hat,
        mu_spread,
        kappa_residual,
        tolerance: tol,
        status: if ok {
            VerifyStatus::Pass
        } else {
            VerifyStatus::Fail
        },
    })
}

/// Result of probing whether two families can be multiplied.
#[derive(Debug, Clone, Copy)]
pub struct CrossKappaProbe {
    /// Fitted constant ν in κ(φ, ψ) = ν φψ across cross pairs.
    pub nu_hat: C64,
    /// Max |κ(φ,ψ) - ν̂ φψ| over the probe set.
    pub residual: f64,
}

/// Probe the cross-κ law between two families at Haar points.
///
/// The product construction needs κ(φ, ψ) = ν φψ with one constant ν for
/// all cross pairs; κ-orthogonality is the special case ν = 0. Pairs
/// whose product vanishes identically contribute residuals only.
pub fn cross_kappa_probe(
    f: &EigenFamily,
    g: &EigenFamily,
    points: usize,
    seed: u64,
) -> Result<CrossKappaProbe> {
    if f.spec() != g.spec() {
        return Err(Error::SpecMismatch(
            "families live on different groups".into(),
        ));
    }
    let spec = f.spec();
    let basis = build_basis(&spec)?;
    let scheme = FdScheme::default();
    let samples = haar_points(&spec, points, seed);
    let mut num = C64::ZERO;
    let mut den = 0.0f64;
    let mut data: Vec<(C64, C64)> = Vec::new();
    for phi in f.members() {
        for psi in g.members() {
            for p in &samples {
                let k = calculus::kappa(phi, psi, p, &basis, &scheme)?.value;
                let prod = phi.eval(p) * psi.eval(p);
                num += prod.conj() * k;
                den += prod.norm_sqr();
                data.push((k, prod));
            }
        }
    }
    let nu_hat = lsq_ratio(num, den).unwrap_or(C64::ZERO);
    let residual = data
        .iter()
        .map(|(k, prod)| (k - nu_hat * prod).norm())
        .fold(0.0, f64::max);
    Ok(CrossKappaProbe { nu_hat, residual })
}

/// Family of pairwise products `{ φ ψ }`.
///
/// Requires both factors on the same group and a proportional cross-κ
/// law (verified numerically on `probe_points` Haar samples); fails with
/// a precondition error otherwise.
pub fn product_family(
    f: &EigenFamily,
    g: &EigenFamily,
    probe_points: usize,
    seed: u64,
    probe_tol: f64,
) -> Result<EigenFamily> {
    let probe = cross_kappa_probe(f, g, probe_points, seed)?;
    if probe.residual > probe_tol {
        return Err(Error::Precondition(format!(
            "cross-family kappa is not proportional to the member products \
             (residual {:.3e} over {} points, fitted nu = {:+.6} {:+.6}i)",
            probe.residual, probe_points, probe.nu_hat.re, probe.nu_hat.im
        )));
    }
    let mut members = Vec::with_capacity(f.len() * g.len());
    for phi in f.members() {
        for psi in g.members() {
            members.push(ScalarField::product(phi, psi)?);
        }
    }
    let mut fam = EigenFamily::from_members(
        f.spec(),
        format!("product[{} x {}]", f.label(), g.label()),
        members,
    )?;
    // τ(φψ) = (λ_f + λ_g + 2ν) φψ when both factor constants are known
    if let (Some(lf), Some(lg)) = (f.expected_lambda, g.expected_lambda) {
        if libm::fabs(probe.nu_hat.im) < 1e-9 {
            fam.expected_lambda = Some(lf + lg + 2.0 * probe.nu_hat.re);
        }
    }
    Ok(fam)
}

/// Build a catalogued family from its label with the default generator
/// data (a = e_1 for standard/dual, a = e_1 + i e_2 for the isotropic
/// family, (a, b) = (e_1, e_2) for the tensor family).
pub fn catalogue_family(
    spec: &GroupSpec,
    label: CatalogueLabel,
    s: Option<usize>,
) -> Result<EigenFamily> {
    use crate::group::GroupFamily;
    let n = spec.n();
    let e = |k: usize, len: usize| unit_vec(len, k);
    match (label, spec.family()) {
        (CatalogueLabel::Standard, GroupFamily::SpecialUnitary) => su_standard(n, &e(0, n)),
        (CatalogueLabel::Standard, GroupFamily::Symplectic) => sp_standard(n, &e(0, 2 * n)),
        (CatalogueLabel::Dual, GroupFamily::SpecialUnitary) => su_dual(n, &e(0, n)),
        (CatalogueLabel::Isotropic, GroupFamily::SpecialOrthogonal) => {
            let mut a = vec![C64::ZERO; n];
            a[0] = C64::ONE;
            a[1] = C64::new(0.0, 1.0);
            so_isotropic(n, &a)
        }
        (CatalogueLabel::Tensor, GroupFamily::SpecialUnitary) => su_tensor(n, &e(0, n), &e(1, n)),
        (CatalogueLabel::Extended, GroupFamily::SpecialUnitary) => su_extended(
            n,
            s.ok_or_else(|| Error::InvalidSpec("extended family needs s".into()))?,
        ),
        (label, _) => Err(Error::InvalidSpec(format!(
            "family '{}' is not catalogued for {}",
            label.as_str(),
            spec.name()
        ))),
    }
}

/// The highest weight whose Casimir scalar should match a catalogued
/// family's Laplacian eigenvalue.
pub fn catalogue_weight(
    label: CatalogueLabel,
    rs: &crate::roots::RootSystem,
) -> crate::roots::Weight {
    match label {
        CatalogueLabel::Standard | CatalogueLabel::Isotropic => crate::roots::standard_weight(rs),
        CatalogueLabel::Dual => crate::roots::dual_standard_weight(rs),
        CatalogueLabel::Tensor | CatalogueLabel::Extended => crate::roots::adjoint_weight(rs),
    }
}

/// Compare the algebraic Casimir scalar of a catalogued family against
/// the Laplacian eigenvalue measured on Haar samples.
pub fn crosscheck_casimir(
    spec: &GroupSpec,
    label: CatalogueLabel,
    samples: usize,
    seed: u64,
) -> Result<crate::roots::CasimirCrossCheck> {
    let family = catalogue_family(spec, label, Some(1))?;
    let rs = crate::roots::root_system(spec)?;
    let weight = catalogue_weight(label, &rs);
    let predicted = crate::roots::casimir_eigenvalue(&weight, &rs)?;
    let report = verify_family(&family, samples, seed, 1e-6)?;
    if report.status == VerifyStatus::Inconclusive {
        return Err(Error::Numerical(
            "degenerate measurement in Casimir cross-check".into(),
        ));
    }
    Ok(crate::roots::CasimirCrossCheck::new(
        predicted,
        report.lambda_hat.re,
    ))
}

/// Labels for the catalogued constructors, as exposed on the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogueLabel {
    Standard,
    Dual,
    Isotropic,
    Tensor,
    Extended,
}

impl CatalogueLabel {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "standard" => Some(CatalogueLabel::Standard),
            "dual" => Some(CatalogueLabel::Dual),
            "isotropic" => Some(CatalogueLabel::Isotropic),
            "tensor" => Some(CatalogueLabel::Tensor),
            "extended" => Some(CatalogueLabel::Extended),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            CatalogueLabel::Standard => "standard",
            CatalogueLabel::Dual => "dual",
            CatalogueLabel::Isotropic => "isotropic",
            CatalogueLabel::Tensor => "tensor",
            CatalogueLabel::Extended => "extended",
        }
    }
}
