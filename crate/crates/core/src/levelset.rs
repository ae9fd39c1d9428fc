//! Level sets of scalar constraints on a group: Newton projection,
//! regular-value diagnostics, tangent frames, and a finite-difference
//! mean-curvature certificate.
//!
//! A complex constraint `Ψ = 0` is two real equations, so a regular
//! level set has codimension two. A real constraint `Re Ψ = c` (the
//! non-minimal control) has codimension one. All derivatives are taken
//! in the left-translated algebra chart over an orthonormal basis.

use crate::calculus::{self, FdScheme};
use crate::error::{Error, Result};
use crate::families::EigenFamily;
use crate::fields::{CoeffForm, PolyTerm, ScalarField};
use crate::group::{
    build_basis, group_exp, haar_sample_stream, retract_to_group, AlgebraBasis, AlgebraVector,
    GaussStream, GroupElement, GroupSpec,
};
use crate::linalg::{self, eigenvalues, householder_complement, sym2x2_min_eig, CMat, C64};
use crate::morphism::HomogeneousPoly;
use crate::tol::Tolerances;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// The constraint whose zero set is studied.
#[derive(Debug, Clone)]
pub enum Constraint {
    /// `Ψ(p) = 0` as two real equations (Re Ψ, Im Ψ).
    Complex(ScalarField),
    /// `Re Ψ(p) = target` as one real equation; used as the non-minimal
    /// control surface.
    RealShifted { field: ScalarField, target: f64 },
}

impl Constraint {
    pub fn codim(&self) -> usize {
        match self {
            Constraint::Complex(_) => 2,
            Constraint::RealShifted { .. } => 1,
        }
    }

    fn field(&self) -> &ScalarField {
        match self {
            Constraint::Complex(f) => f,
            Constraint::RealShifted { field, .. } => field,
        }
    }

    /// Real residual vector at a point.
    pub fn residuals(&self, p: &GroupElement) -> Vec<f64> {
        match self {
            Constraint::Complex(f) => {
                let z = f.eval(p);
                vec![z.re, z.im]
            }
            Constraint::RealShifted { field, target } => {
                vec![field.eval(p).re - target]
            }
        }
    }

    pub fn residual_norm(&self, p: &GroupElement) -> f64 {
        libm::sqrt(self.residuals(p).iter().map(|r| r * r).sum())
    }

    /// Rows of the real differential over the basis.
    pub fn jacobian(
        &self,
        p: &GroupElement,
        basis: &AlgebraBasis,
        scheme: &FdScheme,
    ) -> Result<Vec<Vec<f64>>> {
        let grads = calculus::gradient_coeffs(self.field(), p, basis, scheme)?;
        Ok(match self {
            Constraint::Complex(_) => vec![
                grads.iter().map(|z| z.re).collect(),
                grads.iter().map(|z| z.im).collect(),
            ],
            Constraint::RealShifted { .. } => vec![grads.iter().map(|z| z.re).collect()],
        })
    }
}

/// A level-set specification: group, constraint, and (when the
/// constraint is the bilinear column form `z_1^t H conj(z_2)`) the
/// matrix `H` for the closed-form gradient checks.
#[derive(Debug, Clone)]
pub struct LevelSetSpec {
    spec: GroupSpec,
    label: String,
    constraint: Constraint,
    h_matrix: Option<CMat>,
}

/// The field `Φ_H(z) = z_1^t H conj(z_2) = Σ_{ik} H_{ik} z_{i1} conj(z_{k2})`
/// as an exact polynomial in coefficient fields.
pub fn bilinear_column_field(spec: GroupSpec, h: &CMat) -> Result<ScalarField> {
    let n = spec.matrix_size();
    if h.nrows() != n || h.ncols() != n {
        return Err(Error::InvalidSpec(format!("H must be {n}x{n}")));
    }
    let unit = |k: usize| -> Vec<C64> {
        let mut v = vec![C64::ZERO; n];
        v[k] = C64::ONE;
        v
    };
    let mut children = Vec::with_capacity(2 * n);
    for i in 0..n {
        children.push(ScalarField::coefficient(
            spec,
            CoeffForm::Hermitian,
            unit(0),
            unit(i),
        )?);
    }
    for k in 0..n {
        children.push(ScalarField::coefficient(
            spec,
            CoeffForm::HermitianDual,
            unit(1),
            unit(k),
        )?);
    }
    let mut terms = Vec::new();
    for i in 0..n {
        for k in 0..n {
            let coeff = h[(i, k)];
            if coeff.norm() == 0.0 {
                continue;
            }
            let mut e = vec![0u32; 2 * n];
            e[i] = 1;
            e[n + k] = 1;
            terms.push(PolyTerm {
                coeff,
                exponents: e,
            });
        }
    }
    if terms.is_empty() {
        return Err(Error::Precondition("H is the zero matrix".into()));
    }
    ScalarField::poly(spec, children, terms)
}

impl LevelSetSpec {
    /// Level set `{z ∈ SU(n) : z_1^t H conj(z_2) = 0}`.
    ///
    /// Rejects `H` proportional to the identity up front: the constraint
    /// is then identically zero and every differential vanishes.
    pub fn bilinear(spec: GroupSpec, h: CMat) -> Result<Self> {
        let n = spec.matrix_size();
        if h.nrows() != n || h.ncols() != n {
            return Err(Error::InvalidSpec(format!("H must be {n}x{n}")));
        }
        let tr = h.trace() / C64::new(n as f64, 0.0);
        let defect = h.sub(&CMat::identity(n).scale(tr)).max_abs();
        if defect < 1e-12 * h.max_abs().max(1.0) {
            return Err(Error::Singular(
                "H is a multiple of the identity: the constraint vanishes identically".into(),
            ));
        }
        let field = bilinear_column_field(spec, &h)?;
        Ok(LevelSetSpec {
            spec,
            label: format!("bilinear column form on {}", spec.name()),
            constraint: Constraint::Complex(field),
            h_matrix: Some(h),
        })
    }

    /// Level set of an arbitrary complex field.
    pub fn from_field(
        spec: GroupSpec,
        field: ScalarField,
        label: impl Into<String>,
    ) -> Result<Self> {
        if field.spec() != spec {
            return Err(Error::SpecMismatch(
                "constraint field on a different group".into(),
            ));
        }
        Ok(LevelSetSpec {
            spec,
            label: label.into(),
            constraint: Constraint::Complex(field),
            h_matrix: None,
        })
    }

    /// Codimension-one control surface `Re Ψ = target`.
    pub fn real_shifted(
        spec: GroupSpec,
        field: ScalarField,
        target: f64,
        label: impl Into<String>,
    ) -> Result<Self> {
        if field.spec() != spec {
            return Err(Error::SpecMismatch(
                "constraint field on a different group".into(),
            ));
        }
        Ok(LevelSetSpec {
            spec,
            label: label.into(),
            constraint: Constraint::RealShifted { field, target },
            h_matrix: None,
        })
    }

    /// The leaf `Ψ_ξ = β·(P∘Φ) − α·(Q∘Φ) = 0` of a morphism pencil.
    pub fn fiber(
        family: &EigenFamily,
        p_poly: &HomogeneousPoly,
        q_poly: &HomogeneousPoly,
        xi: (C64, C64),
    ) -> Result<Self> {
        let (alpha, beta) = xi;
        if alpha.norm() == 0.0 && beta.norm() == 0.0 {
            return Err(Error::Precondition(
                "xi must be a nonzero element of C^2".into(),
            ));
        }
        let spec = family.spec();
        let members = family.members().to_vec();
        let k = members.len();
        if p_poly.vars() != k || q_poly.vars() != k {
            return Err(Error::Precondition(format!(
                "polynomials must have {k} variables"
            )));
        }
        let mut terms: Vec<PolyTerm> = Vec::new();
        for (idx, c) in p_poly.terms() {
            terms.push(PolyTerm {
                coeff: beta * c,
                exponents: idx.clone(),
            });
        }
        for (idx, c) in q_poly.terms() {
            terms.push(PolyTerm {
                coeff: -alpha * c,
                exponents: idx.clone(),
            });
        }
        let field = ScalarField::poly(spec, members, terms)?;
        Ok(LevelSetSpec {
            spec,
            label: format!("fiber of [P,Q] over {}", family.label()),
            constraint: Constraint::Complex(field),
            h_matrix: None,
        })
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn constraint(&self) -> &Constraint {
        &self.constraint
    }

    pub fn codim(&self) -> usize {
        self.constraint.codim()
    }

    pub fn h_matrix(&self) -> Option<&CMat> {
        self.h_matrix.as_ref()
    }
}

/// A point on the level set with its cached first-order data.
#[derive(Debug, Clone)]
pub struct ManifoldPoint {
    pub element: GroupElement,
    /// `|Ψ|` (or |Re Ψ − target|) at the point.
    pub constraint_norm: f64,
    /// Rows of the real differential over the basis.
    pub gradient_rows: Vec<Vec<f64>>,
    /// Smallest singular value of the differential.
    pub sigma_min: f64,
    /// Orthonormal tangent frame (d − codim vectors).
    pub tangent: Vec<AlgebraVector>,
    /// Newton iterations spent reaching the point.
    pub iterations: usize,
}

fn gram_sigma_min(rows: &[Vec<f64>]) -> f64 {
    let dot = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    match rows.len() {
        1 => libm::sqrt(dot(&rows[0], &rows[0])),
        2 => {
            let a = dot(&rows[0], &rows[0]);
            let b = dot(&rows[0], &rows[1]);
            let c = dot(&rows[1], &rows[1]);
            libm::sqrt(sym2x2_min_eig(a, b, c).max(0.0))
        }
        _ => unreachable!("constraints have one or two rows"),
    }
}

fn solve_gram(rows: &[Vec<f64>], rhs: &[f64]) -> Result<Vec<f64>> {
    let dot = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    match rows.len() {
        1 => {
            let g = dot(&rows[0], &rows[0]);
            if g < 1e-300 {
                return Err(Error::Singular("zero constraint gradient".into()));
            }
            Ok(vec![rhs[0] / g])
        }
        2 => {
            let a = dot(&rows[0], &rows[0]);
            let b = dot(&rows[0], &rows[1]);
            let c = dot(&rows[1], &rows[1]);
            let det = a * c - b * b;
            if det < 1e-300 {
                return Err(Error::Singular(
                    "rank-deficient constraint differential".into(),
                ));
            }
            Ok(vec![
                (c * rhs[0] - b * rhs[1]) / det,
                (a * rhs[1] - b * rhs[0]) / det,
            ])
        }
        _ => unreachable!(),
    }
}

fn build_point(
    ls: &LevelSetSpec,
    basis: &AlgebraBasis,
    element: GroupElement,
    iterations: usize,
    rank_tol: f64,
) -> Result<ManifoldPoint> {
    let scheme = FdScheme::default();
    let rows = ls.constraint.jacobian(&element, basis, &scheme)?;
    let sigma_min = gram_sigma_min(&rows);
    if sigma_min < rank_tol {
        return Err(Error::Singular(format!(
            "constraint differential is rank-deficient (sigma_min = {sigma_min:.3e})"
        )));
    }
    let complement = householder_complement(&rows)?;
    let tangent: Vec<AlgebraVector> = complement.iter().map(|c| basis.combine(c)).collect();
    Ok(ManifoldPoint {
        constraint_norm: ls.constraint.residual_norm(&element),
        gradient_rows: rows,
        sigma_min,
        tangent,
        element,
        iterations,
    })
}

/// Gauss–Newton projection onto the level set: the step is the
/// minimal-norm correction in the span of the constraint gradients,
/// applied through the group exponential and the polar retraction.
pub fn newton_project(
    ls: &LevelSetSpec,
    start: &GroupElement,
    max_iter: usize,
    tol: f64,
) -> Result<ManifoldPoint> {
    if start.spec() != ls.spec {
        return Err(Error::SpecMismatch(
            "start point on a different group".into(),
        ));
    }
    let tols = Tolerances::standard();
    let basis = build_basis(&ls.spec)?;
    let scheme = FdScheme::default();
    let mut p = start.clone();
    let mut res = ls.constraint.residuals(&p);
    let mut norm = libm::sqrt(res.iter().map(|r| r * r).sum());
    if norm < tol {
        return build_point(ls, &basis, p, 0, tols.rank);
    }
    for iter in 1..=max_iter {
        let rows = ls.constraint.jacobian(&p, &basis, &scheme)?;
        let sigma = gram_sigma_min(&rows);
        if sigma < tols.rank {
            return Err(Error::Singular(format!(
                "constraint differential is rank-deficient at iteration {iter} (sigma_min = {sigma:.3e})"
            )));
        }
        let neg_res: Vec<f64> = res.iter().map(|r| -r).collect();
        let y = solve_gram(&rows, &neg_res)?;
        let d = basis.len();
        let mut step = vec![0.0f64; d];
        for (yi, row) in y.iter().zip(&rows) {
            for (s, r) in step.iter_mut().zip(row) {
                *s += yi * r;
            }
        }
        // backtracking on the residual norm
        let mut alpha = 1.0f64;
        let mut accepted = false;
        for _ in 0..8 {
            let scaled: Vec<f64> = step.iter().map(|s| s * alpha).collect();
            let x = basis.combine(&scaled);
            let candidate = group_exp(&p, &x, 1.0)?;
            let candidate = retract_to_group(candidate.mat(), &ls.spec, &tols)?;
            let cand_res = ls.constraint.residuals(&candidate);
            let cand_norm = libm::sqrt(cand_res.iter().map(|r| r * r).sum());
            if cand_norm < norm * (1.0 - 0.25 * alpha) || cand_norm < tol {
                p = candidate;
                res = cand_res;
                norm = cand_norm;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if !accepted {
            // a stall within a few ulps of the evaluation noise floor is
            // convergence, not failure; anything larger is reported
            if norm < tol.max(5e-15) * 4.0 {
                return build_point(ls, &basis, p, iter, tols.rank);
            }
            return Err(Error::NonConvergence(format!(
                "projection stalled at |Psi| = {norm:.3e} after {iter} iterations"
            )));
        }
        if norm < tol {
            return build_point(ls, &basis, p, iter, tols.rank);
        }
    }
    Err(Error::NonConvergence(format!(
        "projection did not reach |Psi| < {tol:.1e} in {max_iter} iterations (now {norm:.3e})"
    )))
}

/// Orthonormal basis of the tangent space at a point of the level set:
/// the orthogonal complement of the constraint gradients inside the
/// algebra, via left translation. Fails where the differential is
/// rank-deficient.
pub fn tangent_basis(ls: &LevelSetSpec, p: &GroupElement) -> Result<Vec<AlgebraVector>> {
    let tols = Tolerances::standard();
    let basis = build_basis(&ls.spec)?;
    let scheme = FdScheme::default();
    let rows = ls.constraint.jacobian(p, &basis, &scheme)?;
    if gram_sigma_min(&rows) < tols.rank {
        return Err(Error::Singular(
            "constraint differential is rank-deficient".into(),
        ));
    }
    let complement = householder_complement(&rows)?;
    Ok(complement.iter().map(|c| basis.combine(c)).collect())
}

/// Regular-value diagnostics at a point, including the closed-form
/// commutator gradient when the constraint is the bilinear column form.
#[derive(Debug, Clone)]
pub struct RegularityReport {
    pub gradient_norms: Vec<f64>,
    pub sigma_min: f64,
    /// Max |commutator expression − calculus gradient| over the basis
    /// (bilinear column specs only).
    pub commutator_discrepancy: Option<f64>,
}

/// The closed-form differential of `Φ_H(z) = z_1^t H conj(z_2)` along
/// `W` at `p`: `dΦ(W) = ([W^t, p^t H conj(p)])_{12}`. `W` may be any
/// complex matrix, which realizes the holomorphic extension of the
/// differential to the complexified algebra.
pub fn bilinear_gradient_formula(h: &CMat, p: &GroupElement, w: &CMat) -> C64 {
    let k = p.mat().transpose().mul(h).mul(&p.mat().conj());
    let bracket = w.transpose().commutator(&k);
    bracket[(0, 1)]
}

/// Evaluate the regularity diagnostics at a (not necessarily projected)
/// point.
pub fn regularity_check(ls: &LevelSetSpec, p: &GroupElement) -> Result<RegularityReport> {
    let basis = build_basis(&ls.spec)?;
    let scheme = FdScheme::default();
    let rows = ls.constraint.jacobian(p, &basis, &scheme)?;
    let gradient_norms = rows
        .iter()
        .map(|r| libm::sqrt(r.iter().map(|x| x * x).sum()))
        .collect();
    let sigma_min = gram_sigma_min(&rows);
    let commutator_discrepancy = match (&ls.h_matrix, &ls.constraint) {
        (Some(h), Constraint::Complex(field)) => {
            let grads = calculus::gradient_coeffs(field, p, &basis, &scheme)?;
            let mut worst = 0.0f64;
            for (x, g) in basis.iter().zip(&grads) {
                let formula = bilinear_gradient_formula(h, p, x.mat());
                worst = worst.max((formula - g).norm());
            }
            Some(worst)
        }
        _ => None,
    };
    Ok(RegularityReport {
        gradient_norms,
        sigma_min,
        commutator_discrepancy,
    })
}

/// Finite-difference mean-curvature estimate at a projected point.
#[derive(Debug, Clone)]
pub struct CurvatureReport {
    pub h: f64,
    pub tangent_dim: usize,
    /// Norm of the normal component of `Σ_i c_i''(0)` in the algebra chart.
    pub normal_norm: f64,
    /// Normal acceleration magnitude per tangent direction.
    pub per_direction: Vec<f64>,
}

/// Estimate the mean-curvature vector at `point` by projecting curves
/// `t ↦ Π(p·exp(t t_i))` back to the level set, pulling the three curve
/// samples into the algebra chart by `log(p^{-1}·)`, and central
/// differencing. Minimality means the reported norm is O(h²)-small.
pub fn mean_curvature(ls: &LevelSetSpec, point: &ManifoldPoint, h: f64) -> Result<CurvatureReport> {
    if !(1e-4..=1e-2).contains(&h) {
        return Err(Error::Precondition(format!(
            "h = {h:.3e} outside [1e-4, 1e-2]"
        )));
    }
    let basis = build_basis(&ls.spec)?;
    // probe projections run to the evaluation noise floor so the h²
    // truncation signal stays above the position-error noise (~tol/h²)
    let proj_tol = 2e-15;
    let p_inv = point.element.inverse();
    let mut total = CMat::zeros(ls.spec.matrix_size(), ls.spec.matrix_size());
    let mut per_direction = Vec::with_capacity(point.tangent.len());
    let mut accels: Vec<Vec<f64>> = Vec::with_capacity(point.tangent.len());
    for t_dir in &point.tangent {
        let mut chart = [CMat::zeros(1, 1), CMat::zeros(1, 1)];
        for (slot, sgn) in [(0usize, 1.0f64), (1usize, -1.0f64)] {
            let moved = group_exp(&point.element, t_dir, sgn * h)?;
            let projected = newton_project(ls, &moved, 40, proj_tol).map_err(|e| {
                Error::NonConvergence(format!("probe-curve projection failed: {e}"))
            })?;
            let rel = p_inv.mul(&projected.element)?;
            let log = linalg::logm_unitary(rel.mat())?;
            // keep the anti-Hermitian part; the Hermitian residue is roundoff
            chart[slot] = log.sub(&log.adjoint()).scale(C64::new(0.5, 0.0));
        }
        let accel = chart[0].add(&chart[1]).scale(C64::new(1.0 / (h * h), 0.0));
        let coeffs = basis.coefficients(&AlgebraVector::new_unchecked(ls.spec, accel.clone()));
        accels.push(coeffs);
        total.add_assign(&accel);
    }
    let total_coeffs = basis.coefficients(&AlgebraVector::new_unchecked(ls.spec, total));
    let tangent_coeffs: Vec<Vec<f64>> = point
        .tangent
        .iter()
        .map(|t| basis.coefficients(t))
        .collect();
    let normal_part = |coeffs: &[f64]| -> Vec<f64> {
        let mut out = coeffs.to_vec();
        for t in &tangent_coeffs {
            let dot: f64 = out.iter().zip(t).map(|(a, b)| a * b).sum();
            for (o, ti) in out.iter_mut().zip(t) {
                *o -= dot * ti;
            }
        }
        out
    };
    for coeffs in &accels {
        let n = normal_part(coeffs);
        per_direction.push(libm::sqrt(n.iter().map(|x| x * x).sum()));
    }
    let total_normal = normal_part(&total_coeffs);
    Ok(CurvatureReport {
        h,
        tangent_dim: point.tangent.len(),
        normal_norm: libm::sqrt(total_normal.iter().map(|x| x * x).sum()),
        per_direction,
    })
}

/// A sampled point cloud on the level set.
#[derive(Debug, Clone)]
pub struct SampleCloud {
    pub points: Vec<ManifoldPoint>,
    pub attempts: usize,
    /// Set when the yield fell below half of the request.
    pub low_yield: bool,
}

/// Draw `count` points on the level set from Haar starts followed by
/// Newton projection; near-duplicate landings are dropped.
pub fn sample_manifold(
    ls: &LevelSetSpec,
    count: usize,
    seed: u64,
    proj_tol: f64,
) -> Result<SampleCloud> {
    let mut stream = GaussStream::new(seed);
    let mut points: Vec<ManifoldPoint> = Vec::with_capacity(count);
    let mut attempts = 0usize;
    let budget = 4 * count + 8;
    let dedup_floor = 1e-8;
    while points.len() < count && attempts < budget {
        attempts += 1;
        let start = haar_sample_stream(&ls.spec, &mut stream);
        match newton_project(ls, &start, 30, proj_tol) {
            Ok(pt) => {
                let dup = points
                    .iter()
                    .any(|q| q.element.distance(&pt.element) < dedup_floor);
                if !dup {
                    points.push(pt);
                }
            }
            Err(Error::Singular(m)) => return Err(Error::Singular(m)),
            Err(_) => {}
        }
    }
    let low_yield = points.len() * 2 < count;
    Ok(SampleCloud {
        points,
        attempts,
        low_yield,
    })
}

/// True when all eigenvalues of `h` are pairwise separated by more than
/// `rel_gap ×` the spectral radius.
pub fn distinct_eigenvalues(h: &CMat, rel_gap: f64) -> Result<bool> {
    if !h.is_square() {
        return Err(Error::InvalidSpec(
            "eigenvalue test needs a square matrix".into(),
        ));
    }
    let eigs = eigenvalues(h)?;
    let radius = eigs
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(1e-300);
    let mut min_gap = f64::INFINITY;
    for i in 0..eigs.len() {
        for j in i + 1..eigs.len() {
            min_gap = min_gap.min((eigs[i] - eigs[j]).norm());
        }
    }
    Ok(min_gap > rel_gap * radius)
}

/// Deterministic random matrix with provably distinct eigenvalues:
/// separated diagonal values conjugated by a Haar unitary, with a small
/// Gaussian perturbation of the eigenvalues.
pub fn random_distinct_matrix(n: usize, seed: u64) -> Result<CMat> {
    if n < 2 {
        return Err(Error::InvalidSpec("need n >= 2".into()));
    }
    let mut stream = GaussStream::new(seed ^ 0x9e3779b97f4a7c15);
    let spec = GroupSpec::su(n)?;
    let u = haar_sample_stream(&spec, &mut stream);
    let d: Vec<C64> = (0..n)
        .map(|i| {
            C64::new(
                1.0 + i as f64 + 0.2 * stream.next_gauss(),
                0.3 * stream.next_gauss(),
            )
        })
        .collect();
    let dm = CMat::diag(&d);
    let u_inv = u.inverse();
    Ok(u.mat().mul(&dm).mul(u_inv.mat()))
}
