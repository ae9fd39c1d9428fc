//! Projective-line valued maps `p ↦ [P(Φ(p)), Q(Φ(p))]` built from an
//! eigenfamily and two linearly independent homogeneous polynomials of
//! the same degree.
//!
//! Harmonicity and horizontal conformality are verified in an affine
//! chart: with `u = P∘Φ` and `v = Q∘Φ` the chart field is `f = u/v` and
//! the map is a harmonic morphism exactly where `τ(f) = 0` and
//! `κ(f,f) = 0`. Chart checks are conformally invariant for surface
//! targets, so no Fubini–Study machinery is needed.

use crate::calculus::{self, FdScheme};
use crate::error::{Error, Result};
use crate::families::EigenFamily;
use crate::fields::{Jet2, PolyTerm, ScalarField};
use crate::group::{build_basis, haar_points, GroupElement, GroupSpec};
use crate::linalg::{CMat, C64};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// A sparse homogeneous polynomial in `vars` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousPoly {
    vars: usize,
    degree: u32,
    terms: Vec<(Vec<u32>, C64)>,
}

impl HomogeneousPoly {
    pub fn new(vars: usize, terms: Vec<(Vec<u32>, C64)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Precondition(
                "polynomial needs at least one term".into(),
            ));
        }
        let mut degree: Option<u32> = None;
        for (idx, coeff) in &terms {
            if idx.len() != vars {
                return Err(Error::InvalidSpec(format!(
                    "multi-index arity {} does not match {vars} variables",
                    idx.len()
                )));
            }
            let d: u32 = idx.iter().sum();
            match degree {
                None => degree = Some(d),
                Some(existing) if existing != d => {
                    return Err(Error::Precondition(format!(
                        "mixed degrees {existing} and {d}: polynomial is not homogeneous"
                    )));
                }
                _ => {}
            }
            if !coeff.re.is_finite() || !coeff.im.is_finite() {
                return Err(Error::Numerical("non-finite polynomial coefficient".into()));
            }
        }
        if terms.iter().all(|(_, c)| c.norm() == 0.0) {
            return Err(Error::Precondition(
                "polynomial has no nonzero coefficient".into(),
            ));
        }
        Ok(HomogeneousPoly {
            vars,
            degree: degree.unwrap(),
            terms,
        })
    }

    /// Single monomial `x_i^1 ... up to degree 1` convenience: `x_var`.
    pub fn variable(vars: usize, var: usize) -> Result<Self> {
        let mut idx = alloc::vec![0u32; vars];
        idx[var] = 1;
        Self::new(vars, alloc::vec![(idx, C64::ONE)])
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[(Vec<u32>, C64)] {
        &self.terms
    }

    pub fn eval(&self, x: &[C64]) -> C64 {
        assert_eq!(x.len(), self.vars);
        let mut acc = C64::ZERO;
        for (idx, coeff) in &self.terms {
            let mut prod = *coeff;
            for (xi, &e) in x.iter().zip(idx) {
                for _ in 0..e {
                    prod *= xi;
                }
            }
            acc += prod;
        }
        acc
    }

    pub fn scale(&self, z: C64) -> Self {
        HomogeneousPoly {
            vars: self.vars,
            degree: self.degree,
            terms: self.terms.iter().map(|(i, c)| (i.clone(), c * z)).collect(),
        }
    }

    fn to_terms(&self) -> Vec<PolyTerm> {
        self.terms
            .iter()
            .map(|(idx, c)| PolyTerm {
                coeff: *c,
                exponents: idx.clone(),
            })
            .collect()
    }
}

/// Hermitian Cauchy–Schwarz test of linear independence of the
/// coefficient vectors over the merged monomial support.
pub fn linearly_independent(p: &HomogeneousPoly, q: &HomogeneousPoly) -> bool {
    let mut support: Vec<&Vec<u32>> = p
        .terms
        .iter()
        .chain(q.terms.iter())
        .map(|(i, _)| i)
        .collect();
    support.sort();
    support.dedup();
    let coeff_of = |poly: &HomogeneousPoly, idx: &Vec<u32>| -> C64 {
        poly.terms
            .iter()
            .filter(|(i, _)| i == idx)
            .map(|(_, c)| *c)
            .sum()
    };
    let mut pp = 0.0f64;
    let mut qq = 0.0f64;
    let mut pq = C64::ZERO;
    for idx in support {
        let a = coeff_of(p, idx);
        let b = coeff_of(q, idx);
        pp += a.norm_sqr();
        qq += b.norm_sqr();
        pq += a * b.conj();
    }
    let cross = pp * qq - pq.norm_sqr();
    cross > 1e-12 * pp.max(1e-300) * qq.max(1e-300)
}

/// Which affine chart a verification runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    /// `f = (P∘Φ) / (Q∘Φ)`, guarded by `|Q∘Φ|`.
    POverQ,
    /// `f = (Q∘Φ) / (P∘Φ)`, guarded by `|P∘Φ|`.
    QOverP,
}

/// A projective-line valued map with its chart fields.
#[derive(Debug, Clone)]
pub struct ProjectiveMorphism {
    spec: GroupSpec,
    label: String,
    p_poly: HomogeneousPoly,
    q_poly: HomogeneousPoly,
    u: ScalarField,
    v: ScalarField,
}

/// Build the map `[P∘Φ, Q∘Φ]` over the chosen members of a family.
pub fn build_morphism(
    family: &EigenFamily,
    member_indices: Option<&[usize]>,
    p_poly: HomogeneousPoly,
    q_poly: HomogeneousPoly,
) -> Result<ProjectiveMorphism> {
    let members: Vec<ScalarField> = match member_indices {
        None => family.members().to_vec(),
        Some(sel) => sel
            .iter()
            .map(|&i| {
                family
                    .members()
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::InvalidSpec(format!("member index {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let k = members.len();
    if p_poly.vars() != k || q_poly.vars() != k {
        return Err(Error::Precondition(format!(
            "polynomials must have {k} variables (got {} and {})",
            p_poly.vars(),
            q_poly.vars()
        )));
    }
    if p_poly.degree() != q_poly.degree() {
        return Err(Error::Precondition(format!(
            "degree mismatch: deg P = {}, deg Q = {}",
            p_poly.degree(),
            q_poly.degree()
        )));
    }
    if !linearly_independent(&p_poly, &q_poly) {
        return Err(Error::Precondition("P and Q are linearly dependent".into()));
    }
    let spec = family.spec();
    let u = ScalarField::poly(spec, members.clone(), p_poly.to_terms())?;
    let v = ScalarField::poly(spec, members, q_poly.to_terms())?;
    Ok(ProjectiveMorphism {
        spec,
        label: format!("[P,Q] over {}", family.label()),
        p_poly,
        q_poly,
        u,
        v,
    })
}

impl ProjectiveMorphism {
    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn p_poly(&self) -> &HomogeneousPoly {
        &self.p_poly
    }

    pub fn q_poly(&self) -> &HomogeneousPoly {
        &self.q_poly
    }

    /// Homogeneous coordinates `(P∘Φ, Q∘Φ)` at a point.
    pub fn homogeneous(&self, p: &GroupElement) -> (C64, C64) {
        (self.u.eval(p), self.v.eval(p))
    }

    /// Black-box view of a chart field, for finite-difference cross
    /// checks.
    pub fn chart_field(&self, chart: Chart) -> ScalarField {
        let u = self.u.clone();
        let v = self.v.clone();
        match chart {
            Chart::POverQ => {
                ScalarField::opaque(self.spec, move |m: &CMat| u.eval_mat(m) / v.eval_mat(m))
            }
            Chart::QOverP => {
                ScalarField::opaque(self.spec, move |m: &CMat| v.eval_mat(m) / u.eval_mat(m))
            }
        }
    }

    /// Exact `(τ(f), κ(f,f))` of the chart field at one point, assembled
    /// from structured jets of numerator and denominator through the
    /// quotient rule.
    pub fn chart_residual(&self, p: &GroupElement, chart: Chart) -> Result<(C64, C64)> {
        let basis = build_basis(&self.spec)?;
        let scheme = FdScheme::default();
        let mut tau = C64::ZERO;
        let mut kap = C64::ZERO;
        for x in basis.iter() {
            let (ju, _) = calculus::jet2(&self.u, p, x, &scheme)?;
            let (jv, _) = calculus::jet2(&self.v, p, x, &scheme)?;
            let jet: Jet2 = match chart {
                Chart::POverQ => ju.div(jv),
                Chart::QOverP => jv.div(ju),
            };
            tau += jet.d2;
            kap += jet.d1 * jet.d1;
        }
        Ok((tau, kap))
    }
}

/// Report of a chart verification run.
#[derive(Debug, Clone)]
pub struct MorphismReport {
    pub samples_total: usize,
    pub samples_used: usize,
    pub max_tau: f64,
    pub max_kappa: f64,
    pub median_denominator: f64,
    /// Max |exact - finite difference| of τ(f) on a few spot-check points.
    pub fd_crosscheck: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    /// No sample survived the chart-boundary guard.
    pub inconclusive: bool,
}

fn median(mut xs: Vec<f64>) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

/// Verify `τ(f) = 0` and `κ(f,f) = 0` for the chart field over Haar
/// samples away from the chart boundary (denominator above
/// `guard_frac ×` its sample median).
pub fn verify_harmonic_morphism(
    m: &ProjectiveMorphism,
    samples: usize,
    seed: u64,
    tol: f64,
    guard_frac: f64,
    chart: Chart,
) -> Result<MorphismReport> {
    let spec = m.spec();
    let points = haar_points(&spec, samples, seed);
    let denom_abs: Vec<f64> = points
        .iter()
        .map(|p| {
            let (u, v) = m.homogeneous(p);
            match chart {
                Chart::POverQ => v.norm(),
                Chart::QOverP => u.norm(),
            }
        })
        .collect();
    let med = median(denom_abs.clone());
    let kept: Vec<&GroupElement> = points
        .iter()
        .zip(&denom_abs)
        .filter(|(_, &d)| d > guard_frac * med && d > 1e-12)
        .map(|(p, _)| p)
        .collect();
    if kept.is_empty() {
        return Ok(MorphismReport {
            samples_total: samples,
            samples_used: 0,
            max_tau: f64::INFINITY,
            max_kappa: f64::INFINITY,
            median_denominator: med,
            fd_crosscheck: None,
            tolerance: tol,
            passed: false,
            inconclusive: true,
        });
    }
    let mut max_tau = 0.0f64;
    let mut max_kappa = 0.0f64;
    for p in &kept {
        let (tau, kap) = m.chart_residual(p, chart)?;
        max_tau = max_tau.max(tau.norm());
        max_kappa = max_kappa.max(kap.norm());
    }
    // finite-difference cross check of the quotient calculus on a few points
    let basis = build_basis(&spec)?;
    let scheme = FdScheme::default();
    let bb = m.chart_field(chart);
    let mut fd_disc = 0.0f64;
    for p in kept.iter().take(3) {
        let (tau_exact, kap_exact) = m.chart_residual(p, chart)?;
        let tau_fd = calculus::laplacian(&bb, p, &basis, &scheme)?.value;
        let kap_fd = calculus::kappa(&bb, &bb, p, &basis, &scheme)?.value;
        fd_disc = fd_disc
            .max((tau_exact - tau_fd).norm())
            .max((kap_exact - kap_fd).norm());
    }
    let passed = max_tau < tol && max_kappa < tol;
    Ok(MorphismReport {
        samples_total: samples,
        samples_used: kept.len(),
        max_tau,
        max_kappa,
        median_denominator: med,
        fd_crosscheck: Some(fd_disc),
        tolerance: tol,
        passed,
        inconclusive: false,
    })
}

/// Statistical probe of the common zero set `Z = {P∘Φ = Q∘Φ = 0}`.
#[derive(Debug, Clone, Copy)]
pub struct SingularSetProbe {
    pub samples: usize,
    /// `min_p max(|P∘Φ(p)|, |Q∘Φ(p)|)` over the sample.
    pub min_of_max: f64,
    pub floor: f64,
    /// True when the minimum stayed above the floor — statistical
    /// evidence (not proof) that Z is empty.
    pub likely_empty: bool,
}

/// Sample `max(|P∘Φ|, |Q∘Φ|)` over Haar points and report its minimum.
pub fn singular_set_probe(
    m: &ProjectiveMorphism,
    samples: usize,
    seed: u64,
    floor: f64,
) -> SingularSetProbe {
    let spec = m.spec();
    let points = haar_points(&spec, samples, seed);
    let mut min_of_max = f64::INFINITY;
    for p in &points {
        let (u, v) = m.homogeneous(p);
        min_of_max = min_of_max.min(u.norm().max(v.norm()));
    }
    if samples == 0 {
        min_of_max = 0.0;
    }
    SingularSetProbe {
        samples,
        min_of_max,
        floor,
        likely_empty: min_of_max > floor,
    }
}
