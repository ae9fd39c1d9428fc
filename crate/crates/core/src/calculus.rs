//! Derivative operators on scalar fields: directional derivatives along
//! exponential curves, the Laplace–Beltrami operator
//! `τ(f) = Σ_{X∈B} X²(f)`, left-translated gradients, and the
//! conformality operator `κ(f,g) = Σ_{X∈B} X(f) X(g)` (complex bilinear,
//! no conjugation).
//!
//! For the bi-invariant metric the connection term `Σ ∇_{X_i} X_i`
//! vanishes, so the plain second-derivative sum *is* the
//! Laplace–Beltrami operator.
//!
//! Structured fields are differentiated exactly; anything else falls
//! back to central differences along the same curves, with the method
//! recorded in the report.

use crate::error::Result;
use crate::fields::{Jet2, ScalarField};
use crate::group::{group_exp, AlgebraBasis, AlgebraVector, GroupElement};
use crate::linalg::C64;
use crate::tol::Tolerances;
use alloc::vec::Vec;

/// How a derivative value was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Exact,
    CentralDiff { order: u8, step: f64 },
}

impl Method {
    pub fn is_exact(&self) -> bool {
        matches!(self, Method::Exact)
    }

    fn merge(self, other: Method) -> Method {
        match (self, other) {
            (Method::Exact, m) | (m, Method::Exact) => m,
            (m, _) => m,
        }
    }
}

/// A derivative value together with the method that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeReport {
    pub value: C64,
    pub method: Method,
}

/// Finite-difference configuration. `order` is 2 or 4; the default is
/// the 4th-order scheme with steps 1e-5 (first) and 1e-3 (second
/// derivatives). The 2nd-order scheme exists so the O(h²) refinement
/// behaviour itself can be measured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdScheme {
    pub order: u8,
    pub first_step: f64,
    pub second_step: f64,
}

impl Default for FdScheme {
    fn default() -> Self {
        let t = Tolerances::standard();
        FdScheme {
            order: 4,
            first_step: t.fd_first_step,
            second_step: t.fd_second_step,
        }
    }
}

impl FdScheme {
    pub fn central2(first_step: f64, second_step: f64) -> Self {
        FdScheme {
            order: 2,
            first_step,
            second_step,
        }
    }
}

fn eval_along(f: &ScalarField, p: &GroupElement, x: &AlgebraVector, t: f64) -> Result<C64> {
    let q = group_exp(p, x, t)?;
    Ok(f.eval(&q))
}

fn fd_first(
    f: &ScalarField,
    p: &GroupElement,
    x: &AlgebraVector,
    scheme: &FdScheme,
) -> Result<C64> {
    let h = scheme.first_step;
    let v = if scheme.order == 2 {
        let fp = eval_along(f, p, x, h)?;
        let fm = eval_along(f, p, x, -h)?;
        (fp - fm) / C64::new(2.0 * h, 0.0)
    } else {
        let f1 = eval_along(f, p, x, h)?;
        let f2 = eval_along(f, p, x, 2.0 * h)?;
        let fm1 = eval_along(f, p, x, -h)?;
        let fm2 = eval_along(f, p, x, -2.0 * h)?;
        (-f2 + f1 * C64::new(8.0, 0.0) - fm1 * C64::new(8.0, 0.0) + fm2) / C64::new(12.0 * h, 0.0)
    };
    Ok(v)
}

fn fd_second(
    f: &ScalarField,
    p: &GroupElement,
    x: &AlgebraVector,
    scheme: &FdScheme,
) -> Result<C64> {
    let h = scheme.second_step;
    let f0 = f.eval(p);
    let v = if scheme.order == 2 {
        let fp = eval_along(f, p, x, h)?;
        let fm = eval_along(f, p, x, -h)?;
        (fp - f0 * C64::new(2.0, 0.0) + fm) / C64::new(h * h, 0.0)
    } else {
        let f1 = eval_along(f, p, x, h)?;
        let f2 = eval_along(f, p, x, 2.0 * h)?;
        let fm1 = eval_along(f, p, x, -h)?;
        let fm2 = eval_along(f, p, x, -2.0 * h)?;
        (-f2 - fm2 + (f1 + fm1) * C64::new(16.0, 0.0) - f0 * C64::new(30.0, 0.0))
            / C64::new(12.0 * h * h, 0.0)
    };
    Ok(v)
}

/// First derivative `d/dt f(p·exp(tX))` at `t = 0`.
pub fn directional_derivative(
    f: &ScalarField,
    p: &GroupElement,
    x: &AlgebraVector,
    scheme: &FdScheme,
) -> Result<DerivativeReport> {
    if let Some(jet) = f.exact_jet(p.mat(), x.mat()) {
        return Ok(DerivativeReport {
            value: jet.d1,
            method: Method::Exact,
        });
    }
    Ok(DerivativeReport {
        value: fd_first(f, p, x, scheme)?,
        method: Method::CentralDiff {
            order: scheme.order,
            step: scheme.first_step,
        },
    })
}

/// Second derivative along one curve.
pub fn second_directional(
    f: &ScalarField,
    p: &GroupElement,
    x: &AlgebraVector,
    scheme: &FdScheme,
) -> Result<DerivativeReport> {
    if let Some(jet) = f.exact_jet(p.mat(), x.mat()) {
        return Ok(DerivativeReport {
            value: jet.d2,
            method: Method::Exact,
        });
    }
    Ok(DerivativeReport {
        value: fd_second(f, p, x, scheme)?,
        method: Method::CentralDiff {
            order: scheme.order,
            step: scheme.second_step,
        },
    })
}

/// Laplace–Beltrami operator `τ(f)(p) = Σ_{X∈B} d²/dt² f(p·exp(tX))`.
pub fn laplacian(
    f: &ScalarField,
    p: &GroupElement,
    basis: &AlgebraBasis,
    scheme: &FdScheme,
) -> Result<DerivativeReport> {
    let mut acc = C64::ZERO;
    let mut method = Method::Exact;
    for x in basis.iter() {
        let r = second_directional(f, p, x, scheme)?;
        acc += r.value;
        method = method.merge(r.method);
    }
    Ok(DerivativeReport { value: acc, method })
}

/// Coefficients `(X(f)(p))_{X∈B}` of the left-translated gradient.
pub fn gradient_coeffs(
    f: &ScalarField,
    p: &GroupElement,
    basis: &AlgebraBasis,
    scheme: &FdScheme,
) -> Result<Vec<C64>> {
    basis
        .iter()
        .map(|x| directional_derivative(f, p, x, scheme).map(|r| r.value))
        .collect()
}

/// Conformality operator `κ(f,g)(p) = Σ_{X∈B} X(f)(p) · X(g)(p)`.
pub fn kappa(
    f: &ScalarField,
    g: &ScalarField,
    p: &GroupElement,
    basis: &AlgebraBasis,
    scheme: &FdScheme,
) -> Result<DerivativeReport> {
    let mut acc = C64::ZERO;
    let mut method = Method::Exact;
    for x in basis.iter() {
        let rf = directional_derivative(f, p, x, scheme)?;
        let rg = directional_derivative(g, p, x, scheme)?;
        acc += rf.value * rg.value;
        method = method.merge(rf.method).merge(rg.method);
    }
    Ok(DerivativeReport { value: acc, method })
}

/// κ from precomputed gradient coefficient vectors.
pub fn kappa_from_grads(gf: &[C64], gg: &[C64]) -> C64 {
    debug_assert_eq!(gf.len(), gg.len());
    gf.iter().zip(gg).map(|(a, b)| a * b).sum()
}

/// Exact jet when available, finite differences otherwise.
pub fn jet2(
    f: &ScalarField,
    p: &GroupElement,
    x: &AlgebraVector,
    scheme: &FdScheme,
) -> Result<(Jet2, Method)> {
    if let Some(jet) = f.exact_jet(p.mat(), x.mat()) {
        return Ok((jet, Method::Exact));
    }
    let v = f.eval(p);
    let d1 = fd_first(f, p, x, scheme)?;
    let d2 = fd_second(f, p, x, scheme)?;
    Ok((
        Jet2 { v, d1, d2 },
        Method::CentralDiff {
            order: scheme.order,
            step: scheme.first_step,
        },
    ))
}

/// Check of the second-order product rule
/// `τ(fg) = f τ(g) + g τ(f) + 2 κ(f,g)` at one point.
pub fn product_rule_check(
    f: &ScalarField,
    g: &ScalarField,
    p: &GroupElement,
    basis: &AlgebraBasis,
    scheme: &FdScheme,
    tol: f64,
) -> Result<bool> {
    let prod = ScalarField::product(f, g)?;
    let lhs = laplacian(&prod, p, basis, scheme)?.value;
    let tf = laplacian(f, p, basis, scheme)?.value;
    let tg = laplacian(g, p, basis, scheme)?.value;
    let k = kappa(f, g, p, basis, scheme)?.value;
    let rhs = f.eval(p) * tg + g.eval(p) * tf + C64::new(2.0, 0.0) * k;
    Ok((lhs - rhs).norm() < tol)
}
