//! Complex scalar fields on a group.
//!
//! A field carries a structure tag. Three tags admit exact first and
//! second derivatives along exponential curves `t ↦ p·exp(tX)`:
//!
//! * coefficient fields `q(g a, c)` for the Hermitian form, its
//!   conjugate, and the symmetric bilinear form;
//! * adjoint coefficients `⟨g A g^{-1}, B⟩`;
//! * polynomials in child fields.
//!
//! Everything else is a black box and is differentiated by central
//! differences in the calculus module.

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::linalg::{bdot, vdot, CMat, C64};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

/// Value, first and second derivative of a function along one curve;
/// a truncated jet that multiplies like a polynomial algebra element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub v: C64,
    pub d1: C64,
    pub d2: C64,
}

#[allow(clippy::should_implement_trait)] // jet algebra mirrors the matrix naming
impl Jet2 {
    pub const ZERO: Jet2 = Jet2 {
        v: C64::ZERO,
        d1: C64::ZERO,
        d2: C64::ZERO,
    };

    pub fn constant(v: C64) -> Jet2 {
        Jet2 {
            v,
            d1: C64::ZERO,
            d2: C64::ZERO,
        }
    }

    pub fn mul(self, o: Jet2) -> Jet2 {
        Jet2 {
            v: self.v * o.v,
            d1: self.v * o.d1 + self.d1 * o.v,
            d2: self.v * o.d2 + C64::new(2.0, 0.0) * self.d1 * o.d1 + self.d2 * o.v,
        }
    }

    pub fn add(self, o: Jet2) -> Jet2 {
        Jet2 {
            v: self.v + o.v,
            d1: self.d1 + o.d1,
            d2: self.d2 + o.d2,
        }
    }

    pub fn scale(self, z: C64) -> Jet2 {
        Jet2 {
            v: self.v * z,
            d1: self.d1 * z,
            d2: self.d2 * z,
        }
    }

    pub fn powi(self, e: u32) -> Jet2 {
        let mut acc = Jet2::constant(C64::ONE);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn conj(self) -> Jet2 {
        Jet2 {
            v: self.v.conj(),
            d1: self.d1.conj(),
            d2: self.d2.conj(),
        }
    }

    /// Jet of the quotient self/other at a point where `other.v != 0`.
    pub fn div(self, o: Jet2) -> Jet2 {
        let v2 = o.v * o.v;
        let v3 = v2 * o.v;
        let two = C64::new(2.0, 0.0);
        Jet2 {
            v: self.v / o.v,
            d1: (self.d1 * o.v - self.v * o.d1) / v2,
            d2: (self.d2 * v2 - self.v * o.v * o.d2 - two * o.v * self.d1 * o.d1
                + two * self.v * o.d1 * o.d1)
                / v3,
        }
    }
}

/// Which first-order coefficient form a field uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffForm {
    /// `⟨g a, c⟩` — Hermitian, linear in `g a`.
    Hermitian,
    /// `⟨c, g a⟩` — conjugate of the Hermitian coefficient.
    HermitianDual,
    /// `(g a, c) = Σ_i (g a)_i c_i` — symmetric bilinear (orthogonal groups).
    Bilinear,
}

/// One monomial of a polynomial field.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyTerm {
    pub coeff: C64,
    /// One exponent per child field.
    pub exponents: Vec<u32>,
}

#[derive(Clone)]
pub enum FieldKind {
    Coefficient {
        form: CoeffForm,
        a: Vec<C64>,
        c: Vec<C64>,
    },
    Adjoint {
        a: CMat,
        b: CMat,
    },
    Poly {
        children: Vec<ScalarField>,
        terms: Vec<PolyTerm>,
    },
    Opaque(Arc<dyn Fn(&CMat) -> C64 + Send + Sync>),
}

impl core::fmt::Debug for FieldKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FieldKind::Coefficient { form, .. } => write!(f, "Coefficient({form:?})"),
            FieldKind::Adjoint { .. } => write!(f, "Adjoint"),
            FieldKind::Poly { children, terms } => {
                write!(
                    f,
                    "Poly({} children, {} terms)",
                    children.len(),
                    terms.len()
                )
            }
            FieldKind::Opaque(_) => write!(f, "Opaque"),
        }
    }
}

/// A complex-valued function on a group, tagged with its structure.
#[derive(Debug, Clone)]
pub struct ScalarField {
    spec: GroupSpec,
    kind: FieldKind,
}

impl ScalarField {
    pub fn coefficient(spec: GroupSpec, form: CoeffForm, a: Vec<C64>, c: Vec<C64>) -> Result<Self> {
        let m = spec.matrix_size();
        if a.len() != m || c.len() != m {
            return Err(Error::InvalidSpec(format!(
                "coefficient vectors must have length {m} for {}",
                spec.name()
            )));
        }
        Ok(ScalarField {
            spec,
            kind: FieldKind::Coefficient { form, a, c },
        })
    }

    /// Adjoint-representation coefficient `⟨g A g^{-1}, B⟩ = tr(g A g^* B^*)`.
    pub fn adjoint_coefficient(spec: GroupSpec, a: CMat, b: CMat) -> Result<Self> {
        let m = spec.matrix_size();
        if a.nrows() != m || a.ncols() != m || b.nrows() != m || b.ncols() != m {
            return Err(Error::InvalidSpec(format!(
                "adjoint coefficient matrices must be {m}x{m}"
            )));
        }
        Ok(ScalarField {
            spec,
            kind: FieldKind::Adjoint { a, b },
        })
    }

    pub fn poly(spec: GroupSpec, children: Vec<ScalarField>, terms: Vec<PolyTerm>) -> Result<Self> {
        for ch in &children {
            if ch.spec != spec {
                return Err(Error::SpecMismatch(
                    "polynomial child on a different group".into(),
                ));
            }
        }
        for t in &terms {
            if t.exponents.len() != children.len() {
                return Err(Error::InvalidSpec("polynomial term arity mismatch".into()));
            }
        }
        Ok(ScalarField {
            spec,
            kind: FieldKind::Poly { children, terms },
        })
    }

    pub fn constant(spec: GroupSpec, z: C64) -> Self {
        ScalarField {
            spec,
            kind: FieldKind::Poly {
                children: Vec::new(),
                terms: alloc::vec![PolyTerm {
                    coeff: z,
                    exponents: Vec::new()
                }],
            },
        }
    }

    pub fn opaque(spec: GroupSpec, f: impl Fn(&CMat) -> C64 + Send + Sync + 'static) -> Self {
        ScalarField {
            spec,
            kind: FieldKind::Opaque(Arc::new(f)),
        }
    }

    /// Product of two fields as an exact polynomial field.
    pub fn product(f: &ScalarField, g: &ScalarField) -> Result<Self> {
        if f.spec != g.spec {
            return Err(Error::SpecMismatch(
                "product of fields on different groups".into(),
            ));
        }
        ScalarField::poly(
            f.spec,
            alloc::vec![f.clone(), g.clone()],
            alloc::vec![PolyTerm {
                coeff: C64::ONE,
                exponents: alloc::vec![1, 1]
            }],
        )
    }

    /// `Σ_i z_i f_i` as an exact polynomial field.
    pub fn linear_combination(
        spec: GroupSpec,
        fields: &[ScalarField],
        coeffs: &[C64],
    ) -> Result<Self> {
        if fields.len() != coeffs.len() {
            return Err(Error::InvalidSpec("combination length mismatch".into()));
        }
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, &z)| {
                let mut e = alloc::vec![0u32; fields.len()];
                e[i] = 1;
                PolyTerm {
                    coeff: z,
                    exponents: e,
                }
            })
            .collect();
        ScalarField::poly(spec, fields.to_vec(), terms)
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    /// True when exact derivatives are available for this field.
    pub fn is_structured(&self) -> bool {
        match &self.kind {
            FieldKind::Opaque(_) => false,
            FieldKind::Poly { children, .. } => children.iter().all(ScalarField::is_structured),
            _ => true,
        }
    }

    /// Complex conjugate field, staying structured whenever possible.
    pub fn conjugate(&self) -> ScalarField {
        let kind = match &self.kind {
            FieldKind::Coefficient { form, a, c } => match form {
                CoeffForm::Hermitian => FieldKind::Coefficient {
                    form: CoeffForm::HermitianDual,
                    a: a.clone(),
                    c: c.clone(),
                },
                CoeffForm::HermitianDual => FieldKind::Coefficient {
                    form: CoeffForm::Hermitian,
                    a: a.clone(),
                    c: c.clone(),
                },
                // on the real orthogonal realization conj((ga)·c) = (g conj a)·conj c
                CoeffForm::Bilinear => FieldKind::Coefficient {
                    form: CoeffForm::Bilinear,
                    a: a.iter().map(|z| z.conj()).collect(),
                    c: c.iter().map(|z| z.conj()).collect(),
                },
            },
            // conj ⟨gAg^{-1}, B⟩ = ⟨g A^* g^{-1}, B^*⟩
            FieldKind::Adjoint { a, b } => FieldKind::Adjoint {
                a: a.adjoint(),
                b: b.adjoint(),
            },
            FieldKind::Poly { children, terms } => FieldKind::Poly {
                children: children.iter().map(ScalarField::conjugate).collect(),
                terms: terms
                    .iter()
                    .map(|t| PolyTerm {
                        coeff: t.coeff.conj(),
                        exponents: t.exponents.clone(),
                    })
                    .collect(),
            },
            FieldKind::Opaque(f) => {
                let f = f.clone();
                FieldKind::Opaque(Arc::new(move |m: &CMat| f(m).conj()))
            }
        };
        ScalarField {
            spec: self.spec,
            kind,
        }
    }

    pub fn eval(&self, p: &GroupElement) -> C64 {
        debug_assert_eq!(p.spec(), self.spec);
        self.eval_mat(p.mat())
    }

    /// Evaluate directly on a raw matrix (used by black-box wrappers
    /// and by curve evaluation in the finite-difference path).
    pub fn eval_mat(&self, g: &CMat) -> C64 {
        match &self.kind {
            FieldKind::Coefficient { form, a, c } => {
                let ga = g.matvec(a);
                match form {
                    CoeffForm::Hermitian => vdot(&ga, c),
                    CoeffForm::HermitianDual => vdot(&ga, c).conj(),
                    CoeffForm::Bilinear => bdot(&ga, c),
                }
            }
            FieldKind::Adjoint { a, b } => g.mul(a).mul(&g.adjoint()).hs_inner(b),
            FieldKind::Poly { children, terms } => {
                let vals: Vec<C64> = children.iter().map(|ch| ch.eval_mat(g)).collect();
                let mut acc = C64::ZERO;
                for t in terms {
                    let mut prod = t.coeff;
                    for (v, &e) in vals.iter().zip(&t.exponents) {
                        for _ in 0..e {
                            prod *= v;
                        }
                    }
                    acc += prod;
                }
                acc
            }
            FieldKind::Opaque(f) => f(g),
        }
    }

    /// Exact jet along `t ↦ p·exp(tX)` at `t = 0`, when the structure
    /// supports it.
    pub fn exact_jet(&self, p: &CMat, x: &CMat) -> Option<Jet2> {
        match &self.kind {
            FieldKind::Coefficient { form, a, c } => {
                let xa = x.matvec(a);
                let xxa = x.matvec(&xa);
                let u0 = p.matvec(a);
                let u1 = p.matvec(&xa);
                let u2 = p.matvec(&xxa);
                let jet = match form {
                    CoeffForm::Hermitian => Jet2 {
                        v: vdot(&u0, c),
                        d1: vdot(&u1, c),
                        d2: vdot(&u2, c),
                    },
                    CoeffForm::HermitianDual => Jet2 {
                        v: vdot(&u0, c).conj(),
                        d1: vdot(&u1, c).conj(),
                        d2: vdot(&u2, c).conj(),
                    },
                    CoeffForm::Bilinear => Jet2 {
                        v: bdot(&u0, c),
                        d1: bdot(&u1, c),
                        d2: bdot(&u2, c),
                    },
                };
                Some(jet)
            }
            FieldKind::Adjoint { a, b } => {
                let c1 = x.commutator(a);
                let c2 = x.commutator(&c1);
                let padj = p.adjoint();
                let val = |mat: &CMat| p.mul(mat).mul(&padj).hs_inner(b);
                Some(Jet2 {
                    v: val(a),
                    d1: val(&c1),
                    d2: val(&c2),
                })
            }
            FieldKind::Poly { children, terms } => {
                let mut jets: Vec<Jet2> = Vec::with_capacity(children.len());
                for ch in children {
                    jets.push(ch.exact_jet(p, x)?);
                }
                let mut acc = Jet2::ZERO;
                for t in terms {
                    let mut prod = Jet2::constant(t.coeff);
                    for (jet, &e) in jets.iter().zip(&t.exponents) {
                        if e > 0 {
                            prod = prod.mul(jet.powi(e));
                        }
                    }
                    acc = acc.add(prod);
                }
                Some(acc)
            }
            FieldKind::Opaque(_) => None,
        }
    }
}
