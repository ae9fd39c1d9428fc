//! Centralized numerical tolerances.
//!
//! Every threshold used by the library lives here so that a verification
//! run can be audited against one table instead of scattered literals.

/// Tolerance bundle shared by all modules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Group-membership residual (unitarity, realness, symplectic form,
    /// determinant) accepted for `GroupElement`s.
    pub membership: f64,
    /// Deviation of the algebra Gram matrix from the identity.
    pub gram: f64,
    /// Residual accepted by the polar retraction before it reports failure.
    pub retraction: f64,
    /// Default |Psi| target for Newton projection onto a level set.
    pub level_set: f64,
    /// Smallest singular value of a constraint differential that still
    /// counts as regular inside Newton projection.
    pub rank: f64,
    /// Default pass tolerance for eigenfamily verification reports.
    pub verify: f64,
    /// Step for finite-difference first derivatives.
    pub fd_first_step: f64,
    /// Step for finite-difference second derivatives.
    pub fd_second_step: f64,
}

impl Tolerances {
    /// The defaults used by the CLI and the acceptance suite.
    pub const fn standard() -> Self {
        Tolerances {
            membership: 1e-12,
            gram: 1e-12,
            retraction: 1e-10,
            level_set: 1e-12,
            rank: 1e-8,
            verify: 1e-8,
            fd_first_step: 1e-5,
            fd_second_step: 1e-3,
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::standard()
    }
}
