//! Numerical tolerances shared by the verification routines.

use serde::Serialize;

/// Pass thresholds and step sizes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Residual pass threshold for dynamical r-matrix checks.
    pub residual: f64,
    /// Distance to a pole of `coth` treated as a pole.
    pub pole: f64,
    /// Threshold for identities that hold to rounding (Lagrangian checks, obstructions).
    pub strict: f64,
    /// Step for central finite differences on groups.
    pub fd_step: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual: 1e-9,
            pole: 1e-12,
            strict: 1e-10,
            fd_step: 1e-5,
        }
    }
}

impl Tolerances {
    /// Defaults with the residual threshold replaced.
    pub fn with_residual(residual: f64) -> Self {
        Tolerances {
            residual,
            ..Self::default()
        }
    }
}
