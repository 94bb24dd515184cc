//! Numerical tolerance bands.
//!
//! Closed inequalities (`<= 1`) are accepted up to [`CONTRACTION_TOL`] above
//! the bound; open inequalities must clear the bound by [`STRICT_BAND`].

/// Slack allowed above a closed bound such as `||X|| <= 1`.
pub const CONTRACTION_TOL: f64 = 1e-12;

/// Minimum slack for an open-domain membership claim.
pub const STRICT_BAND: f64 = 1e-9;

/// Root-modulus band for the polynomial test of the symmetrized polydisc.
pub const ROOT_TOL: f64 = 1e-9;

/// Relative tolerance for the proportionality constraints of `J_n` and `K_n`.
pub const PROPORTION_TOL: f64 = 1e-9;

/// Tolerance bundle threaded through the membership tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub strict_band: f64,
    pub closed_tol: f64,
    pub root_tol: f64,
    pub proportion_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            strict_band: STRICT_BAND,
            closed_tol: CONTRACTION_TOL,
            root_tol: ROOT_TOL,
            proportion_tol: PROPORTION_TOL,
        }
    }
}
