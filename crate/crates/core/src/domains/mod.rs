//! Points of `G_n`, `Gamma_n`, `G~_n`, `Gamma~_n` and their membership tests.

mod gn;
mod gtilde;
mod point;
mod special;

use serde::{Deserialize, Serialize};

pub use gn::{in_gn, in_gn_with};
pub use gtilde::{
    beta_solve, char2_oracle, char2_oracle_on, char3, char5_construct, in_gammatilde, in_gammatilde_with, in_gtilde,
    in_gtilde_with, phi, phi_hinf, BetaDecomposition, Char2Grid, ContractionTuple, DEFAULT_GRID,
};
pub use point::{symmetrize, DomainPoint};
pub use special::{in_jn, in_kn, jn_verdict, kn_margin, kn_verdict};

/// Outcome of a membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Inside,
    OnBoundaryOrOutside,
    Indeterminate,
}

/// Verdict together with the slack of the tightest constraint.
///
/// `binding_j` is the 1-based index of that constraint, or 0 when the test
/// has no per-index structure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub verdict: Verdict,
    pub margin: f64,
    pub binding_j: usize,
}

impl MembershipVerdict {
    pub fn is_inside(&self) -> bool {
        self.verdict == Verdict::Inside
    }

    pub(crate) fn from_margin(margin: f64, binding_j: usize, inside: bool) -> Self {
        let verdict = if inside { Verdict::Inside } else { Verdict::OnBoundaryOrOutside };
        Self { verdict, margin, binding_j }
    }
}
