use super::{DomainPoint, MembershipVerdict, Verdict};
use crate::algebra::{roots, MonicPoly};
use crate::tolerance::ROOT_TOL;

/// Membership in `G_n` (open) or `Gamma_n` (`closed`), read off the roots of
/// `z^n - y_1 z^{n-1} + y_2 z^{n-2} - ... + (-1)^n q`.
///
/// The margin is `1 - max |root|`; a root-finder failure yields
/// `Indeterminate`.
pub fn in_gn(y: &DomainPoint, closed: bool) -> MembershipVerdict {
    in_gn_with(y, closed, ROOT_TOL)
}

pub fn in_gn_with(y: &DomainPoint, closed: bool, root_tol: f64) -> MembershipVerdict {
    let coeffs = y.coords().iter().enumerate().map(|(k, &c)| if k % 2 == 0 { -c } else { c }).collect();
    let found = MonicPoly::new(coeffs).and_then(|p| roots(&p));
    match found {
        Ok(rs) => {
            let (radius, idx) = rs.iter().enumerate().map(|(i, z)| (z.norm(), i + 1)).fold((0.0, 0), |best, cur| {
                if cur.0 > best.0 {
                    cur
                } else {
                    best
                }
            });
            let margin = 1.0 - radius;
            let inside = if closed { margin >= -root_tol } else { margin > root_tol };
            MembershipVerdict::from_margin(margin, idx, inside)
        }
        Err(_) => MembershipVerdict { verdict: Verdict::Indeterminate, margin: 0.0, binding_j: 0 },
    }
}
