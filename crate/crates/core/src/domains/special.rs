use super::{in_gtilde, DomainPoint, MembershipVerdict};
use crate::algebra::{binom, Cplx};

fn close(a: Cplx, b: Cplx, tol: f64) -> bool {
    (a - b).norm() <= tol * 1f64.max(a.norm()).max(b.norm())
}

/// The proportionality constraints shared by `J_n` and `K_n`, on the
/// coordinates `x_1..x_n` (1-based).
fn proportional(x: &[Cplx], tol: f64) -> bool {
    let n = x.len();
    let nf = n as f64;
    let (first, last) = (x[0], x[n - 2]);
    let at = |j: usize| x[j - 1];
    let top = if n % 2 == 1 { n / 2 } else { (n / 2).saturating_sub(1) };
    for j in 2..=top {
        let w = binom(n, j) / nf;
        if !close(at(j), w * first, tol) || !close(at(n - j), w * last, tol) {
            return false;
        }
    }
    if n % 2 == 0 {
        let mid = binom(n, n / 2) * (first + last) / (2.0 * nf);
        if !close(at(n / 2), mid, tol) {
            return false;
        }
    }
    true
}

/// Membership in `J_n`: a point of `G~_n` satisfying the proportionality
/// constraints within relative tolerance `tol`.
pub fn in_jn(y: &DomainPoint, tol: f64) -> bool {
    proportional(&y.coords(), tol) && in_gtilde(y).is_inside()
}

/// [`in_jn`] as a verdict carrying the `G~_n` margin.
pub fn jn_verdict(y: &DomainPoint, tol: f64) -> MembershipVerdict {
    let v = in_gtilde(y);
    MembershipVerdict::from_margin(v.margin, v.binding_j, v.is_inside() && proportional(&y.coords(), tol))
}

/// `1 - (max(|x_1|, |x_{n-1}|) / n + |x_n|)`.
pub fn kn_margin(x: &[Cplx]) -> f64 {
    let n = x.len();
    1.0 - (x[0].norm().max(x[n - 2].norm()) / n as f64 + x[n - 1].norm())
}

/// Membership in `K_n`: proportionality within `tol` and
/// `max(|x_1|, |x_{n-1}|) / n + |x_n| <= 1`.
pub fn in_kn(x: &[Cplx], tol: f64) -> bool {
    x.len() >= 2 && proportional(x, tol) && kn_margin(x) >= -crate::tolerance::CONTRACTION_TOL
}

/// [`in_kn`] as a verdict carrying [`kn_margin`].
pub fn kn_verdict(x: &[Cplx], tol: f64) -> MembershipVerdict {
    MembershipVerdict::from_margin(kn_margin(x), 0, in_kn(x, tol))
}
