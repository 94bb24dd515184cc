use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{DomainPoint, MembershipVerdict};
use crate::algebra::{binom, op_norm, Cplx, Mat2};
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Default angular resolution of [`char2_oracle`].
pub const DEFAULT_GRID: usize = 64;

fn check_index(y: &DomainPoint, j: usize) -> Result<()> {
    if j == 0 || j >= y.n() {
        return Err(Error::InvalidInput(format!("index j = {j} outside 1..={}", y.n() - 1)));
    }
    Ok(())
}

/// The pair `(y_j, y_{n-j})` and `binom(n, j)`.
fn pair(y: &DomainPoint, j: usize) -> (Cplx, Cplx, f64) {
    let n = y.n();
    (y.coord(j), y.coord(n - j), binom(n, j))
}

/// `Phi_j(z, y) = (binom(n,j) q z - y_j) / (y_{n-j} z - binom(n,j))`, or
/// `y_j / binom(n,j)` when `y_j y_{n-j} = binom(n,j)^2 q`.
pub fn phi(j: usize, z: Cplx, y: &DomainPoint) -> Result<Cplx> {
    check_index(y, j)?;
    let (yj, ynj, c) = pair(y, j);
    let q = y.q();
    if (yj * ynj - c * c * q).norm() <= 1e-14 * (c * c).max(1.0) {
        return Ok(yj / c);
    }
    let den = ynj * z - c;
    if den.norm() <= 1e-14 * c {
        return Err(Error::PoleAtZ { j, z: format!("{z}") });
    }
    Ok((c * q * z - yj) / den)
}

/// Closed-form `H^inf` norm of `Phi_j(., y)` on the disc.
pub fn phi_hinf(j: usize, y: &DomainPoint) -> Result<f64> {
    check_index(y, j)?;
    let (yj, ynj, c) = pair(y, j);
    let q = y.q();
    let value = ynj.norm();
    if value >= c {
        return Err(Error::GuardViolated { j, value, bound: c });
    }
    let num = c * (yj - ynj.conj() * q).norm() + (yj * ynj - c * c * q).norm();
    Ok(num / (c * c - ynj.norm_sqr()))
}

/// Coefficients `beta_1..beta_{n-1}` with `y_j = beta_j + conj(beta_{n-j}) q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaDecomposition {
    pub betas: Vec<Cplx>,
}

impl BetaDecomposition {
    /// The point `(beta_j + conj(beta_{n-j}) q)_j` with last coordinate `q`.
    pub fn assemble(&self, q: Cplx) -> Result<DomainPoint> {
        let m = self.betas.len();
        let y = (0..m).map(|i| self.betas[i] + self.betas[m - 1 - i].conj() * q).collect();
        DomainPoint::new(y, q)
    }
}

/// Solves the beta system: `beta_j = (y_j - conj(y_{n-j}) q) / (1 - |q|^2)`.
pub fn beta_solve(y: &DomainPoint) -> Result<BetaDecomposition> {
    let q = y.q();
    let modulus = q.norm();
    if modulus >= 1.0 {
        return Err(Error::QOnCircle { modulus });
    }
    let d = 1.0 - q.norm_sqr();
    let ys = y.y();
    let m = ys.len();
    let betas = (0..m).map(|i| (ys[i] - ys[m - 1 - i].conj() * q) / d).collect();
    Ok(BetaDecomposition { betas })
}

/// Slack of `|y_{n-j} - conj(y_j) q| + |y_j - conj(y_{n-j}) q| < binom(n,j)(1 - |q|^2)`.
fn slack4(y: &DomainPoint, j: usize) -> f64 {
    let (yj, ynj, c) = pair(y, j);
    let q = y.q();
    c * (1.0 - q.norm_sqr()) - (ynj - yj.conj() * q).norm() - (yj - ynj.conj() * q).norm()
}

/// Minimum of `slack(j)` over `j = 1..=n/2`, with its index.
fn min_slack(y: &DomainPoint, slack: impl Fn(usize) -> f64) -> (f64, usize) {
    (1..=y.n() / 2).map(|j| (slack(j), j)).fold((f64::INFINITY, 0), |best, cur| if cur.0 < best.0 { cur } else { best })
}

/// Membership in `G~_n` through the inequalities
/// `|y_{n-j} - conj(y_j) q| + |y_j - conj(y_{n-j}) q| < binom(n,j)(1 - |q|^2)`.
pub fn in_gtilde(y: &DomainPoint) -> MembershipVerdict {
    in_gtilde_with(y, &Tolerances::default())
}

pub fn in_gtilde_with(y: &DomainPoint, tol: &Tolerances) -> MembershipVerdict {
    let (margin, j) = min_slack(y, |j| slack4(y, j));
    MembershipVerdict::from_margin(margin, j, margin > tol.strict_band)
}

/// Membership in the closure `Gamma~_n`.
///
/// For `|q| < 1` the non-strict inequalities are tested. On the circle
/// `|q| = 1` the point lies in `Gamma~_n` iff `y_j = conj(y_{n-j}) q` and
/// `|y_j| <= binom(n,j)` for every `j`.
pub fn in_gammatilde(y: &DomainPoint) -> MembershipVerdict {
    in_gammatilde_with(y, &Tolerances::default())
}

pub fn in_gammatilde_with(y: &DomainPoint, tol: &Tolerances) -> MembershipVerdict {
    let eps = tol.closed_tol;
    let modulus = y.q().norm();
    if modulus > 1.0 + eps {
        return MembershipVerdict::from_margin(1.0 - modulus, 0, false);
    }
    let on_circle = modulus >= 1.0 - eps;
    let mut worst = (f64::INFINITY, 0, true);
    for j in 1..=y.n() / 2 {
        let (yj, ynj, c) = pair(y, j);
        let q = y.q();
        let (margin, ok) = if on_circle {
            let residual = (yj - ynj.conj() * q).norm().max((ynj - yj.conj() * q).norm());
            let size = c - yj.norm().max(ynj.norm());
            (size.min(-residual), residual <= eps * c && size >= -eps * c)
        } else {
            let s = slack4(y, j);
            (s, s >= -eps * c)
        };
        if margin < worst.0 {
            worst.0 = margin;
            worst.1 = j;
        }
        worst.2 &= ok;
    }
    MembershipVerdict::from_margin(worst.0, worst.1, worst.2)
}

/// The displayed pair of inequalities whose disjunction characterizes
/// `G~_n`; returns the larger of the two slacks.
fn slack3(y: &DomainPoint, j: usize) -> f64 {
    let (yj, ynj, c) = pair(y, j);
    let q = y.q();
    let c2 = c * c;
    let prod = (yj * ynj - c2 * q).norm();
    let first = c2 - ynj.norm_sqr() - c * (yj - ynj.conj() * q).norm() - prod;
    let second = c2 - yj.norm_sqr() - c * (ynj - yj.conj() * q).norm() - prod;
    first.max(second)
}

/// Membership through the "either ... or ..." inequalities.
pub fn char3(y: &DomainPoint) -> MembershipVerdict {
    let (margin, j) = min_slack(y, |j| slack3(y, j));
    MembershipVerdict::from_margin(margin, j, margin > Tolerances::default().strict_band)
}

/// Sampling grid for [`char2_oracle`]: `N^2` scan angles for `z` and a
/// regular `N^3`-gon inscribed in the circle for `w`.
#[derive(Debug, Clone)]
pub struct Char2Grid {
    n: usize,
    scan: Vec<Cplx>,
    sides: usize,
    apothem: f64,
}

/// Outcome of testing one scan angle.
enum Probe {
    /// A zero of `f(z, .)` inside the polygon, or within `tol` of a vertex.
    Zero(f64),
    /// No zero; the value bounds `|b| dist(p, polygon)` from below.
    Clear(f64),
}

impl Char2Grid {
    pub fn new(grid_n: usize) -> Self {
        let grid_n = grid_n.max(8);
        let m = grid_n * grid_n;
        let sides = m * grid_n;
        Self {
            n: grid_n,
            scan: (0..m).map(|k| Cplx::from_polar(1.0, TAU * k as f64 / m as f64)).collect(),
            sides,
            apothem: (PI / sides as f64).cos(),
        }
    }

    pub fn resolution(&self) -> usize {
        self.n
    }

    /// Locates the zero `p = -a/b` of `f(z, w) = a + b w` relative to the
    /// polygon.
    fn probe(&self, a: Cplx, b: Cplx, tol: f64) -> Probe {
        let (na, nb) = (a.norm(), b.norm());
        if nb <= 1e-300 {
            return if na < tol { Probe::Zero(-tol) } else { Probe::Clear(na) };
        }
        if na < self.apothem * nb {
            return Probe::Zero((na - nb).min(-tol));
        }
        if na - nb >= tol {
            return Probe::Clear(na - nb);
        }
        let p = -a / b;
        let step = TAU / self.sides as f64;
        let k = ((p.im.atan2(p.re).rem_euclid(TAU) / step) as usize).min(self.sides - 1);
        let mid = Cplx::from_polar(1.0, (k as f64 + 0.5) * step);
        if (p * mid.conj()).re < self.apothem {
            return Probe::Zero((na - nb).min(-tol));
        }
        let vertex = |i: usize| Cplx::from_polar(1.0, i as f64 * step);
        let near = nb * (p - vertex(k)).norm().min((p - vertex(k + 1)).norm());
        if near < tol {
            Probe::Zero(near - tol)
        } else {
            Probe::Clear(near)
        }
    }

    /// Scans `f(z, w) = c - u z - v w + c q z w` over `|z| = 1` and
    /// `|w| <= 1`, refining `z` around the sampled angle where the zero in
    /// `w` comes closest to the disc. Returns the smallest certificate value;
    /// negative values mean a zero was found.
    fn scan(&self, c: f64, u: Cplx, v: Cplx, q: Cplx, tol: f64) -> f64 {
        let coeffs = |z: Cplx| (c - u * z, c * q * z - v);
        let mut best = f64::INFINITY;
        let mut closest = (f64::INFINITY, 0);
        for (k, &z) in self.scan.iter().enumerate() {
            let (a, b) = coeffs(z);
            match self.probe(a, b, tol) {
                Probe::Zero(m) => return m,
                Probe::Clear(m) => best = best.min(m),
            }
            let ratio = a.norm_sqr() / b.norm_sqr();
            if ratio < closest.0 {
                closest = (ratio, k);
            }
        }
        let h = TAU / self.scan.len() as f64;
        let ratio = |t: f64| {
            let (a, b) = coeffs(Cplx::from_polar(1.0, t));
            a.norm_sqr() / b.norm_sqr()
        };
        let centre = closest.1 as f64 * h;
        let t = golden_min(ratio, centre - h, centre + h, 60);
        let (a, b) = coeffs(Cplx::from_polar(1.0, t));
        match self.probe(a, b, tol) {
            Probe::Zero(m) => m,
            Probe::Clear(m) => best.min(m),
        }
    }
}

/// Golden-section search for a minimizer of `f` on `[lo, hi]`.
fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iterations: usize) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iterations {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    (lo + hi) / 2.0
}

/// Sampling oracle for the non-vanishing of
/// `binom(n,j) - y_j z - y_{n-j} w + binom(n,j) q z w` on the closed bidisc.
///
/// A zero in the closed bidisc has a companion zero with `|z| = 1` or
/// `|w| = 1`, so the oracle scans `grid_n^2` angles of one variable on the
/// circle (plus a golden-section refinement at the closest approach) and,
/// for each, decides whether the affine function of the other variable
/// vanishes inside the `grid_n^3`-gon inscribed in the circle, or comes
/// within `1e-9 binom(n,j)` of zero at a vertex. It can only certify
/// failure: `Inside` means no zero was sampled.
pub fn char2_oracle(y: &DomainPoint, grid_n: usize) -> MembershipVerdict {
    char2_oracle_on(&Char2Grid::new(grid_n), y)
}

/// [`char2_oracle`] with a prebuilt grid.
pub fn char2_oracle_on(grid: &Char2Grid, y: &DomainPoint) -> MembershipVerdict {
    let q = y.q();
    let mut margin = f64::INFINITY;
    let mut binding = 0;
    for j in 1..=y.n() / 2 {
        let (yj, ynj, c) = pair(y, j);
        let tol = 1e-9 * c;
        let m = grid.scan(c, yj, ynj, q, tol).min(grid.scan(c, ynj, yj, q, tol));
        if m < 0.0 {
            return MembershipVerdict::from_margin(m, j, false);
        }
        if m < margin {
            margin = m;
            binding = j;
        }
    }
    MembershipVerdict::from_margin(margin, binding, true)
}

/// Contractions `B_1..B_{n/2}` realizing a point of `G~_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractionTuple {
    pub mats: Vec<Mat2>,
}

/// Builds `B_j = [[y_j/c, b], [b', y_{n-j}/c]]` with `det B_j = q` and the
/// smallest possible norm.
///
/// With `P = y_j y_{n-j} / c^2 - q` fixed, `|det|` is fixed and the norm
/// only grows with `|b|^2 + |b'|^2`, which is minimal at `|b| = |b'| = sqrt|P|`.
pub fn char5_construct(y: &DomainPoint) -> Result<ContractionTuple> {
    let q = y.q();
    let mut mats = Vec::with_capacity(y.n() / 2);
    for j in 1..=y.n() / 2 {
        let (yj, ynj, c) = pair(y, j);
        let (a, d) = (yj / c, ynj / c);
        let p = a * d - q;
        let t = p.norm().sqrt();
        let (b, b2) = if t == 0.0 { (Cplx::new(0.0, 0.0), Cplx::new(0.0, 0.0)) } else { (Cplx::new(t, 0.0), p / t) };
        let m = Mat2::new(a, b, b2, d);
        let norm = op_norm(&m);
        if !(norm < 1.0 - 1e-9) {
            return Err(Error::ConstructionFailed { j, norm });
        }
        mats.push(m);
    }
    Ok(ContractionTuple { mats })
}
