use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Cplx;
use crate::error::{Error, Result};
use crate::tolerance::CONTRACTION_TOL;

/// A 2x2 complex matrix `[[a11, a12], [a21, a22]]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Mat2 {
    pub a11: Cplx,
    pub a12: Cplx,
    pub a21: Cplx,
    pub a22: Cplx,
}

impl Mat2 {
    pub const fn new(a11: Cplx, a12: Cplx, a21: Cplx, a22: Cplx) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::diag(Cplx::new(1.0, 0.0), Cplx::new(1.0, 0.0))
    }

    pub fn diag(d1: Cplx, d2: Cplx) -> Self {
        let z = Cplx::new(0.0, 0.0);
        Self::new(d1, z, z, d2)
    }

    /// Builds `[[0, upper], [lower, 0]]`.
    pub fn antidiag(upper: Cplx, lower: Cplx) -> Self {
        let z = Cplx::new(0.0, 0.0);
        Self::new(z, upper, lower, z)
    }

    pub fn det(&self) -> Cplx {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> Cplx {
        self.a11 + self.a22
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(self.a11.conj(), self.a21.conj(), self.a12.conj(), self.a22.conj())
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a11, self.a21, self.a12, self.a22)
    }

    /// Transpose about the anti-diagonal: `[[a, b], [c, d]] -> [[d, b], [c, a]]`.
    ///
    /// Swaps the diagonal entries while keeping the off-diagonal slots, and
    /// preserves determinant and singular values.
    pub fn anti_transpose(&self) -> Self {
        Self::new(self.a22, self.a12, self.a21, self.a11)
    }

    pub fn scale(&self, s: Cplx) -> Self {
        Self::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() == 0.0 || !(d.re.is_finite() && d.im.is_finite()) {
            return None;
        }
        let inv = d.inv();
        Some(Self::new(self.a22 * inv, -self.a12 * inv, -self.a21 * inv, self.a11 * inv))
    }

    /// Sum of squared moduli of the entries.
    pub fn frobenius_sq(&self) -> f64 {
        self.a11.norm_sqr() + self.a12.norm_sqr() + self.a21.norm_sqr() + self.a22.norm_sqr()
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            (self.a11 - other.a11).norm(),
            (self.a12 - other.a12).norm(),
            (self.a21 - other.a21).norm(),
            (self.a22 - other.a22).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        [self.a11, self.a12, self.a21, self.a22].iter().all(|z| super::is_finite(*z))
    }

    /// Both singular values, largest first.
    pub fn singular_values(&self) -> (f64, f64) {
        let t = self.frobenius_sq();
        let d = self.det().norm();
        let disc = (t * t - 4.0 * d * d).max(0.0).sqrt();
        let s1_sq = 0.5 * (t + disc);
        let s1 = s1_sq.sqrt();
        // s1 * s2 = |det| avoids cancellation in (t - disc) / 2.
        let s2 = if s1 > 0.0 { d / s1 } else { 0.0 };
        (s1, s2)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a11 + o.a11, self.a12 + o.a12, self.a21 + o.a21, self.a22 + o.a22)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-self.a11, -self.a12, -self.a21, -self.a22)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}

/// Operator (spectral) norm, from `s1^2 = (T + sqrt(T^2 - 4|det|^2)) / 2`
/// with `T` the squared Frobenius norm.
pub fn op_norm(m: &Mat2) -> f64 {
    m.singular_values().0
}

/// Positive square root of a 2x2 Hermitian positive-semidefinite matrix.
///
/// Uses `sqrt(H) = (H + sqrt(det H) I) / sqrt(tr H + 2 sqrt(det H))`.
fn psd_sqrt(h: &Mat2) -> Mat2 {
    let det = h.det().re.max(0.0);
    let s = det.sqrt();
    let t = (h.trace().re + 2.0 * s).max(0.0);
    if t == 0.0 {
        return Mat2::zero();
    }
    let inv = 1.0 / t.sqrt();
    let shifted = Mat2::new(h.a11 + s, h.a12, h.a21, h.a22 + s);
    let mut r = shifted.scale(Cplx::new(inv, 0.0));
    // Hermitian by construction; clean rounding on the diagonal.
    r.a11.im = 0.0;
    r.a22.im = 0.0;
    r
}

/// Defect operator `D_Z = (1 - Z*Z)^{1/2}`.
pub fn defect(z: &Mat2) -> Result<Mat2> {
    let norm = op_norm(z);
    if !(norm <= 1.0 + CONTRACTION_TOL) {
        return Err(Error::NotAContraction { norm });
    }
    Ok(psd_sqrt(&(Mat2::identity() - z.adjoint() * *z)))
}

/// Matrix Mobius map `M_Z(X) = -Z + D_{Z*} X (1 - Z*X)^{-1} D_Z`.
///
/// `Z` must be a strict contraction; `X` may lie on the closed unit ball.
pub fn mobius(z: &Mat2, x: &Mat2) -> Result<Mat2> {
    let nz = op_norm(z);
    if !(nz <= 1.0 - CONTRACTION_TOL) {
        return Err(Error::NotAContraction { norm: nz });
    }
    let nx = op_norm(x);
    if !(nx <= 1.0 + CONTRACTION_TOL) {
        return Err(Error::NotAContraction { norm: nx });
    }
    let d_z = defect(z)?;
    let d_zs = defect(&z.adjoint())?;
    let resolvent = Mat2::identity() - z.adjoint() * *x;
    if resolvent.det().norm() < 1e-14 {
        return Err(Error::SingularResolvent);
    }
    let inv = resolvent.inverse().ok_or(Error::SingularResolvent)?;
    Ok(-*z + d_zs * *x * inv * d_z)
}
