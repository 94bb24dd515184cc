use serde::{Deserialize, Serialize};

use crate::algebra::{binom, Mat2};
use crate::domains::DomainPoint;
use crate::error::{Error, Result};

/// Matrices `B_1, ..., B_k` with a common determinant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftInput {
    pub mats: Vec<Mat2>,
}

impl LiftInput {
    pub fn new(mats: Vec<Mat2>) -> Self {
        Self { mats }
    }

    /// Checks that there is at least one matrix and the determinants agree
    /// to `1e-10`.
    fn validate(&self) -> Result<()> {
        let first = self.mats.first().ok_or_else(|| Error::InvalidInput("no matrices to lift".into()))?.det();
        let spread = self.mats.iter().map(|m| (m.det() - first).norm()).fold(0.0, f64::max);
        if !(spread <= 1e-10) {
            return Err(Error::DetMismatch { spread });
        }
        Ok(())
    }
}

/// `(binom(n,1)[B_1]_11, ..., binom(n,k)[B_k]_11, binom(n,k)[B_k]_22, ...,
/// binom(n,1)[B_1]_22, det B_1)` with `n = 2k + 1`.
pub fn lift_odd(t: &LiftInput) -> Result<DomainPoint> {
    t.validate()?;
    let k = t.mats.len();
    let n = 2 * k + 1;
    let mut y = Vec::with_capacity(n - 1);
    for (j, m) in t.mats.iter().enumerate() {
        y.push(binom(n, j + 1) * m.a11);
    }
    for (j, m) in t.mats.iter().enumerate().rev() {
        y.push(binom(n, j + 1) * m.a22);
    }
    DomainPoint::new(y, t.mats[0].det())
}

/// As [`lift_odd`] with `n = 2k` and the single middle coordinate
/// `binom(n,k)([B_k]_11 + [B_k]_22)/2`.
pub fn lift_even(t: &LiftInput) -> Result<DomainPoint> {
    t.validate()?;
    let k = t.mats.len();
    let n = 2 * k;
    let mut y = Vec::with_capacity(n - 1);
    for (j, m) in t.mats[..k - 1].iter().enumerate() {
        y.push(binom(n, j + 1) * m.a11);
    }
    let mid = &t.mats[k - 1];
    y.push(binom(n, k) * (mid.a11 + mid.a22) / 2.0);
    for (j, m) in t.mats[..k - 1].iter().enumerate().rev() {
        y.push(binom(n, j + 1) * m.a22);
    }
    DomainPoint::new(y, t.mats[0].det())
}

/// Lift into `C^n`, picking the parity from `n`; needs `n / 2` matrices.
pub fn lift(n: usize, t: &LiftInput) -> Result<DomainPoint> {
    if n < 2 || t.mats.len() != n / 2 {
        return Err(Error::InvalidInput(format!("lift to n = {n} needs {} matrices, got {}", n / 2, t.mats.len())));
    }
    if n % 2 == 1 {
        lift_odd(t)
    } else {
        lift_even(t)
    }
}
