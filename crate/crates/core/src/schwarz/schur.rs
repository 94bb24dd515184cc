use serde::{Deserialize, Serialize};

use super::{r_coeff, DerivativeData};
use crate::algebra::{defect, mobius, parrott_central, Cplx, Mat2};
use crate::error::{Error, Result};
use crate::tolerance::CONTRACTION_TOL;

/// Which reduction produced a [`SchurFamily`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyKind {
    /// `|x_2| <= |x_1|`, `x_1 != 0`.
    Dominant,
    /// `|x_1| < |x_2|`: built for `(x_2, x_1, x_3)` and anti-transposed.
    Swapped,
    /// `x_1 = x_2 = 0`.
    Zero,
}

/// The Schur-class function `W(lambda) = M_{-Z}(lambda B)` with nilpotent
/// base point `Z = [[0, sigma], [0, 0]]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchurFamily {
    pub z: Mat2,
    pub b: Mat2,
    pub kind: FamilyKind,
    /// Data `(x_1, x_2, x_3)` in the orientation used for the closed form.
    data: [Cplx; 3],
    sigma: f64,
    rho: Cplx,
    l: Cplx,
}

impl SchurFamily {
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Top-right entry of the direction matrix before any anti-transpose.
    pub fn rho(&self) -> Cplx {
        self.rho
    }

    /// The coefficient `l_x` of the scalar interpolant.
    pub fn l(&self) -> Cplx {
        self.l
    }

    /// `W'(0) = D_{Z*} B D_Z`.
    pub fn derivative_at_zero(&self) -> Result<Mat2> {
        Ok(defect(&self.z.adjoint())? * self.b * defect(&self.z)?)
    }
}

/// Builds the family for `n = 3` data with `max(|x_1|, |x_2|)/3 + |x_3| <= 1`.
///
/// For `|x_2| <= |x_1|`, `sigma = sqrt(1 - |x_1|/3)` and
/// `B = [[x_1/sqrt(3|x_1|), rho], [-x_3/sigma, x_2/sqrt(3|x_1|)]]` with
/// `rho` the central Parrott completion. The other ordering is handled by
/// swapping `x_1, x_2` and transposing about the anti-diagonal, which keeps
/// `Z` and commutes with `M_{-Z}`. For `x_1 = x_2 = 0`,
/// `sigma = sqrt|x_3|` and `B = [[0, 0], [-x_3/sigma, 0]]`, giving
/// `W(lambda) = [[0, sigma], [-lambda x_3/sigma, 0]]`.
pub fn build_schur(d3: &DerivativeData) -> Result<SchurFamily> {
    if d3.n() != 3 {
        return Err(Error::InvalidInput(format!("build_schur needs n = 3, got {}", d3.n())));
    }
    let (x1, x2, x3) = (d3.get(1), d3.get(2), d3.get(3));
    let slack = 1.0 - (x1.norm().max(x2.norm()) / 3.0 + x3.norm());
    if slack < -CONTRACTION_TOL {
        return Err(Error::BoundViolated { slack });
    }
    let zero = Cplx::new(0.0, 0.0);
    if x1 == zero && x2 == zero {
        let m = x3.norm();
        if m >= 1.0 - CONTRACTION_TOL {
            return Err(Error::DegenerateDenominator { value: 1.0 - m });
        }
        let sigma = m.sqrt();
        let lower = if sigma == 0.0 { zero } else { -x3 / sigma };
        return Ok(SchurFamily {
            z: Mat2::antidiag(Cplx::new(sigma, 0.0), zero),
            b: Mat2::antidiag(zero, lower),
            kind: FamilyKind::Zero,
            data: [x1, x2, x3],
            sigma,
            rho: zero,
            l: zero,
        });
    }
    if x1.norm() < x2.norm() {
        let mut f = dominant(x2, x1, x3)?;
        f.b = f.b.anti_transpose();
        f.kind = FamilyKind::Swapped;
        return Ok(f);
    }
    dominant(x1, x2, x3)
}

fn dominant(x1: Cplx, x2: Cplx, x3: Cplx) -> Result<SchurFamily> {
    let l = r_coeff(&DerivativeData::new(vec![x1, x2, x3])?)?;
    let a1 = x1.norm();
    let sigma = (1.0 - a1 / 3.0).sqrt();
    let k = (3.0 * a1).sqrt();
    let (p, r, s) = (x1 / k, -x3 / sigma, x2 / k);
    let rho = parrott_central(p, r, s)?;
    Ok(SchurFamily {
        z: Mat2::antidiag(Cplx::new(sigma, 0.0), Cplx::new(0.0, 0.0)),
        b: Mat2::new(p, rho, r, s),
        kind: FamilyKind::Dominant,
        data: [x1, x2, x3],
        sigma,
        rho,
        l,
    })
}

/// The closed form
/// `W(lambda) = Z + lambda/(1 + lambda rho sigma) [[x_1/3, rho|x_1|/3], [v, x_2/3]]`
/// with `v = -x_3/sigma - lambda sigma l_x`.
pub fn schur_closed_form(f: &SchurFamily, lambda: Cplx) -> Result<Mat2> {
    let [x1, x2, x3] = f.data;
    let sigma = Cplx::new(f.sigma, 0.0);
    if f.kind == FamilyKind::Zero {
        let lower = if f.sigma == 0.0 { Cplx::new(0.0, 0.0) } else { -lambda * x3 / sigma };
        return Ok(Mat2::antidiag(sigma, lower));
    }
    let den = 1.0 + lambda * f.rho * sigma;
    if den.norm() < 1e-14 {
        return Err(Error::PoleHit { lambda: format!("{lambda}") });
    }
    let v = -x3 / sigma - lambda * sigma * f.l;
    let inner = Mat2::new(x1 / 3.0, f.rho * x1.norm() / 3.0, v, x2 / 3.0);
    let w = f.z + inner.scale(lambda / den);
    Ok(if f.kind == FamilyKind::Swapped { w.anti_transpose() } else { w })
}

/// `W(lambda)` through the Mobius map, cross-checked against
/// [`schur_closed_form`].
pub fn schur_eval(f: &SchurFamily, lambda: Cplx) -> Result<Mat2> {
    if !(lambda.norm() < 1.0) {
        return Err(Error::InvalidInput(format!("|lambda| = {} must be below 1", lambda.norm())));
    }
    let via_mobius = mobius(&(-f.z), &f.b.scale(lambda))?;
    let closed = schur_closed_form(f, lambda)?;
    let residual = via_mobius.max_abs_diff(&closed);
    if !(residual <= 1e-8) {
        return Err(Error::ClosedFormMismatch { residual });
    }
    Ok(via_mobius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{c, op_norm};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn family(x: [Cplx; 3]) -> SchurFamily {
        build_schur(&DerivativeData::new(x.to_vec()).unwrap()).unwrap()
    }

    fn random_data(rng: &mut ChaCha8Rng) -> [Cplx; 3] {
        let a: f64 = rng.gen_range(0.0..2.95);
        let b = rng.gen_range(0.0..2.95);
        let bound = 1.0 - a.max(b) / 3.0 - 1e-3;
        let m = bound * rng.gen::<f64>();
        [
            Cplx::from_polar(a, rng.gen_range(0.0..6.3)),
            Cplx::from_polar(b, rng.gen_range(0.0..6.3)),
            Cplx::from_polar(m, rng.gen_range(0.0..6.3)),
        ]
    }

    #[test]
    fn reference_point() {
        let f = family([c(1.0, 0.0), c(1.0, 0.0), c(1.0 / 3.0, 0.0)]);
        assert!((f.sigma() - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        let rho = 2f64.sqrt() / (5.0 * 3f64.sqrt());
        assert!((f.rho() - rho).norm() < 1e-15);
        assert!(op_norm(&f.b) <= 1.0 + 1e-12);
    }

    #[test]
    fn value_and_derivative_at_zero() {
        let x = [c(1.0, 0.5), c(-0.4, 0.2), c(0.1, -0.3)];
        let f = family(x);
        assert_eq!(schur_eval(&f, c(0.0, 0.0)).unwrap(), f.z);
        let a1 = x[0].norm();
        let want = Mat2::new(x[0] / 3.0, f.rho() * a1 / 3.0, -x[2] / f.sigma(), x[1] / 3.0);
        assert!(f.derivative_at_zero().unwrap().max_abs_diff(&want) < 1e-14);
    }

    #[test]
    fn determinant_and_diagonal_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..500 {
            let x = random_data(&mut rng);
            let f = family(x);
            let l = f.l();
            for _ in 0..5 {
                let lam = Cplx::from_polar(rng.gen::<f64>().sqrt() * 0.999, rng.gen_range(0.0..6.3));
                let w = schur_eval(&f, lam).unwrap();
                let den = 1.0 + lam * x[2].conj() * l;
                assert!((w.det() - lam * (x[2] + lam * l) / den).norm() < 1e-10);
                assert!((w.a11 - lam * x[0] / (3.0 * den)).norm() < 1e-10);
                assert!((w.a22 - lam * x[1] / (3.0 * den)).norm() < 1e-10);
                assert!(op_norm(&w) <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn both_orderings_agree_with_closed_form() {
        let x = [c(0.3, 0.1), c(1.5, -1.0), c(0.2, 0.1)];
        let f = family(x);
        assert_eq!(f.kind, FamilyKind::Swapped);
        let g = family([x[1], x[0], x[2]]);
        assert_eq!(g.kind, FamilyKind::Dominant);
        for lam in [c(0.5, 0.0), c(-0.2, 0.7), c(0.0, -0.95)] {
            let w = schur_eval(&f, lam).unwrap();
            assert!((w.a11 - schur_eval(&g, lam).unwrap().a22).norm() < 1e-14);
        }
    }

    #[test]
    fn zero_data() {
        let x3 = c(0.3, -0.4);
        let f = family([c(0.0, 0.0), c(0.0, 0.0), x3]);
        assert_eq!(f.kind, FamilyKind::Zero);
        for lam in [c(0.0, 0.0), c(0.5, 0.5), c(-0.9, 0.0)] {
            let w = schur_eval(&f, lam).unwrap();
            assert!((w.det() - lam * x3).norm() < 1e-15);
            assert_eq!((w.a11, w.a22), (c(0.0, 0.0), c(0.0, 0.0)));
        }
        let f = family([c(0.0, 0.0); 3]);
        assert_eq!(schur_eval(&f, c(0.5, 0.0)).unwrap(), Mat2::zero());
        assert!(build_schur(&DerivativeData::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap()).is_err());
    }

    #[test]
    fn rejects_bad_input() {
        let d = DerivativeData::new(vec![c(3.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)]).unwrap();
        assert!(matches!(build_schur(&d), Err(Error::BoundViolated { .. })));
        let d = DerivativeData::new(vec![c(0.0, 0.0); 4]).unwrap();
        assert!(build_schur(&d).is_err());
        let f = family([c(1.0, 0.0), c(1.0, 0.0), c(0.1, 0.0)]);
        assert!(schur_eval(&f, c(1.0, 0.0)).is_err());
    }
}
