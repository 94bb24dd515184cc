use serde::{Deserialize, Serialize};

use super::{build_schur, lift, profile, schur_eval, DerivativeData, InterpolantSpec, LiftInput, SchurFamily};
use crate::algebra::Cplx;
use crate::domains::{in_kn, DomainPoint};
use crate::error::{Error, Result};
use crate::tolerance::PROPORTION_TOL;

fn check_disc(lambda: Cplx) -> Result<()> {
    if lambda.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("|lambda| = {} must be below 1", lambda.norm())))
    }
}

/// `1 + lambda conj(x_n) r`, refusing values within `1e-14` of zero.
fn prefactor_den(spec: &InterpolantSpec, lambda: Cplx) -> Result<Cplx> {
    let s = spec.data.x()[spec.data.n() - 1].conj() * spec.r;
    let den = 1.0 + lambda * s;
    if den.norm() < 1e-14 {
        return Err(Error::PoleHit { lambda: format!("{lambda}") });
    }
    Ok(den)
}

/// `psi(lambda) = lambda / (1 + lambda conj(x_n) r) (x_1, ..., x_{n-1}, x_n + lambda r)`,
/// the interior coordinates being rebuilt from `x_1` and `x_{n-1}`.
pub fn interpolant_eval(spec: &InterpolantSpec, lambda: Cplx) -> Result<DomainPoint> {
    check_disc(lambda)?;
    let den = prefactor_den(spec, lambda)?;
    let pre = lambda / den;
    let y = profile(&spec.data).into_iter().map(|p| pre * p).collect();
    let xn = spec.data.x()[spec.data.n() - 1];
    DomainPoint::new(y, pre * (xn + lambda * spec.r))
}

/// `psi'(lambda)`: the interior coordinates scale by `(1 + lambda s)^-2` and
/// the last is `(x_n + lambda r (2 + lambda s)) / (1 + lambda s)^2`, with
/// `s = conj(x_n) r`.
pub fn interpolant_derivative(spec: &InterpolantSpec, lambda: Cplx) -> Result<Vec<Cplx>> {
    check_disc(lambda)?;
    let den = prefactor_den(spec, lambda)?;
    let inv = 1.0 / (den * den);
    let xn = spec.data.x()[spec.data.n() - 1];
    let s = xn.conj() * spec.r;
    let mut out: Vec<Cplx> = profile(&spec.data).into_iter().map(|p| p * inv).collect();
    out.push((xn + lambda * spec.r * (2.0 + lambda * s)) * inv);
    Ok(out)
}

/// An interpolant together with the Schur family whose lift realizes it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interpolation {
    pub spec: InterpolantSpec,
    pub family: SchurFamily,
}

impl Interpolation {
    /// `pi_n(W(lambda), ..., W(lambda))` with `n / 2` copies.
    pub fn lifted(&self, lambda: Cplx) -> Result<DomainPoint> {
        let w = schur_eval(&self.family, lambda)?;
        let n = self.spec.data.n();
        lift(n, &LiftInput::new(vec![w; n / 2]))
    }

    pub fn eval(&self, lambda: Cplx) -> Result<DomainPoint> {
        interpolant_eval(&self.spec, lambda)
    }
}

/// Interpolant with `psi(0) = 0`, `psi'(0) = x` for `x` in `K_n`.
///
/// Reduces to the `n = 3` data `(3x_1/n, 3x_{n-1}/n, x_n)`, builds the Schur
/// family there and checks that its lift matches the closed form.
pub fn interpolate_full(d: &DerivativeData) -> Result<Interpolation> {
    if !in_kn(d.x(), PROPORTION_TOL) {
        return Err(Error::NotInKn);
    }
    let n = d.n();
    let scale = 3.0 / n as f64;
    let reduced = DerivativeData::new(vec![scale * d.get(1), scale * d.get(n - 1), d.get(n)])?;
    let family = build_schur(&reduced)?;
    let spec = InterpolantSpec::new(d.clone())?;
    let out = Interpolation { spec, family };
    for lambda in [Cplx::new(0.3, 0.0), Cplx::new(0.0, 0.5), Cplx::new(-0.7, 0.2)] {
        let residual = out.lifted(lambda)?.max_abs_diff(&out.eval(lambda)?);
        if !(residual <= 1e-10) {
            return Err(Error::ClosedFormMismatch { residual });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{binom, c};
    use crate::domains::in_gtilde;
    use crate::verify::kn_point;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn spec(x: &[Cplx]) -> InterpolantSpec {
        InterpolantSpec::new(DerivativeData::new(x.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn regression_point() {
        let s = spec(&[c(1.0, 0.0), c(1.0, 0.0), c(1.0 / 3.0, 0.0)]);
        let p = interpolant_eval(&s, c(0.5, 0.0)).unwrap();
        let want = [15.0 / 32.0, 15.0 / 32.0, 0.25];
        for (u, v) in p.coords().iter().zip(want) {
            assert!((u - c(v, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn origin_and_derivative_at_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for n in 3..7 {
            let x = kn_point(&mut rng, n);
            let s = spec(&x);
            assert_eq!(interpolant_eval(&s, c(0.0, 0.0)).unwrap(), DomainPoint::origin(n));
            let d = interpolant_derivative(&s, c(0.0, 0.0)).unwrap();
            for (u, v) in d.iter().zip(&x) {
                assert!((u - v).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn zero_leading_data() {
        let xc = c(0.2, 0.6);
        let s = spec(&[c(0.0, 0.0), c(0.0, 0.0), xc]);
        assert_eq!(s.r, c(0.0, 0.0));
        let lam = c(0.3, -0.4);
        assert_eq!(interpolant_eval(&s, lam).unwrap().coords(), vec![c(0.0, 0.0), c(0.0, 0.0), lam * xc]);
        assert_eq!(interpolant_derivative(&s, lam).unwrap(), vec![c(0.0, 0.0), c(0.0, 0.0), xc]);
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        let h = 1e-5;
        for _ in 0..1000 {
            let n = rng.gen_range(3..7);
            let s = spec(&kn_point(&mut rng, n));
            let lam = Cplx::from_polar(rng.gen::<f64>().sqrt() * 0.99, rng.gen_range(0.0..6.3));
            let d = interpolant_derivative(&s, lam).unwrap();
            let f = |l: Cplx| interpolant_eval(&s, l).unwrap().coords();
            let (fp, fm) = (f(lam + h), f(lam - h));
            let (gp, gm) = (f(lam + c(0.0, h)), f(lam - c(0.0, h)));
            for k in 0..n {
                let along_re = (fp[k] - fm[k]) / (2.0 * h);
                let along_im = (gp[k] - gm[k]) / c(0.0, 2.0 * h);
                let tol = 1e-6 * d[k].norm().max(1.0);
                assert!((along_re - d[k]).norm() < tol);
                assert!((along_im - d[k]).norm() < tol);
            }
        }
    }

    #[test]
    fn full_interpolation_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for n in 3..7 {
            for _ in 0..100 {
                let x = kn_point(&mut rng, n);
                let it = interpolate_full(&DerivativeData::new(x.clone()).unwrap()).unwrap();
                for k in 0..32 {
                    let lam = Cplx::from_polar(0.999 * (k % 8 + 1) as f64 / 8.0, 0.7 * k as f64);
                    let closed = it.eval(lam).unwrap();
                    assert!(it.lifted(lam).unwrap().max_abs_diff(&closed) < 1e-10);
                    assert!(in_gtilde(&closed).is_inside());
                }
            }
        }
    }

    #[test]
    fn even_middle_coordinate() {
        let (x1, x3) = (c(0.8, 0.1), c(-0.2, 0.9));
        let x = vec![x1, 6.0 * (x1 + x3) / 8.0, x3, c(0.1, 0.0)];
        let s = spec(&x);
        let lam = c(0.4, 0.3);
        let pre = lam / (1.0 + lam * x[3].conj() * s.r);
        let p = interpolant_eval(&s, lam).unwrap();
        assert!((p.coord(2) - pre * binom(4, 2) * (x1 + x3) / 8.0).norm() < 1e-15);
    }

    #[test]
    fn rejects_data_outside_kn() {
        let d = DerivativeData::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(matches!(interpolate_full(&d), Err(Error::NotInKn)));
    }
}
