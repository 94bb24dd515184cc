use super::Cplx;
use crate::error::{Error, Result};

/// Iteration budget of the simultaneous root iteration.
pub const MAX_ITERATIONS: usize = 500;
const STEP_TOL: f64 = 1e-13;

/// Monic polynomial `z^d + c[0] z^(d-1) + ... + c[d-1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPoly {
    coeffs: Vec<Cplx>,
}

impl MonicPoly {
    pub fn new(coeffs: Vec<Cplx>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("monic polynomial needs degree >= 1".into()));
        }
        if !coeffs.iter().all(|z| super::is_finite(*z)) {
            return Err(Error::InvalidInput("non-finite polynomial coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    /// The monic polynomial with the given roots.
    pub fn from_roots(roots: &[Cplx]) -> Result<Self> {
        let mut c = vec![Cplx::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Cplx::new(0.0, 0.0); c.len() + 1];
            for (i, &a) in c.iter().enumerate() {
                next[i] += a;
                next[i + 1] -= a * r;
            }
            c = next;
        }
        Self::new(c[1..].to_vec())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficients of `z^(d-1), ..., z^0`.
    pub fn coeffs(&self) -> &[Cplx] {
        &self.coeffs
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Cplx) -> Cplx {
        self.coeffs.iter().fold(Cplx::new(1.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Horner evaluation of `sum |c_k| |z|^k`, the rounding scale of `eval`.
    fn eval_abs(&self, r: f64) -> f64 {
        self.coeffs.iter().fold(1.0, |acc, c| acc * r + c.norm())
    }
}

/// All roots, with multiplicity, by Weierstrass (Durand-Kerner) iteration.
///
/// Starts from points on the circle of radius `1 + max|c|` and stops once
/// every correction is below `1e-13` relative, or every residual has reached
/// the rounding floor of Horner evaluation.
pub fn roots(p: &MonicPoly) -> Result<Vec<Cplx>> {
    let d = p.degree();
    if d == 1 {
        return Ok(vec![-p.coeffs[0]]);
    }
    let radius = 1.0 + p.max_coeff();
    // Offset angle breaks symmetry with real-coefficient polynomials.
    let mut z: Vec<Cplx> =
        (0..d).map(|k| Cplx::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / d as f64)).collect();

    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0f64;
        for i in 0..d {
            let zi = z[i];
            let mut denom = Cplx::new(1.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    let diff = zi - zj;
                    denom *= if diff.norm() == 0.0 { Cplx::new(1e-12, 0.0) } else { diff };
                }
            }
            let step = p.eval(zi) / denom;
            if !(step.re.is_finite() && step.im.is_finite()) {
                continue;
            }
            z[i] = zi - step;
            max_step = max_step.max(step.norm() / zi.norm().max(1.0));
        }
        if max_step < STEP_TOL || at_rounding_floor(p, &z) {
            return check(p, z);
        }
    }
    if at_rounding_floor(p, &z) {
        return check(p, z);
    }
    Err(Error::NoConvergence { iterations: MAX_ITERATIONS })
}

fn at_rounding_floor(p: &MonicPoly, z: &[Cplx]) -> bool {
    let scale = 16.0 * f64::EPSILON * p.degree() as f64;
    z.iter().all(|&zi| p.eval(zi).norm() <= scale * p.eval_abs(zi.norm()))
}

fn check(p: &MonicPoly, z: Vec<Cplx>) -> Result<Vec<Cplx>> {
    let bound = 1e-9 * p.max_coeff().max(1.0);
    if z.iter().all(|&zi| p.eval(zi).norm() <= bound) {
        Ok(z)
    } else {
        Err(Error::NoConvergence { iterations: MAX_ITERATIONS })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Cplx {
        Cplx::new(re, im)
    }

    fn sorted(mut v: Vec<Cplx>) -> Vec<Cplx> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        v
    }

    #[test]
    fn z_squared_minus_one() {
        let p = MonicPoly::new(vec![c(0.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let r = sorted(roots(&p).unwrap());
        assert!((r[0] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((r[1] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn cubic_with_unimodular_pair() {
        // z^3 - z^2 + z: roots 0 and (1 +- i sqrt 3) / 2 by the quadratic formula.
        let p = MonicPoly::new(vec![c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let r = sorted(roots(&p).unwrap());
        let h = 3f64.sqrt() / 2.0;
        let want = sorted(vec![c(0.0, 0.0), c(0.5, h), c(0.5, -h)]);
        for (a, b) in r.iter().zip(&want) {
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
        assert!((r.iter().map(|z| z.norm()).fold(0.0, f64::max) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn vieta_round_trip_on_random_cubics() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..1000 {
            let coeffs: Vec<Cplx> = (0..3).map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
            let p = MonicPoly::new(coeffs.clone()).unwrap();
            let r = roots(&p).unwrap();
            let back = MonicPoly::from_roots(&r).unwrap();
            for (a, b) in back.coeffs().iter().zip(&coeffs) {
                assert!((a - b).norm() <= 1e-8 * b.norm().max(1.0));
            }
        }
    }

    #[test]
    fn residual_postcondition_up_to_degree_ten() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for d in 1..=10 {
            for _ in 0..50 {
                let coeffs: Vec<Cplx> = (0..d).map(|_| c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))).collect();
                let p = MonicPoly::new(coeffs).unwrap();
                let r = roots(&p).unwrap();
                assert_eq!(r.len(), d);
                let bound = 1e-9 * p.max_coeff().max(1.0);
                for z in r {
                    assert!(p.eval(z).norm() <= bound);
                }
            }
        }
    }

    #[test]
    fn repeated_roots_converge() {
        let p = MonicPoly::from_roots(&[c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(-0.2, 0.1)]).unwrap();
        let r = roots(&p).unwrap();
        let worst = r.iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!((worst - 0.5).abs() < 1e-4);
    }

    #[test]
    fn empty_polynomial_is_rejected() {
        assert!(MonicPoly::new(vec![]).is_err());
    }
}
