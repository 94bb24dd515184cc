use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{binom, Cplx};
use crate::domains::{symmetrize, BetaDecomposition, DomainPoint};
use crate::error::{Error, Result};
use crate::schwarz::{profile, DerivativeData};

/// Point generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleMode {
    /// `G~_n` from random `beta` with `|beta_j| + |beta_{n-j}| < binom(n, j)`.
    InsideBeta,
    /// `G_n` as images of uniform points of the open polydisc.
    InsidePolydisc,
    /// Uniform in the box `|y_j| <= scale binom(n, j)`, `|q| <= scale`.
    AmbientBox,
    /// `|beta_j| + |beta_{n-j}| = (1 - eps) binom(n, j)`, or `|z_i| = 1 - eps`
    /// for the polydisc sampler.
    NearBoundary,
}

impl SampleMode {
    pub const ALL: [SampleMode; 4] =
        [SampleMode::InsideBeta, SampleMode::InsidePolydisc, SampleMode::AmbientBox, SampleMode::NearBoundary];

    pub fn name(self) -> &'static str {
        match self {
            SampleMode::InsideBeta => "inside-beta",
            SampleMode::InsidePolydisc => "inside-polydisc",
            SampleMode::AmbientBox => "ambient-box",
            SampleMode::NearBoundary => "near-boundary",
        }
    }
}

impl fmt::Display for SampleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SampleMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SampleMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown sample mode `{s}`")))
    }
}

/// Sampler settings. Trial `i` draws from its own ChaCha8 stream, so any
/// subset of trials can be regenerated independently and in parallel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    pub mode: SampleMode,
    /// Radius of the disc `q` is drawn from in the `beta` samplers.
    pub q_radius: f64,
    pub eps: f64,
    pub box_scale: f64,
}

impl SampleConfig {
    pub fn new(n: usize, count: usize, seed: u64, mode: SampleMode) -> Self {
        Self { n, count, seed, mode, q_radius: 0.99, eps: 1e-4, box_scale: 1.5 }
    }

    pub fn with_mode(&self, mode: SampleMode) -> Self {
        Self { mode, ..self.clone() }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidInput(format!("sampling needs n >= 2, got {}", self.n)));
        }
        if self.count == 0 {
            return Err(Error::InvalidInput("sample count must be at least 1".into()));
        }
        if !(self.q_radius > 0.0 && self.q_radius < 1.0)
            || !(self.eps > 0.0 && self.eps < 1.0)
            || !(self.box_scale > 0.0)
        {
            return Err(Error::InvalidInput(
                "sampler radii must satisfy 0 < q_radius < 1, 0 < eps < 1, box_scale > 0".into(),
            ));
        }
        Ok(())
    }
}

/// The RNG for trial `index` under `seed`.
pub fn trial_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Uniform point of the disc of radius `r`.
pub(crate) fn disc(rng: &mut impl Rng, r: f64) -> Cplx {
    Cplx::from_polar(r * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU))
}

pub(crate) fn unimodular(rng: &mut impl Rng) -> Cplx {
    Cplx::from_polar(1.0, rng.gen_range(0.0..TAU))
}

/// Point of `G~_n` from the `beta` parameterization: each pair has
/// `|beta_j| + |beta_{n-j}| = (1 - eps) binom(n, j)` when `near = Some(eps)`,
/// and a uniform fraction of `binom(n, j)` otherwise.
pub(crate) fn beta_point(rng: &mut impl Rng, n: usize, q: Cplx, near: Option<f64>) -> DomainPoint {
    let mut b = vec![Cplx::new(0.0, 0.0); n - 1];
    for j in 1..=n / 2 {
        let c = binom(n, j);
        let s = match near {
            Some(eps) => (1.0 - eps) * c,
            None => rng.gen::<f64>() * c * (1.0 - 1e-6),
        };
        if 2 * j == n {
            b[j - 1] = Cplx::from_polar(s / 2.0, rng.gen_range(0.0..TAU));
        } else {
            let t: f64 = rng.gen();
            b[j - 1] = Cplx::from_polar(t * s, rng.gen_range(0.0..TAU));
            b[n - j - 1] = Cplx::from_polar((1.0 - t) * s, rng.gen_range(0.0..TAU));
        }
    }
    BetaDecomposition { betas: b }.assemble(q).expect("finite sample")
}

/// Derivative data in `K_n` whose bound `max(|x_1|, |x_{n-1}|)/n + |x_n| <= 1`
/// holds with slack above `1e-3`.
pub(crate) fn kn_point(rng: &mut impl Rng, n: usize) -> Vec<Cplx> {
    let nf = n as f64;
    let a: f64 = rng.gen_range(0.0..nf * 0.997);
    let b = rng.gen_range(0.0..nf * 0.997);
    let x1 = Cplx::from_polar(a, rng.gen_range(0.0..TAU));
    let xm = Cplx::from_polar(b, rng.gen_range(0.0..TAU));
    let room = 1.0 - a.max(b) / nf - 2e-3;
    let xn = Cplx::from_polar(room * rng.gen::<f64>(), rng.gen_range(0.0..TAU));
    let mut seed = vec![Cplx::new(0.0, 0.0); n];
    seed[0] = x1;
    seed[n - 2] = xm;
    let mut x = profile(&DerivativeData::new(seed).expect("finite data"));
    x.push(xn);
    x
}

fn polydisc_point(rng: &mut impl Rng, n: usize, near: Option<f64>) -> DomainPoint {
    let zs: Vec<Cplx> = (0..n)
        .map(|_| match near {
            Some(eps) => Cplx::from_polar(1.0 - eps, rng.gen_range(0.0..TAU)),
            None => disc(rng, 1.0 - 1e-6),
        })
        .collect();
    symmetrize(&zs).expect("n >= 2")
}

fn box_point(rng: &mut impl Rng, n: usize, scale: f64) -> DomainPoint {
    let y = (1..n).map(|j| disc(rng, scale * binom(n, j))).collect();
    DomainPoint::new(y, disc(rng, scale)).expect("finite sample")
}

/// Trial `index` of the configured sampler.
pub fn sample_point(cfg: &SampleConfig, index: usize) -> DomainPoint {
    let mut rng = trial_rng(cfg.seed, index);
    match cfg.mode {
        SampleMode::InsideBeta => {
            let q = disc(&mut rng, cfg.q_radius);
            beta_point(&mut rng, cfg.n, q, None)
        }
        SampleMode::NearBoundary => {
            let q = disc(&mut rng, cfg.q_radius);
            beta_point(&mut rng, cfg.n, q, Some(cfg.eps))
        }
        SampleMode::InsidePolydisc => polydisc_point(&mut rng, cfg.n, None),
        SampleMode::AmbientBox => box_point(&mut rng, cfg.n, cfg.box_scale),
    }
}

/// All `count` points of the configured sampler.
pub fn sample(cfg: &SampleConfig) -> Result<Vec<DomainPoint>> {
    cfg.validate()?;
    Ok((0..cfg.count).map(|i| sample_point(cfg, i)).collect())
}

/// Points of `G~_n`; accepts `InsideBeta` and `NearBoundary`.
pub fn sample_inside_gtilde(cfg: &SampleConfig) -> Result<Vec<DomainPoint>> {
    match cfg.mode {
        SampleMode::InsideBeta | SampleMode::NearBoundary => sample(cfg),
        m => Err(Error::WrongMode { sampler: "sample_inside_gtilde", mode: m.to_string() }),
    }
}

/// Points of `G_n`; accepts `InsidePolydisc` and `NearBoundary`.
pub fn sample_inside_gn(cfg: &SampleConfig) -> Result<Vec<DomainPoint>> {
    cfg.validate()?;
    match cfg.mode {
        SampleMode::InsidePolydisc => sample(cfg),
        SampleMode::NearBoundary => {
            Ok((0..cfg.count).map(|i| polydisc_point(&mut trial_rng(cfg.seed, i), cfg.n, Some(cfg.eps))).collect())
        }
        m => Err(Error::WrongMode { sampler: "sample_inside_gn", mode: m.to_string() }),
    }
}
