//! Schwarz-lemma estimates and the explicit interpolant `psi` with
//! `psi(0) = 0`, `psi'(0) = x`, realized through a 2x2 Schur-class family.

mod interpolant;
mod lift;
mod schur;

use serde::{Deserialize, Serialize};

use crate::algebra::{binom, is_finite, Cplx};
use crate::domains::{phi_hinf, DomainPoint};
use crate::error::{Error, Result};
use crate::json::{from_pair, from_pairs, to_pair};
use crate::tolerance::CONTRACTION_TOL;

pub use interpolant::{interpolant_derivative, interpolant_eval, interpolate_full, Interpolation};
pub use lift::{lift, lift_even, lift_odd, LiftInput};
pub use schur::{build_schur, schur_closed_form, schur_eval, FamilyKind, SchurFamily};

/// Prescribed derivative `x = (x_1, ..., x_n)` at the origin.
///
/// Serialized as `{"n": n, "x": [[re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DataRecord", into = "DataRecord")]
pub struct DerivativeData {
    x: Vec<Cplx>,
}

#[derive(Serialize, Deserialize)]
struct DataRecord {
    n: usize,
    x: Vec<[f64; 2]>,
}

impl TryFrom<DataRecord> for DerivativeData {
    type Error = Error;

    fn try_from(r: DataRecord) -> Result<Self> {
        if r.x.len() != r.n {
            return Err(Error::InvalidInput(format!("n = {} but x has {} entries", r.n, r.x.len())));
        }
        DerivativeData::new(from_pairs(&r.x)?)
    }
}

impl From<DerivativeData> for DataRecord {
    fn from(d: DerivativeData) -> Self {
        DataRecord { n: d.n(), x: d.x.iter().map(|&z| to_pair(z)).collect() }
    }
}

impl DerivativeData {
    pub fn new(x: Vec<Cplx>) -> Result<Self> {
        if x.len() < 2 {
            return Err(Error::InvalidInput("derivative data needs n >= 2".into()));
        }
        if !x.iter().all(|&z| is_finite(z)) {
            return Err(Error::InvalidInput("non-finite derivative entry".into()));
        }
        Ok(Self { x })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[Cplx] {
        &self.x
    }

    /// `x_j`, 1-based.
    pub fn get(&self, j: usize) -> Cplx {
        self.x[j - 1]
    }

    fn first(&self) -> Cplx {
        self.x[0]
    }

    fn penultimate(&self) -> Cplx {
        self.x[self.n() - 2]
    }

    fn last(&self) -> Cplx {
        self.x[self.n() - 1]
    }
}

/// Derivative data together with the coefficient `r_x` of the interpolant.
///
/// Serialized as `{"n": n, "x": [[re, im], ...], "r": [re, im]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpecRecord", into = "SpecRecord")]
pub struct InterpolantSpec {
    pub data: DerivativeData,
    pub r: Cplx,
}

#[derive(Serialize, Deserialize)]
struct SpecRecord {
    n: usize,
    x: Vec<[f64; 2]>,
    r: [f64; 2],
}

impl TryFrom<SpecRecord> for InterpolantSpec {
    type Error = Error;

    fn try_from(s: SpecRecord) -> Result<Self> {
        let data = DerivativeData::try_from(DataRecord { n: s.n, x: s.x })?;
        let r = from_pair(s.r)?;
        if data.first() == Cplx::new(0.0, 0.0) && data.penultimate() == Cplx::new(0.0, 0.0) && r != Cplx::new(0.0, 0.0)
        {
            return Err(Error::InvalidInput("r must vanish when x_1 = x_(n-1) = 0".into()));
        }
        Ok(Self { data, r })
    }
}

impl From<InterpolantSpec> for SpecRecord {
    fn from(s: InterpolantSpec) -> Self {
        let d = DataRecord::from(s.data);
        SpecRecord { n: d.n, x: d.x, r: to_pair(s.r) }
    }
}

impl InterpolantSpec {
    /// Pairs `data` with its coefficient from [`r_coeff`].
    pub fn new(data: DerivativeData) -> Result<Self> {
        let r = r_coeff(&data)?;
        Ok(Self { data, r })
    }
}

/// Outcome of [`necessary_condition`]: `margin = 1 - LHS`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub holds: bool,
    pub margin: f64,
}

/// `max_j |x_j| / binom(n, j) + |x_n| <= 1`, the bound every `psi'(0)` obeys.
pub fn necessary_condition(d: &DerivativeData) -> ConditionCheck {
    let n = d.n();
    let lead = (1..n).map(|j| d.get(j).norm() / binom(n, j)).fold(0.0, f64::max);
    let margin = 1.0 - (lead + d.last().norm());
    ConditionCheck { holds: margin >= -CONTRACTION_TOL, margin }
}

/// Whether `max_j ||Phi_j(., y0)||_inf <= |lambda0|`, the bound satisfied by
/// every analytic `psi` with `psi(0) = 0` and `psi(lambda0) = y0`.
pub fn two_point_norm_check(lambda0: Cplx, y0: &DomainPoint) -> Result<bool> {
    let m = lambda0.norm();
    if !(m > 0.0 && m < 1.0) {
        return Err(Error::InvalidInput(format!("|lambda0| = {m} must lie in (0, 1)")));
    }
    let mut worst = 0.0f64;
    for j in 1..y0.n() {
        worst = worst.max(phi_hinf(j, y0)?);
    }
    Ok(worst <= m + CONTRACTION_TOL)
}

/// The coefficient `r_x` of the explicit interpolant.
///
/// With `a` the larger of `|x_1|`, `|x_{n-1}|`:
/// `r_x = x_1 x_{n-1} (n - a) / (n a (n - a - n |x_n|^2))`, and `0` when
/// `x_1 = x_{n-1} = 0`.
pub fn r_coeff(d: &DerivativeData) -> Result<Cplx> {
    let (x1, xm, xn) = (d.first(), d.penultimate(), d.last());
    let a = x1.norm().max(xm.norm());
    if a == 0.0 {
        return Ok(Cplx::new(0.0, 0.0));
    }
    let n = d.n() as f64;
    let den = n - a - n * xn.norm_sqr();
    if den <= 1e-12 {
        return Err(Error::DegenerateDenominator { value: den });
    }
    Ok(x1 * xm * (n - a) / (n * a * den))
}

/// The coordinates `x_1, ..., x_{n-1}` of the interpolant direction,
/// rebuilt from `x_1` and `x_{n-1}` alone.
pub(crate) fn profile(d: &DerivativeData) -> Vec<Cplx> {
    let n = d.n();
    let nf = n as f64;
    let (x1, xm) = (d.first(), d.penultimate());
    (1..n)
        .map(|j| {
            let w = binom(n, j) / nf;
            if n % 2 == 0 && 2 * j == n {
                w * (x1 + xm) / 2.0
            } else if 2 * j <= n {
                w * x1
            } else {
                w * xm
            }
        })
        .collect()
}
