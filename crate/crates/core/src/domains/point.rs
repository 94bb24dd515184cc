use serde::{Deserialize, Serialize};

use crate::algebra::{is_finite, Cplx};
use crate::error::{Error, Result};
use crate::json::{from_pair, from_pairs, to_pair};

/// A point `(y_1, ..., y_{n-1}, q)` of `C^n`.
///
/// Serialized as `{"n": n, "y": [[re, im], ...], "q": [re, im]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PointRecord", into = "PointRecord")]
pub struct DomainPoint {
    y: Vec<Cplx>,
    q: Cplx,
}

#[derive(Serialize, Deserialize)]
struct PointRecord {
    n: usize,
    y: Vec<[f64; 2]>,
    q: [f64; 2],
}

impl TryFrom<PointRecord> for DomainPoint {
    type Error = Error;

    fn try_from(r: PointRecord) -> Result<Self> {
        if r.y.len() + 1 != r.n {
            return Err(Error::InvalidInput(format!(
                "n = {} but y has {} entries (expected {})",
                r.n,
                r.y.len(),
                r.n.saturating_sub(1)
            )));
        }
        DomainPoint::new(from_pairs(&r.y)?, from_pair(r.q)?)
    }
}

impl From<DomainPoint> for PointRecord {
    fn from(p: DomainPoint) -> Self {
        PointRecord { n: p.n(), y: p.y.iter().map(|&z| to_pair(z)).collect(), q: to_pair(p.q) }
    }
}

impl DomainPoint {
    /// Builds a point from `y_1..y_{n-1}` and `q`. Requires `n >= 2`.
    pub fn new(y: Vec<Cplx>, q: Cplx) -> Result<Self> {
        if y.is_empty() {
            return Err(Error::InvalidInput("ambient index n must be at least 2".into()));
        }
        if !y.iter().all(|&z| is_finite(z)) || !is_finite(q) {
            return Err(Error::InvalidInput("non-finite coordinate".into()));
        }
        Ok(Self { y, q })
    }

    /// Builds a point from all `n` coordinates, the last one being `q`.
    pub fn from_coords(coords: &[Cplx]) -> Result<Self> {
        match coords.split_last() {
            Some((&q, y)) => Self::new(y.to_vec(), q),
            None => Err(Error::InvalidInput("empty coordinate list".into())),
        }
    }

    pub fn origin(n: usize) -> Self {
        assert!(n >= 2, "ambient index n must be at least 2");
        Self { y: vec![Cplx::new(0.0, 0.0); n - 1], q: Cplx::new(0.0, 0.0) }
    }

    /// Ambient index.
    pub fn n(&self) -> usize {
        self.y.len() + 1
    }

    /// `y_1..y_{n-1}`.
    pub fn y(&self) -> &[Cplx] {
        &self.y
    }

    pub fn q(&self) -> Cplx {
        self.q
    }

    /// Coordinate `j` (1-based); `coord(n)` is `q`.
    pub fn coord(&self, j: usize) -> Cplx {
        assert!(j >= 1 && j <= self.n(), "coordinate index {j} out of range 1..={}", self.n());
        if j == self.n() {
            self.q
        } else {
            self.y[j - 1]
        }
    }

    /// All `n` coordinates with `q` last.
    pub fn coords(&self) -> Vec<Cplx> {
        let mut v = self.y.clone();
        v.push(self.q);
        v
    }

    /// Largest coordinate-wise modulus of `self - other`; infinite if the
    /// ambient indices differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.n() != other.n() {
            return f64::INFINITY;
        }
        self.coords().iter().zip(other.coords()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// The symmetrization map: elementary symmetric functions `s_1..s_{n-1}` of
/// `zs` and their product.
pub fn symmetrize(zs: &[Cplx]) -> Result<DomainPoint> {
    if zs.len() < 2 {
        return Err(Error::InvalidInput("symmetrize needs at least two entries".into()));
    }
    // e[k] accumulates the k-th elementary symmetric function.
    let mut e = vec![Cplx::new(0.0, 0.0); zs.len() + 1];
    e[0] = Cplx::new(1.0, 0.0);
    for (i, &z) in zs.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            e[k] = e[k] + z * e[k - 1];
        }
    }
    DomainPoint::from_coords(&e[1..])
}
