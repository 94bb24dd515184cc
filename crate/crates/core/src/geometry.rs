//! Linear maps between `G~_n` (or `Gamma~_n`) and `G~_{n +- 1}` that fix
//! the last coordinate `q`.
//!
//! Every map is stored as sparse rows over `y_1..y_{n-1}`, generated from
//! the input index `n`:
//!
//! | id | input `n` | output | coordinates |
//! |----|-----------|--------|-------------|
//! | `hat-up-even` | even | `n+1` | `c_j y_j`, `c_j y_{n-j}` at `j`, `n+1-j`, `c_j = binom(n+1,j)/binom(n,j)` |
//! | `star-up-odd` | odd | `n+1` | as above for `j < (n+1)/2`, middle `y_k + y_{k+1}` |
//! | `check-down-even` | even | `n-1` | `d_j y_j`, `d_j y_{n-j}`, `d_j = binom(n-1,j)/binom(n,j)`, drops `y_{n/2}` |
//! | `tilde-down-odd` | odd | `n-1` | as above, middle `d_h (y_h + y_{h+1})/2` |
//! | `pad-even` | even | `n+1` | repeats `y_{n/2}` |
//! | `contract-even` | odd | `n-1` | same rows as `tilde-down-odd` |
//! | `normalize-sharp-even` | odd | `n-1` | `y_i / binom(n,i)`, middle pair averaged |
//! | `pad-odd` | odd | `n+1` | inserts `(y_k + y_{k+1})/2` |
//! | `contract-odd` | even | `n-1` | same rows as `check-down-even` |
//! | `normalize-sharp-odd` | even | `n-1` | `y_i / binom(n,i)`, drops `y_{n/2}` |
//!
//! For even `n`, `contract-even` after `pad-even` multiplies `y_i` by
//! `(n + 1 - min(i, n - i)) / (n + 1)`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::binom;
use crate::domains::{in_gammatilde, in_gtilde, DomainPoint, MembershipVerdict};
use crate::error::{Error, Result};
use crate::verify::{beta_point, disc, trial_rng, unimodular, SampleConfig, SampleMode, Trial, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShiftMapId {
    HatUpEven,
    StarUpOdd,
    CheckDownEven,
    TildeDownOdd,
    PadEven,
    ContractEven,
    NormalizeSharpEven,
    PadOdd,
    ContractOdd,
    NormalizeSharpOdd,
}

impl ShiftMapId {
    pub const ALL: [ShiftMapId; 10] = [
        ShiftMapId::HatUpEven,
        ShiftMapId::StarUpOdd,
        ShiftMapId::CheckDownEven,
        ShiftMapId::TildeDownOdd,
        ShiftMapId::PadEven,
        ShiftMapId::ContractEven,
        ShiftMapId::NormalizeSharpEven,
        ShiftMapId::PadOdd,
        ShiftMapId::ContractOdd,
        ShiftMapId::NormalizeSharpOdd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ShiftMapId::HatUpEven => "hat-up-even",
            ShiftMapId::StarUpOdd => "star-up-odd",
            ShiftMapId::CheckDownEven => "check-down-even",
            ShiftMapId::TildeDownOdd => "tilde-down-odd",
            ShiftMapId::PadEven => "pad-even",
            ShiftMapId::ContractEven => "contract-even",
            ShiftMapId::NormalizeSharpEven => "normalize-sharp-even",
            ShiftMapId::PadOdd => "pad-odd",
            ShiftMapId::ContractOdd => "contract-odd",
            ShiftMapId::NormalizeSharpOdd => "normalize-sharp-odd",
        }
    }

    /// Whether the input index must be even.
    pub fn even_input(self) -> bool {
        use ShiftMapId::*;
        matches!(self, HatUpEven | CheckDownEven | PadEven | ContractOdd | NormalizeSharpOdd)
    }

    /// Smallest admissible input index.
    pub fn min_input(self) -> usize {
        use ShiftMapId::*;
        match self {
            HatUpEven | PadEven => 2,
            StarUpOdd | TildeDownOdd | ContractEven | NormalizeSharpEven | PadOdd => 3,
            CheckDownEven | ContractOdd | NormalizeSharpOdd => 4,
        }
    }

    pub fn raises_dimension(self) -> bool {
        use ShiftMapId::*;
        matches!(self, HatUpEven | StarUpOdd | PadEven | PadOdd)
    }

    /// Membership is preserved in both directions, not only forward.
    pub fn is_iff(self) -> bool {
        matches!(self, ShiftMapId::HatUpEven | ShiftMapId::StarUpOdd)
    }

    pub fn accepts(self, n: usize) -> bool {
        n >= self.min_input() && (n % 2 == 0) == self.even_input()
    }

    pub fn output_n(self, n: usize) -> usize {
        if self.raises_dimension() {
            n + 1
        } else {
            n - 1
        }
    }
}

impl fmt::Display for ShiftMapId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ShiftMapId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ShiftMapId::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown map `{s}`")))
    }
}

/// A shift map together with the domain it is read on: `G~` or, when
/// `closed`, `Gamma~`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShiftMap {
    pub id: ShiftMapId,
    pub closed: bool,
}

impl ShiftMap {
    pub fn open(id: ShiftMapId) -> Self {
        Self { id, closed: false }
    }

    pub fn closed(id: ShiftMapId) -> Self {
        Self { id, closed: true }
    }

    fn member(&self, y: &DomainPoint) -> MembershipVerdict {
        if self.closed {
            in_gammatilde(y)
        } else {
            in_gtilde(y)
        }
    }
}

/// Output coordinate `i` (1-based) is `sum coeff * y_src` over `rows[i-1]`.
pub type Rows = Vec<Vec<(usize, f64)>>;

/// Sparse rows of `id` for input index `n`.
pub fn rows(id: ShiftMapId, n: usize) -> Result<Rows> {
    use ShiftMapId::*;
    if !id.accepts(n) {
        let expected = format!("{} >= {}", if id.even_input() { "even" } else { "odd" }, id.min_input());
        return Err(Error::ParityMismatch { map: id.name().into(), expected, n });
    }
    let out_len = id.output_n(n) - 1;
    let mut r: Rows = vec![Vec::new(); out_len];
    let mut set = |pos: usize, terms: Vec<(usize, f64)>| r[pos - 1] = terms;
    let up = |j: usize| binom(n + 1, j) / binom(n, j);
    let down = |j: usize| binom(n - 1, j) / binom(n, j);
    let inv = |i: usize| 1.0 / binom(n, i);
    match id {
        HatUpEven => {
            for j in 1..=n / 2 {
                set(j, vec![(j, up(j))]);
                set(n + 1 - j, vec![(n - j, up(j))]);
            }
        }
        StarUpOdd => {
            let k = n / 2;
            for j in 1..=k {
                set(j, vec![(j, up(j))]);
                set(n + 1 - j, vec![(n - j, up(j))]);
            }
            set(k + 1, vec![(k, 1.0), (k + 1, 1.0)]);
        }
        CheckDownEven | ContractOdd => {
            for j in 1..n / 2 {
                set(j, vec![(j, down(j))]);
                set(n - 1 - j, vec![(n - j, down(j))]);
            }
        }
        TildeDownOdd | ContractEven => {
            let h = n / 2;
            for j in 1..h {
                set(j, vec![(j, down(j))]);
                set(n - 1 - j, vec![(n - j, down(j))]);
            }
            set(h, vec![(h, down(h) / 2.0), (h + 1, down(h) / 2.0)]);
        }
        PadEven => {
            for i in 1..=n {
                set(i, vec![(if i <= n / 2 { i } else { i - 1 }, 1.0)]);
            }
        }
        PadOdd => {
            let k = n / 2;
            for i in 1..=n {
                if i == k + 1 {
                    set(i, vec![(k, 0.5), (k + 1, 0.5)]);
                } else {
                    set(i, vec![(if i <= k { i } else { i - 1 }, 1.0)]);
                }
            }
        }
        NormalizeSharpEven => {
            let h = n / 2;
            for i in 1..=n - 2 {
                if i == h {
                    set(i, vec![(h, inv(h) / 2.0), (h + 1, inv(h + 1) / 2.0)]);
                } else {
                    let src = if i < h { i } else { i + 1 };
                    set(i, vec![(src, inv(src))]);
                }
            }
        }
        NormalizeSharpOdd => {
            let k = (n - 2) / 2;
            for i in 1..=n - 2 {
                let src = if i <= k { i } else { i + 1 };
                set(i, vec![(src, inv(src))]);
            }
        }
    }
    Ok(r)
}

/// Applies `map` to `y`; `q` is carried over unchanged.
pub fn shift(map: &ShiftMap, y: &DomainPoint) -> Result<DomainPoint> {
    let r = rows(map.id, y.n())?;
    let out = r.iter().map(|row| row.iter().map(|&(src, w)| w * y.coord(src)).sum()).collect();
    DomainPoint::new(out, y.q())
}

/// `(y_1 / binom(n,1), ..., y_{n-1} / binom(n,n-1), q)`.
pub fn normalize(y: &DomainPoint) -> DomainPoint {
    let n = y.n();
    let out = (1..n).map(|i| y.coord(i) / binom(n, i)).collect();
    DomainPoint::new(out, y.q()).expect("finite input")
}

/// A point of `Gamma~_n` with `|beta_j| + |beta_{n-j}| = binom(n, j)`,
/// with `q` on the unit circle when `circle` is set.
fn closed_boundary_point(rng: &mut impl Rng, n: usize, circle: bool) -> DomainPoint {
    let q = if circle { unimodular(rng) } else { disc(rng, 0.99) };
    beta_point(rng, n, q, Some(0.0))
}

/// Samples the membership claims of `map` for input index `n`.
///
/// Every trial draws a point of the domain (interior, near-boundary, or for
/// `closed` maps boundary points including `|q| = 1`) and checks that the
/// image is in the target domain; the normalizing maps also check the
/// intermediate point. For the two-sided maps every trial also draws a
/// point of the ambient box and compares the verdicts before and after,
/// skipping points within `1e-6` of the boundary.
pub fn shift_verify(map: &ShiftMap, n: usize, samples: usize, seed: u64) -> Result<VerificationReport> {
    rows(map.id, n)?;
    if samples == 0 {
        return Err(Error::InvalidInput("samples must be at least 1".into()));
    }
    let label = format!("{}{}@n={n}", map.id, if map.closed { "/closed" } else { "" });
    let cfg = SampleConfig::new(n, samples, seed, SampleMode::AmbientBox);
    Ok(VerificationReport::run(&label, samples, |i| {
        let mut rng = trial_rng(seed, i);
        let y = if map.closed {
            match i % 3 {
                0 => closed_boundary_point(&mut rng, n, true),
                1 => closed_boundary_point(&mut rng, n, false),
                _ => {
                    let q = disc(&mut rng, 0.99);
                    beta_point(&mut rng, n, q, None)
                }
            }
        } else {
            let q = disc(&mut rng, 0.99);
            beta_point(&mut rng, n, q, if i % 2 == 0 { None } else { Some(1e-4) })
        };
        let mut trial = forward(map, &y);
        if map.id.is_iff() {
            let z = crate::verify::sample_point(&cfg, i);
            trial = trial.and(reverse(map, &z));
        }
        trial
    }))
}

fn describe(y: &DomainPoint) -> String {
    serde_json::to_string(y).unwrap_or_default()
}

fn forward(map: &ShiftMap, y: &DomainPoint) -> Trial {
    let mut images = vec![shift(map, y).expect("admissible index")];
    if matches!(map.id, ShiftMapId::NormalizeSharpEven | ShiftMapId::NormalizeSharpOdd) {
        images.push(normalize(y));
    }
    images.into_iter().fold(Trial::pass(0.0), |acc, img| {
        let v = map.member(&img);
        let residual = (-v.margin).max(0.0);
        acc.and(Trial::check(v.is_inside(), residual, || describe(y), || describe(&img), "image inside"))
    })
}

fn reverse(map: &ShiftMap, z: &DomainPoint) -> Trial {
    let img = shift(map, z).expect("admissible index");
    let (before, after) = (map.member(z), map.member(&img));
    if before.margin.abs() < 1e-6 || after.margin.abs() < 1e-6 {
        return Trial::pass(0.0);
    }
    Trial::check(
        before.is_inside() == after.is_inside(),
        0.0,
        || describe(z),
        || format!("{:?} -> {:?}", before.verdict, after.verdict),
        "same verdict before and after",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{c, Cplx};
    use crate::verify::trial_rng;

    fn random_point(rng: &mut impl Rng, n: usize) -> DomainPoint {
        DomainPoint::new((1..n).map(|_| disc(rng, 3.0)).collect(), disc(rng, 1.0)).unwrap()
    }

    #[test]
    fn origin_maps_to_origin() {
        for id in ShiftMapId::ALL {
            for n in 2..9 {
                if id.accepts(n) {
                    let out = shift(&ShiftMap::open(id), &DomainPoint::origin(n)).unwrap();
                    assert_eq!(out, DomainPoint::origin(id.output_n(n)), "{id} n={n}");
                }
            }
        }
    }

    #[test]
    fn parity_is_enforced() {
        let y = DomainPoint::origin(5);
        let err = shift(&ShiftMap::open(ShiftMapId::HatUpEven), &y).unwrap_err();
        assert!(matches!(err, Error::ParityMismatch { n: 5, .. }));
        assert!(shift(&ShiftMap::open(ShiftMapId::CheckDownEven), &DomainPoint::origin(2)).is_err());
    }

    #[test]
    fn small_examples() {
        let (y1, q) = (c(0.4, -0.2), c(0.1, 0.3));
        let out = shift(&ShiftMap::open(ShiftMapId::HatUpEven), &DomainPoint::new(vec![y1], q).unwrap()).unwrap();
        assert_eq!(out.coords(), vec![1.5 * y1, 1.5 * y1, q]);

        let ys = [c(1.0, 0.1), c(2.0, 0.2), c(3.0, 0.3), c(4.0, 0.4)];
        let y = DomainPoint::new(ys.to_vec(), q).unwrap();
        let out = shift(&ShiftMap::open(ShiftMapId::NormalizeSharpEven), &y).unwrap();
        let want = [ys[0] / 5.0, (ys[1] / 10.0 + ys[2] / 10.0) / 2.0, ys[3] / 5.0, q];
        for (a, b) in out.coords().iter().zip(want) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn shared_rows() {
        for n in [3, 5, 7] {
            assert_eq!(rows(ShiftMapId::ContractEven, n).unwrap(), rows(ShiftMapId::TildeDownOdd, n).unwrap());
        }
        for n in [4, 6, 8] {
            assert_eq!(rows(ShiftMapId::ContractOdd, n).unwrap(), rows(ShiftMapId::CheckDownEven, n).unwrap());
        }
    }

    #[test]
    fn maps_are_linear_with_fixed_q() {
        let mut rng = trial_rng(5, 0);
        for id in ShiftMapId::ALL {
            for n in 2..9 {
                if !id.accepts(n) {
                    continue;
                }
                let m = ShiftMap::open(id);
                for _ in 0..50 {
                    let (u, v) = (random_point(&mut rng, n), random_point(&mut rng, n));
                    let (a, b) = (disc(&mut rng, 2.0), disc(&mut rng, 2.0));
                    let q = u.q();
                    let mix: Vec<Cplx> = u.y().iter().zip(v.y()).map(|(s, t)| a * s + b * t).collect();
                    let lhs = shift(&m, &DomainPoint::new(mix, q).unwrap()).unwrap();
                    let (su, sv) = (shift(&m, &u).unwrap(), shift(&m, &v).unwrap());
                    assert_eq!(lhs.q(), q);
                    for i in 0..lhs.n() - 1 {
                        let want = a * su.y()[i] + b * sv.y()[i];
                        assert!((lhs.y()[i] - want).norm() < 1e-13 * want.norm().max(1.0), "{id} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn pad_then_contract_rescales() {
        let mut rng = trial_rng(6, 0);
        for n in [2, 4, 6, 8] {
            let y = random_point(&mut rng, n);
            let padded = shift(&ShiftMap::open(ShiftMapId::PadEven), &y).unwrap();
            let back = shift(&ShiftMap::open(ShiftMapId::ContractEven), &padded).unwrap();
            for i in 1..n {
                let w = (n + 1 - i.min(n - i)) as f64 / (n + 1) as f64;
                assert!((back.coord(i) - w * y.coord(i)).norm() < 1e-14);
            }
            assert_eq!(back.q(), y.q());
        }
    }

    #[test]
    fn membership_claims_hold() {
        for id in ShiftMapId::ALL {
            for n in 2..8 {
                if !id.accepts(n) {
                    continue;
                }
                for closed in [false, true] {
                    let r = shift_verify(&ShiftMap { id, closed }, n, 300, 17).unwrap();
                    assert!(r.passed, "{r:?}");
                }
            }
        }
    }
}
