use super::{op_norm, Cplx, Mat2};
use crate::error::{Error, Result};
use crate::tolerance::CONTRACTION_TOL;

/// Central contractive completion of `[[p, ?], [r, s]]`.
///
/// Given a contractive column `(p, r)` and row `(r, s)`, returns
/// `q = -p * conj(r) * s / (1 - |r|^2)`, for which `[[p, q], [r, s]]` is a
/// contraction. When `|r| = 1` the column forces `p = 0` and `0` is returned.
pub fn parrott_central(p: Cplx, r: Cplx, s: Cplx) -> Result<Cplx> {
    let column = (p.norm_sqr() + r.norm_sqr()).sqrt();
    let row = (r.norm_sqr() + s.norm_sqr()).sqrt();
    if !(column <= 1.0 + CONTRACTION_TOL && row <= 1.0 + CONTRACTION_TOL) {
        return Err(Error::RowColumnNotContractive { column, row });
    }
    let denom = 1.0 - r.norm_sqr();
    if denom <= CONTRACTION_TOL {
        return Ok(Cplx::new(0.0, 0.0));
    }
    let q = -p * r.conj() * s / denom;
    let norm = op_norm(&Mat2::new(p, q, r, s));
    if norm > 1.0 + CONTRACTION_TOL {
        return Err(Error::NotAContraction { norm });
    }
    Ok(q)
}
