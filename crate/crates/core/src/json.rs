//! `[re, im]` pair encoding shared by the JSON records.

use crate::algebra::Cplx;
use crate::error::{Error, Result};

pub(crate) fn to_pair(z: Cplx) -> [f64; 2] {
    [z.re, z.im]
}

pub(crate) fn from_pair(p: [f64; 2]) -> Result<Cplx> {
    let z = Cplx::new(p[0], p[1]);
    if crate::algebra::is_finite(z) {
        Ok(z)
    } else {
        Err(Error::InvalidInput("non-finite complex component".into()))
    }
}

pub(crate) fn from_pairs(ps: &[[f64; 2]]) -> Result<Vec<Cplx>> {
    ps.iter().map(|&p| from_pair(p)).collect()
}
