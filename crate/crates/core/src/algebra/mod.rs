//! Closed-form complex scalar, 2x2 matrix and polynomial primitives.

mod mat2;
mod parrott;
mod poly;

pub use mat2::{defect, mobius, op_norm, Mat2};
pub use parrott::parrott_central;
pub use poly::{roots, MonicPoly, MAX_ITERATIONS};

/// Complex scalar used throughout the crate.
pub type Cplx = num_complex::Complex64;

/// Shorthand constructor for a complex number.
#[inline]
pub fn c(re: f64, im: f64) -> Cplx {
    Cplx::new(re, im)
}

/// Binomial coefficient as `f64`. Exact for the small arguments used here.
pub fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as f64
}

pub(crate) fn is_finite(z: Cplx) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(3, 1), 3.0);
        assert_eq!(binom(6, 3), 20.0);
        assert_eq!(binom(5, 0), 1.0);
        assert_eq!(binom(2, 3), 0.0);
        assert_eq!(binom(30, 15), 155_117_520.0);
    }
}
