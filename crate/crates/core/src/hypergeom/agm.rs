//! Complete elliptic integral of the first kind by the arithmetic-geometric mean.

use crate::error::{Error, Result};
use crate::numerics::{Complex, PrecisionContext};
use rug::Float;

/// Arithmetic-geometric mean of two positive reals.
pub fn agm(a: &Float, b: &Float) -> Float {
    let prec = a.prec();
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 4));
    let mut x = a.clone();
    let mut y = b.clone();
    for _ in 0..200 {
        let diff = Float::with_val(prec, &x - &y).abs();
        if diff <= Float::with_val(prec, &x * &eps) {
            break;
        }
        let nx = Float::with_val(prec, &x + &y) / 2u32;
        let ny = Float::with_val(prec, &x * &y).sqrt();
        x = nx;
        y = ny;
    }
    x
}

/// `K(m) = pi / (2 AGM(1, sqrt(1 - m)))`, parameter convention `m = k^2`.
pub fn elliptic_k_agm(m: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *m >= 1 {
        return Err(Error::DomainError("K(m) requires m < 1".into()));
    }
    let prec = ctx.prec();
    let one = Float::with_val(prec, 1);
    let b = (one.clone() - m).sqrt();
    let g = agm(&one, &b);
    Ok(Complex::pi(prec) / (g * 2u32))
}
