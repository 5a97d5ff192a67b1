//! L-values from Fourier coefficients and the functional equation alone.
//!
//! With `x_n = 2 pi n / sqrt(N)` and a cutoff `A > 0`,
//! `L(s) = sum_n a_n [x_n^(-s) Gamma(s, A x_n) + eps x_n^(s-k) Gamma(k-s, x_n/A)]
//! / ((sqrt(N)/2pi)^s Gamma(s))`, independent of `A` exactly when `eps` is the
//! root number.

use crate::arith::{lattice_coefficients, CMFormId};
use crate::error::{Error, Result};
use crate::numerics::{Complex, PrecisionContext};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer};
use serde::Serialize;

/// Cutoff parameters compared to detect the root number.
pub const CUTOFFS: (f64, f64) = (1.0, 1.3);
/// Agreement required between the two cutoffs for the selected sign.
pub const ROOT_NUMBER_TOLERANCE: f64 = 1e-6;
/// Accuracy target of the route.
pub const AFE_TOLERANCE: f64 = 1e-8;
const TRUNCATION: f64 = 1e-45;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AfeValue {
    #[serde(skip)]
    pub value: Complex,
    pub root_number: i32,
    /// `|L(A_1) - L(A_2)|` for the selected sign.
    pub cutoff_deviation: f64,
    /// `|L(A_1) - L(A_2)|` for the rejected sign.
    pub rejected_deviation: f64,
    pub terms: u64,
}

/// `Gamma(m, x)` for a positive integer `m`.
fn upper_gamma(m: u32, x: &Float) -> Float {
    let prec = x.prec();
    let mut term = Float::with_val(prec, 1);
    let mut sum = Float::with_val(prec, 1);
    for j in 1..m {
        term *= x;
        term /= j;
        sum += &term;
    }
    let fact = Float::with_val(prec, Integer::from(Integer::factorial(m - 1)));
    fact * sum * Float::with_val(prec, -x).exp()
}

/// Number of coefficients after which both sums are below the truncation target.
fn term_count(level: u64, k: u32, a_max: f64) -> u64 {
    let rate = 2.0 * std::f64::consts::PI / (a_max * (level as f64).sqrt());
    let mut n = 1u64;
    while (n as f64).powi(k as i32 + 1) * (-rate * n as f64).exp() > TRUNCATION {
        n += 1;
    }
    n
}

/// The two sums `(S_1, S_2)` with `L = S_1 + eps S_2` at cutoff `a`.
fn split_sums(coeffs: &[Integer], level: u64, k: u32, s: u32, a: &Float, prec: u32) -> (Float, Float) {
    let pi = Float::with_val(prec, Constant::Pi);
    let root_n = Float::with_val(prec, level).sqrt();
    let step = Float::with_val(prec, &pi * 2u32) / &root_n;
    let mut s1 = Float::with_val(prec, 0);
    let mut s2 = Float::with_val(prec, 0);
    for (n, an) in coeffs.iter().enumerate().skip(1) {
        if *an == 0 {
            continue;
        }
        let x = Float::with_val(prec, &step * n as u32);
        let xa = Float::with_val(prec, &x * a);
        let xd = Float::with_val(prec, &x / a);
        let t1 = upper_gamma(s, &xa) / Float::with_val(prec, x.clone().pow(s));
        let t2 = upper_gamma(k - s, &xd) / Float::with_val(prec, x.clone().pow(k - s));
        s1 += t1 * an;
        s2 += t2 * an;
    }
    let norm = Float::with_val(prec, &root_n / (pi * 2u32)).pow(s) * Float::with_val(prec, Integer::from(Integer::factorial(s - 1)));
    (s1 / &norm, s2 / norm)
}

/// `L(form, s)` for an integer `0 < s < k`, with the root number detected from
/// cutoff stability.
pub fn lvalue_afe_detailed(form: &CMFormId, s: u32, ctx: &PrecisionContext) -> Result<AfeValue> {
    ctx.validate()?;
    let k = form.weight;
    if s == 0 || s >= k {
        return Err(Error::UnsupportedParameter(format!("s = {} outside the critical strip", s)));
    }
    let prec = ctx.prec().min(192);
    let nmax = term_count(form.level, k, CUTOFFS.1);
    let coeffs = lattice_coefficients(form, nmax)?;
    let coeffs = &coeffs[..=nmax as usize];
    let a1 = Float::with_val(prec, CUTOFFS.0);
    let a2 = Float::with_val(prec, CUTOFFS.1);
    let (p1, q1) = split_sums(coeffs, form.level, k, s, &a1, prec);
    let (p2, q2) = split_sums(coeffs, form.level, k, s, &a2, prec);
    let deviation = |eps: i32| -> f64 {
        let l1 = Float::with_val(prec, &p1 + Float::with_val(prec, &q1 * eps));
        let l2 = Float::with_val(prec, &p2 + Float::with_val(prec, &q2 * eps));
        Float::with_val(prec, l1 - l2).abs().to_f64()
    };
    let (plus, minus) = (deviation(1), deviation(-1));
    let eps = match (plus < ROOT_NUMBER_TOLERANCE, minus < ROOT_NUMBER_TOLERANCE) {
        (true, false) => 1,
        (false, true) => -1,
        _ => return Err(Error::RootNumberAmbiguous(form.label.clone())),
    };
    let value = Float::with_val(prec, &p1 + Float::with_val(prec, &q1 * eps));
    Ok(AfeValue {
        value: Complex::from_real(Float::with_val(ctx.prec(), value)),
        root_number: eps,
        cutoff_deviation: if eps == 1 { plus } else { minus },
        rejected_deviation: if eps == 1 { minus } else { plus },
        terms: nmax,
    })
}

pub fn lvalue_afe(form: &CMFormId, s: u32, ctx: &PrecisionContext) -> Result<Complex> {
    Ok(lvalue_afe_detailed(form, s, ctx)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incomplete_gamma_at_small_order() {
        let x = Float::with_val(128, 2);
        let g1 = upper_gamma(1, &x);
        assert!(Float::with_val(128, g1 - Float::with_val(128, -2).exp()).abs() < 1e-35);
        let g3 = upper_gamma(3, &x);
        let expected = Float::with_val(128, -2).exp() * 10u32;
        assert!(Float::with_val(128, g3 - expected).abs() < 1e-35);
    }

    #[test]
    fn term_count_grows_with_level() {
        assert!(term_count(7, 3, 1.3) < term_count(700, 3, 1.3));
    }
}
