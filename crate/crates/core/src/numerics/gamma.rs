//! Euler's Gamma function for real arguments by reflection, upward shift and
//! the Stirling series.

use rug::float::Constant;
use rug::{Float, Integer, Rational};
use std::sync::{Mutex, OnceLock};

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1)]))
}

/// Bernoulli numbers `B_0, ..., B_n` (with `B_1 = -1/2`).
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut cache = bernoulli_cache().lock().expect("bernoulli cache poisoned");
    while cache.len() <= n {
        let m = cache.len();
        let mut s = Rational::new();
        let mut binom = Integer::from(1);
        for (j, b) in cache.iter().enumerate() {
            s += Rational::from(&binom * b.numer()) / b.denom();
            binom = binom * (m + 1 - j) as u64 / (j + 1) as u64;
        }
        cache.push(-s / Rational::from(m as u64 + 1));
    }
    cache[..=n].to_vec()
}

/// `ln Gamma(z)` for real `z` large enough that the Stirling series converges
/// to the working precision.
fn ln_gamma_stirling(z: &Float) -> Float {
    let prec = z.prec();
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32) - 8));
    let half = Float::with_val(prec, 0.5);
    let ln2pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let ln2pi = ln2pi.ln();
    let mut s = Float::with_val(prec, z - &half) * Float::with_val(prec, z.ln_ref()) - z + ln2pi / 2u32;
    let z2 = Float::with_val(prec, z.square_ref());
    let mut zpow = z.clone();
    let mut k = 1usize;
    let mut prev = Float::with_val(prec, f64::INFINITY);
    loop {
        let b = bernoulli_numbers(2 * k).pop().unwrap();
        let denom = Integer::from(2 * k as u64 * (2 * k as u64 - 1));
        let term = Float::with_val(prec, &b) / denom / &zpow;
        let mag = Float::with_val(prec, term.abs_ref());
        if mag > prev {
            break;
        }
        s += &term;
        if mag < eps {
            break;
        }
        prev = mag;
        zpow *= &z2;
        k += 1;
    }
    s
}

/// `Gamma(x)` for real `x` not a non-positive integer.
pub fn gamma(x: &Float) -> Float {
    let prec = x.prec();
    let wp = prec + 32;
    let xw = Float::with_val(wp, x);
    let half = Float::with_val(wp, 0.5);
    if xw < half {
        let pi = Float::with_val(wp, Constant::Pi);
        let s = Float::with_val(wp, &pi * &xw).sin();
        let one_minus = Float::with_val(wp, 1) - &xw;
        let g = gamma(&one_minus);
        return Float::with_val(prec, pi / (s * g));
    }
    let threshold = Float::with_val(wp, 0.12 * wp as f64 + 10.0);
    let mut z = xw.clone();
    let mut prod = Float::with_val(wp, 1);
    while z < threshold {
        prod *= &z;
        z += 1u32;
    }
    let lg = ln_gamma_stirling(&z);
    Float::with_val(prec, lg.exp() / prod)
}

pub fn gamma_rational(r: &Rational, prec: u32) -> Float {
    gamma(&Float::with_val(prec, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_small() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[1], Rational::from((-1, 2)));
        assert_eq!(b[2], Rational::from((1, 6)));
        assert_eq!(b[4], Rational::from((-1, 30)));
        assert_eq!(b[12], Rational::from((-691, 2730)));
        assert_eq!(b[7], 0);
    }

    #[test]
    fn agrees_with_mpfr() {
        let prec = 288;
        for (n, d) in [(1, 4), (3, 4), (1, 3), (5, 7), (1, 163), (162, 163), (7, 2), (1, 1)] {
            let x = Float::with_val(prec, Rational::from((n, d)));
            let ours = gamma(&x);
            let theirs = Float::with_val(prec, x.gamma_ref());
            let rel = Float::with_val(prec, &ours - &theirs).abs() / &theirs;
            assert!(rel < 1e-80, "{}/{}", n, d);
        }
    }

    #[test]
    fn reflection_identity() {
        let prec = 288;
        let g = gamma_rational(&Rational::from((1, 4)), prec) * gamma_rational(&Rational::from((3, 4)), prec);
        let target = Float::with_val(prec, Constant::Pi) * Float::with_val(prec, 2).sqrt();
        assert!(Float::with_val(prec, g - target).abs() < 1e-80);
    }
}
