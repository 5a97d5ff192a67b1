//! Chowla–Selberg periods `Omega_{-D}` of imaginary quadratic fields.

use crate::error::{Error, Result};
use crate::numerics::gamma::gamma_rational;
use crate::numerics::numtheory::{field_discriminant, kronecker, squarefree_decompose};
use crate::numerics::PrecisionContext;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};
use serde::Serialize;

/// `(D, h)` for the fields whose periods are used.
const CLASS_NUMBERS: &[(u64, u32)] = &[
    (3, 1),
    (4, 1),
    (7, 1),
    (8, 1),
    (11, 1),
    (15, 2),
    (19, 1),
    (20, 2),
    (24, 2),
    (40, 2),
    (43, 1),
    (67, 1),
    (163, 1),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChowlaSelbergParams {
    pub d: u64,
    pub class_number: u32,
    pub unit_order: u32,
    /// `chi(j) = (-D/j)` for `j = 0, ..., D-1`.
    pub character: Vec<i32>,
}

/// `true` when `-d` is a fundamental discriminant.
pub fn is_fundamental(d: u64) -> bool {
    if d < 3 {
        return false;
    }
    let (f, m) = squarefree_decompose(d as i64);
    matches!(f, 1 | 2) && field_discriminant(m as u64) == -(d as i64)
}

/// Class number of discriminant `-d`, by counting reduced forms.
pub fn class_number(d: u64) -> u32 {
    let d = d as i64;
    let mut h = 0;
    let mut a = 1i64;
    while 3 * a * a <= d {
        for b in -a + 1..=a {
            let n = b * b + d;
            if n % (4 * a) != 0 {
                continue;
            }
            let c = n / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            h += 1;
        }
        a += 1;
    }
    h
}

impl ChowlaSelbergParams {
    pub fn new(d: u64) -> Result<Self> {
        let h = CLASS_NUMBERS
            .iter()
            .find(|(x, _)| *x == d)
            .map(|(_, h)| *h)
            .ok_or(Error::UnsupportedDiscriminant(d))?;
        if !is_fundamental(d) {
            return Err(Error::UnsupportedDiscriminant(d));
        }
        let unit_order = match d {
            3 => 6,
            4 => 4,
            _ => 2,
        };
        let character = (0..d).map(|j| kronecker(-(d as i64), j as i64)).collect();
        Ok(ChowlaSelbergParams { d, class_number: h, unit_order, character })
    }
}

/// `Omega_{-D} = sqrt(pi) prod_{j=1}^{D-1} Gamma(j/D)^(chi(j) n / (4h))`.
pub fn chowla_selberg(d: u64, ctx: &PrecisionContext) -> Result<Float> {
    let params = ChowlaSelbergParams::new(d)?;
    let wp = ctx.prec() + 64;
    let mut prod = Float::with_val(wp, 1);
    for j in 1..d {
        match params.character[j as usize] {
            1 => prod *= gamma_rational(&Rational::from((j, d)), wp),
            -1 => prod /= gamma_rational(&Rational::from((j, d)), wp),
            _ => {}
        }
    }
    let e = Rational::from((params.unit_order, 4 * params.class_number));
    let root_pi = Float::with_val(wp, Constant::Pi).sqrt();
    let omega = root_pi * prod.pow(Float::with_val(wp, &e));
    Ok(Float::with_val(ctx.prec(), omega))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_class_numbers_match_form_counts() {
        for (d, h) in CLASS_NUMBERS {
            assert_eq!(class_number(*d), *h, "D = {}", d);
            assert!(is_fundamental(*d), "D = {}", d);
        }
        assert!(!is_fundamental(28));
        assert!(!is_fundamental(16));
        assert_eq!(ChowlaSelbergParams::new(28), Err(Error::UnsupportedDiscriminant(28)));
        assert_eq!(ChowlaSelbergParams::new(23), Err(Error::UnsupportedDiscriminant(23)));
    }

    #[test]
    fn gaussian_period() {
        let ctx = PrecisionContext::default();
        let p = ctx.prec();
        let g14 = gamma_rational(&Rational::from((1, 4)), p);
        let g34 = gamma_rational(&Rational::from((3, 4)), p);
        let expected = Float::with_val(p, Constant::Pi).sqrt() * g14 / g34;
        let got = chowla_selberg(4, &ctx).unwrap();
        assert!(Float::with_val(p, got - expected).abs() < 1e-70);
    }
}
