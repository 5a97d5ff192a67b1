//! Finite-field hypergeometric traces `H_p` for `HD2(d; z)` and
//! `HD3(d; t)`, the latter through the finite-field Clausen relation.

use super::curves::{check_family, check_odd_prime, count_points, trace_fp2, trace_mod_p, CurveModel};
use super::field::{invm, legendre, legendre_i64, mulm, subm, sqrt_mod, Fp2};
use crate::error::{Error, Result};
use crate::numerics::numtheory::rational_mod_p;
use rug::{Integer, Rational};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DatumKind {
    HD2,
    HD3,
}

/// `HD2(d)` carries the `2F1` argument `z`; `HD3(d)` carries `t = 4z(1-z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFieldDatum {
    pub kind: DatumKind,
    pub d: u32,
    pub parameter: Rational,
}

impl FiniteFieldDatum {
    pub fn hd2(d: u32, z: Rational) -> Result<Self> {
        check_family(d)?;
        Ok(FiniteFieldDatum { kind: DatumKind::HD2, d, parameter: z })
    }

    pub fn hd3(d: u32, t: Rational) -> Result<Self> {
        check_family(d)?;
        Ok(FiniteFieldDatum { kind: DatumKind::HD3, d, parameter: t })
    }
}

/// Which form of the Clausen relation applies at a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClausenBranch {
    /// `1 - t` is the square of a rational.
    RationalSquare,
    /// `1 - t` is a square modulo `p` only.
    SquareModP,
    /// `1 - t` is a non-square modulo `p`; `z` lies in `F_{p^2}`.
    NonSquareModP,
}

/// The twisting discriminant in the non-square branch.
pub fn twist_constant(d: u32) -> i64 {
    match d {
        3 => -3,
        4 => -2,
        _ => -1,
    }
}

/// Positive rational square root, when one exists.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if *r < 0 {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, rn) = n.clone().sqrt_rem(Integer::new());
    let (sd, rd) = d.clone().sqrt_rem(Integer::new());
    if rn == 0 && rd == 0 {
        Some(Rational::from((sn, sd)))
    } else {
        None
    }
}

/// Primes excluded for `HD3(d; t)`: `p <= 3`, or `p` dividing a numerator
/// or denominator of `t` or of a nonzero `1 - t`. `t = 0` is excluded at every prime.
pub fn is_bad_for_parameter(t: &Rational, p: u64) -> bool {
    if p <= 3 || *t.numer() == 0 {
        return true;
    }
    // t = 1 is the degenerate fiber z = 1/2, not a reduction condition
    let one_minus = Rational::from(1) - t;
    [t.numer(), t.denom(), one_minus.numer(), one_minus.denom()]
        .iter()
        .any(|x| **x != 0 && x.is_divisible_u(p as u32))
}

/// Branch selected by the square class of `1 - t`.
pub fn clausen_branch(t: &Rational, p: u64) -> Result<ClausenBranch> {
    check_odd_prime(p)?;
    if is_bad_for_parameter(t, p) {
        return Err(Error::BadReduction(p));
    }
    let one_minus = Rational::from(1) - t;
    if rational_sqrt(&one_minus).is_some() {
        return Ok(ClausenBranch::RationalSquare);
    }
    let r = rational_mod_p(one_minus.numer(), one_minus.denom(), p).ok_or(Error::BadReduction(p))?;
    Ok(if legendre(r, p) == 1 { ClausenBranch::SquareModP } else { ClausenBranch::NonSquareModP })
}

/// `H_p` of the datum.
pub fn hp(datum: &FiniteFieldDatum, p: u64) -> Result<i64> {
    hp_with_branch(datum, p).map(|(h, _)| h)
}

/// `H_p` together with the Clausen branch used (`None` for `HD2`).
pub fn hp_with_branch(datum: &FiniteFieldDatum, p: u64) -> Result<(i64, Option<ClausenBranch>)> {
    check_family(datum.d)?;
    check_odd_prime(p)?;
    match datum.kind {
        DatumKind::HD2 => {
            let h = count_points(&CurveModel::new(datum.d, datum.parameter.clone())?, p)?;
            Ok((h, None))
        }
        DatumKind::HD3 => hd3_trace(datum.d, &datum.parameter, p).map(|(h, b)| (h, Some(b))),
    }
}

/// `H_p(HD2(d; z))` for the root `z = (1 - sqrt(1 - t))/2` in `F_p`, or `None`
/// when `1 - t` is not a square modulo `p`.
pub fn clausen_hd2_trace(d: u32, t: &Rational, p: u64) -> Result<Option<i64>> {
    check_family(d)?;
    if clausen_branch(t, p)? == ClausenBranch::NonSquareModP {
        return Ok(None);
    }
    let one_minus = Rational::from(1) - t;
    let r = rational_mod_p(one_minus.numer(), one_minus.denom(), p).ok_or(Error::BadReduction(p))?;
    let s = sqrt_mod(r, p).ok_or(Error::BadReduction(p))?;
    let inv2 = invm(2, p).ok_or(Error::BadReduction(p))?;
    trace_mod_p(d, mulm(subm(1, s, p), inv2, p), p).map(Some)
}

fn hd3_trace(d: u32, t: &Rational, p: u64) -> Result<(i64, ClausenBranch)> {
    let branch = clausen_branch(t, p)?;
    let pi = p as i64;
    let one_minus = Rational::from(1) - t;
    let inv2 = invm(2, p).ok_or(Error::BadReduction(p))?;
    let h = match branch {
        ClausenBranch::RationalSquare => {
            let u = rational_sqrt(&one_minus).expect("branch checked");
            let z = (Rational::from(1) - u) / 2u32;
            let zp = rational_mod_p(z.numer(), z.denom(), p).ok_or(Error::BadReduction(p))?;
            let h2 = trace_mod_p(d, zp, p)?;
            h2 * h2 - pi
        }
        ClausenBranch::SquareModP => {
            let r = rational_mod_p(one_minus.numer(), one_minus.denom(), p).ok_or(Error::BadReduction(p))?;
            let s = sqrt_mod(r, p).ok_or(Error::BadReduction(p))?;
            let zp = mulm(subm(1, s, p), inv2, p);
            let h2 = trace_mod_p(d, zp, p)?;
            h2 * h2 - pi
        }
        ClausenBranch::NonSquareModP => {
            let r = rational_mod_p(one_minus.numer(), one_minus.denom(), p).ok_or(Error::BadReduction(p))?;
            let field = Fp2::new(p, r).ok_or(Error::BadReduction(p))?;
            let z = (inv2, subm(0, inv2, p));
            let h2 = trace_fp2(&field, d, z)?;
            legendre_i64(twist_constant(d), p) * h2 - pi
        }
    };
    Ok((h, branch))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, m: u64) -> Rational {
        Rational::from((n, m))
    }

    #[test]
    fn hd2_is_the_curve_trace() {
        let datum = FiniteFieldDatum::hd2(2, q(1, 2)).unwrap();
        let n = CurveModel::new(2, q(3, 1)).unwrap().num_points(5).unwrap() as i64;
        assert_eq!(hp(&datum, 5).unwrap(), 6 - n);
    }

    #[test]
    fn rational_square_branch_is_clausen() {
        // t = 4z(1 - z) with z = -1/8 gives t = -9/16
        let t = q(-9, 16);
        for p in [7u64, 13, 19, 31, 37] {
            let (h, b) = hp_with_branch(&FiniteFieldDatum::hd3(3, t.clone()).unwrap(), p).unwrap();
            assert_eq!(b, Some(ClausenBranch::RationalSquare));
            let h2 = hp(&FiniteFieldDatum::hd2(3, q(-1, 8)).unwrap(), p).unwrap();
            assert_eq!(h, h2 * h2 - p as i64);
        }
    }

    #[test]
    fn branch_follows_square_class() {
        let t = q(1, 4);
        assert_eq!(clausen_branch(&t, 7).unwrap(), ClausenBranch::NonSquareModP);
        assert_eq!(clausen_branch(&t, 11).unwrap(), ClausenBranch::SquareModP);
        assert_eq!(clausen_branch(&t, 3), Err(Error::BadReduction(3)));
        assert_eq!(clausen_branch(&q(-8, 1), 5).unwrap(), ClausenBranch::RationalSquare);
    }

    #[test]
    fn excluded_primes() {
        assert!(is_bad_for_parameter(&q(4, 125), 5));
        assert!(is_bad_for_parameter(&q(4, 125), 11));
        assert!(!is_bad_for_parameter(&q(4, 125), 7));
        assert!(!is_bad_for_parameter(&q(1, 1), 7));
        assert!(is_bad_for_parameter(&q(0, 1), 7));
    }
}
