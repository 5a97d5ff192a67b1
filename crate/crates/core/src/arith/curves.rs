//! The four hypergeometric elliptic-curve families `E_d(lambda)` and their
//! Frobenius traces by character-sum enumeration.

use super::field::{addm, invm, legendre, mulm, subm, Fp2, Fp2Elem};
use crate::error::{Error, Result};
use crate::numerics::numtheory::{is_prime, rational_mod_p};
use rug::Rational;

/// `y^2 = R_d(x)` with
/// `R_2 = x(1-x)(x-l)`, `R_3 = 4x^3 + (x + l/27)^2`,
/// `R_4 = x(x^2 + x + l/4)`, `R_6 = 4x^3 + x^2 - l/108`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    pub d: u32,
    pub parameter: Rational,
}

impl CurveModel {
    pub fn new(d: u32, parameter: Rational) -> Result<Self> {
        check_family(d)?;
        Ok(CurveModel { d, parameter })
    }

    /// `p + 1 - a_p`, the number of projective points over `F_p`.
    pub fn num_points(&self, p: u64) -> Result<u64> {
        let a = count_points(self, p)?;
        Ok((p as i64 + 1 - a) as u64)
    }
}

pub(crate) fn check_family(d: u32) -> Result<()> {
    if matches!(d, 2 | 3 | 4 | 6) {
        Ok(())
    } else {
        Err(Error::UnsupportedParameter(format!("family d = {} (expected 2, 3, 4 or 6)", d)))
    }
}

pub(crate) fn check_odd_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::DomainError(format!("{} is not an odd prime", p)));
    }
    Ok(())
}

/// Cubic coefficients `[c0, c1, c2, c3]` of `R_d` over `F_p`.
fn cubic_fp(d: u32, lam: u64, p: u64) -> Result<[u64; 4]> {
    let bad = || Error::BadReduction(p);
    Ok(match d {
        2 => [0, subm(0, lam, p), addm(1, lam, p), p - 1],
        4 => [0, mulm(lam, invm(4, p).ok_or_else(bad)?, p), 1, 1],
        3 => {
            let u = mulm(lam, invm(27, p).ok_or_else(bad)?, p);
            [mulm(u, u, p), mulm(2, u, p), 1, 4 % p]
        }
        6 => {
            let u = mulm(lam, invm(108, p).ok_or_else(bad)?, p);
            [subm(0, u, p), 0, 1, 4 % p]
        }
        _ => return Err(Error::UnsupportedParameter(format!("family d = {}", d))),
    })
}

fn discriminant_fp(c: &[u64; 4], p: u64) -> u64 {
    let [d, cc, b, a] = *c;
    let m = |x: u64, y: u64| mulm(x, y, p);
    let t1 = m(18, m(m(a, b), m(cc, d)));
    let t2 = m(4, m(m(b, m(b, b)), d));
    let t3 = m(m(b, b), m(cc, cc));
    let t4 = m(4, m(a, m(cc, m(cc, cc))));
    let t5 = m(27, m(m(a, a), m(d, d)));
    subm(addm(t1, t3, p), addm(addm(t2, t4, p), t5, p), p)
}

/// `a_p` of `E_d(lambda)` for `lambda` already reduced mod `p`.
pub fn trace_mod_p(d: u32, lam: u64, p: u64) -> Result<i64> {
    if p == 3 && (d == 3 || d == 6) {
        return Err(Error::BadReduction(p));
    }
    let c = cubic_fp(d, lam % p, p)?;
    if discriminant_fp(&c, p) == 0 {
        return Err(Error::BadReduction(p));
    }
    let mut s = 0i64;
    for x in 0..p {
        let v = addm(mulm(addm(mulm(addm(mulm(c[3], x, p), c[2], p), x, p), c[1], p), x, p), c[0], p);
        s += legendre(v, p);
    }
    Ok(-s)
}

/// Trace `a_p = p + 1 - #E(F_p)` of a rational member of the family.
pub fn count_points(curve: &CurveModel, p: u64) -> Result<i64> {
    check_family(curve.d)?;
    check_odd_prime(p)?;
    let lam = rational_mod_p(curve.parameter.numer(), curve.parameter.denom(), p)
        .ok_or(Error::BadReduction(p))?;
    trace_mod_p(curve.d, lam, p)
}

fn cubic_fp2(f: &Fp2, d: u32, lam: Fp2Elem) -> Result<[Fp2Elem; 4]> {
    let p = f.p;
    let bad = || Error::BadReduction(p);
    let k = |v: u64| f.embed(v);
    Ok(match d {
        2 => [k(0), f.sub(k(0), lam), f.add(k(1), lam), k(p - 1)],
        4 => [k(0), f.scale(lam, invm(4, p).ok_or_else(bad)?), k(1), k(1)],
        3 => {
            let u = f.scale(lam, invm(27, p).ok_or_else(bad)?);
            [f.mul(u, u), f.scale(u, 2), k(1), k(4)]
        }
        6 => {
            let u = f.scale(lam, invm(108, p).ok_or_else(bad)?);
            [f.sub(k(0), u), k(0), k(1), k(4)]
        }
        _ => return Err(Error::UnsupportedParameter(format!("family d = {}", d))),
    })
}

fn discriminant_fp2(f: &Fp2, c: &[Fp2Elem; 4]) -> Fp2Elem {
    let [d, cc, b, a] = *c;
    let m = |x: Fp2Elem, y: Fp2Elem| f.mul(x, y);
    let t1 = f.scale(m(m(a, b), m(cc, d)), 18);
    let t2 = f.scale(m(m(b, m(b, b)), d), 4);
    let t3 = m(m(b, b), m(cc, cc));
    let t4 = f.scale(m(a, m(cc, m(cc, cc))), 4);
    let t5 = f.scale(m(m(a, a), m(d, d)), 27);
    f.sub(f.add(t1, t3), f.add(f.add(t2, t4), t5))
}

/// `a_{p^2} = -sum_{x in F_{p^2}} phi(R_d(x))` for `lambda` in `F_{p^2}`,
/// with the quadratic character of `F_{p^2}` computed through the norm.
pub fn trace_fp2(f: &Fp2, d: u32, lam: Fp2Elem) -> Result<i64> {
    if f.p == 3 && (d == 3 || d == 6) {
        return Err(Error::BadReduction(f.p));
    }
    let c = cubic_fp2(f, d, lam)?;
    if discriminant_fp2(f, &c) == (0, 0) {
        return Err(Error::BadReduction(f.p));
    }
    let mut s = 0i64;
    for a in 0..f.p {
        for b in 0..f.p {
            let x = (a, b);
            let v = f.add(f.mul(f.add(f.mul(f.add(f.mul(c[3], x), c[2]), x), c[1]), x), c[0]);
            s += f.quadratic_character(v);
        }
    }
    Ok(-s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(d: u32, n: i64, m: u64) -> CurveModel {
        CurveModel::new(d, Rational::from((n, m))).unwrap()
    }

    #[test]
    fn legendre_family_over_f5() {
        assert_eq!(count_points(&curve(2, 2, 1), 5).unwrap(), -2);
        assert_eq!(curve(2, 2, 1).num_points(5).unwrap(), 8);
    }

    #[test]
    fn singular_members_are_rejected() {
        assert_eq!(count_points(&curve(2, 1, 1), 7), Err(Error::BadReduction(7)));
        assert_eq!(count_points(&curve(2, 0, 1), 7), Err(Error::BadReduction(7)));
        assert_eq!(count_points(&curve(2, 1, 7), 7), Err(Error::BadReduction(7)));
        assert_eq!(count_points(&curve(3, 1, 2), 3), Err(Error::BadReduction(3)));
        assert!(count_points(&curve(2, 2, 1), 9).is_err());
    }

    #[test]
    fn conductor_32_member_vanishes_at_inert_primes() {
        // z = 1/2 gives y^2 = x(1-x)(x-1/2), with CM by Q(i)
        for p in [7u64, 11, 19, 23, 31, 43] {
            assert_eq!(count_points(&curve(2, 1, 2), p).unwrap(), 0);
        }
    }

    #[test]
    fn fp2_count_matches_base_change() {
        // a_{p^2} = a_p^2 - 2p for a curve defined over F_p
        for &p in &[7u64, 11, 13] {
            let r = (2..p).find(|&r| legendre(r, p) == -1).unwrap();
            let f = Fp2::new(p, r).unwrap();
            for d in [2u32, 3, 4, 6] {
                for lam in 2..6u64 {
                    if let Ok(ap) = trace_mod_p(d, lam, p) {
                        let app = trace_fp2(&f, d, f.embed(lam)).unwrap();
                        assert_eq!(app, ap * ap - 2 * p as i64, "d={} lam={} p={}", d, lam, p);
                    }
                }
            }
        }
    }
}
