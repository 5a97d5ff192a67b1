//! Jacobi sums `J(chi, chi)` of cubic and quartic characters and their
//! primary normalization in `Z[omega]` and `Z[i]`.

use super::curves::check_odd_prime;
use super::field::{invm, mulm, subm};
use crate::error::{Error, Result};
use crate::numerics::numtheory::{mod_pow, primitive_root};
use serde::Serialize;
use std::fmt;

/// `a + b*i` (order 4) or `a + b*omega` (order 3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CyclotomicInteger {
    pub a: i64,
    pub b: i64,
    pub order: u32,
}

impl CyclotomicInteger {
    pub fn new(a: i64, b: i64, order: u32) -> Self {
        CyclotomicInteger { a, b, order }
    }

    pub fn norm(&self) -> i64 {
        let (a, b) = (self.a, self.b);
        if self.order == 4 {
            a * a + b * b
        } else {
            a * a - a * b + b * b
        }
    }

    pub fn conj(&self) -> Self {
        if self.order == 4 {
            CyclotomicInteger::new(self.a, -self.b, 4)
        } else {
            CyclotomicInteger::new(self.a - self.b, -self.b, 3)
        }
    }

    /// `z + conj(z)`.
    pub fn trace(&self) -> i64 {
        if self.order == 4 {
            2 * self.a
        } else {
            2 * self.a - self.b
        }
    }

    fn mul(&self, o: &Self) -> Self {
        let (a, b, c, d) = (self.a, self.b, o.a, o.b);
        if self.order == 4 {
            CyclotomicInteger::new(a * c - b * d, a * d + b * c, 4)
        } else {
            CyclotomicInteger::new(a * c - b * d, a * d + b * c - b * d, 3)
        }
    }

    /// `pi = 1 mod (2+2i)` for order 4, `pi = 2 mod 3` for order 3.
    pub fn is_primary(&self) -> bool {
        if self.order == 4 {
            let (x, y) = (self.a - 1, self.b);
            (x + y).rem_euclid(4) == 0 && (y - x).rem_euclid(4) == 0
        } else {
            self.a.rem_euclid(3) == 2 && self.b.rem_euclid(3) == 0
        }
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = if self.order == 4 { "i" } else { "w" };
        if self.b < 0 {
            write!(f, "{}-{}{}", self.a, -self.b, unit)
        } else {
            write!(f, "{}+{}{}", self.a, self.b, unit)
        }
    }
}

/// Discrete logarithms to base `g` of every unit mod `p`.
fn discrete_logs(p: u64, g: u64) -> Vec<u64> {
    let mut log = vec![0u64; p as usize];
    let mut x = 1u64;
    for k in 0..p - 1 {
        log[x as usize] = k;
        x = mulm(x, g, p);
    }
    log
}

/// The primary generator `-chi(-1) J(chi, chi)` (order 4) or `J(chi, chi)` (order 3),
/// normalized to a positive coefficient of `i` (resp. `omega`), with `chi`
/// the residue symbol modulo the returned prime.
pub fn jacobi_sum_primary(p: u64, order: u32) -> Result<CyclotomicInteger> {
    if order != 3 && order != 4 {
        return Err(Error::UnsupportedParameter(format!("character order {}", order)));
    }
    check_odd_prime(p)?;
    if p % order as u64 != 1 {
        return Err(Error::InertPrime(p));
    }
    let g = primitive_root(p);
    let log = discrete_logs(p, g);
    let m = order as u64;
    let powers: Vec<CyclotomicInteger> = {
        let zeta = CyclotomicInteger::new(0, 1, order);
        let mut v = vec![CyclotomicInteger::new(1, 0, order)];
        for k in 1..m as usize {
            let next = v[k - 1].mul(&zeta);
            v.push(next);
        }
        v
    };
    let chi = |x: u64| powers[(log[x as usize] % m) as usize];
    let mut j = CyclotomicInteger::new(0, 0, order);
    for x in 2..p {
        let y = subm(1, x, p);
        let t = chi(x).mul(&chi(y));
        j.a += t.a;
        j.b += t.b;
    }
    let mut pi = if order == 4 {
        let sign = if ((p - 1) / 4) % 2 == 0 { -1 } else { 1 };
        CyclotomicInteger::new(sign * j.a, sign * j.b, 4)
    } else {
        j
    };
    // pi and its conjugate are both primary; take the one with positive unit coefficient
    let conjugated = pi.b < 0;
    if conjugated {
        pi = pi.conj();
    }
    // the character used must be the residue symbol modulo pi
    let zeta_mod_pi = {
        let a = pi.a.rem_euclid(p as i64) as u64;
        let b = pi.b.rem_euclid(p as i64) as u64;
        invm(b, p).map(|bi| mulm(subm(0, a, p), bi, p))
    };
    let target = mod_pow(g, (p - 1) / m, p);
    let target = if conjugated { invm(target, p).unwrap_or(0) } else { target };
    if pi.norm() != p as i64 || !pi.is_primary() || zeta_mod_pi != Some(target) {
        return Err(Error::DomainError(format!("Jacobi sum normalization failed at p = {}", p)));
    }
    Ok(pi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_at_five() {
        assert_eq!(jacobi_sum_primary(5, 4).unwrap(), CyclotomicInteger::new(-1, 2, 4));
    }

    #[test]
    fn cubic_at_thirteen() {
        let pi = jacobi_sum_primary(13, 3).unwrap();
        assert_eq!(pi.norm(), 13);
        assert!(pi.is_primary());
        assert_eq!(pi, CyclotomicInteger::new(-1, 3, 3));
    }

    #[test]
    fn inert_primes() {
        assert_eq!(jacobi_sum_primary(7, 4), Err(Error::InertPrime(7)));
        assert_eq!(jacobi_sum_primary(11, 3), Err(Error::InertPrime(11)));
        assert!(jacobi_sum_primary(13, 5).is_err());
    }

    #[test]
    fn norms_and_primarity_over_range() {
        for p in crate::numerics::numtheory::primes_up_to(400).into_iter().skip(2) {
            for order in [3u32, 4] {
                if let Ok(pi) = jacobi_sum_primary(p, order) {
                    assert_eq!(pi.norm(), p as i64);
                    assert!(pi.is_primary());
                }
            }
        }
    }
}
