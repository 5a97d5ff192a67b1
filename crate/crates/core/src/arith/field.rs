//! Arithmetic in `F_p` and in `F_p[s]/(s^2 - r)` for a non-square `r`.

use crate::numerics::numtheory::{mod_inv, mod_pow};

/// Quadratic character of `F_p` on an already reduced residue.
pub fn legendre(a: u64, p: u64) -> i64 {
    let a = a % p;
    if a == 0 {
        0
    } else if mod_pow(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Quadratic character of a signed integer.
pub fn legendre_i64(a: i64, p: u64) -> i64 {
    legendre(a.rem_euclid(p as i64) as u64, p)
}

/// Square root of a quadratic residue by Tonelli-Shanks.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(mod_pow(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| legendre(z, p) == -1)?;
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(a, q, p);
    let mut r = mod_pow(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = mulm(tt, tt, p);
            i += 1;
        }
        let b = mod_pow(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mulm(b, b, p);
        t = mulm(t, c, p);
        r = mulm(r, b, p);
    }
    Some(r)
}

#[inline]
pub fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn addm(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

#[inline]
pub fn subm(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

pub fn invm(a: u64, p: u64) -> Option<u64> {
    mod_inv(a, p)
}

/// The field `F_p[s]/(s^2 - r)`; elements are pairs `(a, b) = a + b s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp2 {
    pub p: u64,
    pub r: u64,
}

pub type Fp2Elem = (u64, u64);

impl Fp2 {
    /// `None` when `r` is a square mod `p`.
    pub fn new(p: u64, r: u64) -> Option<Self> {
        if legendre(r, p) == -1 {
            Some(Fp2 { p, r: r % p })
        } else {
            None
        }
    }

    pub fn embed(&self, a: u64) -> Fp2Elem {
        (a % self.p, 0)
    }

    pub fn add(&self, u: Fp2Elem, v: Fp2Elem) -> Fp2Elem {
        (addm(u.0, v.0, self.p), addm(u.1, v.1, self.p))
    }

    pub fn sub(&self, u: Fp2Elem, v: Fp2Elem) -> Fp2Elem {
        (subm(u.0, v.0, self.p), subm(u.1, v.1, self.p))
    }

    pub fn mul(&self, u: Fp2Elem, v: Fp2Elem) -> Fp2Elem {
        let p = self.p;
        let re = addm(mulm(u.0, v.0, p), mulm(self.r, mulm(u.1, v.1, p), p), p);
        let im = addm(mulm(u.0, v.1, p), mulm(u.1, v.0, p), p);
        (re, im)
    }

    pub fn scale(&self, u: Fp2Elem, c: u64) -> Fp2Elem {
        (mulm(u.0, c, self.p), mulm(u.1, c, self.p))
    }

    /// The norm `a^2 - r b^2` down to `F_p`.
    pub fn norm(&self, u: Fp2Elem) -> u64 {
        let p = self.p;
        subm(mulm(u.0, u.0, p), mulm(self.r, mulm(u.1, u.1, p), p), p)
    }

    /// Quadratic character of `F_{p^2}`, computed through the norm.
    pub fn quadratic_character(&self, u: Fp2Elem) -> i64 {
        legendre(self.norm(u), self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tonelli_shanks_roots() {
        for &p in &[5u64, 13, 17, 41, 97, 193] {
            for a in 1..p {
                if let Some(r) = sqrt_mod(a, p) {
                    assert_eq!(mulm(r, r, p), a);
                } else {
                    assert_eq!(legendre(a, p), -1);
                }
            }
        }
    }

    #[test]
    fn fp2_character_is_multiplicative() {
        let f = Fp2::new(7, 3).unwrap();
        let elems: Vec<Fp2Elem> = (0..7).flat_map(|a| (0..7).map(move |b| (a, b))).collect();
        let squares = elems.iter().filter(|&&u| u != (0, 0) && f.quadratic_character(u) == 1).count();
        assert_eq!(squares, 24);
        for &u in &elems[1..10] {
            for &v in &elems[20..30] {
                assert_eq!(
                    f.quadratic_character(f.mul(u, v)),
                    f.quadratic_character(u) * f.quadratic_character(v)
                );
            }
        }
    }
}
