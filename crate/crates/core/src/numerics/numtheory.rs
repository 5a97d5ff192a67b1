//! Small-integer number theory: Kronecker symbols, primes, square-free parts.

use rug::ops::Pow;
use rug::Integer;

/// Kronecker symbol `(a/n)`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    Integer::from(a).kronecker(&Integer::from(n))
}

/// Legendre-style symbol of a rational `num/den` at an odd prime `p`
/// not dividing `den`.
pub fn kronecker_rational(num: &Integer, den: &Integer, p: u64) -> i32 {
    let pp = Integer::from(p);
    Integer::from(num * den).kronecker(&pp)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return vec![];
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

/// Writes `n = f^2 * m` with `m` square-free and of the same sign as `n`.
pub fn squarefree_decompose(n: i64) -> (u64, i64) {
    if n == 0 {
        return (0, 0);
    }
    let sign = if n < 0 { -1 } else { 1 };
    let mut m = n.unsigned_abs();
    let mut f = 1u64;
    let mut core = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            f *= p;
        }
        if e % 2 == 1 {
            core *= p;
        }
        p += 1;
    }
    core *= m;
    (f, sign * core as i64)
}

pub fn is_squarefree(n: i64) -> bool {
    n != 0 && squarefree_decompose(n).0 == 1
}

/// Discriminant of `Q(sqrt(-d))` for square-free `d > 0`.
pub fn field_discriminant(d: u64) -> i64 {
    let d = d as i64;
    if (-d).rem_euclid(4) == 1 {
        -d
    } else {
        -4 * d
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn mod_pow(base: u64, exp: u64, m: u64) -> u64 {
    let mut r = 1u128;
    let mut b = (base % m) as u128;
    let mut e = exp;
    let m = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r as u64
}

pub fn mod_inv(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    Some(mod_pow(a, p - 2, p))
}

/// Reduces a rational `num/den` modulo the prime `p`, if `p` does not divide `den`.
pub fn rational_mod_p(num: &Integer, den: &Integer, p: u64) -> Option<u64> {
    let pp = Integer::from(p);
    let d = Integer::from(den % &pp);
    let d = if d < 0 { d + &pp } else { d };
    let d = d.to_u64()?;
    let inv = mod_inv(d, p)?;
    let n = Integer::from(num % &pp);
    let n = if n < 0 { n + &pp } else { n };
    let n = n.to_u64()?;
    Some(((n as u128 * inv as u128) % p as u128) as u64)
}

/// A generator of `(Z/p)^*`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let mut factors = vec![];
    let mut m = p - 1;
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            factors.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&f| mod_pow(g, (p - 1) / f, p) != 1))
        .expect("primitive root exists")
}

/// Sum of the `k`-th powers of the positive divisors of `n`.
pub fn sigma(k: u32, n: u64) -> Integer {
    let mut s = Integer::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            s += Integer::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += Integer::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_values() {
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-4, 5), 1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-8, 3), 1);
        assert_eq!(kronecker(-3, 2), -1);
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_decompose(-4), (2, -1));
        assert_eq!(squarefree_decompose(75), (5, 3));
        assert_eq!(squarefree_decompose(-147), (7, -3));
        assert_eq!(squarefree_decompose(1), (1, 1));
        assert!(is_squarefree(-15));
        assert!(!is_squarefree(12));
    }

    #[test]
    fn primes_and_roots() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(rational_mod_p(&Integer::from(1), &Integer::from(2), 7), Some(4));
        assert_eq!(rational_mod_p(&Integer::from(-9), &Integer::from(16), 7), Some(6));
    }

    #[test]
    fn divisor_sums() {
        assert_eq!(sigma(1, 12), 28);
        assert_eq!(sigma(3, 2), 9);
        assert_eq!(field_discriminant(1), -4);
        assert_eq!(field_discriminant(7), -7);
        assert_eq!(field_discriminant(2), -8);
    }
}
