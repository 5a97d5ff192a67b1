//! Exact q-expansions of the eta, theta, Eisenstein and hauptmodul families,
//! with a process-wide memo cache.

use super::qseries::{QSeries, TailHint};
use crate::error::{Error, Result};
use crate::numerics::gamma::bernoulli_numbers;
use crate::numerics::numtheory::kronecker;
use rug::ops::Pow;
use rug::{Integer, Rational};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

/// Functions with a closed-form exact expansion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SeriesFunction {
    /// `eta(tau)` in `q^{1/24}`.
    Eta,
    /// `theta_2` in `q^{1/8}`.
    Theta2,
    /// `theta_3` in `q^{1/2}`.
    Theta3,
    /// `theta_4` in `q^{1/2}`.
    Theta4,
    /// `sum_{n>=1} sigma_k(n) q^n`.
    Sigma(u32),
    /// `sum_{n>=1} chi_l(n) sigma_1(n) q^n`.
    TwistedSigma1(i64),
    /// Normalized `E_k`, `k >= 4` even.
    Eisenstein(u32),
    /// `sum_{n>0} n (q^{na} + q^{n(N-a)}) / (1 - q^{Nn})`, `0 < a < N`.
    CurlyG { a: u32, n: u32 },
    /// `(E_4^3 - E_6^2) / 1728`.
    Delta,
    /// Hauptmoduls `t_2, t_3, t_4` and `t_6 = 1728/j`.
    Hauptmodul(u32),
    /// `u_6` of level 6.
    U6,
    /// `eta(5 tau)^6 / eta(tau)^6`.
    T5,
    /// `eta(25 tau) / eta(tau)`.
    T25,
}

impl SeriesFunction {
    pub fn denominator(&self) -> u32 {
        match self {
            SeriesFunction::Eta => 24,
            SeriesFunction::Theta2 => 8,
            SeriesFunction::Theta3 | SeriesFunction::Theta4 => 2,
            _ => 1,
        }
    }

    /// Coefficient growth bound, or `Unknown` for quotients.
    pub fn hint(&self) -> TailHint {
        match self {
            SeriesFunction::Eta => TailHint::Polynomial { c: 1.0, b: 0.0 },
            SeriesFunction::Theta2 | SeriesFunction::Theta3 | SeriesFunction::Theta4 => {
                TailHint::Polynomial { c: 2.0, b: 0.0 }
            }
            SeriesFunction::Sigma(k) => sigma_hint(*k),
            SeriesFunction::TwistedSigma1(_) => sigma_hint(1),
            SeriesFunction::Eisenstein(k) => {
                let c = eisenstein_factor(*k).map(|r| r.to_f64().abs()).unwrap_or(1.0);
                TailHint::Polynomial { c: c * 1.21, b: (*k - 1) as f64 }
            }
            SeriesFunction::CurlyG { .. } => TailHint::Polynomial { c: 2.0, b: 2.0 },
            SeriesFunction::Delta => TailHint::Polynomial { c: 2.0, b: 6.0 },
            _ => TailHint::Unknown,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            SeriesFunction::Sigma(k) if *k > 64 => {
                Err(Error::UnsupportedFunction(format!("sigma_{} not supported", k)))
            }
            SeriesFunction::Eisenstein(k) if *k < 4 || k % 2 == 1 || *k > 64 => {
                Err(Error::UnsupportedFunction(format!("E_{} requires even k in [4, 64]", k)))
            }
            SeriesFunction::CurlyG { a, n } if *a == 0 || a >= n => Err(Error::UnsupportedFunction(
                format!("curly G({};{}) requires 0 < a < N", a, n),
            )),
            SeriesFunction::Hauptmodul(d) if ![2, 3, 4, 6].contains(d) => {
                Err(Error::UnsupportedFunction(format!("no hauptmodul t_{}", d)))
            }
            SeriesFunction::TwistedSigma1(0) => {
                Err(Error::UnsupportedFunction("character of modulus 0".into()))
            }
            _ => Ok(()),
        }
    }
}

fn sigma_hint(k: u32) -> TailHint {
    if k <= 1 {
        TailHint::Polynomial { c: 1.0, b: 2.0 }
    } else {
        TailHint::Polynomial { c: 1.65, b: k as f64 }
    }
}

/// `-2k / B_k`, the coefficient of `sigma_{k-1}` in `E_k`.
pub fn eisenstein_factor(k: u32) -> Result<Rational> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::UnsupportedFunction(format!("E_{}", k)));
    }
    let b = bernoulli_numbers(k as usize).pop().unwrap();
    Ok(Rational::from(-2 * k as i64) / b)
}

impl fmt::Display for SeriesFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesFunction::Eta => write!(f, "eta"),
            SeriesFunction::Theta2 => write!(f, "theta2"),
            SeriesFunction::Theta3 => write!(f, "theta3"),
            SeriesFunction::Theta4 => write!(f, "theta4"),
            SeriesFunction::Sigma(k) => write!(f, "sigma{}", k),
            SeriesFunction::TwistedSigma1(l) => write!(f, "sigma1_chi{}", l),
            SeriesFunction::Eisenstein(k) => write!(f, "e{}", k),
            SeriesFunction::CurlyG { a, n } => write!(f, "curly_g_{}_{}", a, n),
            SeriesFunction::Delta => write!(f, "delta"),
            SeriesFunction::Hauptmodul(d) => write!(f, "t{}", d),
            SeriesFunction::U6 => write!(f, "u6"),
            SeriesFunction::T5 => write!(f, "t5"),
            SeriesFunction::T25 => write!(f, "t25"),
        }
    }
}

impl FromStr for SeriesFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedFunction(s.to_string());
        let f = match s {
            "eta" => SeriesFunction::Eta,
            "theta2" => SeriesFunction::Theta2,
            "theta3" => SeriesFunction::Theta3,
            "theta4" => SeriesFunction::Theta4,
            "delta" => SeriesFunction::Delta,
            "u6" => SeriesFunction::U6,
            "t5" => SeriesFunction::T5,
            "t25" => SeriesFunction::T25,
            "t2" | "t3" | "t4" | "t6" => SeriesFunction::Hauptmodul(s[1..].parse().unwrap()),
            _ => {
                if let Some(rest) = s.strip_prefix("sigma1_chi") {
                    SeriesFunction::TwistedSigma1(rest.parse().map_err(|_| bad())?)
                } else if let Some(rest) = s.strip_prefix("sigma") {
                    SeriesFunction::Sigma(rest.parse().map_err(|_| bad())?)
                } else if let Some(rest) = s.strip_prefix("curly_g_") {
                    let (a, n) = rest.split_once('_').ok_or_else(bad)?;
                    SeriesFunction::CurlyG {
                        a: a.parse().map_err(|_| bad())?,
                        n: n.parse().map_err(|_| bad())?,
                    }
                } else if let Some(rest) = s.strip_prefix('e') {
                    SeriesFunction::Eisenstein(rest.parse().map_err(|_| bad())?)
                } else {
                    return Err(bad());
                }
            }
        };
        f.validate()?;
        Ok(f)
    }
}

/// `prod_{n>=1} (1 - q^n)` to `q^{order-1}` via pentagonal numbers.
pub fn euler_product(order: usize) -> QSeries {
    let mut s = QSeries::zero(1, order);
    for k in 0i64.. {
        let mut any = false;
        for kk in [k, -k - 1] {
            let e = kk * (3 * kk - 1) / 2;
            if (e as usize) < order {
                s.coeffs[e as usize] = Rational::from(if kk % 2 == 0 { 1 } else { -1 });
                any = true;
            }
        }
        if !any {
            break;
        }
    }
    s
}

/// `prod_{n>=1} (1 - q^n)` by direct truncated multiplication.
pub fn euler_product_direct(order: usize) -> QSeries {
    let mut acc = vec![Integer::new(); order];
    acc[0] = Integer::from(1);
    for n in 1..order {
        for m in (n..order).rev() {
            let t = acc[m - n].clone();
            acc[m] -= t;
        }
    }
    QSeries::from_coeffs(1, acc.into_iter().map(Rational::from).collect(), TailHint::Unknown)
        .expect("positive order")
}

/// `prod_k prod_n (1 - q^{kn})^{e_k}` as an exact series in `q`.
pub fn eta_product_part(exps: &[(u32, i64)], order: usize) -> Result<QSeries> {
    let p = euler_product(order);
    let mut out = QSeries::constant(Rational::from(1), 1, order);
    for &(k, e) in exps {
        let f = p.dilate(k as usize).truncate(order).pow(e)?;
        out = out.mul(&f)?;
    }
    Ok(out)
}

/// The same product from the logarithmic derivative recursion
/// `n P_n = sum_j b_j P_{n-j}`, `b_m = -sum_k e_k k sigma_1(m/k)`.
pub fn eta_product_by_log_derivative(exps: &[(u32, i64)], order: usize) -> QSeries {
    let mut b = vec![Integer::new(); order];
    for &(k, e) in exps {
        let k = k as usize;
        for d in (k..order).step_by(k) {
            for m in (d..order).step_by(d) {
                b[m] -= Integer::from(e) * d as u64;
            }
        }
    }
    let mut p = vec![Integer::new(); order];
    p[0] = Integer::from(1);
    for n in 1..order {
        let mut s = Integer::new();
        for j in 1..=n {
            if b[j] != 0 && p[n - j] != 0 {
                s += Integer::from(&b[j] * &p[n - j]);
            }
        }
        p[n] = s / n as u64;
    }
    QSeries::from_coeffs(1, p.into_iter().map(Rational::from).collect(), TailHint::Unknown)
        .expect("positive order")
}

fn sigma_table(k: u32, order: usize) -> Vec<Integer> {
    let mut s = vec![Integer::new(); order];
    for d in 1..order {
        let dk = Integer::from(d as u64).pow(k);
        for m in (d..order).step_by(d) {
            s[m] += &dk;
        }
    }
    s
}

fn from_integers(m: u32, v: Vec<Integer>, hint: TailHint) -> QSeries {
    QSeries::from_coeffs(m, v.into_iter().map(Rational::from).collect(), hint).expect("non-empty")
}

fn build_uncached(f: &SeriesFunction, order: usize) -> Result<QSeries> {
    f.validate()?;
    let one = || QSeries::constant(Rational::from(1), 1, order);
    let s = match f {
        SeriesFunction::Eta => {
            let p = euler_product(order);
            let mut s = QSeries::zero(24, order);
            for (e, c) in p.coeffs.iter().enumerate() {
                if *c != 0 && 24 * e + 1 < s.coeffs.len() {
                    s.coeffs[24 * e + 1] = c.clone();
                }
            }
            s
        }
        SeriesFunction::Theta2 => {
            let mut s = QSeries::zero(8, order);
            let mut n = 1usize;
            while n * n < s.coeffs.len() {
                s.coeffs[n * n] = Rational::from(2);
                n += 2;
            }
            s
        }
        SeriesFunction::Theta3 | SeriesFunction::Theta4 => {
            let mut s = QSeries::zero(2, order);
            s.coeffs[0] = Rational::from(1);
            let mut n = 1usize;
            while n * n < s.coeffs.len() {
                let sign = if *f == SeriesFunction::Theta4 && n % 2 == 1 { -2 } else { 2 };
                s.coeffs[n * n] = Rational::from(sign);
                n += 1;
            }
            s
        }
        SeriesFunction::Sigma(k) => from_integers(1, sigma_table(*k, order), TailHint::Unknown),
        SeriesFunction::TwistedSigma1(l) => {
            let mut s = sigma_table(1, order);
            for (n, c) in s.iter_mut().enumerate() {
                *c *= kronecker(*l, n as i64);
            }
            from_integers(1, s, TailHint::Unknown)
        }
        SeriesFunction::Eisenstein(k) => {
            let c = eisenstein_factor(*k)?;
            let mut s = from_integers(1, sigma_table(k - 1, order), TailHint::Unknown).scale(&c);
            s.coeffs[0] = Rational::from(1);
            s
        }
        SeriesFunction::CurlyG { a, n } => {
            let (a, nn) = (*a as usize, *n as usize);
            let mut c = vec![Integer::new(); order];
            for d in 1..order {
                for start in [a, nn - a] {
                    let mut j = start;
                    while d * j < order {
                        c[d * j] += d as u64;
                        j += nn;
                    }
                }
            }
            from_integers(1, c, TailHint::Unknown)
        }
        SeriesFunction::Delta => {
            let e4 = build_uncached(&SeriesFunction::Eisenstein(4), order)?;
            let e6 = build_uncached(&SeriesFunction::Eisenstein(6), order)?;
            e4.pow(3)?.sub(&e6.pow(2)?)?.scale(&Rational::from((1, 1728)))
        }
        SeriesFunction::Hauptmodul(2) => {
            eta_product_part(&[(2, 24), (1, -24)], order)?.shift(1).scale(&Rational::from(-64))
        }
        SeriesFunction::Hauptmodul(3) => {
            let h = eta_product_part(&[(3, 12), (1, -12)], order)?.shift(1);
            let den = one().add(&h.scale(&Rational::from(27)))?.pow(2)?;
            h.scale(&Rational::from(108)).div(&den)?
        }
        SeriesFunction::Hauptmodul(4) => {
            let g = eta_product_part(&[(2, 24), (1, -24)], order)?.shift(1);
            let den = one().add(&g.scale(&Rational::from(64)))?.pow(2)?;
            g.scale(&Rational::from(256)).div(&den)?
        }
        SeriesFunction::Hauptmodul(_) => {
            let d = build_uncached(&SeriesFunction::Delta, order)?;
            let e4 = build_uncached(&SeriesFunction::Eisenstein(4), order)?;
            d.scale(&Rational::from(1728)).div(&e4.pow(3)?)?
        }
        SeriesFunction::U6 => {
            let uu = eta_product_part(&[(2, 1), (6, 5), (1, -5), (3, -1)], order)?.shift(1);
            let num = uu.scale(&Rational::from(6)).add(&one())?;
            let den = uu.scale(&Rational::from(12)).add(&one())?;
            num.div(&den)?
        }
        SeriesFunction::T5 => eta_product_part(&[(5, 6), (1, -6)], order)?.shift(1),
        SeriesFunction::T25 => eta_product_part(&[(25, 1), (1, -1)], order)?.shift(1),
    };
    Ok(s.with_hint(f.hint()))
}

type Cache = RwLock<HashMap<(SeriesFunction, usize), Arc<QSeries>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Exact expansion of `f` to `q^{order}` (exclusive). Results are memoized by
/// function and order rounded up to a power of two.
pub fn build_qseries(f: &SeriesFunction, order: usize) -> Result<Arc<QSeries>> {
    if order == 0 {
        return Err(Error::DomainError("order must be positive".into()));
    }
    f.validate()?;
    let rounded = order.next_power_of_two().max(16);
    let key = (f.clone(), rounded);
    if let Some(s) = cache().read().expect("series cache poisoned").get(&key) {
        return Ok(s.clone());
    }
    let s = Arc::new(build_uncached(f, rounded)?);
    cache()
        .write()
        .expect("series cache poisoned")
        .entry(key)
        .or_insert_with(|| s.clone());
    Ok(s)
}

/// Truncated copy with exactly the requested order.
pub fn build_qseries_exact(f: &SeriesFunction, order: usize) -> Result<QSeries> {
    Ok(build_qseries(f, order)?.truncate(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries, n: usize) -> Vec<i64> {
        s.coeffs.iter().take(n).map(|c| c.to_f64() as i64).collect()
    }

    #[test]
    fn pentagonal_matches_product() {
        assert_eq!(euler_product(120).coeffs, euler_product_direct(120).coeffs);
    }

    #[test]
    fn eta_expansion() {
        let s = build_qseries_exact(&SeriesFunction::Eta, 10).unwrap();
        assert_eq!(s.denominator, 24);
        assert_eq!(*s.coeff(1), 1);
        assert_eq!(*s.coeff(25), -1);
        assert_eq!(*s.coeff(49), -1);
        assert_eq!(*s.coeff(121), 1);
        assert_eq!(*s.coeff(169), 1);
    }

    #[test]
    fn theta3_expansion() {
        let s = build_qseries_exact(&SeriesFunction::Theta3, 10).unwrap();
        assert_eq!(ints(&s, 10), vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2]);
    }

    #[test]
    fn t2_two_ways() {
        let s = build_qseries_exact(&SeriesFunction::Hauptmodul(2), 40).unwrap();
        let alt = eta_product_by_log_derivative(&[(2, 24), (1, -24)], 40)
            .shift(1)
            .scale(&Rational::from(-64));
        assert_eq!(s.coeffs, alt.coeffs);
        assert_eq!(ints(&s, 4), vec![0, -64, -1536, -19200]);
    }

    #[test]
    fn delta_is_ramanujan_tau() {
        let s = build_qseries_exact(&SeriesFunction::Delta, 8).unwrap();
        assert_eq!(ints(&s, 8), vec![0, 1, -24, 252, -1472, 4830, -6048, -16744]);
        let eta24 = eta_product_part(&[(1, 24)], 8).unwrap().shift(1);
        assert_eq!(s.coeffs, eta24.coeffs);
    }

    #[test]
    fn curly_g_symmetry() {
        let a = build_qseries_exact(&SeriesFunction::CurlyG { a: 1, n: 5 }, 50).unwrap();
        let b = build_qseries_exact(&SeriesFunction::CurlyG { a: 4, n: 5 }, 50).unwrap();
        assert_eq!(a.coeffs, b.coeffs);
    }

    #[test]
    fn names_round_trip() {
        for f in [
            SeriesFunction::Eta,
            SeriesFunction::Sigma(3),
            SeriesFunction::TwistedSigma1(5),
            SeriesFunction::Eisenstein(6),
            SeriesFunction::CurlyG { a: 1, n: 3 },
            SeriesFunction::Hauptmodul(4),
            SeriesFunction::T25,
        ] {
            assert_eq!(f.to_string().parse::<SeriesFunction>().unwrap(), f);
        }
        assert!("e3".parse::<SeriesFunction>().is_err());
        assert!("t5x".parse::<SeriesFunction>().is_err());
    }
}
