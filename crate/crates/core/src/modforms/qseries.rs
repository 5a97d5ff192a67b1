//! Truncated expansions in `q^{1/M}` with exact rational coefficients.

use crate::error::{Error, Result};
use crate::numerics::{CMPoint, Complex, PrecisionContext};
use rug::{Float, Integer, Rational};
use std::fmt::Write as _;

/// Largest `M * ORDER` accepted from a golden file.
const MAX_GOLDEN_TERMS: u64 = 1_000_000;

/// Growth information used to bound the discarded tail during evaluation.
#[derive(Clone, Debug, PartialEq)]
pub enum TailHint {
    /// `|c_n| <= c (n+1)^b` for every index `n`.
    Polynomial { c: f64, b: f64 },
    /// Coefficient growth unknown; evaluation refuses to certify a value.
    Unknown,
}

/// `sum_n c_n q^{n/M}` for `0 <= n < M * order`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries {
    pub denominator: u32,
    pub coeffs: Vec<Rational>,
    pub order: usize,
    pub hint: TailHint,
}

impl QSeries {
    pub fn zero(denominator: u32, order: usize) -> Self {
        QSeries {
            denominator,
            coeffs: vec![Rational::new(); denominator as usize * order],
            order,
            hint: TailHint::Unknown,
        }
    }

    pub fn constant(c: Rational, denominator: u32, order: usize) -> Self {
        let mut s = QSeries::zero(denominator, order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_coeffs(denominator: u32, coeffs: Vec<Rational>, hint: TailHint) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::DomainError("series denominator must be positive".into()));
        }
        let m = denominator as usize;
        if coeffs.is_empty() || coeffs.len() % m != 0 {
            return Err(Error::DomainError("coefficient count must be a positive multiple of M".into()));
        }
        let order = coeffs.len() / m;
        Ok(QSeries { denominator, coeffs, order, hint })
    }

    pub fn with_hint(mut self, hint: TailHint) -> Self {
        self.hint = hint;
        self
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^{n/M}`.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    /// Coefficient of `q^k` for integer `k`.
    pub fn coeff_q(&self, k: usize) -> Rational {
        self.coeffs
            .get(k * self.denominator as usize)
            .cloned()
            .unwrap_or_default()
    }

    /// Re-expresses in `q^{1/M'}` for a multiple `M'` of `M`.
    pub fn refine(&self, new_den: u32) -> Result<Self> {
        if new_den % self.denominator != 0 {
            return Err(Error::DomainError(format!(
                "{} is not a multiple of {}",
                new_den, self.denominator
            )));
        }
        let k = (new_den / self.denominator) as usize;
        if k == 1 {
            return Ok(self.clone());
        }
        let mut out = QSeries::zero(new_den, self.order);
        for (n, c) in self.coeffs.iter().enumerate() {
            out.coeffs[n * k] = c.clone();
        }
        out.hint = self.hint.clone();
        Ok(out)
    }

    fn common(&self, o: &Self) -> Result<(Self, Self)> {
        let m = num_lcm(self.denominator, o.denominator);
        let a = self.refine(m)?;
        let b = o.refine(m)?;
        let order = a.order.min(b.order);
        Ok((a.truncate(order), b.truncate(order)))
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let len = order * self.denominator as usize;
        QSeries {
            denominator: self.denominator,
            coeffs: self.coeffs[..len].to_vec(),
            order,
            hint: self.hint.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let (mut a, b) = self.common(o)?;
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a.hint = TailHint::Unknown;
        Ok(a)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&Rational::from(-1)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut s = self.clone();
        for c in s.coeffs.iter_mut() {
            *c *= r;
        }
        s.hint = TailHint::Unknown;
        s
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let (a, b) = self.common(o)?;
        let len = a.coeffs.len();
        let integral = a.coeffs.iter().chain(b.coeffs.iter()).all(|c| *c.denom() == 1);
        let mut out = QSeries::zero(a.denominator, a.order);
        if integral {
            let an: Vec<&Integer> = a.coeffs.iter().map(|c| c.numer()).collect();
            let bn: Vec<&Integer> = b.coeffs.iter().map(|c| c.numer()).collect();
            let mut acc = vec![Integer::new(); len];
            for (i, x) in an.iter().enumerate() {
                if **x == 0 {
                    continue;
                }
                for (j, y) in bn.iter().enumerate().take(len - i) {
                    if **y == 0 {
                        continue;
                    }
                    acc[i + j] += Integer::from(*x * *y);
                }
            }
            out.coeffs = acc.into_iter().map(Rational::from).collect();
        } else {
            for (i, x) in a.coeffs.iter().enumerate() {
                if *x == 0 {
                    continue;
                }
                for (j, y) in b.coeffs.iter().enumerate().take(len - i) {
                    if *y == 0 {
                        continue;
                    }
                    out.coeffs[i + j] += Rational::from(x * y);
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse of a series with non-zero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        if c0 == 0 {
            return Err(Error::DomainError("series is not a unit".into()));
        }
        let len = self.coeffs.len();
        let inv0 = Rational::from(1) / &c0;
        let mut out = QSeries::zero(self.denominator, self.order);
        out.coeffs[0] = inv0.clone();
        let nz: Vec<(usize, &Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| **c != 0)
            .collect();
        for n in 1..len {
            let mut s = Rational::new();
            for (k, c) in &nz {
                if *k > n {
                    break;
                }
                s += Rational::from(*c * &out.coeffs[n - k]);
            }
            out.coeffs[n] = -s * &inv0;
        }
        Ok(out)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.mul(&o.inverse()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let mut result = QSeries::constant(Rational::from(1), self.denominator, self.order);
        let mut base = self.clone();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// `f(k tau)` from `f(tau)`.
    pub fn dilate(&self, k: usize) -> Self {
        let mut out = QSeries::zero(self.denominator, self.order * k);
        for (n, c) in self.coeffs.iter().enumerate() {
            out.coeffs[n * k] = c.clone();
        }
        out.hint = TailHint::Unknown;
        out
    }

    /// `q^{s/M} f`, keeping the truncation order.
    pub fn shift(&self, s: usize) -> Self {
        let mut out = QSeries::zero(self.denominator, self.order);
        for (n, c) in self.coeffs.iter().enumerate() {
            if n + s < out.coeffs.len() {
                out.coeffs[n + s] = c.clone();
            }
        }
        out
    }

    /// Index count needed so the tail beyond it is below `tol` when `|q^{1/M}| = rho`.
    pub fn required_terms(&self, rho: f64, tol: f64) -> Result<usize> {
        match self.hint {
            TailHint::Unknown => Err(Error::UnsupportedFunction(
                "series has no certified tail bound".into(),
            )),
            TailHint::Polynomial { c, b } => required_terms_poly(c, b, rho, tol, self.denominator),
        }
    }

    /// Sum at a point where `x = q^{1/M}`, with the tail certified below `tol`.
    pub fn eval_nome_root(&self, x: &Complex, tol: f64) -> Result<Complex> {
        let rho = x.abs().to_f64();
        let need = self.required_terms(rho, tol)?;
        if need > self.coeffs.len() {
            return Err(Error::SlowConvergence(
                (need as u64).div_ceil(self.denominator as u64),
            ));
        }
        Ok(self.partial_sum(x, need))
    }

    /// Plain partial sum of the first `n` coefficients.
    pub fn partial_sum(&self, x: &Complex, n: usize) -> Complex {
        let prec = x.prec();
        let mut sum = Complex::zero(prec);
        let mut pow = Complex::one(prec);
        let mut at = 0usize;
        let n = n.min(self.coeffs.len());
        for (k, c) in self.coeffs.iter().enumerate().take(n) {
            if *c == 0 {
                continue;
            }
            let gap = k - at;
            if gap == 1 {
                pow = &pow * x;
            } else if gap > 1 {
                pow = &pow * &x.powi(gap as i64);
            }
            at = k;
            sum += pow.scale(&Float::with_val(prec, c));
        }
        sum
    }

    /// Evaluates at `tau`, requiring the stored truncation to suffice.
    pub fn eval(&self, tau: &CMPoint, ctx: &PrecisionContext) -> Result<Complex> {
        let x = tau.nome_root(self.denominator, ctx.prec());
        self.eval_nome_root(&x, ctx.series_tolerance)
    }

    /// Golden-file rendering: header `M <int> ORDER <int>` then `n c_n` lines for
    /// non-zero coefficients.
    pub fn to_golden(&self) -> String {
        let mut s = format!("M {} ORDER {}\n", self.denominator, self.order);
        for (n, c) in self.coeffs.iter().enumerate() {
            if *c != 0 {
                let _ = writeln!(s, "{} {}", n, c);
            }
        }
        s
    }

    pub fn from_golden(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty golden file".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 4 || h[0] != "M" || h[2] != "ORDER" {
            return Err(Error::Parse(format!("bad golden header {:?}", header)));
        }
        let m: u32 = h[1].parse().map_err(|_| Error::Parse("bad M".into()))?;
        let order: usize = h[3].parse().map_err(|_| Error::Parse("bad ORDER".into()))?;
        if m == 0 || order == 0 || (m as u64) * (order as u64) > MAX_GOLDEN_TERMS {
            return Err(Error::Parse("M and ORDER must be positive and moderate".into()));
        }
        let mut s = QSeries::zero(m, order);
        for line in lines {
            let mut it = line.split_whitespace();
            let n: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad exponent in {:?}", line)))?;
            let c: Rational = it
                .next()
                .and_then(|t| parse_rational_token(t))
                .ok_or_else(|| Error::Parse(format!("bad coefficient in {:?}", line)))?;
            if it.next().is_some() {
                return Err(Error::Parse(format!("trailing data in {:?}", line)));
            }
            if n >= s.coeffs.len() {
                return Err(Error::Parse(format!("exponent {} beyond order", n)));
            }
            s.coeffs[n] = c;
        }
        Ok(s)
    }
}

fn parse_rational_token(t: &str) -> Option<Rational> {
    if t.len() > 4096 {
        return None;
    }
    let valid = |s: &str| {
        let s = s.strip_prefix('-').unwrap_or(s);
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
    };
    match t.split_once('/') {
        Some((n, d)) => {
            if !valid(n) || !d.bytes().all(|b| b.is_ascii_digit()) || d.is_empty() {
                return None;
            }
            let n: Integer = n.parse().ok()?;
            let d: Integer = d.parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Rational::from((n, d)))
        }
        None => {
            if !valid(t) {
                return None;
            }
            Some(Rational::from(t.parse::<Integer>().ok()?))
        }
    }
}

fn num_lcm(a: u32, b: u32) -> u32 {
    let g = crate::numerics::numtheory::gcd(a as u64, b as u64) as u32;
    a / g * b
}

/// Smallest index count `N` with `sum_{n>=N} c (n+1)^b rho^n < tol`.
pub fn required_terms_poly(c: f64, b: f64, rho: f64, tol: f64, m: u32) -> Result<usize> {
    if rho <= 0.0 {
        return Ok(1);
    }
    if rho >= 1.0 {
        return Err(Error::SlowConvergence(u64::MAX));
    }
    let ln_rho = rho.ln();
    let ln_tol = tol.ln();
    let tail_ln = |n: f64| -> Option<f64> {
        let r = ((n + 2.0) / (n + 1.0)).powf(b) * rho;
        if r >= 1.0 {
            return None;
        }
        Some(c.ln() + b * (n + 1.0).ln() + n * ln_rho - (1.0 - r).ln())
    };
    let limit = 1_000_000f64 * m as f64;
    let mut hi = 1f64;
    loop {
        if let Some(t) = tail_ln(hi) {
            if t < ln_tol {
                break;
            }
        }
        hi *= 2.0;
        if hi > 4.0 * limit {
            return Err(Error::SlowConvergence((hi / m as f64) as u64));
        }
    }
    let mut lo = (hi / 2.0).floor();
    while hi - lo > 1.0 {
        let mid = ((lo + hi) / 2.0).floor();
        match tail_ln(mid) {
            Some(t) if t < ln_tol => hi = mid,
            _ => lo = mid,
        }
    }
    if hi > limit {
        return Err(Error::SlowConvergence((hi / m as f64) as u64));
    }
    Ok(hi as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(m: u32, cs: &[i64]) -> QSeries {
        QSeries::from_coeffs(m, cs.iter().map(|&c| Rational::from(c)).collect(), TailHint::Unknown).unwrap()
    }

    #[test]
    fn inverse_of_geometric() {
        let s = series(1, &[1, -1, 0, 0, 0, 0]);
        let inv = s.inverse().unwrap();
        assert!(inv.coeffs.iter().all(|c| *c == 1));
        let one = s.mul(&inv).unwrap();
        assert_eq!(one.coeffs[0], 1);
        assert!(one.coeffs[1..].iter().all(|c| *c == 0));
    }

    #[test]
    fn refinement_and_products() {
        let a = series(2, &[1, 1, 0, 0]);
        let b = series(1, &[1, 1]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.denominator, 2);
        assert_eq!(p.coeffs, vec![Rational::from(1), Rational::from(1), Rational::from(1), Rational::from(1)]);
        assert_eq!(a.pow(2).unwrap().coeffs[2], 1);
    }

    #[test]
    fn golden_round_trip() {
        let s = series(3, &[1, 0, -2, 0, 0, 7]);
        let t = QSeries::from_golden(&s.to_golden()).unwrap();
        assert_eq!(s.coeffs, t.coeffs);
        assert!(QSeries::from_golden("M 0 ORDER 3").is_err());
        assert!(QSeries::from_golden("M 1 ORDER 9849454").is_err());
        assert!(QSeries::from_golden("M 1 ORDER 2\n5 1").is_err());
        assert!(QSeries::from_golden("M 1 ORDER 2\n1 1/0").is_err());
    }

    #[test]
    fn tail_bound_grows_with_rho() {
        let a = required_terms_poly(1.0, 2.0, 0.01, 1e-60, 1).unwrap();
        let b = required_terms_poly(1.0, 2.0, 0.5, 1e-60, 1).unwrap();
        assert!(a < b);
        assert!(matches!(required_terms_poly(1.0, 2.0, 0.999999999, 1e-60, 1), Err(Error::SlowConvergence(_))));
    }
}
