//! Summation of `nF(n-1)` series.
//!
//! Inside the unit disk terms are summed until a geometric majorant of the
//! tail falls below tolerance. On the boundary `z = 1` or `z = -1` the tail
//! `sum_{k>=N} t_k = t_N R(N)` is expanded asymptotically in `1/N` and the
//! result is confirmed by repeating at `2N`.

use crate::error::{Error, Result};
use crate::numerics::{Complex, PrecisionContext};
use rug::ops::Pow;
use rug::{Float, Rational};

/// The argument of a hypergeometric datum.
#[derive(Clone, Debug, PartialEq)]
pub enum Argument {
    Rational(Rational),
    Complex(Complex),
}

impl Argument {
    pub fn to_complex(&self, prec: u32) -> Complex {
        match self {
            Argument::Rational(r) => Complex::from_rational(prec, r),
            Argument::Complex(c) => {
                Complex::new(Float::with_val(prec, &c.re), Float::with_val(prec, &c.im))
            }
        }
    }
}

impl From<Rational> for Argument {
    fn from(r: Rational) -> Self {
        Argument::Rational(r)
    }
}

impl From<Complex> for Argument {
    fn from(c: Complex) -> Self {
        Argument::Complex(c)
    }
}

/// `nF(n-1)(upper; lower; argument)` with `lower = {1, b_2, ..., b_n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergeometricDatum {
    pub upper: Vec<Rational>,
    pub lower: Vec<Rational>,
    pub argument: Argument,
}

fn is_nonpositive_integer(r: &Rational) -> bool {
    *r.denom() == 1 && *r.numer() <= 0
}

impl HypergeometricDatum {
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>, argument: Argument) -> Result<Self> {
        if upper.len() != lower.len() || upper.is_empty() {
            return Err(Error::DomainError(
                "upper and lower parameter lists must have equal, positive length".into(),
            ));
        }
        if lower.iter().any(is_nonpositive_integer) {
            return Err(Error::DomainError("lower parameter is a non-positive integer".into()));
        }
        Ok(HypergeometricDatum { upper, lower, argument })
    }

    /// `2F1(a, b; c; z)`.
    pub fn f21(a: Rational, b: Rational, c: Rational, z: Argument) -> Result<Self> {
        HypergeometricDatum::new(vec![a, b], vec![Rational::from(1), c], z)
    }

    /// `3F2({1/2, 1/d, 1 - 1/d}; {1, 1}; t)`, the datum attached to the family `d`.
    pub fn hd3(d: u32, t: Argument) -> Result<Self> {
        let a = Rational::from((1, d));
        let b = Rational::from(1) - a.clone();
        HypergeometricDatum::new(
            vec![Rational::from((1, 2)), a, b],
            vec![Rational::from(1), Rational::from(1), Rational::from(1)],
            t,
        )
    }

    /// `sum(lower) - sum(upper)`, with the leading 1 of `lower` included.
    pub fn excess(&self) -> Rational {
        let s: Rational = self.lower.iter().fold(Rational::new(), |acc, b| acc + b);
        let t: Rational = self.upper.iter().fold(Rational::new(), |acc, a| acc + a);
        s - t
    }

    fn terminating_degree(&self) -> Option<u64> {
        self.upper
            .iter()
            .filter(|a| is_nonpositive_integer(a))
            .filter_map(|a| (-a.numer().clone()).to_u64())
            .min()
    }
}

/// `(a)_n = a (a+1) ... (a+n-1)`.
pub fn pochhammer(a: &Rational, n: u64) -> Rational {
    let mut r = Rational::from(1);
    let mut x = a.clone();
    for _ in 0..n {
        r *= &x;
        x += 1u32;
    }
    r
}

const BASE_TERM_BUDGET: u64 = 200_000;

/// Value of the series with absolute error below `ctx.series_tolerance`.
pub fn pfq(datum: &HypergeometricDatum, ctx: &PrecisionContext) -> Result<Complex> {
    HypergeometricDatum::new(datum.upper.clone(), datum.lower.clone(), datum.argument.clone())?;
    let prec = ctx.prec();
    if let Some(deg) = datum.terminating_degree() {
        return Ok(sum_terms(datum, &datum.argument.to_complex(prec), deg + 1, prec).0);
    }
    if let Argument::Rational(r) = &datum.argument {
        if r.clone().abs() == 1 {
            return pfq_boundary(datum, *r == 1, ctx);
        }
    }
    let z = datum.argument.to_complex(prec);
    let az = z.abs();
    if az >= 1 {
        return Err(Error::DivergentSeries(format!(
            "|z| = {} is not inside the unit disk",
            az.to_f64()
        )));
    }
    if az > 0.9 {
        let wide = ctx.doubled();
        let zw = datum.argument.to_complex(wide.prec());
        let v = sum_with_tail_bound(datum, &zw, &wide, BASE_TERM_BUDGET * 8)?;
        return Ok(Complex::new(Float::with_val(prec, &v.re), Float::with_val(prec, &v.im)));
    }
    sum_with_tail_bound(datum, &z, ctx, BASE_TERM_BUDGET)
}

/// Partial sum of the first `n` terms, and the last term included.
fn sum_terms(datum: &HypergeometricDatum, z: &Complex, n: u64, prec: u32) -> (Complex, Complex) {
    let mut sum = Complex::zero(prec);
    let mut term = Complex::one(prec);
    let mut last = term.clone();
    for k in 0..n {
        sum += &term;
        last = term.clone();
        let ratio = term_ratio(datum, k, prec);
        term = (&term * z).scale(&ratio);
        if term.is_zero() {
            break;
        }
    }
    (sum, last)
}

/// `prod(a_i + k) / prod(b_i + k)`.
fn term_ratio(datum: &HypergeometricDatum, k: u64, prec: u32) -> Float {
    let mut num = Float::with_val(prec, 1);
    for a in &datum.upper {
        num *= Float::with_val(prec, a) + k;
    }
    let mut den = Float::with_val(prec, 1);
    for b in &datum.lower {
        den *= Float::with_val(prec, b) + k;
    }
    num / den
}

fn sum_with_tail_bound(
    datum: &HypergeometricDatum,
    z: &Complex,
    ctx: &PrecisionContext,
    budget: u64,
) -> Result<Complex> {
    let prec = ctx.prec();
    let tol = ctx.series_tolerance / 2.0;
    let az = z.abs().to_f64();
    let diffs: Vec<(f64, f64)> = datum
        .upper
        .iter()
        .zip(&datum.lower)
        .map(|(a, b)| ((a.clone() - b).abs().to_f64(), b.to_f64()))
        .collect();
    let min_b = datum.lower.iter().map(|b| b.to_f64()).fold(f64::INFINITY, f64::min);
    let mut sum = Complex::zero(prec);
    let mut term = Complex::one(prec);
    for k in 0..budget {
        sum += &term;
        let ratio = term_ratio(datum, k, prec);
        term = (&term * z).scale(&ratio);
        let kk = (k + 1) as f64;
        if kk + min_b <= 0.0 {
            continue;
        }
        let mut rho = az;
        for (d, b) in &diffs {
            rho *= 1.0 + d / (kk + b);
        }
        if rho < 1.0 {
            let t = term.abs().to_f64();
            if t == 0.0 || t / (1.0 - rho) < tol {
                sum += &term;
                return Ok(sum);
            }
        }
    }
    Err(Error::DivergentSeries(format!("term budget {} exhausted", budget)))
}

/// Power series truncated at `len` terms.
fn series_mul(a: &[Float], b: &[Float], len: usize, prec: u32) -> Vec<Float> {
    let mut out = vec![Float::new(prec); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += Float::with_val(prec, x * y);
        }
    }
    out
}

/// `prod (1 + c_i u)` truncated.
fn linear_product(cs: &[Rational], len: usize, prec: u32) -> Vec<Float> {
    let mut out = vec![Float::new(prec); len];
    out[0] = Float::with_val(prec, 1);
    for c in cs {
        let f = [Float::with_val(prec, 1), Float::with_val(prec, c)];
        out = series_mul(&out, &f, len, prec);
    }
    out
}

/// Coefficients of `g(u/(1+u)) * (1+u)^e` given those of `g`.
fn compose_shift(g: &[Float], e: i64, len: usize, prec: u32) -> Vec<Float> {
    let mut out = vec![Float::new(prec); len];
    for (j, gj) in g.iter().enumerate().take(len) {
        if gj.is_zero() {
            continue;
        }
        let ex = e - j as i64;
        let mut c = Float::with_val(prec, 1);
        for m in 0..(len - j) {
            out[j + m] += Float::with_val(prec, gj * &c);
            c *= ex - m as i64;
            c /= (m + 1) as u64;
        }
    }
    out
}

/// Asymptotic expansion of `R(N)` where `sum_{k>=N} t_k = t_N R(N)`.
/// Returns the coefficients of `g` with `R(N) = N^e g(1/N)`, `e = 1` for `z = 1`
/// and `e = 0` for `z = -1`.
fn tail_expansion(datum: &HypergeometricDatum, plus: bool, terms: usize, prec: u32) -> Vec<Float> {
    let len = terms + 2;
    let q = linear_product(&datum.lower, len, prec);
    let p = linear_product(&datum.upper, len, prec);
    let s = Float::with_val(prec, &datum.excess());
    let mut g = vec![Float::new(prec); terms];
    let e: i64 = if plus { 1 } else { 0 };
    for m in 0..terms {
        let order = m + e as usize;
        let qg = series_mul(&q, &g, len, prec);
        let h = compose_shift(&g, e, len, prec);
        let ph = series_mul(&p, &h, len, prec);
        // plus: q g - p (1+u) h(u) = u q ; minus: q g + p h = q
        let lhs = if plus {
            Float::with_val(prec, &qg[order] - &ph[order])
        } else {
            Float::with_val(prec, &qg[order] + &ph[order])
        };
        let rhs = if plus {
            if order >= 1 { q[order - 1].clone() } else { Float::new(prec) }
        } else {
            q[order].clone()
        };
        let denom = if plus {
            Float::with_val(prec, &s - 1u32) + m as u64
        } else {
            Float::with_val(prec, 2)
        };
        g[m] = (rhs - lhs) / denom;
    }
    g
}

fn boundary_value(
    datum: &HypergeometricDatum,
    plus: bool,
    n: u64,
    g: &[Float],
    prec: u32,
) -> Complex {
    let z = Complex::from_f64(prec, if plus { 1.0 } else { -1.0 }, 0.0);
    let mut sum = Complex::zero(prec);
    let mut term = Complex::one(prec);
    for k in 0..n {
        sum += &term;
        let ratio = term_ratio(datum, k, prec);
        term = (&term * &z).scale(&ratio);
    }
    let nf = Float::with_val(prec, n);
    let u = Float::with_val(prec, 1) / &nf;
    let mut r = Float::new(prec);
    let mut upow = Float::with_val(prec, 1);
    for c in g {
        r += Float::with_val(prec, c * &upow);
        upow *= &u;
    }
    if plus {
        r *= &nf;
    }
    sum + term.scale(&r)
}

fn pfq_boundary(datum: &HypergeometricDatum, plus: bool, ctx: &PrecisionContext) -> Result<Complex> {
    let s = datum.excess();
    let ok = if plus { s > 1 } else { s > 0 };
    if !ok {
        return Err(Error::DivergentSeries(format!(
            "boundary argument {} with parameter excess {}",
            if plus { 1 } else { -1 },
            s
        )));
    }
    let prec = ctx.prec() + 64;
    let n = (4 * ctx.working_precision_bits as u64).max(400);
    let terms = (ctx.working_precision_bits as usize / 4).max(40);
    let g = tail_expansion(datum, plus, terms, prec);
    let v1 = boundary_value(datum, plus, n, &g, prec);
    let v2 = boundary_value(datum, plus, 2 * n, &g, prec);
    let diff = v1.dist(&v2);
    if diff > ctx.series_tolerance {
        return Err(Error::DivergentSeries(format!(
            "boundary tail expansion unstable (difference {:e})",
            diff.to_f64()
        )));
    }
    let out = ctx.prec();
    Ok(Complex::new(Float::with_val(out, &v2.re), Float::with_val(out, &v2.im)))
}

/// Like [`pfq`], but for the Clausen-type data `3F2({1/2, a, 1-a}; {1, 1}; t)`
/// with real `t < -1` uses the continuation `2F1(a, 1-a; 1; z)^2`,
/// `t = 4z(1-z)`, `z = (1 - sqrt(1-t))/2`, applying Pfaff when `z < -1/2`.
pub fn pfq_extended(datum: &HypergeometricDatum, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.prec();
    let t = datum.argument.to_complex(prec);
    if t.im.is_zero() && t.re < -1 {
        if let Some(a) = clausen_parameter(datum) {
            return clausen_continuation(&a, &t.re, ctx);
        }
    }
    pfq(datum, ctx)
}

/// The `a` for which the datum is `{1/2, a, 1-a}; {1, 1, 1}`, if any.
pub fn clausen_parameter(datum: &HypergeometricDatum) -> Option<Rational> {
    if datum.upper.len() != 3 || datum.lower.iter().any(|b| *b != 1) {
        return None;
    }
    let half = Rational::from((1, 2));
    let idx = datum.upper.iter().position(|a| *a == half)?;
    let rest: Vec<&Rational> = datum
        .upper
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != idx)
        .map(|(_, a)| a)
        .collect();
    if Rational::from(rest[0] + rest[1]) == 1 {
        Some(rest[0].clone())
    } else {
        None
    }
}

/// `3F2({1/2, a, 1-a}; {1, 1}; t)` for real `t < 1` via the square of a `2F1`.
pub fn clausen_continuation(a: &Rational, t: &Float, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.prec();
    if *t >= 1 {
        return Err(Error::DomainError("Clausen continuation needs t < 1".into()));
    }
    let root = (Float::with_val(prec, 1) - t).sqrt();
    let z = (Float::with_val(prec, 1) - root) / 2u32;
    let b = Rational::from(1) - a.clone();
    let f = if z < -0.5 {
        let w = Float::with_val(prec, &z / (Float::with_val(prec, &z) - 1u32));
        let d = HypergeometricDatum::f21(
            a.clone(),
            a.clone(),
            Rational::from(1),
            Argument::Complex(Complex::from_real(w)),
        )?;
        let pre = (Float::with_val(prec, 1) - &z).pow(Float::with_val(prec, -a.clone()));
        pfq(&d, ctx)?.scale(&pre)
    } else {
        let d = HypergeometricDatum::f21(a.clone(), b, Rational::from(1), Argument::Complex(Complex::from_real(z)))?;
        pfq(&d, ctx)?
    };
    Ok(f.square())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&q(1, 2), 0), 1);
        assert_eq!(pochhammer(&q(1, 2), 2), q(3, 4));
        assert_eq!(pochhammer(&q(1, 3), 3), q(28, 27));
    }

    #[test]
    fn zero_argument_gives_one() {
        let ctx = PrecisionContext::default();
        let d = HypergeometricDatum::hd3(4, Argument::Rational(Rational::new())).unwrap();
        assert_eq!(pfq(&d, &ctx).unwrap(), Complex::one(ctx.prec()));
    }

    #[test]
    fn gauss_sum_at_one() {
        // 2F1(a, b; c; 1) = Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b))
        let ctx = PrecisionContext::default();
        let prec = ctx.prec();
        let (a, b, c) = (q(1, 3), q(1, 4), q(2, 1));
        let d = HypergeometricDatum::f21(a.clone(), b.clone(), c.clone(), Argument::Rational(q(1, 1))).unwrap();
        let v = pfq(&d, &ctx).unwrap();
        let g = |r: Rational| Float::with_val(prec, Float::with_val(prec, &r).gamma_ref());
        let expect = g(c.clone()) * g(c.clone() - &a - &b) / (g(c.clone() - &a) * g(c - &b));
        assert!((v.re - expect).abs() < 1e-55);
    }

    #[test]
    fn alternating_boundary() {
        // 2F1(1, 1; 2; -1) = ln 2
        let ctx = PrecisionContext::default();
        let d = HypergeometricDatum::f21(q(1, 1), q(1, 1), q(2, 1), Argument::Rational(q(-1, 1))).unwrap();
        let v = pfq(&d, &ctx).unwrap();
        let ln2 = Float::with_val(ctx.prec(), 2).ln();
        assert!((v.re - ln2).abs() < 1e-55);
    }

    #[test]
    fn divergence_detected() {
        let ctx = PrecisionContext::default();
        let d = HypergeometricDatum::hd3(2, Argument::Rational(q(3, 2))).unwrap();
        assert!(matches!(pfq(&d, &ctx), Err(Error::DivergentSeries(_))));
        let e = HypergeometricDatum::f21(q(1, 2), q(1, 2), q(1, 1), Argument::Rational(q(1, 1))).unwrap();
        assert!(matches!(pfq(&e, &ctx), Err(Error::DivergentSeries(_))));
    }

    #[test]
    fn terminating_series() {
        let ctx = PrecisionContext::default();
        // 2F1(-2, b; c; z) = 1 - 2bz/c + b(b+1)z^2/(c(c+1))
        let d = HypergeometricDatum::f21(q(-2, 1), q(1, 2), q(3, 2), Argument::Rational(q(5, 1))).unwrap();
        let v = pfq(&d, &ctx).unwrap();
        let expect = 1.0 - 2.0 * 0.5 * 5.0 / 1.5 + 0.5 * 1.5 * 25.0 / (1.5 * 2.5);
        assert!((v.re.to_f64() - expect).abs() < 1e-12);
    }

    #[test]
    fn continuation_matches_series_inside_disk() {
        let ctx = PrecisionContext::default();
        let t = q(-3, 4);
        let d = HypergeometricDatum::hd3(4, Argument::Rational(t.clone())).unwrap();
        let direct = pfq(&d, &ctx).unwrap();
        let cont = clausen_continuation(&q(1, 4), &Float::with_val(ctx.prec(), &t), &ctx).unwrap();
        assert!(direct.dist(&cont) < 1e-55);
    }
}
