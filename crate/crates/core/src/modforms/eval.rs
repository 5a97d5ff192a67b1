//! Extended-precision evaluation of the modular functions and forms at points
//! of the upper half-plane, with certified truncation.

use super::qseries::{required_terms_poly, TailHint};
use super::series::{build_qseries, SeriesFunction};
use crate::error::{Error, Result};
use crate::numerics::{CMPoint, Complex, PrecisionContext};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer};

/// A point of the upper half-plane, either exact or floating.
pub trait Tau {
    fn complex(&self, prec: u32) -> Complex;

    fn cm_point(&self) -> Option<&CMPoint> {
        None
    }
}

impl Tau for CMPoint {
    fn complex(&self, prec: u32) -> Complex {
        self.value(prec)
    }

    fn cm_point(&self) -> Option<&CMPoint> {
        Some(self)
    }
}

impl Tau for Complex {
    fn complex(&self, prec: u32) -> Complex {
        Complex::new(Float::with_val(prec, &self.re), Float::with_val(prec, &self.im))
    }
}

/// Headroom between the requested tolerance and the certified tail, covering
/// the prefactors applied after summation.
const TAIL_MARGIN: f64 = 1e-6;

fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

fn check_upper(tau: &Complex) -> Result<()> {
    if !tau.im.is_finite() || !tau.re.is_finite() || tau.im <= 0 {
        return Err(Error::DomainError("tau must lie in the upper half-plane".into()));
    }
    Ok(())
}

/// `e^{2 pi i tau / m}`.
pub fn nome_root_complex(tau: &Complex, m: u32) -> Complex {
    let prec = tau.prec();
    let two_pi = pi(prec) * 2u32 / m;
    let arg = Complex::new(-(tau.im.clone() * &two_pi), tau.re.clone() * &two_pi);
    arg.exp()
}

/// Value of an exactly expanded series at `tau`, rebuilding the expansion at
/// whatever order the certified tail bound requires.
pub fn series_value(f: &SeriesFunction, tau: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    check_upper(tau)?;
    let m = f.denominator();
    let x = nome_root_complex(tau, m);
    let rho = x.abs().to_f64();
    let need = match f.hint() {
        TailHint::Polynomial { c, b } => {
            required_terms_poly(c, b, rho, ctx.series_tolerance * TAIL_MARGIN, m)?
        }
        TailHint::Unknown => {
            return Err(Error::UnsupportedFunction(format!("{} has no certified tail bound", f)))
        }
    };
    let order = need.div_ceil(m as usize) + 1;
    if order > 1_000_000 {
        return Err(Error::SlowConvergence(order as u64));
    }
    let s = build_qseries(f, order)?;
    Ok(s.partial_sum(&x, need))
}

/// Evaluates any catalogued function at `tau`: series with certified tails are
/// summed directly, eta quotients are assembled from eta values.
pub fn eval_qseries(f: &SeriesFunction, tau: &impl Tau, ctx: &PrecisionContext) -> Result<Complex> {
    match f {
        SeriesFunction::Hauptmodul(d) => hauptmodul(*d, tau, ctx),
        SeriesFunction::U6 => u6(tau, ctx),
        SeriesFunction::T5 => t5(tau, ctx),
        SeriesFunction::T25 => t25(tau, ctx),
        _ => series_value(f, &tau.complex(ctx.prec()), ctx),
    }
}

fn scaled(tau: &Complex, k: u32) -> Complex {
    tau.scale_int(&Integer::from(k))
}

pub fn eta(tau: &impl Tau, ctx: &PrecisionContext) -> Result<Complex> {
    series_value(&SeriesFunction::Eta, &tau.complex(ctx.prec()), ctx)
}

fn eta_at(tau: &Complex, k: u32, ctx: &PrecisionContext) -> Result<Complex> {
    series_value(&SeriesFunction::Eta, &scaled(tau, k), ctx)
}

/// `prod_k eta(k tau)^{e_k}`.
pub fn eta_quotient(tau: &impl Tau, exps: &[(u32, i64)], ctx: &PrecisionContext) -> Result<Complex> {
    let t = tau.complex(ctx.prec());
    let mut v = Complex::one(ctx.prec());
    for &(k, e) in exps {
        v = &v * &eta_at(&t, k, ctx)?.powi(e);
    }
    Ok(v)
}

pub fn theta(which: u32, tau: &impl Tau, ctx: &PrecisionContext) -> Result<Complex> {
    let f = match which {
        2 => SeriesFunction::Theta2,
        3 => SeriesFunction::Theta3,
        4 => SeriesFunction::Theta4,
        _ => return Err(Error::UnsupportedFunction(format!("theta_{}", which))),
    };
    series_value(&f, &tau.complex(ctx.prec()), ctx)
}

/// `G_2^*(tau) = pi^2/6 - pi/(2 Im tau) - 4 pi^2 sum sigma_1(n) q^n`.
pub fn g2_star(tau: &impl Tau, ctx: &PrecisionContext) -> Result<Complex> {
    let t = tau.complex(ctx.prec());
    let s = series_value(&SeriesFunction::Sigma(1), &t, ctx)?;
    let p = pi(ctx.prec());
    let p2 = Float::with_val(ctx.prec(), p.square_ref());
    let constant = Float::with_val(ctx.prec(), &p2 / 6u32) - Float::with_val(ctx.prec(), &p / (t.im.clone() * 2u32));
    Ok(Complex::from_real(constant) - s.scale(&(p2 * 4u32)))
}

/// `G_k(tau) = zeta(k) + (2 pi i)^k / Gamma(k) sum sigma_{k-1}(n) q^n` for even
/// `k >= 4`; `k = 2` gives `G_2^*`.
pub fn gk(k: u32, tau: &impl Tau, ctx: &PrecisionContext) -> Result<Complex> {
    if k == 2 {
        return g2_star(tau, ctx);
    }
    if k < 4 || k % 2 == 1 {
        return Err(Error::UnsupportedFunction(format!("G_{}", k)));
    }
    let prec = ctx.prec();
    let t = tau.complex(prec);
    let s = series_value(&SeriesFunction::Sigma(k - 1), &t, ctx)?;
    let zeta = Float::with_val(prec, Float::with_val(prec, k).zeta_ref());
    let mut factor = Float::with_val(prec, pi(prec) * 2u32).pow(k);
    if k % 4 == 2 {
        factor = -factor;
    }
    let fact = Integer::from(Integer::factorial(k - 1));
    factor /= Float::with_val(prec, &fact);
    Ok(Complex::from_real(zeta) + s.scale(&factor))
}

/// Normalized `E_k` from its rational expansion.
pub fn ek(k: u32, tau: &impl Tau, ctx: &PrecisionContext) -> Result<Complex> {
    series_value(&SeriesFunction::Eisenstein(k), &tau.complex(ctx.prec()), ctx)
}

/// `G_{2,N}(tau) = N G_2^*(N tau) - G_2^*(tau)`.
pub fn g2n(n: u32, tau: &impl Tau, ctx: &PrecisionContext) -> Result<Complex> {
    if n == 0 {
        return Err(Error::UnsupportedFunction("G_{2,0}".into()));
    }
    let t = tau.complex(ctx.prec());
    let a = g2_star(&scaled(&t, n), ctx)?;
    let b = g2_star(&t, ctx)?;
    Ok(a.scale_int(&Integer::from(n)) - b)
}

/// Lattice sum with congruence condition, from its Fourier expansion
/// `-pi/(2N Im tau) - 2 pi^2 sum_n n (q^{na} + q^{n(N-a)})/(1 - q^{Nn})`.
pub fn curly_g(a: u32, n: u32, tau: &impl Tau, ctx: &PrecisionContext) -> Result<Complex> {
    if n == 0 || a > n {
        return Err(Error::UnsupportedFunction(format!("curly G({};{})", a, n)));
    }
    let t = tau.complex(ctx.prec());
    if a == 0 || a == n {
        return g2_star(&scaled(&t, n), ctx);
    }
    let s = series_value(&SeriesFunction::CurlyG { a, n }, &t, ctx)?;
    let prec = ctx.prec();
    let p = pi(prec);
    let p2 = Float::with_val(prec, p.square_ref()) * 2u32;
    let c = -Float::with_val(prec, &p / (t.im.clone() * (2 * n)));
    Ok(Complex::from_real(c) - s.scale(&p2))
}

/// `G_2 (x) chi_l = -4 pi^2 sum chi_l(n) sigma_1(n) q^n`.
pub fn g2_twist(ell: i64, tau: &impl Tau, ctx: &PrecisionContext) -> Result<Complex> {
    let t = tau.complex(ctx.prec());
    let s = series_value(&SeriesFunction::TwistedSigma1(ell), &t, ctx)?;
    let p2 = Float::with_val(ctx.prec(), pi(ctx.prec()).square_ref()) * 4u32;
    Ok(-s.scale(&p2))
}

/// Numerical reduction to the standard fundamental domain.
pub fn reduce_complex(tau: &Complex) -> Result<Complex> {
    check_upper(tau)?;
    let mut t = tau.clone();
    let half = Float::with_val(t.prec(), 0.5);
    for _ in 0..10_000 {
        let shift = Float::with_val(t.prec(), &t.re + &half).floor();
        t.re -= shift;
        if t.norm_sqr() < 1 {
            t = -t.recip();
        } else {
            return Ok(t);
        }
    }
    Err(Error::SlowConvergence(10_000))
}

fn reduced(tau: &impl Tau, prec: u32) -> Result<(Complex, bool)> {
    if let Some(p) = tau.cm_point() {
        let (r, _) = p.reduce_sl2z();
        let is_rho = r == CMPoint::from_ints(-1, 1, 3, 2)?;
        return Ok((r.value(prec), is_rho));
    }
    Ok((reduce_complex(&tau.complex(prec))?, false))
}

/// `j = 1728 E_4^3 / (E_4^3 - E_6^2)`, with the denominator summed as the exact
/// integer series `(E_4^3 - E_6^2)/1728` after reduction.
pub fn j_invariant(tau: &impl Tau, ctx: &PrecisionContext) -> Result<Complex> {
    let (t, _) = reduced(tau, ctx.prec())?;
    let e4 = series_value(&SeriesFunction::Eisenstein(4), &t, ctx)?;
    let delta = series_value(&SeriesFunction::Delta, &t, ctx)?;
    if delta.is_zero() {
        return Err(Error::PoleAtCusp("E4^3 - E6^2 vanishes".into()));
    }
    Ok(&e4.powi(3) / &delta)
}

/// Hauptmodul `t_d` of the hypergeometric families; `t_6 = 1728/j`.
pub fn hauptmodul(d: u32, tau: &impl Tau, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.prec();
    let t = tau.complex(prec);
    check_upper(&t)?;
    let one = Complex::one(prec);
    match d {
        2 => Ok(eta_quotient(&t, &[(2, 24), (1, -24)], ctx)?.scale_int(&Integer::from(-64))),
        3 => {
            let h = eta_quotient(&t, &[(3, 12), (1, -12)], ctx)?;
            let den = (&one + &h.scale_int(&Integer::from(27))).square();
            Ok(&h.scale_int(&Integer::from(108)) / &den)
        }
        4 => {
            let g = eta_quotient(&t, &[(2, 24), (1, -24)], ctx)?;
            let den = (&one + &g.scale_int(&Integer::from(64))).square();
            Ok(&g.scale_int(&Integer::from(256)) / &den)
        }
        6 => {
            let (r, is_rho) = reduced(tau, prec)?;
            if is_rho {
                return Err(Error::PoleAtCusp("t_6 has a pole where j = 0".into()));
            }
            let e4 = series_value(&SeriesFunction::Eisenstein(4), &r, ctx)?;
            let delta = series_value(&SeriesFunction::Delta, &r, ctx)?;
            if e4.is_zero() {
                return Err(Error::PoleAtCusp("t_6 has a pole where j = 0".into()));
            }
            Ok((&delta / &e4.powi(3)).scale_int(&Integer::from(1728)))
        }
        _ => Err(Error::UnsupportedFunction(format!("no hauptmodul t_{}", d))),
    }
}

/// `u_6 = (6 uu + 1)/(12 uu + 1)`, `uu = eta(2t) eta(6t)^5 / (eta(t)^5 eta(3t))`.
pub fn u6(tau: &impl Tau, ctx: &PrecisionContext) -> Result<Complex> {
    let uu = eta_quotient(tau, &[(2, 1), (6, 5), (1, -5), (3, -1)], ctx)?;
    let one = Complex::one(ctx.prec());
    let num = &uu.scale_int(&Integer::from(6)) + &one;
    let den = &uu.scale_int(&Integer::from(12)) + &one;
    Ok(&num / &den)
}

/// `eta(5 tau)^6 / eta(tau)^6`.
pub fn t5(tau: &impl Tau, ctx: &PrecisionContext) -> Result<Complex> {
    eta_quotient(tau, &[(5, 6), (1, -6)], ctx)
}

/// `eta(25 tau) / eta(tau)`.
pub fn t25(tau: &impl Tau, ctx: &PrecisionContext) -> Result<Complex> {
    eta_quotient(tau, &[(25, 1), (1, -1)], ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::algexpr;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn close(a: &Complex, b: &Complex, tol: f64) -> bool {
        a.dist(b) < tol
    }

    fn val(s: &str) -> Complex {
        algexpr::value(s, ctx().prec()).unwrap()
    }

    fn pt(s: &str) -> CMPoint {
        CMPoint::parse(s).unwrap()
    }

    #[test]
    fn g2_star_vanishes_at_elliptic_points() {
        let c = ctx();
        assert!(g2_star(&CMPoint::i(), &c).unwrap().abs() < 1e-55);
        assert!(g2_star(&pt("(-1+sqrt(-3))/2"), &c).unwrap().abs() < 1e-55);
    }

    #[test]
    fn j_values() {
        let c = ctx();
        assert!(close(&j_invariant(&CMPoint::i(), &c).unwrap(), &val("1728"), 1e-40));
        assert!(j_invariant(&pt("(1+sqrt(-3))/2"), &c).unwrap().abs() < 1e-40);
        assert!(close(&j_invariant(&pt("sqrt(-2)"), &c).unwrap(), &val("8000"), 1e-40));
        assert!(close(&j_invariant(&pt("i/7 + 3"), &c).unwrap(), &j_invariant(&pt("7*i"), &c).unwrap(), 1e-10));
    }

    #[test]
    fn hauptmodul_values() {
        let c = ctx();
        assert!(close(&hauptmodul(2, &pt("(1+sqrt(-7))/2"), &c).unwrap(), &val("1/64"), 1e-40));
        assert!(close(&hauptmodul(4, &pt("i/sqrt(2)"), &c).unwrap(), &val("1"), 1e-40));
        assert!(close(&hauptmodul(6, &CMPoint::i(), &c).unwrap(), &val("1"), 1e-40));
        assert!(matches!(hauptmodul(6, &pt("(1+sqrt(-3))/2"), &c), Err(Error::PoleAtCusp(_))));
    }

    #[test]
    fn u6_values() {
        let c = ctx();
        assert!(close(&u6(&pt("(3+sqrt(-15))/6"), &c).unwrap(), &val("sqrt(5)/2"), 1e-40));
        assert!(close(&u6(&pt("i/sqrt(2)"), &c).unwrap(), &val("1/5+3*sqrt(6)/10"), 1e-40));
        let expect = val("(3^(3/4)*sqrt(2)-1+sqrt(3))/4");
        assert!(close(&u6(&CMPoint::i(), &c).unwrap(), &expect, 1e-40));
        assert!(close(&u6(&pt("40*i"), &c).unwrap(), &val("1"), 1e-40));
    }

    #[test]
    fn theta3_two_term() {
        let c = ctx();
        let v = theta(3, &pt("8*i"), &c).unwrap();
        let e = val("1") + Complex::from_real((pi(c.prec()) * -8i32).exp()).scale_int(&Integer::from(2));
        assert!(close(&v, &e, 1e-30));
    }

    #[test]
    fn gk_matches_normalized() {
        let c = ctx();
        let t = Complex::from_f64(c.prec(), 0.31, 1.07);
        for k in [4u32, 6, 8] {
            let g = gk(k, &t, &c).unwrap();
            let z = Float::with_val(c.prec(), Float::with_val(c.prec(), k).zeta_ref());
            let e = ek(k, &t, &c).unwrap().scale(&z);
            assert!(close(&g, &e, 1e-50), "k = {}", k);
        }
    }

    #[test]
    fn curly_g_matches_g2_star_difference() {
        let c = ctx();
        let t = Complex::from_f64(c.prec(), 0.3, 1.1);
        let lhs = curly_g(1, 2, &t, &c).unwrap();
        let two_t = t.scale_int(&Integer::from(2));
        let rhs = g2_star(&t, &c).unwrap() - g2_star(&two_t, &c).unwrap();
        assert!(close(&lhs, &rhs, 1e-50));
    }
}
