//! Catalog of identities among Eisenstein series, theta functions, hauptmoduls
//! and the hypergeometric functions, checked numerically at sample points.

use super::eval::{
    curly_g, g2_star, g2_twist, g2n, gk, hauptmodul, j_invariant, t25, t5, theta, u6,
    eta_quotient,
};
use super::series::{build_qseries_exact, SeriesFunction};
use crate::error::{Error, Result};
use crate::hypergeom::{pfq, Argument, HypergeometricDatum};
use crate::numerics::{Complex, PrecisionContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::float::Constant;
use rug::{Float, Integer, Rational};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EisensteinIdentity {
    /// `pi^2/2 theta_3(2t)^4 = G_{2,4}(t)`.
    ThetaThree,
    /// `pi^2/2 theta_4(2t)^4 = 2G_{2,4} - 3G_{2,2} = 4G_{2,2}(2t) - G_{2,2}(t)`.
    ThetaFour,
    /// `G_{2,2}(t +- 1/2) = G_{2,4}(t) - 2G_{2,2}(t)`.
    HalfShift,
    /// Congruence lattice sums of level 2 and 4 against `G_2^*`.
    CurlyLevel2,
    /// Congruence lattice sum of level 3 against `G_2^*`.
    CurlyLevel3,
    /// Fricke action on `G_2^*(N t)` and `G_{2,N}`.
    Fricke { n: u32, ell: u32 },
    /// Fricke action on the level-`level` lattice sum.
    CurlyFricke { level: u32, ell: u32 },
    /// `G_{2,2}(3t)/G_{2,2}(t)` as a rational function of `u_6`.
    U6RatioG22,
    /// `G_{2,3}(2t)/G_{2,3}(t) = u_6^2`.
    U6RatioG23,
    /// `u_6(t)`, `u_6(3t)` on the degree-three modular equation.
    U6ModularEquation,
    /// `eta(3t)^12/eta(t)^12` as a rational function of `u_6`.
    U6Level3,
    /// `j(3t)` as a rational function of `eta(3t)^12/eta(t)^12`.
    J3Relation,
    /// `t_3 = 4z(1-z)`.
    CoveringT3,
    /// `1728/j = 64z(1-z)^3/(1+8z)^3`.
    CoveringJ3,
    /// `1728/j = -27 t_2/(1-4t_2)^3`.
    CoveringJ2,
    /// `t_4 = -4t_2/(t_2-1)^2`, with `t_2 = -theta_2^8/(4 theta_3^4 theta_4^4)`.
    CoveringT4,
    /// The Clausen-type `3F2(t_d)` against its weight-two modular form.
    Table2 { d: u32 },
    /// `y^6 = x(t) x(5t)`.
    Level5Y6,
    /// `x` as a polynomial in `y`.
    Level5XofY,
    /// `x j` as a polynomial in `x`.
    Level5XJ,
    /// `j(5t)` as a rational function of `y`.
    Level5J5,
    /// `G_2 (x) chi_5` against `G_{2,5}`.
    Level5Twist,
    /// `G_{2,5}(5t)` against `G_{2,5}(t)`.
    Level5Dilate,
    /// `G_{2,5}^2` against `G_4(5t)`.
    Level5Square,
    /// `G_2^*(-1/t) = t^2 G_2^*(t)`.
    ModularityG2Star,
    /// `G_k(-1/t) = t^k G_k(t)`.
    ModularityGk { k: u32 },
}

impl EisensteinIdentity {
    pub fn catalog() -> Vec<EisensteinIdentity> {
        use EisensteinIdentity::*;
        let mut v = vec![ThetaThree, ThetaFour, HalfShift, CurlyLevel2, CurlyLevel3];
        for (n, ell) in [(2, 1), (2, 2), (3, 3), (4, 2), (2, 3)] {
            v.push(Fricke { n, ell });
        }
        for level in [2, 3, 4] {
            for ell in [1, 2, 3] {
                v.push(CurlyFricke { level, ell });
            }
        }
        v.extend([
            U6RatioG22,
            U6RatioG23,
            U6ModularEquation,
            U6Level3,
            J3Relation,
            CoveringT3,
            CoveringJ3,
            CoveringJ2,
            CoveringT4,
        ]);
        for d in [2, 3, 4, 6] {
            v.push(Table2 { d });
        }
        v.extend([
            Level5Y6,
            Level5XofY,
            Level5XJ,
            Level5J5,
            Level5Twist,
            Level5Dilate,
            Level5Square,
            ModularityG2Star,
            ModularityGk { k: 4 },
            ModularityGk { k: 6 },
        ]);
        v
    }

    /// Imaginary-part range used for default samples.
    pub fn default_im_range(&self) -> (f64, f64) {
        match self {
            EisensteinIdentity::Table2 { .. } => (1.3, 2.0),
            EisensteinIdentity::Fricke { .. } | EisensteinIdentity::CurlyFricke { .. } => (0.7, 1.0),
            EisensteinIdentity::Level5J5 | EisensteinIdentity::Level5Square => (0.5, 0.9),
            _ => (0.8, 1.4),
        }
    }
}

impl fmt::Display for EisensteinIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use EisensteinIdentity::*;
        match self {
            ThetaThree => write!(f, "theta3_g24"),
            ThetaFour => write!(f, "theta4_g22"),
            HalfShift => write!(f, "g22_half_shift"),
            CurlyLevel2 => write!(f, "curly_level2"),
            CurlyLevel3 => write!(f, "curly_level3"),
            Fricke { n, ell } => write!(f, "fricke_n{}_l{}", n, ell),
            CurlyFricke { level, ell } => write!(f, "curly_fricke_{}_l{}", level, ell),
            U6RatioG22 => write!(f, "u6_ratio_g22"),
            U6RatioG23 => write!(f, "u6_ratio_g23"),
            U6ModularEquation => write!(f, "u6_modular_equation"),
            U6Level3 => write!(f, "u6_level3"),
            J3Relation => write!(f, "j3_relation"),
            CoveringT3 => write!(f, "covering_t3"),
            CoveringJ3 => write!(f, "covering_j3"),
            CoveringJ2 => write!(f, "covering_j2"),
            CoveringT4 => write!(f, "covering_t4"),
            Table2 { d } => write!(f, "table2_d{}", d),
            Level5Y6 => write!(f, "level5_y6"),
            Level5XofY => write!(f, "level5_x_of_y"),
            Level5XJ => write!(f, "level5_xj"),
            Level5J5 => write!(f, "level5_j5"),
            Level5Twist => write!(f, "level5_twist"),
            Level5Dilate => write!(f, "level5_dilate"),
            Level5Square => write!(f, "level5_square"),
            ModularityG2Star => write!(f, "modularity_g2star"),
            ModularityGk { k } => write!(f, "modularity_g{}", k),
        }
    }
}

impl FromStr for EisensteinIdentity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EisensteinIdentity::catalog()
            .into_iter()
            .find(|i| i.to_string() == s)
            .ok_or_else(|| Error::UnsupportedFunction(format!("unknown identity {:?}", s)))
    }
}

/// Deterministic sample points with rational coordinates in thousandths.
pub fn sample_taus(count: usize, seed: u64, im: (f64, f64), prec: u32) -> Vec<Complex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let re = (rng.gen_range(-0.5..0.5f64) * 1000.0).round() as i64;
            let y = (rng.gen_range(im.0..im.1) * 1000.0).round() as i64;
            Complex::new(
                Float::with_val(prec, Rational::from((re, 1000))),
                Float::with_val(prec, Rational::from((y, 1000))),
            )
        })
        .collect()
}

struct Ev<'a> {
    ctx: &'a PrecisionContext,
    prec: u32,
}

impl Ev<'_> {
    fn r(&self, n: i64, d: i64) -> Complex {
        Complex::from_rational(self.prec, &Rational::from((n, d)))
    }

    fn mul(&self, t: &Complex, n: i64, d: i64) -> Complex {
        t.scale_rational(&Rational::from((n, d)))
    }

    fn poly(&self, coeffs: &[i64], x: &Complex) -> Complex {
        let mut acc = Complex::zero(self.prec);
        for &c in coeffs.iter().rev() {
            acc = &(&acc * x) + &Complex::from_integer(self.prec, &Integer::from(c));
        }
        acc
    }

    fn pi2(&self) -> Float {
        Float::with_val(self.prec, Float::with_val(self.prec, Constant::Pi).square_ref())
    }

    /// `(f | W_ell)(t) = ell (ell t)^{-2} f(-1/(ell t))` for weight two.
    fn w(&self, ell: u32, t: &Complex, f: impl Fn(&Complex) -> Result<Complex>) -> Result<Complex> {
        let lt = self.mul(t, ell as i64, 1);
        let img = -lt.recip();
        let v = f(&img)?;
        Ok((&v * &lt.square().recip()).scale_int(&Integer::from(ell)))
    }
}

fn dist(a: &Complex, b: &Complex) -> Float {
    a.dist(b)
}

fn max(a: Float, b: Float) -> Float {
    if a > b {
        a
    } else {
        b
    }
}

/// `3F2(1/2, 1/d, 1-1/d; 1, 1; t)` at a complex argument.
fn hd3(d: u32, t: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    pfq(&HypergeometricDatum::hd3(d, Argument::Complex(t.clone()))?, ctx)
}

fn residual_at(id: EisensteinIdentity, t: &Complex, ctx: &PrecisionContext) -> Result<Float> {
    use EisensteinIdentity::*;
    let e = Ev { ctx, prec: ctx.prec() };
    let c = e.ctx;
    let pi2 = e.pi2();
    let one = e.r(1, 1);
    let t2x = e.mul(t, 2, 1);
    Ok(match id {
        ThetaThree => {
            let lhs = theta(3, &t2x, c)?.powi(4).scale(&(pi2.clone() / 2u32));
            dist(&lhs, &g2n(4, t, c)?)
        }
        ThetaFour => {
            let lhs = theta(4, &t2x, c)?.powi(4).scale(&(pi2 / 2u32));
            let g24 = g2n(4, t, c)?;
            let g22 = g2n(2, t, c)?;
            let a = &e.mul(&g24, 2, 1) - &e.mul(&g22, 3, 1);
            let b = &e.mul(&g2n(2, &t2x, c)?, 4, 1) - &g22;
            max(dist(&lhs, &a), dist(&lhs, &b))
        }
        HalfShift => {
            let rhs = &g2n(4, t, c)? - &e.mul(&g2n(2, t, c)?, 2, 1);
            let p = g2n(2, &(t + &e.r(1, 2)), c)?;
            let m = g2n(2, &(t - &e.r(1, 2)), c)?;
            max(dist(&p, &rhs), dist(&m, &rhs))
        }
        CurlyLevel2 => {
            let a = curly_g(1, 2, t, c)?;
            let b = e.mul(&curly_g(1, 4, t, c)?, 2, 1);
            let g = &g2_star(t, c)? - &g2_star(&t2x, c)?;
            max(dist(&a, &b), dist(&a, &g))
        }
        CurlyLevel3 => {
            let a = curly_g(1, 3, t, c)?;
            let g = e.mul(&(&g2_star(t, c)? - &g2_star(&e.mul(t, 3, 1), c)?), 1, 2);
            dist(&a, &g)
        }
        Fricke { n, ell } => {
            let (n, l) = (n as i64, ell as i64);
            let arg = e.mul(t, l, n);
            let lhs1 = e.w(ell, t, |x| g2_star(&e.mul(x, n, 1), c))?;
            let rhs1 = e.mul(&g2_star(&arg, c)?, l, n * n);
            let lhs2 = e.w(ell, t, |x| g2n(n as u32, x, c))?;
            let rhs2 = e.mul(&g2n(n as u32, &arg, c)?, -l, n);
            max(dist(&lhs1, &rhs1), dist(&lhs2, &rhs2))
        }
        CurlyFricke { level, ell } => {
            let l = ell as i64;
            let lhs = e.w(ell, t, |x| curly_g(1, level, x, c))?;
            let lt = e.mul(t, l, 1);
            let (sub, k1, g1) = match level {
                2 => (2, (-l, 4), (3 * l, 4)),
                3 => (3, (-l, 9), (4 * l, 9)),
                _ => (2, (-l, 4), (3 * l, 8)),
            };
            let small = e.mul(t, l, sub);
            let cs = curly_g(1, level, &small, c)?;
            let a = &e.mul(&cs, k1.0, k1.1) + &e.mul(&g2_star(&lt, c)?, g1.0, g1.1);
            let b = &e.mul(&cs, -l, 1) + &e.mul(&g2_star(&small, c)?, g1.0, g1.1);
            max(dist(&lhs, &a), dist(&lhs, &b))
        }
        U6RatioG22 => {
            let u = u6(t, c)?;
            let lhs = &g2n(2, &e.mul(t, 3, 1), c)? / &g2n(2, t, c)?;
            let rhs = &e.poly(&[1, -2, -2], &u) / &e.poly(&[-3, -6, 6], &u);
            dist(&lhs, &rhs)
        }
        U6RatioG23 => {
            let u = u6(t, c)?;
            let lhs = &g2n(3, &t2x, c)? / &g2n(3, t, c)?;
            dist(&lhs, &u.square())
        }
        U6ModularEquation => {
            let x = u6(t, c)?;
            let y = u6(&e.mul(t, 3, 1), c)?;
            modular_equation(&x, &y).abs()
        }
        U6Level3 => {
            let u = u6(t, c)?;
            let h = eta_quotient(t, &[(3, 12), (1, -12)], c)?;
            let rhs = -(&e.poly(&[-1, -3, 0, 4], &u) / &e.mul(&e.poly(&[1, -3, 0, 4], &u), 27, 1));
            dist(&h, &rhs)
        }
        J3Relation => {
            let h = eta_quotient(t, &[(3, 12), (1, -12)], c)?;
            let rhs = &e.poly(&[1, 36, 270, 756, 729], &h) / &h.powi(3);
            dist(&j_invariant(&e.mul(t, 3, 1), c)?, &rhs)
        }
        CoveringT3 | CoveringJ3 => {
            let h = eta_quotient(t, &[(3, 12), (1, -12)], c)?;
            let h27 = e.mul(&h, 27, 1);
            let z = &h27 / &(&one + &h27);
            let omz = &one - &z;
            if id == CoveringT3 {
                let rhs = e.mul(&(&z * &omz), 4, 1);
                dist(&hauptmodul(3, t, c)?, &rhs)
            } else {
                let rhs = &e.mul(&(&z * &omz.powi(3)), 64, 1) / &(&one + &e.mul(&z, 8, 1)).powi(3);
                let lhs = &e.r(1728, 1) / &j_invariant(t, c)?;
                dist(&lhs, &rhs)
            }
        }
        CoveringJ2 => {
            let s = hauptmodul(2, t, c)?;
            let rhs = &e.mul(&s, -27, 1) / &(&one - &e.mul(&s, 4, 1)).powi(3);
            let lhs = &e.r(1728, 1) / &j_invariant(t, c)?;
            dist(&lhs, &rhs)
        }
        CoveringT4 => {
            let th = |k| theta(k, t, c);
            let s = -(&th(2)?.powi(8) / &(&th(3)?.powi(4) * &th(4)?.powi(4)).scale_int(&Integer::from(4)));
            let rhs = &e.mul(&s, -4, 1) / &(&s - &one).square();
            dist(&hauptmodul(4, t, c)?, &rhs)
        }
        Table2 { d } => {
            let td = hauptmodul(d, t, c)?;
            if td.abs() >= 0.95 {
                return Err(Error::InadmissibleSample(format!(
                    "|t_{}| = {} is outside the disc of convergence",
                    d,
                    td.abs().to_f64()
                )));
            }
            let lhs = hd3(d, &td, c)?;
            let rhs = match d {
                2 => theta(4, &t2x, c)?.powi(4),
                3 => g2n(3, t, c)?.div_real(&pi2) * &e.r(3, 1),
                4 => g2n(2, t, c)?.div_real(&pi2) * &e.r(6, 1),
                _ => super::eval::ek(4, t, c)?.sqrt(),
            };
            dist(&lhs, &rhs)
        }
        Level5Y6 => {
            let y = t25(t, c)?;
            let rhs = &t5(t, c)? * &t5(&e.mul(t, 5, 1), c)?;
            dist(&y.powi(6), &rhs)
        }
        Level5XofY => {
            let y = t25(t, c)?;
            dist(&t5(t, c)?, &e.poly(&[0, 1, 5, 15, 25, 25], &y))
        }
        Level5XJ => {
            let x = t5(t, c)?;
            let lhs = &x * &j_invariant(t, c)?;
            let rhs = e.poly(&[1, 750, 196875, 20312500, 615234375, 7324218750, 30517578125], &x);
            dist(&lhs, &rhs)
        }
        Level5J5 => {
            let y = t25(t, c)?;
            let num = &(&e.poly(&[1, 5, 5], &y).powi(3) * &e.poly(&[1, 5, 20, 25, 25], &y).powi(3))
                * &e.poly(&[1, 0, 5, 0, 25], &y).powi(3);
            let den = &y.powi(5) * &e.poly(&[1, 5, 15, 25, 25], &y).powi(5);
            let lhs = j_invariant(&e.mul(t, 5, 1), c)?;
            dist(&lhs, &(&num / &den)) / max(lhs.abs(), Float::with_val(e.prec, 1))
        }
        Level5Twist => {
            let y = t25(t, c)?;
            let f = &(&e.mul(&y, 6, 1) * &e.poly(&[-1, 0, 5], &y)) / &e.poly(&[1, 10, 45, 100, 125], &y);
            dist(&g2_twist(5, t, c)?, &(&f * &g2n(5, t, c)?))
        }
        Level5Dilate => {
            let y = t25(t, c)?;
            let f = &e.poly(&[1, 4, 9, 10, 5], &y) / &e.poly(&[1, 10, 45, 100, 125], &y);
            dist(&g2n(5, &e.mul(t, 5, 1), c)?, &(&f * &g2n(5, t, c)?))
        }
        Level5Square => {
            let x = t5(t, c)?;
            let f = e.mul(&(&e.poly(&[1, 22, 125], &x) / &e.poly(&[1, 10, 5], &x)), 40, 1);
            dist(&g2n(5, t, c)?.square(), &(&f * &gk(4, &e.mul(t, 5, 1), c)?))
        }
        ModularityG2Star => {
            let inv = -t.recip();
            dist(&g2_star(&inv, c)?, &(&t.square() * &g2_star(t, c)?))
        }
        ModularityGk { k } => {
            let inv = -t.recip();
            dist(&gk(k, &inv, c)?, &(&t.powi(k as i64) * &gk(k, t, c)?))
        }
    })
}

/// `16x^3y^3 - 12(x^3y + xy^3) + 12x^2y^2 - 5(x^3 - y^3) - 3(x^2y - xy^2)
/// - 6(x^2 + y^2) + 6xy + 2`.
pub fn modular_equation(x: &Complex, y: &Complex) -> Complex {
    let p = x.prec();
    let n = |v: i64| Complex::from_integer(p, &Integer::from(v));
    let (x2, y2) = (x.square(), y.square());
    let (x3, y3) = (&x2 * x, &y2 * y);
    let mut s = &(&x3 * &y3) * &n(16);
    s = &s - &(&(&(&x3 * y) + &(x * &y3)) * &n(12));
    s = &s + &(&(&x2 * &y2) * &n(12));
    s = &s - &(&(&x3 - &y3) * &n(5));
    s = &s - &(&(&(&x2 * y) - &(x * &y2)) * &n(3));
    s = &s - &(&(&x2 + &y2) * &n(6));
    s = &s + &(&(x * y) * &n(6));
    &s + &n(2)
}

/// Maximum deviation of the identity over the samples.
pub fn verify_eisenstein_identity(
    id: EisensteinIdentity,
    samples: &[Complex],
    ctx: &PrecisionContext,
) -> Result<Float> {
    let mut worst = Float::new(ctx.prec());
    for t in samples {
        if !(t.im >= 0.2) {
            return Err(Error::InadmissibleSample(format!(
                "Im tau = {} below 0.2",
                t.im.to_f64()
            )));
        }
        let r = residual_at(id, &Complex::new(Float::with_val(ctx.prec(), &t.re), Float::with_val(ctx.prec(), &t.im)), ctx)?;
        worst = max(worst, r);
    }
    Ok(worst)
}

/// Residual over `count` default samples drawn from `seed`.
pub fn verify_with_samples(
    id: EisensteinIdentity,
    count: usize,
    seed: u64,
    ctx: &PrecisionContext,
) -> Result<Float> {
    let samples = sample_taus(count, seed, id.default_im_range(), ctx.prec());
    verify_eisenstein_identity(id, &samples, ctx)
}

/// Exact check of `y^6 = x(t) x(5t)` on q-expansions to the given order.
pub fn level5_series_identity(order: usize) -> Result<bool> {
    let x = build_qseries_exact(&SeriesFunction::T5, order)?;
    let y = build_qseries_exact(&SeriesFunction::T25, order)?;
    let lhs = y.pow(6)?;
    let rhs = x.mul(&x.dilate(5).truncate(order))?;
    Ok(lhs.coeffs == rhs.coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in EisensteinIdentity::catalog() {
            assert_eq!(id.to_string().parse::<EisensteinIdentity>().unwrap(), id);
        }
    }

    #[test]
    fn theta_three_at_fixed_point() {
        let ctx = PrecisionContext::default();
        let t = Complex::from_f64(ctx.prec(), 0.3, 1.1);
        let r = verify_eisenstein_identity(EisensteinIdentity::ThetaThree, &[t], &ctx).unwrap();
        assert!(r < 1e-30);
    }

    #[test]
    fn level5_exact() {
        assert!(level5_series_identity(60).unwrap());
    }

    #[test]
    fn low_samples_rejected() {
        let ctx = PrecisionContext::default();
        let t = Complex::from_f64(ctx.prec(), 0.0, 0.1);
        assert!(matches!(
            verify_eisenstein_identity(EisensteinIdentity::CurlyLevel3, &[t], &ctx),
            Err(Error::InadmissibleSample(_))
        ));
    }
}
