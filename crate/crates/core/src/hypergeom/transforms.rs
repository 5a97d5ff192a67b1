//! Catalog of classical transformations of `2F1` and `3F2`.
//!
//! Each identity is a list of expressions `prefactor * F^power` that must
//! agree; the residual is the largest pairwise deviation.

use super::series::{pfq, pfq_extended, Argument, HypergeometricDatum};
use crate::error::{Error, Result};
use crate::numerics::{Complex, PrecisionContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Float, Rational};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformId {
    PfaffA,
    PfaffB,
    KummerQuad1,
    KummerQuad2,
    BaileyCubic,
    GoursatQuartic,
    Clausen,
    Prop21ChainA,
    Prop21ChainB,
    Prop21Quartic,
}

impl TransformId {
    pub const ALL: [TransformId; 10] = [
        TransformId::PfaffA,
        TransformId::PfaffB,
        TransformId::KummerQuad1,
        TransformId::KummerQuad2,
        TransformId::BaileyCubic,
        TransformId::GoursatQuartic,
        TransformId::Clausen,
        TransformId::Prop21ChainA,
        TransformId::Prop21ChainB,
        TransformId::Prop21Quartic,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TransformId::PfaffA => "pfaff_a",
            TransformId::PfaffB => "pfaff_b",
            TransformId::KummerQuad1 => "kummer_quad_1",
            TransformId::KummerQuad2 => "kummer_quad_2",
            TransformId::BaileyCubic => "bailey_cubic",
            TransformId::GoursatQuartic => "goursat_quartic",
            TransformId::Clausen => "clausen",
            TransformId::Prop21ChainA => "prop21_chain_a",
            TransformId::Prop21ChainB => "prop21_chain_b",
            TransformId::Prop21Quartic => "prop21_quartic",
        }
    }

    /// Number of rational parameters the identity takes.
    pub fn arity(&self) -> usize {
        match self {
            TransformId::PfaffA | TransformId::PfaffB => 3,
            TransformId::KummerQuad1 | TransformId::KummerQuad2 => 2,
            TransformId::BaileyCubic | TransformId::GoursatQuartic | TransformId::Clausen => 1,
            _ => 0,
        }
    }

    pub fn argument_map(&self) -> &'static str {
        match self {
            TransformId::PfaffA | TransformId::PfaffB => "z -> z/(z-1)",
            TransformId::KummerQuad1 => "z -> -4z/(1-z)^2",
            TransformId::KummerQuad2 => "z -> 4z/(1+z)^2",
            TransformId::BaileyCubic => "z -> -27z/(1-4z)^3",
            TransformId::GoursatQuartic => "z -> 64z(1-z)^3/(1+8z)^3",
            TransformId::Clausen => "z -> 4z(1-z)",
            TransformId::Prop21ChainA => "z -> -27z/(1-4z)^3",
            TransformId::Prop21ChainB => "z -> -4z/(z-1)^2",
            TransformId::Prop21Quartic => "z -> 64z(1-z)^3/(1+8z)^3 and 4z(1-z)",
        }
    }
}

impl fmt::Display for TransformId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TransformId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TransformId::ALL
            .iter()
            .find(|t| t.name() == s)
            .copied()
            .ok_or_else(|| Error::Unknown(format!("transformation {:?}", s)))
    }
}

/// An identity together with its parameter values.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformIdentity {
    pub id: TransformId,
    pub parameters: Vec<Rational>,
}

impl TransformIdentity {
    pub fn new(id: TransformId, parameters: Vec<Rational>) -> Result<Self> {
        if parameters.len() != id.arity() {
            return Err(Error::DomainError(format!(
                "{} takes {} parameters, got {}",
                id,
                id.arity(),
                parameters.len()
            )));
        }
        Ok(TransformIdentity { id, parameters })
    }

    pub fn argument_map(&self) -> &'static str {
        self.id.argument_map()
    }
}

/// One side of an identity: `prefactor * F^power`.
struct Side {
    prefactor: Complex,
    upper: Vec<Rational>,
    lower: Vec<Rational>,
    argument: Complex,
    power: i64,
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn one() -> Rational {
    Rational::from(1)
}

fn pw(z: &Complex, e: &Rational) -> Complex {
    z.pow_rational(e)
}

fn f21_side(pre: Complex, a: Rational, b: Rational, c: Rational, arg: Complex, power: i64) -> Side {
    Side { prefactor: pre, upper: vec![a, b], lower: vec![one(), c], argument: arg, power }
}

fn f32_side(pre: Complex, a: Rational, b: Rational, arg: Complex) -> Side {
    Side { prefactor: pre, upper: vec![q(1, 2), a, b], lower: vec![one(), one(), one()], argument: arg, power: 1 }
}

fn sides(t: &TransformIdentity, z: &Complex) -> Vec<Side> {
    let prec = z.prec();
    let p = &t.parameters;
    let one_c = Complex::one(prec);
    let oz = &one_c - z;
    let four_z = z.scale(&Float::with_val(prec, 4));
    let one_m4z = &one_c - &four_z;
    let one_p8z = &one_c + &z.scale(&Float::with_val(prec, 8));
    let clausen_arg = &four_z * &oz;
    let cubic_arg = (z.scale(&Float::with_val(prec, -27))) / one_m4z.powi(3);
    let quartic_arg = (z.scale(&Float::with_val(prec, 64)) * oz.powi(3)) / one_p8z.powi(3);
    match t.id {
        TransformId::PfaffA | TransformId::PfaffB => {
            let (a, b, c) = (p[0].clone(), p[1].clone(), p[2].clone());
            let w = z / &(z - &one_c);
            let lhs = f21_side(one_c.clone(), a.clone(), b.clone(), c.clone(), z.clone(), 1);
            let rhs = if t.id == TransformId::PfaffA {
                f21_side(pw(&oz, &-a.clone()), a, c.clone() - b, c, w, 1)
            } else {
                f21_side(pw(&oz, &-b.clone()), c.clone() - a, b, c, w, 1)
            };
            vec![lhs, rhs]
        }
        TransformId::KummerQuad1 => {
            let (a, b) = (p[0].clone(), p[1].clone());
            let c = a.clone() - &b + 1u32;
            let w = four_z.scale(&Float::with_val(prec, -1)) / oz.square();
            vec![
                f21_side(one_c.clone(), a.clone(), b.clone(), c.clone(), z.clone(), 1),
                f21_side(pw(&oz, &-a.clone()), a.clone() / 2u32, (a + 1u32) / 2u32 - b, c, w, 1),
            ]
        }
        TransformId::KummerQuad2 => {
            let (a, b) = (p[0].clone(), p[1].clone());
            let c = a.clone() - &b + 1u32;
            let opz = &one_c + z;
            let w = &four_z / &opz.square();
            vec![
                f21_side(one_c.clone(), a.clone(), b, c.clone(), z.clone(), 1),
                f21_side(pw(&opz, &-a.clone()), a.clone() / 2u32, (a + 1u32) / 2u32, c, w, 1),
            ]
        }
        TransformId::BaileyCubic => {
            let a = p[0].clone();
            let c = (a.clone() * 4u32 + 5u32) / 6u32;
            vec![
                f21_side(one_c.clone(), a.clone(), (one() - &a) / 3u32, c.clone(), z.clone(), 1),
                f21_side(pw(&one_m4z, &-a.clone()), a.clone() / 3u32, (a + 1u32) / 3u32, c, cubic_arg, 1),
            ]
        }
        TransformId::GoursatQuartic => {
            let a = p[0].clone();
            let c = (a.clone() * 4u32 + 5u32) / 6u32;
            vec![
                f21_side(
                    one_c.clone(),
                    a.clone() * 4u32 / 3u32,
                    (a.clone() * 4u32 + 1u32) / 3u32,
                    c.clone(),
                    z.clone(),
                    1,
                ),
                f21_side(pw(&one_p8z, &-a.clone()), a.clone() / 3u32, (a + 1u32) / 3u32, c, quartic_arg, 1),
            ]
        }
        TransformId::Clausen => {
            let a = p[0].clone();
            vec![
                f21_side(one_c.clone(), one() - &a, a.clone(), one(), z.clone(), 2),
                f21_side(one_c.clone(), (one() - &a) / 2u32, a.clone() / 2u32, one(), clausen_arg.clone(), 2),
                f32_side(one_c.clone(), one() - &a, a, clausen_arg),
            ]
        }
        TransformId::Prop21ChainA | TransformId::Prop21ChainB => {
            let s1 = f32_side(one_c.clone(), q(1, 6), q(5, 6), cubic_arg);
            let s2 = f32_side(one_m4z.sqrt(), q(1, 2), q(1, 2), z.clone());
            let w = four_z.scale(&Float::with_val(prec, -1)) / (z - &one_c).square();
            let s3 = f32_side((&one_m4z / &oz).sqrt(), q(1, 4), q(3, 4), w);
            if t.id == TransformId::Prop21ChainA {
                vec![s1, s2]
            } else {
                vec![s2, s3]
            }
        }
        TransformId::Prop21Quartic => vec![
            f32_side(one_c.clone(), q(1, 6), q(5, 6), quartic_arg),
            f32_side(one_p8z.sqrt(), q(1, 3), q(2, 3), clausen_arg),
        ],
    }
}

const PATH_STEPS: u32 = 256;
const PATH_MARGIN: f64 = 1e-3;

fn admissible(t: &TransformIdentity, z: &Complex, ss: &[Side]) -> Result<()> {
    for s in ss {
        if s.argument.abs() >= 1 {
            return Err(Error::InadmissibleArgument(format!(
                "{}: mapped argument has modulus {}",
                t.id,
                s.argument.abs().to_f64()
            )));
        }
    }
    // the identity holds on the component of the admissible set containing 0;
    // the maps touch the unit circle at their critical points, hence the margin
    for k in 1..PATH_STEPS {
        let r = Rational::from((k, PATH_STEPS));
        let w = Complex::new(Float::with_val(64, &z.re * &r), Float::with_val(64, &z.im * &r));
        if sides(t, &w).iter().any(|s| s.argument.abs() >= 1.0 - PATH_MARGIN) {
            return Err(Error::InadmissibleArgument(format!(
                "{}: mapped argument reaches the unit circle between 0 and z",
                t.id
            )));
        }
    }
    let needs_half_plane = matches!(
        t.id,
        TransformId::Clausen | TransformId::Prop21Quartic | TransformId::KummerQuad1
    );
    if needs_half_plane && z.re >= 0.5 {
        return Err(Error::InadmissibleArgument(format!("{}: requires Re z < 1/2", t.id)));
    }
    Ok(())
}

fn evaluate(ss: &[Side], ctx: &PrecisionContext, extended: bool) -> Result<Vec<Complex>> {
    ss.iter()
        .map(|s| {
            let d = HypergeometricDatum::new(
                s.upper.clone(),
                s.lower.clone(),
                Argument::Complex(s.argument.clone()),
            )?;
            let f = if extended { pfq_extended(&d, ctx)? } else { pfq(&d, ctx)? };
            Ok(&s.prefactor * &f.powi(s.power))
        })
        .collect()
}

fn max_pairwise(vals: &[Complex], prec: u32) -> Float {
    let mut worst = Float::new(prec);
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            let d = vals[i].dist(&vals[j]);
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Largest pairwise deviation among the sides of the identity at `z`.
pub fn verify_transform(t: &TransformIdentity, z: &Complex, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.prec();
    let z = Complex::new(Float::with_val(prec, &z.re), Float::with_val(prec, &z.im));
    let ss = sides(t, &z);
    admissible(t, &z, &ss)?;
    let vals = evaluate(&ss, ctx, false)?;
    Ok(max_pairwise(&vals, prec))
}

/// As [`verify_transform`] but for real `z` where a mapped `3F2` argument lies on
/// the negative real axis beyond `-1`; that side is evaluated by continuation.
pub fn verify_transform_extended(t: &TransformIdentity, z: &Complex, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.prec();
    let z = Complex::new(Float::with_val(prec, &z.re), Float::with_val(prec, &z.im));
    let ss = sides(t, &z);
    for s in &ss {
        let a = s.argument.abs();
        let on_axis = s.argument.im.is_zero() && s.argument.re < 0;
        if a >= 1 && !(on_axis && s.upper.len() == 3) {
            return Err(Error::InadmissibleArgument(format!("{}: argument of modulus {}", t.id, a.to_f64())));
        }
    }
    let vals = evaluate(&ss, ctx, true)?;
    Ok(max_pairwise(&vals, prec))
}

/// Deterministic admissible sample pairs `(parameters, z)` for an identity.
pub fn sample_points(id: TransformId, count: usize, seed: u64) -> Vec<(TransformIdentity, Complex)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (id as u64).wrapping_mul(0x9E37_79B9));
    let prec = 64;
    let mut out = vec![];
    let mut guard = 0;
    while out.len() < count && guard < 100_000 {
        guard += 1;
        let params: Vec<Rational> = (0..id.arity())
            .map(|i| {
                let den = rng.gen_range(2..=12i64);
                let lo = if (id == TransformId::PfaffA || id == TransformId::PfaffB) && i == 2 { den / 2 + 1 } else { 1 };
                let num = rng.gen_range(lo..=2 * den - 1);
                Rational::from((num, den))
            })
            .collect();
        let params = if id == TransformId::Clausen || id == TransformId::BaileyCubic || id == TransformId::GoursatQuartic {
            params.into_iter().map(|r| if r >= 1 { r - 1u32 } else { r }).collect()
        } else {
            params
        };
        if params.iter().any(|r| *r == 0) {
            continue;
        }
        let zf = rng.gen_range(-0.45f64..0.45f64);
        let zr = Rational::from_f64((zf * 1000.0).round() / 1000.0).unwrap();
        let z = Complex::from_rational(prec, &zr);
        let t = match TransformIdentity::new(id, params) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let ss = sides(&t, &z);
        if admissible(&t, &z, &ss).is_err() {
            continue;
        }
        if ss.iter().any(|s| s.argument.abs() > 0.85) {
            continue;
        }
        if ss.iter().any(|s| s.lower.iter().any(|b| *b.denom() == 1 && *b.numer() <= 0)) {
            continue;
        }
        out.push((t, Complex::from_rational(512, &zr)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pfaff_example() {
        let ctx = PrecisionContext::default();
        let t = TransformIdentity::new(TransformId::PfaffA, vec![q(1, 3), q(1, 4), one()]).unwrap();
        let r = verify_transform(&t, &Complex::from_rational(256, &q(3, 10)), &ctx).unwrap();
        assert!(r < 1e-30);
    }

    #[test]
    fn clausen_example() {
        let ctx = PrecisionContext::default();
        let t = TransformIdentity::new(TransformId::Clausen, vec![q(1, 3)]).unwrap();
        let r = verify_transform(&t, &Complex::from_rational(256, &q(1, 5)), &ctx).unwrap();
        assert!(r < 1e-30);
    }

    #[test]
    fn zero_argument_residual_vanishes() {
        let ctx = PrecisionContext::default();
        for id in TransformId::ALL {
            let params = vec![q(1, 5); id.arity()];
            let t = TransformIdentity::new(id, params).unwrap();
            let r = verify_transform(&t, &Complex::zero(256), &ctx).unwrap();
            assert!(r.is_zero(), "{}", id);
        }
    }

    #[test]
    fn inadmissible_rejected() {
        let ctx = PrecisionContext::default();
        let t = TransformIdentity::new(TransformId::Prop21ChainA, vec![]).unwrap();
        let r = verify_transform(&t, &Complex::from_rational(256, &q(1, 10)), &ctx);
        assert!(matches!(r, Err(Error::InadmissibleArgument(_))));
        let e = verify_transform_extended(&t, &Complex::from_rational(256, &q(1, 10)), &ctx).unwrap();
        assert!(e < 1e-30);
    }

    #[test]
    fn far_component_rejected() {
        // -27z/(1-4z)^3 passes through 1 at z = -1/8 and returns inside the disc
        let ctx = PrecisionContext::default();
        let t = TransformIdentity::new(TransformId::BaileyCubic, vec![q(1, 4)]).unwrap();
        let r = verify_transform(&t, &Complex::from_rational(256, &q(-271, 1000)), &ctx);
        assert!(matches!(r, Err(Error::InadmissibleArgument(_))));
        let t = TransformIdentity::new(TransformId::GoursatQuartic, vec![q(3, 5)]).unwrap();
        let r = verify_transform(&t, &Complex::from_rational(256, &q(94, 1000)), &ctx);
        assert!(matches!(r, Err(Error::InadmissibleArgument(_))));
        let r = verify_transform(&t, &Complex::from_rational(256, &q(3, 100)), &ctx).unwrap();
        assert!(r < 1e-30);
    }

    #[test]
    fn names_round_trip() {
        for id in TransformId::ALL {
            assert_eq!(id.name().parse::<TransformId>().unwrap(), id);
        }
        assert!("nope".parse::<TransformId>().is_err());
    }
}
