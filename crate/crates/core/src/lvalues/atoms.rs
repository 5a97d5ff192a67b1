//! Eisenstein-atom decompositions of L-values and the route that sums them.

use crate::arith::CMFormId;
use crate::error::{Error, Result};
use crate::fixtures::{self, content_lines, err};
use crate::modforms::{curly_g, ek, g2_star, g2_twist, g2n, gk, theta};
use crate::numerics::{algexpr, CMPoint, Complex, PrecisionContext, QuadraticSurd};
use rug::float::Constant;
use rug::Float;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

const MAX_LINES: usize = 4096;
const MAX_TOKEN: usize = 64;
const MAX_LEVEL: u32 = 1000;
const MAX_THETA_POWER: u32 = 24;

/// The modular objects appearing in the decompositions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EisensteinKind {
    G2Star,
    /// `G_{2,N}(tau) = N G_2^*(N tau) - G_2^*(tau)`.
    G2N(u32),
    CurlyG(u32, u32),
    /// `(G_2 (x) chi_l)(tau)`.
    G2Twist(i64),
    /// `pi^2 theta_4(tau)^m`.
    Theta4Power(u32),
    /// `pi^2 E_4(tau)^(1/2)`.
    E4SquareRoot,
    G4,
    G6,
}

impl EisensteinKind {
    pub fn weight(&self) -> u32 {
        match self {
            EisensteinKind::G4 => 4,
            EisensteinKind::G6 => 6,
            _ => 2,
        }
    }
}

impl fmt::Display for EisensteinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EisensteinKind::G2Star => write!(f, "G2star"),
            EisensteinKind::G2N(n) => write!(f, "G2N:{}", n),
            EisensteinKind::CurlyG(a, n) => write!(f, "CurlyG:{}:{}", a, n),
            EisensteinKind::G2Twist(l) => write!(f, "G2Twist:{}", l),
            EisensteinKind::Theta4Power(m) => write!(f, "Theta4Power:{}", m),
            EisensteinKind::E4SquareRoot => write!(f, "E4SquareRoot"),
            EisensteinKind::G4 => write!(f, "G4"),
            EisensteinKind::G6 => write!(f, "G6"),
        }
    }
}

fn bounded(s: &str, max: u32) -> Result<u32> {
    let v: u32 = s.parse().map_err(|_| Error::Parse(format!("kind parameter {:?}", s)))?;
    if v == 0 || v > max {
        return Err(Error::Parse(format!("kind parameter {} out of range", v)));
    }
    Ok(v)
}

impl FromStr for EisensteinKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let kind = match parts.as_slice() {
            ["G2star"] => EisensteinKind::G2Star,
            ["G2N", n] => EisensteinKind::G2N(bounded(n, MAX_LEVEL)?),
            ["CurlyG", a, n] => {
                let (a, n) = (bounded(a, MAX_LEVEL)?, bounded(n, MAX_LEVEL)?);
                if a > n {
                    return Err(Error::Parse(format!("CurlyG residue {} exceeds modulus {}", a, n)));
                }
                EisensteinKind::CurlyG(a, n)
            }
            ["G2Twist", l] => {
                let l: i64 = l.parse().map_err(|_| Error::Parse(format!("twist {:?}", l)))?;
                if l == 0 || l.unsigned_abs() > MAX_LEVEL as u64 {
                    return Err(Error::Parse(format!("twist {} out of range", l)));
                }
                EisensteinKind::G2Twist(l)
            }
            ["Theta4Power", m] => EisensteinKind::Theta4Power(bounded(m, MAX_THETA_POWER)?),
            ["E4SquareRoot"] => EisensteinKind::E4SquareRoot,
            ["G4"] => EisensteinKind::G4,
            ["G6"] => EisensteinKind::G6,
            _ => return Err(Error::Parse(format!("unknown Eisenstein kind {:?}", s))),
        };
        Ok(kind)
    }
}

/// `coefficient * kind(argument)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EisensteinAtom {
    #[serde(serialize_with = "display")]
    pub coefficient: QuadraticSurd,
    pub kind: EisensteinKind,
    #[serde(serialize_with = "display_point")]
    pub argument: CMPoint,
}

fn display<S: serde::Serializer>(v: &QuadraticSurd, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn display_point<S: serde::Serializer>(v: &CMPoint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_surd().to_string())
}

/// Every atom listed for one form at one evaluation point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    pub label: String,
    pub s: u32,
    pub atoms: Vec<EisensteinAtom>,
}

fn parse_coefficient(s: &str) -> Result<QuadraticSurd> {
    if s.len() > MAX_TOKEN {
        return Err(Error::Parse("coefficient too long".into()));
    }
    let v = algexpr::eval_exact(&algexpr::parse(s)?)?;
    if v.is_zero() {
        return Err(Error::Parse(format!("zero coefficient {:?}", s)));
    }
    Ok(v)
}

fn parse_point(s: &str) -> Result<CMPoint> {
    if s.len() > MAX_TOKEN {
        return Err(Error::Parse("CM point too long".into()));
    }
    CMPoint::parse(s)
}

/// Parses `<label> <s> <coefficient> <kind> <tau>` lines, grouping atoms
/// by `(label, s)` in order of first appearance.
pub fn parse_eisenstein(text: &str) -> Result<Vec<Decomposition>> {
    let name = fixtures::EISENSTEIN;
    let mut out: Vec<Decomposition> = vec![];
    for (count, (ln, line)) in content_lines(text).enumerate() {
        if count >= MAX_LINES {
            return Err(err(name, ln, "too many lines"));
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 5 {
            return Err(err(name, ln, "expected `<label> <s> <coefficient> <kind> <tau>`"));
        }
        if toks[0].len() > MAX_TOKEN {
            return Err(err(name, ln, "label too long"));
        }
        let s: u32 = toks[1].parse().map_err(|_| err(name, ln, format!("s {:?}", toks[1])))?;
        let kind: EisensteinKind = toks[3].parse().map_err(|e| err(name, ln, e))?;
        if s != kind.weight() {
            return Err(err(name, ln, format!("{} has weight {}, not {}", kind, kind.weight(), s)));
        }
        let atom = EisensteinAtom {
            coefficient: parse_coefficient(toks[2]).map_err(|e| err(name, ln, e))?,
            kind,
            argument: parse_point(toks[4]).map_err(|e| err(name, ln, e))?,
        };
        match out.iter_mut().find(|d| d.label == toks[0] && d.s == s) {
            Some(d) => d.atoms.push(atom),
            None => out.push(Decomposition { label: toks[0].to_string(), s, atoms: vec![atom] }),
        }
    }
    Ok(out)
}

pub fn load_decompositions() -> Result<Vec<Decomposition>> {
    parse_eisenstein(&fixtures::load(fixtures::EISENSTEIN)?)
}

/// The decomposition of `L(form, s)`, if the fixture has one.
pub fn decomposition(label: &str, s: u32) -> Result<Decomposition> {
    load_decompositions()?
        .into_iter()
        .find(|d| d.label == label && d.s == s)
        .ok_or_else(|| Error::NoDecomposition(format!("{} at s = {}", label, s)))
}

fn pi_squared(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi).square()
}

/// `kind(tau)`.
pub fn evaluate_kind(kind: EisensteinKind, tau: &CMPoint, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.prec();
    match kind {
        EisensteinKind::G2Star => g2_star(tau, ctx),
        EisensteinKind::G2N(n) => g2n(n, tau, ctx),
        EisensteinKind::CurlyG(a, n) => curly_g(a, n, tau, ctx),
        EisensteinKind::G2Twist(l) => g2_twist(l, tau, ctx),
        EisensteinKind::Theta4Power(m) => Ok(theta(4, tau, ctx)?.powi(m as i64).scale(&pi_squared(prec))),
        EisensteinKind::E4SquareRoot => Ok(ek(4, tau, ctx)?.sqrt().scale(&pi_squared(prec))),
        EisensteinKind::G4 => gk(4, tau, ctx),
        EisensteinKind::G6 => gk(6, tau, ctx),
    }
}

impl EisensteinAtom {
    pub fn value(&self, ctx: &PrecisionContext) -> Result<Complex> {
        let v = evaluate_kind(self.kind, &self.argument, ctx)?;
        Ok(&self.coefficient.to_complex(ctx.prec()) * &v)
    }
}

impl Decomposition {
    pub fn value(&self, ctx: &PrecisionContext) -> Result<Complex> {
        let mut sum = Complex::zero(ctx.prec());
        for a in &self.atoms {
            sum = sum + a.value(ctx)?;
        }
        Ok(sum)
    }
}

/// `L(form, s)` as the sum of its Eisenstein atoms.
pub fn lvalue_eisenstein(form: &CMFormId, s: u32, ctx: &PrecisionContext) -> Result<Complex> {
    ctx.validate()?;
    decomposition(&form.label, s)?.value(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_round_trip() {
        for s in ["G2star", "G2N:5", "CurlyG:1:4", "G2Twist:-8", "Theta4Power:4", "E4SquareRoot", "G4", "G6"] {
            assert_eq!(s.parse::<EisensteinKind>().unwrap().to_string(), s);
        }
        for s in ["G2N:0", "G2N", "CurlyG:5:4", "Theta4Power:99", "G8", "G2Twist:0"] {
            assert!(s.parse::<EisensteinKind>().is_err(), "{}", s);
        }
    }

    #[test]
    fn malformed_lines_are_rejected() {
        for b in [
            "f 2 1 G2star",
            "f 2 1 G4 i",
            "f 2 0 G2star i",
            "f 2 pi G2star i",
            "f 2 1 G2star -i",
            "f x 1 G2star i",
        ] {
            assert!(parse_eisenstein(b).is_err(), "{}", b);
        }
    }

    #[test]
    fn atoms_group_by_form_and_point() {
        let d = parse_eisenstein("a 2 1 G2star i\nb 2 1 G2star i\na 2 -1/3 G2N:3 sqrt(-3)\n").unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].atoms.len(), 2);
    }
}
