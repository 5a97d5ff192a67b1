//! Named modular functions and forms, as accepted on the command line.

use super::eval::{curly_g, eval_qseries, g2_star, g2_twist, g2n, gk, j_invariant, Tau};
use super::series::SeriesFunction;
use crate::error::{Error, Result};
use crate::fixtures::{self, content_lines, err};
use crate::numerics::algexpr::{self, Expr};
use crate::numerics::{CMPoint, Complex, PrecisionContext};
use std::fmt;
use std::str::FromStr;

/// A function that can be evaluated at a point of the upper half-plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedFunction {
    Series(SeriesFunction),
    G2Star,
    /// `G_k`, even `k >= 4`.
    Gk(u32),
    /// `G_{2,N}`.
    G2N(u32),
    /// The congruence lattice sum of residue `a` modulo `N`.
    CurlyG(u32, u32),
    /// `G_2 (x) chi_l`.
    G2Twist(i64),
    J,
}

impl NamedFunction {
    pub fn eval(&self, tau: &impl Tau, ctx: &PrecisionContext) -> Result<Complex> {
        match self {
            NamedFunction::Series(f) => eval_qseries(f, tau, ctx),
            NamedFunction::G2Star => g2_star(tau, ctx),
            NamedFunction::Gk(k) => gk(*k, tau, ctx),
            NamedFunction::G2N(n) => g2n(*n, tau, ctx),
            NamedFunction::CurlyG(a, n) => curly_g(*a, *n, tau, ctx),
            NamedFunction::G2Twist(l) => g2_twist(*l, tau, ctx),
            NamedFunction::J => j_invariant(tau, ctx),
        }
    }
}

impl fmt::Display for NamedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedFunction::Series(s) => write!(f, "{}", s),
            NamedFunction::G2Star => write!(f, "g2star"),
            NamedFunction::Gk(k) => write!(f, "g{}", k),
            NamedFunction::G2N(n) => write!(f, "g2n_{}", n),
            NamedFunction::CurlyG(a, n) => write!(f, "curly_{}_{}", a, n),
            NamedFunction::G2Twist(l) => write!(f, "g2twist_{}", l),
            NamedFunction::J => write!(f, "j"),
        }
    }
}

const MAX_INDEX: u32 = 1000;

impl FromStr for NamedFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedFunction(s.to_string());
        let index = |t: &str| -> Result<u32> {
            let v: u32 = t.parse().map_err(|_| bad())?;
            if v == 0 || v > MAX_INDEX {
                return Err(bad());
            }
            Ok(v)
        };
        let f = if s == "g2star" {
            NamedFunction::G2Star
        } else if s == "j" {
            NamedFunction::J
        } else if let Some(rest) = s.strip_prefix("g2n_") {
            NamedFunction::G2N(index(rest)?)
        } else if let Some(rest) = s.strip_prefix("g2twist_") {
            let l: i64 = rest.parse().map_err(|_| bad())?;
            if l == 0 || l.unsigned_abs() > MAX_INDEX as u64 {
                return Err(bad());
            }
            NamedFunction::G2Twist(l)
        } else if let Some(rest) = s.strip_prefix("curly_") {
            let (a, n) = rest.split_once('_').ok_or_else(bad)?;
            let (a, n) = (index(a)?, index(n)?);
            if a > n {
                return Err(bad());
            }
            NamedFunction::CurlyG(a, n)
        } else if let Some(rest) = s.strip_prefix('g') {
            let k = index(rest)?;
            if k < 4 || k % 2 == 1 || k > 64 {
                return Err(bad());
            }
            NamedFunction::Gk(k)
        } else {
            NamedFunction::Series(s.parse()?)
        };
        Ok(f)
    }
}

/// A tabulated value `f(tau) = value`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialValue {
    pub tau_text: String,
    pub tau: CMPoint,
    pub value_text: String,
    pub value: Expr,
}

const MAX_LINES: usize = 1024;
const MAX_TOKEN: usize = 128;

/// Lines `<tau> <value>` of the `u_6` special-value fixture.
pub fn parse_special_values(text: &str) -> Result<Vec<SpecialValue>> {
    let name = fixtures::U6_VALUES;
    let mut out = vec![];
    for (count, (ln, line)) in content_lines(text).enumerate() {
        if count >= MAX_LINES {
            return Err(err(name, ln, "too many lines"));
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 || toks.iter().any(|t| t.len() > MAX_TOKEN) {
            return Err(err(name, ln, "expected `<tau> <value>`"));
        }
        let at = |e: Error| err(name, ln, e);
        let value = algexpr::parse(toks[1]).map_err(at)?;
        algexpr::eval_complex(&value, 128).map_err(at)?;
        out.push(SpecialValue {
            tau_text: toks[0].to_string(),
            tau: CMPoint::parse(toks[0]).map_err(at)?,
            value_text: toks[1].to_string(),
            value,
        });
    }
    Ok(out)
}

pub fn load_u6_values() -> Result<Vec<SpecialValue>> {
    parse_special_values(&fixtures::load(fixtures::U6_VALUES)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for name in ["g2star", "j", "g4", "g2n_5", "g2twist_-4", "curly_1_3", "u6", "t6", "eta", "e4", "theta4"] {
            let f: NamedFunction = name.parse().unwrap();
            assert_eq!(f.to_string(), name);
        }
        for bad in ["g3", "g2n_0", "curly_4_3", "zeta", "g", "g2twist_0"] {
            assert!(bad.parse::<NamedFunction>().is_err(), "{}", bad);
        }
    }

    #[test]
    fn u6_fixture_values() {
        let ctx = PrecisionContext::default();
        let rows = load_u6_values().unwrap();
        assert_eq!(rows.len(), 4);
        for r in rows {
            let want = algexpr::eval_complex(&r.value, ctx.prec()).unwrap();
            let got = NamedFunction::Series(SeriesFunction::U6).eval(&r.tau, &ctx).unwrap();
            assert!(got.dist(&want) < 1e-30, "{}", r.tau_text);
        }
        assert!(parse_special_values("i").is_err());
        assert!(parse_special_values("2 1").is_err());
    }

    #[test]
    fn j_at_i() {
        let ctx = PrecisionContext::default();
        let v = NamedFunction::J.eval(&crate::numerics::CMPoint::i(), &ctx).unwrap();
        assert!(v.dist(&Complex::from_f64(ctx.prec(), 1728.0, 0.0)) < 1e-40);
    }
}
