//! Parsers for the table, chain and singular-modulus fixtures.

use super::atoms::EisensteinKind;
use crate::arith::forms::parse_bounded_rational;
use crate::error::{Error, Result};
use crate::fixtures::{self, content_lines, err};
use crate::numerics::algexpr::{self, Expr};
use crate::numerics::CMPoint;
use rug::Rational;

const MAX_LINES: usize = 4096;
const MAX_TOKEN: usize = 64;
const MAX_TERMS: usize = 32;
const MAX_PIECES: usize = 16;
const MAX_POWER: i64 = 12;

/// A row of Table 1a or the appendix table: `C L(f, 2) = pi^2 3F2(HD3(d); t)`
/// with `t = t_d(tau)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HauptmodulRow {
    pub d: u32,
    pub t: Rational,
    pub tau_text: String,
    pub tau: CMPoint,
    pub label: String,
    pub c_text: String,
    pub c: Expr,
    /// `(w, D)` asserting `L = w Omega_{-D}^2`.
    pub omega: Option<(String, Expr, u64)>,
}

/// A row of Table 1b: `a_D L(f_D, 2) = pi^2 3F2(HD3(6); 1728/j(tau_D))`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularRow {
    pub disc: u64,
    pub tau_text: String,
    pub tau: CMPoint,
    pub label: String,
    pub a_text: String,
    pub a: Expr,
    pub omega: Option<(String, Expr)>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Tables {
    pub table1a: Vec<HauptmodulRow>,
    pub table1b: Vec<SingularRow>,
    pub table3: Vec<HauptmodulRow>,
}

fn token<'a>(name: &str, ln: usize, toks: &[&'a str], i: usize) -> Result<&'a str> {
    let t = toks.get(i).copied().ok_or_else(|| err(name, ln, "missing field"))?;
    if t.len() > MAX_TOKEN {
        return Err(err(name, ln, "token too long"));
    }
    Ok(t)
}

fn constant(s: &str) -> Result<Expr> {
    let e = algexpr::parse(s)?;
    let v = algexpr::eval_complex(&e, 128)?;
    if v.is_zero() {
        return Err(Error::Parse(format!("zero constant {:?}", s)));
    }
    Ok(e)
}

fn family(s: &str) -> Result<u32> {
    match s {
        "2" => Ok(2),
        "3" => Ok(3),
        "4" => Ok(4),
        "6" => Ok(6),
        _ => Err(Error::Parse(format!("family {:?} not in {{2, 3, 4, 6}}", s))),
    }
}

fn discriminant(s: &str) -> Result<u64> {
    let d: u64 = s.parse().map_err(|_| Error::Parse(format!("discriminant {:?}", s)))?;
    if d == 0 || d > 1_000_000 {
        return Err(Error::Parse(format!("discriminant {} out of range", d)));
    }
    Ok(d)
}

fn hauptmodul_row(toks: &[&str], with_omega: bool, name: &str, ln: usize) -> Result<HauptmodulRow> {
    let want = if with_omega { 8 } else { 6 };
    if toks.len() != want {
        return Err(err(name, ln, format!("`{}` takes {} fields", toks[0], want - 1)));
    }
    let f = |i: usize| token(name, ln, toks, i);
    let at = |e: Error| err(name, ln, e);
    let omega = if with_omega && f(6)? != "-" {
        Some((f(6)?.to_string(), constant(f(6)?).map_err(at)?, discriminant(f(7)?).map_err(at)?))
    } else if with_omega && f(7)? != "-" {
        return Err(err(name, ln, "omega discriminant without coefficient"));
    } else {
        None
    };
    Ok(HauptmodulRow {
        d: family(f(1)?).map_err(at)?,
        t: parse_bounded_rational(f(2)?).map_err(at)?,
        tau_text: f(3)?.to_string(),
        tau: CMPoint::parse(f(3)?).map_err(at)?,
        label: f(4)?.to_string(),
        c_text: f(5)?.to_string(),
        c: constant(f(5)?).map_err(at)?,
        omega,
    })
}

fn singular_row(toks: &[&str], name: &str, ln: usize) -> Result<SingularRow> {
    if toks.len() != 6 {
        return Err(err(name, ln, "`table1b` takes 5 fields"));
    }
    let f = |i: usize| token(name, ln, toks, i);
    let at = |e: Error| err(name, ln, e);
    let omega = match f(5)? {
        "-" => None,
        w => Some((w.to_string(), constant(w).map_err(at)?)),
    };
    Ok(SingularRow {
        disc: discriminant(f(1)?).map_err(at)?,
        tau_text: f(2)?.to_string(),
        tau: CMPoint::parse(f(2)?).map_err(at)?,
        label: f(3)?.to_string(),
        a_text: f(4)?.to_string(),
        a: constant(f(4)?).map_err(at)?,
        omega,
    })
}

pub fn parse_tables(text: &str) -> Result<Tables> {
    let name = fixtures::TABLES;
    let mut out = Tables::default();
    for (count, (ln, line)) in content_lines(text).enumerate() {
        if count >= MAX_LINES {
            return Err(err(name, ln, "too many lines"));
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "table1a" => out.table1a.push(hauptmodul_row(&toks, true, name, ln)?),
            "table3" => out.table3.push(hauptmodul_row(&toks, false, name, ln)?),
            "table1b" => out.table1b.push(singular_row(&toks, name, ln)?),
            kw => return Err(err(name, ln, format!("unknown row kind {:?}", kw))),
        }
    }
    Ok(out)
}

pub fn load_tables() -> Result<Tables> {
    parse_tables(&fixtures::load(fixtures::TABLES)?)
}

/// A quantity that a chain term multiplies by its coefficient.
#[derive(Clone, Debug, PartialEq)]
pub enum Quantity {
    Eisenstein(String),
    Lattice(String),
    Afe(String),
    Omega { d: u64, power: i64 },
    Hypergeometric { d: u32, t: Rational, power: i64 },
    Atom { kind: EisensteinKind, tau: CMPoint },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub coefficient: Expr,
    pub quantity: Quantity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub text: String,
    pub pieces: Vec<Piece>,
}

impl Term {
    pub fn uses_afe(&self) -> bool {
        self.pieces.iter().any(|p| matches!(p.quantity, Quantity::Afe(_)))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Chain {
    pub suite: String,
    pub name: String,
    pub terms: Vec<Term>,
}

fn power(s: &str) -> Result<i64> {
    let m: i64 = s.parse().map_err(|_| Error::Parse(format!("power {:?}", s)))?;
    if m == 0 || m.abs() > MAX_POWER {
        return Err(Error::Parse(format!("power {} out of range", m)));
    }
    Ok(m)
}

fn label(s: &str) -> Result<String> {
    if s.is_empty() || s.len() > MAX_TOKEN {
        return Err(Error::Parse("form label".into()));
    }
    Ok(s.to_string())
}

fn parse_piece(text: &str) -> Result<Piece> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.len() < 3 || toks.iter().any(|t| t.len() > MAX_TOKEN) {
        return Err(Error::Parse(format!("piece {:?}", text)));
    }
    let n = |k: usize| {
        if toks.len() == k {
            Ok(())
        } else {
            Err(Error::Parse(format!("`{}` takes {} arguments", toks[1], k - 2)))
        }
    };
    let quantity = match toks[1] {
        "L" => {
            n(3)?;
            Quantity::Eisenstein(label(toks[2])?)
        }
        "Lcoset" => {
            n(3)?;
            Quantity::Lattice(label(toks[2])?)
        }
        "Lafe" => {
            n(3)?;
            Quantity::Afe(label(toks[2])?)
        }
        "Omega" => {
            n(4)?;
            Quantity::Omega { d: discriminant(toks[2])?, power: power(toks[3])? }
        }
        "F" => {
            n(5)?;
            Quantity::Hypergeometric { d: family(toks[2])?, t: parse_bounded_rational(toks[3])?, power: power(toks[4])? }
        }
        "Eis" => {
            n(4)?;
            Quantity::Atom { kind: toks[2].parse()?, tau: CMPoint::parse(toks[3])? }
        }
        q => return Err(Error::Parse(format!("unknown quantity {:?}", q))),
    };
    Ok(Piece { coefficient: constant(toks[0])?, quantity })
}

pub fn parse_chains(text: &str) -> Result<Vec<Chain>> {
    let name = fixtures::CHAINS;
    let mut out: Vec<Chain> = vec![];
    let mut cur: Option<Chain> = None;
    for (count, (ln, line)) in content_lines(text).enumerate() {
        if count >= MAX_LINES {
            return Err(err(name, ln, "too many lines"));
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match (kw, cur.as_mut()) {
            ("chain", None) => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != 2 || toks.iter().any(|t| t.len() > MAX_TOKEN) {
                    return Err(err(name, ln, "expected `chain <suite> <name>`"));
                }
                if out.iter().any(|c| c.suite == toks[0] && c.name == toks[1]) {
                    return Err(err(name, ln, format!("duplicate chain {}", toks[1])));
                }
                cur = Some(Chain { suite: toks[0].to_string(), name: toks[1].to_string(), terms: vec![] });
            }
            ("chain", Some(_)) => return Err(err(name, ln, "nested `chain`")),
            ("term", Some(c)) => {
                if c.terms.len() >= MAX_TERMS {
                    return Err(err(name, ln, "too many terms"));
                }
                let parts: Vec<&str> = rest.split(';').collect();
                if parts.len() > MAX_PIECES {
                    return Err(err(name, ln, "too many pieces"));
                }
                let pieces = parts.iter().map(|p| parse_piece(p)).collect::<Result<Vec<_>>>().map_err(|e| err(name, ln, e))?;
                let text = rest.split_whitespace().collect::<Vec<_>>().join(" ");
                c.terms.push(Term { text, pieces });
            }
            ("end", Some(_)) => {
                if !rest.trim().is_empty() {
                    return Err(err(name, ln, "trailing tokens after `end`"));
                }
                let c = cur.take().expect("matched Some");
                if c.terms.len() < 2 {
                    return Err(err(name, ln, format!("chain {} needs at least two terms", c.name)));
                }
                out.push(c);
            }
            (kw, _) => return Err(err(name, ln, format!("unexpected {:?}", kw))),
        }
    }
    if cur.is_some() {
        return Err(Error::Fixture(format!("{}: unterminated chain", name)));
    }
    Ok(out)
}

pub fn load_chains() -> Result<Vec<Chain>> {
    parse_chains(&fixtures::load(fixtures::CHAINS)?)
}

/// A singular modulus `j(tau)` with its closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularModulus {
    pub disc: i64,
    pub tau_text: String,
    pub tau: CMPoint,
    pub j_text: String,
    pub j: Expr,
}

pub fn parse_table4(text: &str) -> Result<Vec<SingularModulus>> {
    let name = fixtures::TABLE4;
    let mut out = vec![];
    for (count, (ln, line)) in content_lines(text).enumerate() {
        if count >= MAX_LINES {
            return Err(err(name, ln, "too many lines"));
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 || toks.iter().any(|t| t.len() > MAX_TOKEN) {
            return Err(err(name, ln, "expected `<disc> <tau> <j>`"));
        }
        let at = |e: Error| err(name, ln, e);
        let disc: i64 = toks[0].parse().map_err(|_| err(name, ln, "discriminant"))?;
        if disc >= 0 || disc < -1_000_000 {
            return Err(err(name, ln, "discriminant must be negative"));
        }
        let j = algexpr::parse(toks[2]).map_err(at)?;
        algexpr::eval_complex(&j, 128).map_err(at)?;
        out.push(SingularModulus {
            disc,
            tau_text: toks[1].to_string(),
            tau: CMPoint::parse(toks[1]).map_err(at)?,
            j_text: toks[2].to_string(),
            j,
        });
    }
    Ok(out)
}

pub fn load_table4() -> Result<Vec<SingularModulus>> {
    parse_table4(&fixtures::load(fixtures::TABLE4)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_fixtures_parse() {
        let t = load_tables().unwrap();
        assert_eq!((t.table1a.len(), t.table1b.len(), t.table3.len()), (18, 11, 24));
        assert!(load_chains().unwrap().len() >= 12);
        assert!(load_table4().unwrap().len() > 60);
    }

    #[test]
    fn malformed_rows_are_rejected() {
        for b in [
            "table1a 5 1 i f 9 - -",
            "table1a 2 1 i f 9 1/32",
            "table1a 2 1 -i f 9 - -",
            "table1a 2 1 i f 0 - -",
            "table1b 0 i f 1 -",
            "table3 2 x i f 1",
            "row 1",
        ] {
            assert!(parse_tables(b).is_err(), "{}", b);
        }
        for b in [
            "chain s a\nterm 1 L f\nend",
            "chain s a\nterm 1 L f\nterm 1 Q f\nend",
            "chain s a\nterm 1 F 5 1 1\nterm 1 L f\nend",
            "chain s a\nterm 1 L f\nterm 1 L g",
            "term 1 L f",
            "chain s a\nterm 1 Omega 4 0\nterm 1 L f\nend",
        ] {
            assert!(parse_chains(b).is_err(), "{}", b);
        }
    }
}
