//! Radical constant expressions: rationals, `i`, `pi`, `sqrt`, `cbrt`,
//! `+ - * / ^` and parentheses.
//!
//! Expressions are evaluated either exactly, into a single quadratic field,
//! or numerically at a given precision.

use super::complex::Complex;
use super::numtheory::squarefree_decompose;
use super::surd::QuadraticSurd;
use crate::error::{Error, Result};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::collections::BTreeMap;
use std::fmt;

const MAX_DEPTH: usize = 128;
const MAX_INPUT: usize = 4096;
const MAX_EXACT_EXPONENT: i64 = 64;
const MAX_COEFF_BITS: u32 = 1 << 16;
const MAX_RADICAND: i64 = 1_000_000_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    I,
    Pi,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Sqrt(Box<Expr>),
    Cbrt(Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) => {
                if *r.denom() == 1 {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "({}/{})", r.numer(), r.denom())
                }
            }
            Expr::I => write!(f, "i"),
            Expr::Pi => write!(f, "pi"),
            Expr::Neg(e) => write!(f, "(-{})", e),
            Expr::Add(a, b) => write!(f, "({}+{})", a, b),
            Expr::Sub(a, b) => write!(f, "({}-{})", a, b),
            Expr::Mul(a, b) => write!(f, "({}*{})", a, b),
            Expr::Div(a, b) => write!(f, "({}/{})", a, b),
            Expr::Pow(a, b) => write!(f, "({}^{})", a, b),
            Expr::Sqrt(a) => write!(f, "sqrt({})", a),
            Expr::Cbrt(a) => write!(f, "cbrt({})", a),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    if s.len() > MAX_INPUT {
        return Err(Error::Parse("expression too long".into()));
    }
    let cs: Vec<char> = s.chars().collect();
    let mut out = vec![];
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '.') {
                i += 1;
            }
            let lit: String = cs[start..i].iter().collect();
            out.push(Tok::Num(parse_decimal(&lit)?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(cs[start..i].iter().collect()));
        } else if "+-*/^".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '(' {
            out.push(Tok::LParen);
            i += 1;
        } else if c == ')' {
            out.push(Tok::RParen);
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {:?}", c)));
        }
    }
    Ok(out)
}

fn parse_decimal(lit: &str) -> Result<Rational> {
    let mut parts = lit.split('.');
    let ip = parts.next().unwrap_or("");
    let fp = parts.next();
    if parts.next().is_some() || (ip.is_empty() && fp.map_or(true, |f| f.is_empty())) {
        return Err(Error::Parse(format!("bad number {:?}", lit)));
    }
    let fp = fp.unwrap_or("");
    let digits = format!("{}{}", ip, fp);
    let n: Integer = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad number {:?}", lit)))?;
    let den = Integer::from(10).pow(fp.len() as u32);
    Ok(Rational::from((n, den)))
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(Error::Parse("expression nested too deeply".into()));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr> {
        self.enter()?;
        let mut lhs = self.term()?;
        while let Some(Tok::Op(c)) = self.peek() {
            let c = *c;
            if c != '+' && c != '-' {
                break;
            }
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Op(c)) = self.peek() {
            let c = *c;
            if c != '*' && c != '/' {
                break;
            }
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if c == '*' {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        self.enter()?;
        let r = if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            Expr::Neg(Box::new(self.unary()?))
        } else if let Some(Tok::Op('+')) = self.peek() {
            self.pos += 1;
            self.unary()?
        } else {
            self.power()?
        };
        self.depth -= 1;
        Ok(r)
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let e = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(e)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Num(r)) => Ok(Expr::Num(r)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::Parse("expected ')'".into())),
                }
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "i" => Ok(Expr::I),
                "pi" => Ok(Expr::Pi),
                "sqrt" | "cbrt" => {
                    match self.next() {
                        Some(Tok::LParen) => {}
                        _ => return Err(Error::Parse(format!("expected '(' after {}", name))),
                    }
                    let e = self.expr()?;
                    match self.next() {
                        Some(Tok::RParen) => {}
                        _ => return Err(Error::Parse("expected ')'".into())),
                    }
                    Ok(if name == "sqrt" {
                        Expr::Sqrt(Box::new(e))
                    } else {
                        Expr::Cbrt(Box::new(e))
                    })
                }
                _ => Err(Error::Parse(format!("unknown identifier {:?}", name))),
            },
            Some(t) => Err(Error::Parse(format!("unexpected token {:?}", t))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}

pub fn parse(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, depth: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse("trailing input".into()));
    }
    Ok(e)
}

/// Sums of rational multiples of square roots of square-free integers.
#[derive(Clone, Debug, PartialEq, Default)]
struct RadicalSum(BTreeMap<i64, Rational>);

impl RadicalSum {
    fn rational(r: Rational) -> Self {
        let mut m = BTreeMap::new();
        if r != 0 {
            m.insert(1, r);
        }
        RadicalSum(m)
    }

    fn monomial(c: Rational, rad: i64) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(rad, c);
        }
        RadicalSum(m)
    }

    fn check(self) -> Result<Self> {
        for c in self.0.values() {
            if c.numer().significant_bits() > MAX_COEFF_BITS || c.denom().significant_bits() > MAX_COEFF_BITS {
                return Err(Error::Parse("coefficient too large".into()));
            }
        }
        Ok(self)
    }

    fn add(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (k, v) in &o.0 {
            let e = m.entry(*k).or_insert_with(Rational::new);
            *e += v;
            if *e == 0 {
                m.remove(k);
            }
        }
        RadicalSum(m)
    }

    fn neg(&self) -> Self {
        RadicalSum(self.0.iter().map(|(k, v)| (*k, -v.clone())).collect())
    }

    fn mul(&self, o: &Self) -> Result<Self> {
        let mut out = RadicalSum::default();
        for (k1, v1) in &self.0 {
            for (k2, v2) in &o.0 {
                let prod = k1
                    .checked_mul(*k2)
                    .filter(|p| p.abs() <= MAX_RADICAND)
                    .ok_or_else(|| Error::Parse("radicand overflow".into()))?;
                let (f, m) = squarefree_decompose(prod);
                let mut c = Rational::from(v1 * v2) * Rational::from(f);
                if *k1 < 0 && *k2 < 0 {
                    c = -c;
                }
                out = out.add(&RadicalSum::monomial(c, m));
            }
        }
        out.check()
    }

    fn as_rational(&self) -> Option<Rational> {
        match self.0.len() {
            0 => Some(Rational::new()),
            1 => self.0.get(&1).cloned(),
            _ => None,
        }
    }

    fn inv(&self) -> Result<Self> {
        if self.0.is_empty() {
            return Err(Error::DomainError("division by zero".into()));
        }
        if self.0.len() == 1 {
            let (k, v) = self.0.iter().next().unwrap();
            let c = Rational::from(1) / (v.clone() * Rational::from(*k));
            return Ok(RadicalSum::monomial(c, *k));
        }
        if self.0.len() == 2 && self.0.contains_key(&1) {
            let (&m, s) = self.0.iter().find(|(k, _)| **k != 1).unwrap();
            let r = self.0[&1].clone();
            let norm = Rational::from(r.square_ref()) - Rational::from(s.square_ref()) * Rational::from(m);
            let conj = RadicalSum::rational(r).add(&RadicalSum::monomial(-s.clone(), m));
            return conj.mul(&RadicalSum::rational(Rational::from(1) / norm));
        }
        Err(Error::DomainError("cannot invert a sum of several radicals exactly".into()))
    }

    fn sqrt(&self) -> Result<Self> {
        let r = self
            .as_rational()
            .ok_or_else(|| Error::DomainError("sqrt of an irrational value is not exact".into()))?;
        if r == 0 {
            return Ok(RadicalSum::default());
        }
        let (n, d) = r.into_numer_denom();
        let prod = Integer::from(&n * &d);
        let prod = prod
            .to_i64()
            .filter(|p| p.abs() <= MAX_RADICAND)
            .ok_or_else(|| Error::Parse("radicand overflow".into()))?;
        let (f, m) = squarefree_decompose(prod);
        Ok(RadicalSum::monomial(Rational::from((Integer::from(f), d)), m))
    }

    fn into_surd(self) -> Result<QuadraticSurd> {
        let mut rat = Rational::new();
        let mut other: Option<(i64, Rational)> = None;
        for (k, v) in self.0 {
            if k == 1 {
                rat = v;
            } else if other.is_none() {
                other = Some((k, v));
            } else {
                return Err(Error::DomainError("value does not lie in one quadratic field".into()));
            }
        }
        match other {
            None => Ok(QuadraticSurd::rational(rat)),
            Some((k, v)) => QuadraticSurd::new(rat, v, k),
        }
    }
}

fn exact(e: &Expr) -> Result<RadicalSum> {
    match e {
        Expr::Num(r) => Ok(RadicalSum::rational(r.clone())),
        Expr::I => Ok(RadicalSum::monomial(Rational::from(1), -1)),
        Expr::Pi => Err(Error::DomainError("pi is not exact".into())),
        Expr::Cbrt(_) => Err(Error::DomainError("cube roots are not exact".into())),
        Expr::Neg(a) => Ok(exact(a)?.neg()),
        Expr::Add(a, b) => Ok(exact(a)?.add(&exact(b)?)),
        Expr::Sub(a, b) => Ok(exact(a)?.add(&exact(b)?.neg())),
        Expr::Mul(a, b) => exact(a)?.mul(&exact(b)?),
        Expr::Div(a, b) => exact(a)?.mul(&exact(b)?.inv()?),
        Expr::Sqrt(a) => exact(a)?.sqrt(),
        Expr::Pow(a, b) => {
            let n = exact(b)?
                .as_rational()
                .filter(|r| *r.denom() == 1)
                .and_then(|r| r.numer().to_i64())
                .ok_or_else(|| Error::DomainError("only integer powers are exact".into()))?;
            if n.abs() > MAX_EXACT_EXPONENT {
                return Err(Error::DomainError("exponent too large".into()));
            }
            let base = exact(a)?;
            let mut r = RadicalSum::rational(Rational::from(1));
            for _ in 0..n.abs() {
                r = r.mul(&base)?;
            }
            if n < 0 {
                r = r.inv()?;
            }
            Ok(r)
        }
    }
}

/// Exact value, defined when the expression lies in a single quadratic field.
pub fn eval_exact(e: &Expr) -> Result<QuadraticSurd> {
    exact(e)?.into_surd()
}

/// Exact rational value, or a domain error.
pub fn eval_rational(e: &Expr) -> Result<Rational> {
    exact(e)?
        .as_rational()
        .ok_or_else(|| Error::DomainError(format!("{} is not rational", e)))
}

/// Numerical value at `prec` bits, principal branches throughout.
pub fn eval_complex(e: &Expr, prec: u32) -> Result<Complex> {
    let v = match e {
        Expr::Num(r) => Complex::from_rational(prec, r),
        Expr::I => Complex::i(prec),
        Expr::Pi => Complex::from_real(Complex::pi(prec)),
        Expr::Neg(a) => -eval_complex(a, prec)?,
        Expr::Add(a, b) => eval_complex(a, prec)? + eval_complex(b, prec)?,
        Expr::Sub(a, b) => eval_complex(a, prec)? - eval_complex(b, prec)?,
        Expr::Mul(a, b) => eval_complex(a, prec)? * eval_complex(b, prec)?,
        Expr::Div(a, b) => {
            let d = eval_complex(b, prec)?;
            if d.is_zero() {
                return Err(Error::DomainError("division by zero".into()));
            }
            eval_complex(a, prec)? / d
        }
        Expr::Sqrt(a) => eval_complex(a, prec)?.sqrt(),
        Expr::Cbrt(a) => {
            let x = eval_complex(a, prec)?;
            if x.im.is_zero() {
                Complex::from_real(x.re.cbrt())
            } else {
                x.pow_rational(&Rational::from((1, 3)))
            }
        }
        Expr::Pow(a, b) => {
            let base = eval_complex(a, prec)?;
            if let Ok(r) = eval_rational(b) {
                if *r.denom() == 1 {
                    if let Some(n) = r.numer().to_i64().filter(|n| n.abs() <= 1 << 20) {
                        if n < 0 && base.is_zero() {
                            return Err(Error::DomainError("division by zero".into()));
                        }
                        return Ok(base.powi(n));
                    }
                }
                if base.im.is_zero() && base.re.is_sign_positive() {
                    let f = Float::with_val(prec, &r);
                    return Ok(Complex::from_real(base.re.pow(f)));
                }
                base.pow_rational(&r)
            } else {
                let ex = eval_complex(b, prec)?;
                if base.is_zero() {
                    Complex::zero(prec)
                } else {
                    (base.ln() * ex).exp()
                }
            }
        }
    };
    if !v.is_finite() {
        return Err(Error::DomainError(format!("non-finite value in {}", e)));
    }
    Ok(v)
}

/// Parses and evaluates numerically.
pub fn value(s: &str, prec: u32) -> Result<Complex> {
    eval_complex(&parse(s)?, prec)
}

/// Parses an exact rational such as `-16/9` or `0.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    eval_rational(&parse(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let v = value("-15^3", 128).unwrap();
        assert_eq!(v.re.to_f64(), -3375.0);
        let w = value("2^3^2", 128).unwrap();
        assert_eq!(w.re.to_f64(), 512.0);
        let x = value("1/2*4", 128).unwrap();
        assert_eq!(x.re.to_f64(), 2.0);
    }

    #[test]
    fn exact_values() {
        let u = eval_exact(&parse("(1+sqrt(-7))/2").unwrap()).unwrap();
        assert_eq!(u.radicand, -7);
        assert_eq!(u.rational_part, Rational::from((1, 2)));
        let s = eval_exact(&parse("i/sqrt(2)").unwrap()).unwrap();
        assert_eq!(s.radicand, -2);
        assert_eq!(s.surd_coefficient, Rational::from((1, 2)));
        let r = parse_rational("-256/3969").unwrap();
        assert_eq!(r, Rational::from((-256, 3969)));
        let inv = eval_exact(&parse("1/(1+sqrt(2))").unwrap()).unwrap();
        assert_eq!(inv, QuadraticSurd::new(Rational::from(-1), Rational::from(1), 2).unwrap());
        assert!(eval_exact(&parse("sqrt(2)+sqrt(3)").unwrap()).is_err());
    }

    #[test]
    fn numeric_constants() {
        let u6 = value("(3^(3/4)*sqrt(2)-1+sqrt(3))/4", 128).unwrap();
        assert!((u6.re.to_f64() - 0.98894015075987576).abs() < 1e-12);
        let c = value("cbrt(2)*sqrt(15)/75", 128).unwrap();
        assert!((c.re.to_f64() - 0.06506204325).abs() < 1e-10);
        assert_eq!(value("0.25", 64).unwrap().re.to_f64(), 0.25);
    }

    #[test]
    fn display_is_idempotent() {
        for s in ["-15^3", "(1+sqrt(-7))/2", "135/2*(1415-637*sqrt(5))", "3^(3/4)", "0.3"] {
            let d1 = parse(s).unwrap().to_string();
            let d2 = parse(&d1).unwrap().to_string();
            assert_eq!(d1, d2);
        }
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", "(", "1+", "sqrt 2", "foo", "1..2", "((((1)))"] {
            assert!(parse(s).is_err(), "{}", s);
        }
    }
}
