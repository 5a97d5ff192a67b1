//! Exact arithmetic in a quadratic field `Q(sqrt(m))`.

use super::complex::Complex;
use super::numtheory::squarefree_decompose;
use crate::error::{Error, Result};
use rug::{Float, Rational};
use std::fmt;

/// `rational_part + surd_coefficient * sqrt(radicand)` with square-free radicand.
///
/// A rational value is stored with radicand 1 and zero surd coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    pub rational_part: Rational,
    pub surd_coefficient: Rational,
    pub radicand: i64,
}

impl QuadraticSurd {
    pub fn rational(r: Rational) -> Self {
        QuadraticSurd {
            rational_part: r,
            surd_coefficient: Rational::new(),
            radicand: 1,
        }
    }

    pub fn from_int(n: i64) -> Self {
        QuadraticSurd::rational(Rational::from(n))
    }

    /// `r + s*sqrt(n)` for any non-zero integer `n`, normalising `n` to its square-free part.
    pub fn new(r: Rational, s: Rational, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(QuadraticSurd::rational(r));
        }
        let (f, m) = squarefree_decompose(n);
        let s = s * Rational::from(f);
        Ok(QuadraticSurd::normalized(r, s, m))
    }

    /// `sqrt(n)`.
    pub fn sqrt_int(n: i64) -> Result<Self> {
        QuadraticSurd::new(Rational::new(), Rational::from(1), n)
    }

    fn normalized(r: Rational, s: Rational, m: i64) -> Self {
        if m == 1 {
            return QuadraticSurd::rational(r + s);
        }
        if s == 0 {
            return QuadraticSurd::rational(r);
        }
        QuadraticSurd {
            rational_part: r,
            surd_coefficient: s,
            radicand: m,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.surd_coefficient == 0
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.rational_part)
        } else {
            None
        }
    }

    fn common(&self, o: &Self) -> Result<i64> {
        match (self.is_rational(), o.is_rational()) {
            (true, true) => Ok(1),
            (true, false) => Ok(o.radicand),
            (false, true) => Ok(self.radicand),
            (false, false) if self.radicand == o.radicand => Ok(self.radicand),
            _ => Err(Error::DomainError(format!(
                "mixed radicands {} and {}",
                self.radicand, o.radicand
            ))),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let m = self.common(o)?;
        Ok(QuadraticSurd::normalized(
            Rational::from(&self.rational_part + &o.rational_part),
            Rational::from(&self.surd_coefficient + &o.surd_coefficient),
            m,
        ))
    }

    pub fn neg(&self) -> Self {
        QuadraticSurd {
            rational_part: -self.rational_part.clone(),
            surd_coefficient: -self.surd_coefficient.clone(),
            radicand: self.radicand,
        }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let m = self.common(o)?;
        let r = Rational::from(&self.rational_part * &o.rational_part)
            + Rational::from(&self.surd_coefficient * &o.surd_coefficient) * Rational::from(m);
        let s = Rational::from(&self.rational_part * &o.surd_coefficient)
            + Rational::from(&self.surd_coefficient * &o.rational_part);
        Ok(QuadraticSurd::normalized(r, s, m))
    }

    pub fn conj(&self) -> Self {
        QuadraticSurd {
            rational_part: self.rational_part.clone(),
            surd_coefficient: -self.surd_coefficient.clone(),
            radicand: self.radicand,
        }
    }

    /// Field norm `r^2 - m s^2`.
    pub fn norm(&self) -> Rational {
        Rational::from(self.rational_part.square_ref())
            - Rational::from(self.surd_coefficient.square_ref()) * Rational::from(self.radicand)
    }

    pub fn is_zero(&self) -> bool {
        self.rational_part == 0 && self.surd_coefficient == 0
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DomainError("division by zero".into()));
        }
        let n = self.norm();
        let c = self.conj();
        Ok(QuadraticSurd::normalized(
            c.rational_part / &n,
            c.surd_coefficient / &n,
            self.radicand,
        ))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.mul(&o.inv()?)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut r = QuadraticSurd::from_int(1);
        for _ in 0..n {
            r = r.mul(self)?;
        }
        Ok(r)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        QuadraticSurd::normalized(
            Rational::from(&self.rational_part * q),
            Rational::from(&self.surd_coefficient * q),
            self.radicand,
        )
    }

    pub fn to_complex(&self, prec: u32) -> Complex {
        let r = Float::with_val(prec, &self.rational_part);
        if self.is_rational() {
            return Complex::from_real(r);
        }
        let root = Float::with_val(prec, self.radicand.unsigned_abs()).sqrt();
        let s = Float::with_val(prec, &self.surd_coefficient) * root;
        if self.radicand < 0 {
            Complex::new(r, s)
        } else {
            Complex::from_real(r + s)
        }
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.rational_part);
        }
        let rad = format!("sqrt({})", self.radicand);
        let s = &self.surd_coefficient;
        let surd = if *s == 1 {
            rad
        } else if *s == -1 {
            format!("-{}", rad)
        } else {
            format!("{}*{}", s, rad)
        };
        if self.rational_part == 0 {
            write!(f, "{}", surd)
        } else if surd.starts_with('-') {
            write!(f, "{} - {}", self.rational_part, &surd[1..])
        } else {
            write!(f, "{} + {}", self.rational_part, surd)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn normalises_radicand() {
        let s = QuadraticSurd::sqrt_int(-4).unwrap();
        assert_eq!(s.radicand, -1);
        assert_eq!(s.surd_coefficient, 2);
        let t = QuadraticSurd::sqrt_int(9).unwrap();
        assert!(t.is_rational());
        assert_eq!(t.rational_part, 3);
    }

    #[test]
    fn field_operations() {
        let z = QuadraticSurd::new(q(1, 2), q(-1, 2), 2).unwrap();
        let w = z.mul(&z.conj()).unwrap();
        assert_eq!(w.as_rational(), Some(&q(-1, 4)));
        let inv = z.inv().unwrap();
        let one = z.mul(&inv).unwrap();
        assert_eq!(one, QuadraticSurd::from_int(1));
        let mixed = z.add(&QuadraticSurd::sqrt_int(3).unwrap());
        assert!(mixed.is_err());
    }

    #[test]
    fn embedding() {
        let tau = QuadraticSurd::new(q(1, 2), q(1, 2), -7).unwrap();
        let c = tau.to_complex(128);
        assert!((c.re - 0.5f64).abs() < 1e-30);
        assert!((c.im - 1.3228756555322952f64).abs() < 1e-15);
    }
}
