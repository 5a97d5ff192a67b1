//! Exact points `a + b*sqrt(-D)` of the upper half-plane.

use super::complex::Complex;
use super::numtheory::squarefree_decompose;
use super::surd::QuadraticSurd;
use crate::error::{Error, Result};
use crate::numerics::context::PrecisionContext;
use rug::{Float, Integer, Rational};
use std::fmt;

/// An integer 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: 1 };
    pub const S: Mat2 = Mat2 { a: 0, b: -1, c: 1, d: 0 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn translation(n: i64) -> Self {
        Mat2::new(1, n, 0, 1)
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    /// Matrix product `self * o`.
    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CMPoint {
    pub a: Rational,
    pub b: Rational,
    pub d: u64,
}

impl CMPoint {
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::DomainError("D must be positive".into()));
        }
        let (f, m) = squarefree_decompose(d as i64);
        let b = b * Rational::from(f);
        if b <= 0 {
            return Err(Error::DomainError("point not in the upper half-plane".into()));
        }
        Ok(CMPoint { a, b, d: m as u64 })
    }

    /// `(p + q*sqrt(-D)) / r` for integers.
    pub fn from_ints(p: i64, q: i64, d: u64, r: i64) -> Result<Self> {
        CMPoint::new(Rational::from((p, r)), Rational::from((q, r)), d)
    }

    pub fn i() -> Self {
        CMPoint { a: Rational::new(), b: Rational::from(1), d: 1 }
    }

    pub fn from_surd(s: &QuadraticSurd) -> Result<Self> {
        if s.radicand >= 0 || s.is_rational() {
            return Err(Error::DomainError(format!("{} is not in the upper half-plane", s)));
        }
        CMPoint::new(s.rational_part.clone(), s.surd_coefficient.clone(), (-s.radicand) as u64)
    }

    pub fn to_surd(&self) -> QuadraticSurd {
        QuadraticSurd {
            rational_part: self.a.clone(),
            surd_coefficient: self.b.clone(),
            radicand: -(self.d as i64),
        }
    }

    pub fn value(&self, prec: u32) -> Complex {
        let root = Float::with_val(prec, self.d).sqrt();
        Complex::new(Float::with_val(prec, &self.a), Float::with_val(prec, &self.b) * root)
    }

    /// `|tau|^2`, exactly.
    pub fn norm_sqr(&self) -> Rational {
        Rational::from(self.a.square_ref()) + Rational::from(self.b.square_ref()) * Rational::from(self.d)
    }

    /// `Im(tau)^2`, exactly.
    pub fn imag_sqr(&self) -> Rational {
        Rational::from(self.b.square_ref()) * Rational::from(self.d)
    }

    pub fn imag(&self, prec: u32) -> Float {
        Float::with_val(prec, &self.b) * Float::with_val(prec, self.d).sqrt()
    }

    pub fn translate(&self, n: &Rational) -> CMPoint {
        CMPoint { a: Rational::from(&self.a + n), b: self.b.clone(), d: self.d }
    }

    /// `r * tau` for positive rational `r`.
    pub fn scale(&self, r: &Rational) -> Result<CMPoint> {
        CMPoint::new(Rational::from(&self.a * r), Rational::from(&self.b * r), self.d)
    }

    /// `-1/(n tau)`.
    pub fn fricke(&self, n: &Rational) -> CMPoint {
        let m = self.norm_sqr() * n;
        CMPoint {
            a: -Rational::from(&self.a / &m),
            b: Rational::from(&self.b / &m),
            d: self.d,
        }
    }

    /// `(alpha tau + beta) / (gamma tau + delta)` for a matrix of positive determinant.
    pub fn mobius(&self, m: &Mat2) -> Result<CMPoint> {
        self.mobius_rational(
            &Rational::from(m.a),
            &Rational::from(m.b),
            &Rational::from(m.c),
            &Rational::from(m.d),
        )
    }

    pub fn mobius_rational(
        &self,
        al: &Rational,
        be: &Rational,
        ga: &Rational,
        de: &Rational,
    ) -> Result<CMPoint> {
        let det = Rational::from(al * de) - Rational::from(be * ga);
        if det <= 0 {
            return Err(Error::DomainError("Mobius map must have positive determinant".into()));
        }
        let db = Rational::from(self.d);
        let num_re = Rational::from(al * &self.a) + be;
        let den_re = Rational::from(ga * &self.a) + de;
        let b_sq_d = Rational::from(self.b.square_ref()) * &db;
        let n = Rational::from(den_re.square_ref()) + Rational::from(ga.square_ref()) * &b_sq_d;
        let re = (Rational::from(&num_re * &den_re) + Rational::from(al * ga) * &b_sq_d) / &n;
        let im = Rational::from(&self.b * &det) / n;
        Ok(CMPoint { a: re, b: im, d: self.d })
    }

    /// `e^{2 pi i tau}`.
    pub fn nome(&self, ctx: &PrecisionContext) -> Complex {
        self.nome_root(1, ctx.prec())
    }

    /// `e^{2 pi i tau / m}`.
    pub fn nome_root(&self, m: u32, prec: u32) -> Complex {
        let pi = Complex::pi(prec);
        let two_pi_over_m = pi * 2u32 / m;
        let mag = (-(self.imag(prec) * &two_pi_over_m)).exp();
        let frac = Rational::from(&self.a / m).fract_floor(Integer::new()).0;
        let ang = Float::with_val(prec, &frac) * (Complex::pi(prec) * 2u32);
        let (s, c) = ang.sin_cos(Float::new(prec));
        Complex::new(c * &mag, s * mag)
    }

    /// Reduces into the standard fundamental domain with real part in `[-1/2, 1/2)`
    /// and, on the unit circle, real part `<= 0`. Returns the point and the matrix
    /// mapping the input to it.
    pub fn reduce_sl2z(&self) -> (CMPoint, Mat2) {
        let mut z = self.clone();
        let mut m = Mat2::IDENTITY;
        loop {
            let shift = Rational::from(&z.a + Rational::from((1, 2))).floor().numer().clone();
            let n = shift.to_i64().expect("translation fits in i64");
            if n != 0 {
                z = z.translate(&Rational::from(-n));
                m = Mat2::translation(-n).mul(&m);
            }
            let r = z.norm_sqr();
            if r < 1 || (r == 1 && z.a > 0) {
                z = z.fricke(&Rational::from(1));
                m = Mat2::S.mul(&m);
                continue;
            }
            return (z, m);
        }
    }

    /// Reduction for the Fricke extension of `Gamma_0(n)`: translate to `|Re| <= 1/2`,
    /// apply `W_n` whenever `n |tau|^2 < 1`. Returns the point and the number of
    /// Fricke steps taken.
    pub fn reduce_fricke(&self, n: u64) -> (CMPoint, usize) {
        let nn = Rational::from(n);
        let mut z = self.clone();
        let mut steps = 0;
        loop {
            let shift = Rational::from(&z.a + Rational::from((1, 2))).floor().numer().clone();
            let k = shift.to_i64().expect("translation fits in i64");
            z = z.translate(&Rational::from(-k));
            if Rational::from(&z.a * 2u32) == 1 {
                z = z.translate(&Rational::from(-1));
            }
            if z.norm_sqr() * &nn < 1 {
                z = z.fricke(&nn);
                steps += 1;
                continue;
            }
            return (z, steps);
        }
    }

    /// Parses expressions such as `(1+sqrt(-7))/2`, `i/sqrt(2)` or `3*i`.
    pub fn parse(s: &str) -> Result<Self> {
        let e = crate::numerics::algexpr::parse(s)?;
        let v = crate::numerics::algexpr::eval_exact(&e)?;
        CMPoint::from_surd(&v)
    }
}

impl std::str::FromStr for CMPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CMPoint::parse(s)
    }
}

impl fmt::Display for CMPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = Integer::from(self.a.denom().lcm_ref(self.b.denom()));
        let p = Rational::from(&self.a * &den);
        let q = Rational::from(&self.b * &den);
        let rad = if self.d == 1 { "i".to_string() } else { format!("sqrt(-{})", self.d) };
        let im = if q == 1 { rad } else { format!("{}*{}", q, rad) };
        let body = if p == 0 { im } else { format!("{}+{}", p, im) };
        if den == 1 {
            write!(f, "{}", body)
        } else if p == 0 && q == 1 {
            write!(f, "{}/{}", body, den)
        } else {
            write!(f, "({})/{}", body, den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> CMPoint {
        CMPoint::parse(s).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["i", "(1+sqrt(-7))/2", "sqrt(-3)", "i/sqrt(2)", "(3+sqrt(-51))/6", "(-9+sqrt(-403))/22"] {
            let p = pt(s);
            assert_eq!(pt(&p.to_string()), p, "{}", s);
        }
        assert_eq!(pt("sqrt(-4)"), pt("2*i"));
        assert_eq!(pt("i/sqrt(2)"), pt("sqrt(-2)/2"));
        assert!(CMPoint::parse("1+sqrt(2)").is_err());
        assert!(CMPoint::parse("-i").is_err());
    }

    #[test]
    fn reduction_examples() {
        let (z, m) = pt("i/2").reduce_sl2z();
        assert_eq!(z, pt("2*i"));
        assert_eq!(m, Mat2::S);
        let (z, m) = pt("1/2+2*i").reduce_sl2z();
        assert_eq!(z, pt("-1/2+2*i"));
        assert_eq!(m, Mat2::translation(-1));
        let (z, _) = pt("(1+sqrt(-3))/2").reduce_sl2z();
        assert_eq!(z, pt("(-1+sqrt(-3))/2"));
        let (z, m) = pt("i").reduce_sl2z();
        assert_eq!(z, pt("i"));
        assert_eq!(m, Mat2::IDENTITY);
    }

    #[test]
    fn mobius_matches_numeric_action() {
        let t = pt("(3+sqrt(-15))/7");
        let m = Mat2::new(2, 1, 5, 3);
        let exact = t.mobius(&m).unwrap().value(128);
        let v = t.value(128);
        let num = &v.scale(&Float::with_val(128, 2)) + &Complex::one(128);
        let den = &v.scale(&Float::with_val(128, 5)) + &Complex::from_f64(128, 3.0, 0.0);
        assert!(exact.dist(&(num / den)) < 1e-35);
    }

    #[test]
    fn nome_values() {
        let ctx = PrecisionContext::default();
        let q = CMPoint::i().nome(&ctx);
        assert!((q.re.to_f64() - 0.0018674427317079893).abs() < 1e-18);
        let q7 = pt("(1+sqrt(-7))/2").nome(&ctx);
        assert!(q7.re < 0);
        assert!(q7.im.clone().abs() < 1e-70);
    }

    #[test]
    fn fricke_reduction_increases_height() {
        let (z, steps) = pt("i/3").reduce_fricke(2);
        assert!(steps >= 1);
        assert!(z.norm_sqr() * Rational::from(2) >= 1);
    }
}
