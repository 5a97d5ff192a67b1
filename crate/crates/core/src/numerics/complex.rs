//! Complex numbers over MPFR floats.
//!
//! The system MPFR build ships without MPC, so this is a small
//! rectangular-form complex type carrying just what the rest of the
//! crate needs.

use rug::float::Constant;
use rug::{Float, Integer, Rational};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Complex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Complex::new(Float::new(prec), Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        Complex::from_real(Float::with_val(prec, 1))
    }

    pub fn i(prec: u32) -> Self {
        Complex::new(Float::new(prec), Float::with_val(prec, 1))
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        Complex::new(re, Float::new(prec))
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Complex::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn from_rational(prec: u32, r: &Rational) -> Self {
        Complex::from_real(Float::with_val(prec, r))
    }

    pub fn from_integer(prec: u32, n: &Integer) -> Self {
        Complex::from_real(Float::with_val(prec, n))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn pi(prec: u32) -> Float {
        Float::with_val(prec, Constant::Pi)
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Float {
        let prec = self.prec();
        Float::with_val(prec, self.re.square_ref()) + Float::with_val(prec, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn scale(&self, s: &Float) -> Self {
        Complex::new(self.re.clone() * s, self.im.clone() * s)
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Complex::new(self.re.clone() * r, self.im.clone() * r)
    }

    pub fn scale_int(&self, n: &Integer) -> Self {
        Complex::new(self.re.clone() * n, self.im.clone() * n)
    }

    pub fn div_real(&self, s: &Float) -> Self {
        Complex::new(self.re.clone() / s, self.im.clone() / s)
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        Complex::new(-self.im.clone(), self.re.clone())
    }

    pub fn square(&self) -> Self {
        let prec = self.prec();
        let re = Float::with_val(prec, self.re.square_ref()) - Float::with_val(prec, self.im.square_ref());
        let im = Float::with_val(prec, &self.re * &self.im) * 2u32;
        Complex::new(re, im)
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Complex::new(self.re.clone() / &n, -self.im.clone() / &n)
    }

    pub fn exp(&self) -> Self {
        let prec = self.prec();
        let m = Float::with_val(prec, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(prec));
        Complex::new(c * &m, s * m)
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let a = self.abs().ln();
        Complex::new(a, self.arg())
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let prec = self.prec();
        if self.im.is_zero() {
            if self.re.is_sign_negative() && !self.re.is_zero() {
                return Complex::new(Float::new(prec), Float::with_val(prec, -&self.re).sqrt());
            }
            return Complex::from_real(self.re.clone().sqrt());
        }
        let r = self.abs();
        let re = ((r.clone() + &self.re) / 2u32).sqrt();
        let mut im = ((r - &self.re) / 2u32).sqrt();
        if self.im.is_sign_negative() {
            im = -im;
        }
        Complex::new(re, im)
    }

    /// Principal power `self^e` for real `e`.
    pub fn pow_real(&self, e: &Float) -> Self {
        if self.is_zero() {
            return Complex::zero(self.prec());
        }
        self.ln().scale(e).exp()
    }

    pub fn pow_rational(&self, e: &Rational) -> Self {
        if e.denom() == &1u32 {
            if let Some(n) = e.numer().to_i64() {
                return self.powi(n);
            }
        }
        if *e.denom() == 2u32 {
            if let Some(n) = e.numer().to_i64() {
                return self.sqrt().powi(n);
            }
        }
        self.pow_real(&Float::with_val(self.prec(), e))
    }

    pub fn powi(&self, n: i64) -> Self {
        let prec = self.prec();
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut result = Complex::one(prec);
        let mut base = self.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        result
    }

    pub fn sin(&self) -> Self {
        let prec = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(prec));
        let sh = Float::with_val(prec, self.im.sinh_ref());
        let ch = Float::with_val(prec, self.im.cosh_ref());
        Complex::new(s * ch, c * sh)
    }

    pub fn cos(&self) -> Self {
        let prec = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(prec));
        let sh = Float::with_val(prec, self.im.sinh_ref());
        let ch = Float::with_val(prec, self.im.cosh_ref());
        Complex::new(c * ch, -(s * sh))
    }

    pub fn dist(&self, other: &Complex) -> Float {
        (self - other).abs()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Decimal rendering with `digits` significant digits per component.
    pub fn to_decimal(&self, digits: usize) -> String {
        let re = format_float(&self.re, digits);
        if self.im.is_zero() {
            return re;
        }
        let im = format_float(&self.im, digits);
        if im.starts_with('-') {
            format!("{} - {}i", re, &im[1..])
        } else {
            format!("{} + {}i", re, im)
        }
    }
}

/// Fixed decimal rendering of a float, scientific when very large or small.
pub fn format_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let s = x.to_string_radix(10, Some(digits));
    normalize_decimal(&s)
}

fn normalize_decimal(s: &str) -> String {
    let (mant, exp) = match s.find('e') {
        Some(p) => (&s[..p], s[p + 1..].parse::<i64>().unwrap_or(0)),
        None => (s, 0),
    };
    let neg = mant.starts_with('-');
    let mant = mant.trim_start_matches('-');
    let (ip, fp) = match mant.find('.') {
        Some(p) => (&mant[..p], &mant[p + 1..]),
        None => (mant, ""),
    };
    let digits: String = format!("{}{}", ip, fp);
    let point = ip.len() as i64 + exp;
    let body = if point > 40 || point < -20 {
        let d = digits.trim_start_matches('0');
        let lead = ip.len() as i64 - (digits.len() - d.len()) as i64;
        let e = exp + lead - 1;
        let d = d.trim_end_matches('0');
        let d = if d.is_empty() { "0" } else { d };
        if d.len() > 1 {
            format!("{}.{}e{}", &d[..1], &d[1..], e)
        } else {
            format!("{}e{}", d, e)
        }
    } else if point <= 0 {
        let z = "0".repeat((-point) as usize);
        trim_fraction(format!("0.{}{}", z, digits))
    } else if point as usize >= digits.len() {
        let z = "0".repeat(point as usize - digits.len());
        format!("{}{}", digits, z)
    } else {
        let (a, b) = digits.split_at(point as usize);
        trim_fraction(format!("{}.{}", a, b))
    };
    if neg {
        format!("-{}", body)
    } else {
        body
    }
}

fn trim_fraction(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    let t = t.to_string();
    let t = t.trim_start_matches('0');
    if t.starts_with('.') || t.is_empty() {
        format!("0{}", t)
    } else {
        t.to_string()
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(40))
    }
}

impl<'a, 'b> Add<&'b Complex> for &'a Complex {
    type Output = Complex;
    fn add(self, o: &'b Complex) -> Complex {
        Complex::new(self.re.clone() + &o.re, self.im.clone() + &o.im)
    }
}

impl<'a, 'b> Sub<&'b Complex> for &'a Complex {
    type Output = Complex;
    fn sub(self, o: &'b Complex) -> Complex {
        Complex::new(self.re.clone() - &o.re, self.im.clone() - &o.im)
    }
}

impl<'a, 'b> Mul<&'b Complex> for &'a Complex {
    type Output = Complex;
    fn mul(self, o: &'b Complex) -> Complex {
        let prec = self.prec();
        let ac = Float::with_val(prec, &self.re * &o.re);
        let bd = Float::with_val(prec, &self.im * &o.im);
        let ad = Float::with_val(prec, &self.re * &o.im);
        let bc = Float::with_val(prec, &self.im * &o.re);
        Complex::new(ac - bd, ad + bc)
    }
}

impl<'a, 'b> Div<&'b Complex> for &'a Complex {
    type Output = Complex;
    fn div(self, o: &'b Complex) -> Complex {
        let n = o.norm_sqr();
        let num = self * &o.conj();
        Complex::new(num.re / &n, num.im / &n)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $m(self, o: Complex) -> Complex {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Complex> for Complex {
            type Output = Complex;
            fn $m(self, o: &'a Complex) -> Complex {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Complex> for &'a Complex {
            type Output = Complex;
            fn $m(self, o: Complex) -> Complex {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<'a> AddAssign<&'a Complex> for Complex {
    fn add_assign(&mut self, o: &'a Complex) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl AddAssign<Complex> for Complex {
    fn add_assign(&mut self, o: Complex) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl<'a> SubAssign<&'a Complex> for Complex {
    fn sub_assign(&mut self, o: &'a Complex) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl<'a> MulAssign<&'a Complex> for Complex {
    fn mul_assign(&mut self, o: &'a Complex) {
        *self = &*self * o;
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re, -self.im)
    }
}

impl<'a> Neg for &'a Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re.clone(), -self.im.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_i_pi() {
        let p = 128;
        let z = Complex::i(p).scale(&Complex::pi(p));
        let w = z.exp();
        assert!((w.re + 1u32).abs() < 1e-35);
        assert!(w.im.abs() < 1e-35);
    }

    #[test]
    fn sqrt_principal_branch() {
        let z = Complex::from_f64(128, -4.0, 0.0).sqrt();
        assert_eq!(z.to_f64_pair(), (0.0, 2.0));
        let w = Complex::from_f64(128, 3.0, -4.0).sqrt();
        assert_eq!(w.to_f64_pair(), (2.0, -1.0));
    }

    #[test]
    fn powers_agree_with_repeated_product() {
        let z = Complex::from_f64(128, 0.3, 0.7);
        let p5 = z.powi(5);
        let q = &(&(&(&z * &z) * &z) * &z) * &z;
        assert!(p5.dist(&q) < 1e-35);
        let inv = z.powi(-2);
        assert!((inv * z.square()).dist(&Complex::one(128)) < 1e-35);
    }

    #[test]
    fn sin_cos_pythagoras() {
        let z = Complex::from_f64(128, 0.4, 1.3);
        let s = z.sin().square() + z.cos().square();
        assert!(s.dist(&Complex::one(128)) < 1e-35);
    }

    #[test]
    fn decimal_rendering() {
        let x = Float::with_val(64, 1.5);
        assert_eq!(format_float(&x, 10), "1.5");
        let y = Float::with_val(64, -0.00125);
        assert_eq!(format_float(&y, 10), "-0.00125");
        let z = Float::with_val(64, 1728);
        assert_eq!(format_float(&z, 10), "1728");
    }
}
