//! L-values at `s = k - 1` summed directly over the lattice cosets of a form's atoms.
//!
//! For a coset `w0 + Z b1 + Z b2` the sum of `w^(-j)` is taken row by row,
//! `sum_m (m + u)^(-j) = (-1)^(j-1)/(j-1)! pi^j P_{j-1}(cot(pi u))` with
//! `P_0 = c`, `P_{n+1} = -(1 + c^2) P_n'`; for `j = 2` the Hecke limit
//! subtracts `pi / Im(tau)`.

use crate::arith::{CMFormId, FieldElement, LatticeAtom};
use crate::error::{Error, Result};
use crate::numerics::numtheory::kronecker;
use crate::numerics::{Complex, PrecisionContext};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// Integer coefficients of `P_n`, lowest degree first.
fn cot_derivative_polynomial(n: u32) -> Vec<Integer> {
    let mut p = vec![Integer::new(), Integer::from(1)];
    for _ in 0..n {
        let deriv: Vec<Integer> = p.iter().enumerate().skip(1).map(|(i, c)| Integer::from(c * i as u32)).collect();
        let mut next = vec![Integer::new(); deriv.len() + 2];
        for (i, c) in deriv.iter().enumerate() {
            next[i] -= c;
            next[i + 2] -= c;
        }
        p = next;
    }
    p
}

fn horner(p: &[Integer], x: &Complex) -> Complex {
    let prec = x.prec();
    let mut acc = Complex::zero(prec);
    for c in p.iter().rev() {
        acc = &acc * x;
        acc.re += c;
    }
    acc
}

/// `cot(pi u)` for non-real or non-integral real `u`.
fn cot_pi(u: &Complex) -> Complex {
    let prec = u.prec();
    let pi = Float::with_val(prec, Constant::Pi);
    let one = Complex::one(prec);
    let i = Complex::i(prec);
    if u.im >= 0 {
        let e = (u.scale(&(pi * 2u32)).mul_i()).exp();
        &(&i * &(&e + &one)) / &(&e - &one)
    } else {
        let e = (-(u.scale(&(pi * 2u32)).mul_i())).exp();
        &(&(-&i) * &(&one + &e)) / &(&one - &e)
    }
}

fn embed(e: &FieldElement, d: u64, prec: u32) -> Complex {
    let root = Float::with_val(prec, d).sqrt();
    Complex::new(Float::with_val(prec, &e.x), Float::with_val(prec, &e.y) * root)
}

fn frac(r: &Rational) -> Rational {
    let f = r.clone().floor();
    Rational::from(r - f)
}

/// `sum_{w in w0 + Z b1 + Z b2, w != 0} w^(-j)`, Hecke-regularized for `j = 2`.
pub fn coset_sum(
    d: u64,
    w0: &FieldElement,
    b1: &FieldElement,
    b2: &FieldElement,
    j: u32,
    tol: &Float,
) -> Result<Complex> {
    if j < 2 {
        return Err(Error::UnsupportedParameter(format!("coset sum of order {}", j)));
    }
    let prec = tol.prec();
    let det = Rational::from(&b1.x * &b2.y) - Rational::from(&b1.y * &b2.x);
    if det == 0 {
        return Err(Error::DomainError("coset generators are dependent".into()));
    }
    let alpha = (Rational::from(&w0.x * &b2.y) - Rational::from(&w0.y * &b2.x)) / &det;
    let mut beta = (Rational::from(&b1.x * &w0.y) - Rational::from(&b1.y * &w0.x)) / &det;
    let mut b2 = b2.clone();
    if det < 0 {
        b2 = FieldElement::new(-b2.x, -b2.y);
        beta = -beta;
    }
    let (alpha, beta) = (frac(&alpha), frac(&beta));
    let omega = embed(b1, d, prec);
    let tau = &embed(&b2, d, prec) / &omega;
    let pi = Float::with_val(prec, Constant::Pi);
    let poly = cot_derivative_polynomial(j - 1);
    let mut row_factor = Float::with_val(prec, &pi).pow(j) / Float::with_val(prec, Integer::from(Integer::factorial(j - 1)));
    if j % 2 == 0 {
        row_factor = -row_factor;
    }
    let two_pi = Float::with_val(prec, &pi * 2u32);
    let small = tol.to_f64() * 1e-10;
    let row = |n: i64| -> Option<Complex> {
        let v = Rational::from(&beta + n);
        let u = Complex::from_rational(prec, &alpha) + tau.scale_rational(&v);
        if v == 0 && alpha == 0 {
            if j % 2 == 1 {
                return Some(Complex::zero(prec));
            }
            let z = Float::with_val(prec, Float::with_val(prec, j).zeta_ref()) * 2u32;
            return Some(Complex::from_real(z));
        }
        let y = u.im.to_f64().abs();
        let bound = (two_pi.to_f64() * (1.0 + y)).powi(j as i32) * (-two_pi.to_f64() * y).exp();
        if bound < small {
            return None;
        }
        Some(horner(&poly, &cot_pi(&u)).scale(&row_factor))
    };
    let mut sum = Complex::zero(prec);
    for dir in [1i64, -1] {
        let mut n = if dir == 1 { 0 } else { -1 };
        loop {
            match row(n) {
                Some(r) => sum += &r,
                None => break,
            }
            n += dir;
            if n.abs() > 1_000_000 {
                return Err(Error::SlowConvergence(n.unsigned_abs()));
            }
        }
    }
    if j == 2 {
        sum.re -= Float::with_val(prec, &pi / &tau.im);
    }
    Ok(&sum / &omega.powi(j as i64))
}

fn add(a: &FieldElement, b: &FieldElement, k: i64) -> FieldElement {
    FieldElement::new(Rational::from(&a.x + Rational::from(&b.x * k)), Rational::from(&a.y + Rational::from(&b.y * k)))
}

fn times(a: &FieldElement, k: i64) -> FieldElement {
    FieldElement::new(Rational::from(&a.x * k), Rational::from(&a.y * k))
}

fn twist_modulus(l: i64) -> u64 {
    let m = l.unsigned_abs();
    if l % 4 == 0 || (l.rem_euclid(4) == 1) {
        m
    } else {
        4 * m
    }
}

/// `(l / c N(w))`, required to be constant on the coset.
fn coset_character(atom: &LatticeAtom, w0: &FieldElement, b1: &FieldElement, b2: &FieldElement, l: i64) -> Result<i32> {
    let mut value = None;
    for m in 0..3 {
        for n in 0..3 {
            let w = add(&add(w0, b1, m), b2, n);
            let e = Rational::from(&atom.c * &w.norm(atom.d));
            if *e.denom() != 1 {
                return Err(Error::DomainError("non-integral exponent in twisted coset".into()));
            }
            let r = e.numer().mod_u(twist_modulus(l) as u32) as i64;
            let chi = kronecker(l, r);
            match value {
                None => value = Some(chi),
                Some(v) if v != chi => {
                    return Err(Error::DomainError("twist character is not constant on a coset".into()))
                }
                _ => {}
            }
        }
    }
    Ok(value.expect("nine samples"))
}

/// `L(form, k - 1)` from the coset sums of the form's atoms.
pub fn lvalue_lattice(form: &CMFormId, s: u32, ctx: &PrecisionContext) -> Result<Complex> {
    ctx.validate()?;
    form.validate()?;
    let j = form.weight - 1;
    if s != j {
        return Err(Error::UnsupportedParameter(format!("lattice route needs s = {}", j)));
    }
    let prec = ctx.prec() + 32;
    let tol = Float::with_val(prec, ctx.series_tolerance);
    let mut total = Float::with_val(prec, 0);
    for atom in &form.atoms {
        // c^(-j/2) with j even
        let half = j / 2;
        let scale = Rational::from((
            Integer::from(atom.c.denom().pow(half)),
            Integer::from(atom.c.numer().pow(half)),
        ));
        let weight = Rational::from(&atom.mult * &scale);
        match form.twist {
            None => {
                let v = coset_sum(atom.d, &atom.w0, &atom.b1, &atom.b2, j, &tol)?;
                total += Float::with_val(prec, &v.re * &weight);
            }
            Some(l) => {
                let m = twist_modulus(l) as i64;
                let (b1, b2) = (times(&atom.b1, m), times(&atom.b2, m));
                for r in 0..m {
                    for t in 0..m {
                        let w0 = add(&add(&atom.w0, &atom.b1, r), &atom.b2, t);
                        let chi = coset_character(atom, &w0, &b1, &b2, l)?;
                        if chi == 0 {
                            continue;
                        }
                        let v = coset_sum(atom.d, &w0, &b1, &b2, j, &tol)?;
                        total += Float::with_val(prec, &v.re * &weight) * chi;
                    }
                }
            }
        }
    }
    let out = Float::with_val(ctx.prec(), total);
    Ok(Complex::from_real(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cot_polynomials() {
        assert_eq!(cot_derivative_polynomial(1), vec![-1, 0, -1]);
        assert_eq!(cot_derivative_polynomial(2), vec![0, 2, 0, 2]);
    }

    #[test]
    fn gaussian_lattice_sum_vanishes_at_order_two() {
        // G_2^*(i) = 0
        let one = FieldElement::new(Rational::from(1), Rational::new());
        let i = FieldElement::new(Rational::new(), Rational::from(1));
        let tol = Float::with_val(300, 1e-60);
        let v = coset_sum(1, &FieldElement::zero(), &one, &i, 2, &tol).unwrap();
        assert!(v.abs() < 1e-60);
        // and sum w^-4 = 2 G_4(i) is positive
        let v = coset_sum(1, &FieldElement::zero(), &one, &i, 4, &tol).unwrap();
        assert!(v.re > 3 && v.im.clone().abs() < 1e-60);
    }
}
