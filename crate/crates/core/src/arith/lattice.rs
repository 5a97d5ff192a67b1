//! CM newforms written as finite sums of lattice atoms, and their exact
//! Fourier coefficients.
//!
//! An atom `(D, c, w0, b1, b2, mult)` contributes
//! `mult * c^((k-1)/2) * Re(w^(k-1)) q^(c N(w))` for every
//! `w = w0 + m b1 + n b2`, where elements `x + y sqrt(-D)` of the CM field
//! are stored as rational pairs.

use crate::error::{Error, Result};
use crate::numerics::numtheory::{gcd, kronecker};
use rug::ops::Pow;
use rug::{Integer, Rational};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// `x + y sqrt(-D)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub x: Rational,
    pub y: Rational,
}

impl FieldElement {
    pub fn new(x: Rational, y: Rational) -> Self {
        FieldElement { x, y }
    }

    pub fn zero() -> Self {
        FieldElement::new(Rational::new(), Rational::new())
    }

    pub fn norm(&self, d: u64) -> Rational {
        Rational::from(&self.x * &self.x) + Rational::from(&self.y * &self.y) * d
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeAtom {
    pub d: u64,
    pub c: Rational,
    pub w0: FieldElement,
    pub b1: FieldElement,
    pub b2: FieldElement,
    pub mult: Rational,
}

/// A CM newform: level, weight, CM field, nebentypus and its atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CMFormId {
    pub label: String,
    pub level: u64,
    pub weight: u32,
    /// Discriminant of the CM field.
    pub field_discriminant: i64,
    /// Kronecker discriminant of the nebentypus.
    pub nebentypus: i64,
    /// Optional quadratic twist `(l/.)` applied to the atom sum.
    pub twist: Option<i64>,
    pub atoms: Vec<LatticeAtom>,
}

impl CMFormId {
    /// `chi_K(p)`; `-1` marks an inert prime.
    pub fn chi_field(&self, p: u64) -> i32 {
        kronecker(self.field_discriminant, p as i64)
    }

    pub fn chi_nebentypus(&self, p: u64) -> i32 {
        kronecker(self.nebentypus, p as i64)
    }

    pub fn validate(&self) -> Result<()> {
        if !matches!(self.weight, 3 | 5 | 7) {
            return Err(Error::Fixture(format!("{}: weight {} not in {{3, 5, 7}}", self.label, self.weight)));
        }
        if self.level == 0 || self.atoms.is_empty() {
            return Err(Error::Fixture(format!("{}: empty form", self.label)));
        }
        for a in &self.atoms {
            if a.d == 0 || a.c <= 0 {
                return Err(Error::Fixture(format!("{}: degenerate atom", self.label)));
            }
            let det = Rational::from(&a.b1.x * &a.b2.y) - Rational::from(&a.b1.y * &a.b2.x);
            if det == 0 {
                return Err(Error::Fixture(format!("{}: atom generators are dependent", self.label)));
            }
        }
        Ok(())
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn denom_u64(r: &Rational) -> Result<u64> {
    r.denom().to_u64().ok_or_else(|| Error::Fixture("denominator too large".into()))
}

fn scaled(r: &Rational, l: u64) -> Result<i64> {
    let v = Rational::from(r * l);
    if *v.denom() != 1 {
        return Err(Error::Fixture("inconsistent scaling".into()));
    }
    v.numer().to_i64().ok_or_else(|| Error::Fixture("coordinate too large".into()))
}

/// `Re (X + Y sqrt(-D))^e` as an exact integer.
fn real_power(x: i64, y: i64, d: u64, e: u32) -> Integer {
    let (mut re, mut im) = (Integer::from(1), Integer::new());
    let (xi, yi, di) = (Integer::from(x), Integer::from(y), Integer::from(d));
    for _ in 0..e {
        let nre = Integer::from(&re * &xi) - Integer::from(&im * &yi) * &di;
        let nim = Integer::from(&re * &yi) + Integer::from(&im * &xi);
        re = nre;
        im = nim;
    }
    re
}

/// Coefficients `a_0..=a_nmax` of one atom, before twisting.
fn atom_coefficients(atom: &LatticeAtom, weight: u32, nmax: u64) -> Result<Vec<Rational>> {
    let mut l = 1u64;
    for e in [&atom.w0, &atom.b1, &atom.b2] {
        l = lcm(l, lcm(denom_u64(&e.x)?, denom_u64(&e.y)?));
    }
    let d = atom.d;
    let coords = |e: &FieldElement| -> Result<(i64, i64)> { Ok((scaled(&e.x, l)?, scaled(&e.y, l)?)) };
    let (x0, y0) = coords(&atom.w0)?;
    let (x1, y1) = coords(&atom.b1)?;
    let (x2, y2) = coords(&atom.b2)?;
    // |w|^2 = N(w) <= nmax / c in the scaled coordinates: X^2 + D Y^2 <= R2
    let r2 = Rational::from(nmax) / &atom.c * (l * l);
    let r2f = r2.to_f64();
    let df = d as f64;
    let a = (x1 * x1) as f64 + df * (y1 * y1) as f64;
    let b = 2.0 * ((x1 * x2) as f64 + df * (y1 * y2) as f64);
    let cc = (x2 * x2) as f64 + df * (y2 * y2) as f64;
    let disc = 4.0 * a * cc - b * b;
    if disc <= 0.0 {
        return Err(Error::Fixture("atom lattice is degenerate".into()));
    }
    let radius = r2f.sqrt() + ((x0 * x0) as f64 + df * (y0 * y0) as f64).sqrt();
    let mbound = (radius * (4.0 * cc / disc).sqrt()).ceil() as i64 + 1;
    let nbound = (radius * (4.0 * a / disc).sqrt()).ceil() as i64 + 1;

    let e = weight - 1;
    let mut sums: HashMap<u64, Integer> = HashMap::new();
    let c_num = atom.c.numer().clone();
    let c_den = atom.c.denom().clone();
    let l2 = Integer::from(l) * l;
    for m in -mbound..=mbound {
        for n in -nbound..=nbound {
            let x = x0 + m * x1 + n * x2;
            let y = y0 + m * y1 + n * y2;
            let nrm = Integer::from(x) * x + Integer::from(d) * y * y;
            if nrm == 0 {
                continue;
            }
            // exponent c N(w) = c_num nrm / (c_den l^2)
            let num = Integer::from(&c_num * &nrm);
            let den = Integer::from(&c_den * &l2);
            if num > Integer::from(&den * nmax) {
                continue;
            }
            if !num.is_divisible(&den) {
                return Err(Error::Fixture(format!("non-integral exponent {}/{}", num, den)));
            }
            let k = Integer::from(num / &den).to_u64().expect("bounded by nmax");
            *sums.entry(k).or_default() += real_power(x, y, d, e);
        }
    }
    // a_k += mult c^{e/2} sums[k] / l^e
    let half = e / 2;
    let c_pow = Rational::from((Integer::from((&c_num).pow(half)), Integer::from((&c_den).pow(half))));
    let factor = Rational::from(&atom.mult * &c_pow) / Integer::from(l).pow(e);
    let mut out = vec![Rational::new(); nmax as usize + 1];
    for (k, s) in sums {
        out[k as usize] += Rational::from(&factor * &Rational::from(s));
    }
    Ok(out)
}

/// `a_0..=a_nmax` of the form, with the twist applied; fails unless every
/// coefficient is an integer.
pub fn lattice_coefficients_uncached(form: &CMFormId, nmax: u64) -> Result<Vec<Integer>> {
    form.validate()?;
    let mut acc = vec![Rational::new(); nmax as usize + 1];
    for atom in &form.atoms {
        let part = atom_coefficients(atom, form.weight, nmax)?;
        for (a, p) in acc.iter_mut().zip(part) {
            *a += p;
        }
    }
    let mut out = Vec::with_capacity(acc.len());
    for (n, a) in acc.into_iter().enumerate() {
        if *a.denom() != 1 {
            return Err(Error::Fixture(format!("{}: a_{} = {} is not an integer", form.label, n, a)));
        }
        let mut v = a.numer().clone();
        if let Some(l) = form.twist {
            v *= kronecker(l, n as i64);
        }
        out.push(v);
    }
    Ok(out)
}

type CoeffCache = RwLock<HashMap<CMFormId, Arc<Vec<Integer>>>>;

fn cache() -> &'static CoeffCache {
    static CACHE: OnceLock<CoeffCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Memoized `a_0..=a_nmax`; the cache keeps the longest list per form.
pub fn lattice_coefficients(form: &CMFormId, nmax: u64) -> Result<Arc<Vec<Integer>>> {
    if let Some(v) = cache().read().expect("cache poisoned").get(form) {
        if v.len() as u64 > nmax {
            return Ok(v.clone());
        }
    }
    let bound = nmax.max(64).next_power_of_two();
    let v = Arc::new(lattice_coefficients_uncached(form, bound)?);
    cache().write().expect("cache poisoned").insert(form.clone(), v.clone());
    Ok(v)
}

/// The `n`-th Fourier coefficient.
pub fn lattice_an(form: &CMFormId, n: u64) -> Result<Integer> {
    if n == 0 {
        return Err(Error::DomainError("coefficients are indexed from n = 1".into()));
    }
    Ok(lattice_coefficients(form, n)?[n as usize].clone())
}
