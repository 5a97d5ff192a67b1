//! Trace identities `a_p(f) = H_p(HD3(d; t)) - eps p` between CM newforms
//! and finite-field hypergeometric traces, with the inert-prime rule.

use super::curves::check_odd_prime;
use super::field::legendre;
use super::lattice::{lattice_coefficients, CMFormId};
use super::traces::{hp_with_branch, is_bad_for_parameter, ClausenBranch, FiniteFieldDatum};
use crate::error::{Error, Result};
use crate::numerics::numtheory::{kronecker, primes_up_to, rational_mod_p};
use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceCheck {
    pub label: String,
    pub d: u32,
    pub t: String,
    pub p: u64,
    pub inert: bool,
    pub branch: Option<ClausenBranch>,
    /// `H_p(HD3(d; t))`, absent at inert primes.
    pub hp: Option<i64>,
    pub expected: i64,
    pub actual: i64,
    pub pass: bool,
}

impl TraceCheck {
    pub fn discrepancy(&self) -> i64 {
        self.actual - self.expected
    }
}

fn small(a: &Integer) -> Result<i64> {
    a.to_i64().ok_or_else(|| Error::DomainError("coefficient exceeds i64".into()))
}

/// `true` when `p` is excluded for the pair `(t, form)`.
pub fn is_bad_prime(t: &Rational, p: u64, form: &CMFormId) -> bool {
    is_bad_for_parameter(t, p) || form.level % p == 0
}

/// Checks the trace identity at one prime. Inert primes must satisfy `a_p = 0`.
pub fn verify_trace_identity(d: u32, t: &Rational, p: u64, form: &CMFormId) -> Result<TraceCheck> {
    check_odd_prime(p)?;
    if is_bad_prime(t, p, form) {
        return Err(Error::BadReduction(p));
    }
    let actual = small(&lattice_coefficients(form, p)?[p as usize])?;
    let inert = form.chi_field(p) == -1;
    let (hp, branch, expected) = if inert {
        (None, None, 0)
    } else {
        let (h, branch) = hp_with_branch(&FiniteFieldDatum::hd3(d, t.clone())?, p)?;
        let branch = branch.expect("HD3 reports a branch");
        let eps = match branch {
            ClausenBranch::RationalSquare => kronecker(form.field_discriminant, p as i64) as i64,
            _ => {
                let one_minus = Rational::from(1) - t;
                let r = rational_mod_p(one_minus.numer(), one_minus.denom(), p).ok_or(Error::BadReduction(p))?;
                legendre(r, p)
            }
        };
        (Some(h), Some(branch), h - eps * p as i64)
    };
    Ok(TraceCheck {
        label: form.label.clone(),
        d,
        t: t.to_string(),
        p,
        inert,
        branch,
        hp,
        expected,
        actual,
        pass: expected == actual,
    })
}

/// The identity at every good prime `5 <= p < bound`, in increasing `p`.
pub fn trace_sweep(d: u32, t: &Rational, form: &CMFormId, bound: u64) -> Result<Vec<TraceCheck>> {
    let primes: Vec<u64> = primes_up_to(bound.saturating_sub(1))
        .into_iter()
        .filter(|&p| p >= 5 && !is_bad_prime(t, p, form))
        .collect();
    if let Some(&pmax) = primes.last() {
        lattice_coefficients(form, pmax)?;
    }
    primes.par_iter().map(|&p| verify_trace_identity(d, t, p, form)).collect()
}

/// `(a_{p^2}, a_p^2 - chi(p) p^(k-1))` for a prime `p` not dividing the level.
pub fn euler_factor_sides(form: &CMFormId, p: u64) -> Result<(Integer, Integer)> {
    if form.level % p == 0 {
        return Err(Error::BadReduction(p));
    }
    let a = lattice_coefficients(form, p * p)?;
    let ap = &a[p as usize];
    let rhs = Integer::from(ap * ap) - Integer::from(form.chi_nebentypus(p)) * Integer::from(p).pow(form.weight - 1);
    Ok((a[(p * p) as usize].clone(), rhs))
}

/// `|a_p| <= 2 p^((k-1)/2)`.
pub fn satisfies_ramanujan_bound(form: &CMFormId, p: u64) -> Result<bool> {
    let a = lattice_coefficients(form, p)?;
    let ap = Integer::from(&a[p as usize] * &a[p as usize]);
    let bound = Integer::from(4u32) * Integer::from(p).pow(form.weight - 1);
    Ok(ap <= bound)
}
