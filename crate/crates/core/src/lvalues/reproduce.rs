//! Reproduction of the modularity tables and the L-value chains, one
//! report per row, rows evaluated in parallel and returned in fixture order.

use super::afe::{lvalue_afe_detailed, AFE_TOLERANCE};
use super::atoms::{evaluate_kind, lvalue_eisenstein};
use super::chowla::chowla_selberg;
use super::coset::lvalue_lattice;
use super::report::{LValueReport, ReportBuilder, Route, SuiteReport};
use super::tables::{load_chains, load_table4, load_tables, Chain, HauptmodulRow, Quantity, SingularModulus, SingularRow};
use crate::arith::{form_by_label, CMFormId};
use crate::error::{Error, Result};
use crate::hypergeom::{pfq_extended, Argument, HypergeometricDatum};
use crate::modforms::{hauptmodul, j_invariant};
use crate::numerics::algexpr::{eval_complex, eval_rational};
use crate::numerics::{Complex, PrecisionContext};
use rayon::prelude::*;
use rug::{Float, Rational};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuiteId {
    Table1a,
    Table1b,
    Table3,
    IntroChain,
    Cor716,
    ThmCVersion,
    Thm300,
    HigherWeight,
    SpecialValues,
}

impl SuiteId {
    pub const ALL: [SuiteId; 9] = [
        SuiteId::Table1a,
        SuiteId::Table1b,
        SuiteId::Table3,
        SuiteId::IntroChain,
        SuiteId::Cor716,
        SuiteId::ThmCVersion,
        SuiteId::Thm300,
        SuiteId::HigherWeight,
        SuiteId::SpecialValues,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SuiteId::Table1a => "table1a",
            SuiteId::Table1b => "table1b",
            SuiteId::Table3 => "table3",
            SuiteId::IntroChain => "intro_chain",
            SuiteId::Cor716 => "cor716",
            SuiteId::ThmCVersion => "thm_C_version",
            SuiteId::Thm300 => "thm_300",
            SuiteId::HigherWeight => "higher_weight",
            SuiteId::SpecialValues => "special_values",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL
            .iter()
            .find(|id| id.name() == s)
            .copied()
            .ok_or_else(|| Error::Unknown(format!("suite {}", s)))
    }
}

fn digits(ctx: &PrecisionContext) -> usize {
    (ctx.working_precision_bits as f64 * std::f64::consts::LOG10_2).floor() as usize
}

fn builder(suite: SuiteId, id: &str, label: &str, s: u32, ctx: &PrecisionContext) -> ReportBuilder {
    ReportBuilder::new(suite.name(), id, label, s, ctx.identity_tolerance, AFE_TOLERANCE, digits(ctx))
}

/// The Eisenstein-atom value, or the coset route for forms without a
/// decomposition.
pub fn primary_lvalue(form: &CMFormId, s: u32, ctx: &PrecisionContext) -> Result<(Route, Complex)> {
    match lvalue_eisenstein(form, s, ctx) {
        Ok(v) => Ok((Route::Eisenstein, v)),
        Err(Error::NoDecomposition(_)) => Ok((Route::Lattice, lvalue_lattice(form, s, ctx)?)),
        Err(e) => Err(e),
    }
}

/// `3F2({1/2, 1/d, 1-1/d}; {1, 1}; t)`, continued past `t < -1`.
pub fn clausen_value(d: u32, t: &Rational, ctx: &PrecisionContext) -> Result<Complex> {
    pfq_extended(&HypergeometricDatum::hd3(d, Argument::Rational(t.clone()))?, ctx)
}

fn pi_squared(prec: u32) -> Complex {
    let p = Complex::pi(prec);
    Complex::from_real(Float::with_val(prec, p.square_ref()))
}

fn positivity(v: &Complex) -> f64 {
    if v.re > 0 {
        v.im.to_f64().abs()
    } else {
        f64::INFINITY
    }
}

/// Values shared by every modularity row: the Eisenstein (or coset), coset and
/// AFE routes, each times `scale`.
fn route_values(b: &mut ReportBuilder, form: &CMFormId, scale: &Complex, ctx: &PrecisionContext) {
    let s = form.weight - 1;
    match primary_lvalue(form, s, ctx) {
        Ok((route, l)) => {
            let name = if route == Route::Eisenstein { "C*L(eisenstein)" } else { "C*L(lattice)" };
            b.check("L real and positive", Ok(positivity(&l)), ctx.identity_tolerance);
            b.value(name, route, Ok(&l * scale));
            if route == Route::Eisenstein {
                b.value("C*L(lattice)", Route::Lattice, lvalue_lattice(form, s, ctx).map(|v| &v * scale));
            }
        }
        Err(e) => b.error(e),
    }
    match lvalue_afe_detailed(form, s, ctx) {
        Ok(a) => {
            b.root_number(a.root_number);
            b.value("C*L(afe)", Route::Afe, Ok(&a.value * scale));
        }
        Err(e) => b.error(e),
    }
}

fn hauptmodul_report(suite: SuiteId, row: &HauptmodulRow, ctx: &PrecisionContext) -> LValueReport {
    let prec = ctx.prec();
    let id = format!("d={},t={}", row.d, row.t);
    let mut b = builder(suite, &id, &row.label, 2, ctx);
    b.meta("d", row.d);
    b.meta("t", &row.t);
    b.meta("tau", &row.tau_text);
    b.meta("C", &row.c_text);
    if let Some((w, _, d)) = &row.omega {
        b.meta("L", format!("{}*Omega_-{}^2", w, d));
    }
    let ht = hauptmodul(row.d, &row.tau, ctx).map(|h| h.dist(&Complex::from_rational(prec, &row.t)).to_f64());
    b.check("t_d(tau) = t", ht, ctx.identity_tolerance);
    let (form, c) = match (form_by_label(&row.label), eval_complex(&row.c, prec)) {
        (Ok(f), Ok(c)) => (f, c),
        (Err(e), _) | (_, Err(e)) => {
            b.error(e);
            return b.finish();
        }
    };
    route_values(&mut b, &form, &c, ctx);
    b.value("pi^2*3F2", Route::ClosedForm, clausen_value(row.d, &row.t, ctx).map(|f| &f * &pi_squared(prec)));
    if let Some((_, w, d)) = &row.omega {
        let v = eval_complex(w, prec).and_then(|w| {
            let om = chowla_selberg(*d, ctx)?;
            let om2 = Complex::from_real(Float::with_val(prec, om.square_ref()));
            Ok(&(&w * &om2) * &c)
        });
        b.value("C*w*Omega^2", Route::ClosedForm, v);
    }
    b.finish()
}

fn singular_report(row: &SingularRow, table4: &[SingularModulus], ctx: &PrecisionContext) -> LValueReport {
    let prec = ctx.prec();
    let id = format!("D={}", row.disc);
    let mut b = builder(SuiteId::Table1b, &id, &row.label, 2, ctx);
    b.meta("D", row.disc);
    b.meta("tau", &row.tau_text);
    b.meta("a_D", &row.a_text);
    if let Some((w, _)) = &row.omega {
        b.meta("L", format!("{}*Omega_-{}^2", w, row.disc));
    }
    let entry = table4.iter().find(|e| e.disc == -(row.disc as i64) && e.tau == row.tau);
    let Some(entry) = entry else {
        b.error(Error::Fixture(format!("no singular modulus for D = {}", row.disc)));
        return b.finish();
    };
    b.meta("j", &entry.j_text);
    let jc = eval_complex(&entry.j, prec).and_then(|exact| {
        let j = j_invariant(&row.tau, ctx)?;
        Ok(Float::with_val(prec, j.dist(&exact) / exact.abs()).to_f64())
    });
    b.check("j(tau) = Table 4 (relative)", jc, ctx.identity_tolerance);
    let (form, a) = match (form_by_label(&row.label), eval_complex(&row.a, prec)) {
        (Ok(f), Ok(a)) => (f, a),
        (Err(e), _) | (_, Err(e)) => {
            b.error(e);
            return b.finish();
        }
    };
    route_values(&mut b, &form, &a, ctx);
    let f = eval_rational(&entry.j).and_then(|j| {
        if j == 0 {
            return Err(Error::DomainError("j = 0".into()));
        }
        let t = Rational::from(1728) / j;
        Ok(&clausen_value(6, &t, ctx)? * &pi_squared(prec))
    });
    b.value("pi^2*3F2(1728/j)", Route::ClosedForm, f);
    if let Some((_, w)) = &row.omega {
        let v = eval_complex(w, prec).and_then(|w| {
            let om = chowla_selberg(row.disc, ctx)?;
            let om2 = Complex::from_real(Float::with_val(prec, om.square_ref()));
            Ok(&(&w * &om2) * &a)
        });
        b.value("a_D*w*Omega^2", Route::ClosedForm, v);
    }
    b.finish()
}

fn quantity_value(q: &Quantity, ctx: &PrecisionContext, b: &mut ReportBuilder) -> Result<Complex> {
    match q {
        Quantity::Eisenstein(l) => {
            let f = form_by_label(l)?;
            Ok(primary_lvalue(&f, f.weight - 1, ctx)?.1)
        }
        Quantity::Lattice(l) => {
            let f = form_by_label(l)?;
            lvalue_lattice(&f, f.weight - 1, ctx)
        }
        Quantity::Afe(l) => {
            let f = form_by_label(l)?;
            let a = lvalue_afe_detailed(&f, f.weight - 1, ctx)?;
            b.root_number(a.root_number);
            Ok(a.value)
        }
        Quantity::Omega { d, power } => Ok(Complex::from_real(chowla_selberg(*d, ctx)?).powi(*power)),
        Quantity::Hypergeometric { d, t, power } => Ok(clausen_value(*d, t, ctx)?.powi(*power)),
        Quantity::Atom { kind, tau } => evaluate_kind(*kind, tau, ctx),
    }
}

fn chain_label(chain: &Chain) -> Option<String> {
    chain.terms.iter().flat_map(|t| &t.pieces).find_map(|p| match &p.quantity {
        Quantity::Eisenstein(l) | Quantity::Lattice(l) | Quantity::Afe(l) => Some(l.clone()),
        _ => None,
    })
}

fn chain_report(suite: SuiteId, chain: &Chain, ctx: &PrecisionContext) -> LValueReport {
    let prec = ctx.prec();
    let label = chain_label(chain).unwrap_or_default();
    let s = form_by_label(&label).map(|f| f.weight - 1).unwrap_or(0);
    let mut b = builder(suite, &chain.name, &label, s, ctx);
    b.meta("terms", chain.terms.len());
    for (i, term) in chain.terms.iter().enumerate() {
        let route = if term.uses_afe() {
            Route::Afe
        } else if term.pieces.iter().all(|p| matches!(p.quantity, Quantity::Eisenstein(_))) {
            Route::Eisenstein
        } else if term.pieces.iter().all(|p| matches!(p.quantity, Quantity::Lattice(_))) {
            Route::Lattice
        } else {
            Route::ClosedForm
        };
        let mut sum = Ok(Complex::zero(prec));
        for p in &term.pieces {
            sum = sum.and_then(|acc| {
                let c = eval_complex(&p.coefficient, prec)?;
                let v = quantity_value(&p.quantity, ctx, &mut b)?;
                Ok(&acc + &(&c * &v))
            });
        }
        if i == 0 {
            if let Ok(v) = &sum {
                b.check("value real and positive", Ok(positivity(v)), ctx.identity_tolerance);
            }
        }
        b.value(&term.text, route, sum);
    }
    b.finish()
}

/// Reports for every row of a suite, in fixture order.
pub fn reproduce(suite: SuiteId, ctx: &PrecisionContext) -> Result<Vec<LValueReport>> {
    ctx.validate()?;
    let rows = match suite {
        SuiteId::Table1a => load_tables()?.table1a.par_iter().map(|r| hauptmodul_report(suite, r, ctx)).collect(),
        SuiteId::Table3 => load_tables()?.table3.par_iter().map(|r| hauptmodul_report(suite, r, ctx)).collect(),
        SuiteId::Table1b => {
            let t4 = load_table4()?;
            load_tables()?.table1b.par_iter().map(|r| singular_report(r, &t4, ctx)).collect()
        }
        _ => load_chains()?
            .par_iter()
            .filter(|c| c.suite == suite.name())
            .map(|c| chain_report(suite, c, ctx))
            .collect(),
    };
    Ok(rows)
}

pub fn reproduce_suite(suite: SuiteId, ctx: &PrecisionContext) -> Result<SuiteReport> {
    let rows = reproduce(suite, ctx)?;
    Ok(SuiteReport::new(suite.name(), ctx.working_precision_bits, ctx.identity_tolerance, AFE_TOLERANCE, rows))
}

/// Every available route for one form at `s` (default `k - 1`): the Eisenstein
/// atoms, the coset sum and the AFE.
pub fn single_lvalue(label: &str, s: Option<u32>, ctx: &PrecisionContext) -> Result<LValueReport> {
    ctx.validate()?;
    let form = form_by_label(label)?;
    let s = s.unwrap_or(form.weight - 1);
    if s == 0 || s >= form.weight {
        return Err(Error::DomainError(format!("s = {} is not critical for weight {}", s, form.weight)));
    }
    let mut b = ReportBuilder::new("value", label, &form.label, s, ctx.identity_tolerance, AFE_TOLERANCE, digits(ctx));
    b.meta("level", form.level);
    b.meta("weight", form.weight);
    match lvalue_eisenstein(&form, s, ctx) {
        Ok(v) => b.value("L(eisenstein)", Route::Eisenstein, Ok(v)),
        Err(Error::NoDecomposition(_)) => {}
        Err(e) => b.error(e),
    }
    if s == form.weight - 1 {
        let l = lvalue_lattice(&form, s, ctx);
        if let Ok(v) = &l {
            b.check("L real and positive", Ok(positivity(v)), ctx.identity_tolerance);
        }
        b.value("L(lattice)", Route::Lattice, l);
    }
    match lvalue_afe_detailed(&form, s, ctx) {
        Ok(a) => {
            b.root_number(a.root_number);
            b.value("L(afe)", Route::Afe, Ok(a.value));
        }
        Err(e) => b.error(e),
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_ids_round_trip() {
        for id in SuiteId::ALL {
            assert_eq!(id.name().parse::<SuiteId>().unwrap(), id);
        }
        assert!("table2".parse::<SuiteId>().is_err());
    }
}
