//! Residual suites over the transformation catalog, the modular identity
//! catalog, the special values, the finite-field trace identities and the
//! agreement of the Eisenstein and AFE routes.

use crate::arith::identity::is_bad_prime;
use crate::arith::{
    clausen_hd2_trace, euler_factor_sides, form_by_label, load_forms, satisfies_ramanujan_bound, trace_sweep,
    ClausenBranch, TraceCheck,
};
use crate::error::{Error, Result};
use crate::hypergeom::{sample_points, verify_transform, TransformId};
use crate::lvalues::report::sci;
use crate::lvalues::{lvalue_afe_detailed, lvalue_eisenstein, load_table4, load_tables, Format, AFE_TOLERANCE};
use crate::lvalues::afe::ROOT_NUMBER_TOLERANCE;
use crate::modforms::identities::{level5_series_identity, verify_with_samples, EisensteinIdentity};
use crate::modforms::{j_invariant, load_u6_values, u6};
use crate::numerics::algexpr::eval_complex;
use crate::numerics::numtheory::primes_up_to;
use crate::numerics::PrecisionContext;
use rayon::prelude::*;
use rug::Rational;
use serde::Serialize;
use std::fmt::Write;

/// Forms whose Eisenstein and AFE values are compared by default.
pub const AFE_FORMS: [&str; 7] =
    ["f12.3.c.a", "f16.3.c.a", "f27.3.b.a", "f32.3.d.a", "f48.3.e.a", "f112.3.c.a", "f144.3.g.a"];

/// Default bound for the Hasse and Euler-factor checks.
pub const EULER_BOUND: u64 = 50;

/// Order to which the level-5 relation is compared coefficientwise.
pub const LEVEL5_ORDER: usize = 60;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// Largest residual, in scientific notation.
    pub residual: Option<String>,
    pub tolerance: Option<f64>,
    pub samples: usize,
    pub detail: Option<String>,
    pub pass: bool,
}

impl Check {
    fn residual(name: impl Into<String>, r: Result<f64>, tolerance: f64, samples: usize) -> Check {
        match r {
            Ok(r) => Check {
                name: name.into(),
                residual: Some(sci(r)),
                tolerance: Some(tolerance),
                samples,
                detail: None,
                pass: r < tolerance,
            },
            Err(e) => Check::error(name, e),
        }
    }

    fn exact(name: impl Into<String>, pass: bool, samples: usize, detail: impl Into<String>) -> Check {
        Check { name: name.into(), residual: None, tolerance: None, samples, detail: Some(detail.into()), pass }
    }

    fn error(name: impl Into<String>, e: Error) -> Check {
        Check { name: name.into(), residual: None, tolerance: None, samples: 0, detail: Some(e.to_string()), pass: false }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Check {
        self.detail = Some(detail.into());
        self
    }
}

/// The outcome of one residual suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub precision_bits: u32,
    pub checks: Vec<Check>,
    /// Names of the failing checks.
    pub failures: Vec<String>,
    pub pass: bool,
}

impl CheckReport {
    pub fn new(suite: &str, precision_bits: u32, checks: Vec<Check>) -> Self {
        let failures: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
        CheckReport {
            suite: suite.to_string(),
            precision_bits,
            pass: failures.is_empty() && !checks.is_empty(),
            checks,
            failures,
        }
    }

    /// Worst residual among the checks that report one.
    pub fn max_residual(&self) -> Option<f64> {
        self.checks
            .iter()
            .filter_map(|c| c.residual.as_deref())
            .filter_map(|r| r.parse::<f64>().ok())
            .fold(None, |m, r| Some(m.map_or(r, |m: f64| m.max(r))))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "### {}\n", self.suite);
        let _ = writeln!(out, "| check | residual | tolerance | samples | detail | pass |");
        let _ = writeln!(out, "|---|---|---|---|---|---|");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} |",
                c.name,
                c.residual.as_deref().unwrap_or("-"),
                c.tolerance.map(sci).unwrap_or_else(|| "-".into()),
                c.samples,
                c.detail.as_deref().unwrap_or(""),
                if c.pass { "yes" } else { "NO" },
            );
        }
        let _ = writeln!(out, "\n{}", self.summary());
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = write!(out, "{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
            if let Some(r) = &c.residual {
                let _ = write!(out, " residual={}", r);
            }
            if let Some(d) = &c.detail {
                let _ = write!(out, " ({})", d);
            }
            out.push('\n');
        }
        let _ = writeln!(out, "{}", self.summary());
        out
    }

    fn summary(&self) -> String {
        let passed = self.checks.len() - self.failures.len();
        match self.max_residual() {
            Some(m) => format!("{}: {}/{} checks pass, max residual {}", self.suite, passed, self.checks.len(), sci(m)),
            None => format!("{}: {}/{} checks pass", self.suite, passed, self.checks.len()),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Markdown => self.to_markdown(),
            Format::Text => self.to_text(),
        }
    }
}

/// Each transformation at `samples` seeded admissible points.
pub fn transform_suite(ids: &[TransformId], samples: usize, seed: u64, ctx: &PrecisionContext) -> Result<CheckReport> {
    ctx.validate()?;
    let checks = ids
        .par_iter()
        .map(|&id| {
            let points = sample_points(id, samples, seed);
            let mut worst = 0f64;
            for (t, z) in &points {
                match verify_transform(t, z, ctx) {
                    Ok(r) => worst = worst.max(r.to_f64()),
                    Err(e) => return Check::error(id.name(), e),
                }
            }
            let mut c = Check::residual(id.name(), Ok(worst), ctx.identity_tolerance, points.len());
            if points.len() < samples {
                c.pass = false;
                c = c.with_detail(format!("only {} of {} admissible samples", points.len(), samples));
            } else {
                c = c.with_detail(id.argument_map());
            }
            c
        })
        .collect();
    Ok(CheckReport::new("transformations", ctx.working_precision_bits, checks))
}

/// The modular identity catalog at `samples` seeded points each, followed by
/// the exact level-5 series relation.
pub fn identity_suite(
    ids: &[EisensteinIdentity],
    samples: usize,
    seed: u64,
    ctx: &PrecisionContext,
) -> Result<CheckReport> {
    ctx.validate()?;
    let mut checks: Vec<Check> = ids
        .par_iter()
        .map(|&id| {
            let r = verify_with_samples(id, samples, seed, ctx).map(|r| r.to_f64());
            Check::residual(id.to_string(), r, ctx.identity_tolerance, samples)
        })
        .collect();
    let exact = level5_series_identity(LEVEL5_ORDER);
    checks.push(match exact {
        Ok(ok) => Check::exact("level5_y6_series", ok, LEVEL5_ORDER, format!("coefficients to q^{}", LEVEL5_ORDER - 1)),
        Err(e) => Check::error("level5_y6_series", e),
    });
    Ok(CheckReport::new("identities", ctx.working_precision_bits, checks))
}

/// Tabulated values of `u_6` and the singular moduli of Table 4; `j` is
/// compared relative to its size.
pub fn special_value_suite(ctx: &PrecisionContext) -> Result<CheckReport> {
    ctx.validate()?;
    let prec = ctx.prec();
    let mut checks: Vec<Check> = load_u6_values()?
        .par_iter()
        .map(|row| {
            let r = (|| {
                let want = eval_complex(&row.value, prec)?;
                Ok(u6(&row.tau, ctx)?.dist(&want).to_f64())
            })();
            Check::residual(format!("u6({})", row.tau_text), r, ctx.identity_tolerance, 1).with_detail(row.value_text.clone())
        })
        .collect();
    let j: Vec<Check> = load_table4()?
        .par_iter()
        .map(|row| {
            let r = (|| {
                let want = eval_complex(&row.j, prec)?;
                let got = j_invariant(&row.tau, ctx)?;
                let scale = want.abs().to_f64().max(1.0);
                Ok(got.dist(&want).to_f64() / scale)
            })();
            Check::residual(format!("j({}) D={}", row.tau_text, row.disc), r, ctx.identity_tolerance, 1)
                .with_detail(row.j_text.clone())
        })
        .collect();
    checks.extend(j);
    Ok(CheckReport::new("special_values", ctx.working_precision_bits, checks))
}

/// Every distinct `(d, t, form)` of the modularity tables, in table order.
pub fn table_pairs() -> Result<Vec<(u32, Rational, String)>> {
    let t = load_tables()?;
    let mut out: Vec<(u32, Rational, String)> = vec![];
    for r in t.table1a.iter().chain(t.table3.iter()) {
        if !out.iter().any(|(d, t, l)| *d == r.d && *t == r.t && *l == r.label) {
            out.push((r.d, r.t.clone(), r.label.clone()));
        }
    }
    Ok(out)
}

fn sweep_check(d: u32, t: &Rational, label: &str, bound: u64) -> (Check, Vec<TraceCheck>) {
    let name = format!("traces d={} t={} {}", d, t, label);
    let sweep = form_by_label(label).and_then(|f| trace_sweep(d, t, &f, bound));
    match sweep {
        Ok(v) => {
            let failed: Vec<u64> = v.iter().filter(|c| !c.pass).map(|c| c.p).collect();
            let inert = v.iter().filter(|c| c.inert).count();
            let detail = if failed.is_empty() {
                format!("{} primes, {} inert", v.len(), inert)
            } else {
                format!("fails at p = {:?}", failed)
            };
            (Check::exact(name, failed.is_empty() && !v.is_empty(), v.len(), detail), v)
        }
        Err(e) => (Check::error(name, e), vec![]),
    }
}

/// Trace identities at every good prime below `prime_bound` for every table
/// pair, both Clausen branches and the inert rule exercised, the Hasse bound
/// for the curves `E_d(z)` with `t = 4z(1-z)` and the Euler factor and Ramanujan bound for every
/// fixture form below `euler_bound`.
pub fn finite_field_suite(prime_bound: u64, euler_bound: u64) -> Result<CheckReport> {
    if prime_bound < 5 {
        return Err(Error::UnsupportedParameter(format!("prime bound {} below 5", prime_bound)));
    }
    let pairs = table_pairs()?;
    let sweeps: Vec<(Check, Vec<TraceCheck>)> =
        pairs.par_iter().map(|(d, t, l)| sweep_check(*d, t, l, prime_bound)).collect();
    let all: Vec<&TraceCheck> = sweeps.iter().flat_map(|(_, v)| v.iter()).collect();
    let mut checks: Vec<Check> = sweeps.iter().map(|(c, _)| c.clone()).collect();
    for (branch, name) in [
        (ClausenBranch::SquareModP, "clausen branch: 1-t square mod p"),
        (ClausenBranch::NonSquareModP, "clausen branch: 1-t non-square mod p"),
        (ClausenBranch::RationalSquare, "clausen branch: 1-t rational square"),
    ] {
        let n = all.iter().filter(|c| c.branch == Some(branch)).count();
        checks.push(Check::exact(name, n > 0, n, format!("{} primes", n)));
    }
    let inert: Vec<&&TraceCheck> = all.iter().filter(|c| c.inert).collect();
    let zero = inert.iter().all(|c| c.actual == 0);
    checks.push(Check::exact("inert primes have a_p = 0", !inert.is_empty() && zero, inert.len(), format!("{} inert primes", inert.len())));

    let small: Vec<u64> = primes_up_to(euler_bound.saturating_sub(1)).into_iter().filter(|&p| p >= 5).collect();
    let curves: Vec<Check> = pairs
        .par_iter()
        .map(|(d, t, l)| {
            let name = format!("hasse d={} t={}", d, t);
            let form = match form_by_label(l) {
                Ok(f) => f,
                Err(e) => return Check::error(name, e),
            };
            let mut n = 0;
            let mut bad = vec![];
            for &p in small.iter().filter(|&&p| !is_bad_prime(t, p, &form)) {
                match clausen_hd2_trace(*d, t, p) {
                    Ok(Some(a)) => {
                        n += 1;
                        if (a * a) as u64 > 4 * p {
                            bad.push(p);
                        }
                    }
                    Ok(None) => {}
                    Err(_) => bad.push(p),
                }
            }
            let detail = if bad.is_empty() { format!("{} primes", n) } else { format!("fails at p = {:?}", bad) };
            Check::exact(name, bad.is_empty() && n > 0, n, detail)
        })
        .collect();
    checks.extend(curves);
    let forms = load_forms()?;
    let euler: Vec<Check> = forms
        .par_iter()
        .map(|f| {
            let name = format!("euler factor and ramanujan bound {}", f.label);
            let mut n = 0;
            let mut bad = vec![];
            for &p in small.iter().filter(|&&p| f.level % p != 0) {
                n += 1;
                let ok = euler_factor_sides(f, p).map(|(a, b)| a == b).unwrap_or(false)
                    && satisfies_ramanujan_bound(f, p).unwrap_or(false);
                if !ok {
                    bad.push(p);
                }
            }
            let detail = if bad.is_empty() { format!("{} primes", n) } else { format!("fails at p = {:?}", bad) };
            Check::exact(name, bad.is_empty() && n > 0, n, detail)
        })
        .collect();
    checks.extend(euler);
    Ok(CheckReport::new("finite_field", 0, checks))
}

/// `|L_eisenstein - L_afe|` for each form at `s = k - 1`, with the root number
/// required to be stable under the change of cutoff.
pub fn afe_suite(labels: &[&str], ctx: &PrecisionContext) -> Result<CheckReport> {
    ctx.validate()?;
    let checks = labels
        .par_iter()
        .map(|label| {
            let name = format!("eisenstein vs afe {}", label);
            let r = (|| {
                let f = form_by_label(label)?;
                let s = f.weight - 1;
                let e = lvalue_eisenstein(&f, s, ctx)?;
                let a = lvalue_afe_detailed(&f, s, ctx)?;
                Ok((e.dist(&a.value).to_f64(), a))
            })();
            match r {
                Ok((d, a)) => {
                    let stable = a.cutoff_deviation < ROOT_NUMBER_TOLERANCE && a.rejected_deviation > ROOT_NUMBER_TOLERANCE;
                    let mut c = Check::residual(name, Ok(d), AFE_TOLERANCE, 1).with_detail(format!(
                        "root number {:+}, cutoff deviation {}, rejected sign {}",
                        a.root_number,
                        sci(a.cutoff_deviation),
                        sci(a.rejected_deviation)
                    ));
                    c.pass &= stable;
                    c
                }
                Err(e) => Check::error(name, e),
            }
        })
        .collect();
    Ok(CheckReport::new("afe_agreement", ctx.working_precision_bits, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_lists_failures() {
        let checks = vec![
            Check::residual("a", Ok(1e-40), 1e-30, 1),
            Check::residual("b", Ok(1e-10), 1e-30, 1),
            Check::error("c", Error::BadReduction(3)),
        ];
        let r = CheckReport::new("s", 256, checks);
        assert!(!r.pass);
        assert_eq!(r.failures, vec!["b".to_string(), "c".to_string()]);
        assert_eq!(r.max_residual(), Some(1e-10));
        assert!(r.to_text().contains("FAIL b"));
        assert!(r.to_markdown().contains("| a |"));
    }

    #[test]
    fn empty_report_fails() {
        assert!(!CheckReport::new("s", 256, vec![]).pass);
    }

    #[test]
    fn small_prime_bound_rejected() {
        assert!(finite_field_suite(4, 50).is_err());
    }

    #[test]
    fn table_pairs_are_distinct() {
        let p = table_pairs().unwrap();
        for (i, a) in p.iter().enumerate() {
            assert!(!p[i + 1..].contains(a));
        }
    }
}
