//! Row reports comparing several evaluations of one L-value, and their
//! JSON, markdown and plain-text renderings.

use crate::error::{Error, Result};
use crate::numerics::Complex;
use serde::Serialize;
use std::fmt::Write;
use std::str::FromStr;

/// How a value was obtained; `Afe` values are compared at the looser tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Eisenstein,
    Lattice,
    ClosedForm,
    Afe,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportValue {
    pub name: String,
    pub route: Route,
    pub value: String,
    #[serde(skip)]
    pub raw: Complex,
}

/// An auxiliary check with its own tolerance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportCheck {
    pub name: String,
    pub deviation: String,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LValueReport {
    pub suite: String,
    pub id: String,
    pub label: String,
    pub s: u32,
    /// Row data as printed in the source table.
    pub meta: Vec<(String, String)>,
    pub route_eisenstein: Option<String>,
    pub route_afe: Option<String>,
    pub closed_form: Option<String>,
    pub root_number: Option<i32>,
    pub values: Vec<ReportValue>,
    pub checks: Vec<ReportCheck>,
    /// Largest pairwise deviation among the non-AFE values.
    pub max_deviation: String,
    /// Largest deviation of an AFE value from a non-AFE value.
    pub afe_deviation: Option<String>,
    pub identity_tolerance: f64,
    pub afe_tolerance: f64,
    pub errors: Vec<String>,
    pub pass: bool,
}

pub fn sci(x: f64) -> String {
    format!("{:.3e}", x)
}

/// Collects values and checks for one row, then scores them.
#[derive(Debug)]
pub struct ReportBuilder {
    report: LValueReport,
    digits: usize,
    max_dev: f64,
    afe_dev: Option<f64>,
}

impl ReportBuilder {
    pub fn new(suite: &str, id: &str, label: &str, s: u32, identity_tolerance: f64, afe_tolerance: f64, digits: usize) -> Self {
        ReportBuilder {
            report: LValueReport {
                suite: suite.to_string(),
                id: id.to_string(),
                label: label.to_string(),
                s,
                meta: vec![],
                route_eisenstein: None,
                route_afe: None,
                closed_form: None,
                root_number: None,
                values: vec![],
                checks: vec![],
                max_deviation: sci(0.0),
                afe_deviation: None,
                identity_tolerance,
                afe_tolerance,
                errors: vec![],
                pass: false,
            },
            digits,
            max_dev: 0.0,
            afe_dev: None,
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.report.meta.push((key.to_string(), value.to_string()));
    }

    pub fn root_number(&mut self, eps: i32) {
        self.report.root_number = Some(eps);
    }

    /// Records a value, or the error that prevented computing it.
    pub fn value(&mut self, name: &str, route: Route, v: Result<Complex>) {
        match v {
            Ok(raw) => {
                let value = raw.to_decimal(self.digits);
                let slot = match route {
                    Route::Eisenstein => Some(&mut self.report.route_eisenstein),
                    Route::Afe => Some(&mut self.report.route_afe),
                    Route::ClosedForm => Some(&mut self.report.closed_form),
                    Route::Lattice => None,
                };
                if let Some(slot) = slot.filter(|s| s.is_none()) {
                    *slot = Some(value.clone());
                }
                self.report.values.push(ReportValue { name: name.to_string(), route, value, raw });
            }
            Err(e) => self.report.errors.push(format!("{}: {}", name, e)),
        }
    }

    pub fn check(&mut self, name: &str, deviation: Result<f64>, tolerance: f64) {
        match deviation {
            Ok(d) => self.report.checks.push(ReportCheck {
                name: name.to_string(),
                deviation: sci(d),
                tolerance,
                pass: d < tolerance,
            }),
            Err(e) => self.report.errors.push(format!("{}: {}", name, e)),
        }
    }

    pub fn error(&mut self, e: Error) {
        self.report.errors.push(e.to_string());
    }

    pub fn finish(mut self) -> LValueReport {
        let vals = &self.report.values;
        for (i, a) in vals.iter().enumerate() {
            for b in &vals[i + 1..] {
                let d = a.raw.dist(&b.raw).to_f64();
                match (a.route == Route::Afe, b.route == Route::Afe) {
                    (false, false) => self.max_dev = self.max_dev.max(d),
                    (true, true) => {}
                    _ => self.afe_dev = Some(self.afe_dev.unwrap_or(0.0).max(d)),
                }
            }
        }
        let strict = vals.iter().filter(|v| v.route != Route::Afe).count();
        let total = vals.len();
        let r = &mut self.report;
        if strict == 0 || total < 2 {
            r.errors.push("fewer than two comparable values".into());
        }
        r.max_deviation = sci(self.max_dev);
        r.afe_deviation = self.afe_dev.map(sci);
        r.pass = r.errors.is_empty()
            && self.max_dev < r.identity_tolerance
            && self.afe_dev.map_or(true, |d| d < r.afe_tolerance)
            && r.checks.iter().all(|c| c.pass);
        self.report
    }
}

/// Output formats of the report renderers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Markdown,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            "text" => Ok(Format::Text),
            _ => Err(Error::Unknown(format!("format {}", s))),
        }
    }
}

/// All rows of one reproduction suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub precision_bits: u32,
    pub identity_tolerance: f64,
    pub afe_tolerance: f64,
    pub rows: Vec<LValueReport>,
    /// Ids of the failing rows.
    pub failures: Vec<String>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn new(suite: &str, precision_bits: u32, identity_tolerance: f64, afe_tolerance: f64, rows: Vec<LValueReport>) -> Self {
        let failures: Vec<String> = rows.iter().filter(|r| !r.pass).map(|r| format!("{}/{}", r.suite, r.id)).collect();
        SuiteReport {
            suite: suite.to_string(),
            precision_bits,
            identity_tolerance,
            afe_tolerance,
            pass: failures.is_empty() && !rows.is_empty(),
            rows,
            failures,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "### {}\n", self.suite);
        let keys: Vec<&str> = self.rows.first().map(|r| r.meta.iter().map(|(k, _)| k.as_str()).collect()).unwrap_or_default();
        let mut header = vec!["id", "form"];
        header.extend(keys.iter().copied());
        header.extend(["L", "max deviation", "AFE deviation", "pass"]);
        let _ = writeln!(out, "| {} |", header.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
        for r in &self.rows {
            let mut cells = vec![r.id.clone(), r.label.clone()];
            for k in &keys {
                let v = r.meta.iter().find(|(kk, _)| kk == k).map(|(_, v)| v.clone()).unwrap_or_default();
                cells.push(v);
            }
            let l = r.values.first().map(|v| short(&v.value)).unwrap_or_else(|| "-".into());
            cells.push(l);
            cells.push(r.max_deviation.clone());
            cells.push(r.afe_deviation.clone().unwrap_or_else(|| "-".into()));
            cells.push(if r.pass { "yes".into() } else { "NO".into() });
            let _ = writeln!(out, "| {} |", cells.join(" | "));
        }
        let _ = writeln!(out, "\n{}/{} rows pass", self.rows.len() - self.failures.len(), self.rows.len());
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{} {}/{} {} max_dev={} afe_dev={}",
                if r.pass { "PASS" } else { "FAIL" },
                r.suite,
                r.id,
                r.label,
                r.max_deviation,
                r.afe_deviation.as_deref().unwrap_or("-"),
            );
            for e in &r.errors {
                let _ = writeln!(out, "    error: {}", e);
            }
        }
        let _ = writeln!(out, "{}: {}/{} rows pass", self.suite, self.rows.len() - self.failures.len(), self.rows.len());
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Markdown => self.to_markdown(),
            Format::Text => self.to_text(),
        }
    }
}

fn short(v: &str) -> String {
    let cut: String = v.chars().take(32).collect();
    if cut.len() < v.len() {
        format!("{}...", cut)
    } else {
        cut
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex {
        Complex::from_f64(128, x, 0.0)
    }

    #[test]
    fn scoring_separates_tolerance_classes() {
        let mut b = ReportBuilder::new("s", "r", "f", 2, 1e-30, 1e-8, 20);
        b.value("a", Route::Eisenstein, Ok(c(1.0)));
        b.value("b", Route::ClosedForm, Ok(c(1.0)));
        b.value("c", Route::Afe, Ok(c(1.0 + 1e-10)));
        let r = b.finish();
        assert!(r.pass, "{:?}", r);
        let mut b = ReportBuilder::new("s", "r", "f", 2, 1e-30, 1e-8, 20);
        b.value("a", Route::Eisenstein, Ok(c(1.0)));
        b.value("b", Route::ClosedForm, Ok(c(1.0 + 1e-10)));
        assert!(!b.finish().pass);
    }

    #[test]
    fn errors_fail_the_row() {
        let mut b = ReportBuilder::new("s", "r", "f", 2, 1e-30, 1e-8, 20);
        b.value("a", Route::Eisenstein, Ok(c(1.0)));
        b.value("b", Route::ClosedForm, Err(Error::NoDecomposition("f".into())));
        let r = b.finish();
        assert!(!r.pass && r.errors.len() == 2);
    }
}
