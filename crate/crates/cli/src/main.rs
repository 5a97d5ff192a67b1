//! `cmlval`: command-line front end for the verification suites.
//!
//! Exit status is 0 when every selected check passes, 1 when a check fails or
//! a value cannot be computed, and 2 on a usage error. Every run prints a
//! failure list, empty on success.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use cmlval::arith::{count_points, form_by_label, lattice_coefficients, trace_sweep, CurveModel};
use cmlval::hypergeom::{pfq_extended, Argument, HypergeometricDatum, TransformId};
use cmlval::lvalues::{reproduce_suite, single_lvalue, Format, SuiteId, SuiteReport, AFE_TOLERANCE};
use cmlval::modforms::{EisensteinIdentity, NamedFunction};
use cmlval::numerics::algexpr::{self, eval_rational};
use cmlval::numerics::numtheory::primes_up_to;
use cmlval::numerics::{CMPoint, Complex, PrecisionContext, Rational};
use cmlval::verify::{
    afe_suite, finite_field_suite, identity_suite, special_value_suite, transform_suite, CheckReport, AFE_FORMS,
    EULER_BOUND,
};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

const DEFAULT_PRIME_BOUND: u64 = 200;
const MAX_COUNT: u64 = 100_000;

#[derive(Parser, Debug)]
#[command(name = "cmlval", version, about = "Verify special L-values of CM eigenforms and the identities behind them")]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, value_name = "BITS")]
    precision: Option<u32>,
    /// Identity tolerance; defaults to 1e-30.
    #[arg(long, global = true, value_name = "EPS")]
    tolerance: Option<f64>,
    /// Output format: json, markdown or text.
    #[arg(long, global = true, default_value = "text", value_parser = parse_format)]
    format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Group,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Hypergeometric functions.
    #[command(subcommand)]
    Hg(HgCommand),
    /// Modular forms and functions.
    #[command(subcommand)]
    Mf(MfCommand),
    /// Point counts, Fourier coefficients and trace identities.
    #[command(subcommand)]
    Arith(ArithCommand),
    /// L-values.
    #[command(subcommand)]
    Lv(LvCommand),
    /// Full runs.
    #[command(subcommand)]
    Report(ReportCommand),
}

#[derive(Subcommand, Debug)]
enum HgCommand {
    /// Evaluate pFq(upper; 1, lower; z).
    Eval(HgEval),
    /// Check the transformation catalog at seeded sample points.
    Verify(HgVerify),
}

#[derive(Args, Debug)]
struct HgEval {
    /// Comma-separated upper parameters, e.g. 1/2,1/3,2/3.
    #[arg(long, value_delimiter = ',', value_parser = parse_rational, required = true, allow_hyphen_values = true)]
    upper: Vec<Rational>,
    /// Comma-separated lower parameters after the leading 1, e.g. 1,1.
    #[arg(long, value_delimiter = ',', value_parser = parse_rational, allow_hyphen_values = true)]
    lower: Vec<Rational>,
    /// Argument, a rational or radical expression.
    #[arg(long, allow_hyphen_values = true)]
    z: String,
}

#[derive(Args, Debug)]
struct HgVerify {
    /// Restrict to these identities (repeatable); all by default.
    #[arg(long, value_parser = parse_transform)]
    id: Vec<TransformId>,
    /// Sample points per identity.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..=1000))]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum MfCommand {
    /// Evaluate a named function at a point of the upper half-plane.
    Eval(MfEval),
    /// Check the modular identity catalog and the tabulated special values.
    Verify(MfVerify),
}

#[derive(Args, Debug)]
struct MfEval {
    /// Function name, e.g. u6, j, g2star, g4, g2n_3, curly_1_4, t6, eta.
    #[arg(long = "fn", value_parser = parse_function)]
    function: NamedFunction,
    /// Point, e.g. i, (1+sqrt(-7))/2 or 3/10+11/10*i.
    #[arg(long, allow_hyphen_values = true)]
    tau: String,
}

#[derive(Args, Debug)]
struct MfVerify {
    /// Restrict to these identities (repeatable); all, plus special values, by default.
    #[arg(long, value_parser = parse_identity)]
    id: Vec<EisensteinIdentity>,
    /// Sample points per identity.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..=1000))]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum ArithCommand {
    /// Fourier coefficients of a fixture form, or Frobenius traces of E_d(lambda).
    Ap(ArithAp),
    /// Trace identities over a prime range.
    Traces(ArithTraces),
}

#[derive(Args, Debug)]
struct ArithAp {
    /// Form label; prints a_1..a_count.
    #[arg(long, conflicts_with_all = ["family", "lambda"])]
    form: Option<String>,
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..=MAX_COUNT))]
    count: u64,
    /// Curve family d in {2, 3, 4, 6}; prints a_p for good primes below the bound.
    #[arg(long, requires = "lambda")]
    family: Option<u32>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    lambda: Option<Rational>,
    #[arg(long, default_value_t = DEFAULT_PRIME_BOUND, value_parser = parse_prime_bound)]
    prime_bound: u64,
}

#[derive(Args, Debug)]
struct ArithTraces {
    /// With --t and --form, sweep one pair; otherwise every table pair.
    #[arg(long, requires_all = ["t", "form"])]
    d: Option<u32>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, requires = "d")]
    t: Option<Rational>,
    #[arg(long, requires = "d")]
    form: Option<String>,
    #[arg(long, default_value_t = DEFAULT_PRIME_BOUND, value_parser = parse_prime_bound)]
    prime_bound: u64,
}

#[derive(Subcommand, Debug)]
enum LvCommand {
    /// One L-value by every available route.
    Value(LvValue),
    /// Reproduce the tables and chains.
    Tables(LvTables),
}

#[derive(Args, Debug)]
struct LvValue {
    /// Form label.
    #[arg(long)]
    id: String,
    /// Critical point; defaults to k - 1.
    #[arg(long)]
    s: Option<u32>,
}

#[derive(Args, Debug)]
struct LvTables {
    /// Suites to run (repeatable); all by default.
    #[arg(long, value_parser = parse_suite)]
    suite: Vec<SuiteId>,
}

#[derive(Subcommand, Debug)]
enum ReportCommand {
    /// Every suite.
    All(ReportAll),
}

#[derive(Args, Debug)]
struct ReportAll {
    #[arg(long, default_value_t = DEFAULT_PRIME_BOUND, value_parser = parse_prime_bound)]
    prime_bound: u64,
    /// Transformation samples per identity; identity samples are half as many.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(2..=1000))]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    s.parse().map_err(|e: cmlval::Error| e.to_string())
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    algexpr::parse_rational(s).map_err(|e| e.to_string())
}

fn parse_transform(s: &str) -> std::result::Result<TransformId, String> {
    s.parse().map_err(|e: cmlval::Error| e.to_string())
}

fn parse_identity(s: &str) -> std::result::Result<EisensteinIdentity, String> {
    s.parse().map_err(|e: cmlval::Error| e.to_string())
}

fn parse_function(s: &str) -> std::result::Result<NamedFunction, String> {
    s.parse().map_err(|e: cmlval::Error| e.to_string())
}

fn parse_suite(s: &str) -> std::result::Result<SuiteId, String> {
    s.parse().map_err(|e: cmlval::Error| e.to_string())
}

fn parse_prime_bound(s: &str) -> std::result::Result<u64, String> {
    let v: u64 = s.parse().map_err(|_| format!("{:?} is not an integer", s))?;
    if !(5..=1_000_000).contains(&v) {
        return Err(format!("prime bound {} outside [5, 1000000]", v));
    }
    Ok(v)
}

/// Named values with their own pass flag.
#[derive(Serialize, Debug)]
struct ValueReport {
    name: String,
    values: Vec<(String, String)>,
    failures: Vec<String>,
    pass: bool,
}

impl ValueReport {
    fn new(name: impl Into<String>, values: Vec<(String, String)>, failures: Vec<String>) -> Self {
        let pass = failures.is_empty();
        ValueReport { name: name.into(), values, failures, pass }
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Markdown => {
                let _ = writeln!(out, "### {}\n\n| key | value |\n|---|---|", self.name);
                for (k, v) in &self.values {
                    let _ = writeln!(out, "| {} | {} |", k, v);
                }
            }
            _ => {
                for (k, v) in &self.values {
                    let _ = writeln!(out, "{} = {}", k, v);
                }
            }
        }
        out
    }
}

#[derive(Serialize, Debug)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Section {
    Suite(SuiteReport),
    Checks(CheckReport),
    Values(ValueReport),
}

impl Section {
    fn pass(&self) -> bool {
        match self {
            Section::Suite(r) => r.pass,
            Section::Checks(r) => r.pass,
            Section::Values(r) => r.pass,
        }
    }

    fn failures(&self) -> Vec<String> {
        match self {
            Section::Suite(r) => r.failures.clone(),
            Section::Checks(r) => r.failures.iter().map(|f| format!("{}/{}", r.suite, f)).collect(),
            Section::Values(r) => r.failures.clone(),
        }
    }

    fn render(&self, format: Format) -> String {
        match self {
            Section::Suite(r) => r.render(format),
            Section::Checks(r) => r.render(format),
            Section::Values(r) => r.render(format),
        }
    }
}

/// The document written for every run.
#[derive(Serialize, Debug)]
struct Envelope {
    command: String,
    precision_bits: u32,
    pass: bool,
    failures: Vec<String>,
    results: Vec<Section>,
}

impl Envelope {
    fn new(command: &str, precision_bits: u32, results: Vec<Section>) -> Self {
        let failures: Vec<String> = results.iter().flat_map(|s| s.failures()).collect();
        let pass = !results.is_empty() && results.iter().all(|s| s.pass());
        Envelope { command: command.to_string(), precision_bits, pass, failures, results }
    }

    fn render(&self, format: Format) -> String {
        if format == Format::Json {
            return serde_json::to_string_pretty(self).expect("reports serialize") + "\n";
        }
        let mut out = String::new();
        for s in &self.results {
            out.push_str(&s.render(format));
            out.push('\n');
        }
        if self.failures.is_empty() {
            out.push_str("failures: none\n");
        } else {
            let _ = writeln!(out, "failures: {}", self.failures.join(", "));
        }
        let _ = writeln!(out, "{}", if self.pass { "PASS" } else { "FAIL" });
        out
    }
}

fn context(precision: Option<u32>, tolerance: Option<f64>) -> Result<PrecisionContext> {
    let mut ctx = match precision {
        None => PrecisionContext::default(),
        Some(bits) if !(64..=4096).contains(&bits) => bail!(Usage(format!("precision {} outside [64, 4096]", bits))),
        Some(bits) => PrecisionContext::with_bits(bits)?,
    };
    if let Some(eps) = tolerance {
        if !(eps > 0.0 && eps < 1.0) {
            bail!(Usage(format!("tolerance {} outside (0, 1)", eps)));
        }
        ctx.identity_tolerance = eps;
    }
    ctx.validate().map_err(|e| Usage(e.to_string()))?;
    Ok(ctx)
}

/// An argument error detected after parsing.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn digits(ctx: &PrecisionContext) -> usize {
    (ctx.working_precision_bits as f64 * std::f64::consts::LOG10_2).floor() as usize
}

fn parse_point(s: &str, prec: u32) -> Result<(Option<CMPoint>, Complex)> {
    if let Ok(p) = CMPoint::parse(s) {
        let v = p.value(prec);
        return Ok((Some(p), v));
    }
    let v = algexpr::value(s, prec).map_err(|e| Usage(format!("--tau {:?}: {}", s, e)))?;
    if !(v.im > 0) {
        return Err(Usage(format!("--tau {:?} is not in the upper half-plane", s)).into());
    }
    Ok((None, v))
}

fn value_section(name: &str, values: Vec<(String, String)>, r: cmlval::Result<()>) -> Section {
    let failures = match r {
        Ok(()) => vec![],
        Err(e) => vec![format!("{}: {}", name, e)],
    };
    Section::Values(ValueReport::new(name, values, failures))
}

fn hg_eval(a: &HgEval, ctx: &PrecisionContext) -> Result<Vec<Section>> {
    let expr = algexpr::parse(&a.z).map_err(|e| Usage(format!("--z {:?}: {}", a.z, e)))?;
    let argument = match eval_rational(&expr) {
        Ok(r) => Argument::Rational(r),
        Err(_) => Argument::Complex(algexpr::eval_complex(&expr, ctx.prec()).map_err(|e| Usage(format!("--z: {}", e)))?),
    };
    let mut lower = vec![Rational::from(1)];
    lower.extend(a.lower.iter().cloned());
    let datum = HypergeometricDatum::new(a.upper.clone(), lower, argument).map_err(|e| Usage(e.to_string()))?;
    let join = |v: &[Rational]| v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
    let mut values = vec![
        ("upper".to_string(), join(&datum.upper)),
        ("lower".to_string(), join(&datum.lower)),
        ("z".to_string(), a.z.clone()),
    ];
    let r = pfq_extended(&datum, ctx).map(|v| values.push(("value".into(), v.to_decimal(digits(ctx)))));
    Ok(vec![value_section("hg eval", values, r)])
}

fn mf_eval(a: &MfEval, ctx: &PrecisionContext) -> Result<Vec<Section>> {
    let (exact, tau) = parse_point(&a.tau, ctx.prec())?;
    let v = match &exact {
        Some(p) => a.function.eval(p, ctx),
        None => a.function.eval(&tau, ctx),
    };
    let mut values = vec![("function".to_string(), a.function.to_string()), ("tau".to_string(), a.tau.clone())];
    let r = v.map(|v| values.push(("value".into(), v.to_decimal(digits(ctx)))));
    Ok(vec![value_section("mf eval", values, r)])
}

fn mf_verify(a: &MfVerify, ctx: &PrecisionContext) -> Result<Vec<Section>> {
    let ids = if a.id.is_empty() { EisensteinIdentity::catalog() } else { a.id.clone() };
    let mut out = vec![Section::Checks(identity_suite(&ids, a.samples as usize, a.seed, ctx)?)];
    if a.id.is_empty() {
        out.push(Section::Checks(special_value_suite(ctx)?));
    }
    Ok(out)
}

fn arith_ap(a: &ArithAp) -> Result<Vec<Section>> {
    if let Some(label) = &a.form {
        let form = form_by_label(label)?;
        let mut values = vec![("form".to_string(), form.label.clone())];
        let r = lattice_coefficients(&form, a.count).map(|c| {
            for n in 1..=a.count as usize {
                values.push((format!("a_{}", n), c[n].to_string()));
            }
        });
        return Ok(vec![value_section("arith ap", values, r)]);
    }
    let (Some(d), Some(lambda)) = (a.family, a.lambda.clone()) else {
        bail!(Usage("arith ap needs --form, or --family with --lambda".into()));
    };
    let curve = CurveModel::new(d, lambda.clone()).map_err(|e| Usage(e.to_string()))?;
    let mut values = vec![("family".to_string(), d.to_string()), ("lambda".to_string(), lambda.to_string())];
    let mut hasse = vec![];
    for p in primes_up_to(a.prime_bound - 1).into_iter().filter(|&p| p >= 5) {
        if let Ok(ap) = count_points(&curve, p) {
            if (ap * ap) as u64 > 4 * p {
                hasse.push(format!("hasse bound fails at p = {}", p));
            }
            values.push((format!("a_{}", p), ap.to_string()));
        }
    }
    Ok(vec![Section::Values(ValueReport::new("arith ap", values, hasse))])
}

fn arith_traces(a: &ArithTraces) -> Result<Vec<Section>> {
    let (Some(d), Some(t), Some(label)) = (a.d, a.t.clone(), a.form.clone()) else {
        return Ok(vec![Section::Checks(finite_field_suite(a.prime_bound, EULER_BOUND)?)]);
    };
    let form = form_by_label(&label)?;
    let sweep = trace_sweep(d, &t, &form, a.prime_bound)?;
    let mut values = vec![];
    let mut failures = vec![];
    for c in &sweep {
        let tag = if c.inert { " (inert)".to_string() } else { String::new() };
        values.push((format!("p={}", c.p), format!("a_p={} expected={}{}", c.actual, c.expected, tag)));
        if !c.pass {
            failures.push(format!("trace identity fails at p = {}", c.p));
        }
    }
    if sweep.is_empty() {
        failures.push("no good primes below the bound".into());
    }
    Ok(vec![Section::Values(ValueReport::new(format!("traces d={} t={} {}", d, t, label), values, failures))])
}

fn lv_value(a: &LvValue, ctx: &PrecisionContext) -> Result<Vec<Section>> {
    let row = single_lvalue(&a.id, a.s, ctx)?;
    let report = SuiteReport::new("value", ctx.working_precision_bits, ctx.identity_tolerance, AFE_TOLERANCE, vec![row]);
    Ok(vec![Section::Suite(report)])
}

fn lv_tables(suites: &[SuiteId], ctx: &PrecisionContext) -> Result<Vec<Section>> {
    let ids: Vec<SuiteId> = if suites.is_empty() { SuiteId::ALL.to_vec() } else { suites.to_vec() };
    ids.iter().map(|&id| Ok(Section::Suite(reproduce_suite(id, ctx)?))).collect()
}

fn report_all(a: &ReportAll, ctx: &PrecisionContext) -> Result<Vec<Section>> {
    let mut out = lv_tables(&[], ctx)?;
    out.push(Section::Checks(transform_suite(&TransformId::ALL, a.samples as usize, a.seed, ctx)?));
    out.push(Section::Checks(identity_suite(&EisensteinIdentity::catalog(), a.samples as usize / 2, a.seed, ctx)?));
    out.push(Section::Checks(special_value_suite(ctx)?));
    out.push(Section::Checks(finite_field_suite(a.prime_bound, EULER_BOUND)?));
    out.push(Section::Checks(afe_suite(&AFE_FORMS, ctx)?));
    Ok(out)
}

fn command_name(g: &Group) -> &'static str {
    match g {
        Group::Hg(HgCommand::Eval(_)) => "hg eval",
        Group::Hg(HgCommand::Verify(_)) => "hg verify",
        Group::Mf(MfCommand::Eval(_)) => "mf eval",
        Group::Mf(MfCommand::Verify(_)) => "mf verify",
        Group::Arith(ArithCommand::Ap(_)) => "arith ap",
        Group::Arith(ArithCommand::Traces(_)) => "arith traces",
        Group::Lv(LvCommand::Value(_)) => "lv value",
        Group::Lv(LvCommand::Tables(_)) => "lv tables",
        Group::Report(ReportCommand::All(_)) => "report all",
    }
}

fn run(cli: &Cli) -> Result<Envelope> {
    let ctx = context(cli.precision, cli.tolerance)?;
    let results = match &cli.command {
        Group::Hg(HgCommand::Eval(a)) => hg_eval(a, &ctx)?,
        Group::Hg(HgCommand::Verify(a)) => {
            let ids = if a.id.is_empty() { TransformId::ALL.to_vec() } else { a.id.clone() };
            vec![Section::Checks(transform_suite(&ids, a.samples as usize, a.seed, &ctx)?)]
        }
        Group::Mf(MfCommand::Eval(a)) => mf_eval(a, &ctx)?,
        Group::Mf(MfCommand::Verify(a)) => mf_verify(a, &ctx)?,
        Group::Arith(ArithCommand::Ap(a)) => arith_ap(a)?,
        Group::Arith(ArithCommand::Traces(a)) => arith_traces(a)?,
        Group::Lv(LvCommand::Value(a)) => lv_value(a, &ctx)?,
        Group::Lv(LvCommand::Tables(a)) => lv_tables(&a.suite, &ctx)?,
        Group::Report(ReportCommand::All(a)) => report_all(a, &ctx)?,
    };
    Ok(Envelope::new(command_name(&cli.command), ctx.working_precision_bits, results))
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

/// The failure document for runs that produced no report.
fn failure_document(command: &str, kind: &str, message: &str, format: Format) -> String {
    if format == Format::Json {
        let v = serde_json::json!({
            "command": command,
            "pass": false,
            "error": kind,
            "failures": [message],
        });
        return serde_json::to_string_pretty(&v).expect("json") + "\n";
    }
    format!("failures: {}\nFAIL\n", message)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            let first = e.to_string().lines().next().unwrap_or("usage error").trim_start_matches("error: ").to_string();
            print!("{}", failure_document("", "usage", &first, Format::Json));
            return ExitCode::from(2);
        }
    };
    let command = command_name(&cli.command);
    match run(&cli) {
        Ok(env) => {
            let text = env.render(cli.format);
            if let Err(e) = emit(&text, cli.output.as_ref()) {
                eprintln!("error: {:#}", e);
                print!("{}", failure_document(command, "io", &format!("{:#}", e), cli.format));
                return ExitCode::from(1);
            }
            if env.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let usage = e.downcast_ref::<Usage>().is_some();
            let msg = format!("{:#}", e);
            eprintln!("error: {}", msg);
            let doc = failure_document(command, if usage { "usage" } else { "evaluation" }, &msg, cli.format);
            if emit(&doc, cli.output.as_ref()).is_err() {
                print!("{}", doc);
            }
            if usage {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn prime_bound_minimum() {
        assert!(parse_prime_bound("4").is_err());
        assert_eq!(parse_prime_bound("5"), Ok(5));
    }

    #[test]
    fn unknown_label_is_not_a_usage_error() {
        let e = anyhow::anyhow!(cmlval::Error::Unknown("form x".into()));
        assert!(e.downcast_ref::<Usage>().is_none());
    }
}
