//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

use cmlval::hypergeom::TransformId;
use cmlval::lvalues::{load_tables, reproduce_suite, SuiteId, SuiteReport};
use cmlval::modforms::EisensteinIdentity;
use cmlval::numerics::PrecisionContext;
use cmlval::verify::{afe_suite, finite_field_suite, identity_suite, special_value_suite, transform_suite, CheckReport, AFE_FORMS, EULER_BOUND};
use std::time::{Duration, Instant};

const SEED: u64 = 1;
const TRANSFORM_SAMPLES: usize = 20;
const IDENTITY_SAMPLES: usize = 10;
const PRIME_BOUND: u64 = 200;

struct Outcome {
    pass: bool,
    detail: String,
}

fn suites(ids: &[SuiteId], ctx: &PrecisionContext) -> Outcome {
    let mut pass = true;
    let mut parts = vec![];
    for &id in ids {
        match reproduce_suite(id, ctx) {
            Ok(r) => {
                pass &= r.pass;
                parts.push(summary(&r));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{}: {}", id, e));
            }
        }
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn summary(r: &SuiteReport) -> String {
    let worst = r.rows.iter().filter_map(|row| row.max_deviation.parse::<f64>().ok()).fold(0f64, f64::max);
    let mut s = format!("{} {}/{} rows, max deviation {:.1e}", r.suite, r.rows.len() - r.failures.len(), r.rows.len(), worst);
    if !r.failures.is_empty() {
        s.push_str(&format!(", failing {:?}", r.failures));
    }
    s
}

fn checks(reports: Vec<cmlval::Result<CheckReport>>) -> Outcome {
    let mut pass = true;
    let mut parts = vec![];
    for r in reports {
        match r {
            Ok(r) => {
                pass &= r.pass;
                let n = r.checks.len();
                let mut s = format!("{} {}/{}", r.suite, n - r.failures.len(), n);
                if let Some(m) = r.max_residual() {
                    s.push_str(&format!(" max residual {:.1e}", m));
                }
                if !r.failures.is_empty() {
                    s.push_str(&format!(", failing {:?}", r.failures));
                }
                parts.push(s);
            }
            Err(e) => {
                pass = false;
                parts.push(e.to_string());
            }
        }
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn timed(budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    o.detail.push_str(&format!("; {:.1} s", took.as_secs_f64()));
    if let Some(b) = budget {
        if took > b {
            o.pass = false;
            o.detail.push_str(&format!(" exceeds {} s budget", b.as_secs()));
        }
    }
    o
}

fn table3_counts() -> Outcome {
    match load_tables() {
        Ok(t) => {
            let n = |d: u32| t.table3.iter().filter(|r| r.d == d).count();
            let (a, b, c) = (n(3), n(4), n(6));
            Outcome { pass: (a, b, c) == (9, 11, 4), detail: format!("d=3: {}, d=4: {}, d=6: {}", a, b, c) }
        }
        Err(e) => Outcome { pass: false, detail: e.to_string() },
    }
}

fn main() {
    let ctx = PrecisionContext::default();
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("Table 1a with Chowla-Selberg periods", Box::new(|| timed(secs(120), || suites(&[SuiteId::Table1a], &ctx)))),
        ("Table 1b with Table 4 j-values and D = 28", Box::new(|| timed(None, || suites(&[SuiteId::Table1b], &ctx)))),
        (
            "Table 3 hauptmodul values and L-values",
            Box::new(|| {
                let counts = table3_counts();
                let mut o = timed(None, || suites(&[SuiteId::Table3], &ctx));
                o.pass &= counts.pass;
                o.detail = format!("{}; {}", counts.detail, o.detail);
                o
            }),
        ),
        ("f7/f112 and f16 equality chains", Box::new(|| timed(None, || suites(&[SuiteId::IntroChain, SuiteId::Cor716], &ctx)))),
        ("f24 and f15 L-values and twist relation", Box::new(|| timed(None, || suites(&[SuiteId::ThmCVersion], &ctx)))),
        ("f300 atoms, E4 closed form and AFE", Box::new(|| timed(None, || suites(&[SuiteId::Thm300], &ctx)))),
        ("higher weight f8.5 and f32.7", Box::new(|| timed(None, || suites(&[SuiteId::HigherWeight], &ctx)))),
        (
            "transformation catalog at 20 samples",
            Box::new(|| timed(secs(30), || checks(vec![transform_suite(&TransformId::ALL, TRANSFORM_SAMPLES, SEED, &ctx)]))),
        ),
        (
            "modular identity catalog, u6 and j special values",
            Box::new(|| {
                timed(None, || {
                    checks(vec![
                        identity_suite(&EisensteinIdentity::catalog(), IDENTITY_SAMPLES, SEED, &ctx),
                        special_value_suite(&ctx),
                    ])
                })
            }),
        ),
        (
            "finite-field trace identities, Hasse and Euler factors",
            Box::new(|| timed(secs(120), || checks(vec![finite_field_suite(PRIME_BOUND, EULER_BOUND)]))),
        ),
        ("Eisenstein and AFE route agreement", Box::new(|| timed(None, || checks(vec![afe_suite(&AFE_FORMS, &ctx)])))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("{} {:>2} {}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, name, o.detail);
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
