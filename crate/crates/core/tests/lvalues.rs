//! L-values against independently computed references, and the reproduction
//! suites end to end.

use cmlval::lvalues::{reproduce_suite, single_lvalue, SuiteId};
use cmlval::numerics::PrecisionContext;
use rug::Float;

const REFERENCES: &[(&str, &str)] = &[
    ("f15.3.d.b", "0.880459825358229810449689108941"),
    ("f8.5.d.a", "1.118303947171279210748659827860"),
    ("f32.7.d.a", "0.94075668111729171882073160961"),
    ("f16.3.c.a", "0.8593982272525466034362619724763"),
];

fn real_part(text: &str) -> Float {
    let head = text.split_whitespace().next().unwrap();
    Float::with_val(256, Float::parse(head).unwrap())
}

#[test]
fn reference_values_by_every_route() {
    let ctx = PrecisionContext::default();
    for (label, want) in REFERENCES {
        let r = single_lvalue(label, None, &ctx).unwrap();
        assert!(r.pass, "{}: {:?}", label, r.errors);
        assert_eq!(r.values.len(), 3, "{}", label);
        let want = real_part(want);
        for v in &r.values {
            let diff = (real_part(&v.value) - &want).abs().to_f64();
            assert!(diff < 1e-28, "{} {}: {}", label, v.name, diff);
        }
        assert!(r.values.iter().all(|v| v.raw.im.clone().abs().to_f64() < 1e-60));
    }
}

#[test]
fn non_critical_point_rejected() {
    let ctx = PrecisionContext::default();
    assert!(single_lvalue("f16.3.c.a", Some(3), &ctx).is_err());
    assert!(single_lvalue("f16.3.c.a", Some(0), &ctx).is_err());
    assert!(single_lvalue("nonexistent", None, &ctx).is_err());
}

#[test]
fn every_suite_passes() {
    let ctx = PrecisionContext::default();
    for id in SuiteId::ALL {
        let r = reproduce_suite(id, &ctx).unwrap();
        assert!(r.pass, "{}: {:?}", id, r.failures);
        assert!(!r.rows.is_empty(), "{}", id);
    }
}

#[test]
fn json_is_deterministic() {
    let ctx = PrecisionContext::default();
    let a = reproduce_suite(SuiteId::Cor716, &ctx).unwrap().to_json();
    let b = reproduce_suite(SuiteId::Cor716, &ctx).unwrap().to_json();
    assert_eq!(a, b);
}
