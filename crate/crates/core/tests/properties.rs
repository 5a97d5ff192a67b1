//! Invariants of the numerical layers under random inputs.

use cmlval::arith::{form_by_label, lattice_coefficients};
use cmlval::hypergeom::{pfq, Argument, HypergeometricDatum};
use cmlval::modforms::{NamedFunction, QSeries};
use cmlval::numerics::algexpr;
use cmlval::numerics::numtheory::gcd;
use cmlval::numerics::{Complex, PrecisionContext};
use proptest::prelude::*;
use rug::Rational;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 24, ..ProptestConfig::default() }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1u64..40).prop_map(|(n, d)| Rational::from((n, d)))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn rational_text_round_trips(r in rational()) {
        prop_assert_eq!(algexpr::parse_rational(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn pfq_is_symmetric_in_upper_parameters(a in rational(), b in rational(), c in 1i64..6, z in (-40i64..40, 100u64..200)) {
        let ctx = PrecisionContext::default();
        let z = Rational::from(z);
        let lower = vec![Rational::from(1), Rational::from(c) + Rational::from((1, 3))];
        let ab = HypergeometricDatum::new(vec![a.clone(), b.clone()], lower.clone(), Argument::Rational(z.clone())).unwrap();
        let ba = HypergeometricDatum::new(vec![b, a], lower, Argument::Rational(z)).unwrap();
        let (x, y) = (pfq(&ab, &ctx).unwrap(), pfq(&ba, &ctx).unwrap());
        let scale = 1.0 + x.abs().to_f64();
        prop_assert!(x.dist(&y).to_f64() < 1e-50 * scale);
    }

    #[test]
    fn j_is_modular(x in -0.5f64..0.5, y in 0.9f64..2.0) {
        let ctx = PrecisionContext::default();
        let tau = Complex::from_f64(ctx.prec(), x, y);
        let mut shifted = tau.clone();
        shifted += Complex::one(ctx.prec());
        let inverted = -tau.recip();
        let j = NamedFunction::J.eval(&tau, &ctx).unwrap();
        let scale = 1.0 + j.abs().to_f64();
        for other in [shifted, inverted] {
            let v = NamedFunction::J.eval(&other, &ctx).unwrap();
            prop_assert!(v.dist(&j).to_f64() < 1e-40 * scale);
        }
    }

    #[test]
    fn named_functions_round_trip(k in 2u32..32, n in 1u32..50, l in -40i64..40) {
        let names = [format!("g{}", 2 * k), format!("g2n_{}", n), format!("curly_{}_{}", n.min(k), n.max(k)), format!("g2twist_{}", l)];
        for name in names {
            if let Ok(f) = name.parse::<NamedFunction>() {
                prop_assert_eq!(f.to_string(), name);
            }
        }
    }

    #[test]
    fn golden_files_round_trip(m in 1u32..30, coeffs in prop::collection::vec((0usize..60, -1000i64..1000), 0..20)) {
        let mut text = format!("M {} ORDER 60\n", m);
        let mut seen = std::collections::BTreeMap::new();
        for (n, c) in coeffs {
            seen.insert(n, c);
        }
        for (n, c) in &seen {
            text.push_str(&format!("{} {}\n", n, c));
        }
        let s = QSeries::from_golden(&text).unwrap();
        prop_assert_eq!(QSeries::from_golden(&s.to_golden()).unwrap(), s);
    }

    #[test]
    fn lattice_coefficients_are_multiplicative(label in prop::sample::select(vec!["f16.3.c.a", "f12.3.c.a", "f27.3.b.a", "f112.3.c.a", "f8.5.d.a"]), m in 1u64..30, n in 1u64..30) {
        prop_assume!(gcd(m, n) == 1);
        let f = form_by_label(label).unwrap();
        let a = lattice_coefficients(&f, m * n).unwrap();
        let (m, n) = (m as usize, n as usize);
        prop_assert_eq!(a[m * n].clone(), a[m].clone() * &a[n]);
    }
}
