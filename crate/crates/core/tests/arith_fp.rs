use cmlval::arith::*;
use cmlval::numerics::numtheory::{gcd, primes_up_to};
use cmlval::Error;
use proptest::prelude::*;
use rug::{Integer, Rational};

fn q(n: i64, m: u64) -> Rational {
    Rational::from((n, m))
}

fn coeffs(label: &str, n: u64) -> Vec<i64> {
    let f = form_by_label(label).unwrap();
    let a = lattice_coefficients(&f, n).unwrap();
    (1..=n as usize).map(|k| a[k].to_i64().unwrap()).collect()
}

#[test]
fn f16_coefficients() {
    let f = form_by_label("f16.3.c.a").unwrap();
    assert_eq!(lattice_an(&f, 1).unwrap(), 1);
    assert_eq!(lattice_an(&f, 3).unwrap(), 0);
    assert_eq!(lattice_an(&f, 5).unwrap(), -6);
    assert!(lattice_an(&f, 0).is_err());
}

#[test]
fn frozen_coefficients() {
    // independent enumeration in exact rational arithmetic
    assert_eq!(coeffs("f7.3.b.a", 11), vec![1, -3, 0, 5, 0, 0, -7, -3, 9, 0, -6]);
    assert_eq!(coeffs("f300.3.g.b", 9), vec![1, 0, 3, 0, 0, 0, -2, 0, 9]);
    assert_eq!(
        coeffs("f15.3.d.b", 19),
        vec![1, 1, -3, -3, 5, -3, 0, -7, 9, 5, 0, 9, 0, 0, -15, 5, -14, 9, -22]
    );
    assert_eq!(
        coeffs("f15.minus", 19),
        vec![1, -1, 3, -3, -5, -3, 0, 7, 9, 5, 0, -9, 0, 0, -15, 5, 14, -9, -22]
    );
    assert_eq!(coeffs("f704.3.h.a", 9), vec![1, 0, -5, 0, 1, 0, 0, 0, 16]);
    assert_eq!(coeffs("f8.5.d.a", 11), vec![1, 4, -14, 16, 0, -56, 0, 64, 115, 0, -46]);
    assert_eq!(coeffs("f32.7.d.a", 11), vec![1, 0, -46, 0, 0, 0, 0, 0, 1387, 0, 2338]);
    let f32 = coeffs("f32.3.d.a", 19);
    assert_eq!((f32[2], f32[8], f32[10], f32[16], f32[18]), (2, -5, -14, 2, 34));
    let f16 = coeffs("f16.3.c.a", 13);
    assert_eq!((f16[4], f16[8], f16[12]), (-6, 9, 10));
}

#[test]
fn every_fixture_form_is_an_integral_eigenform() {
    for f in load_forms().unwrap() {
        let a = lattice_coefficients(&f, 2500).unwrap();
        assert_eq!(a[1], 1, "{}", f.label);
        for m in 1..=50u64 {
            for n in 1..=50u64 {
                if gcd(m, n) == 1 {
                    let lhs = &a[(m * n) as usize];
                    let rhs = Integer::from(&a[m as usize] * &a[n as usize]);
                    assert_eq!(*lhs, rhs, "{} a_{}a_{}", f.label, m, n);
                }
            }
        }
        for p in primes_up_to(49).into_iter().skip(1) {
            if f.level % p == 0 {
                continue;
            }
            let (lhs, rhs) = euler_factor_sides(&f, p).unwrap();
            assert_eq!(lhs, rhs, "{} Euler factor at {}", f.label, p);
            assert!(satisfies_ramanujan_bound(&f, p).unwrap(), "{} at {}", f.label, p);
            if f.chi_field(p) == -1 {
                assert_eq!(a[p as usize], 0, "{} inert at {}", f.label, p);
            }
        }
    }
}

#[test]
fn spec_trace_identities() {
    let f27 = form_by_label("f27.3.b.a").unwrap();
    assert!(verify_trace_identity(3, &q(-9, 16), 7, &f27).unwrap().pass);
    let f32 = form_by_label("f32.3.d.a").unwrap();
    let c = verify_trace_identity(2, &q(-1, 1), 17, &f32).unwrap();
    assert!(c.pass && !c.inert);
    let c = verify_trace_identity(2, &q(-1, 1), 5, &f32).unwrap();
    assert!(c.inert && c.pass && c.actual == 0);
    assert_eq!(verify_trace_identity(2, &q(-1, 1), 3, &f32), Err(Error::BadReduction(3)));
}

#[test]
fn all_three_clausen_branches_occur() {
    let f48 = form_by_label("f48.3.e.a").unwrap();
    let checks = trace_sweep(2, &q(1, 4), &f48, 120).unwrap();
    assert!(checks.iter().all(|c| c.pass), "{:?}", checks.iter().find(|c| !c.pass));
    assert!(checks.iter().any(|c| c.branch == Some(ClausenBranch::SquareModP)));
    assert!(checks.iter().any(|c| c.branch == Some(ClausenBranch::NonSquareModP)));
    let f16 = form_by_label("f16.3.c.a").unwrap();
    let checks = trace_sweep(2, &q(-8, 1), &f16, 120).unwrap();
    assert!(checks.iter().all(|c| c.pass));
    assert!(checks.iter().any(|c| c.branch == Some(ClausenBranch::RationalSquare)));
    assert!(checks.iter().any(|c| c.inert));
}

#[test]
fn conductor_27_curve_trace_is_a_jacobi_sum() {
    let e = CurveModel::new(3, q(-1, 8)).unwrap();
    let pi = jacobi_sum_primary(13, 3).unwrap();
    assert_eq!(count_points(&e, 13).unwrap(), -pi.trace());
    for p in primes_up_to(200).into_iter().filter(|p| p % 3 == 1) {
        let pi = jacobi_sum_primary(p, 3).unwrap();
        assert_eq!(count_points(&e, p).unwrap(), -pi.trace(), "p = {}", p);
    }
}

#[test]
fn quartic_jacobi_sum_gives_conductor_32_trace() {
    // y^2 = x(1-x)(x-1/2) has CM by Z[i]; its trace is the trace of the primary prime
    let e = CurveModel::new(2, q(1, 2)).unwrap();
    for p in primes_up_to(200).into_iter().filter(|p| p % 4 == 1) {
        let pi = jacobi_sum_primary(p, 4).unwrap();
        assert_eq!(count_points(&e, p).unwrap().abs(), pi.trace().abs(), "p = {}", p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hasse_bound(d in prop::sample::select(vec![2u32, 3, 4, 6]), n in -50i64..50, m in 1u64..20, idx in 2usize..40) {
        let p = primes_up_to(200)[idx];
        let e = CurveModel::new(d, q(n, m)).unwrap();
        if let Ok(a) = count_points(&e, p) {
            prop_assert!((a * a) as u64 <= 4 * p);
        }
    }

    #[test]
    fn hd3_square_branch_is_hd2_squared(num in -40i64..40, den in 1u64..12, idx in 2usize..30) {
        let p = primes_up_to(200)[idx];
        let z = q(num, den);
        let t = Rational::from(4 * Rational::from(&z * (Rational::from(1) - &z)));
        if t == 0 || t == 1 {
            return Ok(());
        }
        let h3 = hp_with_branch(&FiniteFieldDatum::hd3(2, t).unwrap(), p);
        let h2 = hp(&FiniteFieldDatum::hd2(2, z).unwrap(), p);
        if let (Ok((h3, _)), Ok(h2)) = (h3, h2) {
            prop_assert_eq!(h3, h2 * h2 - p as i64);
        }
    }
}
