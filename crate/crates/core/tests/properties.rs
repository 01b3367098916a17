//! Randomized property tests for the exact arithmetic layers.

use num::rational::BigRational;
use num::traits::Zero;
use num::BigInt;
use proptest::prelude::*;

use zolotarev_core::numtheory::gcd;
use zolotarev_core::ratfun::{
    dissect, from_periodic, reconstruct, taylor, to_periodic, Poly, RationalFunction,
};
use zolotarev_core::series::{CycValue, PeriodicSeries};
use zolotarev_core::zgraph::{build, census_bruteforce, census_formula};

fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// Random rational function analytic at the origin: small integer
/// coefficients, denominator constant term forced to 1.
fn arb_rational_function() -> impl Strategy<Value = RationalFunction> {
    (
        prop::collection::vec(-4i64..=4, 1..=5),
        prop::collection::vec(-3i64..=3, 0..=4),
    )
        .prop_map(|(num, mut den_tail)| {
            let mut den = vec![1i64];
            den.append(&mut den_tail);
            RationalFunction::from_integers(&num, &den).expect("den(0) = 1")
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn reconstruct_inverts_taylor(f in arb_rational_function()) {
        let dn = f.numerator().degree().unwrap_or(0);
        let dd = f.denominator().degree().unwrap_or(0);
        let terms = 2 * (dn + dd) + 6;
        let prefix = taylor(&f, terms);
        let g = reconstruct(&prefix).expect("enough terms");
        prop_assert_eq!(g, f);
    }

    #[test]
    fn dissection_picks_every_nth(coeffs in prop::collection::vec(-9i64..=9, 1..60), n in 1u64..9) {
        let seq: Vec<BigRational> = coeffs.iter().map(|&c| rat(c)).collect();
        let out = dissect(&seq, n);
        prop_assert_eq!(out.len(), (seq.len() - 1) / n as usize + 1);
        for (k, v) in out.iter().enumerate() {
            prop_assert_eq!(v, &seq[k * n as usize]);
        }
    }

    #[test]
    fn census_routes_agree_randomized(n in 1u64..=200, level in 1u64..=200) {
        let formula = census_formula(n, level).expect("formula is integral");
        let brute = census_bruteforce(&build(n, level));
        prop_assert_eq!(formula, brute);
    }

    #[test]
    fn periodic_round_trip_weight_one(coeffs in prop::collection::vec(-5i64..=5, 1..=12)) {
        let level = coeffs.len() as u64;
        let series = PeriodicSeries::new(level, 1, coeffs.iter().map(|&c| rat(c)).collect());
        let f = from_periodic(&series).expect("reconstructs");
        if series.is_zero() {
            prop_assert!(f.is_zero());
        } else {
            let back = to_periodic(&f, 200).expect("membership");
            // The round trip lands on the minimal period of the series.
            prop_assert_eq!(back.level(), series.minimal_level());
            for k in 0..level {
                prop_assert_eq!(back.coeff(k), series.coeff(k));
            }
        }
    }

    #[test]
    fn periodic_round_trip_weight_two(coeffs in prop::collection::vec(-4i64..=4, 1..=8)) {
        let level = coeffs.len() as u64;
        let series = PeriodicSeries::new(level, 2, coeffs.iter().map(|&c| rat(c)).collect());
        let f = from_periodic(&series).expect("reconstructs");
        if !series.is_zero() {
            let back = to_periodic(&f, 200).expect("membership");
            prop_assert_eq!(back.weight(), 2);
            for k in 0..level {
                prop_assert_eq!(back.coeff(k), series.coeff(k));
            }
        }
    }

    #[test]
    fn cyc_values_form_a_group(o1 in 1u64..24, e1 in 0u64..24, o2 in 1u64..24, e2 in 0u64..24) {
        let a = CycValue::root(o1, e1 % o1);
        let b = CycValue::root(o2, e2 % o2);
        // Associative-commutative product with exact inverses.
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&a.inverse().unwrap()), CycValue::one());
        let prod = a.mul(&b);
        prop_assert_eq!(prod.mul(&b.inverse().unwrap()), a);
    }

    #[test]
    fn polynomial_gcd_divides_both(a in prop::collection::vec(-3i64..=3, 1..=5),
                                   b in prop::collection::vec(-3i64..=3, 1..=5)) {
        let pa = Poly::from_integers(&a);
        let pb = Poly::from_integers(&b);
        let g = pa.gcd(&pb);
        if !g.is_zero() {
            prop_assert!(pa.exact_div(&g).is_some());
            prop_assert!(pb.exact_div(&g).is_some());
        } else {
            prop_assert!(pa.is_zero() && pb.is_zero());
        }
    }

    #[test]
    fn simplified_level_strips_exactly(level in 1u64..=400, n in 1u64..=400) {
        let s = zolotarev_core::numtheory::simplified_level(level, n);
        prop_assert_eq!(gcd(s.value, n), 1);
        prop_assert_eq!(level % s.value, 0);
        // Nothing larger works.
        for d in zolotarev_core::numtheory::divisors(level) {
            if d > s.value {
                prop_assert!(gcd(d, n) > 1);
            }
        }
    }

    #[test]
    fn taylor_satisfies_denominator_recurrence(f in arb_rational_function(), terms in 8usize..40) {
        let prefix = taylor(&f, terms);
        let den = f.denominator();
        let deg = den.degree().unwrap();
        let num = f.numerator();
        for k in 0..terms {
            let mut acc = BigRational::zero();
            for i in 0..=deg.min(k) {
                acc += den.coeff(i) * &prefix[k - i];
            }
            prop_assert_eq!(acc, num.coeff(k));
        }
    }
}
