//! Randomized invariants, checked against brute-force oracles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use ramanujan_core::arith::{gcd, Factorizer};
use ramanujan_core::clouds::{Coefficient, ExoticSigma};
use ramanujan_core::expansion::{partial_sums, Schedule};
use ramanujan_core::hildebrand::{fact_star_check, index_to_support, ArithmeticFn, HildebrandTable};
use ramanujan_core::sums::{divisor_sum_oracle, ramanujan_sum, support_bound_holds};

fn ctx() -> &'static Factorizer {
    static CTX: std::sync::OnceLock<Factorizer> = std::sync::OnceLock::new();
    CTX.get_or_init(|| Factorizer::new(1_100_000))
}

const SMALL_PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

proptest! {
    #[test]
    fn factorization_reconstructs_input(n in 1u64..1_000_000) {
        let fact = ctx().factorize(n).unwrap();
        let rebuilt: u64 = fact.factors().iter().map(|&(p, e)| p.pow(e)).product();
        prop_assert_eq!(rebuilt, n);
        let primes_sorted = fact
            .factors()
            .windows(2)
            .all(|w| w[0].0 < w[1].0);
        prop_assert!(primes_sorted);
        prop_assert!(fact.factors().iter().all(|&(p, e)| e >= 1 && ctx().is_prime(p)));
    }

    #[test]
    fn totient_and_mobius_are_multiplicative(a in 1u64..300, b in 1u64..300) {
        prop_assume!(gcd(a, b) == 1);
        let f = ctx();
        prop_assert_eq!(f.totient(a * b).unwrap(), f.totient(a).unwrap() * f.totient(b).unwrap());
        prop_assert_eq!(f.mobius(a * b).unwrap(), f.mobius(a).unwrap() * f.mobius(b).unwrap());
    }

    #[test]
    fn kernel_and_squarefull_relations(n in 1u64..100_000) {
        let f = ctx();
        let k = f.kernel(n).unwrap();
        prop_assert_eq!(n % k, 0);
        prop_assert_eq!(f.kernel(k).unwrap(), k);
        prop_assert_eq!(f.is_squarefull(n).unwrap(), n % (k * k) == 0);
    }

    #[test]
    fn holder_matches_divisor_sum_oracle(q in 1u64..2_000, a in -2_000i64..2_000) {
        prop_assert_eq!(
            ramanujan_sum(ctx(), q, a).unwrap(),
            divisor_sum_oracle(ctx(), q, a).unwrap()
        );
    }

    #[test]
    fn sum_is_even_and_gcd_bounded(q in 1u64..1_500, a in 1i64..1_500) {
        let f = ctx();
        let c = ramanujan_sum(f, q, a).unwrap();
        prop_assert_eq!(c, ramanujan_sum(f, q, -a).unwrap());
        prop_assert!(c.unsigned_abs() <= gcd(q, a.unsigned_abs()));
    }

    #[test]
    fn nonvanishing_iff_support_bound(q in 1u64..1_000, a in 1u64..500) {
        let f = ctx();
        let nonzero = ramanujan_sum(f, q, a as i64).unwrap() != 0;
        prop_assert_eq!(nonzero, support_bound_holds(f, q, a).unwrap());
    }

    #[test]
    fn support_map_round_trips(m in 1u64..50_000) {
        let f = ctx();
        let s = index_to_support(f, m).unwrap();
        prop_assert!(f.is_squarefull(s).unwrap());
        prop_assert_eq!(s / f.kernel(s).unwrap(), m);
    }

    #[test]
    fn random_value_tables_reconstruct(
        numerators in prop::collection::vec(-50i64..50, 24),
        denominators in prop::collection::vec(1i64..20, 24),
    ) {
        let f = ctx();
        let values: Vec<BigRational> = numerators
            .iter()
            .zip(&denominators)
            .map(|(&n, &d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
            .collect();
        let bound = values.len() as u64;
        let func = ArithmeticFn::Values { name: "random".into(), values: values.clone() };
        let table = HildebrandTable::build(f, &func, bound).unwrap();
        for a in 1..=bound {
            prop_assert_eq!(&table.expand(f, a).unwrap(), &values[a as usize - 1]);
        }
    }

    #[test]
    fn perturbed_tables_break_at_the_perturbed_index(
        numerators in prop::collection::vec(-20i64..20, 16),
        m0 in 1u64..=16,
        delta_num in prop::sample::select(vec![-3i64, -1, 1, 2, 7]),
        delta_den in 1i64..6,
    ) {
        let f = ctx();
        let values: Vec<BigRational> =
            numerators.iter().map(|&n| BigRational::from_integer(n.into())).collect();
        let func = ArithmeticFn::Values { name: "random".into(), values: values.clone() };
        let table = HildebrandTable::build(f, &func, 16).unwrap();
        let delta = BigRational::new(BigInt::from(delta_num), BigInt::from(delta_den));
        let broken = table.with_entry_shifted(m0, &delta).unwrap();
        prop_assert_ne!(&broken.expand(f, m0).unwrap(), &values[m0 as usize - 1]);
    }

    #[test]
    fn squarefull_support_implication_for_tables(q in 1u64..400, a in 1u64..200) {
        let f = ctx();
        let table = HildebrandTable::build(f, &ArithmeticFn::Totient, 24).unwrap();
        let coef = ramanujan_core::clouds::TableCoefficient::new(f, table).unwrap();
        prop_assert!(fact_star_check(f, &coef, q, a).unwrap());
    }

    #[test]
    fn exotic_traces_keep_invariants(
        p0 in prop::sample::select(SMALL_PRIMES.to_vec()),
        sigma in 1.2f64..4.0,
        a in 1u64..40,
        x_max in 10u64..800,
    ) {
        let g = ExoticSigma::new(p0, sigma).unwrap();
        let trace = partial_sums(ctx(), &g, a, x_max, &Schedule::Geometric).unwrap();
        let mut prev_x = 0u64;
        let mut prev_abs = f64::NEG_INFINITY;
        for cp in &trace.checkpoints {
            prop_assert!(cp.x > prev_x);
            prop_assert!(cp.abs >= prev_abs - 1e-12);
            prop_assert!(cp.signed.abs() <= cp.abs + 1e-12);
            prev_x = cp.x;
            prev_abs = cp.abs;
        }
        prop_assert_eq!(trace.checkpoints.last().unwrap().x, x_max);
    }

    #[test]
    fn weak_invariance_under_p0_powers(
        p0 in prop::sample::select(SMALL_PRIMES.to_vec()),
        sigma in 1.2f64..4.0,
        m in 1u64..1_000,
        k in 0u32..10,
    ) {
        prop_assume!(m % p0 != 0);
        let g = ExoticSigma::new(p0, sigma).unwrap();
        let shifted = m.checked_mul(p0.pow(k));
        prop_assume!(shifted.is_some());
        let f = ctx();
        prop_assert_eq!(
            g.eval_f64(f, m).unwrap(),
            g.eval_f64(f, shifted.unwrap()).unwrap()
        );
    }

    #[test]
    fn exact_and_float_exotic_paths_agree(q in 1u64..5_000) {
        let g = ExoticSigma::new(3, 2.0).unwrap();
        let f = ctx();
        let exact = g.eval_exact_at(q).unwrap();
        let float = g.eval_f64(f, q).unwrap();
        let exact_f = exact.numer().to_string().parse::<f64>().unwrap()
            / exact.denom().to_string().parse::<f64>().unwrap();
        prop_assert!((float - exact_f).abs() <= 1e-12 * exact_f.abs().max(1.0));
    }
}

#[test]
fn zero_shift_is_identity_everywhere() {
    let f = ctx();
    let table = HildebrandTable::build(f, &ArithmeticFn::Mobius, 12).unwrap();
    let plain = ramanujan_core::clouds::TableCoefficient::new(f, table.clone()).unwrap();
    let shifted = ramanujan_core::clouds::shift_by_null(
        ramanujan_core::clouds::TableCoefficient::new(f, table).unwrap(),
        Box::new(ramanujan_core::clouds::ZeroCoefficient),
    );
    for q in 1..=150u64 {
        assert_eq!(
            shifted.eval_exact(f, q).unwrap().unwrap(),
            plain.eval_exact(f, q).unwrap().unwrap()
        );
    }
    assert!(BigRational::zero().is_zero());
}
