//! Acceptance suite: one test per release criterion, each printing a
//! single PASS/FAIL line (visible with `cargo test --test acceptance --
//! --nocapture`).

use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use ramanujan_core::arith::{gcd, Factorizer};
use ramanujan_core::clouds::{shift_by_null, ExoticSigma, TableCoefficient};
use ramanujan_core::expansion::{
    certify_membership, null_demo_trace, structured_sums_exact,
};
use ramanujan_core::hildebrand::{index_to_support, ArithmeticFn, HildebrandTable};
use ramanujan_core::sums::{
    cosine_sum, divisor_sum_oracle, ramanujan_sum, ramanujan_sum_factored, support_bound_holds,
    telescope_sum,
};

fn ctx() -> &'static Factorizer {
    static CTX: OnceLock<Factorizer> = OnceLock::new();
    CTX.get_or_init(|| Factorizer::new(1_000_000))
}

fn verdict(number: u32, label: &str, pass: bool, detail: &str) {
    println!(
        "criterion {number} ({label}): {} | {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {number} ({label}) failed: {detail}");
}

#[test]
fn criterion_1_triple_agreement() {
    let f = ctx();
    let started = Instant::now();
    let mut holder_cases = 0u64;
    for q in 1..=300u64 {
        for a in 0..=300i64 {
            assert_eq!(
                ramanujan_sum(f, q, a).unwrap(),
                divisor_sum_oracle(f, q, a).unwrap(),
                "holder vs oracle at q={q} a={a}"
            );
            holder_cases += 1;
        }
    }
    let mut trig_cases = 0u64;
    let mut worst = 0.0f64;
    for q in 1..=200u64 {
        for a in 0..=200i64 {
            let exact = ramanujan_sum(f, q, a).unwrap() as f64;
            let trig = cosine_sum(q, a, 10_000).unwrap();
            let gap = (trig - exact).abs();
            worst = worst.max(gap);
            assert!(gap <= 1e-6, "trig gap {gap} at q={q} a={a}");
            trig_cases += 1;
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    verdict(
        1,
        "ramanujan-sum triple agreement",
        elapsed < 10.0,
        &format!(
            "{holder_cases} holder/oracle cases exact, {trig_cases} trig cases within 1e-6 \
             (worst {worst:.2e}), {elapsed:.2}s < 10s"
        ),
    );
}

#[test]
fn criterion_2_gcd_bound_and_vertical_limit() {
    let f = ctx();
    let mut cases = 0u64;
    for q in 1..=500u64 {
        for a in 1..=200u64 {
            let c = ramanujan_sum(f, q, a as i64).unwrap();
            assert!(
                c.unsigned_abs() <= gcd(q, a),
                "gcd bound violated at q={q} a={a}: |{c}| > {}",
                gcd(q, a)
            );
            assert_eq!(
                c != 0,
                support_bound_holds(f, q, a).unwrap(),
                "vertical-limit equivalence violated at q={q} a={a}"
            );
            cases += 1;
        }
    }
    verdict(
        2,
        "gcd bound and vertical limit",
        true,
        &format!("{cases} cases, zero violations"),
    );
}

#[test]
fn criterion_3_telescoping_identity() {
    let f = ctx();
    let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29];
    let mut cases = 0u64;
    for &p0 in &primes {
        for a in 1..=1000u64 {
            assert_eq!(telescope_sum(f, p0, a).unwrap(), 0, "p0={p0} a={a}");
            cases += 1;
        }
    }
    verdict(
        3,
        "telescoping prime-power identity",
        true,
        &format!("{cases} column sums exactly zero"),
    );
}

#[test]
fn criterion_4_hildebrand_reconstruction() {
    let f = ctx();
    let bound = 200u64;
    let functions = [
        ArithmeticFn::Null,
        ArithmeticFn::One,
        ArithmeticFn::Identity,
        ArithmeticFn::Mobius,
        ArithmeticFn::Totient,
    ];
    for func in &functions {
        let table = HildebrandTable::build(f, func, bound).unwrap();
        for a in 1..=bound {
            assert_eq!(
                table.expand(f, a).unwrap(),
                func.eval(f, a).unwrap(),
                "{} at a={a}",
                func.name()
            );
        }
        for (m, value) in table.iter() {
            if !value.is_zero() {
                let s = index_to_support(f, m).unwrap();
                assert!(f.is_squarefull(s).unwrap(), "support {s} not square-full");
            }
        }
    }

    for a in 2..=10_000u64 {
        let support = f.factorize(a).unwrap().times_kernel().unwrap();
        assert_ne!(
            ramanujan_sum_factored(&support, a as i64),
            0,
            "pivot vanished at a={a}"
        );
    }

    let identity = HildebrandTable::build(f, &ArithmeticFn::Identity, 4).unwrap();
    let expected = [(1i64, 1i64), (-1, 2), (-2, 3), (-1, 1)];
    for (m, (num, den)) in (1u64..=4).zip(expected) {
        assert_eq!(
            identity.entry(m).unwrap(),
            &BigRational::new(BigInt::from(num), BigInt::from(den)),
            "identity spot value at m={m}"
        );
    }
    verdict(
        4,
        "hildebrand reconstruction",
        true,
        &format!(
            "5 functions exact to a={bound}, supports square-full, \
             pivots nonzero to a=10000, spot values 1,-1/2,-2/3,-1"
        ),
    );
}

#[test]
fn criterion_5_exotic_family_certifies_for_null() {
    let f = ctx();
    let started = Instant::now();
    let g = ExoticSigma::new(2, 2.0).unwrap();
    let x_max = 10_000u64;
    let args: Vec<u64> = (1..=10).collect();
    let report = certify_membership(f, &g, &ArithmeticFn::Null, &args, x_max).unwrap();
    let mut worst_bound = 0.0f64;
    for row in &report.rows {
        let bound = row.tail_bound.expect("exotic family carries a tail bound");
        assert!(
            row.residual <= bound,
            "a={}: |S| = {} exceeds bound {bound}",
            row.argument,
            row.residual
        );
        assert!(bound <= 1e-2, "a={}: bound {bound} above 1e-2", row.argument);
        worst_bound = worst_bound.max(bound);
    }
    let elapsed = started.elapsed().as_secs_f64();
    verdict(
        5,
        "exotic family certifies for null",
        report.all_certified() && elapsed < 30.0,
        &format!(
            "a=1..10 at x=10^4 all certified, worst bound {worst_bound:.2e} <= 1e-2, \
             {elapsed:.2}s < 30s"
        ),
    );
}

#[test]
fn criterion_6_shifted_coefficient_certifies_for_identity() {
    let f = ctx();
    let table = HildebrandTable::build(f, &ArithmeticFn::Identity, 20).unwrap();
    let coef = shift_by_null(
        TableCoefficient::new(f, table).unwrap(),
        Box::new(ExoticSigma::new(2, 2.0).unwrap()),
    );
    let args: Vec<u64> = (1..=10).collect();
    let report = certify_membership(f, &coef, &ArithmeticFn::Identity, &args, 10_000).unwrap();
    for row in &report.rows {
        assert!(
            row.tail_bound.is_some(),
            "combined tail bound missing at a={}",
            row.argument
        );
    }
    verdict(
        6,
        "shifted coefficient certifies for identity",
        report.all_certified(),
        "hildebrand(identity,N=20) + exotic(p0=2,sigma=2), a=1..10 all certified",
    );
}

#[test]
fn criterion_7_non_absolute_demo() {
    let f = ctx();
    let trace = null_demo_trace(f, 1, 1_000_000).unwrap();
    let abs_at = |x: u64| {
        trace
            .checkpoints
            .iter()
            .find(|cp| cp.x == x)
            .map(|cp| cp.abs)
            .expect("geometric checkpoint")
    };
    let growth = abs_at(100_000) - abs_at(10_000);
    assert!(
        growth > 1.0 && growth < 1.8,
        "A(1e5) - A(1e4) = {growth} outside (1.0, 1.8)"
    );
    for cp in &trace.checkpoints {
        assert!(
            cp.signed.abs() <= 1.0,
            "|S({})| = {} exceeds 1",
            cp.x,
            cp.signed
        );
    }
    verdict(
        7,
        "non-absolute harmonic demo",
        true,
        &format!(
            "A(1e5)-A(1e4) = {growth:.3} in (1.0, 1.8); |S(x)| <= 1 at all checkpoints to 1e6 \
             (drift observed, not certified)"
        ),
    );
}

#[test]
fn criterion_8_structured_absolute_sum_factorizes_exactly() {
    let f = ctx();
    let g = ExoticSigma::new(2, 2.0).unwrap();
    let mut cases = 0u64;
    for a in 1..=50u64 {
        for y in [120u64, 500] {
            let sums = structured_sums_exact(f, &g, a, y).unwrap();
            assert_eq!(sums.abs_grid, sums.abs_factored, "a={a} y={y}");
            cases += 1;
        }
    }
    verdict(
        8,
        "structured absolute sum factorizes",
        true,
        &format!("{cases} exact equalities (a<=50, y<=500, integer sigma path)"),
    );
}

#[test]
fn criterion_9_uniqueness_probe() {
    let f = ctx();
    let bound = 50u64;
    let table = HildebrandTable::build(f, &ArithmeticFn::Identity, bound).unwrap();
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        // xorshift64*
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        state = state.wrapping_mul(0x2545f4914f6cdd1d);
        state
    };
    let mut broken = 0u32;
    for _ in 0..100 {
        let m0 = next() % bound + 1;
        let num = (next() % 19) as i64 - 9;
        let num = if num == 0 { 5 } else { num };
        let den = (next() % 7 + 1) as i64;
        let delta = BigRational::new(BigInt::from(num), BigInt::from(den));
        let perturbed = table.with_entry_shifted(m0, &delta).unwrap();
        let expanded = perturbed.expand(f, m0).unwrap();
        if expanded != BigRational::from_integer(BigInt::from(m0)) {
            broken += 1;
        }
    }
    verdict(
        9,
        "uniqueness probe",
        broken == 100,
        &format!("{broken}/100 perturbations broke the expansion at the perturbed index"),
    );
}
