//! Truncated Ramanujan expansions: partial-sum traces in the classic
//! ascending order, the structured prime-power-grouped order, and
//! numerical certification of cloud membership against tail bounds.
//!
//! Float accumulation is compensated (Neumaier summation) and strictly
//! ascending in `q`, so traces are reproducible across runs. Coefficients
//! that opt into exact summation accumulate in rational arithmetic
//! instead and their traces carry the exact values alongside the float
//! renderings.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::Factorizer;
use crate::clouds::{Coefficient, ExoticSigma, HarmonicCoefficient};
use crate::error::{Error, Result};
use crate::hildebrand::ArithmeticFn;
use crate::sums::{ramanujan_sum, ramanujan_sum_factored};

/// Largest truncation point accepted by [`null_demo_trace`].
pub const MAX_DEMO_TRUNCATION: u64 = 10_000_000;

/// Compensated (Neumaier) floating-point accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if libm::fabs(self.sum) >= libm::fabs(value) {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Checkpoint schedule for a trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Schedule {
    /// Powers of ten below the truncation point, then the point itself.
    Geometric,
    /// Explicit checkpoints; clamped to `1..=x_max`, the truncation
    /// point is always appended.
    Explicit(Vec<u64>),
}

impl Schedule {
    pub fn checkpoints(&self, x_max: u64) -> Vec<u64> {
        let mut points = match self {
            Schedule::Geometric => {
                let mut v = Vec::new();
                let mut x = 10u64;
                while x < x_max {
                    v.push(x);
                    x = x.saturating_mul(10);
                }
                v
            }
            Schedule::Explicit(xs) => {
                xs.iter().copied().filter(|&x| x >= 1 && x < x_max).collect()
            }
        };
        points.push(x_max);
        points.sort_unstable();
        points.dedup();
        points
    }
}

/// Exact signed/absolute pair at a checkpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactPair {
    pub signed: BigRational,
    pub abs: BigRational,
}

/// One checkpoint of a partial-sum trace.
#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub x: u64,
    /// `S(x) = Σ_{q ≤ x} G(q)·c_q(a)`.
    pub signed: f64,
    /// `A(x) = Σ_{q ≤ x} |G(q)·c_q(a)|`.
    pub abs: f64,
    /// Present on the exact accumulation path.
    pub exact: Option<ExactPair>,
}

/// Signed and absolute partial sums of one `(G, a)` pair, checkpointed.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSumTrace {
    pub coefficient: String,
    pub argument: u64,
    pub checkpoints: Vec<Checkpoint>,
}

impl PartialSumTrace {
    /// Final signed partial sum `S(x_max)`.
    pub fn final_signed(&self) -> f64 {
        self.checkpoints.last().map_or(0.0, |c| c.signed)
    }

    /// Final absolute partial sum `A(x_max)`.
    pub fn final_abs(&self) -> f64 {
        self.checkpoints.last().map_or(0.0, |c| c.abs)
    }
}

/// Classic-order partial sums `q = 1, 2, …, x_max` with checkpoints.
pub fn partial_sums(
    ctx: &Factorizer,
    g: &dyn Coefficient,
    a: u64,
    x_max: u64,
    schedule: &Schedule,
) -> Result<PartialSumTrace> {
    if a == 0 || x_max == 0 {
        return Err(Error::ZeroInput);
    }
    let marks = schedule.checkpoints(x_max);
    let mut checkpoints = Vec::with_capacity(marks.len());
    let mut next = 0usize;

    if g.exact_summation() {
        let mut signed = BigRational::zero();
        let mut abs = BigRational::zero();
        for q in 1..=x_max {
            let c = ramanujan_sum(ctx, q, a as i64)?;
            if c != 0 {
                let value = g
                    .eval_exact(ctx, q)?
                    .ok_or_else(|| Error::NoExactPath(g.name()))?;
                if !value.is_zero() {
                    let term = value * BigRational::from_integer(c.into());
                    abs += term.abs();
                    signed += term;
                }
            }
            while next < marks.len() && marks[next] == q {
                checkpoints.push(Checkpoint {
                    x: q,
                    signed: signed.to_f64().unwrap_or(f64::NAN),
                    abs: abs.to_f64().unwrap_or(f64::NAN),
                    exact: Some(ExactPair { signed: signed.clone(), abs: abs.clone() }),
                });
                next += 1;
            }
        }
    } else {
        let mut signed = CompensatedSum::new();
        let mut abs = CompensatedSum::new();
        for q in 1..=x_max {
            let c = ramanujan_sum(ctx, q, a as i64)?;
            if c != 0 {
                let term = g.eval_f64(ctx, q)? * c as f64;
                signed.add(term);
                abs.add(libm::fabs(term));
            }
            while next < marks.len() && marks[next] == q {
                checkpoints.push(Checkpoint {
                    x: q,
                    signed: signed.value(),
                    abs: abs.value(),
                    exact: None,
                });
                next += 1;
            }
        }
    }
    Ok(PartialSumTrace { coefficient: g.name(), argument: a, checkpoints })
}

/// Summation direction for [`signed_sum_f64`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumOrder {
    Ascending,
    Descending,
}

/// Signed float partial sum over `q ≤ x_max` in the requested order.
///
/// Exists to observe order-robustness at certification scale; traces
/// always use the ascending contract.
pub fn signed_sum_f64(
    ctx: &Factorizer,
    g: &dyn Coefficient,
    a: u64,
    x_max: u64,
    order: SumOrder,
) -> Result<f64> {
    if a == 0 || x_max == 0 {
        return Err(Error::ZeroInput);
    }
    let mut signed = CompensatedSum::new();
    let mut add = |q: u64| -> Result<()> {
        let c = ramanujan_sum(ctx, q, a as i64)?;
        if c != 0 {
            signed.add(g.eval_f64(ctx, q)? * c as f64);
        }
        Ok(())
    };
    match order {
        SumOrder::Ascending => {
            for q in 1..=x_max {
                add(q)?;
            }
        }
        SumOrder::Descending => {
            for q in (1..=x_max).rev() {
                add(q)?;
            }
        }
    }
    Ok(signed.value())
}

/// Float sums over the structured grid `q = p0^K·m`, `K ≤ v_{p0}(a)+1`,
/// `m ≤ m_cutoff` coprime to `p0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructuredSums {
    /// Signed sum over the grid, term by term.
    pub signed: f64,
    /// Absolute sum over the grid, term by term.
    pub abs_grid: f64,
    /// `(Σ_K |c_{p0^K}(a)|)·(Σ_m |G(m)·c_m(a)|)`.
    pub abs_factored: f64,
}

/// Exact counterpart of [`StructuredSums`] (integer `σ` only).
#[derive(Debug, Clone, PartialEq)]
pub struct StructuredSumsExact {
    pub signed: BigRational,
    pub abs_grid: BigRational,
    pub abs_factored: BigRational,
}

/// Structured-order float sums for the exotic family.
///
/// The grid covers every modulus with a nonzero term up to coprime
/// index `m_cutoff`: higher prime-power levels are killed by the
/// vertical limit. Multiplicativity makes the absolute sum factor into
/// column times coprime part; both routes are computed independently.
pub fn structured_sums_f64(
    ctx: &Factorizer,
    g: &ExoticSigma,
    a: u64,
    m_cutoff: u64,
) -> Result<StructuredSums> {
    if a == 0 || m_cutoff == 0 {
        return Err(Error::ZeroInput);
    }
    let p0 = g.p0();
    let levels = column_levels(ctx, p0, a)?;

    let mut signed = CompensatedSum::new();
    let mut abs_grid = CompensatedSum::new();
    let mut coprime_abs = CompensatedSum::new();
    for m in 1..=m_cutoff {
        if m % p0 == 0 {
            continue;
        }
        let c_m = ramanujan_sum(ctx, m, a as i64)?;
        if c_m != 0 {
            coprime_abs.add(libm::fabs(g.eval_f64(ctx, m)? * c_m as f64));
        }
        for (k, _) in levels.iter().enumerate() {
            let q = checked_grid_point(p0, k as u32, m)?;
            let c_q = ramanujan_sum(ctx, q, a as i64)?;
            if c_q != 0 {
                let term = g.eval_f64(ctx, q)? * c_q as f64;
                signed.add(term);
                abs_grid.add(libm::fabs(term));
            }
        }
    }
    let column_total: f64 = levels.iter().map(|&c| libm::fabs(c as f64)).sum();
    Ok(StructuredSums {
        signed: signed.value(),
        abs_grid: abs_grid.value(),
        abs_factored: column_total * coprime_abs.value(),
    })
}

/// Structured-order exact sums for the exotic family with integer `σ`.
pub fn structured_sums_exact(
    ctx: &Factorizer,
    g: &ExoticSigma,
    a: u64,
    m_cutoff: u64,
) -> Result<StructuredSumsExact> {
    if a == 0 || m_cutoff == 0 {
        return Err(Error::ZeroInput);
    }
    let p0 = g.p0();
    let levels = column_levels(ctx, p0, a)?;

    let mut signed = BigRational::zero();
    let mut abs_grid = BigRational::zero();
    let mut coprime_abs = BigRational::zero();
    for m in 1..=m_cutoff {
        if m % p0 == 0 {
            continue;
        }
        let c_m = ramanujan_sum(ctx, m, a as i64)?;
        if c_m != 0 {
            let term = g.eval_exact_at(m)? * BigRational::from_integer(c_m.into());
            coprime_abs += term.abs();
        }
        for (k, _) in levels.iter().enumerate() {
            let q = checked_grid_point(p0, k as u32, m)?;
            let c_q = ramanujan_sum(ctx, q, a as i64)?;
            if c_q != 0 {
                let term = g.eval_exact_at(q)? * BigRational::from_integer(c_q.into());
                abs_grid += term.abs();
                signed += term;
            }
        }
    }
    let mut column_total = BigRational::zero();
    for &c in &levels {
        column_total += BigRational::from_integer(c.abs().into());
    }
    Ok(StructuredSumsExact {
        signed,
        abs_grid,
        abs_factored: column_total * coprime_abs,
    })
}

fn column_levels(ctx: &Factorizer, p0: u64, a: u64) -> Result<Vec<i64>> {
    let v = ctx.valuation(p0, a)?;
    let mut levels = Vec::with_capacity(v as usize + 2);
    for k in 0..=v + 1 {
        let pk = crate::arith::Factorization::prime_power(p0, k)?;
        levels.push(ramanujan_sum_factored(&pk, a as i64));
    }
    Ok(levels)
}

fn checked_grid_point(p0: u64, k: u32, m: u64) -> Result<u64> {
    let mut q = m;
    for _ in 0..k {
        q = q.checked_mul(p0).ok_or(Error::Overflow("structured grid point"))?;
    }
    Ok(q)
}

/// Per-argument certification outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub argument: u64,
    /// `S(x_max)`.
    pub partial_sum: f64,
    /// `F(a)`.
    pub target_value: f64,
    /// `|S(x_max) − F(a)|` (exactly zero on the exact path when it is).
    pub residual: f64,
    /// Certified tail bound at `x_max`, when the coefficient has one.
    pub tail_bound: Option<f64>,
    /// True only when a tail bound exists and dominates the residual.
    pub certified: bool,
}

/// Certification report for one coefficient against one target function.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionReport {
    pub coefficient: String,
    pub target: String,
    pub x_max: u64,
    pub rows: Vec<ReportRow>,
}

impl ExpansionReport {
    pub fn all_certified(&self) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(|r| r.certified)
    }
}

/// Checks `|S(x_max) − F(a)| ≤ tail(a, x_max)` for each requested
/// argument. A missing tail bound marks the row uncertified; it is not
/// an error.
pub fn certify_membership(
    ctx: &Factorizer,
    g: &dyn Coefficient,
    target: &ArithmeticFn,
    arguments: &[u64],
    x_max: u64,
) -> Result<ExpansionReport> {
    if x_max == 0 {
        return Err(Error::ZeroInput);
    }
    let schedule = Schedule::Explicit(vec![x_max]);
    let mut rows = Vec::with_capacity(arguments.len());
    for &a in arguments {
        if a == 0 {
            return Err(Error::ZeroInput);
        }
        let trace = partial_sums(ctx, g, a, x_max, &schedule)?;
        let last = trace.checkpoints.last().expect("schedule ends at x_max");
        let target_exact = target.eval(ctx, a)?;
        let target_value = target_exact.to_f64().unwrap_or(f64::NAN);
        let residual = match &last.exact {
            Some(pair) => (&pair.signed - &target_exact)
                .abs()
                .to_f64()
                .unwrap_or(f64::NAN),
            None => libm::fabs(last.signed - target_value),
        };
        let tail_bound = g.tail_bound(ctx, a, x_max)?;
        let certified = matches!(tail_bound, Some(t) if residual <= t);
        rows.push(ReportRow {
            argument: a,
            partial_sum: last.signed,
            target_value,
            residual,
            tail_bound,
            certified,
        });
    }
    Ok(ExpansionReport {
        coefficient: g.name(),
        target: target.name().into(),
        x_max,
        rows,
    })
}

/// Ramanujan's classic non-absolute expansion of the null function,
/// `G(q) = 1/q`: the signed sums drift toward zero while the absolute
/// sums grow without bound. Observed, never certified; finite numerics
/// cannot settle it.
pub fn null_demo_trace(ctx: &Factorizer, a: u64, x_max: u64) -> Result<PartialSumTrace> {
    if x_max > MAX_DEMO_TRUNCATION {
        return Err(Error::InputTooLarge { n: x_max, max: MAX_DEMO_TRUNCATION });
    }
    partial_sums(ctx, &HarmonicCoefficient, a, x_max, &Schedule::Geometric)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clouds::{shift_by_null, TableCoefficient, ZeroCoefficient};
    use crate::hildebrand::HildebrandTable;
    use num_bigint::BigInt;

    fn ctx() -> Factorizer {
        Factorizer::new(20_000)
    }

    #[test]
    fn geometric_schedule_shapes() {
        assert_eq!(Schedule::Geometric.checkpoints(100), vec![10, 100]);
        assert_eq!(Schedule::Geometric.checkpoints(10_000), vec![10, 100, 1000, 10_000]);
        assert_eq!(Schedule::Geometric.checkpoints(5), vec![5]);
        assert_eq!(Schedule::Geometric.checkpoints(250), vec![10, 100, 250]);
        assert_eq!(
            Schedule::Explicit(vec![7, 3, 900, 3]).checkpoints(50),
            vec![3, 7, 50]
        );
    }

    #[test]
    fn zero_coefficient_trace_is_zero() {
        let f = ctx();
        let trace =
            partial_sums(&f, &ZeroCoefficient, 5, 1000, &Schedule::Geometric).unwrap();
        for cp in &trace.checkpoints {
            assert_eq!(cp.signed, 0.0);
            assert_eq!(cp.abs, 0.0);
            assert!(cp.exact.as_ref().unwrap().signed.is_zero());
        }
    }

    #[test]
    fn table_coefficient_sums_to_target_exactly() {
        let f = ctx();
        let table = HildebrandTable::build(&f, &ArithmeticFn::Identity, 12).unwrap();
        let coef = TableCoefficient::new(&f, table).unwrap();
        let end = coef.support_end().unwrap();
        for a in 1..=12u64 {
            let trace = partial_sums(&f, &coef, a, end, &Schedule::Geometric).unwrap();
            let exact = &trace.checkpoints.last().unwrap().exact;
            assert_eq!(
                exact.as_ref().unwrap().signed,
                BigRational::from_integer(BigInt::from(a))
            );
        }
    }

    #[test]
    fn trace_invariants_hold() {
        let f = ctx();
        let g = ExoticSigma::new(2, 2.0).unwrap();
        for a in 1..=6u64 {
            let trace = partial_sums(&f, &g, a, 2_000, &Schedule::Geometric).unwrap();
            let mut prev_x = 0;
            let mut prev_abs = -1.0;
            for cp in &trace.checkpoints {
                assert!(cp.x > prev_x);
                assert!(cp.abs >= prev_abs);
                assert!(libm::fabs(cp.signed) <= cp.abs + 1e-12);
                prev_x = cp.x;
                prev_abs = cp.abs;
            }
        }
    }

    #[test]
    fn structured_exact_identity_factorizes() {
        let f = ctx();
        let g = ExoticSigma::new(2, 2.0).unwrap();
        for a in [1u64, 4, 6, 9] {
            let sums = structured_sums_exact(&f, &g, a, 120).unwrap();
            assert_eq!(sums.abs_grid, sums.abs_factored, "a = {a}");
        }
    }

    #[test]
    fn certify_identity_table() {
        let f = ctx();
        let table = HildebrandTable::build(&f, &ArithmeticFn::Identity, 20).unwrap();
        let coef = TableCoefficient::new(&f, table).unwrap();
        let end = coef.support_end().unwrap();
        let args: Vec<u64> = (1..=20).collect();
        let report =
            certify_membership(&f, &coef, &ArithmeticFn::Identity, &args, end).unwrap();
        assert!(report.all_certified());
        for row in &report.rows {
            assert_eq!(row.residual, 0.0);
            assert_eq!(row.tail_bound, Some(0.0));
        }
    }

    #[test]
    fn certify_exotic_against_null() {
        let f = ctx();
        let g = ExoticSigma::new(2, 2.0).unwrap();
        let args: Vec<u64> = (1..=6).collect();
        let report =
            certify_membership(&f, &g, &ArithmeticFn::Null, &args, 5_000).unwrap();
        assert!(report.all_certified());
    }

    #[test]
    fn uncertified_without_tail_bound() {
        let f = ctx();
        let report = certify_membership(
            &f,
            &HarmonicCoefficient,
            &ArithmeticFn::Null,
            &[1, 2],
            1_000,
        )
        .unwrap();
        assert!(!report.all_certified());
        assert!(report.rows.iter().all(|r| r.tail_bound.is_none()));
    }

    #[test]
    fn shifted_coefficient_certifies_for_target() {
        let f = ctx();
        let table = HildebrandTable::build(&f, &ArithmeticFn::Identity, 8).unwrap();
        let coef = shift_by_null(
            TableCoefficient::new(&f, table).unwrap(),
            Box::new(ExoticSigma::new(2, 2.0).unwrap()),
        );
        let args: Vec<u64> = (1..=8).collect();
        let report =
            certify_membership(&f, &coef, &ArithmeticFn::Identity, &args, 5_000).unwrap();
        assert!(report.all_certified());
    }

    #[test]
    fn demo_trace_caps_truncation() {
        let f = ctx();
        assert!(matches!(
            null_demo_trace(&f, 1, MAX_DEMO_TRUNCATION + 1),
            Err(Error::InputTooLarge { .. })
        ));
        let trace = null_demo_trace(&f, 1, 1_000).unwrap();
        assert_eq!(trace.checkpoints.len(), 3);
        assert!(trace.final_abs() > trace.checkpoints[0].abs);
        assert!(libm::fabs(trace.final_signed()) <= 1.0);
    }
}
