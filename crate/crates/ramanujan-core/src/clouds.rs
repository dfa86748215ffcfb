//! Ramanujan coefficients of the null function with absolutely
//! convergent expansions, and shifts of exact coefficients by them.
//!
//! A multiplicative `G` with `G(p0^K) = 1` for every `K ≥ 0` at some
//! prime `p0` sums to zero against `c_q(a)` whenever its restriction to
//! moduli coprime to `p0` is absolutely summable: grouping `q = p0^K·m`
//! factorizes the absolute series into a finite column
//! `Σ_{K ≤ v+1} |c_{p0^K}(a)|` times the coprime part, and the signed
//! column telescopes to zero. [`ExoticSigma`] realizes the concrete
//! one-parameter family `G(p^K) = p^{−σK}` for `p ≠ p0`, `σ > 1`; it is
//! nonzero everywhere yet expands the null function absolutely.
//!
//! Dropping multiplicativity, any `G` with `G(m·p0^K) = G(m)` on `m`
//! coprime to `p0` works the same way ([`WeaklyExotic`]).
//!
//! Adding such a null coefficient to a finite-support coefficient of `F`
//! ([`ShiftedCoefficient`]) yields another coefficient of `F`, which is
//! how every arithmetic function acquires infinitely many absolutely
//! convergent expansions.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::arith::{is_prime, Factorization, Factorizer};
use crate::error::{Error, Result};
use crate::hildebrand::{ArithmeticFn, HildebrandTable};
use crate::sums::{ramanujan_sum, ramanujan_sum_factored};

/// Structural class of a coefficient, as far as certification cares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientKind {
    /// Identically zero.
    Zero,
    /// Multiplicative with value 1 on all powers of `p0`.
    Exotic { p0: u64 },
    /// Invariant under multiplication of the argument by powers of `p0`.
    WeaklyExotic { p0: u64 },
    /// Zero outside finitely many moduli.
    FiniteSupport,
    /// Finite-support part plus a null-coefficient part.
    Shifted,
    /// No structure claimed.
    Generic,
}

/// A Ramanujan-coefficient candidate `G : N → R`.
///
/// Evaluation is pure; implementations are immutable after construction
/// and safe to share across threads. The trait carries the optional
/// capabilities certification relies on: an exact rational value path,
/// and a certified upper bound on the absolute tail
/// `Σ_{q > x} |G(q)·c_q(a)|`.
pub trait Coefficient: Send + Sync {
    fn name(&self) -> String;

    fn kind(&self) -> CoefficientKind;

    /// `G(q)` as a float.
    fn eval_f64(&self, ctx: &Factorizer, q: u64) -> Result<f64>;

    /// `G(q)` as an exact rational, when the coefficient has an exact
    /// representation (`Ok(None)` otherwise).
    fn eval_exact(&self, _ctx: &Factorizer, _q: u64) -> Result<Option<BigRational>> {
        Ok(None)
    }

    /// True when partial sums should accumulate in exact arithmetic.
    ///
    /// Opt-in: an exact per-point value does not make exact accumulation
    /// affordable, since denominators compound along the sum.
    fn exact_summation(&self) -> bool {
        false
    }

    /// Largest modulus with `G(q) ≠ 0`, for finite-support coefficients.
    fn support_end(&self) -> Option<u64> {
        None
    }

    /// Certified bound on `Σ_{q > x} |G(q)·c_q(a)|`, when available.
    fn tail_bound(&self, _ctx: &Factorizer, _a: u64, _x: u64) -> Result<Option<f64>> {
        Ok(None)
    }
}

/// Certified tail bound of a coefficient, as a hard error when absent.
pub fn abs_tail_bound(ctx: &Factorizer, g: &dyn Coefficient, a: u64, x: u64) -> Result<f64> {
    g.tail_bound(ctx, a, x)?
        .ok_or_else(|| Error::NoTailBound(g.name()))
}

/// The trivial null coefficient.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroCoefficient;

impl Coefficient for ZeroCoefficient {
    fn name(&self) -> String {
        "zero".to_owned()
    }

    fn kind(&self) -> CoefficientKind {
        CoefficientKind::Zero
    }

    fn eval_f64(&self, _ctx: &Factorizer, q: u64) -> Result<f64> {
        if q == 0 {
            return Err(Error::ZeroInput);
        }
        Ok(0.0)
    }

    fn eval_exact(&self, _ctx: &Factorizer, q: u64) -> Result<Option<BigRational>> {
        if q == 0 {
            return Err(Error::ZeroInput);
        }
        Ok(Some(BigRational::zero()))
    }

    fn exact_summation(&self) -> bool {
        true
    }

    fn support_end(&self) -> Option<u64> {
        Some(0)
    }

    fn tail_bound(&self, _ctx: &Factorizer, a: u64, _x: u64) -> Result<Option<f64>> {
        if a == 0 {
            return Err(Error::ZeroInput);
        }
        Ok(Some(0.0))
    }
}

/// Ramanujan's classic `G(q) = 1/q`, kept for the divergence demo.
///
/// Its expansion of the null function converges but not absolutely, so
/// it carries no tail bound and never certifies.
#[derive(Debug, Clone, Copy, Default)]
pub struct HarmonicCoefficient;

impl Coefficient for HarmonicCoefficient {
    fn name(&self) -> String {
        "harmonic".to_owned()
    }

    fn kind(&self) -> CoefficientKind {
        CoefficientKind::Generic
    }

    fn eval_f64(&self, _ctx: &Factorizer, q: u64) -> Result<f64> {
        if q == 0 {
            return Err(Error::ZeroInput);
        }
        Ok(1.0 / q as f64)
    }

    fn eval_exact(&self, _ctx: &Factorizer, q: u64) -> Result<Option<BigRational>> {
        if q == 0 {
            return Err(Error::ZeroInput);
        }
        Ok(Some(BigRational::new(BigInt::one(), BigInt::from(q))))
    }
}

/// An arithmetic function reused as a coefficient, `G(q) = F(q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionCoefficient(pub ArithmeticFn);

impl Coefficient for FunctionCoefficient {
    fn name(&self) -> String {
        self.0.name().to_owned()
    }

    fn kind(&self) -> CoefficientKind {
        match self.0 {
            ArithmeticFn::Null => CoefficientKind::Zero,
            _ => CoefficientKind::Generic,
        }
    }

    fn eval_f64(&self, ctx: &Factorizer, q: u64) -> Result<f64> {
        Ok(self.0.eval(ctx, q)?.to_f64().unwrap_or(f64::NAN))
    }

    fn eval_exact(&self, ctx: &Factorizer, q: u64) -> Result<Option<BigRational>> {
        self.0.eval(ctx, q).map(Some)
    }
}

/// Evaluation closure of a [`FnCoefficient`].
pub type EvalFn = Box<dyn Fn(&Factorizer, u64) -> Result<f64> + Send + Sync>;

/// Closure-backed coefficient for ad-hoc constructions.
pub struct FnCoefficient {
    name: String,
    eval: EvalFn,
}

impl FnCoefficient {
    pub fn new(
        name: &str,
        eval: impl Fn(&Factorizer, u64) -> Result<f64> + Send + Sync + 'static,
    ) -> Self {
        FnCoefficient { name: name.to_owned(), eval: Box::new(eval) }
    }
}

impl Coefficient for FnCoefficient {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn kind(&self) -> CoefficientKind {
        CoefficientKind::Generic
    }

    fn eval_f64(&self, ctx: &Factorizer, q: u64) -> Result<f64> {
        if q == 0 {
            return Err(Error::ZeroInput);
        }
        (self.eval)(ctx, q)
    }
}

/// The one-parameter exotic family at a distinguished prime `p0`:
/// multiplicative, `G(p0^K) = 1` and `G(p^K) = p^{−σK}` for `p ≠ p0`.
///
/// Writing `q = p0^K·m` with `m` coprime to `p0`, the value is simply
/// `m^{−σ}`. For `σ > 1` the coprime-index series converges absolutely,
/// so the family lies in the absolute cloud of the null function: one
/// member per real `σ`, nonzero at every modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExoticSigma {
    p0: u64,
    sigma: f64,
}

impl ExoticSigma {
    /// Requires `p0` prime and `σ > 1` (the construction's convergence
    /// hypothesis).
    pub fn new(p0: u64, sigma: f64) -> Result<Self> {
        if !is_prime(p0) {
            return Err(Error::NotPrime(p0));
        }
        if !sigma.is_finite() || sigma <= 1.0 {
            return Err(Error::SigmaOutOfRange(sigma));
        }
        Ok(ExoticSigma { p0, sigma })
    }

    pub fn p0(&self) -> u64 {
        self.p0
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `σ` as an integer exponent when it is one; enables the exact
    /// rational evaluation path.
    pub fn exact_exponent(&self) -> Option<u32> {
        let rounded = libm::round(self.sigma);
        if self.sigma == rounded && (2.0..=4294967295.0).contains(&rounded) {
            Some(rounded as u32)
        } else {
            None
        }
    }

    /// Part of `q` coprime to `p0`.
    fn coprime_part(&self, q: u64) -> u64 {
        let mut m = q;
        while m.is_multiple_of(self.p0) {
            m /= self.p0;
        }
        m
    }

    /// Exact value `m^{−σ}` for integer `σ`.
    pub fn eval_exact_at(&self, q: u64) -> Result<BigRational> {
        if q == 0 {
            return Err(Error::ZeroInput);
        }
        let k = self
            .exact_exponent()
            .ok_or_else(|| Error::NoExactPath(Coefficient::name(self)))?;
        let m = BigInt::from(self.coprime_part(q));
        Ok(BigRational::new(BigInt::one(), m.pow(k)))
    }

    /// `|c_{p0^K}(a)|` for `K = 0..=v+1` with `v = v_{p0}(a)`, plus the
    /// coprime part of `a`. The column is finite: above `K = v + 1` the
    /// sums vanish.
    fn column(&self, a: u64) -> Result<(Vec<f64>, u64)> {
        if a == 0 {
            return Err(Error::ZeroInput);
        }
        let mut a_coprime = a;
        let mut v = 0u32;
        while a_coprime.is_multiple_of(self.p0) {
            a_coprime /= self.p0;
            v += 1;
        }
        let mut column = Vec::with_capacity(v as usize + 2);
        for k in 0..=v + 1 {
            let pk = Factorization::prime_power(self.p0, k)?;
            column.push(libm::fabs(ramanujan_sum_factored(&pk, a as i64) as f64));
        }
        Ok((column, a_coprime))
    }

    /// Upper bound on `Σ_{m > y, (m,p0)=1} m^{−σ}`.
    ///
    /// The coprime integers above `y` start at `m0` and come at most
    /// `p0 − 1` per block of `p0` consecutive integers, so the series is
    /// dominated by `(p0−1)·(m0^{−σ} + m0^{1−σ}/(p0(σ−1)))`.
    fn coprime_zeta_tail(&self, y: f64) -> f64 {
        let mut m0 = if y < 1.0 { 1u64 } else { y as u64 + 1 };
        while m0 % self.p0 == 0 {
            m0 += 1;
        }
        let m0 = m0 as f64;
        (self.p0 - 1) as f64
            * (libm::pow(m0, -self.sigma)
                + libm::pow(m0, 1.0 - self.sigma) / (self.p0 as f64 * (self.sigma - 1.0)))
    }

    /// Upper bound on `Σ_{m > y, (m,p0)=1} m^{−σ}·|c_m(a)|`, splitting
    /// `|c_m(a)| ≤ (m, a)` over the divisors `d` of the coprime part of
    /// `a` (each class `(m,a) = d` lives inside `d | m`).
    fn weighted_coprime_tail(&self, ctx: &Factorizer, a_coprime: u64, y: f64) -> Result<f64> {
        let mut bound = 0.0;
        for d in ctx.factorize(a_coprime)?.divisors() {
            bound += libm::pow(d as f64, 1.0 - self.sigma) * self.coprime_zeta_tail(y / d as f64);
        }
        Ok(bound)
    }

    /// Certified bound on the classic-order tail `Σ_{q > x} |G(q)c_q(a)|`.
    ///
    /// Nonzero terms have `q = p0^K·m` with `K ≤ v+1`, so `q > x` forces
    /// `m > x/p0^K`; the bound sums the per-`K` weighted coprime tails.
    /// Monotone nonincreasing in `x`.
    pub fn classic_tail_bound(&self, ctx: &Factorizer, a: u64, x: u64) -> Result<f64> {
        let (column, a_coprime) = self.column(a)?;
        let mut bound = 0.0;
        let mut pk = 1.0f64;
        for c in &column {
            bound += c * self.weighted_coprime_tail(ctx, a_coprime, x as f64 / pk)?;
            pk *= self.p0 as f64;
        }
        Ok(bound)
    }

    /// Certified bound on the structured-order tail: everything with
    /// coprime index `m > m_cutoff`, all prime-power levels included.
    pub fn structured_tail_bound(
        &self,
        ctx: &Factorizer,
        a: u64,
        m_cutoff: u64,
    ) -> Result<f64> {
        let (column, a_coprime) = self.column(a)?;
        let total: f64 = column.iter().sum();
        Ok(total * self.weighted_coprime_tail(ctx, a_coprime, m_cutoff as f64)?)
    }
}

impl Coefficient for ExoticSigma {
    fn name(&self) -> String {
        format!("exotic(p0={},sigma={})", self.p0, self.sigma)
    }

    fn kind(&self) -> CoefficientKind {
        CoefficientKind::Exotic { p0: self.p0 }
    }

    fn eval_f64(&self, _ctx: &Factorizer, q: u64) -> Result<f64> {
        if q == 0 {
            return Err(Error::ZeroInput);
        }
        Ok(libm::pow(self.coprime_part(q) as f64, -self.sigma))
    }

    fn eval_exact(&self, _ctx: &Factorizer, q: u64) -> Result<Option<BigRational>> {
        if self.exact_exponent().is_none() {
            return Ok(None);
        }
        self.eval_exact_at(q).map(Some)
    }

    fn tail_bound(&self, ctx: &Factorizer, a: u64, x: u64) -> Result<Option<f64>> {
        self.classic_tail_bound(ctx, a, x).map(Some)
    }
}

/// A coefficient invariant under multiplication of its argument by
/// powers of `p0`: `G(m·p0^K) = base(m)` on `m` coprime to `p0`.
///
/// Multiplicativity is not required of the base. Whether the coprime
/// series converges absolutely is a per-family question; construction
/// does not check it, certification does.
pub struct WeaklyExotic {
    p0: u64,
    base: Box<dyn Coefficient>,
}

impl WeaklyExotic {
    pub fn new(p0: u64, base: Box<dyn Coefficient>) -> Result<Self> {
        if !is_prime(p0) {
            return Err(Error::NotPrime(p0));
        }
        Ok(WeaklyExotic { p0, base })
    }

    pub fn p0(&self) -> u64 {
        self.p0
    }

    fn coprime_part(&self, q: u64) -> u64 {
        let mut m = q;
        while m.is_multiple_of(self.p0) {
            m /= self.p0;
        }
        m
    }
}

impl Coefficient for WeaklyExotic {
    fn name(&self) -> String {
        format!("weakly-exotic(p0={},base={})", self.p0, self.base.name())
    }

    fn kind(&self) -> CoefficientKind {
        CoefficientKind::WeaklyExotic { p0: self.p0 }
    }

    fn eval_f64(&self, ctx: &Factorizer, q: u64) -> Result<f64> {
        if q == 0 {
            return Err(Error::ZeroInput);
        }
        self.base.eval_f64(ctx, self.coprime_part(q))
    }

    fn eval_exact(&self, ctx: &Factorizer, q: u64) -> Result<Option<BigRational>> {
        if q == 0 {
            return Err(Error::ZeroInput);
        }
        self.base.eval_exact(ctx, self.coprime_part(q))
    }
}

/// The coefficient induced by a Hildebrand table: the tabulated value on
/// its square-full support points, zero elsewhere. Finite support makes
/// the expansion a finite sum, certified with tail zero past its end.
pub struct TableCoefficient {
    table: HildebrandTable,
    support_end: u64,
}

impl TableCoefficient {
    pub fn new(ctx: &Factorizer, table: HildebrandTable) -> Result<Self> {
        let support_end = table.max_support(ctx)?;
        Ok(TableCoefficient { table, support_end })
    }

    pub fn table(&self) -> &HildebrandTable {
        &self.table
    }
}

impl Coefficient for TableCoefficient {
    fn name(&self) -> String {
        format!("hildebrand({},N={})", self.table.source(), self.table.bound())
    }

    fn kind(&self) -> CoefficientKind {
        CoefficientKind::FiniteSupport
    }

    fn eval_f64(&self, ctx: &Factorizer, q: u64) -> Result<f64> {
        Ok(self.table.coefficient_at(ctx, q)?.to_f64().unwrap_or(f64::NAN))
    }

    fn eval_exact(&self, ctx: &Factorizer, q: u64) -> Result<Option<BigRational>> {
        self.table.coefficient_at(ctx, q).map(Some)
    }

    fn exact_summation(&self) -> bool {
        true
    }

    fn support_end(&self) -> Option<u64> {
        Some(self.support_end)
    }

    fn tail_bound(&self, _ctx: &Factorizer, a: u64, x: u64) -> Result<Option<f64>> {
        if a == 0 {
            return Err(Error::ZeroInput);
        }
        if x >= self.support_end {
            Ok(Some(0.0))
        } else {
            Ok(None)
        }
    }
}

/// Pointwise sum of a finite-support coefficient for `F` and a null
/// coefficient: another coefficient for the same `F`, with tail bounds
/// adding by the triangle inequality.
pub struct ShiftedCoefficient {
    finite: TableCoefficient,
    null_part: Box<dyn Coefficient>,
}

/// Shifts a finite-support coefficient by a null-cloud member.
pub fn shift_by_null(finite: TableCoefficient, null_part: Box<dyn Coefficient>) -> ShiftedCoefficient {
    ShiftedCoefficient { finite, null_part }
}

impl ShiftedCoefficient {
    pub fn finite_part(&self) -> &TableCoefficient {
        &self.finite
    }

    pub fn null_part(&self) -> &dyn Coefficient {
        self.null_part.as_ref()
    }
}

impl Coefficient for ShiftedCoefficient {
    fn name(&self) -> String {
        format!("{}+{}", Coefficient::name(&self.finite), self.null_part.name())
    }

    fn kind(&self) -> CoefficientKind {
        CoefficientKind::Shifted
    }

    fn eval_f64(&self, ctx: &Factorizer, q: u64) -> Result<f64> {
        Ok(self.finite.eval_f64(ctx, q)? + self.null_part.eval_f64(ctx, q)?)
    }

    fn eval_exact(&self, ctx: &Factorizer, q: u64) -> Result<Option<BigRational>> {
        match (self.finite.eval_exact(ctx, q)?, self.null_part.eval_exact(ctx, q)?) {
            (Some(h), Some(g)) => Ok(Some(h + g)),
            _ => Ok(None),
        }
    }

    fn exact_summation(&self) -> bool {
        self.finite.exact_summation() && self.null_part.exact_summation()
    }

    fn support_end(&self) -> Option<u64> {
        match (self.finite.support_end(), self.null_part.support_end()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        }
    }

    fn tail_bound(&self, ctx: &Factorizer, a: u64, x: u64) -> Result<Option<f64>> {
        match (
            self.finite.tail_bound(ctx, a, x)?,
            self.null_part.tail_bound(ctx, a, x)?,
        ) {
            (Some(h), Some(g)) => Ok(Some(h + g)),
            _ => Ok(None),
        }
    }
}

/// Sanity floor used by tests: the even part of `Σ_{x<q≤10x}|G(q)c_q(a)|`
/// must stay below the certified bound at `x`.
pub fn window_abs_sum(
    ctx: &Factorizer,
    g: &dyn Coefficient,
    a: u64,
    from_exclusive: u64,
    to_inclusive: u64,
) -> Result<f64> {
    let mut total = 0.0;
    for q in from_exclusive + 1..=to_inclusive {
        let c = ramanujan_sum(ctx, q, a as i64)?;
        if c != 0 {
            total += libm::fabs(g.eval_f64(ctx, q)? * c as f64);
        }
    }
    Ok(total)
}
