//! The unique square-full-supported Ramanujan coefficient of an
//! arithmetic function, and its finite expansion.
//!
//! For any `F` there is exactly one coefficient `G` supported on
//! square-full moduli with `F(a) = Σ_{q|a} G(qκ(q))·c_{qκ(q)}(a)` for
//! every `a`; the sum runs over divisors only, so the expansion is
//! finite and converges absolutely regardless of summation method.
//!
//! The map `m ↦ m·κ(m)` is a bijection from the positive integers onto
//! the square-full numbers (inverse `s ↦ s/κ(s)`), which lets the table
//! be keyed by the divisor index `m` rather than the support point. The
//! coefficient values come out of a triangular recursion over `a`:
//!
//! ```text
//! G(1)        = F(1)
//! G(a·κ(a))   = ( F(a) − Σ_{q|a, q<a} G(q·κ(q))·c_{q·κ(q)}(a) ) / c_{a·κ(a)}(a)
//! ```
//!
//! The pivot `c_{aκ(a)}(a) = φ(aκ(a))·μ(κ(a))/φ(κ(a))` is nonzero for
//! every `a > 1` because `κ(a)` is squarefree, so exact rational
//! arithmetic never divides by zero and the construction cannot fail.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{Factorization, Factorizer};
use crate::clouds::Coefficient;
use crate::error::{Error, Result};

/// An arithmetic function `F` with exact rational values.
///
/// The built-ins cover the constructions used throughout: the null
/// function, the constant 1, the identity, the Möbius function, and
/// Euler's totient. `Values` carries an explicit table on `1..=N`, and
/// `Multiplicative` determines `F` from its values on prime powers
/// (with `F(1) = 1`).
#[derive(Debug, Clone, PartialEq)]
pub enum ArithmeticFn {
    /// `F(a) = 0`.
    Null,
    /// `F(a) = 1`.
    One,
    /// `F(a) = a`.
    Identity,
    /// `F(a) = μ(a)`.
    Mobius,
    /// `F(a) = φ(a)`.
    Totient,
    /// Explicit values at `a = 1..=values.len()`.
    Values { name: String, values: Vec<BigRational> },
    /// Multiplicative function given on prime powers:
    /// `prime_powers[&p][k-1] = F(p^k)`.
    Multiplicative {
        name: String,
        prime_powers: alloc::collections::BTreeMap<u64, Vec<BigRational>>,
    },
}

impl ArithmeticFn {
    /// Looks up a built-in by its CLI name.
    pub fn builtin(name: &str) -> Option<ArithmeticFn> {
        match name {
            "null" => Some(ArithmeticFn::Null),
            "one" => Some(ArithmeticFn::One),
            "identity" => Some(ArithmeticFn::Identity),
            "mobius" => Some(ArithmeticFn::Mobius),
            "phi" => Some(ArithmeticFn::Totient),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            ArithmeticFn::Null => "null",
            ArithmeticFn::One => "one",
            ArithmeticFn::Identity => "identity",
            ArithmeticFn::Mobius => "mobius",
            ArithmeticFn::Totient => "phi",
            ArithmeticFn::Values { name, .. } => name,
            ArithmeticFn::Multiplicative { name, .. } => name,
        }
    }

    /// Evaluates `F(a)` exactly.
    pub fn eval(&self, ctx: &Factorizer, a: u64) -> Result<BigRational> {
        if a == 0 {
            return Err(Error::ZeroInput);
        }
        let int = |v: i64| BigRational::from_integer(BigInt::from(v));
        match self {
            ArithmeticFn::Null => Ok(BigRational::zero()),
            ArithmeticFn::One => Ok(BigRational::one()),
            ArithmeticFn::Identity => Ok(BigRational::from_integer(BigInt::from(a))),
            ArithmeticFn::Mobius => Ok(int(ctx.mobius(a)?)),
            ArithmeticFn::Totient => Ok(BigRational::from_integer(BigInt::from(
                ctx.totient(a)?,
            ))),
            ArithmeticFn::Values { name, values } => values
                .get(a as usize - 1)
                .cloned()
                .ok_or_else(|| Error::MissingValues {
                    function: name.clone(),
                    missing: vec![a],
                }),
            ArithmeticFn::Multiplicative { name, prime_powers } => {
                let mut out = BigRational::one();
                for &(p, e) in ctx.factorize(a)?.factors() {
                    let at_p = prime_powers.get(&p).map(|v| v.get(e as usize - 1));
                    match at_p {
                        Some(Some(value)) => out *= value,
                        _ => {
                            return Err(Error::MissingPrimePowers {
                                function: name.clone(),
                                missing: vec![(p, e)],
                            })
                        }
                    }
                }
                Ok(out)
            }
        }
    }
}

/// Support point of the divisor index `m`: the square-full number
/// `s = m·κ(m)`.
pub fn index_to_support(ctx: &Factorizer, m: u64) -> Result<u64> {
    let fact = ctx.factorize(m)?;
    fact.value()
        .checked_mul(fact.kernel())
        .ok_or(Error::Overflow("support point m * kernel(m)"))
}

/// Inverse of [`index_to_support`]: `Some(s/κ(s))` when `s` is
/// square-full, `None` otherwise.
pub fn support_to_index(ctx: &Factorizer, s: u64) -> Result<Option<u64>> {
    let fact = ctx.factorize(s)?;
    if fact.is_squarefull() {
        Ok(Some(s / fact.kernel()))
    } else {
        Ok(None)
    }
}

/// The square-full-supported coefficient of one arithmetic function,
/// tabulated at divisor indices `1..=bound`.
///
/// `entry(m)` holds the coefficient value at the support point
/// `m·κ(m)`; off those points the induced coefficient is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct HildebrandTable {
    source: String,
    entries: Vec<BigRational>,
}

impl HildebrandTable {
    /// Runs the recursion for `m = 1..=bound` in increasing order.
    ///
    /// Each step consumes only entries at proper divisors of `m`, so the
    /// dependency is triangular and the output unique.
    pub fn build(ctx: &Factorizer, func: &ArithmeticFn, bound: u64) -> Result<Self> {
        if bound == 0 {
            return Err(Error::ZeroInput);
        }
        let mut entries: Vec<BigRational> = Vec::with_capacity(bound as usize);
        entries.push(func.eval(ctx, 1)?);
        for a in 2..=bound {
            let fact_a = ctx.factorize(a)?;
            let mut acc = func.eval(ctx, a)?;
            for q in fact_a.divisors() {
                if q == a {
                    continue;
                }
                let support = ctx.factorize(q)?.times_kernel()?;
                let c = ramanujan_sum_at(&support, a);
                if !c.is_zero() {
                    acc -= &entries[q as usize - 1] * c;
                }
            }
            let pivot = ramanujan_sum_at(&fact_a.times_kernel()?, a);
            debug_assert!(!pivot.is_zero());
            entries.push(acc / pivot);
        }
        Ok(HildebrandTable { source: func.name().to_owned(), entries })
    }

    /// Rebuilds a table from stored entries (deserialization path).
    pub fn from_entries(source: &str, entries: Vec<BigRational>) -> Self {
        HildebrandTable { source: source.to_owned(), entries }
    }

    /// Name of the function the table was built from.
    pub fn source(&self) -> &str {
        &self.source
    }

    /// Largest divisor index tabulated.
    pub fn bound(&self) -> u64 {
        self.entries.len() as u64
    }

    /// Coefficient value at the divisor index `m`, when tabulated.
    pub fn entry(&self, m: u64) -> Option<&BigRational> {
        if m == 0 {
            return None;
        }
        self.entries.get(m as usize - 1)
    }

    /// Iterates `(m, value)` pairs in increasing `m`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.entries.iter().enumerate().map(|(i, v)| (i as u64 + 1, v))
    }

    /// The induced coefficient `G(s)`: the entry at `m = s/κ(s)` when
    /// `s` is a tabulated support point, zero everywhere else.
    pub fn coefficient_at(&self, ctx: &Factorizer, s: u64) -> Result<BigRational> {
        match support_to_index(ctx, s)? {
            Some(m) if m <= self.bound() => Ok(self.entries[m as usize - 1].clone()),
            _ => Ok(BigRational::zero()),
        }
    }

    /// Largest support point `m·κ(m)` over the tabulated indices.
    ///
    /// Not attained at `m = bound` in general: the map `m ↦ m·κ(m)` is
    /// a bijection but not monotone.
    pub fn max_support(&self, ctx: &Factorizer) -> Result<u64> {
        let mut max = 1u64;
        for m in 1..=self.bound() {
            max = max.max(index_to_support(ctx, m)?);
        }
        Ok(max)
    }

    /// Finite expansion `Σ_{q|a} entry(q)·c_{qκ(q)}(a)`.
    ///
    /// Reconstructs the source function exactly for every `a ≤ bound`.
    pub fn expand(&self, ctx: &Factorizer, a: u64) -> Result<BigRational> {
        if a == 0 {
            return Err(Error::ZeroInput);
        }
        if a > self.bound() {
            return Err(Error::ArgumentAboveBound { a, bound: self.bound() });
        }
        let mut sum = BigRational::zero();
        for q in ctx.factorize(a)?.divisors() {
            let support = ctx.factorize(q)?.times_kernel()?;
            let c = ramanujan_sum_at(&support, a);
            if !c.is_zero() {
                sum += &self.entries[q as usize - 1] * c;
            }
        }
        Ok(sum)
    }

    /// Copy of the table with the entry at `m` shifted by `delta`.
    ///
    /// Used to probe uniqueness: any nonzero shift breaks the expansion
    /// at `a = m`, because the recursion is triangular in divisor order.
    pub fn with_entry_shifted(&self, m: u64, delta: &BigRational) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroInput);
        }
        if m > self.bound() {
            return Err(Error::ArgumentAboveBound { a: m, bound: self.bound() });
        }
        let mut entries = self.entries.clone();
        entries[m as usize - 1] += delta;
        Ok(HildebrandTable { source: self.source.clone(), entries })
    }
}

fn ramanujan_sum_at(support: &Factorization, a: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(crate::sums::ramanujan_sum_factored(
        support, a as i64,
    )))
}

/// Square-full-support implication check: whenever `G(q)·c_q(a) ≠ 0`,
/// the modulus must be a square-full point `q = m·κ(m)` whose index
/// `m = q/κ(q)` divides `a`. Vacuously true when the product vanishes.
pub fn fact_star_check(
    ctx: &Factorizer,
    coefficient: &dyn Coefficient,
    q: u64,
    a: u64,
) -> Result<bool> {
    if q == 0 || a == 0 {
        return Err(Error::ZeroInput);
    }
    let g_nonzero = match coefficient.eval_exact(ctx, q)? {
        Some(value) => !value.is_zero(),
        None => coefficient.eval_f64(ctx, q)? != 0.0,
    };
    if !g_nonzero || crate::sums::ramanujan_sum(ctx, q, a as i64)? == 0 {
        return Ok(true);
    }
    let fact = ctx.factorize(q)?;
    if !fact.is_squarefull() {
        return Ok(false);
    }
    let m = q / fact.kernel();
    Ok(index_to_support(ctx, m)? == q && a.is_multiple_of(m))
}

/// One entry of a floating-point table: the value plus a running upper
/// bound on its accumulated rounding error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatEntry {
    pub value: f64,
    pub error_bound: f64,
}

/// Floating-mode variant of [`HildebrandTable`] for targets that are
/// only available as `f64`. Precision loss is reported per entry via
/// [`FloatEntry::error_bound`]; overflow surfaces as an infinite bound.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatHildebrandTable {
    source: String,
    entries: Vec<FloatEntry>,
}

impl FloatHildebrandTable {
    /// Same recursion as the exact builder, with first-order rounding
    /// error propagated through every operation.
    pub fn build_with(
        ctx: &Factorizer,
        name: &str,
        func: impl Fn(u64) -> f64,
        bound: u64,
    ) -> Result<Self> {
        if bound == 0 {
            return Err(Error::ZeroInput);
        }
        let mut entries: Vec<Tracked> = Vec::with_capacity(bound as usize);
        entries.push(Tracked::input(func(1)));
        for a in 2..=bound {
            let fact_a = ctx.factorize(a)?;
            let mut acc = Tracked::input(func(a));
            for q in fact_a.divisors() {
                if q == a {
                    continue;
                }
                let support = ctx.factorize(q)?.times_kernel()?;
                let c = crate::sums::ramanujan_sum_factored(&support, a as i64);
                acc = acc.sub(entries[q as usize - 1].scale(c as f64));
            }
            let pivot = crate::sums::ramanujan_sum_factored(&fact_a.times_kernel()?, a as i64);
            entries.push(acc.div(pivot as f64));
        }
        Ok(FloatHildebrandTable {
            source: name.to_owned(),
            entries: entries
                .into_iter()
                .map(|t| FloatEntry { value: t.value, error_bound: t.err })
                .collect(),
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn bound(&self) -> u64 {
        self.entries.len() as u64
    }

    pub fn entry(&self, m: u64) -> Option<FloatEntry> {
        if m == 0 {
            return None;
        }
        self.entries.get(m as usize - 1).copied()
    }
}

/// `f64` value paired with a first-order rounding-error bound.
#[derive(Clone, Copy)]
struct Tracked {
    value: f64,
    err: f64,
}

impl Tracked {
    const EPS: f64 = f64::EPSILON / 2.0;

    fn input(value: f64) -> Self {
        let err = if value.is_finite() {
            libm::fabs(value) * Self::EPS
        } else {
            f64::INFINITY
        };
        Tracked { value, err }
    }

    fn sub(self, other: Tracked) -> Self {
        let value = self.value - other.value;
        Tracked {
            value,
            err: self.err + other.err + round_off(value),
        }
    }

    fn scale(self, k: f64) -> Self {
        let value = self.value * k;
        Tracked {
            value,
            err: self.err * libm::fabs(k) + round_off(value),
        }
    }

    fn div(self, k: f64) -> Self {
        let value = self.value / k;
        Tracked {
            value,
            err: self.err / libm::fabs(k) + round_off(value),
        }
    }
}

fn round_off(value: f64) -> f64 {
    if value.is_finite() {
        libm::fabs(value) * Tracked::EPS
    } else {
        f64::INFINITY
    }
}
