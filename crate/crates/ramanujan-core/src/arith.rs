//! Exact elementary number theory: factorization, the Möbius function,
//! Euler's totient, p-adic valuations, the kernel (radical), and the
//! square-full predicate.
//!
//! Everything here is integer-exact. A [`Factorizer`] owns an immutable
//! smallest-prime-factor sieve built once at construction; all methods
//! take `&self` and are safe to call concurrently from any number of
//! threads.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Hard cap on factorization inputs; trial division stays fast below it.
pub const MAX_FACTOR_INPUT: u64 = 1_000_000_000_000;

/// Default sieve size used by [`Factorizer::default`].
pub const DEFAULT_SIEVE_CAP: u64 = 10_000_000;

/// Greatest common divisor on `u64`, with `gcd(n, 0) = gcd(0, n) = n`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Deterministic primality test by trial division (valid for all `u64`).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut c = 5u64;
    while c * c <= n {
        if n.is_multiple_of(c) || n.is_multiple_of(c + 2) {
            return false;
        }
        c += 6;
    }
    true
}

/// Prime factorization of a positive integer, exponents in ascending
/// prime order. `n = 1` is the empty product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds the factorization of `p^k` directly. `k = 0` gives 1.
    ///
    /// This bypasses the factorization cap (the structure is already
    /// known); only `u64` overflow of `p^k` is rejected.
    pub fn prime_power(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Ok(Factorization { n: 1, factors: Vec::new() });
        }
        let mut n: u64 = 1;
        for _ in 0..k {
            n = n.checked_mul(p).ok_or(Error::Overflow("prime power"))?;
        }
        Ok(Factorization { n, factors: vec![(p, k)] })
    }

    /// The factored integer.
    pub fn value(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs in ascending prime order.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    /// Exponent of `p` in `n` (zero when `p` does not divide `n`).
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Möbius function: 0 when any exponent is ≥ 2, else (−1)^ω.
    pub fn mobius(&self) -> i64 {
        if self.factors.iter().any(|&(_, e)| e >= 2) {
            0
        } else if self.factors.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Euler's totient, as the product of `p^(e−1)·(p−1)`.
    pub fn totient(&self) -> u64 {
        let mut phi: u64 = 1;
        for &(p, e) in &self.factors {
            phi *= p.pow(e - 1) * (p - 1);
        }
        phi
    }

    /// Kernel (radical): the product of the distinct primes dividing `n`.
    pub fn kernel(&self) -> u64 {
        self.factors.iter().map(|&(p, _)| p).product()
    }

    /// True when every prime exponent is ≥ 2 (vacuously true for 1).
    pub fn is_squarefull(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e >= 2)
    }

    /// Factorization of `n·κ(n)`: every exponent bumped by one.
    pub fn times_kernel(&self) -> Result<Self> {
        let n = self
            .n
            .checked_mul(self.kernel())
            .ok_or(Error::Overflow("n * kernel(n)"))?;
        let factors = self.factors.iter().map(|&(p, e)| (p, e + 1)).collect();
        Ok(Factorization { n, factors })
    }

    /// All divisors of `n`, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.factors {
            let current = out.len();
            let mut pk: u64 = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..current {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Immutable factorization context: a smallest-prime-factor sieve up to a
/// configurable cap, with trial division above it (hard limit
/// [`MAX_FACTOR_INPUT`]).
pub struct Factorizer {
    spf: Vec<u32>,
    sieve_cap: u64,
}

impl Factorizer {
    /// Builds the sieve once, up to `sieve_cap` (clamped to `[2, 2^32)`).
    pub fn new(sieve_cap: u64) -> Self {
        let cap = sieve_cap.clamp(2, (u32::MAX - 1) as u64) as usize;
        let mut spf = vec![0u32; cap + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=cap {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let smallest = spf[i];
            for &p in &primes {
                if p > smallest {
                    break;
                }
                let multiple = i as u64 * p as u64;
                if multiple > cap as u64 {
                    break;
                }
                spf[multiple as usize] = p;
            }
        }
        Factorizer { spf, sieve_cap: cap as u64 }
    }

    /// The sieve bound this context was built with.
    pub fn sieve_cap(&self) -> u64 {
        self.sieve_cap
    }

    /// Factors `n` exactly. Errors on `n = 0` and `n >` [`MAX_FACTOR_INPUT`].
    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::ZeroInput);
        }
        if n > MAX_FACTOR_INPUT {
            return Err(Error::InputTooLarge { n, max: MAX_FACTOR_INPUT });
        }
        let mut factors: Vec<(u64, u32)> = Vec::new();
        let mut m = n;
        if m > self.sieve_cap {
            for p in [2u64, 3] {
                let e = strip(&mut m, p);
                if e > 0 {
                    factors.push((p, e));
                }
            }
            let mut c = 5u64;
            while m > self.sieve_cap && c * c <= m {
                for p in [c, c + 2] {
                    let e = strip(&mut m, p);
                    if e > 0 {
                        factors.push((p, e));
                    }
                }
                c += 6;
            }
            if m > self.sieve_cap {
                // no divisor up to sqrt(m): the remainder is prime
                factors.push((m, 1));
                m = 1;
            }
        }
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            let e = strip(&mut m, p);
            factors.push((p, e));
        }
        factors.sort_unstable();
        Ok(Factorization { n, factors })
    }

    /// Primality via the sieve where it reaches, trial division beyond.
    pub fn is_prime(&self, n: u64) -> bool {
        if n <= self.sieve_cap {
            n >= 2 && self.spf[n as usize] as u64 == n
        } else {
            is_prime(n)
        }
    }

    /// Möbius function of `n`.
    pub fn mobius(&self, n: u64) -> Result<i64> {
        Ok(self.factorize(n)?.mobius())
    }

    /// Euler's totient of `n`.
    pub fn totient(&self, n: u64) -> Result<u64> {
        Ok(self.factorize(n)?.totient())
    }

    /// Kernel (radical) of `n`.
    pub fn kernel(&self, n: u64) -> Result<u64> {
        Ok(self.factorize(n)?.kernel())
    }

    /// Square-full predicate on `n`.
    pub fn is_squarefull(&self, n: u64) -> Result<bool> {
        Ok(self.factorize(n)?.is_squarefull())
    }

    /// p-adic valuation `v_p(n)`: the largest `K` with `p^K | n`.
    ///
    /// Rejects composite `p` rather than silently computing.
    pub fn valuation(&self, p: u64, n: u64) -> Result<u32> {
        if !self.is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroInput);
        }
        let mut m = n;
        Ok(strip(&mut m, p))
    }
}

impl Default for Factorizer {
    fn default() -> Self {
        Factorizer::new(DEFAULT_SIEVE_CAP)
    }
}

fn strip(m: &mut u64, p: u64) -> u32 {
    let mut e = 0;
    while (*m).is_multiple_of(p) {
        *m /= p;
        e += 1;
    }
    e
}
