//! Exact Ramanujan sums and certified Ramanujan expansions.
//!
//! An arithmetic function `F` admits a Ramanujan expansion
//! `F(a) = Σ_q G(q)·c_q(a)` whenever the partial sums over `q ≤ x`
//! converge for every argument `a`; the function `G` is called a
//! Ramanujan coefficient for `F`. Coefficients are far from unique, and
//! this crate makes the two classical constructions computable:
//!
//! - the unique square-full-supported coefficient of any `F`, built by a
//!   triangular recursion over divisors ([`hildebrand`]), whose expansion
//!   is finite and reconstructs `F` exactly in rational arithmetic;
//! - families of nonzero coefficients of the null function whose
//!   expansions converge absolutely ([`clouds`]), which shift any exact
//!   coefficient into infinitely many others.
//!
//! The [`expansion`] module evaluates truncated expansions in the classic
//! ascending order, records signed and absolute partial-sum traces, and
//! certifies membership numerically against rigorous truncation-tail
//! bounds. Everything that can be exact is exact: sums `c_q(a)` are
//! integers throughout, and coefficient tables are arbitrary-precision
//! rationals.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the
//! command-line front end live in the companion `ramanujan-cli` crate.
//!
//! ```
//! use ramanujan_core::arith::Factorizer;
//! use ramanujan_core::sums::ramanujan_sum;
//! use ramanujan_core::hildebrand::{ArithmeticFn, HildebrandTable};
//!
//! let ctx = Factorizer::new(10_000);
//! assert_eq!(ramanujan_sum(&ctx, 4, 2).unwrap(), -2);
//!
//! // the square-full-supported coefficient of F(a) = a, up to m = 4
//! let table = HildebrandTable::build(&ctx, &ArithmeticFn::Identity, 4).unwrap();
//! let reconstructed = table.expand(&ctx, 4).unwrap();
//! assert_eq!(reconstructed, ramanujan_core::BigRational::from_integer(4.into()));
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod clouds;
mod error;
pub mod expansion;
pub mod hildebrand;
pub mod sums;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
