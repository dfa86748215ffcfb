use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors produced by the library.
///
/// Every operation is deterministic; errors only signal domain violations
/// (zero where a positive integer is required, inputs past the configured
/// caps, and so on), never runtime nondeterminism.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Zero was passed where a positive integer is required.
    ZeroInput,
    /// Input exceeds the hard factorization cap (or overflowed `u64`).
    InputTooLarge { n: u64, max: u64 },
    /// A prime was required but the value is composite (or < 2).
    NotPrime(u64),
    /// Modulus exceeds the configured cap for the cosine-sum evaluator.
    TrigModulusTooLarge { q: u64, max: u64 },
    /// The exponent of an exotic coefficient family must exceed 1.
    SigmaOutOfRange(f64),
    /// Argument lies beyond the bound a table was built for.
    ArgumentAboveBound { a: u64, bound: u64 },
    /// A value-table function is missing entries at the listed arguments.
    MissingValues { function: String, missing: Vec<u64> },
    /// A multiplicative spec is missing values at the listed prime powers.
    MissingPrimePowers { function: String, missing: Vec<(u64, u32)> },
    /// Exact evaluation was requested from a coefficient that has none.
    NoExactPath(String),
    /// A certified tail bound was requested from a coefficient without one.
    NoTailBound(String),
    /// Intermediate arithmetic left the `u64` range.
    Overflow(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroInput => write!(f, "expected a positive integer, got 0"),
            Error::InputTooLarge { n, max } => {
                write!(f, "input {n} exceeds the supported maximum {max}")
            }
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::TrigModulusTooLarge { q, max } => {
                write!(f, "modulus {q} exceeds the cosine-sum cap {max}")
            }
            Error::SigmaOutOfRange(s) => {
                write!(f, "sigma must be > 1 for an absolutely convergent family, got {s}")
            }
            Error::ArgumentAboveBound { a, bound } => {
                write!(f, "argument {a} exceeds the table bound {bound}")
            }
            Error::MissingValues { function, missing } => {
                write!(f, "function '{function}' has no value at a = ")?;
                write_list(f, missing.iter())
            }
            Error::MissingPrimePowers { function, missing } => {
                write!(f, "function '{function}' has no value at prime powers ")?;
                write_list(f, missing.iter().map(PrimePower))
            }
            Error::NoExactPath(name) => {
                write!(f, "coefficient '{name}' has no exact evaluation path")
            }
            Error::NoTailBound(name) => {
                write!(f, "coefficient '{name}' has no certified tail bound")
            }
            Error::Overflow(what) => write!(f, "arithmetic overflow while computing {what}"),
        }
    }
}

impl core::error::Error for Error {}

struct PrimePower<'a>(&'a (u64, u32));

impl fmt::Display for PrimePower<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.0 .0, self.0 .1)
    }
}

fn write_list<I, T>(f: &mut fmt::Formatter<'_>, items: I) -> fmt::Result
where
    I: Iterator<Item = T>,
    T: fmt::Display,
{
    for (i, item) in items.enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}
