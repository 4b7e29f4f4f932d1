//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

use num_bigint::BigUint;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The group specification names a non-prime p.
    NotPrime(u64),
    /// A base field size that is not a prime power.
    NotPrimePower(u64),
    /// A residue size that is not a power of the group's prime.
    NotPowerOf { base: BigUint, prime: u64 },
    /// The two arguments of a hom count live over different primes.
    PrimeMismatch { left: u64, right: u64 },
    /// Subgroup enumeration refused: |G| exceeds the configured bound.
    LatticeBoundExceeded { order: BigUint, bound: u128 },
    /// Brute-force enumeration refused: the product of per-generator choice
    /// counts exceeds the configured guard.
    BruteForceGuardExceeded { count: BigUint, guard: BigUint },
    /// A series operation required constant term 1.
    ConstantTermNotOne,
    /// The formal exponential requires constant term 0.
    ConstantTermNotZero,
    /// A counting endpoint produced a non-integer coefficient.
    NonIntegerCoefficient { index: usize },
    /// An operation defined only for non-trivial groups got the trivial one.
    TrivialGroup,
    /// An operation defined only for cyclic groups of prime order.
    NotCyclicPrimeOrder,
    /// The innermost pole was not the expected simple pole.
    PoleNotSimple,
    /// Two denominator factors share a pole radius, so the partial-fraction
    /// split over the factor structure is not defined.
    SharedDenominatorRadius,
    /// Exponent arithmetic left the supported integer range.
    GroupTooLarge,
    /// A cross-checked identity failed; this indicates a bug, not bad input.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "p = {p} is not prime"),
            Error::NotPrimePower(q) => write!(f, "q = {q} is not a prime power"),
            Error::NotPowerOf { base, prime } => {
                write!(f, "{base} is not a power of the group's prime {prime}")
            }
            Error::PrimeMismatch { left, right } => {
                write!(f, "mismatched primes: {left} vs {right}")
            }
            Error::LatticeBoundExceeded { order, bound } => write!(
                f,
                "group order {order} exceeds the subgroup-lattice bound {bound}"
            ),
            Error::BruteForceGuardExceeded { count, guard } => write!(
                f,
                "brute-force choice count {count} exceeds the guard {guard}"
            ),
            Error::ConstantTermNotOne => write!(f, "series must have constant term 1"),
            Error::ConstantTermNotZero => write!(f, "series must have constant term 0"),
            Error::NonIntegerCoefficient { index } => {
                write!(f, "coefficient of X^{index} is not an integer")
            }
            Error::TrivialGroup => write!(f, "operation requires a non-trivial group"),
            Error::NotCyclicPrimeOrder => {
                write!(f, "operation requires a cyclic group of prime order")
            }
            Error::PoleNotSimple => {
                write!(f, "innermost pole is not the expected simple pole")
            }
            Error::SharedDenominatorRadius => write!(
                f,
                "two denominator factors share a pole radius; no partial-fraction split"
            ),
            Error::GroupTooLarge => write!(f, "group invariants exceed the supported range"),
            Error::Internal(msg) => write!(f, "internal consistency check failed: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
