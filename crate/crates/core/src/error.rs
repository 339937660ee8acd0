use num_bigint::BigUint;
use thiserror::Error;

use crate::characterization::Violation;
use crate::realizable::RealizabilityVerdict;
use crate::series::ZetaFailure;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{op}: argument must be positive")]
    ZeroArgument { op: &'static str },

    #[error("{0} is not prime")]
    NotPrime(BigUint),

    #[error("sequences must have at least one entry")]
    EmptySequence,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("sequence is not realizable: {0}")]
    NotRealizable(RealizabilityVerdict),

    #[error("fix source is undefined at n = {n} (defined on 1..={available})")]
    SourceOutOfRange { n: BigUint, available: usize },

    #[error("time-change sends n = {n} to 0")]
    ZeroImage { n: usize },

    #[error("exponent {0} is too large to materialize")]
    ExponentTooLarge(BigUint),

    #[error("series is not a zeta prefix: {0}")]
    NotZeta(ZetaFailure),

    #[error("series must have constant term 1")]
    ConstantTermNotOne,

    #[error("d_{p} is tabulated on 0..={max}, asked for {v}")]
    TableExceeded { p: u64, v: u32, max: u32 },

    #[error("invalid exponent specification ({} violation(s))", .0.len())]
    InvalidSpec(Vec<Violation>),

    #[error("word mentions prime {p} beyond the tabulated bound {p_max}")]
    PrimeOutOfRange { p: u64, p_max: u64 },

    #[error("gadget target {target} is below level {t}")]
    GadgetBelowLevel { t: u32, target: u32 },

    #[error("no primes available below {0}")]
    NoPrimes(u64),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}
