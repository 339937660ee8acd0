//! Fixed-point count sequences, their orbit decomposition, and the two
//! conditions that characterize realizability: the Dold congruence (D) and
//! the sign condition (S).
//!
//! Every sequence here is a finite prefix `a_1..a_N`, so every verdict holds
//! "up to N" and says nothing about later terms.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{index_divisors, index_moebius, Natural};
use crate::error::{Error, Result};

/// Prefix `a_1..a_N` of fixed-point counts. Indexing is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixSequence {
    entries: Vec<Natural>,
}

impl FixSequence {
    pub fn new(entries: Vec<Natural>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(FixSequence { entries })
    }

    pub fn from_u64s(values: &[u64]) -> Result<Self> {
        Self::new(values.iter().copied().map(Natural::from).collect())
    }

    /// The prefix length `N`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `a_n` for `1 <= n <= N`.
    pub fn get(&self, n: usize) -> &Natural {
        &self.entries[n - 1]
    }

    pub fn entries(&self) -> &[Natural] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Natural> {
        self.entries
    }

    pub fn mobius_transform(&self) -> Vec<BigInt> {
        mobius_transform(self)
    }

    pub fn check_realizable(&self) -> RealizabilityVerdict {
        check_realizable(self)
    }
}

/// Closed-orbit counts `O_1..O_N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbitCounts {
    entries: Vec<Natural>,
}

impl OrbitCounts {
    pub fn new(entries: Vec<Natural>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(OrbitCounts { entries })
    }

    pub fn from_u64s(values: &[u64]) -> Result<Self> {
        Self::new(values.iter().copied().map(Natural::from).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `O_n` for `1 <= n <= N`.
    pub fn get(&self, n: usize) -> &Natural {
        &self.entries[n - 1]
    }

    pub fn entries(&self) -> &[Natural] {
        &self.entries
    }

    /// Fixed-point count at an arbitrary `n` for the system whose orbits are
    /// exactly these (no orbits longer than `N`).
    pub fn fix_at(&self, n: &Natural) -> Natural {
        let mut total = Natural::zero();
        for (i, count) in self.entries.iter().enumerate() {
            let d = i + 1;
            if !count.is_zero() && (n % d).is_zero() {
                total += count * d;
            }
        }
        total
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RealizabilityVerdict {
    Pass,
    /// `b_n < 0` at the smallest such `n`.
    SignFailure {
        n: usize,
        value: BigInt,
    },
    /// `n` does not divide `b_n` at the smallest such `n`.
    DoldFailure {
        n: usize,
        value: BigInt,
    },
}

impl RealizabilityVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, RealizabilityVerdict::Pass)
    }

    /// Index of the failure, if any.
    pub fn failing_index(&self) -> Option<usize> {
        match self {
            RealizabilityVerdict::Pass => None,
            RealizabilityVerdict::SignFailure { n, .. }
            | RealizabilityVerdict::DoldFailure { n, .. } => Some(*n),
        }
    }
}

impl fmt::Display for RealizabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealizabilityVerdict::Pass => write!(f, "pass"),
            RealizabilityVerdict::SignFailure { n, value } => {
                write!(f, "sign failure at n = {n}: b_n = {value}")
            }
            RealizabilityVerdict::DoldFailure { n, value } => {
                write!(f, "Dold failure at n = {n}: b_n = {value}")
            }
        }
    }
}

/// `b_n = sum_{d | n} mu(n/d) a_d` for every `n <= N`.
pub fn mobius_transform(a: &FixSequence) -> Vec<BigInt> {
    (1..=a.len())
        .map(|n| {
            let mut acc = BigInt::zero();
            for d in index_divisors(n) {
                match index_moebius(n / d) {
                    1 => acc += BigInt::from(a.get(d).clone()),
                    -1 => acc -= BigInt::from(a.get(d).clone()),
                    _ => {}
                }
            }
            acc
        })
        .collect()
}

/// Checks (S) before (D) at each index and reports the first failure.
pub fn check_realizable(a: &FixSequence) -> RealizabilityVerdict {
    for (i, b) in mobius_transform(a).into_iter().enumerate() {
        let n = i + 1;
        if b.is_negative() {
            return RealizabilityVerdict::SignFailure { n, value: b };
        }
        if !b.is_multiple_of(&BigInt::from(n)) {
            return RealizabilityVerdict::DoldFailure { n, value: b };
        }
    }
    RealizabilityVerdict::Pass
}

pub fn orbit_counts(a: &FixSequence) -> Result<OrbitCounts> {
    let verdict = check_realizable(a);
    if !verdict.is_pass() {
        return Err(Error::NotRealizable(verdict));
    }
    let entries = mobius_transform(a)
        .into_iter()
        .enumerate()
        .map(|(i, b)| {
            let (sign, mag) = (b / BigInt::from(i + 1)).into_parts();
            debug_assert!(sign != Sign::Minus);
            mag
        })
        .collect();
    OrbitCounts::new(entries)
}

/// `a_n = sum_{d | n} d * O_d`.
pub fn fix_from_orbits(orbits: &OrbitCounts) -> FixSequence {
    let entries = (1..=orbits.len())
        .map(|n| {
            index_divisors(n)
                .into_iter()
                .map(|d| orbits.get(d) * d)
                .sum()
        })
        .collect();
    FixSequence { entries }
}

/// Fixed-point counts of a single orbit of length `k`: `k` at multiples of
/// `k`, zero elsewhere.
pub fn reg(k: u64, len: usize) -> Result<FixSequence> {
    if k == 0 {
        return Err(Error::ZeroArgument { op: "reg" });
    }
    FixSequence::new(
        (1..=len as u64)
            .map(|n| {
                if n % k == 0 {
                    Natural::from(k)
                } else {
                    Natural::zero()
                }
            })
            .collect(),
    )
}

fn zip_with(
    a: &FixSequence,
    b: &FixSequence,
    op: impl Fn(&Natural, &Natural) -> Natural,
) -> Result<FixSequence> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let entries = a
        .entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| op(x, y))
        .collect();
    Ok(FixSequence { entries })
}

/// Fixed points of the disjoint union of two systems.
pub fn disjoint_union(a: &FixSequence, b: &FixSequence) -> Result<FixSequence> {
    zip_with(a, b, |x, y| x + y)
}

/// Fixed points of the Cartesian product of two systems.
pub fn hadamard(a: &FixSequence, b: &FixSequence) -> Result<FixSequence> {
    zip_with(a, b, |x, y| x * y)
}

/// Convenience for tests and reports: entries as `u64` when they all fit.
pub fn to_u64s(a: &FixSequence) -> Option<Vec<u64>> {
    a.entries.iter().map(|x| x.to_u64()).collect()
}
