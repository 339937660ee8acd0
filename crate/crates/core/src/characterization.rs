//! Elements of the time-change monoid described by per-prime exponent maps
//! `d_p`, so that `f(prod p^v_p) = prod p^{d_p(v_p)}`, together with the
//! finite-precision tests used to refute membership.
//!
//! Only refutation is ever conclusive. A test that finds no violation says
//! nothing beyond the precision it was run at.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{factorize, index_divisors, is_prime_u64, valuation, Natural};
use crate::error::{Error, Result};
use crate::maps::TimeChange;
use crate::monoid::{Kind, Word};
use crate::realizable::{check_realizable, FixSequence, RealizabilityVerdict};

/// One exponent map `d_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DpFunction {
    /// `d(0..=t')`, constant (equal to the last value) from then on.
    Bounded(Vec<u32>),
    /// `d(0..=t*)`; nothing is known past the table.
    Unbounded(Vec<u32>),
}

impl DpFunction {
    pub fn values(&self) -> &[u32] {
        match self {
            DpFunction::Bounded(v) | DpFunction::Unbounded(v) => v,
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self, DpFunction::Bounded(_))
    }

    /// The eventual value `M` of a bounded map.
    pub fn eventual(&self) -> Option<u32> {
        match self {
            DpFunction::Bounded(v) => v.last().copied(),
            DpFunction::Unbounded(_) => None,
        }
    }

    /// Least `t'` with `d(t) = M` for every `t >= t'`.
    pub fn stabilization_index(&self) -> Option<u32> {
        let DpFunction::Bounded(v) = self else {
            return None;
        };
        let last = *v.last()?;
        let run = v.iter().rev().take_while(|&&x| x == last).count();
        Some((v.len() - run) as u32)
    }

    /// Largest tabulated exponent of an unbounded map.
    pub fn table_bound(&self) -> Option<u32> {
        match self {
            DpFunction::Unbounded(v) if !v.is_empty() => Some(v.len() as u32 - 1),
            _ => None,
        }
    }

    /// `d(v)`, or `None` past the end of an unbounded table.
    pub fn eval(&self, v: u32) -> Option<u32> {
        let values = self.values();
        match values.get(v as usize) {
            Some(&d) => Some(d),
            None if self.is_bounded() => values.last().copied(),
            None => None,
        }
    }
}

/// A finite map `p -> d_p`; unmapped primes use the identity `d_p(v) = v`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DpSpec {
    map: BTreeMap<u64, DpFunction>,
}

impl DpSpec {
    pub fn identity() -> Self {
        DpSpec::default()
    }

    pub fn insert(&mut self, p: u64, d: DpFunction) -> Result<()> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(Natural::from(p)));
        }
        self.map.insert(p, d);
        Ok(())
    }

    pub fn with(mut self, p: u64, d: DpFunction) -> Result<Self> {
        self.insert(p, d)?;
        Ok(self)
    }

    pub fn get(&self, p: u64) -> Option<&DpFunction> {
        self.map.get(&p)
    }

    /// Mapped primes with their functions, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &DpFunction)> {
        self.map.iter().map(|(p, d)| (*p, d))
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let v = validate_spec(self);
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSpec(v))
        }
    }

    pub fn apply(&self, n: &Natural) -> Result<Natural> {
        apply_spec(self, n)
    }
}

impl TimeChange for DpSpec {
    fn apply(&self, n: &Natural) -> Result<Natural> {
        apply_spec(self, n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// The table is empty.
    EmptyTable,
    /// (ii) `d_p` is non-decreasing.
    Monotone,
    /// (iii) an unbounded `d_p` has `d_p(i) >= i` everywhere (checked on the table).
    UnboundedGrowth,
    /// (iv) a bounded `d_p` has `d_p(i) >= i` for `i <= max d_p`.
    BoundedGrowth,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::EmptyTable => "empty-table",
            Condition::Monotone => "monotone",
            Condition::UnboundedGrowth => "unbounded-growth",
            Condition::BoundedGrowth => "bounded-growth",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Violation {
    pub prime: u64,
    pub condition: Condition,
    /// First offending exponent, when the condition is about one.
    pub index: Option<u32>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d_{}: {}", self.prime, self.condition)?;
        if let Some(i) = self.index {
            write!(f, " at {i}")?;
        }
        Ok(())
    }
}

/// All violations, at most one per (prime, condition). Finiteness of the
/// non-identity primes holds by construction.
pub fn validate_spec(spec: &DpSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    for (p, d) in spec.iter() {
        let values = d.values();
        let push = |out: &mut Vec<Violation>, condition, index| {
            out.push(Violation {
                prime: p,
                condition,
                index,
            })
        };
        if values.is_empty() {
            push(&mut out, Condition::EmptyTable, None);
            continue;
        }
        if let Some(i) = values.windows(2).position(|w| w[1] < w[0]) {
            push(&mut out, Condition::Monotone, Some(i as u32 + 1));
        }
        let below = |limit: usize| {
            values
                .iter()
                .enumerate()
                .take(limit)
                .find(|&(i, &x)| (x as usize) < i)
                .map(|(i, _)| i as u32)
        };
        match d {
            DpFunction::Unbounded(_) => {
                if let Some(i) = below(values.len()) {
                    push(&mut out, Condition::UnboundedGrowth, Some(i));
                }
            }
            DpFunction::Bounded(_) => {
                let max = values.iter().copied().max().unwrap_or(0) as usize;
                if let Some(i) = below(max + 1) {
                    push(&mut out, Condition::BoundedGrowth, Some(i));
                }
            }
        }
    }
    out
}

/// `prod_p p^{d_p(ord_p(n))}`; `f(1) = prod_p p^{d_p(0)}`.
pub fn apply_spec(spec: &DpSpec, n: &Natural) -> Result<Natural> {
    let fact = factorize(n)?;
    let mut out = Natural::one();
    for (p, e) in fact.pairs() {
        let mapped = p.to_u64().and_then(|q| spec.get(q).map(|d| (q, d)));
        let exp = match mapped {
            Some((q, d)) => d.eval(*e).ok_or(Error::TableExceeded {
                p: q,
                v: *e,
                max: d.table_bound().unwrap_or(0),
            })?,
            None => *e,
        };
        out *= p.pow(exp);
    }
    for (p, d) in spec.iter() {
        if fact.exponent_of(&Natural::from(p)) == 0 {
            let exp = d.eval(0).ok_or(Error::TableExceeded { p, v: 0, max: 0 })?;
            out *= Natural::from(p).pow(exp);
        }
    }
    Ok(out)
}

/// Reads off the exponent maps of a word.
///
/// A generator only touches the part of `n` at its own prime, so a word acts
/// prime by prime and `d_p(v) = ord_p(w(p^v))`. For a prime with at least one
/// `h`, every exponent above the largest level behaves alike, so the result is
/// an exact [`DpFunction::Bounded`]. Otherwise the map is tabulated on
/// `0..=t_max` as [`DpFunction::Unbounded`]. Primes absent from the word are
/// left to the identity default.
pub fn spec_from_word(w: &Word, p_max: u64, t_max: u32) -> Result<DpSpec> {
    let mut levels: BTreeMap<u64, (u32, bool)> = BTreeMap::new();
    for g in w.gens() {
        if g.prime() > p_max {
            return Err(Error::PrimeOutOfRange {
                p: g.prime(),
                p_max,
            });
        }
        let entry = levels.entry(g.prime()).or_insert((0, false));
        entry.0 = entry.0.max(g.level());
        entry.1 |= g.kind() == Kind::H;
    }
    let mut spec = DpSpec::identity();
    for (p, (top, has_h)) in levels {
        let table = |upto: u32| -> Result<Vec<u32>> {
            (0..=upto)
                .map(|v| Ok(valuation(p, &w.eval(&Natural::from(p).pow(v))?)))
                .collect()
        };
        let d = if has_h {
            let mut values = table(t_max.max(top + 1))?;
            let last = *values.last().expect("table is non-empty");
            let keep = values.len() - values.iter().rev().take_while(|&&x| x == last).count() + 1;
            values.truncate(keep);
            DpFunction::Bounded(values)
        } else {
            DpFunction::Unbounded(table(t_max)?)
        };
        spec.insert(p, d)?;
    }
    Ok(spec)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PreimageStructure {
    /// No `n <= N` has `k | f(n)`.
    Empty,
    /// `{n <= N : k | f(n)}` is exactly the multiples of `d`, and `d | k`.
    Progression(u64),
    /// First `n` where the set departs from that shape.
    Violation(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PreimageReport {
    pub k: u64,
    /// Every statement holds for `n <= precision` only.
    pub precision: u64,
    pub outcome: PreimageStructure,
}

fn images<F: TimeChange + ?Sized>(f: &F, bound: u64) -> Result<Vec<Natural>> {
    (1..=bound).map(|n| f.apply(&Natural::from(n))).collect()
}

fn classify(k: u64, values: &[Natural]) -> PreimageStructure {
    let hit = |n: u64| (&values[n as usize - 1] % k).is_zero();
    let bound = values.len() as u64;
    let Some(d) = (1..=bound).find(|&n| hit(n)) else {
        return PreimageStructure::Empty;
    };
    if !k.is_multiple_of(d) {
        return PreimageStructure::Violation(d);
    }
    match (1..=bound).find(|&n| hit(n) != (n % d == 0)) {
        Some(n) => PreimageStructure::Violation(n),
        None => PreimageStructure::Progression(d),
    }
}

/// Shape of `{n <= N : k | f(n)}`.
pub fn preimage_structure<F: TimeChange + ?Sized>(
    f: &F,
    k: u64,
    bound: u64,
) -> Result<PreimageReport> {
    Ok(preimage_structures(f, &[k], bound)?.remove(0))
}

/// [`preimage_structure`] for several `k`, evaluating `f` once per `n`.
pub fn preimage_structures<F: TimeChange + ?Sized>(
    f: &F,
    ks: &[u64],
    bound: u64,
) -> Result<Vec<PreimageReport>> {
    if let Some(&k) = ks.iter().find(|&&k| k == 0 || k > bound) {
        return Err(Error::Precondition(format!(
            "preimage needs 1 <= k <= N, got k = {k}, N = {bound}"
        )));
    }
    let values = images(f, bound)?;
    Ok(ks
        .iter()
        .map(|&k| PreimageReport {
            k,
            precision: bound,
            outcome: classify(k, &values),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MembershipOutcome {
    /// Inconclusive: nothing was refuted at this precision.
    NoViolation,
    /// Conclusive: `(reg_k(f(n)))_n` is not realizable, so `f` is not in the monoid.
    Witness {
        k: u64,
        verdict: RealizabilityVerdict,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MembershipReport {
    pub max_k: u64,
    pub precision: u64,
    pub outcome: MembershipOutcome,
}

impl MembershipReport {
    pub fn refuted(&self) -> bool {
        matches!(self.outcome, MembershipOutcome::Witness { .. })
    }
}

/// Time-changes a single orbit of each length `k <= max_k` and checks the
/// result on `n <= bound`. Stops at the smallest refuting `k`.
pub fn membership_test<F: TimeChange + ?Sized>(
    f: &F,
    max_k: u64,
    bound: u64,
) -> Result<MembershipReport> {
    if max_k == 0 || bound == 0 {
        return Err(Error::Precondition(
            "membership test needs K, N >= 1".into(),
        ));
    }
    let values = images(f, bound)?;
    for k in 1..=max_k {
        let seq = FixSequence::new(
            values
                .iter()
                .map(|v| {
                    if (v % k).is_zero() {
                        Natural::from(k)
                    } else {
                        Natural::zero()
                    }
                })
                .collect(),
        )?;
        let verdict = check_realizable(&seq);
        if !verdict.is_pass() {
            return Ok(MembershipReport {
                max_k,
                precision: bound,
                outcome: MembershipOutcome::Witness { k, verdict },
            });
        }
    }
    Ok(MembershipReport {
        max_k,
        precision: bound,
        outcome: MembershipOutcome::NoViolation,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClaimOutcome {
    Holds,
    /// First counterexample; the meaning of `lhs`/`rhs` depends on the claim.
    Counterexample {
        m: u64,
        n: u64,
        lhs: Natural,
        rhs: Natural,
    },
}

impl ClaimOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, ClaimOutcome::Holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisibilityReport {
    pub precision: u64,
    /// `m | n => f(m) | f(n)`; counterexample carries `lhs = f(m)`, `rhs = f(n)`.
    pub divisibility: ClaimOutcome,
    /// `gcd(m, n) = 1 => f(mn) = lcm(f(m), f(n))` for `mn <= N`;
    /// counterexample carries `lhs = f(mn)`, `rhs = lcm`.
    pub coprime_lcm: ClaimOutcome,
    /// every prime dividing `f(n) / f(1)` divides `n`; counterexample has
    /// `m = 1`, `lhs = f(n)`, `rhs = f(1)`.
    pub prime_support: ClaimOutcome,
}

impl DivisibilityReport {
    pub fn all_hold(&self) -> bool {
        self.divisibility.holds() && self.coprime_lcm.holds() && self.prime_support.holds()
    }
}

pub fn check_divisibility_properties<F: TimeChange + ?Sized>(
    f: &F,
    bound: u64,
) -> Result<DivisibilityReport> {
    if bound == 0 {
        return Err(Error::Precondition(
            "divisibility check needs N >= 1".into(),
        ));
    }
    let values = images(f, bound)?;
    let at = |n: u64| &values[n as usize - 1];
    let fail = |m: u64, n: u64, lhs: &Natural, rhs: &Natural| ClaimOutcome::Counterexample {
        m,
        n,
        lhs: lhs.clone(),
        rhs: rhs.clone(),
    };

    let mut divisibility = ClaimOutcome::Holds;
    'outer: for n in 1..=bound {
        for m in index_divisors(n as usize) {
            let m = m as u64;
            if !(at(n) % at(m)).is_zero() {
                divisibility = fail(m, n, at(m), at(n));
                break 'outer;
            }
        }
    }

    let mut coprime_lcm = ClaimOutcome::Holds;
    'outer: for q in 1..=bound {
        for m in index_divisors(q as usize) {
            let (m, n) = (m as u64, q / m as u64);
            if m > n || m.gcd(&n) != 1 {
                continue;
            }
            let lcm = at(m).lcm(at(n));
            if *at(q) != lcm {
                coprime_lcm = fail(m, n, at(q), &lcm);
                break 'outer;
            }
        }
    }

    let mut prime_support = ClaimOutcome::Holds;
    let base = at(1);
    for n in 1..=bound {
        let (mut rest, r) = at(n).div_rem(base);
        if r.is_zero() {
            let nn = Natural::from(n);
            loop {
                let g = rest.gcd(&nn);
                if g.is_one() {
                    break;
                }
                rest /= g;
            }
        }
        if !r.is_zero() || !rest.is_one() {
            prime_support = fail(1, n, at(n), base);
            break;
        }
    }

    Ok(DivisibilityReport {
        precision: bound,
        divisibility,
        coprime_lcm,
        prime_support,
    })
}
