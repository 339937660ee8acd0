//! Compiling exponent specifications into generator words.
//!
//! Within one prime the per-level blocks are applied from the highest level
//! down. A block raises `ord_p(n) = t` to `d(t)`; since `d` is non-decreasing,
//! no later (lower) block can fire on an already-raised exponent. Bounded maps
//! are finished with `h_{p,M}`, `M` the eventual value, which clamps every
//! exponent that ended above `M`.

use std::collections::BTreeMap;

use crate::arith::{valuation_u64, Natural};
use crate::characterization::{apply_spec, DpFunction, DpSpec};
use crate::error::{Error, Result};
use crate::monoid::{Generator, Kind, Word};

/// `[g_{p,t}, ..., g_{p,d-1}]` in application order.
pub fn block_gadget(p: u64, t: u32, d: u32) -> Result<Word> {
    if d < t {
        return Err(Error::GadgetBelowLevel { t, target: d });
    }
    (t..d).map(|s| Generator::g(p, s)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompileResult {
    pub word: Word,
    /// `p -> largest ord_p(n)` covered by the table, for unbounded primes.
    pub agreement: BTreeMap<u64, u32>,
}

impl CompileResult {
    pub fn in_agreement(&self, n: u64) -> bool {
        self.agreement
            .iter()
            .all(|(&p, &max)| valuation_u64(p, n) <= max)
    }
}

fn prime_word(p: u64, d: &DpFunction) -> Result<(Vec<Generator>, Option<Generator>)> {
    let values = d.values();
    let top = match d {
        DpFunction::Bounded(_) => d
            .stabilization_index()
            .expect("validated table is non-empty"),
        DpFunction::Unbounded(_) => values.len() as u32 - 1,
    };
    let mut gs = Vec::new();
    for t in (0..=top).rev() {
        gs.extend_from_slice(block_gadget(p, t, values[t as usize])?.gens());
    }
    let h = match d.eventual() {
        Some(m) => Some(Generator::h(p, m)?),
        None => None,
    };
    Ok((gs, h))
}

pub fn compile(spec: &DpSpec) -> Result<CompileResult> {
    spec.validate()?;
    let mut gs = Vec::new();
    let mut hs = Vec::new();
    let mut agreement = BTreeMap::new();
    for (p, d) in spec.iter() {
        let (g, h) = prime_word(p, d)?;
        gs.extend(g);
        hs.extend(h);
        if let Some(b) = d.table_bound() {
            agreement.insert(p, b);
        }
    }
    gs.extend(hs);
    let word = Word::new(gs);
    debug_assert!(word.gens().iter().all(|g| spec.get(g.prime()).is_some()));
    debug_assert!(word
        .gens()
        .iter()
        .skip_while(|g| g.kind() == Kind::G)
        .all(|g| g.kind() == Kind::H));
    Ok(CompileResult { word, agreement })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    Ok,
    /// Smallest `n` in the agreement set where the word and the spec differ.
    Witness {
        n: u64,
        got: Natural,
        expected: Natural,
    },
}

impl VerifyOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, VerifyOutcome::Ok)
    }
}

/// Exhaustive comparison on `{n <= bound} ∩ agreement`.
pub fn verify_compile(r: &CompileResult, spec: &DpSpec, bound: u64) -> Result<VerifyOutcome> {
    for n in 1..=bound {
        if !r.in_agreement(n) {
            continue;
        }
        let nn = Natural::from(n);
        let got = r.word.eval(&nn)?;
        let expected = apply_spec(spec, &nn)?;
        if got != expected {
            return Ok(VerifyOutcome::Witness { n, got, expected });
        }
    }
    Ok(VerifyOutcome::Ok)
}
