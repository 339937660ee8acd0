//! The generators `g_{p,t}` and `h_{p,t}`, words over them, and rewriting of
//! words into the "all g's, then all h's" shape.
//!
//! A [`Word`] is stored in application order: `gens[0]` acts first. The usual
//! right-to-left product notation is produced by [`Word::to_product_notation`].

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{is_prime_u64, primes_up_to, valuation, valuation_u64, Natural};
use crate::error::{Error, Result};
use crate::maps::TimeChange;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// `g_{p,t}`: multiply by `p` exactly when `ord_p(n) = t`.
    G,
    /// `h_{p,t}`: cut `ord_p(n)` down to `t` when it is at least `t`.
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator {
    kind: Kind,
    p: u64,
    t: u32,
}

impl Generator {
    pub fn new(kind: Kind, p: u64, t: u32) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(Natural::from(p)));
        }
        Ok(Generator { kind, p, t })
    }

    pub fn g(p: u64, t: u32) -> Result<Self> {
        Self::new(Kind::G, p, t)
    }

    pub fn h(p: u64, t: u32) -> Result<Self> {
        Self::new(Kind::H, p, t)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.t
    }

    pub fn eval(&self, n: &Natural) -> Result<Natural> {
        if n.is_zero() {
            return Err(Error::ZeroArgument { op: "generator" });
        }
        if let Some(small) = n.to_u64() {
            if let Some(out) = self.eval_u64(small) {
                return Ok(Natural::from(out));
            }
        }
        Ok(self.eval_big(n))
    }

    fn eval_big(&self, n: &Natural) -> Natural {
        let v = valuation(self.p, n);
        let out = match self.kind {
            Kind::G if v == self.t => n * self.p,
            Kind::G => n.clone(),
            Kind::H if v >= self.t => n / Natural::from(self.p).pow(v - self.t),
            Kind::H => n.clone(),
        };
        debug_assert!(self.postcondition(v, valuation(self.p, &out)));
        out
    }

    /// `None` only when the result overflows `u64`.
    #[inline]
    pub(crate) fn eval_u64(&self, n: u64) -> Option<u64> {
        let v = valuation_u64(self.p, n);
        let out = match self.kind {
            Kind::G if v == self.t => n.checked_mul(self.p)?,
            Kind::G => n,
            Kind::H if v > self.t => {
                let mut m = n;
                for _ in self.t..v {
                    m /= self.p;
                }
                m
            }
            Kind::H => n,
        };
        debug_assert!(self.postcondition(v, valuation_u64(self.p, out)));
        Some(out)
    }

    // ord_p(h_{p,t}(n)) = min(t, ord_p(n)); ord_p(g_{p,t}(n)) != t.
    fn postcondition(&self, before: u32, after: u32) -> bool {
        match self.kind {
            Kind::G => after != self.t && (after == before || after == before + 1),
            Kind::H => after == before.min(self.t),
        }
    }
}

impl TimeChange for Generator {
    fn apply(&self, n: &Natural) -> Result<Natural> {
        self.eval(n)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::G => "g",
            Kind::H => "h",
        };
        write!(f, "{k}_{{{},{}}}", self.p, self.t)
    }
}

pub fn eval_generator(g: &Generator, n: &Natural) -> Result<Natural> {
    g.eval(n)
}

/// A finite composition of generators in application order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    gens: Vec<Generator>,
}

impl Word {
    pub fn new(gens: Vec<Generator>) -> Self {
        Word { gens }
    }

    pub fn identity() -> Self {
        Word::default()
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn push(&mut self, g: Generator) {
        self.gens.push(g);
    }

    /// `self` followed by `other` (so `other` acts last).
    pub fn then(&self, other: &Word) -> Word {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        Word { gens }
    }

    pub fn eval(&self, n: &Natural) -> Result<Natural> {
        if n.is_zero() {
            return Err(Error::ZeroArgument { op: "word" });
        }
        let mut rest = self.gens.as_slice();
        if let Some(mut small) = n.to_u64() {
            while let Some((g, tail)) = rest.split_first() {
                match g.eval_u64(small) {
                    Some(next) => {
                        small = next;
                        rest = tail;
                    }
                    None => break,
                }
            }
            if rest.is_empty() {
                return Ok(Natural::from(small));
            }
            return finish_big(rest, Natural::from(small));
        }
        finish_big(rest, n.clone())
    }

    /// `u64` evaluation; `None` if any intermediate value overflows.
    pub fn eval_u64(&self, n: u64) -> Option<u64> {
        assert!(n > 0, "words act on positive integers");
        self.gens.iter().try_fold(n, |m, g| g.eval_u64(m))
    }

    /// Right-to-left product rendering, e.g. `h_{3,0} g_{2,0}` for the word
    /// that applies `g_{2,0}` first.
    pub fn to_product_notation(&self) -> String {
        if self.gens.is_empty() {
            return "id".to_string();
        }
        self.gens
            .iter()
            .rev()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn finish_big(gens: &[Generator], mut n: Natural) -> Result<Natural> {
    for g in gens {
        n = g.eval_big(&n);
    }
    Ok(n)
}

impl FromIterator<Generator> for Word {
    fn from_iter<I: IntoIterator<Item = Generator>>(iter: I) -> Self {
        Word {
            gens: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "]")
    }
}

impl TimeChange for Word {
    fn apply(&self, n: &Natural) -> Result<Natural> {
        self.eval(n)
    }
}

pub fn eval_word(w: &Word, n: &Natural) -> Result<Natural> {
    w.eval(n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equality {
    Equal,
    /// Smallest `n` on which the words differ.
    Witness {
        n: u64,
        left: Natural,
        right: Natural,
    },
}

impl Equality {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equality::Equal)
    }
}

/// Compares two words on `1..=bound`.
pub fn equal_upto(w1: &Word, w2: &Word, bound: u64) -> Equality {
    for n in 1..=bound {
        let (a, b) = match (w1.eval_u64(n), w2.eval_u64(n)) {
            (Some(a), Some(b)) if a == b => continue,
            (Some(a), Some(b)) => (Natural::from(a), Natural::from(b)),
            _ => {
                let nn = Natural::from(n);
                let a = w1.eval(&nn).expect("n is positive");
                let b = w2.eval(&nn).expect("n is positive");
                if a == b {
                    continue;
                }
                (a, b)
            }
        };
        return Equality::Witness {
            n,
            left: a,
            right: b,
        };
    }
    Equality::Equal
}

/// Moves every `h` after every `g` (in application order), groups the `g`s by
/// ascending prime keeping their relative order within a prime, and sorts the
/// `h`s by prime, keeping one `h_{p, min t}` per prime.
///
/// Rewrites used, in application order:
/// - `[h_{q,s}, g_{p,t}] -> [g_{p,t}, h_{q,s}]` when `q != p` or `s != t`;
/// - `[h_{p,t}, g_{p,t}] -> [g_{p,t}, h_{p,t+1}]`;
/// - adjacent `g`s of distinct primes commute;
/// - `h`s commute, and `h_{p,s}` then `h_{p,t}` is `h_{p,min(s,t)}`.
///
/// The result is semantically equal to the input but is not canonical.
pub fn normal_form(w: &Word) -> Word {
    let mut gs: Vec<Generator> = Vec::new();
    // h's that so far act before some later g
    let mut pending: Vec<Generator> = Vec::new();
    for &gen in &w.gens {
        match gen.kind {
            Kind::H => pending.push(gen),
            Kind::G => {
                // g travels left past every pending h; it is never modified,
                // and an h with matching prime and level is bumped one level.
                for h in pending.iter_mut().rev() {
                    if h.p == gen.p && h.t == gen.t {
                        h.t += 1;
                    }
                }
                gs.push(gen);
            }
        }
    }
    gs.sort_by_key(|g| g.p);
    pending.sort_by_key(|h| (h.p, h.t));
    pending.dedup_by_key(|h| h.p);
    gs.extend(pending);
    Word { gens: gs }
}

/// True when no `h` precedes a `g`, the `g` block has non-decreasing primes,
/// and the `h` block has strictly increasing primes.
pub fn is_normal_shape(w: &Word) -> bool {
    let split = w
        .gens
        .iter()
        .position(|g| g.kind == Kind::H)
        .unwrap_or(w.len());
    let (gs, hs) = w.gens.split_at(split);
    hs.iter().all(|g| g.kind == Kind::H)
        && gs.windows(2).all(|x| x[0].p <= x[1].p)
        && hs.windows(2).all(|x| x[0].p < x[1].p)
}

/// Deterministic pseudo-random word: each letter is `g` or `h` with equal
/// probability, a uniform prime `<= p_max` and a uniform level `<= t_max`.
pub fn random_word(seed: u64, length: usize, p_max: u64, t_max: u32) -> Result<Word> {
    if length == 0 {
        return Ok(Word::identity());
    }
    let primes = primes_up_to(p_max);
    if primes.is_empty() {
        return Err(Error::NoPrimes(p_max));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..length)
        .map(|_| {
            let kind = if rng.gen_bool(0.5) { Kind::G } else { Kind::H };
            let p = primes[rng.gen_range(0..primes.len())];
            let t = rng.gen_range(0..=t_max);
            Generator { kind, p, t }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(p: u64, t: u32) -> Generator {
        Generator::g(p, t).unwrap()
    }

    fn h(p: u64, t: u32) -> Generator {
        Generator::h(p, t).unwrap()
    }

    fn at(x: &impl TimeChange, n: u64) -> u64 {
        x.apply(&Natural::from(n)).unwrap().to_u64().unwrap()
    }

    #[test]
    fn generator_examples() {
        assert_eq!(at(&g(2, 0), 3), 6);
        assert_eq!(at(&g(2, 0), 4), 4);
        assert_eq!(at(&h(2, 1), 8), 2);
        assert_eq!(at(&h(3, 2), 5), 5);
        assert!(g(2, 0).eval(&Natural::zero()).is_err());
        assert_eq!(
            Generator::g(6, 1),
            Err(Error::NotPrime(Natural::from(6u64)))
        );
    }

    #[test]
    fn big_and_small_paths_agree() {
        let big = Natural::from(u64::MAX) * Natural::from(7u64).pow(5u32);
        for gen in [g(7, 5), g(7, 6), h(7, 2), h(7, 9), g(2, 0), h(11, 0)] {
            let v = valuation(7, &big);
            let out = gen.eval(&big).unwrap();
            match (gen.kind, gen.p) {
                (Kind::G, 7) if gen.t == v => assert_eq!(out, &big * 7u32),
                (Kind::H, 7) if gen.t < v => {
                    assert_eq!(valuation(7, &out), gen.t)
                }
                _ if gen.p == 2 => assert_eq!(out, &big * 2u32), // big is odd
                _ => assert_eq!(out, big),
            }
        }
        // overflow during u64 evaluation continues in big integers
        let w = Word::new(vec![g(2, 63), g(2, 64), g(2, 65)]);
        let n = Natural::from(1u64 << 63);
        assert_eq!(w.eval(&n).unwrap(), Natural::from(1u64 << 63) * 8u32);
        assert_eq!(w.eval_u64(1 << 63), None);
    }

    #[test]
    fn word_examples() {
        assert_eq!(at(&Word::identity(), 17), 17);

        // g_{2,0} g_{2,1} g_{2,2} in product notation applies g_{2,2} first.
        let doubling = Word::new(vec![g(2, 2), g(2, 1), g(2, 0)]);
        assert_eq!(doubling.to_product_notation(), "g_{2,0} g_{2,1} g_{2,2}");
        assert_eq!(at(&doubling, 5), 10);
        for n in 1..8 {
            assert_eq!(at(&doubling, n), 2 * n);
        }
        // The same letters in the opposite order cascade: 5 -> 10 -> 20 -> 40.
        let reversed = Word::new(vec![g(2, 0), g(2, 1), g(2, 2)]);
        assert_eq!(at(&reversed, 5), 40);

        let constant = Word::new(vec![g(2, 0), h(2, 1), h(3, 0), h(5, 0)]);
        assert_eq!(at(&constant, 6), 2);
    }

    #[test]
    fn equality_examples() {
        let w = Word::new(vec![g(2, 0), h(3, 1)]);
        assert_eq!(equal_upto(&w, &w, 100), Equality::Equal);
        let a = Word::new(vec![g(2, 0), g(2, 1)]);
        let b = Word::new(vec![g(2, 1), g(2, 0)]);
        assert_eq!(
            equal_upto(&a, &b, 4),
            Equality::Witness {
                n: 1,
                left: Natural::from(4u64),
                right: Natural::from(2u64)
            }
        );
        let lhs = Word::new(vec![h(2, 0), g(2, 0)]);
        let rhs = Word::new(vec![g(2, 0), h(2, 1)]);
        assert!(equal_upto(&lhs, &rhs, 10_000).is_equal());
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(
            normal_form(&Word::new(vec![h(2, 0), g(2, 0)])),
            Word::new(vec![g(2, 0), h(2, 1)])
        );
        assert_eq!(
            normal_form(&Word::new(vec![h(3, 1), g(2, 4)])),
            Word::new(vec![g(2, 4), h(3, 1)])
        );
        let collapse = Word::new(vec![h(2, 3), h(2, 1)]);
        assert_eq!(normal_form(&collapse), Word::new(vec![h(2, 1)]));
        assert!(equal_upto(&collapse, &Word::new(vec![h(2, 1)]), 10_000).is_equal());
    }

    #[test]
    fn normal_form_keeps_same_prime_g_order() {
        let w = Word::new(vec![g(3, 1), g(2, 1), g(3, 0), g(2, 0)]);
        assert_eq!(
            normal_form(&w),
            Word::new(vec![g(2, 1), g(2, 0), g(3, 1), g(3, 0)])
        );
    }

    #[test]
    fn bumped_h_meets_next_level() {
        // h_{2,0} passes g_{2,0} (-> h_{2,1}) then g_{2,1} (-> h_{2,2}).
        let w = Word::new(vec![h(2, 0), g(2, 0), g(2, 1)]);
        let nf = normal_form(&w);
        assert_eq!(nf, Word::new(vec![g(2, 0), g(2, 1), h(2, 2)]));
        assert!(equal_upto(&w, &nf, 10_000).is_equal());
    }

    #[test]
    fn random_word_contract() {
        assert!(random_word(7, 0, 7, 5).unwrap().is_empty());
        let w = random_word(42, 20, 7, 5).unwrap();
        assert_eq!(w, random_word(42, 20, 7, 5).unwrap());
        assert_eq!(w.len(), 20);
        assert!(w.gens().iter().all(|x| x.prime() <= 7 && x.level() <= 5));
        assert_ne!(w, random_word(43, 20, 7, 5).unwrap());
        assert_eq!(random_word(1, 3, 1, 2), Err(Error::NoPrimes(1)));
    }

    const PRIMES: [u64; 4] = [2, 3, 5, 7];

    fn commute(a: Generator, b: Generator, bound: u64) -> bool {
        equal_upto(&Word::new(vec![a, b]), &Word::new(vec![b, a]), bound).is_equal()
    }

    #[test]
    fn commutation_relations() {
        let bound = 2_000;
        for &p1 in &PRIMES {
            for &p2 in &PRIMES {
                for t1 in 0..=4 {
                    for t2 in 0..=4 {
                        if p1 != p2 {
                            assert!(commute(g(p1, t1), h(p2, t2), bound));
                            assert!(commute(g(p1, t1), g(p2, t2), bound));
                        } else if t1 != t2 {
                            assert!(commute(g(p1, t1), h(p2, t2), bound));
                        }
                        assert!(commute(h(p1, t1), h(p2, t2), bound));
                    }
                }
            }
        }
        for &p in &PRIMES {
            for t in 0..=4 {
                assert!(!commute(g(p, t), h(p, t), 10_000));
                let lhs = Word::new(vec![g(p, t), h(p, t + 1)]);
                let rhs = Word::new(vec![h(p, t), g(p, t)]);
                assert!(equal_upto(&lhs, &rhs, bound).is_equal());
            }
        }
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(
            (
                prop::bool::ANY,
                prop::sample::select(PRIMES.to_vec()),
                0u32..=5,
            ),
            0..=max_len,
        )
        .prop_map(|v| {
            v.into_iter()
                .map(|(is_g, p, t)| if is_g { g(p, t) } else { h(p, t) })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn normal_form_is_sound(w in arb_word(20)) {
            let nf = normal_form(&w);
            prop_assert!(is_normal_shape(&nf));
            prop_assert!(equal_upto(&w, &nf, 3_000).is_equal());
            prop_assert_eq!(normal_form(&nf), nf);
        }
    }
}
