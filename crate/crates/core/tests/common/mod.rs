#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use zeta_timechange::arith::primes_up_to;
use zeta_timechange::realizable::fix_from_orbits;
use zeta_timechange::{DpFunction, DpSpec, FixSequence, Natural, OrbitCounts};

/// Orbit counts with roughly a third of the lengths empty.
pub fn random_orbits(rng: &mut ChaCha8Rng, len: usize) -> OrbitCounts {
    let entries = (0..len)
        .map(|_| {
            if rng.gen_bool(0.35) {
                Natural::from(0u32)
            } else {
                Natural::from(rng.gen_range(1u32..=4))
            }
        })
        .collect();
    OrbitCounts::new(entries).unwrap()
}

pub fn random_realizable(rng: &mut ChaCha8Rng, len: usize) -> FixSequence {
    fix_from_orbits(&random_orbits(rng, len))
}

/// A valid spec over a random subset of the primes `<= p_max`.
///
/// Bounded tables have `d(i)` in `[max(prev, min(i, M)), M]` and end at `M`;
/// unbounded ones have `d(i) = max(prev, i) + {0, 1, 2}`.
pub fn random_spec(
    rng: &mut ChaCha8Rng,
    p_max: u64,
    table_len: usize,
    max_eventual: u32,
) -> DpSpec {
    let mut spec = DpSpec::identity();
    for p in primes_up_to(p_max) {
        if rng.gen_bool(0.3) {
            continue;
        }
        let len = rng.gen_range(1..=table_len);
        let d = if rng.gen_bool(0.5) {
            let m = rng.gen_range(0..=max_eventual);
            let mut values = Vec::with_capacity(len);
            let mut prev = 0;
            for i in 0..len as u32 {
                let lo = prev.max(i.min(m));
                let v = if i + 1 == len as u32 {
                    m
                } else {
                    rng.gen_range(lo..=m)
                };
                values.push(v);
                prev = v;
            }
            DpFunction::Bounded(values)
        } else {
            let mut values = Vec::with_capacity(len);
            let mut prev = 0;
            for i in 0..len as u32 {
                let v = prev.max(i) + rng.gen_range(0..=2);
                values.push(v);
                prev = v;
            }
            DpFunction::Unbounded(values)
        };
        spec.insert(p, d).unwrap();
    }
    spec
}

/// `prod p^{e_p}` over `primes` with every `e_p <= max_exp`, up to `bound`.
pub fn smooth_numbers(primes: &[u64], max_exp: u32, bound: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &p in primes {
        let mut next = Vec::new();
        for &n in &out {
            let mut m = n;
            for _ in 0..=max_exp {
                if m > bound {
                    break;
                }
                next.push(m);
                m *= p;
            }
        }
        out = next;
    }
    out.sort_unstable();
    out
}
