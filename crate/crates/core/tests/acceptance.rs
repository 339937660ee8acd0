//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{random_realizable, random_spec, smooth_numbers};
use zeta_timechange::arith::primes_up_to;
use zeta_timechange::characterization::{
    membership_test, preimage_structures, MembershipOutcome, PreimageStructure,
};
use zeta_timechange::compiler::compile;
use zeta_timechange::error::Error;
use zeta_timechange::monoid::{equal_upto, is_normal_shape, normal_form, random_word};
use zeta_timechange::realizable::{check_realizable, orbit_counts};
use zeta_timechange::report::gp_shift_report;
use zeta_timechange::series::{
    euler_product, fix_from_zeta, time_change_fix, zeta_from_fix, zeta_from_sequence, ZetaFailure,
};
use zeta_timechange::{
    BuiltinMap, DpFunction, DpSpec, FixSource, Generator, Natural, RationalSeries,
    RealizabilityVerdict, Word,
};

const NN_LIMIT: Duration = Duration::from_secs(1);
const GENERATOR_MEMBERSHIP_LIMIT: Duration = Duration::from_secs(10);
const PREIMAGE_LIMIT: Duration = Duration::from_secs(10);

// Every comparison below is exact; no numeric tolerance is involved.
const COMMUTATION_BOUND: u64 = 10_000;
const DOUBLING_K: u32 = 6;
const SQUARING_BOUND: u64 = 10_000;
const CONSTANT_PK: u64 = 13;
const NORMAL_FORM_WORDS: u64 = 1000;
const NORMAL_FORM_BOUND: u64 = 10_000;
const ZETA_ORDER: usize = 16;
const EULER_CASES: usize = 500;
const EULER_LEN: usize = 32;
const PRESERVATION_CASES: usize = 200;
const PRESERVATION_LEN: usize = 64;
const REPORT_ORDER: usize = 30;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn g(p: u64, t: u32) -> Generator {
    Generator::g(p, t).unwrap()
}

fn h(p: u64, t: u32) -> Generator {
    Generator::h(p, t).unwrap()
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:?}, limit {limit:?}"))
    }
}

fn nn_counterexample() -> Outcome {
    let start = Instant::now();
    let r = membership_test(&BuiltinMap::SelfPower, 8, 6).map_err(|e| e.to_string())?;
    within(start.elapsed(), NN_LIMIT)?;
    let expected = MembershipOutcome::Witness {
        k: 8,
        verdict: RealizabilityVerdict::DoldFailure {
            n: 6,
            value: BigInt::from(8),
        },
    };
    if r.outcome == expected {
        Ok(format!("witness k = 8, b_6 = 8 in {:?}", start.elapsed()))
    } else {
        Err(format!("got {:?}", r.outcome))
    }
}

fn generator_membership() -> Outcome {
    let start = Instant::now();
    for p in [2, 3, 5] {
        for t in 0..=2 {
            let r = membership_test(&g(p, t), 24, 200).map_err(|e| e.to_string())?;
            if r.refuted() {
                return Err(format!("g_{{{p},{t}}} refuted: {:?}", r.outcome));
            }
        }
    }
    within(start.elapsed(), GENERATOR_MEMBERSHIP_LIMIT)?;
    Ok(format!(
        "9 generators, no violation in {:?}",
        start.elapsed()
    ))
}

fn preimage_formulas() -> Outcome {
    let start = Instant::now();
    let ks: Vec<u64> = (1..=60).collect();
    let ord = |p: u64, mut k: u64| {
        let mut v = 0;
        while k.is_multiple_of(p) {
            k /= p;
            v += 1;
        }
        v
    };
    for p in [2, 3, 5] {
        for t in 0..=3u32 {
            let hr = preimage_structures(&h(p, t), &ks, 10_000).map_err(|e| e.to_string())?;
            let gr = preimage_structures(&g(p, t), &ks, 10_000).map_err(|e| e.to_string())?;
            for (i, &k) in ks.iter().enumerate() {
                let eh = if ord(p, k) > t {
                    PreimageStructure::Empty
                } else {
                    PreimageStructure::Progression(k)
                };
                let eg = if ord(p, k) == t + 1 {
                    PreimageStructure::Progression(k / p)
                } else {
                    PreimageStructure::Progression(k)
                };
                if hr[i].outcome != eh || gr[i].outcome != eg {
                    return Err(format!(
                        "p = {p}, t = {t}, k = {k}: h {:?}, g {:?}",
                        hr[i].outcome, gr[i].outcome
                    ));
                }
            }
        }
    }
    within(start.elapsed(), PREIMAGE_LIMIT)?;
    Ok(format!("1440 cases match in {:?}", start.elapsed()))
}

fn commutation() -> Outcome {
    let primes = [2u64, 3, 5, 7];
    let levels = 0..=4u32;
    let mut checked = 0;
    let mut commute = |a: Generator, b: Generator, label: &str| -> Result<(), String> {
        checked += 1;
        let ab = Word::new(vec![a, b]);
        let ba = Word::new(vec![b, a]);
        match equal_upto(&ab, &ba, COMMUTATION_BOUND) {
            e if e.is_equal() => Ok(()),
            e => Err(format!("({label}) {a} and {b}: {e:?}")),
        }
    };
    for &p1 in &primes {
        for &p2 in &primes {
            for t1 in levels.clone() {
                for t2 in levels.clone() {
                    if p1 != p2 {
                        commute(g(p1, t1), h(p2, t2), "a")?;
                        commute(g(p1, t1), g(p2, t2), "c")?;
                    } else if t1 != t2 {
                        commute(g(p1, t1), h(p2, t2), "b")?;
                    }
                    commute(h(p1, t1), h(p2, t2), "d")?;
                }
            }
        }
    }
    for &p in &primes {
        for t in levels.clone() {
            // h_{p,t+1} after g_{p,t} equals g_{p,t} after h_{p,t}
            let lhs = Word::new(vec![g(p, t), h(p, t + 1)]);
            let rhs = Word::new(vec![h(p, t), g(p, t)]);
            if !equal_upto(&lhs, &rhs, COMMUTATION_BOUND).is_equal() {
                return Err(format!("(e) fails for p = {p}, t = {t}"));
            }
            let swapped = Word::new(vec![g(p, t), h(p, t)]);
            if equal_upto(&swapped, &rhs, COMMUTATION_BOUND).is_equal() {
                return Err(format!("(e) g_{{{p},{t}}} and h_{{{p},{t}}} commute"));
            }
        }
    }
    Ok(format!(
        "{checked} commuting pairs and 20 instances of (e), n <= {COMMUTATION_BOUND}"
    ))
}

fn doubling() -> Outcome {
    let spec = DpSpec::identity()
        .with(2, DpFunction::Unbounded((1..=DOUBLING_K + 1).collect()))
        .map_err(|e| e.to_string())?;
    let r = compile(&spec).map_err(|e| e.to_string())?;
    let top = 1u64 << (DOUBLING_K + 1);
    for n in 1..top {
        if r.word.eval_u64(n) != Some(2 * n) {
            return Err(format!("n = {n}: {:?}", r.word.eval_u64(n)));
        }
    }
    Ok(format!("{} generators, 2n for all n < {top}", r.word.len()))
}

fn squaring() -> Outcome {
    let primes = primes_up_to(7);
    let mut spec = DpSpec::identity();
    for &p in &primes {
        spec.insert(p, DpFunction::Unbounded((0..=4).map(|v| 2 * v).collect()))
            .map_err(|e| e.to_string())?;
    }
    let r = compile(&spec).map_err(|e| e.to_string())?;
    let ns = smooth_numbers(&primes, 4, SQUARING_BOUND);
    for &n in &ns {
        if !r.in_agreement(n) || r.word.eval_u64(n) != Some(n * n) {
            return Err(format!("n = {n}: {:?}", r.word.eval_u64(n)));
        }
    }
    Ok(format!(
        "n^2 on all {} in-range n <= {SQUARING_BOUND}",
        ns.len()
    ))
}

fn constant_two() -> Outcome {
    let primes = primes_up_to(CONSTANT_PK);
    let mut spec = DpSpec::identity();
    for &p in &primes {
        let d = if p == 2 { vec![1] } else { vec![0] };
        spec.insert(p, DpFunction::Bounded(d))
            .map_err(|e| e.to_string())?;
    }
    let r = compile(&spec).map_err(|e| e.to_string())?;
    let mut expected = vec![g(2, 0), h(2, 1)];
    expected.extend(primes[1..].iter().map(|&p| h(p, 0)));
    if r.word != Word::new(expected) {
        return Err(format!("unexpected word {}", r.word));
    }
    for n in 1..CONSTANT_PK {
        if r.word.eval_u64(n) != Some(2) {
            return Err(format!("n = {n}: {:?}", r.word.eval_u64(n)));
        }
    }
    Ok(format!(
        "{} -> 2 for n < {CONSTANT_PK}",
        r.word.to_product_notation()
    ))
}

fn normal_form_preservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for seed in 0..NORMAL_FORM_WORDS {
        let len = rng.gen_range(0..=20);
        let w = random_word(seed, len, 7, 5).map_err(|e| e.to_string())?;
        let nf = normal_form(&w);
        if !is_normal_shape(&nf) {
            return Err(format!("{w} -> {nf} is not in normal shape"));
        }
        let eq = equal_upto(&w, &nf, NORMAL_FORM_BOUND);
        if !eq.is_equal() {
            return Err(format!("{w} -> {nf}: {eq:?}"));
        }
    }
    Ok(format!(
        "{NORMAL_FORM_WORDS} words, n <= {NORMAL_FORM_BOUND}, zero mismatches"
    ))
}

fn zeta_round_trip() -> Outcome {
    let shift = FixSource::Geometric(Natural::from(2u32));
    let f = zeta_from_fix(&shift, ZETA_ORDER).map_err(|e| e.to_string())?;
    let expected =
        RationalSeries::from_integers((0..=ZETA_ORDER as u32).map(|n| BigInt::from(2).pow(n)))
            .map_err(|e| e.to_string())?;
    if f != expected {
        return Err(format!("coefficients {f}"));
    }
    let back = fix_from_zeta(&f).map_err(|e| e.to_string())?;
    if back != shift.prefix(ZETA_ORDER).map_err(|e| e.to_string())? {
        return Err("fix_from_zeta does not invert".into());
    }
    let doubled = f.scale(&BigRational::from_integer(BigInt::from(2)));
    match fix_from_zeta(&doubled) {
        Err(Error::NotZeta(ZetaFailure::ConstantTermNotOne)) => {}
        other => return Err(format!("2/(1-2z) gave {other:?}")),
    }
    Ok("1/(1-2z) to order 16, inverse exact, 2/(1-2z) rejected".into())
}

fn euler_product_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..EULER_CASES {
        let a = random_realizable(&mut rng, EULER_LEN);
        let o = orbit_counts(&a).map_err(|e| e.to_string())?;
        if zeta_from_sequence(&a) != euler_product(&o, EULER_LEN) {
            return Err(format!("case {i}: {:?}", a.entries()));
        }
    }
    Ok(format!("{EULER_CASES} sequences, N = {EULER_LEN}, exact"))
}

fn preservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..PRESERVATION_CASES {
        let a = random_realizable(&mut rng, EULER_LEN);
        let src = FixSource::Orbits(orbit_counts(&a).map_err(|e| e.to_string())?);
        let r = compile(&random_spec(&mut rng, 7, 5, 5)).map_err(|e| e.to_string())?;
        let b = time_change_fix(&r.word, &src, PRESERVATION_LEN).map_err(|e| e.to_string())?;
        let v = check_realizable(&b);
        if !v.is_pass() {
            return Err(format!("case {i}, word {}: {v}", r.word));
        }
    }
    Ok(format!(
        "{PRESERVATION_CASES} pairs, N = {PRESERVATION_LEN}, zero failures"
    ))
}

fn final_example() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for p in [2, 3] {
        let r = gp_shift_report(p, REPORT_ORDER).map_err(|e| e.to_string())?;
        ok &= r.realizability.is_pass();
        let head: Vec<String> = (0..=6).map(|n| r.direct.coeff(n).to_string()).collect();
        lines.push(format!(
            "      p = {p}: direct realizability {}, coefficients {} ...",
            r.realizability,
            head.join(", ")
        ));
        for f in &r.forms {
            let head: Vec<String> = (0..=6).map(|n| f.series.coeff(n).to_string()).collect();
            let status = match f.first_mismatch {
                None => format!("matches through order {REPORT_ORDER}"),
                Some(n) => format!("first differs at z^{n}"),
            };
            lines.push(format!(
                "      {:<16} {}: {status}; {} ...",
                f.name,
                f.formula,
                head.join(", ")
            ));
        }
    }
    let body = lines.join("\n");
    if ok {
        Ok(format!("direct side realizable for p = 2, 3\n{body}"))
    } else {
        Err(format!("direct side not realizable\n{body}"))
    }
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("n^n counterexample", nn_counterexample),
        ("generator membership", generator_membership),
        ("preimage formulas", preimage_formulas),
        ("commutation relations", commutation),
        ("doubling word", doubling),
        ("squaring word", squaring),
        ("constant-2 word", constant_two),
        ("normal-form preservation", normal_form_preservation),
        ("zeta round trip", zeta_round_trip),
        ("Euler product oracle", euler_product_oracle),
        ("end-to-end preservation", preservation),
        ("g_p on the 2-shift report", final_example),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
