mod common;

use common::{random_realizable, random_spec, smooth_numbers};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zeta_timechange::arith::primes_up_to;
use zeta_timechange::characterization::{
    apply_spec, check_divisibility_properties, membership_test, spec_from_word, validate_spec,
};
use zeta_timechange::compiler::{compile, verify_compile, CompileResult, VerifyOutcome};
use zeta_timechange::monoid::{normal_form, random_word};
use zeta_timechange::realizable::{check_realizable, orbit_counts};
use zeta_timechange::series::{time_change_fix, FixSource};
use zeta_timechange::{Natural, TimeChange};

#[test]
fn generated_specs_are_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..500 {
        let s = random_spec(&mut rng, 7, 5, 5);
        assert!(validate_spec(&s).is_empty(), "{s:?}");
    }
}

#[test]
fn compile_is_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..500 {
        let s = random_spec(&mut rng, 7, 5, 5);
        let r = compile(&s).unwrap();
        assert_eq!(
            verify_compile(&r, &s, 5000).unwrap(),
            VerifyOutcome::Ok,
            "{s:?}"
        );
        for g in r.word.gens() {
            assert!(s.get(g.prime()).is_some());
        }
        let unbounded: Vec<u64> = s
            .iter()
            .filter(|(_, d)| !d.is_bounded())
            .map(|(p, _)| p)
            .collect();
        assert_eq!(r.agreement.keys().copied().collect::<Vec<_>>(), unbounded);
    }
}

#[test]
fn normal_form_keeps_compiled_words_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let s = random_spec(&mut rng, 7, 5, 5);
        let r = compile(&s).unwrap();
        let n = CompileResult {
            word: normal_form(&r.word),
            agreement: r.agreement.clone(),
        };
        assert!(verify_compile(&n, &s, 3000).unwrap().is_ok(), "{s:?}");
    }
}

#[test]
fn compiled_words_preserve_realizability() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let a = random_realizable(&mut rng, 32);
        let src = FixSource::Orbits(orbit_counts(&a).unwrap());
        let r = compile(&random_spec(&mut rng, 7, 5, 5)).unwrap();
        let b = time_change_fix(&r.word, &src, 64).unwrap();
        assert!(check_realizable(&b).is_pass(), "{}", r.word);
    }
}

#[test]
fn valid_specs_pass_the_refutation_tests() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let s = random_spec(&mut rng, 7, 5, 5);
        // Tables are short; the compiled word is defined everywhere and
        // matches the spec wherever the spec is.
        let r = compile(&s).unwrap();
        let f = |n: &Natural| r.word.apply(n).unwrap();
        assert!(
            check_divisibility_properties(&f, 200).unwrap().all_hold(),
            "{s:?}"
        );
        assert!(!membership_test(&f, 24, 200).unwrap().refuted(), "{s:?}");
    }
}

#[test]
fn spec_from_word_agrees_with_evaluation() {
    let primes = primes_up_to(7);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for seed in 0..150 {
        let len = rng.gen_range(0..=12);
        let w = random_word(seed, len, 7, 4).unwrap();
        let s = spec_from_word(&w, 7, 8).unwrap();
        for (_, d) in s.iter() {
            assert!(d.values().windows(2).all(|x| x[0] <= x[1]), "{w}");
        }
        for n in 1..=10_000u64 {
            let nn = Natural::from(n);
            let in_range = primes
                .iter()
                .all(|&p| match s.get(p).and_then(|d| d.table_bound()) {
                    Some(b) => n % p.pow(b + 1) != 0,
                    None => true,
                });
            if in_range {
                assert_eq!(
                    apply_spec(&s, &nn).unwrap(),
                    w.eval(&nn).unwrap(),
                    "{w} at {n}"
                );
            }
        }
    }
}

#[test]
fn squaring_holds_on_the_smooth_box() {
    let primes = [2, 3, 5, 7];
    let mut spec = zeta_timechange::DpSpec::identity();
    for p in primes {
        spec.insert(
            p,
            zeta_timechange::DpFunction::Unbounded((0..=4).map(|v| 2 * v).collect()),
        )
        .unwrap();
    }
    let r = compile(&spec).unwrap();
    let ns = smooth_numbers(&primes, 4, 10_000);
    assert!(ns.contains(&(16 * 81)));
    for n in ns {
        assert_eq!(r.word.eval_u64(n), Some(n * n), "n = {n}");
    }
}
