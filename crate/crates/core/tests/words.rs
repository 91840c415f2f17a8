mod common;

use std::collections::HashMap;

use proptest::prelude::*;

use common::{f2, w};
use primrank::words::*;

fn letter_seq(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..2 * rank).prop_map(|s| Letter::new(s / 2, s % 2 == 1)), 0..max_len)
}

fn reduced_word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    letter_seq(rank, max_len).prop_map(Word::reduce)
}

#[test]
fn sphere_sizes() {
    for r in 2..=3 {
        let a = Alphabet::new(r).unwrap();
        for n in 1..=7u32 {
            let q = 2 * r as u64 - 1;
            let reduced = 2 * r as u64 * q.pow(n - 1);
            let cyclic = q.pow(n) + 1 + (r as u64 - 1) * if n % 2 == 0 { 2 } else { 0 };
            assert_eq!(enumerate_words(a, n as usize, false).count() as u64, reduced, "r={r} n={n}");
            assert_eq!(enumerate_words(a, n as usize, true).count() as u64, cyclic, "r={r} n={n}");
        }
    }
}

#[test]
fn class_sizes_partition_the_sphere() {
    for n in 1..=8 {
        let all: Vec<Word> = enumerate_words(f2(), n, true).collect();
        let weighted: usize = all.iter().filter(|x| class_key(x).rep() == *x).map(class_size).sum();
        assert_eq!(weighted, all.len(), "n={n}");
    }
}

#[test]
fn cyclic_sampler_is_uniform_on_short_words() {
    let mut counts: HashMap<Word, u32> = HashMap::new();
    let trials = 28_000;
    for seed in 0..trials {
        *counts.entry(sample_word(f2(), 3, true, seed).unwrap()).or_default() += 1;
    }
    assert_eq!(counts.len(), 28);
    for (x, c) in counts {
        // Expected 1000 per word; 6 standard deviations is about 190.
        assert!((810..=1190).contains(&c), "{x}: {c}");
    }
}

#[test]
fn sampler_respects_requests() {
    for seed in 0..200 {
        let x = sample_word(f2(), 9, false, seed).unwrap();
        assert_eq!(x.len(), 9);
        let y = sample_word(f2(), 9, true, seed).unwrap();
        assert!(y.is_cyclically_reduced() && y.len() == 9);
    }
    assert_eq!(sample_word(f2(), 5, true, 3).unwrap(), sample_word(f2(), 5, true, 3).unwrap());
}

#[test]
fn examples() {
    assert_eq!(w("aAb"), w("b"));
    assert_eq!(w("abBA"), Word::identity());
    let (c, rep) = w("baaB").cyclic_reduce();
    assert_eq!(c.rep(), &w("aa"));
    assert_eq!(rep, w("b"));
    assert!(Word::parse("abc", f2()).is_err());
    assert!("ab1".parse::<Word>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn reduction_is_idempotent(seq in letter_seq(3, 40)) {
        let x = Word::reduce(seq);
        prop_assert_eq!(Word::reduce(x.letters().iter().copied()), x.clone());
        prop_assert!(x.letters().windows(2).all(|p| p[0] != p[1].inverse()));
    }

    #[test]
    fn group_laws(x in reduced_word(3, 20), y in reduced_word(3, 20), z in reduced_word(3, 20)) {
        prop_assert_eq!(x.concat(&y).concat(&z), x.concat(&y.concat(&z)));
        prop_assert_eq!(x.concat(&x.inverse()), Word::identity());
        prop_assert_eq!(x.inverse().inverse(), x.clone());
        prop_assert_eq!(x.concat(&y).inverse(), y.inverse().concat(&x.inverse()));
    }

    #[test]
    fn cyclic_reduction_is_a_conjugation(x in reduced_word(2, 30)) {
        let (c, g) = x.cyclic_reduce();
        prop_assert!(c.rep().is_cyclically_reduced());
        prop_assert_eq!(c.rep().conjugate_by(&g), x.clone());
        let rotated = CyclicWord::new(&x.strip().1.rotate(x.len() / 3));
        prop_assert_eq!(rotated, c);
    }

    #[test]
    fn class_key_invariance(x in reduced_word(2, 16), k in 0usize..16) {
        let core = x.strip().1;
        prop_assume!(!core.is_empty());
        let key = class_key(&core);
        prop_assert_eq!(class_key(&core.rotate(k % core.len())), key.clone());
        prop_assert_eq!(class_key(&core.inverse()), key);
    }

    #[test]
    fn powers(x in reduced_word(2, 8), k in 2usize..5) {
        let core = x.strip().1;
        prop_assume!(!core.is_empty());
        let p = core.pow(k as i64);
        let (root, e) = p.is_proper_power().unwrap().unwrap();
        prop_assert_eq!(root.pow(e as i64), p);
        prop_assert!(e % k == 0);
    }

    #[test]
    fn letter_maps_are_automorphisms(x in reduced_word(3, 20), y in reduced_word(3, 20), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = LetterMap::random(Alphabet::new(3).unwrap(), &mut rng);
        prop_assert_eq!(m.apply(&x.concat(&y)), m.apply(&x).concat(&m.apply(&y)));
        prop_assert_eq!(m.apply(&x).len(), x.len());
    }
}
