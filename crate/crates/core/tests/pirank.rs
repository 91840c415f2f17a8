mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{f2, partition_oracle, partition_quotients, pointed_key, w, NaiveGraph};
use primrank::agraphs::{AGraph, CanonicalForm, Subgroup};
use primrank::pirank::*;
use primrank::whitehead::is_primitive;
use primrank::words::{class_key, enumerate_words, Alphabet, Letter, LetterMap, Word};

fn crit_forms(r: &PiRankReport) -> BTreeSet<CanonicalForm> {
    r.crit.iter().map(|s| s.canonical().clone()).collect()
}

fn merge_closure() -> SearchOptions {
    SearchOptions { engine: Engine::MergeClosure, ..Default::default() }
}

#[test]
fn closure_of_commutator_circle_matches_partitions() {
    let x = w("abAB");
    let g = AGraph::circle(&x, f2()).unwrap();
    let ours: BTreeSet<Vec<(usize, usize, usize)>> = quotient_closure(&g, DEFAULT_MAX_STATES)
        .unwrap()
        .iter()
        .map(|q| {
            let n = NaiveGraph {
                n: q.vertex_count(),
                base: q.base(),
                edges: q.edges().iter().map(|e| (e.from, e.to, e.generator)).collect(),
            };
            pointed_key(&n, 2)
        })
        .collect();
    let oracle: BTreeSet<_> = partition_quotients(&x, 2).iter().map(|q| pointed_key(q, 2)).collect();
    assert_eq!(ours, oracle);
}

#[test]
fn small_closures() {
    assert_eq!(quotient_closure(&AGraph::rose(f2()), 10).unwrap().len(), 1);
    assert_eq!(quotient_closure(&AGraph::circle(&w("aa"), f2()).unwrap(), 10).unwrap().len(), 2);
    let err = quotient_closure(&AGraph::circle(&w("abAB"), f2()).unwrap(), 2).unwrap_err();
    assert!(err.to_string().contains("quotient states"), "{err}");
}

#[test]
fn basic_values() {
    let r = primitivity_rank(&w("a"), f2()).unwrap();
    assert_eq!((r.pi, r.crit.len()), (None, 0));
    let r = primitivity_rank(&w("aa"), f2()).unwrap();
    assert_eq!(r.pi, Some(1));
    assert_eq!(r.crit, vec![primrank::agraphs::stallings_from_generators(&[w("a")], f2()).unwrap()]);
    let r = primitivity_rank(&w("abAB"), f2()).unwrap();
    assert_eq!(r.pi, Some(2));
    assert_eq!(r.crit, vec![Subgroup::whole(f2())]);
    assert!(primitivity_rank(&Word::identity(), f2()).is_err());
}

#[test]
fn engines_and_oracle_agree_up_to_length_7() {
    for n in 1..=7 {
        for x in enumerate_words(f2(), n, true).filter(|x| class_key(x).rep() == x) {
            let t = primitivity_rank(&x, f2()).unwrap();
            let m = primitivity_rank_with(&x, f2(), merge_closure()).unwrap();
            let (pi, crit) = partition_oracle(&x, f2());
            assert_eq!((t.pi, crit_forms(&t)), (pi, crit.clone()), "{x}");
            assert_eq!((m.pi, crit_forms(&m)), (pi, crit), "{x}");
        }
    }
}

#[test]
fn rank_three_trichotomy() {
    let f3 = Alphabet::new(3).unwrap();
    for n in 1..=5 {
        for x in enumerate_words(f3, n, true).filter(|x| class_key(x).rep() == x) {
            let r = primitivity_rank(&x, f3).unwrap();
            let prim = is_primitive(&x, 3).unwrap();
            let power = x.is_proper_power().unwrap().is_some();
            assert_eq!(r.pi.is_none(), prim, "{x}");
            assert_eq!(r.pi == Some(1), power, "{x}");
            assert_eq!(r.pi.is_none(), r.crit.is_empty());
            for h in &r.crit {
                assert_eq!(Some(h.rank()), r.pi);
                assert!(h.contains(&x));
            }
        }
    }
}

#[test]
fn search_limit_is_reported() {
    let opts = SearchOptions { max_states: 3, ..Default::default() };
    let err = primitivity_rank_with(&w("abABaabb"), f2(), opts).unwrap_err();
    assert!(matches!(err, primrank::Error::ResourceLimit { .. }), "{err}");
}

fn word(len: std::ops::Range<usize>) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..4usize).prop_map(|s| Letter::new(s / 2, s % 2 == 1)), len)
        .prop_map(Word::reduce)
        .prop_filter("nontrivial", |x| !x.is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn rotation_and_inversion_invariance(x in word(1..12), k in 0usize..12) {
        let core = x.strip().1;
        let r = primitivity_rank(&core, f2()).unwrap();
        let rot = primitivity_rank(&core.rotate(k), f2()).unwrap();
        let inv = primitivity_rank(&core.inverse(), f2()).unwrap();
        prop_assert_eq!(r.pi, rot.pi);
        prop_assert_eq!(r.pi, inv.pi);
        prop_assert_eq!(r.crit.len(), rot.crit.len());
        prop_assert_eq!(r.crit.len(), inv.crit.len());
        // Crit of an inverse is the same set of subgroups.
        prop_assert_eq!(crit_forms(&r), crit_forms(&inv));
    }

    #[test]
    fn conjugated_input(x in word(1..10), c in word(1..4)) {
        let core = x.strip().1;
        let conj = core.conjugate_by(&c);
        let r = primitivity_rank(&core, f2()).unwrap();
        let s = primitivity_rank(&conj, f2()).unwrap();
        prop_assert_eq!(r.pi, s.pi);
        let expected: BTreeSet<CanonicalForm> = r.crit.iter().map(|h| h.conjugate(&c).canonical().clone()).collect();
        prop_assert_eq!(crit_forms(&s), expected);
        for h in &s.crit {
            prop_assert!(h.contains(&conj));
        }
    }

    #[test]
    fn equivariance(x in word(1..11), seed in any::<u64>()) {
        let m = LetterMap::random(f2(), &mut ChaCha8Rng::seed_from_u64(seed));
        let r = primitivity_rank(&x, f2()).unwrap();
        let s = primitivity_rank(&m.apply(&x), f2()).unwrap();
        prop_assert_eq!(r.pi, s.pi);
        let mapped: BTreeSet<CanonicalForm> = r.crit.iter().map(|h| h.image(&m).canonical().clone()).collect();
        prop_assert_eq!(crit_forms(&s), mapped);
    }
}
