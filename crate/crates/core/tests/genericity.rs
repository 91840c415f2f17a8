mod common;

use num_rational::Ratio;
use proptest::prelude::*;

use common::{f2, naive_max_piece, small_folded_graphs, w, NaiveGraph};
use primrank::genericity::*;
use primrank::words::{enumerate_words, CyclicWord, Letter, Word};

/// Readability by scanning explicit graphs with at most three edges.
fn oracle(graphs: &[NaiveGraph], x: &Word, budget: usize, max_rank: usize, low_degree: bool) -> bool {
    graphs.iter().any(|g| {
        g.volume() <= budget
            && g.rank() <= max_rank
            && (!low_degree || (0..g.n).any(|v| g.degree(v) < 4))
            && g.reads(x)
    })
}

#[test]
fn readability_matches_small_graphs() {
    let graphs = small_folded_graphs(2, 3);
    for n in 1..=6 {
        for x in enumerate_words(f2(), n, false) {
            for budget in 1..=3.min(n) {
                let mu = Ratio::new(budget as i64, n as i64);
                let got = is_mu_readable(&x, f2(), mu, 1_000_000).unwrap();
                assert_eq!(got.is_readable(), oracle(&graphs, &x, budget, 1, false), "{x} mu={mu}");
                for l in 1..=2 {
                    let got = is_mu_l_readable(&x, f2(), mu, l, 1_000_000).unwrap();
                    assert_eq!(got.is_readable(), oracle(&graphs, &x, budget, l, true), "{x} mu={mu} L={l}");
                }
            }
        }
    }
}

#[test]
fn small_graph_census() {
    // A point, an a-loop, a b-loop, an a-edge and a b-edge.
    assert_eq!(small_folded_graphs(2, 1).len(), 5);
    assert!(small_folded_graphs(2, 3).iter().all(|g| g.is_folded() && g.is_connected()));
}

#[test]
fn witnesses_are_audited() {
    let x = w("abababab");
    let r = is_mu_readable(&x, f2(), Ratio::new(1, 4), 1000).unwrap();
    let g = r.witness().expect("a two-edge circle reads (ab)^4");
    assert!(audit_mu_witness(g, &x, Ratio::new(1, 4)));
    assert!(!audit_mu_witness(g, &x, Ratio::new(1, 8)));
    assert!(!is_mu_readable(&x, f2(), Ratio::new(1, 8), 1000).unwrap().is_readable());
}

#[test]
fn search_bound_gives_unknown() {
    let x = w("abAAbabbABaBBabaabAB");
    assert_eq!(is_mu_readable(&x, f2(), Ratio::new(1, 2), 1_000_000).unwrap(), Readability::NotReadable);
    assert!(is_mu_readable(&x, f2(), Ratio::new(9, 10), 1_000_000).unwrap().is_readable());
    assert!(is_mu_readable(&x, f2(), Ratio::new(9, 10), 0).unwrap().is_unknown());
}

#[test]
fn parameter_examples() {
    let ok = ParamSet { lambda: Rational::new(1, 40), mu: Rational::new(9, 10), l: 2, r: 2 };
    assert!(validate_params(&ok).is_empty());
    let v = validate_params(&ParamSet { lambda: Rational::new(1, 6), ..ok });
    assert!(v.iter().any(|x| x.inequality == "lambda <= mu/(15L+3mu)"));
    assert!(v.iter().any(|x| x.inequality == "lambda < mu/(3r)"));
    let v = validate_params(&ParamSet { l: 2, r: 3, lambda: Rational::new(1, 100), ..ok });
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].inequality, "mu/(15L+3mu) <= mu/(15r+3mu)");
    let v = validate_params(&ParamSet { l: 1, r: 1, ..ok });
    assert!(v.iter().any(|x| x.inequality == "L >= 2"));
    let v = validate_params(&ParamSet { mu: Rational::new(0, 1), ..ok });
    assert!(v.iter().any(|x| x.inequality == "0 < mu <= 1"));
}

#[test]
fn full_mode_covers_word_only() {
    let p = ParamSet { lambda: Rational::new(1, 40), mu: Rational::new(9, 10), l: 2, r: 2 };
    let x = w("aabAbbAB");
    let one = check_condition(&x, &p, CheckMode::WordOnly, 100_000).unwrap();
    let full = check_condition(&x, &p, CheckMode::Full, 100_000).unwrap();
    assert_eq!(one.subwords.len(), 1);
    assert!(full.subwords.iter().any(|s| s.subword == x));
    assert!(full.subwords.iter().all(|s| 2 * s.subword.len() >= x.len()));
    assert!(check_condition(&w("abA"), &p, CheckMode::WordOnly, 10).is_err());
}

fn word(len: std::ops::Range<usize>) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..4usize).prop_map(|s| Letter::new(s / 2, s % 2 == 1)), len).prop_map(Word::reduce)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn pieces_match_naive(x in word(1..31)) {
        let core = x.strip().1;
        prop_assume!(!core.is_empty());
        let c = CyclicWord::new(&core);
        prop_assert_eq!(max_piece_length(&c), naive_max_piece(&c));
    }

    #[test]
    fn readability_is_monotone(x in word(2..12), a in 1i64..10, b in 1i64..10, l in 1usize..3) {
        prop_assume!(!x.is_empty());
        let (lo, hi) = (Ratio::new(a.min(b), 10), Ratio::new(a.max(b), 10));
        if is_mu_readable(&x, f2(), lo, 100_000).unwrap().is_readable() {
            prop_assert!(is_mu_readable(&x, f2(), hi, 100_000).unwrap().is_readable());
        }
        if is_mu_l_readable(&x, f2(), lo, l, 100_000).unwrap().is_readable() {
            prop_assert!(is_mu_l_readable(&x, f2(), hi, l, 100_000).unwrap().is_readable());
            prop_assert!(is_mu_l_readable(&x, f2(), lo, l + 1, 100_000).unwrap().is_readable());
        }
    }

    #[test]
    fn rational_display_round_trip(p in -500i64..500, q in 1i64..500) {
        let r = Rational::new(p, q);
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
    }
}

#[test]
fn wilson_interval_contains_estimate() {
    for (k, n) in [(0, 10), (3, 10), (10, 10), (150, 300)] {
        let (lo, hi) = wilson_interval(k, n);
        let p = k as f64 / n as f64;
        assert!(lo <= p && p <= hi && (0.0..=1.0).contains(&lo) && hi <= 1.0);
    }
    let (lo, hi) = wilson_interval(150, 300);
    assert!((lo - 0.4436).abs() < 1e-3 && (hi - 0.5564).abs() < 1e-3);
}
