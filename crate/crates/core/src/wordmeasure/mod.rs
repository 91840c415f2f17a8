//! Word measures on symmetric groups: the distribution of
//! `w(σ_1, ..., σ_r)` for independent uniform `σ_i ∈ S_N`, through its
//! expected number of fixed points.
//!
//! Words are evaluated as compositions of functions, `σ_{x_1} ∘ ... ∘
//! σ_{x_n}`, so evaluation is a homomorphism. The opposite convention
//! evaluates the reversed word, which has the same fixed-point distribution.

mod permutation;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use permutation::Permutation;

use crate::error::{input, Error, Result};
use crate::genericity::Rational;
use crate::pirank::{primitivity_rank_with, SearchOptions};
use crate::words::{Alphabet, Word};

/// Samples per independently seeded block.
pub const BLOCK: u64 = 1 << 16;

/// Default ceiling on `(N!)^k` for exact enumeration.
pub const DEFAULT_MAX_TUPLES: u64 = 100_000_000;

pub fn evaluate_word(w: &Word, tuple: &[Permutation]) -> Result<Permutation> {
    let Some(first) = tuple.first() else {
        return input("empty permutation tuple");
    };
    let n = first.degree();
    if tuple.iter().any(|p| p.degree() != n) {
        return input("permutations of different degrees");
    }
    if w.max_generator().is_some_and(|g| g >= tuple.len()) {
        return input(format!("{w} uses more generators than the tuple provides"));
    }
    let inverses: Vec<Permutation> = tuple.iter().map(Permutation::inverse).collect();
    Ok(w.letters().iter().fold(Permutation::identity(n), |acc, l| {
        let p = if l.is_inverse() { &inverses[l.generator()] } else { &tuple[l.generator()] };
        acc.compose(p)
    }))
}

/// Evaluates fixed points of a word given per-letter-slot image tables.
struct Evaluator {
    /// `(table index, inverse)` per letter, rightmost first.
    program: Vec<(usize, bool)>,
    /// Generators occurring in the word, ascending.
    generators: Vec<usize>,
}

impl Evaluator {
    fn new(w: &Word) -> Evaluator {
        let generators = w.generators_used();
        let program = w
            .letters()
            .iter()
            .rev()
            .map(|l| (generators.binary_search(&l.generator()).unwrap(), l.is_inverse()))
            .collect();
        Evaluator { program, generators }
    }

    fn fixed_points(&self, perms: &[Vec<u32>], inverses: &[Vec<u32>]) -> u64 {
        let n = perms.first().map_or(0, Vec::len);
        (0..n)
            .filter(|&i| {
                let mut p = i as u32;
                for &(k, inv) in &self.program {
                    p = if inv { inverses[k][p as usize] } else { perms[k][p as usize] };
                }
                p == i as u32
            })
            .count() as u64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureMode {
    MonteCarlo,
    Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WordMeasureEstimate {
    pub word: Word,
    #[serde(rename = "N")]
    pub degree: usize,
    pub samples: u64,
    pub mean_fix: f64,
    pub stderr: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Rational>,
    pub mode: MeasureMode,
}

/// Monte-Carlo estimate of `E[#fix w(σ_1, ..., σ_r)]` on `S_N`. Sampling runs
/// in blocks of [`BLOCK`] samples, block `b` drawing from the ChaCha stream
/// `b` of `seed`; sums are exact integers, so the result does not depend on
/// how blocks are scheduled.
pub fn mc_expected_fix(w: &Word, degree: usize, samples: u64, seed: u64) -> Result<WordMeasureEstimate> {
    if degree == 0 || degree > u32::MAX as usize {
        return input("degree must be positive");
    }
    if samples == 0 {
        return input("at least one sample is required");
    }
    let eval = Evaluator::new(w);
    let k = eval.generators.len();
    let blocks = samples.div_ceil(BLOCK);
    let (sum, sum_sq) = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let mut perms: Vec<Vec<u32>> = vec![(0..degree as u32).collect(); k];
            let mut inverses = vec![vec![0u32; degree]; k];
            let count = BLOCK.min(samples - b * BLOCK);
            let (mut s, mut s2) = (0u64, 0u128);
            for _ in 0..count {
                for (p, inv) in perms.iter_mut().zip(inverses.iter_mut()) {
                    p.shuffle(&mut rng);
                    for (i, &x) in p.iter().enumerate() {
                        inv[x as usize] = i as u32;
                    }
                }
                let f = eval.fixed_points(&perms, &inverses);
                s += f;
                s2 += (f * f) as u128;
            }
            (s, s2)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let n = samples as f64;
    let mean = sum as f64 / n;
    let stderr = if samples > 1 {
        // Exact integer numerator for the sample variance.
        let num = (samples as u128 * sum_sq).saturating_sub(sum as u128 * sum as u128) as f64;
        (num / (n * (n - 1.0)) / n).sqrt()
    } else {
        0.0
    };
    Ok(WordMeasureEstimate {
        word: w.clone(),
        degree,
        samples,
        mean_fix: mean,
        stderr,
        exact: None,
        mode: MeasureMode::MonteCarlo,
    })
}

/// Number of tuples `(N!)^k` exact enumeration would visit, if it fits.
pub fn exact_tuple_count(w: &Word, degree: usize) -> Option<u64> {
    let fact = (1..=degree as u64).try_fold(1u64, |a, b| a.checked_mul(b))?;
    (0..w.generators_used().len()).try_fold(1u64, |a, _| a.checked_mul(fact))
}

/// `E[#fix]` by enumerating all tuples of the generators occurring in `w`.
pub fn exact_expected_fix(w: &Word, degree: usize, max_tuples: u64) -> Result<Ratio<i64>> {
    if degree == 0 {
        return input("degree must be positive");
    }
    let total = exact_tuple_count(w, degree);
    let Some(total) = total.filter(|&t| t <= max_tuples) else {
        return Err(Error::ResourceLimit {
            what: format!(
                "exact enumeration needs {} tuples",
                total.map_or_else(|| "more than 2^64".to_string(), |t| t.to_string())
            ),
            bound: max_tuples,
            explored: 0,
        });
    };
    let eval = Evaluator::new(w);
    let k = eval.generators.len();
    let all: Vec<Vec<u32>> = permutation::all_permutations(degree)
        .into_iter()
        .map(|p| p.images().to_vec())
        .collect();
    let all_inv: Vec<Vec<u32>> = all
        .iter()
        .map(|p| Permutation::new(p.clone()).unwrap().inverse().images().to_vec())
        .collect();
    let mut idx = vec![0usize; k];
    let mut sum = 0u64;
    loop {
        let perms: Vec<Vec<u32>> = idx.iter().map(|&i| all[i].clone()).collect();
        let invs: Vec<Vec<u32>> = idx.iter().map(|&i| all_inv[i].clone()).collect();
        sum += if k == 0 { degree as u64 } else { eval.fixed_points(&perms, &invs) };
        let Some(pos) = (0..k).rev().find(|&j| idx[j] + 1 < all.len()) else {
            break;
        };
        idx[pos] += 1;
        idx[pos + 1..].fill(0);
    }
    Ok(Ratio::new(sum as i64, total as i64))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareRow {
    #[serde(flatten)]
    pub estimate: WordMeasureEstimate,
    pub prediction: f64,
    pub residual: f64,
    /// `N^{π-1}·(E - 1)`, which tends to `|Crit(w)|`.
    pub normalized_stat: Option<f64>,
    pub normalized_stderr: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareReport {
    pub word: Word,
    /// `None` stands for `π = ∞`.
    #[serde(serialize_with = "crate::wordmeasure::serialize_pi")]
    pub pi: Option<usize>,
    pub crit_size: usize,
    pub rows: Vec<CompareRow>,
}

pub(crate) fn serialize_pi<S: serde::Serializer>(pi: &Option<usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match pi {
        Some(p) => s.serialize_u64(*p as u64),
        None => s.serialize_str("inf"),
    }
}

/// Prediction `1 + |Crit|/N^{π-1}`, or `1` when `π = ∞`.
pub fn prediction(pi: Option<usize>, crit_size: usize, degree: usize) -> f64 {
    match pi {
        Some(p) => 1.0 + crit_size as f64 / (degree as f64).powi(p as i32 - 1),
        None => 1.0,
    }
}

/// Estimates `E[#fix]` at each degree, using the exact value whenever
/// `(N!)^k ≤ max_tuples`, and sets it against the prediction from `π(w)`
/// and `|Crit(w)|`.
pub fn compare(
    w: &Word,
    alphabet: Alphabet,
    degrees: &[usize],
    samples: u64,
    seed: u64,
    max_tuples: u64,
    search: SearchOptions,
) -> Result<CompareReport> {
    let rep = primitivity_rank_with(w, alphabet, search)?;
    let mut rows = Vec::with_capacity(degrees.len());
    for &n in degrees {
        let mut est = mc_expected_fix(w, n, samples, seed)?;
        if exact_tuple_count(w, n).is_some_and(|t| t <= max_tuples) {
            est.exact = Some(Rational(exact_expected_fix(w, n, max_tuples)?));
            est.mode = MeasureMode::Exact;
        }
        let e = est.exact.map_or(est.mean_fix, |r| *r.0.numer() as f64 / *r.0.denom() as f64);
        let pred = prediction(rep.pi, rep.crit.len(), n);
        let scale = rep.pi.map(|p| (n as f64).powi(p as i32 - 1));
        rows.push(CompareRow {
            prediction: pred,
            residual: e - pred,
            normalized_stat: scale.map(|s| s * (e - 1.0)),
            normalized_stderr: scale.map(|s| s * est.stderr),
            estimate: est,
        });
    }
    Ok(CompareReport {
        word: w.clone(),
        pi: rep.pi,
        crit_size: rep.crit.len(),
        rows,
    })
}
