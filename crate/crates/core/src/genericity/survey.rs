//! Fractions of cyclically reduced words with `π = r`, `Crit = {F_r}`,
//! primitive, or proper power, by length.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{check_condition, CheckMode, ParamSet, Verdict};
use crate::error::{Error, Result};
use crate::pirank::{primitivity_rank_with, SearchOptions};
use crate::words::{class_key, class_size, enumerate_words, sample_word_with, Alphabet, Word};

const Z95: f64 = 1.959963984540054;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sampling {
    Exhaustive,
    Samples(u64),
}

#[derive(Clone, Debug)]
pub struct SurveyOptions {
    pub rank: usize,
    pub lengths: Vec<usize>,
    pub sampling: Sampling,
    pub params: Option<ParamSet>,
    pub seed: u64,
    pub max_states: u64,
}

/// Wilson score interval at 95% for `count` successes out of `total`.
pub fn wilson_interval(count: u64, total: u64) -> (f64, f64) {
    if total == 0 {
        return (0.0, 1.0);
    }
    let n = total as f64;
    let p = count as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if count == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if count == total { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Fraction {
    pub count: u64,
    pub total: u64,
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
}

impl Fraction {
    fn exact(count: u64, total: u64) -> Fraction {
        let value = if total == 0 { 0.0 } else { count as f64 / total as f64 };
        Fraction {
            count,
            total,
            value,
            lo: value,
            hi: value,
        }
    }

    fn sampled(count: u64, total: u64) -> Fraction {
        let (lo, hi) = wilson_interval(count, total);
        Fraction {
            lo,
            hi,
            ..Fraction::exact(count, total)
        }
    }

    pub fn radius(&self) -> f64 {
        (self.hi - self.lo) / 2.0
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Counts {
    total: u64,
    pi_r: u64,
    generic: u64,
    crit_whole: u64,
    proper_power: u64,
    primitive: u64,
    in_p: u64,
    in_p_prime: u64,
    unknown: u64,
}

impl std::ops::Add for Counts {
    type Output = Counts;

    fn add(self, o: Counts) -> Counts {
        Counts {
            total: self.total + o.total,
            pi_r: self.pi_r + o.pi_r,
            generic: self.generic + o.generic,
            crit_whole: self.crit_whole + o.crit_whole,
            proper_power: self.proper_power + o.proper_power,
            primitive: self.primitive + o.primitive,
            in_p: self.in_p + o.in_p,
            in_p_prime: self.in_p_prime + o.in_p_prime,
            unknown: self.unknown + o.unknown,
        }
    }
}

fn classify(w: &Word, weight: u64, opts: &SurveyOptions, alphabet: Alphabet) -> Result<Counts> {
    let search = SearchOptions {
        max_states: opts.max_states,
        ..SearchOptions::default()
    };
    let rep = primitivity_rank_with(w, alphabet, search)?;
    let whole = rep.crit.len() == 1 && rep.crit[0].is_whole_group();
    let pi_r = rep.pi == Some(opts.rank);
    let mut c = Counts {
        total: weight,
        pi_r: weight * pi_r as u64,
        generic: weight * (pi_r && whole) as u64,
        crit_whole: weight * whole as u64,
        proper_power: weight * w.is_proper_power()?.is_some() as u64,
        primitive: weight * rep.pi.is_none() as u64,
        ..Counts::default()
    };
    if let Some(p) = &opts.params {
        let report = check_condition(w, p, CheckMode::WordOnly, opts.max_states)?;
        c.in_p = weight * (report.in_p == Verdict::Yes) as u64;
        c.in_p_prime = weight * (report.in_p_prime == Verdict::Yes) as u64;
        c.unknown = weight * (report.in_p == Verdict::Unknown) as u64;
    }
    Ok(c)
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyRow {
    pub n: usize,
    pub mode: Sampling,
    /// Rotation/inversion classes classified (exhaustive rows only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<u64>,
    pub words: u64,
    pub pi_r: Option<Fraction>,
    /// `π = r` and `Crit = {F_r}`.
    pub generic: Option<Fraction>,
    pub crit_whole: Option<Fraction>,
    pub proper_power: Option<Fraction>,
    pub primitive: Option<Fraction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_p: Option<Fraction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_p_prime: Option<Fraction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_p_unknown: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl SurveyRow {
    fn failed(n: usize, mode: Sampling, e: Error) -> SurveyRow {
        SurveyRow {
            n,
            mode,
            classes: None,
            words: 0,
            pi_r: None,
            generic: None,
            crit_whole: None,
            proper_power: None,
            primitive: None,
            in_p: None,
            in_p_prime: None,
            in_p_unknown: None,
            error: Some(e.to_string()),
        }
    }
}

/// Least-squares fit of `1 - f_n ≈ C·σⁿ` on a log scale.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecayFit {
    pub c: f64,
    pub sigma: f64,
    pub r_squared: f64,
    pub points: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyTable {
    pub rank: usize,
    pub seed: u64,
    pub rows: Vec<SurveyRow>,
    /// Fit of the complement of the `generic` fraction.
    pub decay: Option<DecayFit>,
}

fn row(n: usize, opts: &SurveyOptions, alphabet: Alphabet) -> SurveyRow {
    let (counts, classes) = match opts.sampling {
        Sampling::Exhaustive => {
            let reps: Vec<Word> = enumerate_words(alphabet, n, true)
                .filter(|w| class_key(w).rep() == w)
                .collect();
            let counts = reps
                .par_iter()
                .map(|w| classify(w, class_size(w) as u64, opts, alphabet))
                .collect::<Result<Vec<_>>>();
            (counts, Some(reps.len() as u64))
        }
        Sampling::Samples(k) => {
            let counts = (0..k)
                .into_par_iter()
                .map(|i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                    rng.set_stream(((n as u64) << 40) | i);
                    let w = sample_word_with(alphabet, n, true, &mut rng)?;
                    classify(&w, 1, opts, alphabet)
                })
                .collect::<Result<Vec<_>>>();
            (counts, None)
        }
    };
    let c = match counts {
        Ok(v) => v.into_iter().fold(Counts::default(), |a, b| a + b),
        Err(e) => return SurveyRow::failed(n, opts.sampling, e),
    };
    let frac = |k: u64| match opts.sampling {
        Sampling::Exhaustive => Fraction::exact(k, c.total),
        Sampling::Samples(_) => Fraction::sampled(k, c.total),
    };
    SurveyRow {
        n,
        mode: opts.sampling,
        classes,
        words: c.total,
        pi_r: Some(frac(c.pi_r)),
        generic: Some(frac(c.generic)),
        crit_whole: Some(frac(c.crit_whole)),
        proper_power: Some(frac(c.proper_power)),
        primitive: Some(frac(c.primitive)),
        in_p: opts.params.map(|_| frac(c.in_p)),
        in_p_prime: opts.params.map(|_| frac(c.in_p_prime)),
        in_p_unknown: opts.params.map(|_| c.unknown),
        error: None,
    }
}

fn fit(rows: &[SurveyRow]) -> Option<DecayFit> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| r.generic.map(|f| (r.n as f64, 1.0 - f.value)))
        .filter(|&(_, y)| y > 0.0)
        .map(|(x, y)| (x, y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let ss_res: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    Some(DecayFit {
        c: intercept.exp(),
        sigma: slope.exp(),
        r_squared: if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot },
        points: pts.len(),
    })
}

/// Classifies words of each requested length. Rows that fail (for example
/// on a search bound) carry an error and do not stop the others.
pub fn survey(opts: &SurveyOptions) -> Result<SurveyTable> {
    let alphabet = Alphabet::new(opts.rank)?;
    if let Some(p) = &opts.params {
        if p.r != opts.rank {
            return crate::error::input("parameter rank differs from the survey rank");
        }
    }
    if opts.lengths.contains(&0) {
        return crate::error::input("lengths must be positive");
    }
    let rows: Vec<SurveyRow> = opts.lengths.iter().map(|&n| row(n, opts, alphabet)).collect();
    Ok(SurveyTable {
        rank: opts.rank,
        seed: opts.seed,
        decay: fit(&rows),
        rows,
    })
}
