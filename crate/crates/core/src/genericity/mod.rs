//! Small-cancellation and readability conditions on words, the classes `P`
//! and `P′` they define, and genericity surveys.

mod pieces;
mod readability;
mod survey;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

pub use pieces::max_piece_length;
pub use readability::{audit_mu_l_witness, audit_mu_witness, is_mu_l_readable, is_mu_readable, Readability};
pub use survey::{survey, wilson_interval, DecayFit, Fraction, Sampling, SurveyOptions, SurveyRow, SurveyTable};

use crate::error::{input, Error, Result};
use crate::words::{contains_all_two_letter_subwords, Alphabet, CyclicWord, Word};

/// An exact rational parameter, parsed strictly from `P/Q` or an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub Ratio<i64>);

impl Rational {
    pub fn new(p: i64, q: i64) -> Rational {
        Rational(Ratio::new(p, q))
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rational> {
        let bad = || Error::Input(format!("expected a rational P/Q, got {s:?}"));
        let int = |t: &str| -> Result<i64> {
            if t.is_empty() || !t.trim_start_matches('-').bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (int(p)?, int(q)?),
            None => (int(s)?, 1),
        };
        if q == 0 {
            return Err(bad());
        }
        Ok(Rational(Ratio::new(p, q)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ParamSet {
    pub lambda: Rational,
    pub mu: Rational,
    #[serde(rename = "L")]
    pub l: usize,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamViolation {
    pub inequality: &'static str,
    pub detail: String,
}

/// Every violated constraint on `(λ, μ, L, r)`, checked exactly:
/// `λ ≤ μ/(15L+3μ) ≤ μ/(15r+3μ) < 1/6` and `λ < μ/(3r)`, on top of the
/// ranges `0 < λ < 1`, `0 < μ ≤ 1`, `L ≥ 2`.
pub fn validate_params(p: &ParamSet) -> Vec<ParamViolation> {
    let (lambda, mu) = (p.lambda.0, p.mu.0);
    let int = |k: usize| Ratio::from_integer(k as i64);
    let zero = int(0);
    let one = int(1);
    let mut out = Vec::new();
    let mut fail = |inequality: &'static str, detail: String| out.push(ParamViolation { inequality, detail });
    if !(zero < lambda && lambda < one) {
        fail("0 < lambda < 1", format!("lambda = {}", p.lambda));
    }
    if !(zero < mu && mu <= one) {
        fail("0 < mu <= 1", format!("mu = {}", p.mu));
    }
    if p.l < 2 {
        fail("L >= 2", format!("L = {}", p.l));
    }
    if mu <= zero {
        return out;
    }
    let three = int(3);
    let bound_l = mu / (int(15) * int(p.l) + three * mu);
    let bound_r = mu / (int(15) * int(p.r) + three * mu);
    if lambda > bound_l {
        fail(
            "lambda <= mu/(15L+3mu)",
            format!("{} > {}", p.lambda, Rational(bound_l)),
        );
    }
    if bound_l > bound_r {
        fail(
            "mu/(15L+3mu) <= mu/(15r+3mu)",
            format!("L = {} < r = {}", p.l, p.r),
        );
    }
    if bound_r >= Ratio::new(1, 6) {
        fail("mu/(15r+3mu) < 1/6", format!("{} >= 1/6", Rational(bound_r)));
    }
    let thm = mu / (three * int(p.r));
    if lambda >= thm {
        fail("lambda < mu/(3r)", format!("{} >= {}", p.lambda, Rational(thm)));
    }
    out
}

/// Which subwords the readability clause is checked on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    /// Only `w` itself.
    #[default]
    WordOnly,
    /// Every subword of every cyclic permutation of length at least `⌈|w|/2⌉`.
    Full,
}

/// Three-valued verdict; `Unknown` arises only from search bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubwordCheck {
    pub subword: Word,
    pub mu_readable: Readability,
    pub mu_l_readable: Readability,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenericityReport {
    pub word: Word,
    pub mode: CheckMode,
    pub max_piece_len: usize,
    pub c_prime_ok: bool,
    pub proper_power: bool,
    pub subwords: Vec<SubwordCheck>,
    pub all_two_letter_subwords: bool,
    pub in_p: Verdict,
    pub in_p_prime: Verdict,
}

/// Evaluates small cancellation, non-power and non-readability clauses, and
/// the two-letter-subword clause of `P′`, for a cyclically reduced `w`. The
/// two-letter clause reads `w` as written, not cyclically.
pub fn check_condition(w: &Word, p: &ParamSet, mode: CheckMode, max_states: u64) -> Result<GenericityReport> {
    let violations = validate_params(p);
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(|v| format!("{} ({})", v.inequality, v.detail)).collect();
        return input(format!("invalid parameters: {}", list.join("; ")));
    }
    let alphabet = Alphabet::new(p.r)?;
    alphabet.check_word(w)?;
    if w.is_empty() || !w.is_cyclically_reduced() {
        return input(format!("{w} must be nontrivial and cyclically reduced"));
    }
    let n = w.len();
    let max_piece_len = max_piece_length(&CyclicWord::new(w));
    let c_prime_ok = Ratio::from_integer(max_piece_len as i64) < p.lambda.0 * Ratio::from_integer(n as i64);
    let proper_power = w.is_proper_power()?.is_some();

    let targets: Vec<Word> = match mode {
        CheckMode::WordOnly => vec![w.clone()],
        CheckMode::Full => {
            let mut set = BTreeSet::new();
            for i in 0..n {
                let rot = w.rotate(i);
                for len in n.div_ceil(2)..=n {
                    for start in 0..=n - len {
                        set.insert(Word::reduce(rot.letters()[start..start + len].iter().copied()));
                    }
                }
            }
            set.into_iter().collect()
        }
    };
    let mut subwords = Vec::with_capacity(targets.len());
    for t in targets {
        subwords.push(SubwordCheck {
            mu_readable: is_mu_readable(&t, alphabet, p.mu.0, max_states)?,
            mu_l_readable: is_mu_l_readable(&t, alphabet, p.mu.0, p.l, max_states)?,
            subword: t,
        });
    }
    let all_two_letter_subwords = contains_all_two_letter_subwords(w, alphabet, false);

    let results = || subwords.iter().flat_map(|s| [&s.mu_readable, &s.mu_l_readable]);
    let in_p = if !c_prime_ok || proper_power || results().any(Readability::is_readable) {
        Verdict::No
    } else if results().any(Readability::is_unknown) {
        Verdict::Unknown
    } else {
        Verdict::Yes
    };
    let in_p_prime = match in_p {
        Verdict::Yes if !all_two_letter_subwords => Verdict::No,
        Verdict::Unknown if !all_two_letter_subwords => Verdict::No,
        v => v,
    };
    Ok(GenericityReport {
        word: w.clone(),
        mode,
        max_piece_len,
        c_prime_ok,
        proper_power,
        subwords,
        all_two_letter_subwords,
        in_p,
        in_p_prime,
    })
}
