//! Primitivity rank `π(w)` and critical subgroups `Crit(w)`.
//!
//! Every subgroup containing `w` as a non-primitive element contains the
//! image of the loop `γ_w`, which is a folded quotient of the cycle graph
//! `C_w`. So `π(w)` is the least rank of a folded quotient of `C_w` in which
//! `γ_w` is not primitive, and `Crit(w)` collects the quotients attaining it.

mod closure;
mod trace;

use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use closure::{quotient_closure, quotient_forms};
pub use trace::{for_each_quotient, TraceLimits, TracedQuotient};

use crate::agraphs::{AGraph, Subgroup};
use crate::error::{input, Result};
use crate::whitehead::is_primitive_loop;
use crate::words::{Alphabet, CyclicWord, Word};

pub const DEFAULT_MAX_STATES: u64 = 10_000_000;

/// How folded quotients of `C_w` are enumerated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    /// Depth-first tracing of `w`, pruned to quotients of rank at most `r`.
    #[default]
    Trace,
    /// Memoized closure under pairwise merges, unpruned.
    MergeClosure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub engine: Engine,
    pub max_states: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            engine: Engine::Trace,
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PiRankReport {
    pub word: Word,
    pub cyclic: CyclicWord,
    /// `None` stands for `π = ∞`.
    pub pi: Option<usize>,
    /// Sorted by canonical form.
    pub crit: Vec<Subgroup>,
    pub quotients_explored: u64,
    pub elapsed: Duration,
}

impl PiRankReport {
    pub fn pi_string(&self) -> String {
        self.pi.map_or_else(|| "inf".to_string(), |p| p.to_string())
    }
}

impl Serialize for PiRankReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PiRankReport", 5)?;
        st.serialize_field("word", &self.word)?;
        match self.pi {
            Some(p) => st.serialize_field("pi", &p)?,
            None => st.serialize_field("pi", "inf")?,
        }
        st.serialize_field("crit", &self.crit)?;
        st.serialize_field("quotients_explored", &self.quotients_explored)?;
        st.serialize_field("elapsed_ms", &(self.elapsed.as_millis() as u64))?;
        st.end()
    }
}

pub fn primitivity_rank(w: &Word, alphabet: Alphabet) -> Result<PiRankReport> {
    primitivity_rank_with(w, alphabet, SearchOptions::default())
}

pub fn primitivity_rank_with(w: &Word, alphabet: Alphabet, opts: SearchOptions) -> Result<PiRankReport> {
    let start = Instant::now();
    alphabet.check_word(w)?;
    if w.is_empty() {
        return input("primitivity rank of the identity is undefined");
    }
    let (conj, core) = w.strip();
    let r = alphabet.rank();

    // Candidate quotients of rank ≤ r, bucketed by rank.
    let mut by_rank: Vec<Vec<AGraph>> = vec![Vec::new(); r + 1];
    let explored = match opts.engine {
        Engine::Trace => {
            let limits = TraceLimits {
                max_rank: r,
                max_volume: usize::MAX,
                max_quotients: opts.max_states,
            };
            for_each_quotient(&core, alphabet, true, limits, |q| {
                by_rank[q.rank()].push(q.to_graph(alphabet));
                ControlFlow::Continue(())
            })?
        }
        Engine::MergeClosure => {
            let circle = AGraph::circle(&core, alphabet)?;
            let forms = quotient_forms(&circle, opts.max_states)?;
            for f in &forms {
                let q = AGraph::from_canonical(f, alphabet);
                let k = q.rank()?;
                if k <= r {
                    by_rank[k].push(q);
                }
            }
            forms.len() as u64
        }
    };

    let mut pi = None;
    let mut crit = Vec::new();
    for (k, graphs) in by_rank.iter().enumerate().skip(1) {
        for g in graphs {
            if !is_primitive_loop(g, &core)? {
                crit.push(Subgroup::from_core_graph(g)?);
            }
        }
        if !crit.is_empty() {
            pi = Some(k);
            break;
        }
    }
    if !conj.is_empty() {
        crit = crit.iter().map(|h| h.conjugate(&conj)).collect();
    }
    crit.sort_by(|a, b| a.canonical().cmp(b.canonical()));
    crit.dedup();
    debug_assert!(crit.iter().all(|h| h.contains(w)));

    Ok(PiRankReport {
        word: w.clone(),
        cyclic: CyclicWord::new(w),
        pi,
        crit,
        quotients_explored: explored,
        elapsed: start.elapsed(),
    })
}
