//! μ-readability and (μ,L)-readability.
//!
//! If a folded connected graph `Γ` reads `w`, the image of the `w`-path is a
//! folded quotient of `P_w` and a subgraph of `Γ`, so its volume and rank are
//! no larger. Searching the folded quotients of `P_w` is therefore complete
//! for both bounds. For the degree clause, a subgraph with every vertex of
//! degree `2r` inside a connected folded graph is the whole graph, so a
//! witness with a low-degree vertex has a low-degree quotient witness too.
//!
//! In a folded graph every path labeled by a freely reduced word is
//! non-backtracking, so "path" and "reduced path" readings coincide.

use std::ops::ControlFlow;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::agraphs::AGraph;
use crate::error::{input, Error, Result};
use crate::pirank::{for_each_quotient, TraceLimits};
use crate::words::{Alphabet, Word};

/// Outcome of a readability search. `Unknown` means the search bound was
/// hit before an answer was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Readability {
    Readable(AGraph),
    NotReadable,
    Unknown { bound: u64 },
}

impl Readability {
    pub fn is_readable(&self) -> bool {
        matches!(self, Readability::Readable(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Readability::Unknown { .. })
    }

    pub fn witness(&self) -> Option<&AGraph> {
        match self {
            Readability::Readable(g) => Some(g),
            _ => None,
        }
    }
}

impl Serialize for Readability {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            verdict: &'static str,
            #[serde(skip_serializing_if = "Option::is_none")]
            witness: Option<&'a AGraph>,
        }
        let verdict = match self {
            Readability::Readable(_) => "readable",
            Readability::NotReadable => "not-readable",
            Readability::Unknown { .. } => "unknown",
        };
        Repr {
            verdict,
            witness: self.witness(),
        }
        .serialize(s)
    }
}

/// `⌊μ·n⌋`, the largest admissible volume.
pub(crate) fn volume_budget(mu: Ratio<i64>, n: usize) -> usize {
    (mu * Ratio::from_integer(n as i64)).floor().to_integer().max(0) as usize
}

fn search(
    w: &Word,
    alphabet: Alphabet,
    mu: Ratio<i64>,
    max_rank: usize,
    need_low_degree: bool,
    max_states: u64,
) -> Result<Readability> {
    if w.is_empty() {
        return input("readability of the identity is undefined");
    }
    if mu <= Ratio::from_integer(0) {
        return input("mu must be positive");
    }
    let limits = TraceLimits {
        max_rank,
        max_volume: volume_budget(mu, w.len()),
        max_quotients: max_states,
    };
    let full = alphabet.size();
    let mut witness = None;
    let found = for_each_quotient(w, alphabet, false, limits, |q| {
        if !need_low_degree || (0..q.vertex_count()).any(|v| q.degree(v) < full) {
            witness = Some(q.to_graph(alphabet));
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    match found {
        Ok(_) => Ok(witness.map_or(Readability::NotReadable, Readability::Readable)),
        Err(Error::ResourceLimit { bound, .. }) => Ok(Readability::Unknown { bound }),
        Err(e) => Err(e),
    }
}

/// Some folded connected graph of volume at most `μ|w|` and rank at most
/// `r - 1` reads `w`.
pub fn is_mu_readable(w: &Word, alphabet: Alphabet, mu: Ratio<i64>, max_states: u64) -> Result<Readability> {
    let r = search(w, alphabet, mu, alphabet.rank() - 1, false, max_states)?;
    if let Readability::Readable(g) = &r {
        assert!(audit_mu_witness(g, w, mu), "witness fails the μ-readability clauses");
    }
    Ok(r)
}

/// Some folded connected graph of volume at most `μ|w|` and rank at most
/// `L`, with a vertex of degree below `2r`, reads `w`.
pub fn is_mu_l_readable(w: &Word, alphabet: Alphabet, mu: Ratio<i64>, l: usize, max_states: u64) -> Result<Readability> {
    let r = search(w, alphabet, mu, l, true, max_states)?;
    if let Readability::Readable(g) = &r {
        assert!(audit_mu_l_witness(g, w, mu, l), "witness fails the (μ,L)-readability clauses");
    }
    Ok(r)
}

fn common_clauses(g: &AGraph, w: &Word, mu: Ratio<i64>) -> bool {
    g.is_folded()
        && g.is_connected()
        && Ratio::from_integer(g.volume() as i64) <= mu * Ratio::from_integer(w.len() as i64)
        && g.reads_word(w).unwrap_or(false)
}

/// Checks every μ-readability clause on a candidate witness.
pub fn audit_mu_witness(g: &AGraph, w: &Word, mu: Ratio<i64>) -> bool {
    common_clauses(g, w, mu) && g.rank().is_ok_and(|k| k < g.alphabet().rank())
}

/// Checks every (μ,L)-readability clause on a candidate witness.
pub fn audit_mu_l_witness(g: &AGraph, w: &Word, mu: Ratio<i64>, l: usize) -> bool {
    common_clauses(g, w, mu)
        && g.rank().is_ok_and(|k| k <= l)
        && g.degrees().iter().any(|&d| d < g.alphabet().size())
}
