//! Folded quotients as the closure under "identify two vertices, then fold".
//!
//! Any vertex partition is a sequence of pairwise identifications, and
//! folding commutes with further collapsing, so the closure of a folded graph
//! under single merges is exactly its set of folded quotients. States are
//! memoized by canonical form and expanded level by level; each level is
//! expanded in parallel and merged back in frontier order.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::agraphs::fold::Folder;
use crate::agraphs::{canonical_from_transitions, transitions_from_canonical, AGraph, CanonicalForm};
use crate::error::{input, Error, Result};

fn children(form: &CanonicalForm) -> Vec<CanonicalForm> {
    let t = transitions_from_canonical(form);
    let n = t.vertex_count();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            let mut f = Folder::from_transitions(&t);
            f.merge(u, v);
            let (q, base) = f.finish(0);
            out.push(canonical_from_transitions(&q, base).expect("quotients stay connected"));
        }
    }
    out
}

/// Canonical forms of all folded quotients of `g`, sorted.
pub fn quotient_forms(g: &AGraph, max_states: u64) -> Result<Vec<CanonicalForm>> {
    if !g.is_folded() || !g.is_connected() {
        return input("quotient closure needs a folded connected graph");
    }
    let start = g.canonical_form()?;
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let expanded: Vec<Vec<CanonicalForm>> = frontier.par_iter().map(children).collect();
        let mut next = Vec::new();
        for c in expanded.into_iter().flatten() {
            if !seen.contains(&c) {
                if seen.len() as u64 >= max_states {
                    return Err(Error::ResourceLimit {
                        what: "quotient states".into(),
                        bound: max_states,
                        explored: seen.len() as u64,
                    });
                }
                seen.insert(c.clone());
                next.push(c);
            }
        }
        frontier = next;
    }
    let mut forms: Vec<CanonicalForm> = seen.into_iter().collect();
    forms.sort_unstable();
    Ok(forms)
}

/// Every distinct folded quotient of `g`, in canonical numbering, sorted by
/// canonical form.
pub fn quotient_closure(g: &AGraph, max_states: u64) -> Result<Vec<AGraph>> {
    Ok(quotient_forms(g, max_states)?
        .iter()
        .map(|f| AGraph::from_canonical(f, g.alphabet()))
        .collect())
}
