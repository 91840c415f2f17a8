//! Folded quotients of the cycle graph `C_w` or path graph `P_w`, enumerated
//! by tracing `w` through a growing folded graph.
//!
//! A folded quotient is determined by the image vertex of each position of
//! `w`, and reading `w` from the base visits the image in a unique way. The
//! search walks `w` letter by letter: a defined transition is forced, an
//! undefined one either opens a fresh vertex or lands on an existing vertex
//! whose inverse slot is free. Vertices are numbered by first visit, so every
//! folded quotient is produced exactly once and no deduplication is needed.
//!
//! Volume and rank never decrease along a branch (a fresh vertex keeps the
//! rank, an edge onto an old vertex adds one), which makes both bounds safe
//! pruning conditions.

use std::ops::ControlFlow;

use crate::agraphs::{AGraph, Transitions, NONE};
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceLimits {
    pub max_rank: usize,
    pub max_volume: usize,
    pub max_quotients: u64,
}

impl TraceLimits {
    pub fn unbounded(max_quotients: u64) -> TraceLimits {
        TraceLimits {
            max_rank: usize::MAX,
            max_volume: usize::MAX,
            max_quotients,
        }
    }
}

/// A quotient found by the search, with vertices numbered by first visit
/// and the base at 0.
pub struct TracedQuotient<'a> {
    slots: usize,
    table: &'a [u32],
    vertices: usize,
    edges: usize,
}

impl TracedQuotient<'_> {
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn volume(&self) -> usize {
        self.edges
    }

    pub fn rank(&self) -> usize {
        self.edges + 1 - self.vertices
    }

    pub fn degree(&self, v: usize) -> usize {
        let row = &self.table[v * self.slots..(v + 1) * self.slots];
        row.iter().filter(|&&x| x != NONE).count()
    }

    pub fn transitions(&self) -> Transitions {
        Transitions {
            slots: self.slots,
            table: self.table[..self.vertices * self.slots].to_vec(),
        }
    }

    pub fn to_graph(&self, alphabet: Alphabet) -> AGraph {
        self.transitions().to_graph(alphabet, 0)
    }
}

struct Search<'a, F> {
    letters: &'a [Letter],
    slots: usize,
    closed: bool,
    limits: TraceLimits,
    table: Vec<u32>,
    vertices: usize,
    edges: usize,
    found: u64,
    visit: F,
}

impl<F: FnMut(&TracedQuotient) -> ControlFlow<()>> Search<'_, F> {
    fn run(&mut self, i: usize, v: usize) -> Result<ControlFlow<()>> {
        if i == self.letters.len() {
            self.found += 1;
            if self.found > self.limits.max_quotients {
                return Err(Error::ResourceLimit {
                    what: "folded quotients".into(),
                    bound: self.limits.max_quotients,
                    explored: self.found - 1,
                });
            }
            let q = TracedQuotient {
                slots: self.slots,
                table: &self.table,
                vertices: self.vertices,
                edges: self.edges,
            };
            return Ok((self.visit)(&q));
        }
        let s = self.letters[i].slot();
        let last = self.closed && i + 1 == self.letters.len();
        let forced = self.table[v * self.slots + s];
        if forced != NONE {
            if last && forced != 0 {
                return Ok(ControlFlow::Continue(()));
            }
            return self.run(i + 1, forced as usize);
        }
        if self.edges + 1 > self.limits.max_volume {
            return Ok(ControlFlow::Continue(()));
        }
        let rank = self.edges + 1 - self.vertices;
        let targets = if last { 1 } else { self.vertices };
        if rank < self.limits.max_rank {
            for u in 0..targets {
                if self.table[u * self.slots + (s ^ 1)] != NONE {
                    continue;
                }
                self.link(v, u, s);
                let flow = self.run(i + 1, u);
                self.unlink(v, u, s);
                if flow?.is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
        }
        if !last {
            let u = self.vertices;
            self.vertices += 1;
            self.link(v, u, s);
            let flow = self.run(i + 1, u);
            self.unlink(v, u, s);
            self.vertices -= 1;
            return flow;
        }
        Ok(ControlFlow::Continue(()))
    }

    fn link(&mut self, v: usize, u: usize, s: usize) {
        self.table[v * self.slots + s] = u as u32;
        self.table[u * self.slots + (s ^ 1)] = v as u32;
        self.edges += 1;
    }

    fn unlink(&mut self, v: usize, u: usize, s: usize) {
        self.table[v * self.slots + s] = NONE;
        self.table[u * self.slots + (s ^ 1)] = NONE;
        self.edges -= 1;
    }
}

/// Calls `visit` on every folded quotient of `C_w` (`closed`, `w` cyclically
/// reduced) or of `P_w` within the limits, in a fixed order. Returns the
/// number of quotients visited.
pub fn for_each_quotient<F>(w: &Word, alphabet: Alphabet, closed: bool, limits: TraceLimits, visit: F) -> Result<u64>
where
    F: FnMut(&TracedQuotient) -> ControlFlow<()>,
{
    alphabet.check_word(w)?;
    if closed && !w.is_cyclically_reduced() {
        return crate::error::input(format!("{w} is not cyclically reduced"));
    }
    if closed && w.is_empty() {
        return crate::error::input("the cycle graph of the identity is undefined");
    }
    let slots = alphabet.size();
    let mut search = Search {
        letters: w.letters(),
        slots,
        closed,
        limits,
        table: vec![NONE; (w.len() + 1) * slots],
        vertices: 1,
        edges: 0,
        found: 0,
        visit,
    };
    let _ = search.run(0, 0)?;
    Ok(search.found)
}
