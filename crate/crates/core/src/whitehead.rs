//! Whitehead graphs, Whitehead automorphisms and primitivity testing.
//!
//! Primitivity is decided by greedy cyclic-length descent: while some
//! Whitehead automorphism shortens the cyclic word, apply the one with the
//! largest reduction (ties go to the least move in enumeration order). By
//! Whitehead's peak-reduction theorem the descent ends at the minimal length
//! of the automorphic orbit, which is 1 exactly for primitive elements.

use std::fmt;

use crate::agraphs::{AGraph, TreeOrder};
use crate::error::{input, Result};
use crate::words::{CyclicWord, Letter, Word};

/// Largest rank for which moves can be enumerated (bitmask width).
pub const MAX_MOVE_RANK: usize = 32;

/// Multigraph on the `2r` signed letters with one edge `{x, y⁻¹}` per cyclic
/// adjacency `xy` of the word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhiteheadGraph {
    vertices: usize,
    counts: Vec<u32>,
}

impl WhiteheadGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn multiplicity(&self, x: Letter, y: Letter) -> u32 {
        self.counts[x.slot() * self.vertices + y.slot()]
    }

    /// Total edge multiplicity; equals the cyclic length of the word.
    pub fn edge_count(&self) -> u32 {
        let diag: u32 = (0..self.vertices).map(|v| self.counts[v * self.vertices + v]).sum();
        (self.counts.iter().sum::<u32>() + diag) / 2
    }

    pub fn is_complete(&self) -> bool {
        (0..self.vertices).all(|x| (0..self.vertices).all(|y| x == y || self.counts[x * self.vertices + y] > 0))
    }

    pub fn is_connected(&self) -> bool {
        self.connected_without(None)
    }

    /// Whether removing some vertex disconnects the remaining vertices.
    pub fn has_cut_vertex(&self) -> bool {
        (0..self.vertices).any(|v| !self.connected_without(Some(v)))
    }

    fn connected_without(&self, removed: Option<usize>) -> bool {
        let n = self.vertices;
        let Some(start) = (0..n).find(|&v| Some(v) != removed) else {
            return true;
        };
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for u in 0..n {
                if !seen[u] && Some(u) != removed && self.counts[v * n + u] > 0 {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        (0..n).all(|v| seen[v] || Some(v) == removed)
    }
}

pub fn whitehead_graph(w: &CyclicWord, rank: usize) -> WhiteheadGraph {
    let n = 2 * rank;
    let mut counts = vec![0; n * n];
    let letters = w.rep().letters();
    for (i, &x) in letters.iter().enumerate() {
        let y = letters[(i + 1) % letters.len()];
        let (p, q) = (x.slot(), y.inverse().slot());
        counts[p * n + q] += 1;
        if p != q {
            counts[q * n + p] += 1;
        }
    }
    WhiteheadGraph { vertices: n, counts }
}

/// A connected Whitehead graph without cut vertices certifies that `w` is
/// not primitive. The converse fails, so `false` is inconclusive.
pub fn is_whitehead_nonprimitive_certificate(w: &CyclicWord, rank: usize) -> bool {
    if w.len() < 2 {
        return false;
    }
    let g = whitehead_graph(w, rank);
    g.is_connected() && !g.has_cut_vertex()
}

/// The Whitehead automorphism with multiplier `a` and affected set `S`
/// (`a ∈ S`, `a⁻¹ ∉ S`): `a` is fixed and every other signed letter
/// `y ↦ [a⁻¹ if y⁻¹ ∈ S] · y · [a if y ∈ S]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WhiteheadMove {
    multiplier: Letter,
    affected: u64,
}

impl WhiteheadMove {
    pub fn new(multiplier: Letter, affected: &[Letter], rank: usize) -> Result<WhiteheadMove> {
        if rank == 0 || rank > MAX_MOVE_RANK {
            return input(format!("move rank must be in 1..={MAX_MOVE_RANK}"));
        }
        let mut mask = 0u64;
        for l in affected {
            if l.generator() >= rank {
                return input(format!("letter {l} outside rank {rank}"));
            }
            mask |= 1 << l.slot();
        }
        if multiplier.generator() >= rank {
            return input(format!("multiplier {multiplier} outside rank {rank}"));
        }
        if mask & (1 << multiplier.slot()) == 0 {
            return input("affected set must contain the multiplier");
        }
        if mask & (1 << multiplier.inverse().slot()) != 0 {
            return input("affected set must not contain the multiplier's inverse");
        }
        Ok(WhiteheadMove { multiplier, affected: mask })
    }

    pub fn multiplier(&self) -> Letter {
        self.multiplier
    }

    pub fn affected(&self) -> Vec<Letter> {
        (0..64).filter(|s| self.affected & (1 << s) != 0).map(Letter::from_slot).collect()
    }

    fn contains(&self, l: Letter) -> bool {
        self.affected & (1 << l.slot()) != 0
    }

    /// The inverse automorphism: multiplier `a⁻¹`, set `S - {a} + {a⁻¹}`.
    pub fn inverse(&self) -> WhiteheadMove {
        let a = self.multiplier;
        WhiteheadMove {
            multiplier: a.inverse(),
            affected: (self.affected & !(1 << a.slot())) | (1 << a.inverse().slot()),
        }
    }

    fn push_image(&self, y: Letter, out: &mut Vec<Letter>) {
        let a = self.multiplier;
        if y.generator() == a.generator() {
            push_reduced(out, y);
            return;
        }
        if self.contains(y.inverse()) {
            push_reduced(out, a.inverse());
        }
        push_reduced(out, y);
        if self.contains(y) {
            push_reduced(out, a);
        }
    }

    fn image_into(&self, letters: &[Letter], out: &mut Vec<Letter>) {
        out.clear();
        for &y in letters {
            self.push_image(y, out);
        }
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

/// Length of the cyclic reduction of a freely reduced sequence.
fn cyclic_len(letters: &[Letter]) -> usize {
    let (mut i, mut j) = (0, letters.len());
    while j > i + 1 && letters[i] == letters[j - 1].inverse() {
        i += 1;
        j -= 1;
    }
    j - i
}

impl fmt::Display for WhiteheadMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set: Vec<String> = self.affected().iter().map(|l| l.to_string()).collect();
        write!(f, "({}; {{{}}})", self.multiplier, set.join(", "))
    }
}

impl fmt::Debug for WhiteheadMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for WhiteheadMove {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Every non-identity Whitehead move of the given rank, ordered by
/// multiplier slot and then by affected-set bitmask.
pub fn all_moves(rank: usize) -> Vec<WhiteheadMove> {
    assert!((1..=MAX_MOVE_RANK).contains(&rank));
    let slots = 2 * rank;
    let mut moves = Vec::new();
    for t in 0..slots {
        let multiplier = Letter::from_slot(t);
        let free: Vec<usize> = (0..slots).filter(|&s| s != t && s != (t ^ 1)).collect();
        let mut subsets: Vec<u64> = (1u64..(1 << free.len()))
            .map(|bits| {
                free.iter()
                    .enumerate()
                    .filter(|(i, _)| bits & (1 << i) != 0)
                    .fold(1 << t, |m, (_, &s)| m | (1 << s))
            })
            .collect();
        subsets.sort_unstable();
        moves.extend(subsets.into_iter().map(|affected| WhiteheadMove { multiplier, affected }));
    }
    moves
}

/// Image of `w` under the move, freely reduced.
pub fn apply_move(m: &WhiteheadMove, w: &Word, rank: usize) -> Result<Word> {
    if rank == 0 || rank > MAX_MOVE_RANK || m.affected >> (2 * rank) != 0 || m.multiplier.generator() >= rank {
        return input(format!("move {m} is not a move of rank {rank}"));
    }
    if w.max_generator().is_some_and(|g| g >= rank) {
        return input(format!("word {w} has letters outside rank {rank}"));
    }
    let mut out = Vec::with_capacity(w.len() * 3);
    m.image_into(w.letters(), &mut out);
    Ok(Word::reduce(out))
}

/// Greedy cyclic-length descent. Returns the terminal cyclic word and the
/// moves applied.
pub fn minimize(w: &Word, rank: usize) -> Result<(CyclicWord, Vec<WhiteheadMove>)> {
    if w.is_empty() {
        return input("cannot minimize the identity");
    }
    if rank == 0 || rank > MAX_MOVE_RANK {
        return input(format!("rank must be in 1..={MAX_MOVE_RANK}"));
    }
    if w.max_generator().is_some_and(|g| g >= rank) {
        return input(format!("word {w} has letters outside rank {rank}"));
    }
    let moves = all_moves(rank);
    let mut current: Vec<Letter> = w.strip().1.letters().to_vec();
    let mut chain = Vec::new();
    let mut buf = Vec::new();
    while current.len() > 1 {
        let mut best: Option<(usize, &WhiteheadMove)> = None;
        for m in &moves {
            m.image_into(&current, &mut buf);
            let len = cyclic_len(&buf);
            if len < best.map_or(current.len(), |b| b.0) {
                best = Some((len, m));
            }
        }
        let Some((_, m)) = best else { break };
        m.image_into(&current, &mut buf);
        current = Word::reduce(buf.iter().copied()).strip().1.letters().to_vec();
        chain.push(*m);
    }
    Ok((CyclicWord::new(&Word::reduce(current)), chain))
}

pub fn is_primitive(w: &Word, rank: usize) -> Result<bool> {
    Ok(minimize(w, rank)?.0.len() == 1)
}

/// Whether the loop `w` at the base of `g` is primitive in `π₁(g, ∗)`.
pub fn is_primitive_loop(g: &AGraph, w: &Word) -> Result<bool> {
    is_primitive_loop_with(g, w, TreeOrder::Breadth)
}

pub fn is_primitive_loop_with(g: &AGraph, w: &Word, order: TreeOrder) -> Result<bool> {
    let basis = g.basis_with(order)?;
    let x = basis.rewrite(w)?;
    if x.is_empty() {
        return input("the identity is never primitive");
    }
    is_primitive(&x, basis.rank())
}
