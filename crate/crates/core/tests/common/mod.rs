//! Slow reference implementations shared by the integration tests. None of
//! them reuse the library's folding, quotient search or piece computation.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use primrank::agraphs::{AGraph, CanonicalForm, Edge};
use primrank::whitehead::{apply_move, all_moves, is_primitive_loop};
use primrank::words::{Alphabet, CyclicWord, Word};

pub fn f2() -> Alphabet {
    Alphabet::new(2).unwrap()
}

pub fn w(s: &str) -> Word {
    s.parse().unwrap()
}

/// Set partitions of `{0..n}` as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur[i] = b;
            rec(i + 1, max.max(b), cur, out);
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    rec(1, 0, &mut cur, &mut out);
    out
}

/// A graph as a plain edge list `(from, to, generator)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NaiveGraph {
    pub n: usize,
    pub base: usize,
    pub edges: Vec<(usize, usize, usize)>,
}

impl NaiveGraph {
    pub fn volume(&self) -> usize {
        self.edges.len()
    }

    pub fn rank(&self) -> usize {
        self.edges.len() + 1 - self.n
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|&(f, t, _)| (f == v) as usize + (t == v) as usize).sum()
    }

    pub fn to_agraph(&self, alphabet: Alphabet) -> AGraph {
        let edges = self
            .edges
            .iter()
            .map(|&(from, to, generator)| Edge { from, to, generator })
            .collect();
        AGraph::new(alphabet, self.n, self.base, edges).unwrap()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(f, t, _) in &self.edges {
                for (a, b) in [(f, t), (t, f)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn is_folded(&self) -> bool {
        let mut out = HashSet::new();
        let mut inc = HashSet::new();
        self.edges.iter().all(|&(f, t, g)| out.insert((f, g)) && inc.insert((t, g)))
    }

    /// Endpoint of reading `w` from `v`, if the path exists.
    pub fn read_from(&self, v: usize, w: &Word) -> Option<usize> {
        let mut at = v;
        for l in w.letters() {
            let g = l.generator();
            at = if l.is_inverse() {
                self.edges.iter().find(|e| e.1 == at && e.2 == g)?.0
            } else {
                self.edges.iter().find(|e| e.0 == at && e.2 == g)?.1
            };
        }
        Some(at)
    }

    pub fn reads(&self, w: &Word) -> bool {
        (0..self.n).any(|v| self.read_from(v, w).is_some())
    }
}

/// Collapses each block of `labels` and folds by repeated scanning.
pub fn naive_quotient(n: usize, base: usize, edges: &[(usize, usize, usize)], labels: &[usize]) -> NaiveGraph {
    let mut block: Vec<usize> = labels.to_vec();
    loop {
        let mut conflict = None;
        'scan: for (i, &(f1, t1, g1)) in edges.iter().enumerate() {
            for &(f2, t2, g2) in &edges[i + 1..] {
                if g1 != g2 {
                    continue;
                }
                if block[f1] == block[f2] && block[t1] != block[t2] {
                    conflict = Some((block[t1], block[t2]));
                    break 'scan;
                }
                if block[t1] == block[t2] && block[f1] != block[f2] {
                    conflict = Some((block[f1], block[f2]));
                    break 'scan;
                }
            }
        }
        let Some((x, y)) = conflict else { break };
        let (keep, gone) = (x.min(y), x.max(y));
        for b in block.iter_mut() {
            if *b == gone {
                *b = keep;
            }
        }
    }
    let ids: BTreeSet<usize> = block[..n].iter().copied().collect();
    let ids: Vec<usize> = ids.into_iter().collect();
    let id = |b: usize| ids.binary_search(&b).unwrap();
    let set: BTreeSet<(usize, usize, usize)> = edges.iter().map(|&(f, t, g)| (id(block[f]), id(block[t]), g)).collect();
    NaiveGraph {
        n: ids.len(),
        base: id(block[base]),
        edges: set.into_iter().collect(),
    }
}

/// Pointed isomorphism key of a folded connected graph: renumber by
/// breadth-first search from the base over `a, A, b, B, ...`.
pub fn pointed_key(g: &NaiveGraph, rank: usize) -> Vec<(usize, usize, usize)> {
    let mut order = vec![usize::MAX; g.n];
    let mut queue = VecDeque::from([g.base]);
    order[g.base] = 0;
    let mut next = 1;
    while let Some(v) = queue.pop_front() {
        for gen in 0..rank {
            let fwd = g.edges.iter().find(|e| e.0 == v && e.2 == gen).map(|e| e.1);
            let back = g.edges.iter().find(|e| e.1 == v && e.2 == gen).map(|e| e.0);
            for x in [fwd, back].into_iter().flatten() {
                if order[x] == usize::MAX {
                    order[x] = next;
                    next += 1;
                    queue.push_back(x);
                }
            }
        }
    }
    let mut key: Vec<_> = g.edges.iter().map(|&(f, t, gen)| (order[f], order[t], gen)).collect();
    key.sort();
    key
}

pub fn cycle_edges(w: &Word) -> Vec<(usize, usize, usize)> {
    let n = w.len();
    w.letters()
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let (a, b) = (i, (i + 1) % n);
            if l.is_inverse() {
                (b, a, l.generator())
            } else {
                (a, b, l.generator())
            }
        })
        .collect()
}

/// Distinct folded quotients of `C_w` over all Bell(|w|) partitions.
pub fn partition_quotients(w: &Word, rank: usize) -> Vec<NaiveGraph> {
    let edges = cycle_edges(w);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in set_partitions(w.len()) {
        let q = naive_quotient(w.len(), 0, &edges, &p);
        if seen.insert(pointed_key(&q, rank)) {
            out.push(q);
        }
    }
    out
}

/// `π(w)` and the canonical forms of `Crit(w)` for cyclically reduced `w`,
/// by brute force over vertex partitions of `C_w`.
pub fn partition_oracle(w: &Word, alphabet: Alphabet) -> (Option<usize>, BTreeSet<CanonicalForm>) {
    let quotients = partition_quotients(w, alphabet.rank());
    for k in 1..=alphabet.rank() {
        let crit: BTreeSet<CanonicalForm> = quotients
            .iter()
            .filter(|q| q.rank() == k)
            .map(|q| q.to_agraph(alphabet))
            .filter(|g| !is_primitive_loop(g, w).unwrap())
            .map(|g| g.canonical_form().unwrap())
            .collect();
        if !crit.is_empty() {
            return (Some(k), crit);
        }
    }
    (None, BTreeSet::new())
}

/// Folded connected graphs with at most `max_edges` edges, one per
/// (unpointed) isomorphism class.
pub fn small_folded_graphs(rank: usize, max_edges: usize) -> Vec<NaiveGraph> {
    let mut classes = HashSet::new();
    let mut out = Vec::new();
    for e in 0..=max_edges {
        for n in 1..=e + 1 {
            let cells = n * n * rank;
            let mut idx = vec![0usize; e];
            loop {
                let edges: Vec<(usize, usize, usize)> = idx.iter().map(|&c| (c / (n * rank), (c / rank) % n, c % rank)).collect();
                let sorted = idx.windows(2).all(|p| p[0] < p[1]);
                let g = NaiveGraph { n, base: 0, edges };
                if sorted && g.is_folded() && g.is_connected() {
                    let key = permutations(n)
                        .iter()
                        .map(|perm| {
                            let mut k: Vec<_> = g.edges.iter().map(|&(f, t, x)| (perm[f], perm[t], x)).collect();
                            k.sort();
                            k
                        })
                        .min()
                        .unwrap();
                    if classes.insert((n, key)) {
                        out.push(g);
                    }
                }
                let Some(pos) = (0..e).rev().find(|&j| idx[j] + 1 < cells) else { break };
                idx[pos] += 1;
                idx[pos + 1..].fill(0);
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Longest common prefix over distinct positions of the symmetrized set,
/// capped below `|w|`; cubic time.
pub fn naive_max_piece(w: &CyclicWord) -> usize {
    let n = w.len();
    let mut elems: Vec<Vec<char>> = Vec::new();
    for base in [w.rep().clone(), w.rep().inverse()] {
        let s: Vec<char> = base.to_string().chars().collect();
        for i in 0..n {
            elems.push(s[i..].iter().chain(&s[..i]).copied().collect());
        }
    }
    let mut best = 0;
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            let mut k = 0;
            while k < n && elems[i][k] == elems[j][k] {
                k += 1;
            }
            best = best.max(k.min(n - 1));
        }
    }
    best
}

/// Primitivity by breadth-first search of the Whitehead orbit among cyclic
/// words of length at most `cap`.
pub fn orbit_primitive(w: &Word, rank: usize, cap: usize) -> bool {
    let start = CyclicWord::new(w);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let moves = all_moves(rank);
    while let Some(c) = queue.pop_front() {
        if c.len() == 1 {
            return true;
        }
        for m in &moves {
            let img = CyclicWord::new(&apply_move(m, c.rep(), rank).unwrap());
            if img.len() <= cap && seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    false
}
