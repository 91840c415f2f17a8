//! Labeled graphs over the alphabet `A^{±1}` ("A-graphs").
//!
//! Each topological edge is stored once, in its positive orientation
//! `from --a_g--> to`; traversing it backwards reads `a_g⁻¹`. Vertex degree
//! counts both orientations, so a loop contributes 2.

mod basis;
mod canonical;
pub(crate) mod fold;
mod subgroup;

use std::fmt::Write as _;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

pub use basis::{Basis, TreeOrder};
pub use canonical::CanonicalForm;
pub(crate) use canonical::{canonical_from_transitions, transitions_from_canonical};
pub use subgroup::{stallings_from_generators, Subgroup};

use crate::error::{input, Result};
use crate::words::{Alphabet, CyclicWord, Letter, LetterMap, Word};
use fold::Folder;

pub(crate) const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub generator: usize,
}

/// Index of a subgroup: finite, or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(usize),
    Infinite,
}

impl Serialize for Index {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Index::Finite(k) => s.serialize_u64(*k as u64),
            Index::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Transition table of a folded graph: `table[v * slots + letter_slot]` is
/// the endpoint of the unique edge leaving `v` with that label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transitions {
    pub(crate) slots: usize,
    pub(crate) table: Vec<u32>,
}

impl Transitions {
    pub fn vertex_count(&self) -> usize {
        self.table.len() / self.slots
    }

    pub fn step(&self, v: usize, letter: Letter) -> Option<usize> {
        let x = *self.table.get(v * self.slots + letter.slot())?;
        (x != NONE).then_some(x as usize)
    }

    pub(crate) fn to_graph(&self, alphabet: Alphabet, base: usize) -> AGraph {
        let n = self.vertex_count();
        let mut edges = Vec::new();
        for v in 0..n {
            for g in 0..alphabet.rank() {
                let x = self.table[v * self.slots + 2 * g];
                if x != NONE {
                    edges.push(Edge {
                        from: v,
                        to: x as usize,
                        generator: g,
                    });
                }
            }
        }
        AGraph::from_parts(alphabet, n, base, edges)
    }
}

/// A pointed labeled graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AGraph {
    alphabet: Alphabet,
    vertex_count: usize,
    base: usize,
    edges: Vec<Edge>,
}

/// A maximal arc: a maximal edge path whose interior vertices have degree 2
/// and differ from the base vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    /// `(edge index, traversed forwards)` in path order.
    pub path: Vec<(usize, bool)>,
    pub start: usize,
    pub end: usize,
}

impl Arc {
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }
}

/// A partition of `0..vertex_count`, as a block label per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPartition {
    block_of: Vec<usize>,
}

impl VertexPartition {
    pub fn identity(vertex_count: usize) -> VertexPartition {
        VertexPartition {
            block_of: (0..vertex_count).collect(),
        }
    }

    pub fn single_block(vertex_count: usize) -> VertexPartition {
        VertexPartition {
            block_of: vec![0; vertex_count],
        }
    }

    /// From an explicit list of blocks, which must be nonempty, disjoint and
    /// cover `0..vertex_count`.
    pub fn from_blocks(vertex_count: usize, blocks: &[Vec<usize>]) -> Result<VertexPartition> {
        let mut block_of = vec![usize::MAX; vertex_count];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return input("partition blocks must be nonempty");
            }
            for &v in block {
                if v >= vertex_count {
                    return input(format!("vertex {v} out of range"));
                }
                if block_of[v] != usize::MAX {
                    return input(format!("vertex {v} occurs in two blocks"));
                }
                block_of[v] = i;
            }
        }
        if block_of.contains(&usize::MAX) {
            return input("partition does not cover every vertex");
        }
        Ok(VertexPartition { block_of })
    }

    /// From a block label per vertex.
    pub fn from_labels(labels: Vec<usize>) -> VertexPartition {
        VertexPartition { block_of: labels }
    }

    pub fn vertex_count(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }
}

impl AGraph {
    /// Builds a graph; edges are sorted by `(from, generator, to)`.
    pub fn new(alphabet: Alphabet, vertex_count: usize, base: usize, edges: Vec<Edge>) -> Result<AGraph> {
        if vertex_count == 0 {
            return input("a graph needs at least one vertex");
        }
        if base >= vertex_count {
            return input(format!("base vertex {base} out of range"));
        }
        for e in &edges {
            if e.from >= vertex_count || e.to >= vertex_count {
                return input(format!("edge {e:?} has an endpoint out of range"));
            }
            if e.generator >= alphabet.rank() {
                return input(format!("edge label {} outside the alphabet", e.generator));
            }
        }
        Ok(AGraph::from_parts(alphabet, vertex_count, base, edges))
    }

    fn from_parts(alphabet: Alphabet, vertex_count: usize, base: usize, mut edges: Vec<Edge>) -> AGraph {
        edges.sort_by_key(|e| (e.from, e.generator, e.to));
        AGraph {
            alphabet,
            vertex_count,
            base,
            edges,
        }
    }

    /// The rose `R_A`: one vertex with a loop per generator.
    pub fn rose(alphabet: Alphabet) -> AGraph {
        let edges = (0..alphabet.rank())
            .map(|g| Edge {
                from: 0,
                to: 0,
                generator: g,
            })
            .collect();
        AGraph::from_parts(alphabet, 1, 0, edges)
    }

    /// Single vertex, no edges: the graph of the trivial subgroup.
    pub fn trivial(alphabet: Alphabet) -> AGraph {
        AGraph::from_parts(alphabet, 1, 0, Vec::new())
    }

    /// The circle `C_w` reading the canonical representative of `w` from the
    /// base vertex 0.
    pub fn cycle_graph(w: &CyclicWord, alphabet: Alphabet) -> Result<AGraph> {
        AGraph::circle(w.rep(), alphabet)
    }

    /// The circle reading `w` (not rotated) from the base vertex 0.
    pub fn circle(w: &Word, alphabet: Alphabet) -> Result<AGraph> {
        if w.is_empty() {
            return input("cycle graph of the empty word");
        }
        alphabet.check_word(w)?;
        let n = w.len();
        let edges = w
            .letters()
            .iter()
            .enumerate()
            .map(|(i, &l)| oriented_edge(i, (i + 1) % n, l))
            .collect();
        Ok(AGraph::from_parts(alphabet, n, 0, edges))
    }

    /// The segment `P_w` reading `w` from the base vertex 0.
    pub fn path_graph(w: &Word, alphabet: Alphabet) -> Result<AGraph> {
        if w.is_empty() {
            return input("path graph of the empty word");
        }
        alphabet.check_word(w)?;
        let edges = w
            .letters()
            .iter()
            .enumerate()
            .map(|(i, &l)| oriented_edge(i, i + 1, l))
            .collect();
        Ok(AGraph::from_parts(alphabet, w.len() + 1, 0, edges))
    }

    /// Bouquet of circles at the base, one per nontrivial word. Not folded in
    /// general.
    pub fn wedge(gens: &[Word], alphabet: Alphabet) -> Result<AGraph> {
        let mut n = 1;
        let mut edges = Vec::new();
        for w in gens {
            alphabet.check_word(w)?;
            let len = w.len();
            for (i, &l) in w.letters().iter().enumerate() {
                let from = if i == 0 { 0 } else { n + i - 1 };
                let to = if i + 1 == len { 0 } else { n + i };
                edges.push(oriented_edge(from, to, l));
            }
            n += len.saturating_sub(1);
        }
        Ok(AGraph::from_parts(alphabet, n, 0, edges))
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of topological edges, `vol(Γ)`.
    pub fn volume(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for e in &self.edges {
            deg[e.from] += 1;
            deg[e.to] += 1;
        }
        deg
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|e| (e.from == v) as usize + (e.to == v) as usize).sum()
    }

    pub fn is_connected(&self) -> bool {
        let mut f = Folder::new(self.vertex_count, 0);
        let mut components = self.vertex_count;
        for e in &self.edges {
            let (a, b) = (f.find(e.from as u32), f.find(e.to as u32));
            if a != b {
                f.merge(a as usize, b as usize);
                components -= 1;
            }
        }
        components == 1
    }

    /// No two distinct oriented edges share origin and label.
    pub fn is_folded(&self) -> bool {
        let k = self.alphabet.size();
        let mut used = vec![false; self.vertex_count * k];
        for e in &self.edges {
            for cell in [e.from * k + 2 * e.generator, e.to * k + 2 * e.generator + 1] {
                if used[cell] {
                    return false;
                }
                used[cell] = true;
            }
        }
        true
    }

    pub fn transitions(&self) -> Result<Transitions> {
        let k = self.alphabet.size();
        let mut table = vec![NONE; self.vertex_count * k];
        for e in &self.edges {
            for (cell, target) in [(e.from * k + 2 * e.generator, e.to), (e.to * k + 2 * e.generator + 1, e.from)] {
                if table[cell] != NONE {
                    return input("graph is not folded");
                }
                table[cell] = target as u32;
            }
        }
        Ok(Transitions { slots: k, table })
    }

    /// Stallings folding. The base vertex is tracked through identifications.
    pub fn fold(&self) -> AGraph {
        let mut f = Folder::new(self.vertex_count, self.alphabet.size());
        for e in &self.edges {
            f.add_edge(e.from, e.to, 2 * e.generator);
        }
        let (t, base) = f.finish(self.base);
        t.to_graph(self.alphabet, base)
    }

    /// Collapses each block to a vertex, then folds.
    pub fn quotient(&self, p: &VertexPartition) -> Result<AGraph> {
        if p.vertex_count() != self.vertex_count {
            return input(format!(
                "partition covers {} vertices, graph has {}",
                p.vertex_count(),
                self.vertex_count
            ));
        }
        let mut f = Folder::new(self.vertex_count, self.alphabet.size());
        let mut first_in_block = std::collections::HashMap::new();
        for v in 0..self.vertex_count {
            let rep = *first_in_block.entry(p.block_of(v)).or_insert(v);
            if rep != v {
                f.merge(rep, v);
            }
        }
        for e in &self.edges {
            f.add_edge(e.from, e.to, 2 * e.generator);
        }
        let (t, base) = f.finish(self.base);
        Ok(t.to_graph(self.alphabet, base))
    }

    /// First Betti number `E - V + 1`.
    pub fn rank(&self) -> Result<usize> {
        if !self.is_connected() {
            return input("rank of a disconnected graph");
        }
        Ok(self.edges.len() + 1 - self.vertex_count)
    }

    /// Index of the represented subgroup: the vertex count when every vertex
    /// has degree `2r`, infinite otherwise.
    pub fn index(&self) -> Result<Index> {
        if !self.is_folded() {
            return input("index of an unfolded graph");
        }
        let full = self.alphabet.size();
        Ok(if self.degrees().iter().all(|&d| d == full) {
            Index::Finite(self.vertex_count)
        } else {
            Index::Infinite
        })
    }

    /// Maximal arcs. Their edge sets partition the edges.
    pub fn maximal_arcs(&self) -> Vec<Arc> {
        let deg = self.degrees();
        let terminal = |v: usize| v == self.base || deg[v] != 2;
        // Half-edges per vertex: (edge, leaves this vertex forwards).
        let mut incident: Vec<Vec<(usize, bool)>> = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            incident[e.from].push((i, true));
            incident[e.to].push((i, false));
        }
        let mut used = vec![false; self.edges.len()];
        let mut arcs = Vec::new();
        for start in (0..self.vertex_count).filter(|&v| terminal(v)) {
            for &(e0, fwd0) in &incident[start] {
                if used[e0] {
                    continue;
                }
                let mut path = vec![(e0, fwd0)];
                used[e0] = true;
                let (mut e, mut fwd) = (e0, fwd0);
                let mut at = self.head(e, fwd);
                while !terminal(at) {
                    let next = incident[at].iter().copied().find(|&(x, xf)| !(x == e && xf != fwd));
                    let Some((ne, nf)) = next else { break };
                    if used[ne] {
                        break;
                    }
                    used[ne] = true;
                    path.push((ne, nf));
                    e = ne;
                    fwd = nf;
                    at = self.head(e, fwd);
                }
                arcs.push(Arc { path, start, end: at });
            }
        }
        arcs
    }

    fn head(&self, e: usize, forward: bool) -> usize {
        if forward {
            self.edges[e].to
        } else {
            self.edges[e].from
        }
    }

    /// Whether some path, from any start vertex, is labeled `w`.
    pub fn reads_word(&self, w: &Word) -> Result<bool> {
        let t = self.transitions()?;
        let mut current: Vec<bool> = vec![true; self.vertex_count];
        for &l in w.letters() {
            let mut next = vec![false; self.vertex_count];
            let mut any = false;
            for v in (0..self.vertex_count).filter(|&v| current[v]) {
                if let Some(x) = t.step(v, l) {
                    next[x] = true;
                    any = true;
                }
            }
            if !any {
                return Ok(false);
            }
            current = next;
        }
        Ok(true)
    }

    /// Whether `w` labels a closed path at the base, i.e. lies in the
    /// represented subgroup.
    pub fn accepts_loop(&self, w: &Word) -> Result<bool> {
        let t = self.transitions()?;
        Ok(trace(&t, self.base, w) == Some(self.base))
    }

    /// Removes hanging trees not containing the base.
    pub fn trim_to_core(&self) -> AGraph {
        let mut deg = self.degrees();
        let mut alive = vec![true; self.vertex_count];
        let mut stack: Vec<usize> = (0..self.vertex_count).filter(|&v| v != self.base && deg[v] <= 1).collect();
        let mut edge_alive = vec![true; self.edges.len()];
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for (i, e) in self.edges.iter().enumerate() {
                if edge_alive[i] && (e.from == v || e.to == v) {
                    edge_alive[i] = false;
                    let other = if e.from == v { e.to } else { e.from };
                    deg[other] -= 1;
                    if other != self.base && alive[other] && deg[other] <= 1 {
                        stack.push(other);
                    }
                }
            }
        }
        let mut new_id = vec![usize::MAX; self.vertex_count];
        let mut n = 0;
        for v in 0..self.vertex_count {
            if alive[v] {
                new_id[v] = n;
                n += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .zip(&edge_alive)
            .filter(|(_, &a)| a)
            .map(|(e, _)| Edge {
                from: new_id[e.from],
                to: new_id[e.to],
                generator: e.generator,
            })
            .collect();
        AGraph::from_parts(self.alphabet, n, new_id[self.base], edges)
    }

    /// Core with respect to the base: no vertex other than the base has degree ≤ 1.
    pub fn is_core(&self) -> bool {
        self.is_connected() && self.degrees().iter().enumerate().all(|(v, &d)| v == self.base || d >= 2)
    }

    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        canonical_from_transitions(&self.transitions()?, self.base)
    }

    /// Rebuilds the graph encoded by a canonical form, numbered in traversal
    /// order with base 0.
    pub fn from_canonical(form: &CanonicalForm, alphabet: Alphabet) -> AGraph {
        let r = form.rank();
        debug_assert_eq!(r, alphabet.rank());
        let targets = form.decode();
        let edges = targets
            .iter()
            .enumerate()
            .filter_map(|(i, t)| {
                t.map(|to| Edge {
                    from: i / r,
                    to,
                    generator: i % r,
                })
            })
            .collect();
        AGraph::from_parts(alphabet, form.vertex_count(), 0, edges)
    }

    /// Spanning-tree free basis of `π₁(Γ, ∗)` (breadth-first tree).
    pub fn basis_of(&self) -> Result<Basis> {
        Basis::new(self, TreeOrder::Breadth)
    }

    pub fn basis_with(&self, order: TreeOrder) -> Result<Basis> {
        Basis::new(self, order)
    }

    /// Image under a letter permutation/inversion automorphism.
    pub fn relabel(&self, map: &LetterMap) -> AGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let img = map.apply_letter(Letter::new(e.generator, false));
                oriented_edge(e.from, e.to, img)
            })
            .collect();
        AGraph::from_parts(self.alphabet, self.vertex_count, self.base, edges)
    }

    /// Graphviz rendering; the base vertex is doubly circled.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n  node [shape=circle];\n");
        for v in 0..self.vertex_count {
            if v == self.base {
                let _ = writeln!(out, "  {v} [shape=doublecircle];");
            } else {
                let _ = writeln!(out, "  {v};");
            }
        }
        for e in &self.edges {
            let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", e.from, e.to, Letter::new(e.generator, false));
        }
        out.push_str("}\n");
        out
    }
}

/// Follows `w` from `start`; `None` if the path leaves the graph.
pub(crate) fn trace(t: &Transitions, start: usize, w: &Word) -> Option<usize> {
    w.letters().iter().try_fold(start, |v, &l| t.step(v, l))
}

fn oriented_edge(from: usize, to: usize, l: Letter) -> Edge {
    if l.is_inverse() {
        Edge {
            from: to,
            to: from,
            generator: l.generator(),
        }
    } else {
        Edge {
            from,
            to,
            generator: l.generator(),
        }
    }
}

struct EdgeList<'a>(&'a [Edge]);

impl Serialize for EdgeList<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for e in self.0 {
            let label = Letter::new(e.generator, false).to_string();
            seq.serialize_element(&(e.from, e.to, label))?;
        }
        seq.end()
    }
}

/// `{vertices, base, edges: [[from, to, "a"], ...]}`, edges sorted by
/// `(from, label, to)`.
impl Serialize for AGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AGraph", 3)?;
        st.serialize_field("vertices", &self.vertex_count)?;
        st.serialize_field("base", &self.base)?;
        st.serialize_field("edges", &EdgeList(&self.edges))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn cyc(s: &str) -> AGraph {
        AGraph::cycle_graph(&CyclicWord::new(&w(s)), f2()).unwrap()
    }

    #[test]
    fn single_fold() {
        let g = AGraph::new(
            f2(),
            3,
            0,
            vec![
                Edge { from: 0, to: 1, generator: 0 },
                Edge { from: 0, to: 2, generator: 0 },
            ],
        )
        .unwrap();
        assert!(!g.is_folded());
        let f = g.fold();
        assert_eq!(f.vertex_count(), 2);
        assert_eq!(f.volume(), 1);
        assert!(f.is_folded());
        assert_eq!(f.fold(), f);
    }

    #[test]
    fn rose_is_folded_and_fixed() {
        let rose = AGraph::rose(f2());
        assert!(rose.is_folded());
        assert_eq!(rose.fold(), rose);
        assert_eq!(rose.rank().unwrap(), 2);
        assert_eq!(rose.index().unwrap(), Index::Finite(1));
        assert_eq!(rose.maximal_arcs().len(), 2);
    }

    #[test]
    fn wedge_fold_keeps_membership() {
        let gens = [w("abA"), w("b")];
        let wedge = AGraph::wedge(&gens, f2()).unwrap();
        let folded = wedge.fold();
        assert_eq!(folded.vertex_count(), 2);
        assert!(folded.accepts_loop(&w("abA")).unwrap());
        assert!(folded.accepts_loop(&w("b")).unwrap());
        assert!(folded.accepts_loop(&w("abAb")).unwrap());
        assert!(!folded.accepts_loop(&w("a")).unwrap());
    }

    #[test]
    fn cycle_and_path_graphs() {
        let g = cyc("a");
        assert_eq!((g.vertex_count(), g.volume()), (1, 1));
        let g = cyc("abAB");
        assert_eq!((g.vertex_count(), g.volume()), (4, 4));
        assert_eq!(g.rank().unwrap(), 1);
        assert!(g.is_folded());
        assert_eq!(g.maximal_arcs().len(), 1);
        assert_eq!(g.index().unwrap(), Index::Infinite);

        let p = AGraph::path_graph(&w("ab"), f2()).unwrap();
        assert_eq!(p.vertex_count(), 3);
        assert_eq!(p.rank().unwrap(), 0);
        assert_eq!(p.fold(), p);
        assert!(AGraph::path_graph(&Word::identity(), f2()).is_err());
        assert!(AGraph::cycle_graph(&CyclicWord::new(&Word::identity()), f2()).is_err());
    }

    #[test]
    fn quotient_identity_and_single_block() {
        let g = cyc("abAB");
        assert_eq!(g.quotient(&VertexPartition::identity(4)).unwrap(), g.fold());
        let q = g.quotient(&VertexPartition::single_block(4)).unwrap();
        assert_eq!(q.canonical_form().unwrap(), AGraph::rose(f2()).canonical_form().unwrap());
        assert!(g.quotient(&VertexPartition::identity(3)).is_err());
        assert!(VertexPartition::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(VertexPartition::from_blocks(3, &[vec![0, 1]]).is_err());
    }

    #[test]
    fn rank_of_disconnected_graph_is_an_error() {
        let g = AGraph::new(f2(), 2, 0, vec![]).unwrap();
        assert!(g.rank().is_err());
    }

    #[test]
    fn index_two_double_cover() {
        let g = AGraph::new(
            f2(),
            2,
            0,
            vec![
                Edge { from: 0, to: 1, generator: 0 },
                Edge { from: 1, to: 0, generator: 0 },
                Edge { from: 0, to: 0, generator: 1 },
                Edge { from: 1, to: 1, generator: 1 },
            ],
        )
        .unwrap();
        assert_eq!(g.degrees(), vec![4, 4]);
        assert_eq!(g.index().unwrap(), Index::Finite(2));
        // The cover is the kernel of the map to Z/2 counting a-exponents.
        for s in ["aa", "b", "abA", "ab", "a"] {
            let word = w(s);
            let even = word.letters().iter().filter(|l| l.generator() == 0).count() % 2 == 0;
            assert_eq!(g.accepts_loop(&word).unwrap(), even, "{s}");
        }
    }

    #[test]
    fn reading_words() {
        let rose = AGraph::rose(f2());
        assert!(rose.reads_word(&w("abAABBab")).unwrap());
        let loop_a = AGraph::new(f2(), 1, 0, vec![Edge { from: 0, to: 0, generator: 0 }]).unwrap();
        assert!(loop_a.reads_word(&w("aaaaa")).unwrap());
        assert!(!loop_a.reads_word(&w("b")).unwrap());
        let unfolded = AGraph::wedge(&[w("a"), w("ab")], f2()).unwrap();
        assert!(unfolded.reads_word(&w("a")).is_err());
        assert!(unfolded.accepts_loop(&w("a")).is_err());
    }

    #[test]
    fn cycle_graph_accepts_powers() {
        let g = cyc("abAB");
        for k in 1..4 {
            assert!(g.accepts_loop(&w("abAB").pow(k)).unwrap());
        }
        assert!(!g.accepts_loop(&w("ab")).unwrap());
    }

    #[test]
    fn canonical_form_distinguishes_rose_and_loop() {
        let rose = AGraph::rose(f2());
        let loop_a = cyc("a");
        assert_ne!(rose.canonical_form().unwrap(), loop_a.canonical_form().unwrap());
        let back = AGraph::from_canonical(&rose.canonical_form().unwrap(), f2());
        assert_eq!(back, rose);
    }

    #[test]
    fn trim_removes_hanging_trees() {
        let g = AGraph::wedge(&[w("abA")], f2()).unwrap().fold();
        assert_eq!(g.vertex_count(), 2);
        let g2 = AGraph::new(
            f2(),
            3,
            0,
            vec![
                Edge { from: 0, to: 0, generator: 1 },
                Edge { from: 0, to: 1, generator: 0 },
                Edge { from: 1, to: 2, generator: 0 },
            ],
        )
        .unwrap();
        let core = g2.trim_to_core();
        assert_eq!(core.vertex_count(), 1);
        assert!(core.is_core());
    }

    #[test]
    fn dot_output_is_stable() {
        let g = cyc("abAB");
        let dot = g.to_dot();
        assert_eq!(dot, g.to_dot());
        assert!(dot.contains("0 [shape=doublecircle]"));
        assert_eq!(dot.matches("->").count(), 4);
        let rose = AGraph::rose(f2()).to_dot();
        assert_eq!(rose.matches("->").count(), 2);
        assert_eq!(rose.matches("shape=doublecircle").count(), 1);
    }

    #[test]
    fn json_edges_sorted() {
        let g = cyc("abAB");
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v["vertices"], 4);
        assert_eq!(v["base"], 0);
        let edges = v["edges"].as_array().unwrap();
        let keys: Vec<(u64, String, u64)> = edges
            .iter()
            .map(|e| (e[0].as_u64().unwrap(), e[2].as_str().unwrap().to_string(), e[1].as_u64().unwrap()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
