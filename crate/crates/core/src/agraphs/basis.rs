//! Spanning-tree bases of `π₁(Γ, ∗)` and rewriting of loops into them.

use super::{AGraph, Transitions, NONE};
use crate::error::{Error, Result};
use crate::words::{Letter, Word};

/// How the spanning tree is grown from the base vertex. Both visit letter
/// slots in order `a, A, b, B, ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TreeOrder {
    #[default]
    Breadth,
    Depth,
}

/// Free basis of `π₁(Γ, ∗)`: one generator `x_i` per non-tree edge, in edge
/// order. The basis word of a non-tree edge `u --a--> v` is
/// `label(∗ → u) · a · label(v → ∗)` along the tree.
#[derive(Clone, Debug)]
pub struct Basis {
    base: usize,
    transitions: Transitions,
    /// Edge index per `(vertex, slot)` cell.
    edge_at: Vec<u32>,
    /// Basis position of each edge, `None` for tree edges.
    position: Vec<Option<usize>>,
    tree: Vec<usize>,
    words: Vec<Word>,
}

impl Basis {
    pub(super) fn new(g: &AGraph, order: TreeOrder) -> Result<Basis> {
        let transitions = g.transitions()?;
        let k = transitions.slots;
        let n = g.vertex_count();
        let mut edge_at = vec![NONE; n * k];
        for (i, e) in g.edges().iter().enumerate() {
            edge_at[e.from * k + 2 * e.generator] = i as u32;
            edge_at[e.to * k + 2 * e.generator + 1] = i as u32;
        }

        let mut path_to: Vec<Option<Word>> = vec![None; n];
        let mut in_tree = vec![false; g.edges().len()];
        path_to[g.base()] = Some(Word::identity());
        let mut reached = 1;
        let mut visit = |v: usize, s: usize, path_to: &mut Vec<Option<Word>>| -> Option<usize> {
            let x = transitions.step(v, Letter::from_slot(s))?;
            if path_to[x].is_some() {
                return None;
            }
            path_to[x] = Some(path_to[v].as_ref().unwrap().concat(&Word::letter(Letter::from_slot(s))));
            in_tree[edge_at[v * k + s] as usize] = true;
            reached += 1;
            Some(x)
        };
        match order {
            TreeOrder::Breadth => {
                let mut queue = vec![g.base()];
                let mut head = 0;
                while head < queue.len() {
                    let v = queue[head];
                    head += 1;
                    for s in 0..k {
                        if let Some(x) = visit(v, s, &mut path_to) {
                            queue.push(x);
                        }
                    }
                }
            }
            TreeOrder::Depth => {
                let mut stack = vec![(g.base(), 0)];
                while let Some(top) = stack.last_mut() {
                    let (v, s) = *top;
                    if s == k {
                        stack.pop();
                        continue;
                    }
                    top.1 += 1;
                    if let Some(x) = visit(v, s, &mut path_to) {
                        stack.push((x, 0));
                    }
                }
            }
        }
        if reached != n {
            return Err(Error::Input("basis of a disconnected graph".into()));
        }

        let mut position = vec![None; g.edges().len()];
        let mut words = Vec::new();
        for (i, e) in g.edges().iter().enumerate() {
            if in_tree[i] {
                continue;
            }
            position[i] = Some(words.len());
            let to_origin = path_to[e.from].as_ref().unwrap();
            let from_terminus = path_to[e.to].as_ref().unwrap().inverse();
            words.push(
                to_origin
                    .concat(&Word::letter(Letter::new(e.generator, false)))
                    .concat(&from_terminus),
            );
        }
        let tree = (0..g.edges().len()).filter(|&i| in_tree[i]).collect();
        Ok(Basis {
            base: g.base(),
            transitions,
            edge_at,
            position,
            tree,
            words,
        })
    }

    /// Rank of `π₁(Γ, ∗)`.
    pub fn rank(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Edge indices of the spanning tree.
    pub fn tree_edges(&self) -> &[usize] {
        &self.tree
    }

    /// Expresses a loop `w` at the base in the basis, as a reduced word over
    /// `x_0, ..., x_{m-1}` (rendered `a, b, ...`).
    pub fn rewrite(&self, w: &Word) -> Result<Word> {
        let k = self.transitions.slots;
        let mut v = self.base;
        let mut out = Vec::new();
        for &l in w.letters() {
            let Some(x) = self.transitions.step(v, l) else {
                return Err(Error::Membership { word: w.to_string() });
            };
            let e = self.edge_at[v * k + l.slot()] as usize;
            if let Some(i) = self.position[e] {
                out.push(Letter::new(i, l.is_inverse()));
            }
            v = x;
        }
        if v != self.base {
            return Err(Error::Membership { word: w.to_string() });
        }
        Ok(Word::reduce(out))
    }

    /// Substitutes the basis words into a word over `x_i`.
    pub fn evaluate(&self, x: &Word) -> Word {
        Word::reduce(x.letters().iter().flat_map(|l| {
            let b = &self.words[l.generator()];
            if l.is_inverse() {
                b.inverse().letters().to_vec()
            } else {
                b.letters().to_vec()
            }
        }))
    }
}
