use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{AGraph, CanonicalForm, Index};
use crate::error::{input, Result};
use crate::words::{Alphabet, LetterMap, Word};

/// A finitely generated subgroup of `F_r`, held as its Stallings graph in
/// canonical numbering together with a spanning-tree free basis.
#[derive(Clone, Debug)]
pub struct Subgroup {
    graph: AGraph,
    basis: Vec<Word>,
    index: Index,
    canonical: CanonicalForm,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    /// Wraps a folded connected graph that is core with respect to its base.
    pub fn from_core_graph(g: &AGraph) -> Result<Subgroup> {
        if !g.is_folded() {
            return input("subgroup graph must be folded");
        }
        if !g.is_core() {
            return input("subgroup graph must be a connected core graph");
        }
        let canonical = g.canonical_form()?;
        let graph = AGraph::from_canonical(&canonical, g.alphabet());
        let basis = graph.basis_of()?.words().to_vec();
        let index = graph.index()?;
        Ok(Subgroup {
            graph,
            basis,
            index,
            canonical,
        })
    }

    /// The whole group `F_r`.
    pub fn whole(alphabet: Alphabet) -> Subgroup {
        Subgroup::from_core_graph(&AGraph::rose(alphabet)).expect("rose is a core graph")
    }

    pub fn graph(&self) -> &AGraph {
        &self.graph
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn index(&self) -> Index {
        self.index
    }

    pub fn canonical(&self) -> &CanonicalForm {
        &self.canonical
    }

    pub fn is_whole_group(&self) -> bool {
        self.index == Index::Finite(1)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.graph.accepts_loop(w).expect("subgroup graphs are folded")
    }

    /// `c H c⁻¹`.
    pub fn conjugate(&self, c: &Word) -> Subgroup {
        let gens: Vec<Word> = self.basis.iter().map(|b| b.conjugate_by(c)).collect();
        stallings_from_generators(&gens, self.graph.alphabet()).expect("conjugated basis stays in the alphabet")
    }

    /// Image under a letter permutation/inversion automorphism.
    pub fn image(&self, map: &LetterMap) -> Subgroup {
        Subgroup::from_core_graph(&self.graph.relabel(map)).expect("relabeling preserves core graphs")
    }
}

/// Stallings graph of `⟨gens⟩`: wedge of loops, fold, trim to the core.
/// Trivial generators are allowed; all-trivial input gives the trivial
/// subgroup.
pub fn stallings_from_generators(gens: &[Word], alphabet: Alphabet) -> Result<Subgroup> {
    if gens.is_empty() {
        return input("at least one generator is required");
    }
    let nontrivial: Vec<Word> = gens.iter().filter(|w| !w.is_empty()).cloned().collect();
    let g = AGraph::wedge(&nontrivial, alphabet)?.fold().trim_to_core();
    Subgroup::from_core_graph(&g)
}

impl Serialize for Subgroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Subgroup", 4)?;
        st.serialize_field("rank", &self.rank())?;
        st.serialize_field("index", &self.index)?;
        st.serialize_field("basis", &self.basis)?;
        st.serialize_field("graph", &self.graph)?;
        st.end()
    }
}
