//! Canonical byte strings for pointed folded connected graphs.
//!
//! In a folded graph every labeled path from the base is unique, so a
//! breadth-first traversal that visits slots in order `a, A, b, B, ...`
//! numbers the vertices the same way for any two isomorphic pointed graphs.
//! The encoding lists, per vertex in traversal order, the renumbered target of
//! each positive slot.

use std::fmt;

use super::{Transitions, NONE};
use crate::error::{input, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn vertex_count(&self) -> usize {
        u32::from_le_bytes(self.0[1..5].try_into().unwrap()) as usize
    }

    pub(crate) fn rank(&self) -> usize {
        self.0[0] as usize
    }

    /// Positive-slot targets: `(vertex, generator) -> target` per vertex row.
    pub(crate) fn decode(&self) -> Vec<Option<usize>> {
        let r = self.rank();
        let n = self.vertex_count();
        let width = self.0[5] as usize;
        let body = &self.0[6..];
        (0..n * r)
            .map(|i| {
                let chunk = &body[i * width..(i + 1) * width];
                let mut buf = [0u8; 4];
                buf[..width].copy_from_slice(chunk);
                match u32::from_le_bytes(buf) {
                    0 => None,
                    x => Some(x as usize - 1),
                }
            })
            .collect()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

/// Full transition table (both orientations) of an encoded graph, base 0.
pub(crate) fn transitions_from_canonical(form: &CanonicalForm) -> Transitions {
    let r = form.rank();
    let n = form.vertex_count();
    let slots = 2 * r;
    let mut table = vec![NONE; n * slots];
    for (i, t) in form.decode().into_iter().enumerate() {
        if let Some(to) = t {
            let (from, g) = (i / r, i % r);
            table[from * slots + 2 * g] = to as u32;
            table[to * slots + 2 * g + 1] = from as u32;
        }
    }
    Transitions { slots, table }
}

/// Breadth-first numbering from `base`; `None` if some vertex is unreachable.
pub(crate) fn bfs_order(t: &Transitions, base: usize) -> Option<Vec<u32>> {
    let n = t.vertex_count();
    let mut order = vec![NONE; n];
    let mut queue = Vec::with_capacity(n);
    order[base] = 0;
    queue.push(base);
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for s in 0..t.slots {
            let x = t.table[v * t.slots + s];
            if x != NONE && order[x as usize] == NONE {
                order[x as usize] = queue.len() as u32;
                queue.push(x as usize);
            }
        }
    }
    (queue.len() == n).then_some(order)
}

pub(crate) fn canonical_from_transitions(t: &Transitions, base: usize) -> Result<CanonicalForm> {
    let Some(order) = bfs_order(t, base) else {
        return input("canonical form needs a connected graph");
    };
    let n = t.vertex_count();
    let r = t.slots / 2;
    let mut inv = vec![0usize; n];
    for (v, &o) in order.iter().enumerate() {
        inv[o as usize] = v;
    }
    let width = if n < 255 {
        1
    } else if n < 65535 {
        2
    } else {
        4
    };
    let mut bytes = Vec::with_capacity(6 + n * r * width);
    bytes.push(r as u8);
    bytes.extend_from_slice(&(n as u32).to_le_bytes());
    bytes.push(width as u8);
    for &v in &inv {
        for g in 0..r {
            let x = t.table[v * t.slots + 2 * g];
            let code = if x == NONE { 0 } else { order[x as usize] + 1 };
            bytes.extend_from_slice(&code.to_le_bytes()[..width]);
        }
    }
    Ok(CanonicalForm(bytes))
}
