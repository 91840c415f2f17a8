//! Stallings folding over a union-find of vertices.
//!
//! Each union-find root owns a row of `2r` transition slots. Identifying two
//! roots merges their rows; a slot filled on both sides queues the two
//! targets for identification. Rows may hold stale (non-root) ids, which are
//! resolved through `find` on read.

use super::{Transitions, NONE};

pub(crate) struct Folder {
    slots: usize,
    parent: Vec<u32>,
    size: Vec<u32>,
    table: Vec<u32>,
    pending: Vec<(u32, u32)>,
}

impl Folder {
    pub(crate) fn new(vertex_count: usize, slots: usize) -> Folder {
        Folder {
            slots,
            parent: (0..vertex_count as u32).collect(),
            size: vec![1; vertex_count],
            table: vec![NONE; vertex_count * slots],
            pending: Vec::new(),
        }
    }

    /// Starts from an already folded transition table.
    pub(crate) fn from_transitions(t: &Transitions) -> Folder {
        let n = t.vertex_count();
        Folder {
            slots: t.slots,
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            table: t.table.clone(),
            pending: Vec::new(),
        }
    }

    pub(crate) fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    /// Adds the oriented edge `u --slot--> v` (and its inverse), folding on
    /// conflicts.
    pub(crate) fn add_edge(&mut self, u: usize, v: usize, slot: usize) {
        let ru = self.find(u as u32);
        let rv = self.find(v as u32);
        let fwd = ru as usize * self.slots + slot;
        if self.table[fwd] == NONE {
            self.table[fwd] = rv;
        } else {
            self.pending.push((self.table[fwd], rv));
        }
        let back = rv as usize * self.slots + (slot ^ 1);
        if self.table[back] == NONE {
            self.table[back] = ru;
        } else {
            self.pending.push((self.table[back], ru));
        }
        self.settle();
    }

    /// Identifies `x` and `y` and folds until stable.
    pub(crate) fn merge(&mut self, x: usize, y: usize) {
        self.pending.push((x as u32, y as u32));
        self.settle();
    }

    fn settle(&mut self) {
        while let Some((x, y)) = self.pending.pop() {
            let mut keep = self.find(x);
            let mut gone = self.find(y);
            if keep == gone {
                continue;
            }
            if self.size[gone as usize] > self.size[keep as usize]
                || (self.size[gone as usize] == self.size[keep as usize] && gone < keep)
            {
                std::mem::swap(&mut keep, &mut gone);
            }
            self.parent[gone as usize] = keep;
            self.size[keep as usize] += self.size[gone as usize];
            for s in 0..self.slots {
                let moved = self.table[gone as usize * self.slots + s];
                if moved == NONE {
                    continue;
                }
                let cell = keep as usize * self.slots + s;
                if self.table[cell] == NONE {
                    self.table[cell] = moved;
                } else {
                    self.pending.push((self.table[cell], moved));
                }
            }
        }
    }

    /// Compacts the roots (numbered in increasing order of root id) into a
    /// folded transition table; returns it with the image of `base`.
    pub(crate) fn finish(mut self, base: usize) -> (Transitions, usize) {
        let n = self.parent.len();
        let mut new_id = vec![NONE; n];
        let mut count = 0u32;
        for v in 0..n {
            if self.parent[v] == v as u32 {
                new_id[v] = count;
                count += 1;
            }
        }
        let mut table = vec![NONE; count as usize * self.slots];
        for v in 0..n {
            if self.parent[v] != v as u32 {
                continue;
            }
            for s in 0..self.slots {
                let t = self.table[v * self.slots + s];
                if t != NONE {
                    let rt = self.find(t);
                    table[new_id[v] as usize * self.slots + s] = new_id[rt as usize];
                }
            }
        }
        let b = self.find(base as u32);
        (
            Transitions {
                slots: self.slots,
                table,
            },
            new_id[b as usize] as usize,
        )
    }
}
