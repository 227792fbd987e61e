//! Isomorphism-free generation of closed-walk classes.
//!
//! A class is fixed by four independent choices, generated depth-first in
//! this order:
//!
//! 1. the vertex sequence in first-visit labelling (consecutive vertices
//!    differ, the walk returns to 1);
//! 2. which hyperedge each step uses, hyperedges numbered by first use;
//! 3. for every hyperedge, the visited vertices it contains beyond the
//!    endpoints of its own steps;
//! 4. the overlap pattern of the remaining anonymous members.
//!
//! Each choice is made in canonical form, so no two generated
//! representatives are equivalent and no isomorphism test is needed.
//! Hyperedges are kept as bitmasks over visited labels, which bounds the
//! walk length at 63.

use std::collections::BTreeMap;

use super::class::{blocks_from_masks, EdgeRecord, MinimalWalkClass, Step};

/// All classes of closed walks with `k` steps in `q`-uniform hypergraphs.
/// With `essential_only`, only classes whose skeleton is a hypertree.
pub fn enumerate_classes(k: usize, q: usize, essential_only: bool) -> Vec<MinimalWalkClass> {
    let mut out = Vec::new();
    for_each_class(k, q, essential_only, |c| out.push(c));
    out
}

/// Streams the classes of [`enumerate_classes`] into `visit` without
/// collecting them.
pub fn for_each_class(k: usize, q: usize, essential_only: bool, mut visit: impl FnMut(MinimalWalkClass)) {
    assert!(q >= 2, "hyperedges need at least two vertices");
    assert!(k < 64, "walk length {k} is beyond the bitmask representation");
    let mut gen = Generator {
        k,
        q,
        essential_only,
        verts: vec![1],
        edge_of: Vec::with_capacity(k),
        required: Vec::new(),
        visited: 1,
        visit: &mut visit,
    };
    gen.extend(0);
}

struct Generator<'a, F> {
    k: usize,
    q: usize,
    essential_only: bool,
    verts: Vec<u32>,
    edge_of: Vec<u32>,
    // visited-vertex bitmask of the step endpoints on each hyperedge
    required: Vec<u64>,
    visited: u32,
    visit: &'a mut F,
}

fn bit(v: u32) -> u64 {
    1 << (v - 1)
}

impl<F: FnMut(MinimalWalkClass)> Generator<'_, F> {
    fn extend(&mut self, i: usize) {
        if i == self.k {
            self.finish();
            return;
        }
        let cur = self.verts[i];
        let targets: Vec<u32> = if i + 1 == self.k {
            if cur == 1 {
                return;
            }
            vec![1]
        } else {
            (1..=self.visited + 1).filter(|&t| t != cur).collect()
        };
        for t in targets {
            let fresh = t == self.visited + 1;
            if fresh {
                self.visited += 1;
            }
            self.verts.push(t);
            let pair = bit(cur) | bit(t);
            let n_edges = self.required.len();
            for e in 0..=n_edges {
                let old = if e < n_edges { self.required[e] } else { 0 };
                let mask = old | pair;
                if mask.count_ones() as usize > self.q {
                    continue;
                }
                if e == n_edges {
                    self.required.push(mask);
                } else {
                    self.required[e] = mask;
                }
                self.edge_of.push(e as u32);
                self.extend(i + 1);
                self.edge_of.pop();
                if e == n_edges {
                    self.required.pop();
                } else {
                    self.required[e] = old;
                }
            }
            self.verts.pop();
            if fresh {
                self.visited -= 1;
            }
        }
    }

    fn finish(&mut self) {
        let n_edges = self.required.len();
        if self.essential_only {
            // In a hypertree every visited member of a hyperedge is an
            // endpoint of one of its steps, and anonymous members are private.
            let anonymous: usize = self.required.iter().map(|m| self.q - m.count_ones() as usize).sum();
            if self.visited as usize + anonymous != (self.q - 1) * n_edges + 1 {
                return;
            }
            let blocks: BTreeMap<u64, usize> = self
                .required
                .iter()
                .enumerate()
                .map(|(e, m)| (1u64 << e, self.q - m.count_ones() as usize))
                .collect();
            let members = self.required.clone();
            if distinct_edges(&members, &blocks) {
                let class = self.build(&members, &blocks);
                (self.visit)(class);
            }
            return;
        }
        let mut members = self.required.clone();
        self.choose_members(0, &mut members);
    }

    fn choose_members(&mut self, e: usize, members: &mut Vec<u64>) {
        if e == members.len() {
            let caps: Vec<usize> = members.iter().map(|m| self.q - m.count_ones() as usize).collect();
            let mut blocks = BTreeMap::new();
            let snapshot = members.clone();
            self.choose_overlaps(0, caps, &mut blocks, &snapshot);
            return;
        }
        let all = (1u64 << self.visited) - 1;
        let base = self.required[e];
        let free = all & !base;
        // every submask of the free visited vertices
        let mut sub = free;
        loop {
            let mask = base | sub;
            if mask.count_ones() as usize <= self.q {
                members[e] = mask;
                self.choose_members(e + 1, members);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
        members[e] = base;
    }

    // Anonymous members still owed by hyperedge `e` go to blocks whose
    // lowest hyperedge is `e`; earlier hyperedges are already settled.
    fn choose_overlaps(&mut self, e: usize, caps: Vec<usize>, blocks: &mut BTreeMap<u64, usize>, members: &[u64]) {
        let n = caps.len();
        if e == n {
            if distinct_edges(members, blocks) {
                let class = self.build(members, blocks);
                (self.visit)(class);
            }
            return;
        }
        if caps[e] == 0 {
            self.choose_overlaps(e + 1, caps, blocks, members);
            return;
        }
        let higher = n - e - 1;
        let alphas: Vec<u64> = (0..1u64 << higher).map(|rest| (1 << e) | (rest << (e + 1))).collect();
        self.spread(e, 0, &alphas, caps, blocks, members);
    }

    fn spread(
        &mut self,
        e: usize,
        idx: usize,
        alphas: &[u64],
        caps: Vec<usize>,
        blocks: &mut BTreeMap<u64, usize>,
        members: &[u64],
    ) {
        if caps[e] == 0 {
            self.choose_overlaps(e + 1, caps, blocks, members);
            return;
        }
        if idx == alphas.len() {
            return;
        }
        let alpha = alphas[idx];
        let room = (0..caps.len()).filter(|&j| alpha >> j & 1 == 1).map(|j| caps[j]).min().unwrap_or(0);
        for size in (0..=room).rev() {
            let mut next = caps.clone();
            for (j, c) in next.iter_mut().enumerate() {
                if alpha >> j & 1 == 1 {
                    *c -= size;
                }
            }
            if size > 0 {
                blocks.insert(alpha, size);
            }
            self.spread(e, idx + 1, alphas, next, blocks, members);
            if size > 0 {
                blocks.remove(&alpha);
            }
        }
    }

    fn build(&self, members: &[u64], blocks: &BTreeMap<u64, usize>) -> MinimalWalkClass {
        let steps: Vec<Step> = (0..self.k)
            .map(|i| Step { from: self.verts[i], edge: self.edge_of[i], to: self.verts[i + 1] })
            .collect();
        let mut traversals = vec![0; members.len()];
        for &e in &self.edge_of {
            traversals[e as usize] += 1;
        }
        let edges = members
            .iter()
            .map(|&m| {
                let visited: Vec<u32> = (1..=self.visited).filter(|&v| m & bit(v) != 0).collect();
                EdgeRecord { anonymous: self.q - visited.len(), visited }
            })
            .collect();
        MinimalWalkClass {
            q: self.q,
            steps,
            visited_count: self.visited,
            edges,
            overlap: blocks_from_masks(blocks),
            traversals,
        }
    }
}

// Two hyperedge objects with the same visited members must differ in their
// anonymous members, otherwise they are the same q-set.
fn distinct_edges(members: &[u64], blocks: &BTreeMap<u64, usize>) -> bool {
    for a in 0..members.len() {
        for b in a + 1..members.len() {
            if members[a] != members[b] {
                continue;
            }
            let separated = blocks.iter().any(|(&alpha, &size)| size > 0 && ((alpha >> a) & 1) != ((alpha >> b) & 1));
            if !separated {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    #[test]
    fn trivial_lengths() {
        for q in 2..=5 {
            let zero = enumerate_classes(0, q, false);
            assert_eq!(zero.len(), 1);
            assert_eq!(zero[0].vertex_count(), 1);
            assert!(zero[0].is_essential());
            assert!(enumerate_classes(1, q, false).is_empty());
            assert_eq!(enumerate_classes(2, q, true).len(), 1);
        }
    }

    #[test]
    fn four_step_essential_classes() {
        assert_eq!(enumerate_classes(4, 4, true).len(), 6);
        assert_eq!(enumerate_classes(4, 5, true).len(), 6);
        // no room for three or four vertices in one edge
        assert_eq!(enumerate_classes(4, 2, true).len(), 3);
        assert_eq!(enumerate_classes(4, 3, true).len(), 5);
    }

    #[test]
    fn generated_classes_are_valid_and_distinct() {
        for (k, q) in [(3, 3), (4, 3), (4, 2), (3, 4)] {
            let classes = enumerate_classes(k, q, false);
            let mut seen = HashSet::new();
            for c in &classes {
                c.validate().unwrap();
                assert!(seen.insert(c.clone()), "duplicate class {c:?}");
            }
            let essential: Vec<_> = classes.iter().filter(|c| c.is_essential()).cloned().collect();
            assert_eq!(essential, enumerate_classes(k, q, true));
        }
    }

    #[test]
    fn two_step_walks_share_a_pair() {
        // q = 3: one hyperedge used twice, or two hyperedges {1,2,a} and
        // {1,2,b} with a != b
        let classes = enumerate_classes(2, 3, false);
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().any(|c| c.edge_count() == 2 && c.vertex_count() == 4));
        // q = 2 has only one hyperedge through a pair
        assert_eq!(enumerate_classes(2, 2, false).len(), 1);
    }
}
