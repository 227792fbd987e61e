//! Canonical representatives of closed-walk equivalence classes.
//!
//! Visited vertices carry labels `1, 2, ...` in first-visit order and
//! hyperedges are numbered by first use. Hyperedge members the walk never
//! stands on are anonymous; they are interchangeable among themselves, so a
//! class only records how many anonymous vertices sit in exactly each set
//! `α` of hyperedges (the overlap blocks).

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{factorial, falling_factorial, inv_factorial};
use crate::error::{MomentError, Result};
use crate::params::{ModelParams, WeightMomentSeq};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Step {
    pub from: u32,
    pub edge: u32,
    pub to: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRecord {
    /// Walk-visited members, sorted.
    pub visited: Vec<u32>,
    /// Number of anonymous members, `q - visited.len()`.
    pub anonymous: usize,
}

/// `size` anonymous vertices belong to exactly the hyperedges in `edges`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OverlapBlock {
    pub edges: Vec<u32>,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MinimalWalkClass {
    pub q: usize,
    pub steps: Vec<Step>,
    pub visited_count: u32,
    pub edges: Vec<EdgeRecord>,
    /// Nonzero blocks only, ordered by the bitmask of their edge set.
    pub overlap: Vec<OverlapBlock>,
    pub traversals: Vec<usize>,
}

/// A hyperedge member in an explicitly written walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Member {
    Visited(u32),
    Anonymous(u32),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassContribution<T> {
    pub value: T,
    pub essential: bool,
}

impl MinimalWalkClass {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `|V_w|`: visited plus anonymous vertices.
    pub fn vertex_count(&self) -> usize {
        self.visited_count as usize + self.overlap.iter().map(|b| b.size).sum::<usize>()
    }

    /// Skeleton is a hypertree: `|V| = (q-1)|E| + 1`.
    pub fn is_essential(&self) -> bool {
        self.vertex_count() == (self.q - 1) * self.edge_count() + 1
    }

    /// Number of steps leaving the root.
    pub fn root_departures(&self) -> usize {
        self.steps.iter().filter(|s| s.from == 1).count()
    }

    /// Contribution to the `N → ∞` moment: `∏_e p X_{n(e)} / (q - |visited(e)|)!`
    /// for essential classes, zero otherwise.
    pub fn limit_contribution<T: Scalar>(
        &self,
        params: &ModelParams<T>,
        x: &WeightMomentSeq<T>,
    ) -> Result<ClassContribution<T>> {
        let essential = self.is_essential();
        if !essential {
            return Ok(ClassContribution { value: T::zero(), essential });
        }
        let mut value = T::one();
        for (e, n) in self.edges.iter().zip(&self.traversals) {
            let slots = (self.q - e.visited.len()) as u64;
            value = value * params.p().clone() * x.get(*n)?.clone() * inv_factorial::<T>(slots);
        }
        Ok(ClassContribution { value, essential })
    }

    /// Exact contribution of the whole class to `E Tr(A^k) / N` at size `n`:
    /// `p^|E| ∏ X_{n(e)} · N(N-1)…(N-|V|+1) / (N^{(q-1)|E|+1} ∏_α |β_α|!)`.
    pub fn finite_contribution<T: Scalar>(
        &self,
        n: u64,
        params: &ModelParams<T>,
        x: &WeightMomentSeq<T>,
    ) -> Result<T> {
        let e = self.edge_count();
        let mut value = params.p().powu(e as u32);
        for t in &self.traversals {
            value = value * x.get(*t)?.clone();
        }
        let mut denom = BigUint::from(n).pow(((self.q - 1) * e + 1) as u32);
        for b in &self.overlap {
            denom *= factorial(b.size as u64);
        }
        let count = falling_factorial(n, self.vertex_count() as u64);
        Ok(value * T::from_biguint(&count) / T::from_biguint(&denom))
    }

    /// Builds a class from an explicit walk. `vertices` is `w_1, ..., w_{k+1}`
    /// (closing vertex included); `edges[i]` lists the `q` members of the
    /// hyperedge used by step `i`.
    pub fn from_labeled_walk(q: usize, vertices: &[u32], edges: &[Vec<Member>]) -> Result<Self> {
        let bad = |m: String| Err(MomentError::InvalidWalk(m));
        if vertices.is_empty() || edges.len() + 1 != vertices.len() {
            return bad(format!("{} vertices for {} steps", vertices.len(), edges.len()));
        }
        let mut max_label = 0;
        for &v in vertices {
            if v > max_label + 1 || v == 0 {
                return bad(format!("vertex {v} breaks first-visit labelling"));
            }
            max_label = max_label.max(v);
        }

        let mut edge_ids: BTreeMap<Vec<Member>, u32> = BTreeMap::new();
        let mut members_of: Vec<Vec<Member>> = Vec::new();
        let mut steps = Vec::with_capacity(edges.len());
        for (i, members) in edges.iter().enumerate() {
            let mut sorted = members.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != q || members.len() != q {
                return bad(format!("step {i}: hyperedge must have {q} distinct members"));
            }
            for m in &sorted {
                if let Member::Visited(v) = m {
                    if *v == 0 || *v > max_label {
                        return bad(format!("step {i}: member {v} is never visited"));
                    }
                }
            }
            let next = edge_ids.len() as u32;
            let id = *edge_ids.entry(sorted.clone()).or_insert_with(|| {
                members_of.push(sorted);
                next
            });
            steps.push(Step { from: vertices[i], edge: id, to: vertices[i + 1] });
        }

        let mut traversals = vec![0; members_of.len()];
        for s in &steps {
            traversals[s.edge as usize] += 1;
        }
        let records = members_of
            .iter()
            .map(|ms| {
                let visited: Vec<u32> = ms
                    .iter()
                    .filter_map(|m| match m {
                        Member::Visited(v) => Some(*v),
                        Member::Anonymous(_) => None,
                    })
                    .collect();
                EdgeRecord { anonymous: q - visited.len(), visited }
            })
            .collect();

        let mut blocks: BTreeMap<u64, usize> = BTreeMap::new();
        let mut anon: BTreeMap<u32, u64> = BTreeMap::new();
        for (e, ms) in members_of.iter().enumerate() {
            for m in ms {
                if let Member::Anonymous(a) = m {
                    *anon.entry(*a).or_default() |= 1 << e;
                }
            }
        }
        for mask in anon.values() {
            *blocks.entry(*mask).or_default() += 1;
        }

        let class = Self {
            q,
            steps,
            visited_count: max_label,
            edges: records,
            overlap: blocks_from_masks(&blocks),
            traversals,
        };
        class.validate()?;
        Ok(class)
    }

    /// Checks the structural invariants of a class representative.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(MomentError::InvalidWalk(m));
        if let (Some(first), Some(last)) = (self.steps.first(), self.steps.last()) {
            if first.from != 1 || last.to != 1 {
                return bad("walk is not closed at the root".into());
            }
        }
        let mut seen = 1;
        for (i, s) in self.steps.iter().enumerate() {
            if s.from == s.to {
                return bad(format!("step {i} stays at vertex {}", s.from));
            }
            if i > 0 && self.steps[i - 1].to != s.from {
                return bad(format!("step {i} does not continue the walk"));
            }
            if s.to > seen + 1 {
                return bad(format!("step {i} skips a first-visit label"));
            }
            seen = seen.max(s.to);
            let Some(e) = self.edges.get(s.edge as usize) else {
                return bad(format!("step {i} uses unknown hyperedge {}", s.edge));
            };
            if !e.visited.contains(&s.from) || !e.visited.contains(&s.to) {
                return bad(format!("step {i} leaves hyperedge {}", s.edge));
            }
        }
        if seen != self.visited_count.max(1) {
            return bad("visited count does not match the walk".into());
        }
        for (id, e) in self.edges.iter().enumerate() {
            let shared: usize =
                self.overlap.iter().filter(|b| b.edges.contains(&(id as u32))).map(|b| b.size).sum();
            if e.visited.len() + shared != self.q || e.anonymous != shared {
                return bad(format!("hyperedge {id} does not have {} members", self.q));
            }
        }
        let mut counts = vec![0; self.edges.len()];
        for s in &self.steps {
            counts[s.edge as usize] += 1;
        }
        if counts != self.traversals {
            return bad("traversal counts do not match the steps".into());
        }
        Ok(())
    }
}

pub(crate) fn blocks_from_masks(blocks: &BTreeMap<u64, usize>) -> Vec<OverlapBlock> {
    blocks
        .iter()
        .filter(|(_, &size)| size > 0)
        .map(|(&mask, &size)| OverlapBlock {
            edges: (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b as u32).collect(),
            size,
        })
        .collect()
}

/// Free-function form of [`MinimalWalkClass::is_essential`] for an
/// arbitrary hyperedge size.
pub fn is_essential(w: &MinimalWalkClass, q: usize) -> bool {
    w.vertex_count() == (q - 1) * w.edge_count() + 1
}
