//! Counts of minimal walks confined to a single hyperedge.
//!
//! `K(κ, j, f)` is the number of walks that start at vertex 1, end at `j`,
//! visit exactly the vertices `1..=κ` (labelled in first-visit order), never
//! stay in place, and leave vertex `i` exactly `f_i` times. The count does
//! not depend on the hyperedge size `q`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{MomentError, Result};

/// Per-vertex departure counts within one hyperedge, in first-visit order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeVector(Vec<u32>);

impl EdgeVector {
    pub fn new(f: Vec<u32>) -> Self {
        Self(f)
    }

    pub fn kappa(&self) -> usize {
        self.0.len()
    }

    /// Total number of steps, `||f||_1`.
    pub fn norm(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x >= 1)
    }
}

impl From<Vec<u32>> for EdgeVector {
    fn from(f: Vec<u32>) -> Self {
        Self(f)
    }
}

/// Memo table for `K(κ, j, f)`.
#[derive(Debug, Default, Clone)]
pub struct KTable {
    memo: HashMap<(usize, Vec<u32>), BigUint>,
}

impl KTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    pub fn k_count(&mut self, kappa: usize, j: usize, f: &EdgeVector) -> Result<BigUint> {
        if f.kappa() != kappa {
            return Err(MomentError::DimensionMismatch { kappa, len: f.kappa() });
        }
        if j == 0 || j > kappa {
            return Err(MomentError::IndexOutOfRange { j, kappa });
        }
        Ok(self.count(j, &f.0))
    }

    // Peels off the last step. Either it ends at an already-visited vertex
    // (stay at size κ), or it is the first visit to κ, in which case no step
    // can start from κ and the prefix lives on κ-1 vertices.
    fn count(&mut self, j: usize, f: &[u32]) -> BigUint {
        let kappa = f.len();
        if kappa == 1 {
            return if j == 1 && f[0] == 0 { BigUint::one() } else { BigUint::zero() };
        }
        let steps: u32 = f.iter().sum();
        if (steps as usize) < kappa - 1 {
            return BigUint::zero();
        }
        let key = (j, f.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }

        let mut total = BigUint::zero();
        let mut g = f.to_vec();
        for a in 1..=kappa {
            if a == j || g[a - 1] == 0 {
                continue;
            }
            g[a - 1] -= 1;
            total += self.count(a, &g);
            g[a - 1] += 1;
        }
        if j == kappa && f[kappa - 1] == 0 {
            let mut h = f[..kappa - 1].to_vec();
            for a in 1..kappa {
                if h[a - 1] == 0 {
                    continue;
                }
                h[a - 1] -= 1;
                total += self.count(a, &h);
                h[a - 1] += 1;
            }
        }

        self.memo.insert(key, total.clone());
        total
    }
}

/// One-shot `K(κ, j, f)` with a throwaway memo table.
pub fn k_count(kappa: usize, j: usize, f: &EdgeVector) -> Result<BigUint> {
    KTable::new().k_count(kappa, j, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(kappa: usize, j: usize, f: &[u32]) -> u64 {
        let v = k_count(kappa, j, &EdgeVector::new(f.to_vec())).unwrap();
        u64::try_from(v).unwrap()
    }

    #[test]
    fn base_cases() {
        assert_eq!(k(1, 1, &[0]), 1);
        assert_eq!(k(1, 1, &[1]), 0);
        assert_eq!(k(2, 1, &[0, 0]), 0);
    }

    #[test]
    fn small_walks() {
        // 1->2->1
        assert_eq!(k(2, 1, &[1, 1]), 1);
        // 1->2
        assert_eq!(k(2, 2, &[1, 0]), 1);
        // 1->2->3->1
        assert_eq!(k(3, 1, &[1, 1, 1]), 1);
        // 1->2->1->3->1
        assert_eq!(k(3, 1, &[2, 1, 1]), 1);
        // a closed walk on two vertices alternates
        assert_eq!(k(2, 1, &[2, 1]), 0);
        assert_eq!(k(2, 1, &[3, 3]), 1);
    }

    #[test]
    fn errors() {
        let f = EdgeVector::new(vec![1, 1]);
        assert_eq!(k_count(3, 1, &f), Err(MomentError::DimensionMismatch { kappa: 3, len: 2 }));
        assert_eq!(k_count(2, 3, &f), Err(MomentError::IndexOutOfRange { j: 3, kappa: 2 }));
        assert_eq!(k_count(2, 0, &f), Err(MomentError::IndexOutOfRange { j: 0, kappa: 2 }));
    }

    #[test]
    fn short_walks_cannot_cover() {
        let mut t = KTable::new();
        for j in 1..=4 {
            assert!(t.k_count(4, j, &EdgeVector::new(vec![1, 1, 0, 0])).unwrap().is_zero());
        }
    }
}
