//! Sparse symmetric adjacency matrices.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::hypergraph::SampledHypergraph;

/// Symmetric matrix in compressed-row form with an all-zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyMatrix {
    n: usize,
    row_start: Vec<usize>,
    cols: Vec<u32>,
    values: Vec<f64>,
}

/// `A_ij = Σ weight(e)` over hyperedges `e ∋ i, j` with `i ≠ j`.
pub fn assemble_adjacency(h: &SampledHypergraph) -> AdjacencyMatrix {
    // accumulating per upper-triangle entry in edge order keeps the floating
    // sums, and hence every downstream number, independent of anything else
    let mut upper: BTreeMap<(u32, u32), f64> = BTreeMap::new();
    for (edge, w) in &h.edges {
        for (a, &i) in edge.iter().enumerate() {
            for &j in &edge[a + 1..] {
                let key = if i < j { (i, j) } else { (j, i) };
                *upper.entry(key).or_insert(0.0) += w;
            }
        }
    }
    let mut rows: Vec<Vec<(u32, f64)>> = vec![Vec::new(); h.n];
    for (&(i, j), &v) in &upper {
        rows[i as usize].push((j, v));
        rows[j as usize].push((i, v));
    }
    let mut row_start = Vec::with_capacity(h.n + 1);
    let mut cols = Vec::new();
    let mut values = Vec::new();
    row_start.push(0);
    for mut row in rows {
        row.sort_unstable_by_key(|&(c, _)| c);
        for (c, v) in row {
            cols.push(c);
            values.push(v);
        }
        row_start.push(cols.len());
    }
    AdjacencyMatrix { n: h.n, row_start, cols, values }
}

impl AdjacencyMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, row_start: vec![0; n + 1], cols: Vec::new(), values: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Stored entries, counting both `(i, j)` and `(j, i)`.
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_start[i]..self.row_start[i + 1];
        self.cols[range.clone()].iter().map(|&c| c as usize).zip(self.values[range].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.row(i).find(|&(c, _)| c == j).map_or(0.0, |(_, v)| v)
    }

    /// `out = A x`.
    pub fn matvec(&self, x: &[f64], out: &mut [f64]) {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.row(i).map(|(c, v)| v * x[c]).sum();
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                m[(i, j)] = v;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyper(n: usize, q: usize, edges: &[(&[u32], f64)]) -> SampledHypergraph {
        SampledHypergraph { n, q, edges: edges.iter().map(|(e, w)| (e.to_vec(), *w)).collect() }
    }

    #[test]
    fn empty_is_zero() {
        let a = assemble_adjacency(&hyper(5, 3, &[]));
        assert_eq!(a.to_dense(), DMatrix::zeros(5, 5));
        assert_eq!(a, AdjacencyMatrix::zeros(5));
    }

    #[test]
    fn single_hyperedge_fills_its_pairs() {
        let a = assemble_adjacency(&hyper(4, 3, &[(&[0, 1, 2], 2.0)]));
        let d = a.to_dense();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i != j && i < 3 && j < 3 { 2.0 } else { 0.0 };
                assert_eq!(d[(i, j)], expected, "({i},{j})");
            }
        }
    }

    #[test]
    fn overlapping_hyperedges_add() {
        let a = assemble_adjacency(&hyper(4, 3, &[(&[0, 1, 2], 1.0), (&[0, 1, 3], 1.0)]));
        assert_eq!(a.get(0, 1), 2.0);
        assert_eq!(a.get(1, 0), 2.0);
        assert_eq!(a.get(2, 3), 0.0);
        assert_eq!(a.get(0, 3), 1.0);
    }

    #[test]
    fn matvec_matches_dense() {
        let a = assemble_adjacency(&hyper(5, 3, &[(&[0, 1, 2], 1.5), (&[1, 3, 4], -2.0), (&[0, 2, 4], 0.25)]));
        let x = [1.0, -2.0, 3.0, 0.5, 4.0];
        let mut y = [0.0; 5];
        a.matvec(&x, &mut y);
        let dense = a.to_dense() * nalgebra::DVector::from_column_slice(&x);
        for i in 0..5 {
            assert_eq!(y[i], dense[i]);
        }
    }
}
