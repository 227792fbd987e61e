//! Normalized trace powers `Tr(A^k) / N`.

use nalgebra::DMatrix;

use crate::adjacency::AdjacencyMatrix;

/// `M̂_0..=M̂_{k_max}` by sparse matrix-vector products.
///
/// `Tr(A^k) = Σ_i <A^a e_i, A^b e_i>` with `a = ⌊k/2⌋`, `b = ⌈k/2⌉`, so only
/// powers up to `⌈k_max/2⌉` of each basis vector are needed.
pub fn empirical_moments(a: &AdjacencyMatrix, k_max: usize) -> Vec<f64> {
    let n = a.dim();
    let mut traces = vec![0.0; k_max + 1];
    if n == 0 {
        return traces;
    }
    let depth = k_max.div_ceil(2);
    let mut powers = vec![vec![0.0; n]; depth + 1];
    for i in 0..n {
        powers[0].iter_mut().for_each(|v| *v = 0.0);
        powers[0][i] = 1.0;
        for t in 1..=depth {
            let (done, rest) = powers.split_at_mut(t);
            a.matvec(&done[t - 1], &mut rest[0]);
        }
        for (k, tr) in traces.iter_mut().enumerate() {
            let (lo, hi) = (k / 2, k - k / 2);
            *tr += powers[lo].iter().zip(&powers[hi]).map(|(x, y)| x * y).sum::<f64>();
        }
    }
    traces.iter().map(|t| t / n as f64).collect()
}

/// Same quantity by repeated dense multiplication; a cross-check.
pub fn dense_trace_moments(a: &DMatrix<f64>, k_max: usize) -> Vec<f64> {
    let n = a.nrows();
    let mut out = Vec::with_capacity(k_max + 1);
    let mut power = DMatrix::<f64>::identity(n, n);
    for k in 0..=k_max {
        if k > 0 {
            power = &power * a;
        }
        out.push(power.trace() / n as f64);
    }
    out
}

/// Full spectrum via the symmetric eigensolver, ascending. `None` when the
/// solver does not converge.
pub fn eigenvalues(a: &AdjacencyMatrix) -> Option<Vec<f64>> {
    let eig = a.to_dense().try_symmetric_eigen(f64::EPSILON, 100_000)?;
    let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    Some(v)
}

/// `Σ λ_i^k / N`.
pub fn moments_from_eigenvalues(eigs: &[f64], k_max: usize) -> Vec<f64> {
    let n = eigs.len() as f64;
    (0..=k_max).map(|k| eigs.iter().map(|l| l.powi(k as i32)).sum::<f64>() / n).collect()
}

/// Scale for comparing the two moment paths: `Σ |λ_i|^k / N`, which bounds
/// `|M̂_k|` and does not vanish when odd moments cancel.
pub fn absolute_moments(eigs: &[f64], k_max: usize) -> Vec<f64> {
    let n = eigs.len() as f64;
    (0..=k_max).map(|k| eigs.iter().map(|l| l.abs().powi(k as i32)).sum::<f64>() / n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjacency::assemble_adjacency;
    use crate::hypergraph::SampledHypergraph;

    #[test]
    fn zero_matrix_has_zero_moments() {
        let m = empirical_moments(&AdjacencyMatrix::zeros(6), 5);
        assert_eq!(m, vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn single_graph_edge() {
        let c = 1.5;
        let n = 7;
        let h = SampledHypergraph { n, q: 2, edges: vec![(vec![2, 5], c)] };
        let m = empirical_moments(&assemble_adjacency(&h), 4);
        assert_eq!(m[1], 0.0);
        assert_eq!(m[2], 2.0 * c * c / n as f64);
        assert_eq!(m[3], 0.0);
        assert_eq!(m[4], 2.0 * c.powi(4) / n as f64);
    }

    #[test]
    fn two_by_two_block_spectrum() {
        let h = SampledHypergraph { n: 5, q: 2, edges: vec![(vec![0, 1], 1.0)] };
        let eigs = eigenvalues(&assemble_adjacency(&h)).unwrap();
        let expect = [-1.0, 0.0, 0.0, 0.0, 1.0];
        for (l, e) in eigs.iter().zip(expect) {
            assert!((l - e).abs() < 1e-12);
        }
    }

    #[test]
    fn three_paths_agree() {
        let h = SampledHypergraph {
            n: 6,
            q: 3,
            edges: vec![(vec![0, 1, 2], 1.0), (vec![1, 2, 3], -0.5), (vec![2, 4, 5], 2.0), (vec![0, 3, 5], 0.75)],
        };
        let a = assemble_adjacency(&h);
        let sparse = empirical_moments(&a, 8);
        let dense = dense_trace_moments(&a.to_dense(), 8);
        let eigs = eigenvalues(&a).unwrap();
        let spectral = moments_from_eigenvalues(&eigs, 8);
        let scale = absolute_moments(&eigs, 8);
        for k in 0..=8 {
            assert!((sparse[k] - dense[k]).abs() <= 1e-12 * scale[k].max(1.0), "k={k}");
            assert!((sparse[k] - spectral[k]).abs() <= 1e-9 * scale[k], "k={k}");
        }
    }
}
