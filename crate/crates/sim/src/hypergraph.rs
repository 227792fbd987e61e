//! Diluted hypergraph sampling.

use hypermoment::{BigRational, Scalar};
use rand::seq::index;
use rand::Rng;
use rand_distr::{Binomial, Distribution, Geometric};
use serde::{Deserialize, Serialize};

use crate::distribution::WeightDistribution;
use crate::error::{Result, SimError};

/// Above this many candidate subsets the automatic choice switches from
/// walking every subset to drawing the edge count first.
pub const BERNOULLI_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeSampler {
    #[default]
    Auto,
    /// Independent coin per subset, in lexicographic order. Absent runs are
    /// skipped with geometric gaps, which is the same product law.
    Bernoulli,
    /// `Binomial(C(N,q), prob)` edge count, then that many distinct subsets
    /// uniformly at random.
    Binomial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledHypergraph {
    pub n: usize,
    pub q: usize,
    /// Sorted vertex lists in lexicographic order, with weights.
    pub edges: Vec<(Vec<u32>, f64)>,
}

impl SampledHypergraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// `C(n, q)`, or `None` past `u128`.
pub fn subset_count(n: usize, q: usize) -> Option<u128> {
    if q > n {
        return Some(0);
    }
    let q = q.min(n - q) as u128;
    let mut acc: u128 = 1;
    for i in 0..q {
        acc = acc.checked_mul(n as u128 - i)? / (i + 1);
    }
    Some(acc)
}

/// Per-subset inclusion probability `p / N^(q-1)`, checked to be at most 1.
pub fn edge_probability(n: usize, q: usize, p: &BigRational) -> Result<f64> {
    if n < q {
        return Err(SimError::InvalidParameter(format!("need N >= q, got N = {n}, q = {q}")));
    }
    if *p <= BigRational::from_u64(0) {
        return Err(SimError::InvalidParameter(format!("p must be positive, got {p}")));
    }
    let scale = BigRational::from_u64(n as u64).powu(q as u32 - 1);
    let prob = p.clone() / scale;
    if prob > BigRational::from_u64(1) {
        return Err(SimError::InvalidParameter(format!(
            "p / N^(q-1) = {prob} exceeds 1 (N = {n}, q = {q}, p = {p})"
        )));
    }
    Ok(prob.to_f64())
}

/// The `rank`-th `q`-subset of `[n]` in lexicographic order.
fn unrank(mut rank: u128, n: usize, q: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(q);
    let mut next = 0usize;
    for slot in 0..q {
        let remaining = q - slot - 1;
        loop {
            let block = subset_count(n - next - 1, remaining).expect("fits: bounded by C(n, q)");
            if rank < block {
                break;
            }
            rank -= block;
            next += 1;
        }
        out.push(next as u32);
        next += 1;
    }
    out
}

/// Advances `c` to the next `q`-subset of `[n]` in lexicographic order.
fn advance(c: &mut [u32], n: usize) -> bool {
    let q = c.len();
    let mut i = q;
    while i > 0 {
        i -= 1;
        if (c[i] as usize) < n - q + i {
            c[i] += 1;
            for j in i + 1..q {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn bernoulli_ranks<R: Rng + ?Sized>(total: u128, prob: f64, rng: &mut R) -> Vec<u128> {
    let mut out = Vec::new();
    if prob <= 0.0 {
        return out;
    }
    let gap = Geometric::new(prob).expect("probability checked");
    let mut pos: u128 = 0;
    loop {
        pos += u128::from(gap.sample(rng));
        if pos >= total {
            return out;
        }
        out.push(pos);
        pos += 1;
    }
}

fn binomial_ranks<R: Rng + ?Sized>(total: u128, prob: f64, rng: &mut R) -> Result<Vec<u128>> {
    let total_u64 = u64::try_from(total)
        .map_err(|_| SimError::InvalidParameter(format!("{total} candidate subsets exceed the sampler range")))?;
    let count = Binomial::new(total_u64, prob).expect("probability checked").sample(rng);
    let length = usize::try_from(total_u64)
        .map_err(|_| SimError::InvalidParameter(format!("{total} candidate subsets exceed the sampler range")))?;
    let mut ranks: Vec<u128> =
        index::sample(rng, length, count as usize).into_iter().map(|i| i as u128).collect();
    ranks.sort_unstable();
    Ok(ranks)
}

/// Draws the edge set, then one weight per edge in edge order.
pub fn sample_hypergraph<R: Rng + ?Sized>(
    n: usize,
    q: usize,
    p: &BigRational,
    dist: &WeightDistribution,
    sampler: EdgeSampler,
    rng: &mut R,
) -> Result<SampledHypergraph> {
    let prob = edge_probability(n, q, p)?;
    let total = subset_count(n, q)
        .ok_or_else(|| SimError::InvalidParameter(format!("C({n}, {q}) overflows")))?;
    let use_bernoulli = match sampler {
        EdgeSampler::Auto => total <= BERNOULLI_LIMIT,
        EdgeSampler::Bernoulli => true,
        EdgeSampler::Binomial => false,
    };
    let ranks = if use_bernoulli { bernoulli_ranks(total, prob, rng) } else { binomial_ranks(total, prob, rng)? };

    let mut subsets = Vec::with_capacity(ranks.len());
    if use_bernoulli && ranks.len() as u128 * 64 > total {
        // dense: walking the subsets is cheaper than unranking each one
        let mut cur: Vec<u32> = (0..q as u32).collect();
        let mut at: u128 = 0;
        for &r in &ranks {
            while at < r {
                advance(&mut cur, n);
                at += 1;
            }
            subsets.push(cur.clone());
        }
    } else {
        subsets.extend(ranks.iter().map(|&r| unrank(r, n, q)));
    }

    let edges = subsets.into_iter().map(|s| (s, dist.sample(rng))).collect();
    Ok(SampledHypergraph { n, q, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hypermoment::ratio;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unrank_walks_lexicographic_order() {
        for (n, q) in [(5usize, 2usize), (6, 3), (7, 4), (4, 4)] {
            let mut cur: Vec<u32> = (0..q as u32).collect();
            let total = subset_count(n, q).unwrap();
            for r in 0..total {
                assert_eq!(unrank(r, n, q), cur);
                let more = advance(&mut cur, n);
                assert_eq!(more, r + 1 < total);
            }
        }
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subset_count(100, 3), Some(161_700));
        assert_eq!(subset_count(3, 5), Some(0));
        assert_eq!(subset_count(10, 10), Some(1));
    }

    #[test]
    fn forced_single_edge() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for sampler in [EdgeSampler::Bernoulli, EdgeSampler::Binomial] {
            let h = sample_hypergraph(3, 3, &ratio(9, 1), &WeightDistribution::Sign, sampler, &mut rng).unwrap();
            assert_eq!(h.edges.len(), 1);
            assert_eq!(h.edges[0].0, vec![0, 1, 2]);
        }
    }

    #[test]
    fn rejects_probability_above_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let err = sample_hypergraph(4, 3, &ratio(17, 1), &WeightDistribution::Sign, EdgeSampler::Auto, &mut rng);
        assert!(matches!(err, Err(SimError::InvalidParameter(_))));
        let err = sample_hypergraph(2, 3, &ratio(1, 1), &WeightDistribution::Sign, EdgeSampler::Auto, &mut rng);
        assert!(matches!(err, Err(SimError::InvalidParameter(_))));
    }

    #[test]
    fn tiny_p_gives_empty_hypergraph() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let p = ratio(1, 1_000_000_000);
        for sampler in [EdgeSampler::Bernoulli, EdgeSampler::Binomial] {
            let h = sample_hypergraph(20, 3, &p, &WeightDistribution::Sign, sampler, &mut rng).unwrap();
            assert!(h.edges.is_empty());
        }
    }

    #[test]
    fn edges_are_distinct_sorted_subsets() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for sampler in [EdgeSampler::Bernoulli, EdgeSampler::Binomial] {
            let h = sample_hypergraph(12, 3, &ratio(30, 1), &WeightDistribution::Sign, sampler, &mut rng).unwrap();
            assert!(!h.edges.is_empty());
            for w in h.edges.windows(2) {
                assert!(w[0].0 < w[1].0);
            }
            for (e, _) in &h.edges {
                assert_eq!(e.len(), 3);
                assert!(e.windows(2).all(|p| p[0] < p[1]) && e[2] < 12);
            }
        }
    }
}
