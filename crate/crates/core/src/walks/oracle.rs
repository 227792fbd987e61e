//! Brute-force ground truth for the recurrences.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::enumerate::for_each_class;
use crate::error::{MomentError, Result};
use crate::kcount::EdgeVector;
use crate::params::{ModelParams, WeightMomentSeq};
use crate::scalar::Scalar;

/// Largest walk length the full (non-essential) enumeration runs at unless
/// the caller raises it explicitly.
pub const DEFAULT_ENUMERATION_CAP: usize = 6;

/// `m_k` as the sum of essential-class contributions.
pub fn oracle_moment<T: Scalar>(k: usize, params: &ModelParams<T>, x: &WeightMomentSeq<T>) -> Result<T> {
    x.require(k)?;
    let mut total = T::zero();
    let mut err = None;
    for_each_class(k, params.q(), true, |c| match c.limit_contribution(params, x) {
        Ok(v) => total = total.clone() + v.value,
        Err(e) => err = Some(e),
    });
    err.map_or(Ok(total), Err)
}

/// Essential-class contributions grouped by length `l` and number of root
/// departures `r`, for every `l <= l_max` and `r <= l / 2`.
pub fn oracle_s_table<T: Scalar>(
    l_max: usize,
    params: &ModelParams<T>,
    x: &WeightMomentSeq<T>,
) -> Result<BTreeMap<(usize, usize), T>> {
    x.require(l_max)?;
    let mut table = BTreeMap::new();
    let mut err = None;
    for l in 0..=l_max {
        for r in 0..=l / 2 {
            table.insert((l, r), T::zero());
        }
        for_each_class(l, params.q(), true, |c| {
            let r = c.root_departures();
            match c.limit_contribution(params, x) {
                Ok(v) => {
                    let slot = table.entry((l, r)).or_insert_with(T::zero);
                    *slot = slot.clone() + v.value;
                }
                Err(e) => err = Some(e),
            }
        });
    }
    err.map_or(Ok(table), Err)
}

/// Counts within-hyperedge walks by listing every vertex sequence.
pub fn oracle_k_count(kappa: usize, j: usize, f: &EdgeVector) -> Result<BigUint> {
    if f.kappa() != kappa {
        return Err(MomentError::DimensionMismatch { kappa, len: f.kappa() });
    }
    if j == 0 || j > kappa {
        return Err(MomentError::IndexOutOfRange { j, kappa });
    }
    let len = f.norm() as usize;
    let mut seq = vec![1u32];
    let mut count = 0u64;
    list_sequences(len, &mut seq, 1, &mut |s| {
        let max = *s.iter().max().unwrap_or(&1) as usize;
        if max != kappa || *s.last().unwrap() as usize != j {
            return;
        }
        let mut departures = vec![0u32; kappa];
        for v in &s[..s.len() - 1] {
            departures[*v as usize - 1] += 1;
        }
        if departures == f.as_slice() {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

fn list_sequences(len: usize, seq: &mut Vec<u32>, max: u32, emit: &mut impl FnMut(&[u32])) {
    if seq.len() == len + 1 {
        emit(seq);
        return;
    }
    let cur = *seq.last().unwrap();
    for next in 1..=max + 1 {
        if next == cur {
            continue;
        }
        seq.push(next);
        list_sequences(len, seq, max.max(next), emit);
        seq.pop();
    }
}

/// `E Tr(A^k) / N` at finite `N`, summed exactly over every walk class.
pub fn exact_finite_moment<T: Scalar>(
    n: u64,
    k: usize,
    params: &ModelParams<T>,
    x: &WeightMomentSeq<T>,
) -> Result<T> {
    exact_finite_moment_capped(n, k, params, x, DEFAULT_ENUMERATION_CAP)
}

pub fn exact_finite_moment_capped<T: Scalar>(
    n: u64,
    k: usize,
    params: &ModelParams<T>,
    x: &WeightMomentSeq<T>,
    cap: usize,
) -> Result<T> {
    if k > cap {
        return Err(MomentError::EnumerationCap { k, cap });
    }
    if n < params.q() as u64 {
        return Err(MomentError::TooFewVertices { n, q: params.q() });
    }
    x.require(k)?;
    let mut total = T::zero();
    let mut err = None;
    for_each_class(k, params.q(), false, |c| match c.finite_contribution(n, params, x) {
        Ok(v) => {
            if !v.is_zero() {
                total = total.clone() + v;
            }
        }
        Err(e) => err = Some(e),
    });
    err.map_or(Ok(total), Err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use num_rational::BigRational;

    fn params(p: (i64, i64), q: usize) -> ModelParams<BigRational> {
        ModelParams::new(ratio(p.0, p.1), q).unwrap()
    }

    #[test]
    fn oracle_two_step() {
        let x = WeightMomentSeq::new(vec![ratio(1, 3), ratio(2, 1)]).unwrap();
        assert_eq!(oracle_moment(2, &params((1, 2), 4), &x).unwrap(), ratio(1, 2));
        assert_eq!(oracle_moment(1, &params((1, 2), 4), &x).unwrap(), ratio(0, 1));
    }

    #[test]
    fn oracle_odd_q2_vanishes() {
        let x = WeightMomentSeq::ones(5);
        for k in [1, 3, 5] {
            assert_eq!(oracle_moment(k, &params((1, 1), 2), &x).unwrap(), ratio(0, 1));
        }
        assert_eq!(oracle_moment(4, &params((1, 1), 2), &x).unwrap(), ratio(3, 1));
    }

    #[test]
    fn k_oracle_small() {
        let k = |kappa: usize, j: usize, f: &[u32]| oracle_k_count(kappa, j, &EdgeVector::new(f.to_vec())).unwrap();
        assert_eq!(k(1, 1, &[0]), BigUint::from(1u32));
        assert_eq!(k(2, 2, &[1, 0]), BigUint::from(1u32));
        assert_eq!(k(2, 1, &[1, 1]), BigUint::from(1u32));
        assert_eq!(k(3, 1, &[1, 1, 1]), BigUint::from(1u32));
    }

    #[test]
    fn finite_two_step_q2() {
        // E Tr A^2 / N = (N-1) p X_2 / N for q = 2
        let x = WeightMomentSeq::new(vec![ratio(0, 1), ratio(3, 1)]).unwrap();
        let m = exact_finite_moment(10, 2, &params((2, 1), 2), &x).unwrap();
        assert_eq!(m, ratio(2 * 3 * 9, 10));
    }

    #[test]
    fn finite_errors() {
        let x = WeightMomentSeq::ones(8);
        assert_eq!(
            exact_finite_moment(10, 7, &params((1, 1), 3), &x),
            Err(MomentError::EnumerationCap { k: 7, cap: 6 })
        );
        assert_eq!(
            exact_finite_moment(2, 2, &params((1, 1), 3), &x),
            Err(MomentError::TooFewVertices { n: 2, q: 3 })
        );
        assert_eq!(exact_finite_moment(10, 1, &params((1, 1), 3), &x).unwrap(), ratio(0, 1));
    }
}
