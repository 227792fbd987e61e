//! Growth diagnostic for the even moments.
//!
//! Determinacy of the limiting measure follows from the divergence of
//! `Σ m_{2k}^{-1/(2k)}`; numerically we can only look at the first few
//! roots and check that `m_{2k}^{1/(2k)} / k` stays bounded.

use crate::error::{MomentError, Result};
use crate::params::MomentTable;
use crate::scalar::Scalar;

/// `(k, m_{2k}^{1/(2k)})` for `k = 1..=k_max/2`.
pub fn carleman_diagnostic<T: Scalar>(m: &MomentTable<T>) -> Result<Vec<(usize, f64)>> {
    (1..=m.k_max() / 2)
        .map(|k| {
            let even = &m.0[2 * k];
            if even.is_negative() {
                return Err(MomentError::NegativeEvenMoment { k: 2 * k });
            }
            Ok((k, even.to_f64().powf(1.0 / (2 * k) as f64)))
        })
        .collect()
}

/// Partial sum `Σ_{k<=K} m_{2k}^{-1/(2k)}`, infinite once a root vanishes.
pub fn carleman_partial_sum(roots: &[(usize, f64)]) -> f64 {
    roots.iter().map(|&(_, r)| 1.0 / r).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_second_moment() {
        let m = MomentTable(vec![1.0, 0.0, 1.0]);
        assert_eq!(carleman_diagnostic(&m).unwrap(), vec![(1, 1.0)]);
    }

    #[test]
    fn zero_ensemble() {
        let m = MomentTable(vec![1.0, 0.0, 0.0, 0.0, 0.0]);
        let roots = carleman_diagnostic(&m).unwrap();
        assert_eq!(roots, vec![(1, 0.0), (2, 0.0)]);
        assert!(carleman_partial_sum(&roots).is_infinite());
    }

    #[test]
    fn negative_even_moment() {
        let m = MomentTable(vec![1.0, 0.0, 1.0, 0.0, -2.0]);
        assert_eq!(carleman_diagnostic(&m), Err(MomentError::NegativeEvenMoment { k: 4 }));
    }
}
