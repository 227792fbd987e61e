use serde::{Deserialize, Serialize};

use crate::error::{MomentError, Result};
use crate::scalar::Scalar;

/// Ensemble parameters: `p` controls sparsity (each `q`-subset is present
/// with probability `p / N^(q-1)`), `q` is the hyperedge cardinality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams<T> {
    p: T,
    q: usize,
}

impl<T: Scalar> ModelParams<T> {
    pub fn new(p: T, q: usize) -> Result<Self> {
        if q < 2 {
            return Err(MomentError::InvalidParams(format!("q must be at least 2, got {q}")));
        }
        if p <= T::zero() {
            return Err(MomentError::InvalidParams(format!("p must be positive, got {p:?}")));
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }
}

/// Moments `X_k = E a^k` of the hyperedge weight law. `X_0 = 1` is implicit
/// and stored at index 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightMomentSeq<T> {
    moments: Vec<T>,
}

impl<T: Scalar> WeightMomentSeq<T> {
    /// Takes `X_1, X_2, ...` and rejects sequences that cannot be moments
    /// of any real random variable (negative even moment, `X_2 < X_1^2`).
    pub fn new(x: Vec<T>) -> Result<Self> {
        let mut moments = Vec::with_capacity(x.len() + 1);
        moments.push(T::one());
        moments.extend(x);
        for k in (2..moments.len()).step_by(2) {
            if moments[k].is_negative() {
                return Err(MomentError::InvalidWeightMoments(format!("X_{k} is negative")));
            }
        }
        if moments.len() > 2 {
            let x1 = moments[1].clone();
            if moments[2] < x1.clone() * x1 {
                return Err(MomentError::InvalidWeightMoments("X_2 < X_1^2".to_string()));
            }
        }
        Ok(Self { moments })
    }

    /// Weight identically equal to `c`.
    pub fn constant(c: T, k_max: usize) -> Self {
        let moments = (0..=k_max as u32).map(|k| c.powu(k)).collect();
        Self { moments }
    }

    pub fn ones(k_max: usize) -> Self {
        Self::constant(T::one(), k_max)
    }

    /// Highest index `k` for which `X_k` is known.
    pub fn k_max(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn get(&self, k: usize) -> Result<&T> {
        self.moments
            .get(k)
            .ok_or(MomentError::MomentsTooShort { needed: k, available: self.k_max() })
    }

    pub fn require(&self, k: usize) -> Result<()> {
        self.get(k).map(|_| ())
    }

    /// Moments of `c * a`: `X_k -> c^k X_k`.
    pub fn scaled(&self, c: &T) -> Self {
        let moments = self
            .moments
            .iter()
            .enumerate()
            .map(|(k, x)| c.powu(k as u32) * x.clone())
            .collect();
        Self { moments }
    }

    pub fn as_slice(&self) -> &[T] {
        &self.moments
    }

    /// Checks `X_{2m} <= (C m)^{2m}` for every known even moment.
    pub fn is_carleman_admissible(&self, c: f64) -> bool {
        (1..=self.k_max() / 2).all(|m| {
            let x = self.moments[2 * m].to_f64();
            x <= (c * m as f64).powi(2 * m as i32)
        })
    }
}

/// `m_0, ..., m_{k_max}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentTable<T>(pub Vec<T>);

impl<T> MomentTable<T> {
    pub fn k_max(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn get(&self, k: usize) -> Option<&T> {
        self.0.get(k)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }
}
