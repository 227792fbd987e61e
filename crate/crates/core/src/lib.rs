//! Limiting spectral moments of adjacency matrices of sparse random weighted
//! uniform hypergraphs.
//!
//! Each `q`-subset of `N` vertices is a hyperedge independently with
//! probability `p / N^(q-1)` and carries an i.i.d. weight `a` with moments
//! `X_k`. The adjacency matrix sums the weights of all hyperedges through a
//! pair of distinct vertices. As `N → ∞` the moments of its eigenvalue
//! distribution converge to numbers `m_k` that depend only on `p`, `q` and
//! the `X_k`.
//!
//! * [`recurrence`] computes `m_k` through the first-hyperedge splitting
//!   recurrence, with [`kcount`] supplying the within-edge walk counts.
//! * [`walks`] enumerates walk classes directly and serves as the
//!   independent oracle, including exact finite-`N` moments.
//! * [`carleman`] inspects the growth of the even moments.
//!
//! Everything is generic over [`Scalar`]; the aliases below fix it to exact
//! rationals.

pub mod carleman;
pub mod combinatorics;
pub mod error;
pub mod kcount;
pub mod params;
pub mod recurrence;
pub mod scalar;
pub mod walks;

pub use carleman::{carleman_diagnostic, carleman_partial_sum};
pub use error::{MomentError, Result};
pub use kcount::{k_count, EdgeVector, KTable};
pub use params::{ModelParams, MomentTable, WeightMomentSeq};
pub use recurrence::{limiting_moments, ms_r_crosscheck, s_value, STable};
pub use scalar::{parse_rational, ratio, rational_string, rational_to_string, Scalar};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

pub type Rational = BigRational;
pub type ExactParams = ModelParams<BigRational>;
pub type ExactWeights = WeightMomentSeq<BigRational>;
pub type ExactMoments = MomentTable<BigRational>;
pub type ExactSTable = STable<BigRational>;
pub type FloatParams = ModelParams<f64>;
pub type FloatWeights = WeightMomentSeq<f64>;
pub type FloatMoments = MomentTable<f64>;
