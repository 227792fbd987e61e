//! Monte Carlo sampling of diluted weighted uniform hypergraphs.
//!
//! A trial draws every `q`-subset of `[N]` independently with probability
//! `p / N^(q-1)`, gives each present hyperedge an i.i.d. weight, assembles
//! the adjacency matrix, and records its normalized trace powers
//! `Tr(A^k) / N`. [`run_trials`] repeats this with per-trial RNG streams so
//! results do not depend on how many worker threads run them.

pub mod adjacency;
pub mod correlator;
pub mod distribution;
pub mod error;
pub mod histogram;
pub mod hypergraph;
pub mod moments;
pub mod trials;

pub use adjacency::{assemble_adjacency, AdjacencyMatrix};
pub use correlator::{correlator_decay_study, CorrelatorPoint, CorrelatorStudy, DecayFit};
pub use distribution::WeightDistribution;
pub use error::{Result, SimError};
pub use histogram::{eigen_histogram, BinSpec, Histogram};
pub use hypergraph::{sample_hypergraph, subset_count, EdgeSampler, SampledHypergraph};
pub use moments::{dense_trace_moments, eigenvalues, empirical_moments, moments_from_eigenvalues};
pub use trials::{run_trials, trial_rng, HistogramRequest, SimConfig, SimRun};
