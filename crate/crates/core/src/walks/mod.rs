//! Walk-class enumeration and the brute-force moment oracle.

mod class;
mod enumerate;
mod oracle;

pub use class::{is_essential, ClassContribution, EdgeRecord, Member, MinimalWalkClass, OverlapBlock, Step};
pub use enumerate::{enumerate_classes, for_each_class};
pub use oracle::{
    exact_finite_moment, exact_finite_moment_capped, oracle_k_count, oracle_moment, oracle_s_table,
    DEFAULT_ENUMERATION_CAP,
};
