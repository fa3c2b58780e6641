//! A small probabilistic-computation framework: computations built from
//! uniform bit sampling, evaluated exactly (by enumeration) or by seeded
//! sampling, plus oracle-interacting computations.

mod comp;
mod dist;
mod dyadic;
mod estimate;
mod oracle;

pub(crate) use comp::uniform_block;
pub use comp::{
    coin, comp_map, sequence, uniform, Comp, ProbError, Sampler, Value, DEFAULT_ENUMERATION_CAP,
};
pub use dist::{statistical_distance, Distribution};
pub use dyadic::Dyadic;
pub use estimate::{clopper_pearson, estimate_pr_true, AdvantageEstimate, CONFIDENCE, MIN_TRIALS};
pub use oracle::{run_with_oracle, Oracle, OracleComp};
