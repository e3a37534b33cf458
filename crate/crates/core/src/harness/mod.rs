//! Verification reports: the pipeline from a stack to the overhang bound,
//! and exact checks of the mass-movement bounds on concrete traces.

mod bounds;
mod pipeline;
mod report;

use thiserror::Error;

use crate::balance::BalanceError;
use crate::massmove::MassError;
use crate::model::ModelError;

pub use bounds::{
    cbrt_lower, check_lemma_initial, check_t_m1, check_t_m2, check_t_m2_with_precision,
    check_theorem_asym, log2_lower, tm2_threshold_lower, MIN_PRECISION_BITS,
};
pub use pipeline::{
    check_main_bound, end_to_end, end_to_end_with, lossy_to_weight_constrained, Options,
};
pub use report::{CheckRecord, Relation, Status, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Balance(#[from] BalanceError),
    #[error(transparent)]
    Mass(#[from] MassError),
}
