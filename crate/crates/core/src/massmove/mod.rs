//! Mass movement: distributions, moves, traces and the splitting order.

mod distribution;
mod inequalities;
mod moves;
mod order;
mod trace;

use thiserror::Error;

use crate::rational::Rational;

pub use distribution::{moment, Distribution, Moments, SignedDistribution};
pub use inequalities::{check_extreme_lemma, check_spread_lemma, Comparison};
pub use moves::{apply_extreme, apply_lossy, apply_move, ExtremeMove, LossyMove, Move};
pub use order::{is_basic_split, is_split_of, split_plan, transport_system};
pub use trace::{
    is_weight_constrained, mu_max, weight_constraint_scan, Step, Trace, WeightScan, WeightViolation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MassError {
    #[error("move not applicable: mass at {x} would become {mass}")]
    NotApplicable { x: Rational, mass: Rational },
    #[error("negative mass {mass} at {x}")]
    NegativeMass { x: Rational, mass: Rational },
    #[error("center of mass undefined for zero total mass")]
    ZeroMass,
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("trace contains lossy steps")]
    NotPlain,
    #[error("step {step}: {source}")]
    StepFailed {
        step: usize,
        #[source]
        source: Box<MassError>,
    },
}
