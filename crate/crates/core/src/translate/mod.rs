//! Distributed strategy profiles and their correspondence with Eve's
//! strategies in the epistemic game.

mod normed;
mod omega;
mod profile;
mod simulate;
mod upsilon;
mod verify;

use thiserror::Error;

use crate::epistemic::EpistemicError;
use crate::solver::SolverError;

pub use normed::{check_normed, default_depth, NormRule, NormViolation, NormedReport};
pub use omega::omega;
pub use profile::{
    parse_profile, profile_to_json, MainOutcome, Output, PlayerTable, ProfileNode, StrategyProfile,
    PROFILE_FORMAT,
};
pub use simulate::{simulate, DeviationScript, Trace, TraceLasso};
pub use upsilon::{check_deviation_resistance, upsilon};
pub use verify::{verify_profile, Verification};

#[derive(Debug, Error)]
pub enum TranslateError {
    #[error("profile node {node}: {message}")]
    Undefined { node: u32, message: String },
    #[error("profile is not normed: {0}")]
    NotNormed(String),
    #[error("deviation script: {0}")]
    Script(String),
    #[error("profile: {0}")]
    Format(String),
    #[error(transparent)]
    Epistemic(#[from] EpistemicError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}
