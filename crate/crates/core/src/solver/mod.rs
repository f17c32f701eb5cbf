//! Solving Eve's winning condition: punishment regions via a latest
//! appearance record reduction to parity games, and a search for a complying
//! lasso with the exact target payoff.

mod check;
mod lar;
mod parity;
mod punish;
mod query;
mod scc;
mod solve;
mod strategy;

use thiserror::Error;

use crate::epistemic::EpistemicError;

pub use check::{model_check_strategy, ModelCheckReport};
pub use lar::{lar_priority, Lar};
pub use parity::{parity_solve, ParityGame, ParitySolution, Side};
pub use punish::{punished, ProductNode, Punishment};
pub use query::{CmpOp, Query, QueryError};
pub use scc::{induces_cycle, strongly_connected};
pub use solve::{
    candidate_payoffs, punishment_region, solve, solve_for, SolveConfig, SolveOutcome, Solution,
};
pub use strategy::{EveStrategy, Memory, StrategyNode};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("{0}")]
    Query(String),
    #[error("punishment game exceeds the cap of {0} nodes")]
    LarCap(usize),
    #[error("strongly connected component larger than the subset cap {0}")]
    SubsetCap(usize),
    #[error("strategy undefined: {0}")]
    Undefined(String),
    #[error(transparent)]
    Epistemic(#[from] EpistemicError),
}
