//! Nash equilibrium synthesis for concurrent games where players talk over a
//! communication graph.
//!
//! The pipeline: [`game`] loads a concurrent game and a communication graph,
//! [`epistemic`] builds the two-player epistemic game that tracks who may have
//! deviated and who knows it, [`solver`] searches it for a strategy of Eve
//! that secures a payoff vector, and [`translate`] turns that strategy into a
//! profile of per-player machines and back.

pub mod game;
pub mod epistemic;
pub mod bundled;
pub mod solver;
pub mod gen;
pub mod translate;
pub mod dot;
pub mod cli;
