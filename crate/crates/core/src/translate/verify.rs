use crate::epistemic::EpistemicGame;
use crate::game::{CommGraph, ConcurrentGame, PayoffVector};
use crate::solver::Query;

use super::{check_deviation_resistance, check_normed, NormedReport, StrategyProfile};

/// Result of checking a stored profile without any solver state.
#[derive(Clone, Debug)]
pub struct Verification {
    /// Payoff of the main outcome, if the main outcome is defined.
    pub main_payoff: Option<PayoffVector>,
    pub predicate_holds: Option<bool>,
    pub normed: NormedReport,
    pub resistant: bool,
    pub problems: Vec<String>,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Normed check up to `depth`, resistance against the main outcome's payoff,
/// the predicate on that payoff and agreement with the recorded payoff.
pub fn verify_profile(
    game: &ConcurrentGame,
    graph: &CommGraph,
    eg: &EpistemicGame,
    profile: &StrategyProfile,
    query: &Query,
    depth: usize,
) -> Verification {
    let mut problems = Vec::new();
    let normed = check_normed(game, graph, profile, depth);
    problems.extend(normed.violations.iter().map(|v| v.to_string()));

    let main_payoff = match profile.main_vertices(game, graph) {
        Ok((_, cycle)) => Some(game.payoff().payoff_of_inf_set(&cycle.into_iter().collect())),
        Err(e) => {
            problems.push(format!("main outcome: {e}"));
            None
        }
    };
    let predicate_holds = main_payoff.as_ref().map(|p| query.eval(p));
    if let (Some(false), Some(p)) = (predicate_holds, &main_payoff) {
        problems.push(format!("main outcome payoff {p} violates `{query}`"));
    }
    if let (Some(m), Some(r)) = (&main_payoff, &profile.payoff) {
        if m != r {
            problems.push(format!("main outcome payoff {m} differs from the recorded {r}"));
        }
    }
    let mut resistant = false;
    if let Some(p) = &main_payoff {
        match check_deviation_resistance(game, graph, eg, profile, p) {
            Ok(r) => {
                resistant = r.punishing_ok;
                if !r.punishing_ok {
                    problems.extend(r.violations);
                }
            }
            Err(e) => problems.push(format!("resistance: {e}")),
        }
    }
    Verification {
        main_payoff,
        predicate_holds,
        normed,
        resistant,
        problems,
    }
}
