use crate::epistemic::{DevFunction, EpistemicGame, EveAction, EveId};
use crate::game::{CommGraph, ConcurrentGame, Message, Move, PayoffVector, PlayerId};
use crate::solver::{model_check_strategy, EveStrategy, Memory, ModelCheckReport};

use super::{StrategyProfile, TranslateError};

/// Eve strategy suggesting what the profile plays. At a deviated state and
/// for each possible deviator `d`, every player is fed the message vector of
/// a deviation by `d`: it has received `id_d` iff it is informed of `d`. The
/// deviator's own entry is the least allowed action.
pub fn upsilon(
    game: &ConcurrentGame,
    graph: &CommGraph,
    eg: &EpistemicGame,
    sigma: &StrategyProfile,
) -> Result<EveStrategy, TranslateError> {
    sigma.validate(game)?;
    EveStrategy::explore((0u32, eg.init()), |&(n, e): &(u32, EveId)| {
        let node = sigma.node(n);
        let state = &eg.eve(e).state;
        if node.vertex != state.vertex {
            return Err(TranslateError::Undefined {
                node: n,
                message: format!(
                    "machine at vertex {} while the play is at {}",
                    game.vertex_name(node.vertex),
                    game.vertex_name(state.vertex)
                ),
            });
        }
        let action = if state.situations.is_empty() {
            let mut m = Vec::with_capacity(game.num_players());
            for a in game.players() {
                let out = sigma.respond(n, a, &[])?;
                if out.message != Message::Silent {
                    return Err(TranslateError::NotNormed(format!(
                        "node {n}: player {} speaks on the main outcome",
                        game.player_name(a)
                    )));
                }
                m.push(out.action);
            }
            EveAction::Move(Move(m))
        } else {
            let mut entries = Vec::new();
            for s in state.situations.iter() {
                let d = s.deviator;
                let mut m = Vec::with_capacity(game.num_players());
                for a in game.players() {
                    let knows = s.informed.contains(a);
                    let received: Vec<(PlayerId, Message)> = if knows {
                        vec![(a, Message::Id(d))]
                    } else {
                        Vec::new()
                    };
                    let out = sigma.respond(n, a, &received)?;
                    let expected = if knows { Message::Id(d) } else { Message::Silent };
                    if out.message != expected {
                        return Err(TranslateError::NotNormed(format!(
                            "node {n}: player {} sends {} after a deviation of {}, expected {}",
                            game.player_name(a),
                            out.message,
                            game.player_name(d),
                            expected
                        )));
                    }
                    m.push(if a == d { game.first_allowed(state.vertex, a) } else { out.action });
                }
                entries.push((d, Move(m)));
            }
            EveAction::Dev(DevFunction::new(entries))
        };
        let adam = eg.adam_for_action(game, graph, e, &action)?;
        let mut next = Vec::new();
        for &(v, t) in &eg.adam(adam).edges {
            let n2 = sigma.step(n, v).ok_or_else(|| TranslateError::Undefined {
                node: n,
                message: format!("no successor at vertex {}", game.vertex_name(v)),
            })?;
            next.push((v, (n2, t)));
        }
        Ok((e, Memory::Profile(n), adam, next))
    })
}

/// Exact check that no immediately visible honest single-player deviation
/// from `sigma` is profitable with respect to `p`.
pub fn check_deviation_resistance(
    game: &ConcurrentGame,
    graph: &CommGraph,
    eg: &EpistemicGame,
    sigma: &StrategyProfile,
    p: &PayoffVector,
) -> Result<ModelCheckReport, TranslateError> {
    let zeta = upsilon(game, graph, eg, sigma)?;
    Ok(model_check_strategy(game, graph, eg, &zeta, p)?)
}
