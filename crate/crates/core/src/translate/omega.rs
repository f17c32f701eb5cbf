use crate::epistemic::{EpistemicGame, EveAction, EveState};
use crate::game::{ConcurrentGame, Message};
use crate::solver::EveStrategy;

use super::{Output, PlayerTable, ProfileNode, StrategyProfile, TranslateError};

/// Profile whose players all track the strategy node of `zeta` reached by
/// the vertices seen so far. Off the main outcome, a player that received
/// `id_d` follows the suggestion for `d` and relays `id_d`; an uninformed
/// player follows the suggestion for the least deviator it is not informed
/// of, which is the same action for every such deviator.
pub fn omega(game: &ConcurrentGame, eg: &EpistemicGame, zeta: &EveStrategy) -> Result<StrategyProfile, TranslateError> {
    if zeta.is_empty() || eg.eve(zeta.node(zeta.init).eve).state != EveState::complying(game.init()) {
        return Err(TranslateError::NotNormed("strategy does not start in the initial state".into()));
    }
    // Renumber so that the initial node comes first.
    let n = zeta.len() as u32;
    let to_profile = |id: u32| -> u32 {
        if id == zeta.init {
            0
        } else if id < zeta.init {
            id + 1
        } else {
            id
        }
    };
    let mut order: Vec<u32> = (0..n).collect();
    order.sort_by_key(|&id| to_profile(id));

    let mut nodes = Vec::with_capacity(zeta.len());
    for id in order {
        let sn = zeta.node(id);
        let state = &eg.eve(sn.eve).state;
        let players = match &eg.adam(sn.choice).action {
            EveAction::Move(m) => game
                .players()
                .map(|a| PlayerTable {
                    silent: Some(Output {
                        action: m.get(a),
                        message: Message::Silent,
                    }),
                    informed: Vec::new(),
                })
                .collect(),
            EveAction::Dev(f) => {
                let dev = state.situations.deviators();
                let mut tables = Vec::with_capacity(game.num_players());
                for a in game.players() {
                    let mut table = PlayerTable::default();
                    for d in dev.iter() {
                        let m = f.get(d).ok_or_else(|| {
                            TranslateError::NotNormed(format!("no suggestion for deviator {d} at node {id}"))
                        })?;
                        let informed = state.situations.informed(d).expect("deviator").contains(a);
                        if informed {
                            table.informed.push((
                                d,
                                Output {
                                    action: m.get(a),
                                    message: Message::Id(d),
                                },
                            ));
                        } else if table.silent.is_none() {
                            table.silent = Some(Output {
                                action: m.get(a),
                                message: Message::Silent,
                            });
                        }
                    }
                    tables.push(table);
                }
                tables
            }
        };
        nodes.push(ProfileNode {
            vertex: state.vertex,
            situations: state.situations.clone(),
            next: sn.next.iter().map(|&(v, t)| (v, to_profile(t))).collect(),
            players,
        });
    }
    Ok(StrategyProfile { nodes, payoff: None })
}
