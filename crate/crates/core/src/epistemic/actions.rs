use crate::game::{ActionId, CommGraph, ConcurrentGame, Move, PlayerId, PlayerSet, VertexId};

use super::update::derive_knowledge;
use super::{successor, DevFunction, EpistemicError, EveAction, EveState, SituationSet};

/// Vertices Adam may pick after Eve plays `action` at `state`, sorted.
pub fn adam_choices(
    game: &ConcurrentGame,
    state: &EveState,
    action: &EveAction,
) -> Result<Vec<VertexId>, EpistemicError> {
    let v = state.vertex;
    let mut out = Vec::new();
    let mut push_from = |m: &Move, d: PlayerId| -> Result<(), EpistemicError> {
        if !game.is_allowed(v, m) {
            return Err(EpistemicError::NotEnabled(game.move_word(m)));
        }
        for &delta in game.allowed(v, d) {
            out.push(game.next(v, &m.with(d, delta)));
        }
        Ok(())
    };
    match action {
        EveAction::Move(m) if !state.is_deviated() => {
            for d in game.players() {
                push_from(m, d)?;
            }
        }
        EveAction::Dev(f) if state.is_deviated() => {
            if f.deviators() != state.situations.deviators() {
                return Err(EpistemicError::NotEnabled("function domain".into()));
            }
            for (d, m) in &f.0 {
                push_from(m, *d)?;
            }
        }
        _ => return Err(EpistemicError::NotEnabled("action kind".into())),
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Labelled successors `(v', X')` of the Adam state `(state, action)`, sorted by `v'`.
pub fn successor_signature(
    game: &ConcurrentGame,
    graph: &CommGraph,
    state: &EveState,
    action: &EveAction,
) -> Result<Vec<(VertexId, SituationSet)>, EpistemicError> {
    adam_choices(game, state, action)?
        .into_iter()
        .map(|t| Ok((t, successor(game, graph, state, action, t)?.situations)))
        .collect()
}

/// Checks Eve's action constraints directly: allowedness, domain, and equal
/// suggestions for uninformed players with equal knowledge.
pub fn is_enabled(game: &ConcurrentGame, state: &EveState, action: &EveAction) -> bool {
    let v = state.vertex;
    match action {
        EveAction::Move(m) => !state.is_deviated() && game.is_allowed(v, m),
        EveAction::Dev(f) => {
            let x = &state.situations;
            if !state.is_deviated()
                || f.deviators() != x.deviators()
                || f.0.len() != x.len()
                || f.0.iter().any(|(_, m)| !game.is_allowed(v, m))
            {
                return false;
            }
            for (d, md) in &f.0 {
                for (e, me) in &f.0 {
                    if d >= e {
                        continue;
                    }
                    let (id, ie) = (x.informed(*d).unwrap(), x.informed(*e).unwrap());
                    for a in game.players() {
                        if id.contains(a) || ie.contains(a) {
                            continue;
                        }
                        let same = derive_knowledge(x, *d, a).unwrap()
                            == derive_knowledge(x, *e, a).unwrap();
                        if same && md.get(a) != me.get(a) {
                            return false;
                        }
                    }
                }
            }
            true
        }
    }
}

struct Slot {
    player: PlayerId,
    deviators: PlayerSet,
    choices: Vec<ActionId>,
}

/// Mixed-radix enumeration of Eve actions; the last slot varies fastest.
pub struct EveActionIter {
    deviated: bool,
    players: usize,
    deviators: Vec<PlayerId>,
    slots: Vec<Slot>,
    counter: Vec<usize>,
    finished: bool,
    total: u128,
}

impl EveActionIter {
    fn new(
        game: &ConcurrentGame,
        state: &EveState,
        fix_own: bool,
    ) -> EveActionIter {
        let v = state.vertex;
        let x = &state.situations;
        let mut slots = Vec::new();
        if !state.is_deviated() {
            for a in game.players() {
                slots.push(Slot {
                    player: a,
                    deviators: PlayerSet::EMPTY,
                    choices: game.allowed(v, a).to_vec(),
                });
            }
        } else {
            for a in game.players() {
                let allowed = game.allowed(v, a);
                let mut shared = PlayerSet::EMPTY;
                for s in x.iter() {
                    if s.informed.contains(a) {
                        // Own action of the deviator never affects Adam's choices.
                        let choices = if fix_own && s.deviator == a {
                            vec![allowed[0]]
                        } else {
                            allowed.to_vec()
                        };
                        slots.push(Slot {
                            player: a,
                            deviators: PlayerSet::singleton(s.deviator),
                            choices,
                        });
                    } else {
                        shared.insert(s.deviator);
                    }
                }
                if !shared.is_empty() {
                    slots.push(Slot {
                        player: a,
                        deviators: shared,
                        choices: allowed.to_vec(),
                    });
                }
            }
        }
        let total = slots
            .iter()
            .fold(1u128, |acc, s| acc.saturating_mul(s.choices.len() as u128));
        EveActionIter {
            deviated: state.is_deviated(),
            players: game.num_players(),
            deviators: x.deviators().iter().collect(),
            counter: vec![0; slots.len()],
            slots,
            finished: false,
            total,
        }
    }

    /// Number of actions this iterator yields in total.
    pub fn total(&self) -> u128 {
        self.total
    }

    fn current(&self) -> EveAction {
        if !self.deviated {
            let acts = self
                .slots
                .iter()
                .zip(&self.counter)
                .map(|(s, &i)| s.choices[i])
                .collect();
            return EveAction::Move(Move(acts));
        }
        let mut moves: Vec<Vec<ActionId>> =
            vec![vec![ActionId(0); self.players]; self.deviators.len()];
        for (s, &i) in self.slots.iter().zip(&self.counter) {
            for (k, d) in self.deviators.iter().enumerate() {
                if s.deviators.contains(*d) {
                    moves[k][s.player.index()] = s.choices[i];
                }
            }
        }
        EveAction::Dev(DevFunction(
            self.deviators
                .iter()
                .copied()
                .zip(moves.into_iter().map(Move))
                .collect(),
        ))
    }
}

impl Iterator for EveActionIter {
    type Item = EveAction;

    fn next(&mut self) -> Option<EveAction> {
        if self.finished {
            return None;
        }
        let out = self.current();
        let mut k = self.slots.len();
        loop {
            if k == 0 {
                self.finished = true;
                break;
            }
            k -= 1;
            self.counter[k] += 1;
            if self.counter[k] < self.slots[k].choices.len() {
                break;
            }
            self.counter[k] = 0;
        }
        Some(out)
    }
}

/// Every action enabled at `state`.
pub fn enabled_eve_actions(game: &ConcurrentGame, state: &EveState) -> EveActionIter {
    EveActionIter::new(game, state, false)
}

/// Enabled actions with each deviator's own action fixed to its least
/// allowed one. Covers every successor signature of [`enabled_eve_actions`].
pub fn builder_eve_actions(game: &ConcurrentGame, state: &EveState) -> EveActionIter {
    EveActionIter::new(game, state, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{PayoffSpec, PayoffVector};

    #[test]
    fn singleton_allow_gives_one_move() {
        let g = ConcurrentGame::new(
            vec!["v".into()],
            vec!["0".into(), "1".into()],
            vec!["a".into(), "b".into()],
            VertexId(0),
            vec![vec![vec![ActionId(1)], vec![ActionId(0)]]],
            |v, _| v,
            PayoffSpec::new(vec![], PayoffVector::from_ints(&[0, 0]), 2).unwrap(),
        )
        .unwrap();
        let s = EveState::complying(VertexId(0));
        let all: Vec<EveAction> = enabled_eve_actions(&g, &s).collect();
        assert_eq!(all, vec![EveAction::Move(Move(vec![ActionId(1), ActionId(0)]))]);
        assert!(is_enabled(&g, &s, &all[0]));
        assert_eq!(adam_choices(&g, &s, &all[0]).unwrap(), vec![VertexId(0)]);
    }

    #[test]
    fn moves_enumerated_lexicographically() {
        let g = ConcurrentGame::new(
            vec!["v".into()],
            vec!["0".into(), "1".into()],
            vec!["a".into(), "b".into()],
            VertexId(0),
            vec![vec![vec![ActionId(0), ActionId(1)], vec![ActionId(0), ActionId(1)]]],
            |v, _| v,
            PayoffSpec::new(vec![], PayoffVector::from_ints(&[0, 0]), 2).unwrap(),
        )
        .unwrap();
        let s = EveState::complying(VertexId(0));
        let it = enabled_eve_actions(&g, &s);
        assert_eq!(it.total(), 4);
        let got: Vec<EveAction> = it.collect();
        let want: Vec<EveAction> = g.moves(VertexId(0)).map(EveAction::Move).collect();
        assert_eq!(got, want);
    }
}
