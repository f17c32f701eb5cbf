use crate::game::{CommGraph, ConcurrentGame, Move, PlayerId, PlayerSet, VertexId};

use super::{DevFunction, EpistemicError, EveAction, EveState, Situation, SituationSet};

/// `K^X_d(a)` derived from the informed sets alone.
pub fn derive_knowledge(
    x: &SituationSet,
    d: PlayerId,
    a: PlayerId,
) -> Result<PlayerSet, EpistemicError> {
    let informed = x.informed(d).ok_or(EpistemicError::NotDeviator(d))?;
    if informed.contains(a) {
        return Ok(PlayerSet::singleton(d));
    }
    Ok(x
        .iter()
        .filter(|s| !s.informed.contains(a))
        .map(|s| s.deviator)
        .collect())
}

/// Whether some action of `d` turns `m` into a move leading to `target`.
pub(crate) fn explains(
    game: &ConcurrentGame,
    v: VertexId,
    m: &Move,
    d: PlayerId,
    target: VertexId,
) -> bool {
    game.allowed(v, d)
        .iter()
        .any(|&delta| game.next(v, &m.with(d, delta)) == target)
}

fn check_move(game: &ConcurrentGame, v: VertexId, m: &Move) -> Result<(), EpistemicError> {
    if game.is_allowed(v, m) {
        Ok(())
    } else {
        Err(EpistemicError::NotEnabled(format!(
            "move {} at {}",
            game.move_word(m),
            game.vertex_name(v)
        )))
    }
}

fn check_function(
    game: &ConcurrentGame,
    x: &SituationSet,
    v: VertexId,
    f: &DevFunction,
) -> Result<(), EpistemicError> {
    if f.deviators() != x.deviators() {
        return Err(EpistemicError::NotEnabled(
            "function domain differs from the deviator set".into(),
        ));
    }
    for (_, m) in &f.0 {
        check_move(game, v, m)?;
    }
    Ok(())
}

/// Successor situations after Eve plays `m` at `(v, ∅)` and Adam picks `v'`.
pub fn update_from_empty(
    game: &ConcurrentGame,
    graph: &CommGraph,
    v: VertexId,
    m: &Move,
    v_next: VertexId,
) -> Result<SituationSet, EpistemicError> {
    check_move(game, v, m)?;
    if game.next(v, m) == v_next {
        return Ok(SituationSet::empty());
    }
    let situations: Vec<Situation> = game
        .players()
        .filter(|&d| explains(game, v, m, d, v_next))
        .map(|d| Situation {
            deviator: d,
            informed: graph.reach(d),
        })
        .collect();
    if situations.is_empty() {
        return Err(EpistemicError::NotSuccessor(v_next));
    }
    SituationSet::new(situations)
}

/// Successor situations after Eve plays `f` at `(v, X)`, `X ≠ ∅`, and Adam picks `v'`.
pub fn update_from_nonempty(
    game: &ConcurrentGame,
    graph: &CommGraph,
    x: &SituationSet,
    v: VertexId,
    f: &DevFunction,
    v_next: VertexId,
) -> Result<SituationSet, EpistemicError> {
    if x.is_empty() {
        return Err(EpistemicError::NotEnabled("empty situation set".into()));
    }
    check_function(game, x, v, f)?;
    let situations: Vec<Situation> = x
        .iter()
        .filter(|s| explains(game, v, f.get(s.deviator).unwrap(), s.deviator, v_next))
        .map(|s| Situation {
            deviator: s.deviator,
            informed: graph.expand(s.informed),
        })
        .collect();
    if situations.is_empty() {
        return Err(EpistemicError::NotSuccessor(v_next));
    }
    SituationSet::new(situations)
}

/// Eve state reached from `state` by `action` when Adam picks `v'`.
pub fn successor(
    game: &ConcurrentGame,
    graph: &CommGraph,
    state: &EveState,
    action: &EveAction,
    v_next: VertexId,
) -> Result<EveState, EpistemicError> {
    let situations = match action {
        EveAction::Move(m) if !state.is_deviated() => {
            update_from_empty(game, graph, state.vertex, m, v_next)?
        }
        EveAction::Dev(f) if state.is_deviated() => {
            update_from_nonempty(game, graph, &state.situations, state.vertex, f, v_next)?
        }
        _ => {
            return Err(EpistemicError::NotEnabled(
                "action kind does not match the state".into(),
            ))
        }
    };
    Ok(EveState {
        vertex: v_next,
        situations,
    })
}

/// `K^{X'}_d(a)` by the explicit update formula for `X = ∅`.
pub fn literal_knowledge_from_empty(
    game: &ConcurrentGame,
    graph: &CommGraph,
    v: VertexId,
    m: &Move,
    v_next: VertexId,
    d: PlayerId,
    a: PlayerId,
) -> PlayerSet {
    if graph.relates(d, a) {
        return PlayerSet::singleton(d);
    }
    game.players()
        .filter(|&b| explains(game, v, m, b, v_next) && !graph.relates(b, a))
        .collect()
}

/// `K^{X'}_d(a)` by the explicit update formula for `X ≠ ∅`, using the
/// predecessor knowledge `K^X_d(a)` as derived from `X`.
pub fn literal_knowledge_from_nonempty(
    game: &ConcurrentGame,
    graph: &CommGraph,
    x: &SituationSet,
    v: VertexId,
    f: &DevFunction,
    v_next: VertexId,
    d: PlayerId,
    a: PlayerId,
) -> Result<PlayerSet, EpistemicError> {
    let informed = x.informed(d).ok_or(EpistemicError::NotDeviator(d))?;
    if graph.expand(informed).contains(a) {
        return Ok(PlayerSet::singleton(d));
    }
    let before = derive_knowledge(x, d, a)?;
    let mut out = PlayerSet::EMPTY;
    for b in before.iter() {
        let fb = f.get(b).ok_or(EpistemicError::NotDeviator(b))?;
        if !explains(game, v, fb, b, v_next) {
            continue;
        }
        // b ∈ K^X_d(a) ⊆ dev(X), so I^X_b is defined.
        let radius = x
            .informed(b)
            .unwrap()
            .iter()
            .filter_map(|c| graph.distance(b, c))
            .max()
            .unwrap_or(0);
        let signalled = graph.distance(b, a).is_some_and(|dist| dist <= radius + 1);
        if !signalled {
            out.insert(b);
        }
    }
    Ok(out)
}
