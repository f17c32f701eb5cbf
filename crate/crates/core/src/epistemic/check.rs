use std::fmt;

use serde::Serialize;

use crate::game::{CommGraph, ConcurrentGame, PlayerId, PlayerSet, VertexId};

use super::update::{
    derive_knowledge, explains, literal_knowledge_from_empty, literal_knowledge_from_nonempty,
};
use super::{AdamId, EpistemicGame, EveAction, EveId, EveState, SituationSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnowledgeViolation {
    pub vertex: VertexId,
    pub situations: SituationSet,
    pub message: String,
}

impl fmt::Display for KnowledgeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at vertex {}: {}", self.vertex, self.message)
    }
}

/// Checks a claimed successor `(v', claimed)` of `pred` under `action`
/// against the explicit update formulas: deviator and informed sets, `d ∈ I_d`,
/// the derived knowledge against the literal knowledge update, and equal
/// knowledge of uninformed players across situations.
pub fn check_transition_knowledge(
    game: &ConcurrentGame,
    graph: &CommGraph,
    pred: &EveState,
    action: &EveAction,
    v_next: VertexId,
    claimed: &SituationSet,
) -> Vec<KnowledgeViolation> {
    let mut out = Vec::new();
    let mut report = |message: String| {
        out.push(KnowledgeViolation {
            vertex: v_next,
            situations: claimed.clone(),
            message,
        })
    };
    let v = pred.vertex;
    // Expected deviators and informed sets.
    let expected: Vec<(PlayerId, PlayerSet)> = match action {
        EveAction::Move(m) => {
            if game.next(v, m) == v_next {
                Vec::new()
            } else {
                game.players()
                    .filter(|&d| explains(game, v, m, d, v_next))
                    .map(|d| (d, graph.reach(d)))
                    .collect()
            }
        }
        EveAction::Dev(f) => pred
            .situations
            .iter()
            .filter(|s| {
                f.get(s.deviator)
                    .is_some_and(|m| explains(game, v, m, s.deviator, v_next))
            })
            .map(|s| (s.deviator, graph.expand(s.informed)))
            .collect(),
    };
    for &(d, informed) in &expected {
        match claimed.informed(d) {
            None => report(format!("deviator {d} missing")),
            Some(i) if i != informed => {
                report(format!("I_{d} is {i}, update gives {informed}"))
            }
            _ => {}
        }
    }
    for s in claimed.iter() {
        if !expected.iter().any(|(d, _)| *d == s.deviator) {
            report(format!("deviator {} not explained by the move", s.deviator));
        }
        if !s.informed.contains(s.deviator) {
            report(format!("deviator {} not in its own informed set", s.deviator));
        }
    }
    let mut literal = Vec::new();
    for &(d, _) in expected.iter().filter(|(d, _)| claimed.informed(*d).is_some()) {
        let row: Vec<PlayerSet> = game
            .players()
            .map(|a| match action {
                EveAction::Move(m) => literal_knowledge_from_empty(game, graph, v, m, v_next, d, a),
                EveAction::Dev(f) => {
                    literal_knowledge_from_nonempty(game, graph, &pred.situations, v, f, v_next, d, a)
                        .unwrap_or(PlayerSet::EMPTY)
                }
            })
            .collect();
        for a in game.players() {
            let derived = derive_knowledge(claimed, d, a).unwrap();
            let lit = row[a.index()];
            if derived != lit {
                report(format!("K_{d}({a}): derived {derived}, update formula {lit}"));
            }
            let informed = claimed.informed(d).unwrap().contains(a);
            if informed && lit != PlayerSet::singleton(d) {
                report(format!("K_{d}({a}) = {lit} for informed player {a}"));
            }
        }
        literal.push((d, row));
    }
    for (i, (d, kd)) in literal.iter().enumerate() {
        for (e, ke) in &literal[i + 1..] {
            let (id, ie) = (claimed.informed(*d).unwrap(), claimed.informed(*e).unwrap());
            for a in game.players() {
                if !id.contains(a) && !ie.contains(a) && kd[a.index()] != ke[a.index()] {
                    report(format!(
                        "uninformed player {a} distinguishes {d} and {e}: {} vs {}",
                        kd[a.index()],
                        ke[a.index()]
                    ));
                }
            }
        }
    }
    out
}

/// Knowledge check on every deviated successor of one Adam state.
pub fn check_edge_knowledge(
    game: &ConcurrentGame,
    graph: &CommGraph,
    eg: &EpistemicGame,
    id: AdamId,
) -> Vec<KnowledgeViolation> {
    let node = eg.adam(id);
    let pred = &eg.eve(node.origin).state;
    node.edges
        .iter()
        .flat_map(|&(v, e)| {
            check_transition_knowledge(game, graph, pred, &node.action, v, &eg.eve(e).state.situations)
        })
        .collect()
}

/// Knowledge check over every edge of the built game.
pub fn check_knowledge_invariant(
    game: &ConcurrentGame,
    graph: &CommGraph,
    eg: &EpistemicGame,
) -> Vec<KnowledgeViolation> {
    eg.adam_ids()
        .flat_map(|a| check_edge_knowledge(game, graph, eg, a))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceViolation {
    pub eve: EveId,
    pub step: u32,
    pub deviator: PlayerId,
    pub player: PlayerId,
    pub informed: bool,
    pub distance: Option<u32>,
}

impl fmt::Display for DistanceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at step {}: player {} {} I_{} but dist = {}",
            self.eve,
            self.step,
            self.player,
            if self.informed { "in" } else { "not in" },
            self.deviator,
            self.distance.map_or("∞".to_string(), |d| d.to_string())
        )
    }
}

/// `a ∈ I_d ⇔ dist(d, a) ≤ r` for every recorded deviation step `r`.
pub fn check_distance_characterization(
    graph: &CommGraph,
    eg: &EpistemicGame,
) -> Vec<DistanceViolation> {
    let mut out = Vec::new();
    for id in eg.eve_ids() {
        let state = &eg.eve(id).state;
        for r in eg.steps(id) {
            for s in state.situations.iter() {
                for a in (0..graph.players()).map(PlayerId::from_index) {
                    let distance = graph.distance(s.deviator, a);
                    let within = distance.is_some_and(|x| x <= r);
                    let informed = s.informed.contains(a);
                    if within != informed {
                        out.push(DistanceViolation {
                            eve: id,
                            step: r,
                            deviator: s.deviator,
                            player: a,
                            informed,
                            distance,
                        });
                    }
                }
            }
        }
    }
    out
}

/// State counts against the bounds `|V| + |V|·|Tab|²·(diam+2)` and
/// `|S_Eve|·|Act|^(|Agt|²)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeReport {
    pub eve_states: usize,
    pub adam_states: usize,
    pub deviated_eve_states: usize,
    pub vertices: usize,
    pub tab: usize,
    pub diameter: u32,
    pub eve_bound: u128,
    pub adam_bound: u128,
}

impl SizeReport {
    pub fn eve_ok(&self) -> bool {
        self.eve_states as u128 <= self.eve_bound
    }

    pub fn adam_ok(&self) -> bool {
        self.adam_states as u128 <= self.adam_bound
    }
}

impl fmt::Display for SizeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "eve states:  {} ({} deviated), bound {} [{}]",
            self.eve_states,
            self.deviated_eve_states,
            self.eve_bound,
            if self.eve_ok() { "ok" } else { "VIOLATED" }
        )?;
        write!(
            f,
            "adam states: {}, bound {} [{}]",
            self.adam_states,
            self.adam_bound,
            if self.adam_ok() { "ok" } else { "VIOLATED" }
        )
    }
}

pub fn size_report(game: &ConcurrentGame, graph: &CommGraph, eg: &EpistemicGame) -> SizeReport {
    let v = game.num_vertices() as u128;
    let tab = game.tab_size() as u128;
    let diam = graph.diameter() as u128;
    let eve_bound = tab
        .saturating_mul(tab)
        .saturating_mul(v)
        .saturating_mul(diam + 2)
        .saturating_add(v);
    let agt = game.num_players() as u32;
    let exp = agt.saturating_mul(agt);
    let per_state = (game.num_actions() as u128)
        .checked_pow(exp)
        .unwrap_or(u128::MAX);
    SizeReport {
        eve_states: eg.num_eve(),
        adam_states: eg.num_adam(),
        deviated_eve_states: eg
            .eve_ids()
            .filter(|&e| eg.eve(e).state.is_deviated())
            .count(),
        vertices: game.num_vertices(),
        tab: game.tab_size(),
        diameter: graph.diameter(),
        eve_bound,
        adam_bound: (eg.num_eve() as u128).saturating_mul(per_state),
    }
}
