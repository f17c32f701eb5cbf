use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::game::{CommGraph, ConcurrentGame, VertexId};

use super::actions::{builder_eve_actions, successor_signature};
use super::{EpistemicError, EveAction, EveState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EveId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AdamId(pub u32);

impl EveId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl AdamId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for EveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl fmt::Display for AdamId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct EveNode {
    pub state: EveState,
    pub adam: Vec<AdamId>,
    /// Bit `r` set when the state is reached `r` steps after the first
    /// visible deviation (saturating at `diam + 2`). Zero for `X = ∅`.
    pub steps: u128,
}

#[derive(Clone, Debug)]
pub struct AdamNode {
    pub origin: EveId,
    /// Representative of all actions with this successor signature.
    pub action: EveAction,
    /// Sorted by vertex.
    pub edges: Vec<(VertexId, EveId)>,
    /// Successor when Adam complies (only from `X = ∅`).
    pub complying: Option<EveId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildConfig {
    /// Maximum number of Eve plus Adam states.
    pub state_cap: usize,
    /// Maximum number of Eve actions enumerated at a single state.
    pub action_cap: u128,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            state_cap: 1_000_000,
            action_cap: 1 << 22,
        }
    }
}

/// Reachable part of the epistemic game.
#[derive(Clone, Debug)]
pub struct EpistemicGame {
    eve: Vec<EveNode>,
    adam: Vec<AdamNode>,
    index: HashMap<EveState, EveId>,
    step_cap: u32,
}

impl EpistemicGame {
    pub fn init(&self) -> EveId {
        EveId(0)
    }

    pub fn eve(&self, id: EveId) -> &EveNode {
        &self.eve[id.index()]
    }

    pub fn adam(&self, id: AdamId) -> &AdamNode {
        &self.adam[id.index()]
    }

    pub fn num_eve(&self) -> usize {
        self.eve.len()
    }

    pub fn num_adam(&self) -> usize {
        self.adam.len()
    }

    pub fn eve_ids(&self) -> impl Iterator<Item = EveId> {
        (0..self.eve.len() as u32).map(EveId)
    }

    pub fn adam_ids(&self) -> impl Iterator<Item = AdamId> {
        (0..self.adam.len() as u32).map(AdamId)
    }

    pub fn find(&self, state: &EveState) -> Option<EveId> {
        self.index.get(state).copied()
    }

    /// Saturation value of the deviation step counter, `diam + 2`.
    pub fn step_cap(&self) -> u32 {
        self.step_cap
    }

    pub fn steps(&self, id: EveId) -> Vec<u32> {
        let mask = self.eve(id).steps;
        (0..128).filter(|r| mask >> r & 1 == 1).collect()
    }

    /// Adam state reached when Eve plays `action` at `eve`.
    pub fn adam_for_action(
        &self,
        game: &ConcurrentGame,
        graph: &CommGraph,
        eve: EveId,
        action: &EveAction,
    ) -> Result<AdamId, EpistemicError> {
        let state = &self.eve(eve).state;
        if !super::is_enabled(game, state, action) {
            return Err(EpistemicError::NotEnabled(action.render(game)));
        }
        let sig = successor_signature(game, graph, state, action)?;
        let edges: Option<Vec<(VertexId, EveId)>> = sig
            .into_iter()
            .map(|(v, x)| {
                self.find(&EveState {
                    vertex: v,
                    situations: x,
                })
                .map(|id| (v, id))
            })
            .collect();
        let edges = edges.ok_or_else(|| {
            EpistemicError::NotEnabled(format!("successor outside the built graph: {}", action.render(game)))
        })?;
        self.eve(eve)
            .adam
            .iter()
            .copied()
            .find(|&a| self.adam(a).edges == edges)
            .ok_or_else(|| EpistemicError::NotEnabled(action.render(game)))
    }

    /// Successors of an Adam state that leave the complying path.
    pub fn deviating_edges(&self, id: AdamId) -> impl Iterator<Item = (VertexId, EveId)> + '_ {
        let node = self.adam(id);
        node.edges
            .iter()
            .copied()
            .filter(move |&(_, e)| Some(e) != node.complying)
    }
}

fn intern(
    eve: &mut Vec<EveNode>,
    index: &mut HashMap<EveState, EveId>,
    queue: &mut VecDeque<EveId>,
    state: EveState,
) -> EveId {
    if let Some(&id) = index.get(&state) {
        return id;
    }
    let id = EveId(eve.len() as u32);
    index.insert(state.clone(), id);
    eve.push(EveNode {
        state,
        adam: Vec::new(),
        steps: 0,
    });
    queue.push_back(id);
    id
}

/// Breadth-first construction from `(v_init, ∅)`.
pub fn build_reachable(
    game: &ConcurrentGame,
    graph: &CommGraph,
    config: &BuildConfig,
) -> Result<EpistemicGame, EpistemicError> {
    let mut eve: Vec<EveNode> = Vec::new();
    let mut adam: Vec<AdamNode> = Vec::new();
    let mut index = HashMap::new();
    let mut queue = VecDeque::new();
    intern(&mut eve, &mut index, &mut queue, EveState::complying(game.init()));

    while let Some(id) = queue.pop_front() {
        let state = eve[id.index()].state.clone();
        let actions = builder_eve_actions(game, &state);
        if actions.total() > config.action_cap {
            return Err(EpistemicError::ActionCap(config.action_cap as usize));
        }
        let mut seen: HashMap<Vec<(VertexId, EveId)>, AdamId> = HashMap::new();
        for action in actions {
            let sig = successor_signature(game, graph, &state, &action)?;
            let edges: Vec<(VertexId, EveId)> = sig
                .into_iter()
                .map(|(v, x)| {
                    let s = EveState {
                        vertex: v,
                        situations: x,
                    };
                    (v, intern(&mut eve, &mut index, &mut queue, s))
                })
                .collect();
            if seen.contains_key(&edges) {
                continue;
            }
            let complying = match &action {
                EveAction::Move(m) => {
                    let t = game.next(state.vertex, m);
                    Some(index[&EveState::complying(t)])
                }
                EveAction::Dev(_) => None,
            };
            let aid = AdamId(adam.len() as u32);
            seen.insert(edges.clone(), aid);
            adam.push(AdamNode {
                origin: id,
                action,
                edges,
                complying,
            });
            eve[id.index()].adam.push(aid);
            if eve.len() + adam.len() > config.state_cap {
                return Err(EpistemicError::StateCap(config.state_cap));
            }
        }
    }

    let step_cap = graph.diameter() + 2;
    let mut eg = EpistemicGame {
        eve,
        adam,
        index,
        step_cap,
    };
    propagate_steps(&mut eg);
    tracing::debug!(eve = eg.num_eve(), adam = eg.num_adam(), "built epistemic game");
    Ok(eg)
}

fn propagate_steps(eg: &mut EpistemicGame) {
    let cap = eg.step_cap;
    let mut queue: VecDeque<(EveId, u32)> = VecDeque::new();
    let mark = |eg: &mut EpistemicGame, id: EveId, r: u32, queue: &mut VecDeque<(EveId, u32)>| {
        let bit = 1u128 << r;
        let node = &mut eg.eve[id.index()];
        if node.steps & bit == 0 {
            node.steps |= bit;
            queue.push_back((id, r));
        }
    };
    for a in 0..eg.adam.len() {
        let node = &eg.adam[a];
        if eg.eve[node.origin.index()].state.is_deviated() {
            continue;
        }
        let targets: Vec<EveId> = node
            .edges
            .iter()
            .map(|&(_, e)| e)
            .filter(|&e| eg.eve[e.index()].state.is_deviated())
            .collect();
        for t in targets {
            mark(eg, t, 1, &mut queue);
        }
    }
    while let Some((id, r)) = queue.pop_front() {
        let next = (r + 1).min(cap);
        let targets: Vec<EveId> = eg.eve[id.index()]
            .adam
            .iter()
            .flat_map(|&a| eg.adam[a.index()].edges.iter().map(|&(_, e)| e))
            .collect();
        for t in targets {
            mark(eg, t, next, &mut queue);
        }
    }
}
