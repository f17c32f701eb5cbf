//! Exact verification of an Eve strategy, independent of the solver: the
//! successor states are recomputed from the update functions and every
//! reachable cycle of the deviated region is examined.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::epistemic::{adam_choices, is_enabled, successor, EpistemicGame};
use crate::game::{CommGraph, ConcurrentGame, PayoffVector, PlayerSet, VertexId};

use super::punish::punished;
use super::scc::strongly_connected;
use super::strategy::EveStrategy;
use super::SolverError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelCheckReport {
    /// `outcome_ok && punishing_ok`.
    pub winning: bool,
    /// The complying outcome stays complying and has payoff `p`.
    pub outcome_ok: bool,
    /// The strategy is well formed and no deviation leads to a cycle that
    /// rewards a remaining deviator above `p`.
    pub punishing_ok: bool,
    pub complying_payoff: Option<String>,
    pub prefix: Vec<VertexId>,
    pub cycle: Vec<VertexId>,
    pub violations: Vec<String>,
}

/// Largest number of distinct vertices in one deviated SCC for which all
/// Inf-sets are enumerated.
const VERTEX_SUBSET_CAP: usize = 20;

pub fn model_check_strategy(
    game: &ConcurrentGame,
    graph: &CommGraph,
    eg: &EpistemicGame,
    strategy: &EveStrategy,
    p: &PayoffVector,
) -> Result<ModelCheckReport, SolverError> {
    let mut violations = Vec::new();
    let mut outcome_violations = 0;
    let n = strategy.len();
    if n == 0 || strategy.init as usize >= n {
        return Err(SolverError::Undefined("empty strategy".into()));
    }
    if eg.eve(strategy.node(strategy.init).eve).state
        != crate::epistemic::EveState::complying(game.init())
    {
        violations.push("strategy does not start in the initial state".to_string());
    }

    // Local consistency of every node.
    for id in 0..n as u32 {
        let node = strategy.node(id);
        let state = &eg.eve(node.eve).state;
        let action = &eg.adam(node.choice).action;
        if !is_enabled(game, state, action) {
            violations.push(format!("node {id}: action {} not enabled", action.render(game)));
            continue;
        }
        let choices = adam_choices(game, state, action)?;
        let got: Vec<VertexId> = node.next.iter().map(|&(v, _)| v).collect();
        if got != choices {
            return Err(SolverError::Undefined(format!(
                "node {id} at {}: successors {:?} but Adam may pick {:?}",
                state.render(game),
                got,
                choices
            )));
        }
        for &(v, t) in &node.next {
            if t as usize >= n {
                return Err(SolverError::Undefined(format!("node {id}: dangling successor")));
            }
            let expected = successor(game, graph, state, action, v)?;
            let actual = &eg.eve(strategy.node(t).eve).state;
            if &expected != actual {
                violations.push(format!(
                    "node {id}: successor at {} is {}, update gives {}",
                    game.vertex_name(v),
                    actual.render(game),
                    expected.render(game)
                ));
            }
        }
    }

    // Complying outcome: follow the unique successor with an empty situation set.
    let state_of = |id: u32| &eg.eve(strategy.node(id).eve).state;
    let mut seen: HashMap<u32, usize> = HashMap::new();
    let mut path: Vec<u32> = Vec::new();
    let mut cur = strategy.init;
    let mut complying_payoff = None;
    let (mut prefix, mut cycle) = (Vec::new(), Vec::new());
    loop {
        if let Some(&i) = seen.get(&cur) {
            let vx: Vec<VertexId> = path.iter().map(|&k| state_of(k).vertex).collect();
            prefix = vx[..i].to_vec();
            cycle = vx[i..].to_vec();
            let inf: BTreeSet<VertexId> = cycle.iter().copied().collect();
            let pay = game.payoff().payoff_of_inf_set(&inf);
            if &pay != p {
                violations.push(format!("complying outcome has payoff {pay}, expected {p}"));
                outcome_violations += 1;
            }
            complying_payoff = Some(pay.to_string());
            break;
        }
        seen.insert(cur, path.len());
        path.push(cur);
        let next = strategy
            .node(cur)
            .next
            .iter()
            .find(|&&(_, t)| !state_of(t).is_deviated());
        match next {
            Some(&(_, t)) if !state_of(cur).is_deviated() => cur = t,
            _ => {
                violations.push("complying outcome leaves the complying region".to_string());
                outcome_violations += 1;
                break;
            }
        }
    }

    // Deviated region: no reachable cycle may reward a remaining deviator.
    let reachable = reachable_nodes(strategy);
    let dev_nodes: Vec<u32> = (0..n as u32)
        .filter(|&id| reachable[id as usize] && state_of(id).is_deviated())
        .collect();
    let local: HashMap<u32, usize> = dev_nodes.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let succ: Vec<Vec<usize>> = dev_nodes
        .iter()
        .map(|&id| {
            strategy
                .node(id)
                .next
                .iter()
                .filter_map(|(_, t)| local.get(t).copied())
                .collect()
        })
        .collect();
    for comp in strongly_connected(&succ) {
        let dev: PlayerSet = state_of(dev_nodes[comp[0]]).situations.deviators();
        let vertices: Vec<VertexId> = comp
            .iter()
            .map(|&i| state_of(dev_nodes[i]).vertex)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if vertices.len() > VERTEX_SUBSET_CAP {
            return Err(SolverError::SubsetCap(VERTEX_SUBSET_CAP));
        }
        for mask in 1u64..(1 << vertices.len()) {
            let w: BTreeSet<VertexId> = vertices
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| *v)
                .collect();
            if punished(game, p, dev, &w) {
                continue;
            }
            // A cycle with Inf-set exactly `w` exists iff some SCC of the
            // restriction to `w` covers all of `w`.
            let keep: Vec<usize> = comp
                .iter()
                .copied()
                .filter(|&i| w.contains(&state_of(dev_nodes[i]).vertex))
                .collect();
            let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
            let sub: Vec<Vec<usize>> = keep
                .iter()
                .map(|&i| succ[i].iter().filter_map(|j| pos.get(j).copied()).collect())
                .collect();
            for c in strongly_connected(&sub) {
                let nontrivial = c.len() > 1 || sub[c[0]].contains(&c[0]);
                let covered: BTreeSet<VertexId> =
                    c.iter().map(|&k| state_of(dev_nodes[keep[k]]).vertex).collect();
                if nontrivial && covered == w {
                    let names: Vec<&str> = w.iter().map(|v| game.vertex_name(*v)).collect();
                    violations.push(format!(
                        "deviators {} reach a cycle visiting {{{}}} with payoff {}",
                        crate::epistemic::render_set(game, dev),
                        names.join(","),
                        game.payoff().payoff_of_inf_set(&w)
                    ));
                    break;
                }
            }
        }
    }

    Ok(ModelCheckReport {
        winning: violations.is_empty(),
        outcome_ok: outcome_violations == 0,
        punishing_ok: violations.len() == outcome_violations,
        complying_payoff,
        prefix,
        cycle,
        violations,
    })
}

fn reachable_nodes(strategy: &EveStrategy) -> Vec<bool> {
    let mut seen = vec![false; strategy.len()];
    let mut stack = vec![strategy.init];
    seen[strategy.init as usize] = true;
    while let Some(u) = stack.pop() {
        for &(_, t) in &strategy.node(u).next {
            if !seen[t as usize] {
                seen[t as usize] = true;
                stack.push(t);
            }
        }
    }
    seen
}
