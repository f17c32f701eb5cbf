use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::epistemic::{AdamId, EpistemicGame, EveId};
use crate::game::{ConcurrentGame, PayoffVector, VertexId};

use super::punish::Punishment;
use super::scc::{induces_cycle, strongly_connected};
use super::strategy::{EveStrategy, Memory};
use super::{Query, SolverError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    /// Maximum number of nodes in a punishment parity game.
    pub lar_cap: usize,
    /// Largest SCC whose subsets are enumerated when searching the Inf-set.
    pub subset_cap: usize,
    /// Required vertex set visited infinitely often by the complying outcome.
    pub main_inf: Option<BTreeSet<VertexId>>,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            lar_cap: 2_000_000,
            subset_cap: 20,
            main_inf: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub payoff: PayoffVector,
    pub strategy: EveStrategy,
    pub prefix: Vec<VertexId>,
    pub cycle: Vec<VertexId>,
    /// `|W_p|`.
    pub punishing_states: usize,
}

#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Found(Solution),
    NotFound { tried: Vec<PayoffVector> },
}

/// Distinct payoff vectors of the rule list (default last) that satisfy `query`.
pub fn candidate_payoffs(game: &ConcurrentGame, query: &Query) -> Vec<PayoffVector> {
    game.payoff()
        .distinct_vectors()
        .into_iter()
        .filter(|p| query.eval(p))
        .collect()
}

/// `W_p`.
pub fn punishment_region(
    game: &ConcurrentGame,
    eg: &EpistemicGame,
    p: &PayoffVector,
    lar_cap: usize,
) -> Result<BTreeSet<EveId>, SolverError> {
    Ok(Punishment::new(game, eg, p, lar_cap)?.region())
}

/// Tries the candidates in order and returns the first winning strategy.
pub fn solve(
    game: &ConcurrentGame,
    eg: &EpistemicGame,
    query: &Query,
    config: &SolveConfig,
) -> Result<SolveOutcome, SolverError> {
    query
        .check_arity(game.num_players())
        .map_err(|e| SolverError::Query(e.0))?;
    let mut tried = Vec::new();
    for p in candidate_payoffs(game, query) {
        if let Some(sol) = solve_for(game, eg, &p, config)? {
            return Ok(SolveOutcome::Found(sol));
        }
        tried.push(p);
    }
    Ok(SolveOutcome::NotFound { tried })
}

/// Complying Eve states whose Adam state is p-safe, with the safe edges
/// `(target, adam)` per state (first Adam state per target).
fn safe_complying_graph(
    eg: &EpistemicGame,
    pu: &Punishment,
) -> HashMap<EveId, Vec<(EveId, AdamId)>> {
    let mut out = HashMap::new();
    for e in eg.eve_ids().filter(|&e| !eg.eve(e).state.is_deviated()) {
        let mut edges: Vec<(EveId, AdamId)> = Vec::new();
        for &a in &eg.eve(e).adam {
            let node = eg.adam(a);
            let Some(c) = node.complying else { continue };
            if eg.deviating_edges(a).all(|(_, d)| pu.wins(d)) && !edges.iter().any(|&(t, _)| t == c) {
                edges.push((c, a));
            }
        }
        out.insert(e, edges);
    }
    out
}

/// Winning strategy for exactly `p`, if any.
pub fn solve_for(
    game: &ConcurrentGame,
    eg: &EpistemicGame,
    p: &PayoffVector,
    config: &SolveConfig,
) -> Result<Option<Solution>, SolverError> {
    let pu = Punishment::new(game, eg, p, config.lar_cap)?;
    let safe = safe_complying_graph(eg, &pu);

    // Reachable complying states through safe edges, in BFS order.
    let mut order: Vec<EveId> = vec![eg.init()];
    let mut local: HashMap<EveId, usize> = HashMap::from([(eg.init(), 0)]);
    let mut parent: Vec<Option<(usize, AdamId)>> = vec![None];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for &(t, a) in &safe[&order[i]] {
            if let std::collections::hash_map::Entry::Vacant(e) = local.entry(t) {
                e.insert(order.len());
                order.push(t);
                parent.push(Some((i, a)));
                queue.push_back(order.len() - 1);
            }
        }
    }
    let succ: Vec<Vec<usize>> = order
        .iter()
        .map(|e| safe[e].iter().map(|(t, _)| local[t]).collect())
        .collect();
    let vertex_of = |i: usize| eg.eve(order[i]).state.vertex;

    let mut found: Option<Vec<usize>> = None;
    let mut comps = strongly_connected(&succ);
    comps.sort();
    'outer: for comp in &comps {
        if let Some(target) = &config.main_inf {
            let s: Vec<usize> = comp
                .iter()
                .copied()
                .filter(|&i| target.contains(&vertex_of(i)))
                .collect();
            let vs: BTreeSet<VertexId> = s.iter().map(|&i| vertex_of(i)).collect();
            if &vs == target
                && induces_cycle(&succ, &s)
                && &game.payoff().payoff_of_inf_set(&vs) == p
            {
                found = Some(s);
                break 'outer;
            }
            continue;
        }
        if comp.len() == 1 && !succ[comp[0]].contains(&comp[0]) {
            continue;
        }
        if comp.len() > config.subset_cap {
            return Err(SolverError::SubsetCap(config.subset_cap));
        }
        for k in 1..=comp.len() {
            for subset in combinations(comp, k) {
                let vs: BTreeSet<VertexId> = subset.iter().map(|&i| vertex_of(i)).collect();
                if &game.payoff().payoff_of_inf_set(&vs) == p && induces_cycle(&succ, &subset) {
                    found = Some(subset);
                    break 'outer;
                }
            }
        }
    }
    let Some(inf) = found else {
        return Ok(None);
    };

    // Lasso: path to the first state of `inf`, then a closed walk covering it.
    let start = inf[0];
    let mut prefix: Vec<(usize, AdamId)> = Vec::new();
    let mut cur = start;
    while let Some((pi, a)) = parent[cur] {
        prefix.push((pi, a));
        cur = pi;
    }
    prefix.reverse();
    let edge = |from: usize, to: usize| -> AdamId {
        safe[&order[from]]
            .iter()
            .find(|(t, _)| local[t] == to)
            .map(|&(_, a)| a)
            .unwrap()
    };
    let mut cycle: Vec<(usize, AdamId)> = Vec::new();
    let mut at = start;
    let mut targets: Vec<usize> = inf[1..].to_vec();
    targets.push(start);
    for t in targets {
        let path = path_within(&succ, &inf, at, t);
        for w in path.windows(2) {
            cycle.push((w[0], edge(w[0], w[1])));
        }
        at = t;
    }
    let lasso: Vec<(EveId, AdamId)> = prefix
        .iter()
        .chain(cycle.iter())
        .map(|&(i, a)| (order[i], a))
        .collect();
    let loop_to = prefix.len();

    #[derive(Clone, PartialEq, Eq, Hash)]
    enum Key {
        Lasso(usize),
        Punish(u32),
    }
    let strategy = EveStrategy::explore(Key::Lasso(0), |k| -> Result<_, SolverError> {
        match *k {
            Key::Lasso(i) => {
                let (e, a) = lasso[i];
                let node = eg.adam(a);
                let next_pos = if i + 1 == lasso.len() { loop_to } else { i + 1 };
                let next = node
                    .edges
                    .iter()
                    .map(|&(v, t)| {
                        if Some(t) == node.complying {
                            (v, Key::Lasso(next_pos))
                        } else {
                            (v, Key::Punish(pu.entry(t).expect("deviated state")))
                        }
                    })
                    .collect();
                Ok((e, Memory::Lasso(i as u32), a, next))
            }
            Key::Punish(n) => {
                let super::punish::ProductNode::Eve { eve, perm, hit } = pu.node(n) else {
                    unreachable!()
                };
                let (a, an) = pu.choice(n);
                let next = eg
                    .adam(a)
                    .edges
                    .iter()
                    .map(|&(v, _)| (v, Key::Punish(pu.after(eg, an, v).unwrap())))
                    .collect();
                let memory = Memory::Punish {
                    perm: pu.perm(perm).0.clone(),
                    hit,
                };
                Ok((eve, memory, a, next))
            }
        }
    })?;
    let vx = |s: &[(usize, AdamId)]| s.iter().map(|&(i, _)| vertex_of(i)).collect::<Vec<_>>();
    Ok(Some(Solution {
        payoff: p.clone(),
        strategy,
        prefix: vx(&prefix),
        cycle: vx(&cycle),
        punishing_states: pu.region().len(),
    }))
}

/// Shortest path from `from` to `to` (at least one edge) inside `nodes`.
fn path_within(succ: &[Vec<usize>], nodes: &[usize], from: usize, to: usize) -> Vec<usize> {
    let mut prev: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for &w in &succ[from] {
        if nodes.contains(&w) && !prev.contains_key(&w) {
            prev.insert(w, from);
            queue.push_back(w);
        }
    }
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &w in &succ[u] {
            if nodes.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    loop {
        let p = prev[&cur];
        path.push(p);
        if p == from && path.len() > 1 {
            break;
        }
        cur = p;
    }
    path.reverse();
    path
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > items.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + items.len() - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_count() {
        let items = [3, 5, 7, 9];
        assert_eq!(combinations(&items, 2).len(), 6);
        assert_eq!(combinations(&items, 4), vec![vec![3, 5, 7, 9]]);
        assert_eq!(combinations(&items, 1).len(), 4);
    }

    #[test]
    fn path_inside_set() {
        let succ = vec![vec![1], vec![2], vec![0]];
        assert_eq!(path_within(&succ, &[0, 1, 2], 0, 0), vec![0, 1, 2, 0]);
        assert_eq!(path_within(&succ, &[0, 1, 2], 0, 2), vec![0, 1, 2]);
    }
}
