//! Seeded random games and communication graphs for property suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::game::{
    ActionId, CommGraph, ConcurrentGame, InfExpr, PayoffRule, PayoffSpec, PayoffVector, PlayerId,
    VertexId,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub max_vertices: usize,
    pub max_players: usize,
    pub max_actions: usize,
    /// Upper bound on `num_moves(v)^players` at every vertex, keeping the
    /// number of Eve actions at deviated states small.
    pub move_budget: u64,
    pub max_payoff: i64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_vertices: 5,
            max_players: 4,
            max_actions: 3,
            move_budget: 1 << 12,
            max_payoff: 3,
        }
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn random_game(rng: &mut impl Rng, cfg: &GenConfig) -> ConcurrentGame {
    let nv = rng.gen_range(1..=cfg.max_vertices);
    let np = rng.gen_range(1..=cfg.max_players);
    let na = rng.gen_range(1..=cfg.max_actions);
    let all: Vec<ActionId> = (0..na).map(ActionId::from_index).collect();
    let mut allow = Vec::with_capacity(nv);
    for _ in 0..nv {
        loop {
            let row: Vec<Vec<ActionId>> = (0..np)
                .map(|_| {
                    let k = match rng.gen_range(0..10) {
                        0..=5 => 1,
                        6..=8 => 2,
                        _ => 3,
                    }
                    .min(na);
                    let mut acts = all.clone();
                    acts.shuffle(rng);
                    acts.truncate(k);
                    acts.sort();
                    acts
                })
                .collect();
            let moves: u64 = row.iter().map(|r| r.len() as u64).product();
            if moves.saturating_pow(np as u32) <= cfg.move_budget {
                allow.push(row);
                break;
            }
        }
    }
    // Tab drawn through a table so construction stays seed-deterministic.
    let targets: Vec<Vec<VertexId>> = allow
        .iter()
        .map(|row: &Vec<Vec<ActionId>>| {
            let moves: usize = row.iter().map(Vec::len).product();
            (0..moves)
                .map(|_| VertexId::from_index(rng.gen_range(0..nv)))
                .collect()
        })
        .collect();
    let mut counters = vec![0usize; nv];

    let payoff = random_payoff(rng, nv, np, cfg.max_payoff);
    ConcurrentGame::new(
        names("v", nv),
        names("", np),
        names("x", na),
        VertexId(0),
        allow,
        |v, _| {
            let i = counters[v.index()];
            counters[v.index()] += 1;
            targets[v.index()][i]
        },
        payoff,
    )
    .expect("generated game is valid")
}

fn random_vector(rng: &mut impl Rng, np: usize, max: i64) -> PayoffVector {
    PayoffVector::from_ints(&(0..np).map(|_| rng.gen_range(0..=max)).collect::<Vec<_>>())
}

fn random_payoff(rng: &mut impl Rng, nv: usize, np: usize, max: i64) -> PayoffSpec {
    let n_rules = rng.gen_range(0..=3);
    let atom = |rng: &mut dyn rand::RngCore| InfExpr::Inf(VertexId::from_index(rng.gen_range(0..nv)));
    let rules = (0..n_rules)
        .map(|_| {
            let condition = match rng.gen_range(0..3) {
                0 => atom(rng),
                1 => InfExpr::And(Box::new(atom(rng)), Box::new(InfExpr::Not(Box::new(atom(rng))))),
                _ => InfExpr::Or(Box::new(atom(rng)), Box::new(atom(rng))),
            };
            PayoffRule {
                condition,
                vector: random_vector(rng, np, max),
            }
        })
        .collect();
    PayoffSpec::new(rules, random_vector(rng, np, max), np).expect("arity matches")
}

/// Each ordered pair is an edge with probability `density`.
pub fn random_comm(rng: &mut impl Rng, players: usize, density: f64) -> CommGraph {
    let mut edges = Vec::new();
    for a in 0..players {
        for b in 0..players {
            if a != b && rng.gen_bool(density) {
                edges.push((PlayerId::from_index(a), PlayerId::from_index(b)));
            }
        }
    }
    CommGraph::new(players, edges).expect("generated graph is valid")
}
