//! Oracles shared by the integration targets.
#![allow(dead_code)]

use std::collections::HashSet;

use equisynth::solver::{lar_priority, Lar, ParityGame, Side};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_parity(rng: &mut ChaCha8Rng) -> ParityGame {
    let n = rng.gen_range(1..=8);
    let mut pg = ParityGame::default();
    for _ in 0..n {
        let owner = if rng.gen_bool(0.5) { Side::Even } else { Side::Odd };
        pg.add_node(owner, rng.gen_range(0..6));
    }
    for u in 0..n as u32 {
        let k = rng.gen_range(1..=3);
        let mut targets: Vec<u32> = (0..k).map(|_| rng.gen_range(0..n as u32)).collect();
        targets.sort();
        targets.dedup();
        for t in targets {
            pg.add_edge(u, t);
        }
    }
    pg
}

/// Nodes from which the opponent of `side` can force a cycle whose top
/// priority has the opponent's parity, once `side` plays `choice`.
pub fn opponent_wins_against(pg: &ParityGame, side: Side, choice: &[u32]) -> Vec<bool> {
    let n = pg.len();
    let edges = |u: usize| -> Vec<usize> {
        if pg.owner[u] == side {
            vec![choice[u] as usize]
        } else {
            pg.succ[u].iter().map(|&t| t as usize).collect()
        }
    };
    let wanted = |q: u32| q.is_multiple_of(2) == (side == Side::Odd);
    // Good cycle for the opponent: some node of top priority q with q of its
    // parity, lying on a cycle through nodes of priority ≤ q.
    let mut good = vec![false; n];
    for s in 0..n {
        let q = pg.priority[s];
        if !wanted(q) {
            continue;
        }
        let mut seen = vec![false; n];
        let mut stack: Vec<usize> = edges(s).into_iter().filter(|&t| pg.priority[t] <= q).collect();
        while let Some(u) = stack.pop() {
            if seen[u] {
                continue;
            }
            seen[u] = true;
            stack.extend(edges(u).into_iter().filter(|&t| pg.priority[t] <= q));
        }
        good[s] = seen[s];
    }
    (0..n)
        .map(|v| {
            let mut seen = vec![false; n];
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                if std::mem::replace(&mut seen[u], true) {
                    continue;
                }
                stack.extend(edges(u));
            }
            (0..n).any(|s| seen[s] && good[s])
        })
        .collect()
}

pub fn all_choices(pg: &ParityGame, side: Side) -> Vec<Vec<u32>> {
    let mut out = vec![pg.succ.iter().map(|s| s[0]).collect::<Vec<u32>>()];
    for u in 0..pg.len() {
        if pg.owner[u] != side {
            continue;
        }
        out = out
            .into_iter()
            .flat_map(|c| {
                pg.succ[u].iter().map(move |&t| {
                    let mut c = c.clone();
                    c[u] = t;
                    c
                })
            })
            .collect();
    }
    out
}

/// Winner of every node by enumerating Even's positional strategies.
pub fn brute_force_winners(pg: &ParityGame) -> Vec<Side> {
    let mut even_wins = vec![false; pg.len()];
    for c in all_choices(pg, Side::Even) {
        let lose = opponent_wins_against(pg, Side::Even, &c);
        for v in 0..pg.len() {
            even_wins[v] |= !lose[v];
        }
    }
    even_wins
        .into_iter()
        .map(|w| if w { Side::Even } else { Side::Odd })
        .collect()
}

/// Random lasso over `k ≤ 5` colours (some positions uncoloured) and a random
/// Muller table. Returns the parity verdict after the LAR reduction and the
/// direct Inf-set verdict, plus a description for failure messages.
pub fn lar_lasso_round(rng: &mut ChaCha8Rng) -> (bool, bool, String) {
    let k = rng.gen_range(1..=5usize);
    let accepting: HashSet<u64> = (0..1u64 << k).filter(|_| rng.gen_bool(0.5)).collect();
    let pos = |rng: &mut ChaCha8Rng| -> Option<u8> {
        if rng.gen_bool(0.25) {
            None
        } else {
            Some(rng.gen_range(0..k as u8))
        }
    };
    let prefix: Vec<Option<u8>> = (0..rng.gen_range(0..6)).map(|_| pos(rng)).collect();
    let cycle: Vec<Option<u8>> = (0..rng.gen_range(1..8)).map(|_| pos(rng)).collect();
    let inf: u64 = cycle.iter().flatten().fold(0, |m, &c| m | 1 << c);

    let mut lar = Lar::new(k);
    let step = |lar: &mut Lar, c: Option<u8>| {
        let hit = c.map(|c| lar.visit(c));
        lar_priority(lar, hit, |m| accepting.contains(&m))
    };
    for &c in &prefix {
        step(&mut lar, c);
    }
    // Iterate the cycle until the record at its start repeats; the last
    // period is then the periodic part of the priority sequence.
    let mut starts: Vec<Lar> = Vec::new();
    let top = loop {
        if starts.contains(&lar) {
            let mut top = 0;
            for &c in &cycle {
                top = top.max(step(&mut lar, c));
            }
            break top;
        }
        starts.push(lar.clone());
        for &c in &cycle {
            step(&mut lar, c);
        }
    };
    (top % 2 == 0, accepting.contains(&inf), format!("{prefix:?} {cycle:?}"))
}
