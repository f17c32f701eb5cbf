//! Max-parity games solved by recursive attractor decomposition.

use std::collections::VecDeque;

/// `Even` wins a play when the highest priority seen infinitely often is even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Even,
    Odd,
}

impl Side {
    pub fn opponent(self) -> Side {
        match self {
            Side::Even => Side::Odd,
            Side::Odd => Side::Even,
        }
    }

    fn of_priority(p: u32) -> Side {
        if p.is_multiple_of(2) {
            Side::Even
        } else {
            Side::Odd
        }
    }
}

/// Every node must have at least one successor.
#[derive(Clone, Debug, Default)]
pub struct ParityGame {
    pub owner: Vec<Side>,
    pub priority: Vec<u32>,
    pub succ: Vec<Vec<u32>>,
}

impl ParityGame {
    pub fn add_node(&mut self, owner: Side, priority: u32) -> u32 {
        self.owner.push(owner);
        self.priority.push(priority);
        self.succ.push(Vec::new());
        (self.owner.len() - 1) as u32
    }

    pub fn add_edge(&mut self, from: u32, to: u32) {
        self.succ[from as usize].push(to);
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParitySolution {
    pub winner: Vec<Side>,
    /// For each node, a successor; winning for the owner on its own region.
    pub strategy: Vec<u32>,
}

pub fn parity_solve(pg: &ParityGame) -> ParitySolution {
    let n = pg.len();
    let mut pred = vec![Vec::new(); n];
    for (u, succ) in pg.succ.iter().enumerate() {
        assert!(!succ.is_empty(), "parity node {u} has no successor");
        for &v in succ {
            pred[v as usize].push(u as u32);
        }
    }
    let mut solver = Zielonka {
        pg,
        pred,
        strategy: pg.succ.iter().map(|s| s[0]).collect(),
    };
    let all = vec![true; n];
    let (even, _) = solver.solve(&all);
    let winner = even
        .iter()
        .map(|&w| if w { Side::Even } else { Side::Odd })
        .collect();
    ParitySolution {
        winner,
        strategy: solver.strategy,
    }
}

struct Zielonka<'a> {
    pg: &'a ParityGame,
    pred: Vec<Vec<u32>>,
    strategy: Vec<u32>,
}

impl Zielonka<'_> {
    /// Attractor of `target` for `side` inside `mask`; records attracting moves.
    fn attractor(&mut self, mask: &[bool], target: &[bool], side: Side) -> Vec<bool> {
        let n = mask.len();
        let mut attr = target.to_vec();
        let mut remaining: Vec<usize> = (0..n)
            .map(|u| {
                if mask[u] {
                    self.pg.succ[u].iter().filter(|&&v| mask[v as usize]).count()
                } else {
                    0
                }
            })
            .collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&u| attr[u]).collect();
        while let Some(v) = queue.pop_front() {
            for &u in &self.pred[v] {
                let u = u as usize;
                if !mask[u] || attr[u] {
                    continue;
                }
                if self.pg.owner[u] == side {
                    attr[u] = true;
                    self.strategy[u] = v as u32;
                    queue.push_back(u);
                } else {
                    remaining[u] -= 1;
                    if remaining[u] == 0 {
                        attr[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        attr
    }

    /// Returns the regions of Even and Odd within `mask`.
    fn solve(&mut self, mask: &[bool]) -> (Vec<bool>, Vec<bool>) {
        let n = mask.len();
        let Some(d) = (0..n).filter(|&u| mask[u]).map(|u| self.pg.priority[u]).max() else {
            return (vec![false; n], vec![false; n]);
        };
        let side = Side::of_priority(d);
        let top: Vec<bool> = (0..n).map(|u| mask[u] && self.pg.priority[u] == d).collect();
        let a = self.attractor(mask, &top, side);
        let rest: Vec<bool> = (0..n).map(|u| mask[u] && !a[u]).collect();
        let (w_even, w_odd) = self.solve(&rest);
        let w_opp = if side == Side::Even { &w_odd } else { &w_even };
        if !w_opp.iter().any(|&b| b) {
            // `side` wins everywhere; top nodes it owns may move anywhere in the mask.
            for u in 0..n {
                if top[u] && self.pg.owner[u] == side {
                    if let Some(&v) = self.pg.succ[u].iter().find(|&&v| mask[v as usize]) {
                        self.strategy[u] = v;
                    }
                }
            }
            let all = mask.to_vec();
            let none = vec![false; n];
            return if side == Side::Even { (all, none) } else { (none, all) };
        }
        let w_opp = w_opp.clone();
        let b = self.attractor(mask, &w_opp, side.opponent());
        let rest: Vec<bool> = (0..n).map(|u| mask[u] && !b[u]).collect();
        let (mut w_even, mut w_odd) = self.solve(&rest);
        let grow = if side == Side::Even { &mut w_odd } else { &mut w_even };
        for u in 0..n {
            if b[u] {
                grow[u] = true;
            }
        }
        (w_even, w_odd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_even_self_loop() {
        let mut pg = ParityGame::default();
        let u = pg.add_node(Side::Even, 2);
        pg.add_edge(u, u);
        assert_eq!(parity_solve(&pg).winner, vec![Side::Even]);
    }

    #[test]
    fn two_state_choice() {
        // Even at 0 (priority 1) chooses between itself and node 1 (priority 2).
        let mut pg = ParityGame::default();
        let a = pg.add_node(Side::Even, 1);
        let b = pg.add_node(Side::Odd, 2);
        pg.add_edge(a, a);
        pg.add_edge(a, b);
        pg.add_edge(b, a);
        let sol = parity_solve(&pg);
        assert_eq!(sol.winner, vec![Side::Even, Side::Even]);
        assert_eq!(sol.strategy[0], b);
    }
}
