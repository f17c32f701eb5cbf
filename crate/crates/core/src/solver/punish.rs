//! Eve's winning region for punishing deviators: for the limit deviator set
//! `D` and the Inf-set `S`, every `d ∈ D` gets `payoff_d(S) ≤ p_d`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::epistemic::{AdamId, EpistemicGame, EveId};
use crate::game::{ConcurrentGame, PayoffVector, PlayerSet, VertexId};

use super::lar::{lar_priority, Lar};
use super::parity::{parity_solve, ParityGame, ParitySolution, Side};
use super::SolverError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductNode {
    Eve { eve: EveId, perm: u32, hit: Option<u8> },
    Adam { adam: AdamId, perm: u32 },
}

/// Parity game over deviated Eve states extended with a latest appearance
/// record of the colors (payoff-relevant vertices).
#[derive(Clone, Debug)]
pub struct Punishment {
    pub payoff: PayoffVector,
    /// Color index to vertex.
    pub colors: Vec<VertexId>,
    color_of: Vec<Option<u8>>,
    perms: Vec<Lar>,
    nodes: Vec<ProductNode>,
    index: HashMap<ProductNode, u32>,
    pub parity: ParityGame,
    pub solution: ParitySolution,
    entry: HashMap<EveId, u32>,
}

/// Does the deviator set `dev` stay within `p` on Inf-set `inf`?
pub fn punished(game: &ConcurrentGame, p: &PayoffVector, dev: PlayerSet, inf: &BTreeSet<VertexId>) -> bool {
    let payoff = game.payoff().payoff_of_inf_set(inf);
    dev.iter().all(|d| payoff.get(d.index()) <= p.get(d.index()))
}

impl Punishment {
    pub fn new(
        game: &ConcurrentGame,
        eg: &EpistemicGame,
        p: &PayoffVector,
        lar_cap: usize,
    ) -> Result<Punishment, SolverError> {
        let deviated: Vec<EveId> = eg
            .eve_ids()
            .filter(|&e| eg.eve(e).state.is_deviated())
            .collect();
        let atoms = game.payoff().atoms();
        let seen: BTreeSet<VertexId> = deviated.iter().map(|&e| eg.eve(e).state.vertex).collect();
        let colors: Vec<VertexId> = atoms.intersection(&seen).copied().collect();
        if colors.len() > 64 {
            return Err(SolverError::LarCap(lar_cap));
        }
        let mut color_of = vec![None; game.num_vertices()];
        for (i, v) in colors.iter().enumerate() {
            color_of[v.index()] = Some(i as u8);
        }

        let mut pu = Punishment {
            payoff: p.clone(),
            colors,
            color_of,
            perms: Vec::new(),
            nodes: Vec::new(),
            index: HashMap::new(),
            parity: ParityGame::default(),
            solution: ParitySolution {
                winner: Vec::new(),
                strategy: Vec::new(),
            },
            entry: HashMap::new(),
        };
        let mut perm_index: HashMap<Lar, u32> = HashMap::new();
        let mut accept_cache: HashMap<(PlayerSet, u64), bool> = HashMap::new();
        let mut queue = VecDeque::new();
        let fresh = Lar::new(pu.colors.len());

        for &e in &deviated {
            let id = pu.eve_node(game, eg, e, &fresh, &mut perm_index, &mut accept_cache, &mut queue);
            pu.entry.insert(e, id);
        }
        while let Some(id) = queue.pop_front() {
            if pu.nodes.len() > lar_cap {
                return Err(SolverError::LarCap(lar_cap));
            }
            match pu.nodes[id as usize] {
                ProductNode::Eve { eve, perm, .. } => {
                    for &a in &eg.eve(eve).adam {
                        let key = ProductNode::Adam { adam: a, perm };
                        let succ = match pu.index.get(&key) {
                            Some(&s) => s,
                            None => {
                                let s = pu.parity.add_node(Side::Odd, 0);
                                pu.nodes.push(key);
                                pu.index.insert(key, s);
                                queue.push_back(s);
                                s
                            }
                        };
                        pu.parity.add_edge(id, succ);
                    }
                }
                ProductNode::Adam { adam, perm } => {
                    let lar = pu.perms[perm as usize].clone();
                    for &(_, e) in &eg.adam(adam).edges {
                        let s = pu.eve_node(game, eg, e, &lar, &mut perm_index, &mut accept_cache, &mut queue);
                        pu.parity.add_edge(id, s);
                    }
                }
            }
        }
        pu.solution = parity_solve(&pu.parity);
        tracing::debug!(
            payoff = %p,
            colors = pu.colors.len(),
            nodes = pu.nodes.len(),
            "punishment game solved"
        );
        Ok(pu)
    }

    #[allow(clippy::too_many_arguments)]
    fn eve_node(
        &mut self,
        game: &ConcurrentGame,
        eg: &EpistemicGame,
        e: EveId,
        before: &Lar,
        perm_index: &mut HashMap<Lar, u32>,
        accept_cache: &mut HashMap<(PlayerSet, u64), bool>,
        queue: &mut VecDeque<u32>,
    ) -> u32 {
        let state = &eg.eve(e).state;
        let mut lar = before.clone();
        let hit = self.color_of[state.vertex.index()].map(|c| lar.visit(c));
        let perm = match perm_index.get(&lar) {
            Some(&i) => i,
            None => {
                let i = self.perms.len() as u32;
                self.perms.push(lar.clone());
                perm_index.insert(lar.clone(), i);
                i
            }
        };
        let key = ProductNode::Eve { eve: e, perm, hit };
        if let Some(&id) = self.index.get(&key) {
            return id;
        }
        let dev = state.situations.deviators();
        let colors = &self.colors;
        let p = &self.payoff;
        let priority = lar_priority(&lar, hit, |mask| {
            *accept_cache.entry((dev, mask)).or_insert_with(|| {
                let inf: BTreeSet<VertexId> = colors
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, v)| *v)
                    .collect();
                punished(game, p, dev, &inf)
            })
        });
        let id = self.parity.add_node(Side::Even, priority);
        self.nodes.push(key);
        self.index.insert(key, id);
        queue.push_back(id);
        id
    }

    /// Whether Eve wins from a fresh entry into deviated state `e` (`W_p`).
    pub fn wins(&self, e: EveId) -> bool {
        self.entry
            .get(&e)
            .is_some_and(|&n| self.solution.winner[n as usize] == Side::Even)
    }

    pub fn region(&self) -> BTreeSet<EveId> {
        self.entry.keys().copied().filter(|&e| self.wins(e)).collect()
    }

    pub fn entry(&self, e: EveId) -> Option<u32> {
        self.entry.get(&e).copied()
    }

    pub fn node(&self, id: u32) -> ProductNode {
        self.nodes[id as usize]
    }

    pub fn perm(&self, id: u32) -> &Lar {
        &self.perms[id as usize]
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// Adam state chosen by Eve's parity strategy at a product Eve node.
    pub fn choice(&self, id: u32) -> (AdamId, u32) {
        let succ = self.solution.strategy[id as usize];
        match self.nodes[succ as usize] {
            ProductNode::Adam { adam, .. } => (adam, succ),
            ProductNode::Eve { .. } => unreachable!("Eve nodes lead to Adam nodes"),
        }
    }

    /// Product Eve node after Adam picks `v'` at product Adam node `id`.
    pub fn after(&self, eg: &EpistemicGame, id: u32, v_next: VertexId) -> Option<u32> {
        let ProductNode::Adam { adam, .. } = self.nodes[id as usize] else {
            return None;
        };
        let k = eg.adam(adam).edges.iter().position(|&(v, _)| v == v_next)?;
        Some(self.parity.succ[id as usize][k])
    }
}
