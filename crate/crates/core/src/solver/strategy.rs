use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::epistemic::{AdamId, EpistemicGame, EveAction, EveId};
use crate::game::VertexId;

/// Memory component of a strategy node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Memory {
    /// Position on the complying lasso.
    Lasso(u32),
    /// Latest appearance record while punishing.
    Punish { perm: Vec<u8>, hit: Option<u8> },
    /// Memoryless.
    Positional,
    /// Node of a strategy profile machine.
    Profile(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyNode {
    pub eve: EveId,
    pub memory: Memory,
    pub choice: AdamId,
    /// One entry per Adam choice of `choice`, sorted by vertex.
    pub next: Vec<(VertexId, u32)>,
}

/// Finite-memory strategy of Eve, explicit over its reachable part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EveStrategy {
    pub nodes: Vec<StrategyNode>,
    pub init: u32,
}

impl EveStrategy {
    /// Explores a strategy from `init`: `expand` gives for a memory key its
    /// Eve state, memory label, chosen Adam state and successor keys.
    pub fn explore<K, E>(
        init: K,
        mut expand: impl FnMut(&K) -> Result<(EveId, Memory, AdamId, Vec<(VertexId, K)>), E>,
    ) -> Result<EveStrategy, E>
    where
        K: Clone + Eq + Hash,
    {
        let mut index: HashMap<K, u32> = HashMap::new();
        let mut keys: Vec<K> = Vec::new();
        let mut nodes: Vec<Option<StrategyNode>> = Vec::new();
        let mut queue = VecDeque::new();
        index.insert(init.clone(), 0);
        keys.push(init);
        nodes.push(None);
        queue.push_back(0u32);
        while let Some(id) = queue.pop_front() {
            let (eve, memory, choice, succ) = expand(&keys[id as usize])?;
            let mut next = Vec::with_capacity(succ.len());
            for (v, k) in succ {
                let nid = match index.get(&k) {
                    Some(&n) => n,
                    None => {
                        let n = keys.len() as u32;
                        index.insert(k.clone(), n);
                        keys.push(k);
                        nodes.push(None);
                        queue.push_back(n);
                        n
                    }
                };
                next.push((v, nid));
            }
            nodes[id as usize] = Some(StrategyNode {
                eve,
                memory,
                choice,
                next,
            });
        }
        Ok(EveStrategy {
            nodes: nodes.into_iter().map(|n| n.expect("explored")).collect(),
            init: 0,
        })
    }

    /// Memoryless strategy choosing `choose(e)` at every Eve state.
    pub fn positional(eg: &EpistemicGame, choose: impl Fn(EveId) -> AdamId) -> EveStrategy {
        let res: Result<EveStrategy, ()> = EveStrategy::explore(eg.init(), |&e| {
            let a = choose(e);
            Ok((e, Memory::Positional, a, eg.adam(a).edges.clone()))
        });
        res.expect("positional exploration cannot fail")
    }

    pub fn node(&self, id: u32) -> &StrategyNode {
        &self.nodes[id as usize]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn action<'a>(&self, eg: &'a EpistemicGame, id: u32) -> &'a EveAction {
        &eg.adam(self.node(id).choice).action
    }

    pub fn step(&self, id: u32, v: VertexId) -> Option<u32> {
        self.node(id)
            .next
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, n)| n)
    }

    /// Strategy nodes along the outcome where Adam always complies, as a
    /// prefix and a cycle. `None` if the outcome leaves the complying region.
    pub fn complying_nodes(&self, eg: &EpistemicGame) -> Option<(Vec<u32>, Vec<u32>)> {
        let mut seen: HashMap<u32, usize> = HashMap::new();
        let mut path = Vec::new();
        let mut n = self.init;
        loop {
            if let Some(&i) = seen.get(&n) {
                let cycle = path.split_off(i);
                return Some((path, cycle));
            }
            seen.insert(n, path.len());
            path.push(n);
            let c = eg.adam(self.node(n).choice).complying?;
            n = self.step(n, eg.eve(c).state.vertex)?;
        }
    }

    /// Vertices of the complying outcome as a prefix and a cycle.
    pub fn complying_lasso(&self, eg: &EpistemicGame) -> Option<(Vec<VertexId>, Vec<VertexId>)> {
        let (prefix, cycle) = self.complying_nodes(eg)?;
        let vx = |ns: Vec<u32>| -> Vec<VertexId> {
            ns.into_iter()
                .map(|n| eg.eve(self.node(n).eve).state.vertex)
                .collect()
        };
        Some((vx(prefix), vx(cycle)))
    }
}
