//! Directed communication graphs between players.

use std::collections::{BTreeSet, VecDeque};

use super::{GameError, PlayerId, PlayerSet, MAX_PLAYERS};

/// Communication graph. An edge `(a, b)` lets `b` observe the actions and
/// messages of `a`. The relation `a ⇢ b` is the edge relation plus identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommGraph {
    players: usize,
    edges: BTreeSet<(PlayerId, PlayerId)>,
    /// `succ[a]` = `{b | a ⇢ b}`.
    succ: Vec<PlayerSet>,
    /// `vois[b]` = `{a | a ⇢ b}`.
    vois: Vec<PlayerSet>,
    dist: Vec<Vec<Option<u32>>>,
    diameter: u32,
}

/// All-pairs distances and diameter of a communication graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    pub dist: Vec<Vec<Option<u32>>>,
    pub diameter: u32,
}

impl CommGraph {
    pub fn new(
        players: usize,
        edges: impl IntoIterator<Item = (PlayerId, PlayerId)>,
    ) -> Result<Self, GameError> {
        if players > MAX_PLAYERS {
            return Err(GameError::TooManyPlayers(players));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a.index() >= players || b.index() >= players {
                return Err(GameError::UnknownPlayer(format!("{}", a.max(b))));
            }
            if a == b {
                return Err(GameError::Parse(format!("self-loop edge on player {a}")));
            }
            set.insert((a, b));
        }
        let mut succ: Vec<PlayerSet> = (0..players)
            .map(|a| PlayerSet::singleton(PlayerId::from_index(a)))
            .collect();
        let mut vois = succ.clone();
        for &(a, b) in &set {
            succ[a.index()].insert(b);
            vois[b.index()].insert(a);
        }
        let dist = bfs_distances(players, &succ);
        let diameter = dist
            .iter()
            .flatten()
            .filter_map(|d| *d)
            .max()
            .unwrap_or(0);
        Ok(CommGraph {
            players,
            edges: set,
            succ,
            vois,
            dist,
            diameter,
        })
    }

    pub fn edgeless(players: usize) -> Self {
        CommGraph::new(players, []).expect("edgeless graph is valid")
    }

    pub fn complete(players: usize) -> Self {
        let edges = (0..players).flat_map(|a| {
            (0..players)
                .filter(move |&b| b != a)
                .map(move |b| (PlayerId::from_index(a), PlayerId::from_index(b)))
        });
        CommGraph::new(players, edges).expect("complete graph is valid")
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn edges(&self) -> impl Iterator<Item = (PlayerId, PlayerId)> + '_ {
        self.edges.iter().copied()
    }

    /// `a ⇢ b`.
    pub fn relates(&self, a: PlayerId, b: PlayerId) -> bool {
        self.succ[a.index()].contains(b)
    }

    /// Players `b` with `a ⇢ b` (including `a`).
    pub fn reach(&self, a: PlayerId) -> PlayerSet {
        self.succ[a.index()]
    }

    /// Neighbourhood `{a | a ⇢ b}` (including `b`).
    pub fn vois(&self, b: PlayerId) -> PlayerSet {
        self.vois[b.index()]
    }

    /// `set ∪ {a | ∃ b ∈ set, b ⇢ a}`.
    pub fn expand(&self, set: PlayerSet) -> PlayerSet {
        set.iter().fold(set, |acc, b| acc.union(self.succ[b.index()]))
    }

    pub fn distance(&self, a: PlayerId, b: PlayerId) -> Option<u32> {
        self.dist[a.index()][b.index()]
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    pub fn comm_distances(&self) -> DistanceMatrix {
        DistanceMatrix {
            dist: self.dist.clone(),
            diameter: self.diameter,
        }
    }
}

fn bfs_distances(n: usize, succ: &[PlayerSet]) -> Vec<Vec<Option<u32>>> {
    (0..n)
        .map(|src| {
            let mut d = vec![None; n];
            d[src] = Some(0);
            let mut queue = VecDeque::from([src]);
            while let Some(a) = queue.pop_front() {
                let da = d[a].unwrap();
                for b in succ[a].iter() {
                    if d[b.index()].is_none() {
                        d[b.index()] = Some(da + 1);
                        queue.push_back(b.index());
                    }
                }
            }
            d
        })
        .collect()
}
