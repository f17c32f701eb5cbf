//! Concurrent games, communication graphs, histories and payoffs.

mod comm;
mod history;
mod ids;
pub mod parse;
mod payoff;

use std::fmt;

use thiserror::Error;

pub use comm::{CommGraph, DistanceMatrix};
pub use history::{project_history, FullHistory, LocalHistory, LocalStep, Message, Step};
pub use ids::{ActionId, PlayerId, PlayerSet, VertexId, MAX_PLAYERS};
pub use payoff::{
    format_rational, parse_rational, InfExpr, PayoffRule, PayoffSpec, PayoffVector, Rational,
    RationalLit,
};

#[derive(Debug, Error)]
pub enum GameError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown player `{0}`")]
    UnknownPlayer(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    #[error("action `{action}` is not allowed for player `{player}` at vertex `{vertex}`")]
    ActionNotAllowed {
        vertex: String,
        player: String,
        action: String,
    },
    #[error("vertex `{0}` has no allowed action for some player")]
    EmptyAllow(String),
    #[error("vertex `{vertex}`: no transition pattern matches move {mv}")]
    NotTotal { vertex: String, mv: String },
    #[error("vertex `{0}`: the last transition pattern must be a catch-all")]
    MissingCatchAll(String),
    #[error("payoff vector has {got} entries, expected {expected}")]
    PayoffArity { expected: usize, got: usize },
    #[error("empty cycle")]
    EmptyCycle,
    #[error("too many players ({0}); at most 64 are supported")]
    TooManyPlayers(usize),
    #[error("invalid history: {0}")]
    InvalidHistory(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// A move: one action per player.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct Move(pub Vec<ActionId>);

impl Move {
    pub fn get(&self, p: PlayerId) -> ActionId {
        self.0[p.index()]
    }

    /// `m[d/δ]`.
    pub fn with(&self, p: PlayerId, a: ActionId) -> Move {
        let mut m = self.clone();
        m.0[p.index()] = a;
        m
    }

    pub fn set(&mut self, p: PlayerId, a: ActionId) {
        self.0[p.index()] = a;
    }

    pub fn players(&self) -> usize {
        self.0.len()
    }
}

/// Concurrent multiplayer game with an explicit transition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcurrentGame {
    vertex_names: Vec<String>,
    player_names: Vec<String>,
    action_names: Vec<String>,
    init: VertexId,
    /// `allow[v][a]`, sorted.
    allow: Vec<Vec<Vec<ActionId>>>,
    /// `tab[v][i]` for the `i`-th allowed move at `v` in lexicographic order.
    tab: Vec<Vec<VertexId>>,
    payoff: PayoffSpec,
}

impl ConcurrentGame {
    /// Builds a game from an explicit transition function over allowed moves.
    pub fn new(
        vertex_names: Vec<String>,
        player_names: Vec<String>,
        action_names: Vec<String>,
        init: VertexId,
        allow: Vec<Vec<Vec<ActionId>>>,
        mut tab: impl FnMut(VertexId, &Move) -> VertexId,
        payoff: PayoffSpec,
    ) -> Result<Self, GameError> {
        let nv = vertex_names.len();
        let np = player_names.len();
        if np > MAX_PLAYERS {
            return Err(GameError::TooManyPlayers(np));
        }
        if init.index() >= nv {
            return Err(GameError::UnknownVertex(init.to_string()));
        }
        if allow.len() != nv || allow.iter().any(|row| row.len() != np) {
            return Err(GameError::Parse("allow table has wrong shape".into()));
        }
        let mut allow = allow;
        for (v, row) in allow.iter_mut().enumerate() {
            for acts in row.iter_mut() {
                acts.sort();
                acts.dedup();
                if acts.is_empty() {
                    return Err(GameError::EmptyAllow(vertex_names[v].clone()));
                }
                if acts.iter().any(|a| a.index() >= action_names.len()) {
                    return Err(GameError::UnknownAction(format!("{:?}", acts)));
                }
            }
        }
        if payoff.default.len() != np {
            return Err(GameError::PayoffArity {
                expected: np,
                got: payoff.default.len(),
            });
        }
        let mut g = ConcurrentGame {
            vertex_names,
            player_names,
            action_names,
            init,
            allow,
            tab: Vec::new(),
            payoff,
        };
        let mut table = Vec::with_capacity(nv);
        for v in 0..nv {
            let v = VertexId::from_index(v);
            let row: Vec<VertexId> = g.moves(v).map(|m| tab(v, &m)).collect();
            if let Some(bad) = row.iter().find(|t| t.index() >= nv) {
                return Err(GameError::UnknownVertex(bad.to_string()));
            }
            table.push(row);
        }
        g.tab = table;
        Ok(g)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn num_players(&self) -> usize {
        self.player_names.len()
    }

    pub fn num_actions(&self) -> usize {
        self.action_names.len()
    }

    pub fn init(&self) -> VertexId {
        self.init
    }

    pub fn payoff(&self) -> &PayoffSpec {
        &self.payoff
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn player_names(&self) -> &[String] {
        &self.player_names
    }

    pub fn action_names(&self) -> &[String] {
        &self.action_names
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.index()]
    }

    pub fn player_name(&self, p: PlayerId) -> &str {
        &self.player_names[p.index()]
    }

    pub fn action_name(&self, a: ActionId) -> &str {
        &self.action_names[a.index()]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names
            .iter()
            .position(|n| n == name)
            .map(VertexId::from_index)
    }

    pub fn player_by_name(&self, name: &str) -> Option<PlayerId> {
        self.player_names
            .iter()
            .position(|n| n == name)
            .map(PlayerId::from_index)
    }

    pub fn action_by_name(&self, name: &str) -> Option<ActionId> {
        self.action_names
            .iter()
            .position(|n| n == name)
            .map(ActionId::from_index)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.num_vertices()).map(VertexId::from_index)
    }

    pub fn players(&self) -> impl Iterator<Item = PlayerId> {
        (0..self.num_players()).map(PlayerId::from_index)
    }

    pub fn all_players(&self) -> PlayerSet {
        PlayerSet::full(self.num_players())
    }

    pub fn allowed(&self, v: VertexId, p: PlayerId) -> &[ActionId] {
        &self.allow[v.index()][p.index()]
    }

    pub fn is_allowed(&self, v: VertexId, m: &Move) -> bool {
        m.players() == self.num_players()
            && self
                .players()
                .all(|p| self.allowed(v, p).binary_search(&m.get(p)).is_ok())
    }

    /// Number of allowed moves at `v`.
    pub fn num_moves(&self, v: VertexId) -> usize {
        self.allow[v.index()].iter().map(Vec::len).product()
    }

    /// `|Tab|`: total number of explicit transitions.
    pub fn tab_size(&self) -> usize {
        self.vertices().map(|v| self.num_moves(v)).sum()
    }

    /// Allowed moves at `v` in lexicographic order (player 0 most significant).
    pub fn moves(&self, v: VertexId) -> impl Iterator<Item = Move> + '_ {
        let row = &self.allow[v.index()];
        let total = self.num_moves(v);
        (0..total).map(move |mut idx| {
            let mut acts = vec![ActionId(0); row.len()];
            for (p, allowed) in row.iter().enumerate().rev() {
                acts[p] = allowed[idx % allowed.len()];
                idx /= allowed.len();
            }
            Move(acts)
        })
    }

    fn move_index(&self, v: VertexId, m: &Move) -> Option<usize> {
        let row = &self.allow[v.index()];
        let mut idx = 0usize;
        for (p, allowed) in row.iter().enumerate() {
            let pos = allowed.binary_search(&m.0[p]).ok()?;
            idx = idx * allowed.len() + pos;
        }
        Some(idx)
    }

    /// `Tab(v, m)`, or `None` if `m` is not allowed at `v`.
    pub fn try_next(&self, v: VertexId, m: &Move) -> Option<VertexId> {
        if m.players() != self.num_players() {
            return None;
        }
        self.move_index(v, m).map(|i| self.tab[v.index()][i])
    }

    /// `Tab(v, m)`. Panics if `m` is not allowed at `v`.
    pub fn next(&self, v: VertexId, m: &Move) -> VertexId {
        self.try_next(v, m)
            .unwrap_or_else(|| panic!("move {} not allowed at {}", self.move_word(m), self.vertex_name(v)))
    }

    /// Renders a move as a word, e.g. `aabaa`.
    pub fn move_word(&self, m: &Move) -> String {
        let single = self.action_names.iter().all(|n| n.chars().count() == 1);
        let parts: Vec<&str> = m.0.iter().map(|a| self.action_name(*a)).collect();
        if single {
            parts.concat()
        } else {
            parts.join(",")
        }
    }

    /// Least allowed action of `p` at `v`.
    pub fn first_allowed(&self, v: VertexId, p: PlayerId) -> ActionId {
        self.allowed(v, p)[0]
    }

    /// The move where every player plays their least allowed action.
    pub fn first_move(&self, v: VertexId) -> Move {
        Move(self.players().map(|p| self.first_allowed(v, p)).collect())
    }
}

impl fmt::Display for ConcurrentGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "game: {} vertices, {} players, {} actions, |Tab| = {}",
            self.num_vertices(),
            self.num_players(),
            self.num_actions(),
            self.tab_size()
        )
    }
}
