//! The epistemic game: Eve suggests moves for every possible deviator, Adam
//! either complies or picks a vertex that some single deviation explains.

mod actions;
mod build;
mod check;
mod update;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{ConcurrentGame, GameError, Move, PlayerId, PlayerSet, VertexId};

pub use actions::{
    adam_choices, builder_eve_actions, enabled_eve_actions, is_enabled, successor_signature,
    EveActionIter,
};
pub use build::{build_reachable, AdamId, AdamNode, BuildConfig, EpistemicGame, EveId, EveNode};
pub use check::{
    check_distance_characterization, check_edge_knowledge, check_knowledge_invariant,
    check_transition_knowledge, size_report, DistanceViolation, KnowledgeViolation, SizeReport,
};
pub use update::{
    derive_knowledge, literal_knowledge_from_empty, literal_knowledge_from_nonempty, successor,
    update_from_empty, update_from_nonempty,
};

#[derive(Debug, Error)]
pub enum EpistemicError {
    #[error("player {0} is not a deviator of this state")]
    NotDeviator(PlayerId),
    #[error("vertex {0} is not reachable by a single-player deviation")]
    NotSuccessor(VertexId),
    #[error("action is not enabled at this state: {0}")]
    NotEnabled(String),
    #[error("epistemic game exceeds the state cap of {0}")]
    StateCap(usize),
    #[error("too many Eve actions at one state (cap {0})")]
    ActionCap(usize),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Hypothesis "`deviator` deviated; `informed` have received its id".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Situation {
    pub deviator: PlayerId,
    pub informed: PlayerSet,
}

/// At most one situation per deviator, sorted by deviator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SituationSet(Vec<Situation>);

impl SituationSet {
    pub fn empty() -> Self {
        SituationSet(Vec::new())
    }

    /// Sorts by deviator; rejects duplicate deviators.
    pub fn new(mut situations: Vec<Situation>) -> Result<Self, EpistemicError> {
        situations.sort();
        if let Some(w) = situations.windows(2).find(|w| w[0].deviator == w[1].deviator) {
            return Err(EpistemicError::NotEnabled(format!(
                "two situations for deviator {}",
                w[0].deviator
            )));
        }
        Ok(SituationSet(situations))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Situation> {
        self.0.iter()
    }

    /// `dev(X)`.
    pub fn deviators(&self) -> PlayerSet {
        self.0.iter().map(|s| s.deviator).collect()
    }

    /// `I^X_d`.
    pub fn informed(&self, d: PlayerId) -> Option<PlayerSet> {
        self.0
            .binary_search_by_key(&d, |s| s.deviator)
            .ok()
            .map(|i| self.0[i].informed)
    }

    /// `K^X_d(a)`.
    pub fn knowledge(&self, d: PlayerId, a: PlayerId) -> Result<PlayerSet, EpistemicError> {
        derive_knowledge(self, d, a)
    }

    pub fn render(&self, game: &ConcurrentGame) -> String {
        if self.0.is_empty() {
            return "∅".to_string();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|s| {
                format!(
                    "({}, {})",
                    game.player_name(s.deviator),
                    render_set(game, s.informed)
                )
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

pub(crate) fn render_set(game: &ConcurrentGame, set: PlayerSet) -> String {
    let names: Vec<&str> = set.iter().map(|p| game.player_name(p)).collect();
    format!("{{{}}}", names.join(","))
}

/// `(v, X)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EveState {
    pub vertex: VertexId,
    pub situations: SituationSet,
}

impl EveState {
    pub fn complying(vertex: VertexId) -> Self {
        EveState {
            vertex,
            situations: SituationSet::empty(),
        }
    }

    pub fn is_deviated(&self) -> bool {
        !self.situations.is_empty()
    }

    pub fn render(&self, game: &ConcurrentGame) -> String {
        format!(
            "({}, {})",
            game.vertex_name(self.vertex),
            self.situations.render(game)
        )
    }
}

/// `f: dev(X) → Act^Agt`, sorted by deviator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DevFunction(pub Vec<(PlayerId, Move)>);

impl DevFunction {
    pub fn new(mut entries: Vec<(PlayerId, Move)>) -> Self {
        entries.sort();
        DevFunction(entries)
    }

    pub fn get(&self, d: PlayerId) -> Option<&Move> {
        self.0
            .binary_search_by_key(&d, |(p, _)| *p)
            .ok()
            .map(|i| &self.0[i].1)
    }

    pub fn deviators(&self) -> PlayerSet {
        self.0.iter().map(|(d, _)| *d).collect()
    }
}

/// A move when no deviation is visible, a per-deviator move map otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EveAction {
    Move(Move),
    Dev(DevFunction),
}

impl EveAction {
    pub fn render(&self, game: &ConcurrentGame) -> String {
        match self {
            EveAction::Move(m) => game.move_word(m),
            EveAction::Dev(f) => {
                let parts: Vec<String> = f
                    .0
                    .iter()
                    .map(|(d, m)| format!("{}↦{}", game.player_name(*d), game.move_word(m)))
                    .collect();
                format!("[{}]", parts.join(" "))
            }
        }
    }
}

impl fmt::Display for Situation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.deviator, self.informed)
    }
}
