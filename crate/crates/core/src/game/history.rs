use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ActionId, CommGraph, ConcurrentGame, GameError, Move, PlayerId, VertexId};

/// A message appended to an action: silence (ε) or the id of a deviator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Message {
    #[default]
    Silent,
    Id(PlayerId),
}

impl Message {
    pub fn is_silent(self) -> bool {
        self == Message::Silent
    }
}

impl fmt::Display for Message {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Message::Silent => write!(f, "-"),
            Message::Id(d) => write!(f, "id{d}"),
        }
    }
}

/// One round: the move played, the message vector, and the next vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub mv: Move,
    pub messages: Vec<Message>,
    pub next: VertexId,
}

/// `v_0 (m_0, mes_0) v_1 … v_s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FullHistory {
    pub start: VertexId,
    pub steps: Vec<Step>,
}

impl FullHistory {
    pub fn new(start: VertexId) -> Self {
        FullHistory {
            start,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last(&self) -> VertexId {
        self.steps.last().map_or(self.start, |s| s.next)
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        std::iter::once(self.start)
            .chain(self.steps.iter().map(|s| s.next))
            .collect()
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    /// Checks allowedness and `v_{r+1} = Tab(v_r, m_r)` at every step.
    pub fn validate(&self, game: &ConcurrentGame) -> Result<(), GameError> {
        let mut v = self.start;
        for (r, s) in self.steps.iter().enumerate() {
            if s.messages.len() != game.num_players() {
                return Err(GameError::InvalidHistory(format!(
                    "step {r}: message vector has wrong arity"
                )));
            }
            match game.try_next(v, &s.mv) {
                Some(t) if t == s.next => v = t,
                Some(_) => {
                    return Err(GameError::InvalidHistory(format!(
                        "step {r}: successor does not match the transition table"
                    )))
                }
                None => {
                    return Err(GameError::InvalidHistory(format!(
                        "step {r}: move not allowed"
                    )))
                }
            }
        }
        Ok(())
    }

    /// Renders one line per step: `v_r | actions | messages`.
    pub fn render_lines(&self, game: &ConcurrentGame) -> Vec<String> {
        let mut v = self.start;
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        for s in &self.steps {
            let msgs: Vec<String> = s
                .messages
                .iter()
                .map(|m| match m {
                    Message::Silent => "-".to_string(),
                    Message::Id(d) => format!("id{}", game.player_name(*d)),
                })
                .collect();
            out.push(format!(
                "{} | {} | {}",
                game.vertex_name(v),
                game.move_word(&s.mv),
                msgs.join(" ")
            ));
            v = s.next;
        }
        out.push(format!("{} | |", game.vertex_name(v)));
        out
    }
}

/// The `Vois(a)` components of one step, in player order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalStep {
    pub actions: Vec<(PlayerId, ActionId)>,
    pub messages: Vec<(PlayerId, Message)>,
    pub next: VertexId,
}

/// `π_a(h)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalHistory {
    pub player: PlayerId,
    pub start: VertexId,
    pub steps: Vec<LocalStep>,
}

impl LocalHistory {
    pub fn last(&self) -> VertexId {
        self.steps.last().map_or(self.start, |s| s.next)
    }
}

/// Projection of a full history onto what player `a` observes.
pub fn project_history(h: &FullHistory, graph: &CommGraph, a: PlayerId) -> LocalHistory {
    let vois = graph.vois(a);
    LocalHistory {
        player: a,
        start: h.start,
        steps: h
            .steps
            .iter()
            .map(|s| LocalStep {
                actions: vois.iter().map(|b| (b, s.mv.get(b))).collect(),
                messages: vois.iter().map(|b| (b, s.messages[b.index()])).collect(),
                next: s.next,
            })
            .collect(),
    }
}
