use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::epistemic::{Situation, SituationSet};
use crate::game::{
    format_rational, parse_rational, ActionId, CommGraph, ConcurrentGame, LocalHistory, Message,
    PayoffVector, PlayerId, PlayerSet, VertexId,
};

use super::TranslateError;

/// What a player plays in one round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Output {
    pub action: ActionId,
    pub message: Message,
}

/// Outputs of one player at one machine node. `informed[d]` applies when
/// the player has received `id_d`; `silent` when it has received no id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlayerTable {
    pub silent: Option<Output>,
    pub informed: Vec<(PlayerId, Output)>,
}

/// Node of the machine shared by all players. The memory update depends
/// only on the next vertex, which every player observes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileNode {
    pub vertex: VertexId,
    /// Epistemic label; empty on the main outcome.
    pub situations: SituationSet,
    pub next: Vec<(VertexId, u32)>,
    pub players: Vec<PlayerTable>,
}

/// A strategy profile given as one finite machine per player over a common
/// node table. Node 0 is initial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyProfile {
    pub nodes: Vec<ProfileNode>,
    /// Payoff the profile was synthesized for, if recorded.
    pub payoff: Option<PayoffVector>,
}

/// Main outcome of a profile as a lasso of machine nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainOutcome {
    pub prefix: Vec<u32>,
    pub cycle: Vec<u32>,
}

impl StrategyProfile {
    pub fn node(&self, id: u32) -> &ProfileNode {
        &self.nodes[id as usize]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn step(&self, id: u32, v: VertexId) -> Option<u32> {
        self.node(id)
            .next
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, n)| n)
    }

    /// Output of `a` at node `id`, given the messages it received on the
    /// last round from its neighbourhood. Inputs that no honest single
    /// deviation can produce are rejected.
    pub fn respond(&self, id: u32, a: PlayerId, received: &[(PlayerId, Message)]) -> Result<Output, TranslateError> {
        let node = self.node(id);
        let table = &node.players[a.index()];
        let undefined = |message: String| TranslateError::Undefined { node: id, message };
        let mut ids = received.iter().filter_map(|&(_, m)| match m {
            Message::Id(d) => Some(d),
            Message::Silent => None,
        });
        let first = ids.next();
        if let Some(d) = first {
            if ids.any(|e| e != d) {
                return Err(undefined(format!("player {a} received two different ids")));
            }
        }
        // On the main outcome, messages (left by invisible deviations) are ignored.
        if node.situations.is_empty() {
            return table
                .silent
                .ok_or_else(|| undefined(format!("no output for player {a}")));
        }
        match first {
            Some(d) => table
                .informed
                .iter()
                .find(|&&(e, _)| e == d)
                .map(|&(_, o)| o)
                .ok_or_else(|| undefined(format!("player {a} cannot have received id{d}"))),
            None => table
                .silent
                .ok_or_else(|| undefined(format!("player {a} must have received an id"))),
        }
    }

    /// Outputs of every player, given the full message vector of the last round.
    pub fn outputs(&self, graph: &CommGraph, id: u32, last: &[Message]) -> Result<Vec<Output>, TranslateError> {
        (0..self.node(id).players.len())
            .map(|i| {
                let a = PlayerId::from_index(i);
                let received: Vec<(PlayerId, Message)> =
                    graph.vois(a).iter().map(|b| (b, last[b.index()])).collect();
                self.respond(id, a, &received)
            })
            .collect()
    }

    /// Player `a`'s output after the local history `h`; depends on nothing
    /// but `h`.
    pub fn replay(&self, h: &LocalHistory) -> Result<Output, TranslateError> {
        let mut id = 0u32;
        for s in &h.steps {
            id = self.step(id, s.next).ok_or_else(|| TranslateError::Undefined {
                node: id,
                message: format!("no successor at vertex {}", s.next),
            })?;
        }
        let received = h.steps.last().map(|s| s.messages.clone()).unwrap_or_default();
        self.respond(id, h.player, &received)
    }

    /// Follows the profile without deviation until a machine configuration repeats.
    pub fn main_outcome(&self, game: &ConcurrentGame, graph: &CommGraph) -> Result<MainOutcome, TranslateError> {
        let n = game.num_players();
        let mut seen: HashMap<(u32, Vec<Message>), usize> = HashMap::new();
        let mut path = Vec::new();
        let (mut id, mut last) = (0u32, vec![Message::Silent; n]);
        loop {
            if let Some(&i) = seen.get(&(id, last.clone())) {
                let cycle = path.split_off(i);
                return Ok(MainOutcome { prefix: path, cycle });
            }
            seen.insert((id, last.clone()), path.len());
            path.push(id);
            let out = self.outputs(graph, id, &last)?;
            let mv = crate::game::Move(out.iter().map(|o| o.action).collect());
            let v = game.try_next(self.node(id).vertex, &mv).ok_or_else(|| TranslateError::Undefined {
                node: id,
                message: "main-outcome move is not allowed".into(),
            })?;
            last = out.iter().map(|o| o.message).collect();
            id = self.step(id, v).ok_or_else(|| TranslateError::Undefined {
                node: id,
                message: format!("no successor at vertex {}", game.vertex_name(v)),
            })?;
        }
    }

    pub fn main_vertices(&self, game: &ConcurrentGame, graph: &CommGraph) -> Result<(Vec<VertexId>, Vec<VertexId>), TranslateError> {
        let m = self.main_outcome(game, graph)?;
        let vx = |ns: &[u32]| ns.iter().map(|&n| self.node(n).vertex).collect();
        Ok((vx(&m.prefix), vx(&m.cycle)))
    }

    /// Structural checks: arities, allowed actions, successor targets.
    pub fn validate(&self, game: &ConcurrentGame) -> Result<(), TranslateError> {
        let bad = |msg: String| Err(TranslateError::Format(msg));
        if self.nodes.is_empty() {
            return bad("profile has no nodes".into());
        }
        if self.node(0).vertex != game.init() || !self.node(0).situations.is_empty() {
            return bad("node 0 is not the initial main-outcome node".into());
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if node.players.len() != game.num_players() {
                return bad(format!("node {i}: {} player tables", node.players.len()));
            }
            for &(_, t) in &node.next {
                if t as usize >= self.nodes.len() {
                    return bad(format!("node {i}: successor {t} out of range"));
                }
            }
            for (a, table) in node.players.iter().enumerate() {
                let a = PlayerId::from_index(a);
                let outs = table.silent.iter().chain(table.informed.iter().map(|(_, o)| o));
                for o in outs {
                    if !game.allowed(node.vertex, a).contains(&o.action) {
                        return bad(format!(
                            "node {i}: action {} not allowed for player {}",
                            game.action_name(o.action),
                            game.player_name(a)
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

// ---------- JSON ----------

pub const PROFILE_FORMAT: &str = "equisynth-profile/1";

#[derive(Serialize, Deserialize)]
struct ProfileFile {
    format: String,
    payoff: Option<Vec<String>>,
    nodes: Vec<NodeFile>,
}

#[derive(Serialize, Deserialize)]
struct NodeFile {
    vertex: String,
    situations: Vec<SituationFile>,
    next: Vec<(String, u32)>,
    players: Vec<TableFile>,
}

#[derive(Serialize, Deserialize)]
struct SituationFile {
    deviator: String,
    informed: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    player: String,
    silent: Option<OutputFile>,
    informed: Vec<(String, OutputFile)>,
}

#[derive(Serialize, Deserialize)]
struct OutputFile {
    action: String,
    /// `null` for silence, otherwise the denounced player.
    message: Option<String>,
}

pub fn profile_to_json(game: &ConcurrentGame, profile: &StrategyProfile) -> String {
    let out = |o: &Output| OutputFile {
        action: game.action_name(o.action).to_string(),
        message: match o.message {
            Message::Silent => None,
            Message::Id(d) => Some(game.player_name(d).to_string()),
        },
    };
    let file = ProfileFile {
        format: PROFILE_FORMAT.to_string(),
        payoff: profile
            .payoff
            .as_ref()
            .map(|p| p.0.iter().map(format_rational).collect()),
        nodes: profile
            .nodes
            .iter()
            .map(|n| NodeFile {
                vertex: game.vertex_name(n.vertex).to_string(),
                situations: n
                    .situations
                    .iter()
                    .map(|s| SituationFile {
                        deviator: game.player_name(s.deviator).to_string(),
                        informed: s.informed.iter().map(|p| game.player_name(p).to_string()).collect(),
                    })
                    .collect(),
                next: n
                    .next
                    .iter()
                    .map(|&(v, t)| (game.vertex_name(v).to_string(), t))
                    .collect(),
                players: n
                    .players
                    .iter()
                    .enumerate()
                    .map(|(a, t)| TableFile {
                        player: game.player_name(PlayerId::from_index(a)).to_string(),
                        silent: t.silent.as_ref().map(out),
                        informed: t
                            .informed
                            .iter()
                            .map(|(d, o)| (game.player_name(*d).to_string(), out(o)))
                            .collect(),
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("profile serializes")
}

pub fn parse_profile(game: &ConcurrentGame, json: &str) -> Result<StrategyProfile, TranslateError> {
    let fmt = |m: String| TranslateError::Format(m);
    let file: ProfileFile = serde_json::from_str(json).map_err(|e| fmt(e.to_string()))?;
    if file.format != PROFILE_FORMAT {
        return Err(fmt(format!("unsupported format `{}`", file.format)));
    }
    let player = |s: &str| game.player_by_name(s).ok_or_else(|| fmt(format!("unknown player `{s}`")));
    let vertex = |s: &str| game.vertex_by_name(s).ok_or_else(|| fmt(format!("unknown vertex `{s}`")));
    let action = |s: &str| game.action_by_name(s).ok_or_else(|| fmt(format!("unknown action `{s}`")));
    let output = |o: &OutputFile| -> Result<Output, TranslateError> {
        Ok(Output {
            action: action(&o.action)?,
            message: match &o.message {
                None => Message::Silent,
                Some(d) => Message::Id(player(d)?),
            },
        })
    };
    let payoff = match &file.payoff {
        None => None,
        Some(v) => Some(PayoffVector(
            v.iter()
                .map(|s| parse_rational(s).map_err(|e| fmt(e.to_string())))
                .collect::<Result<_, _>>()?,
        )),
    };
    let mut nodes = Vec::with_capacity(file.nodes.len());
    for n in &file.nodes {
        let situations = n
            .situations
            .iter()
            .map(|s| {
                Ok(Situation {
                    deviator: player(&s.deviator)?,
                    informed: PlayerSet::from_players(
                        s.informed
                            .iter()
                            .map(|p| player(p))
                            .collect::<Result<Vec<_>, TranslateError>>()?,
                    ),
                })
            })
            .collect::<Result<Vec<_>, TranslateError>>()?;
        let situations = SituationSet::new(situations).map_err(|e| fmt(e.to_string()))?;
        let mut players = vec![PlayerTable::default(); game.num_players()];
        if n.players.len() != game.num_players() {
            return Err(fmt(format!("expected {} player tables", game.num_players())));
        }
        for t in &n.players {
            let a = player(&t.player)?;
            players[a.index()] = PlayerTable {
                silent: t.silent.as_ref().map(output).transpose()?,
                informed: t
                    .informed
                    .iter()
                    .map(|(d, o)| Ok((player(d)?, output(o)?)))
                    .collect::<Result<_, TranslateError>>()?,
            };
        }
        nodes.push(ProfileNode {
            vertex: vertex(&n.vertex)?,
            situations,
            next: n
                .next
                .iter()
                .map(|(v, t)| Ok((vertex(v)?, *t)))
                .collect::<Result<_, TranslateError>>()?,
            players,
        });
    }
    let profile = StrategyProfile { nodes, payoff };
    profile.validate(game)?;
    Ok(profile)
}
