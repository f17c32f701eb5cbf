//! JSON game and communication-graph files.
//!
//! Game file layout:
//!
//! ```json
//! {
//!   "players": ["0", "1"], "actions": ["a", "b"], "vertices": ["v0", "v1"],
//!   "init": "v0",
//!   "allow": { "v1": { "0": ["a"] } },
//!   "transitions": {
//!     "v0": [ { "pattern": { "0": "a", "1": ["a", "b"] }, "to": "v1" },
//!             { "pattern": {}, "to": "v0" } ],
//!     "v1": [ { "pattern": { "0": "*" }, "to": "v1" } ]
//!   },
//!   "payoff": { "rules": [ { "if": "inf(v1)", "then": [1, "1/2"] } ], "default": [0, 0] }
//! }
//! ```
//!
//! Players omitted from a pattern match any action. Every vertex needs a
//! transition list whose last entry is a catch-all.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    ActionId, CommGraph, ConcurrentGame, GameError, InfExpr, Move, PayoffRule, PayoffSpec,
    PayoffVector, PlayerId, RationalLit, VertexId,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub players: Vec<String>,
    pub actions: Vec<String>,
    pub vertices: Vec<String>,
    pub init: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub allow: BTreeMap<String, BTreeMap<String, Vec<String>>>,
    pub transitions: BTreeMap<String, Vec<TransitionFile>>,
    pub payoff: PayoffFile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionFile {
    #[serde(default)]
    pub pattern: BTreeMap<String, PatternEntry>,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PatternEntry {
    One(String),
    Many(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PayoffFile {
    pub rules: Vec<RuleFile>,
    pub default: Vec<RationalLit>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleFile {
    #[serde(rename = "if")]
    pub condition: String,
    pub then: Vec<RationalLit>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommFile {
    pub edges: Vec<[String; 2]>,
}

/// Compiled pattern: per player, `None` = wildcard, otherwise the accepted actions.
struct Pattern {
    per_player: Vec<Option<Vec<ActionId>>>,
    to: VertexId,
}

impl Pattern {
    fn is_catch_all(&self) -> bool {
        self.per_player.iter().all(Option::is_none)
    }

    fn matches(&self, m: &Move) -> bool {
        self.per_player
            .iter()
            .zip(&m.0)
            .all(|(p, a)| p.as_ref().is_none_or(|acts| acts.contains(a)))
    }
}

fn lookup<T: Copy>(names: &[String], name: &str, mk: fn(usize) -> T) -> Option<T> {
    names.iter().position(|n| n == name).map(mk)
}

pub fn parse_game(doc: &str) -> Result<ConcurrentGame, GameError> {
    let file: GameFile = serde_json::from_str(doc)?;
    game_from_file(&file)
}

pub fn game_from_file(file: &GameFile) -> Result<ConcurrentGame, GameError> {
    let np = file.players.len();
    let vertex = |name: &str| {
        lookup(&file.vertices, name, VertexId::from_index)
            .ok_or_else(|| GameError::UnknownVertex(name.to_string()))
    };
    let player = |name: &str| {
        lookup(&file.players, name, PlayerId::from_index)
            .ok_or_else(|| GameError::UnknownPlayer(name.to_string()))
    };
    let action = |name: &str| {
        lookup(&file.actions, name, ActionId::from_index)
            .ok_or_else(|| GameError::UnknownAction(name.to_string()))
    };
    for names in [&file.players, &file.actions, &file.vertices] {
        let mut sorted = names.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(GameError::Parse("duplicate name".into()));
        }
    }
    if file.players.is_empty() || file.actions.is_empty() || file.vertices.is_empty() {
        return Err(GameError::Parse("players, actions and vertices must be nonempty".into()));
    }
    let init = vertex(&file.init)?;

    let all_actions: Vec<ActionId> = (0..file.actions.len()).map(ActionId::from_index).collect();
    let mut allow = vec![vec![all_actions.clone(); np]; file.vertices.len()];
    for (vname, row) in &file.allow {
        let v = vertex(vname)?;
        for (pname, acts) in row {
            let p = player(pname)?;
            let acts = acts.iter().map(|a| action(a)).collect::<Result<Vec<_>, _>>()?;
            if acts.is_empty() {
                return Err(GameError::EmptyAllow(vname.clone()));
            }
            allow[v.index()][p.index()] = acts;
        }
    }
    for row in allow.iter_mut() {
        for acts in row.iter_mut() {
            acts.sort();
            acts.dedup();
        }
    }

    // Compile patterns.
    let mut patterns: Vec<Vec<Pattern>> = Vec::with_capacity(file.vertices.len());
    for (vi, vname) in file.vertices.iter().enumerate() {
        let list = file
            .transitions
            .get(vname)
            .ok_or_else(|| GameError::MissingCatchAll(vname.clone()))?;
        let mut compiled = Vec::with_capacity(list.len());
        for t in list {
            let mut per_player = vec![None; np];
            for (pname, entry) in &t.pattern {
                let p = player(pname)?;
                let names: Vec<&str> = match entry {
                    PatternEntry::One(s) if s == "*" => continue,
                    PatternEntry::One(s) => vec![s.as_str()],
                    PatternEntry::Many(v) => v.iter().map(String::as_str).collect(),
                };
                let mut acts = Vec::with_capacity(names.len());
                for n in names {
                    let a = action(n)?;
                    if !allow[vi][p.index()].contains(&a) {
                        return Err(GameError::ActionNotAllowed {
                            vertex: vname.clone(),
                            player: pname.clone(),
                            action: n.to_string(),
                        });
                    }
                    acts.push(a);
                }
                per_player[p.index()] = Some(acts);
            }
            compiled.push(Pattern {
                per_player,
                to: vertex(&t.to)?,
            });
        }
        patterns.push(compiled);
    }
    for name in file.transitions.keys() {
        vertex(name)?;
    }

    let rules = file
        .payoff
        .rules
        .iter()
        .map(|r| {
            Ok(PayoffRule {
                condition: InfExpr::parse(&r.condition, &|n| {
                    lookup(&file.vertices, n, VertexId::from_index)
                })?,
                vector: PayoffVector(r.then.iter().map(|l| l.0).collect()),
            })
        })
        .collect::<Result<Vec<_>, GameError>>()?;
    let default = PayoffVector(file.payoff.default.iter().map(|l| l.0).collect());
    let payoff = PayoffSpec::new(rules, default, np)?;

    // Expand patterns, first match wins; totality checked per concrete move.
    let mut failure: Option<GameError> = None;
    let game = ConcurrentGame::new(
        file.vertices.clone(),
        file.players.clone(),
        file.actions.clone(),
        init,
        allow,
        |v, m| match patterns[v.index()].iter().find(|p| p.matches(m)) {
            Some(p) => p.to,
            None => {
                failure.get_or_insert_with(|| GameError::NotTotal {
                    vertex: file.vertices[v.index()].clone(),
                    mv: m.0.iter().map(|a| file.actions[a.index()].as_str()).collect::<Vec<_>>().join(","),
                });
                v
            }
        },
        payoff,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    for (vi, list) in patterns.iter().enumerate() {
        if !list.last().is_some_and(Pattern::is_catch_all) {
            return Err(GameError::MissingCatchAll(file.vertices[vi].clone()));
        }
    }
    Ok(game)
}

/// Serializes a game. Each vertex lists explicit patterns for moves that do
/// not go to its most frequent target, followed by a catch-all to it.
pub fn game_to_file(game: &ConcurrentGame) -> GameFile {
    let mut allow = BTreeMap::new();
    for v in game.vertices() {
        let mut row = BTreeMap::new();
        for p in game.players() {
            if game.allowed(v, p).len() != game.num_actions() {
                row.insert(
                    game.player_name(p).to_string(),
                    game.allowed(v, p)
                        .iter()
                        .map(|a| game.action_name(*a).to_string())
                        .collect(),
                );
            }
        }
        if !row.is_empty() {
            allow.insert(game.vertex_name(v).to_string(), row);
        }
    }
    let mut transitions = BTreeMap::new();
    for v in game.vertices() {
        let moves: Vec<(Move, VertexId)> = game.moves(v).map(|m| {
            let t = game.next(v, &m);
            (m, t)
        }).collect();
        let mut counts: BTreeMap<VertexId, usize> = BTreeMap::new();
        for (_, t) in &moves {
            *counts.entry(*t).or_default() += 1;
        }
        let common = counts
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map(|(t, _)| *t)
            .expect("at least one move");
        let mut list: Vec<TransitionFile> = moves
            .iter()
            .filter(|(_, t)| *t != common)
            .map(|(m, t)| TransitionFile {
                pattern: game
                    .players()
                    .map(|p| {
                        (
                            game.player_name(p).to_string(),
                            PatternEntry::One(game.action_name(m.get(p)).to_string()),
                        )
                    })
                    .collect(),
                to: game.vertex_name(*t).to_string(),
            })
            .collect();
        list.push(TransitionFile {
            pattern: BTreeMap::new(),
            to: game.vertex_name(common).to_string(),
        });
        transitions.insert(game.vertex_name(v).to_string(), list);
    }
    let lits = |p: &PayoffVector| p.0.iter().map(|r| RationalLit(*r)).collect();
    GameFile {
        players: game.player_names().to_vec(),
        actions: game.action_names().to_vec(),
        vertices: game.vertex_names().to_vec(),
        init: game.vertex_name(game.init()).to_string(),
        allow,
        transitions,
        payoff: PayoffFile {
            rules: game
                .payoff()
                .rules
                .iter()
                .map(|r| RuleFile {
                    condition: r.condition.render(game.vertex_names()),
                    then: lits(&r.vector),
                })
                .collect(),
            default: lits(&game.payoff().default),
        },
    }
}

pub fn game_to_json(game: &ConcurrentGame) -> String {
    serde_json::to_string_pretty(&game_to_file(game)).expect("game file serializes")
}

pub fn parse_comm(doc: &str, game: &ConcurrentGame) -> Result<CommGraph, GameError> {
    let file: CommFile = serde_json::from_str(doc)?;
    let edges = file
        .edges
        .iter()
        .map(|[a, b]| {
            let pa = game
                .player_by_name(a)
                .ok_or_else(|| GameError::UnknownPlayer(a.clone()))?;
            let pb = game
                .player_by_name(b)
                .ok_or_else(|| GameError::UnknownPlayer(b.clone()))?;
            Ok((pa, pb))
        })
        .collect::<Result<Vec<_>, GameError>>()?;
    CommGraph::new(game.num_players(), edges)
}

pub fn comm_to_json(graph: &CommGraph, game: &ConcurrentGame) -> String {
    let file = CommFile {
        edges: graph
            .edges()
            .map(|(a, b)| [game.player_name(a).to_string(), game.player_name(b).to_string()])
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("comm file serializes")
}

pub fn load_game(path: &Path) -> Result<ConcurrentGame, GameError> {
    parse_game(&std::fs::read_to_string(path)?)
}

pub fn load_comm(path: &Path, game: &ConcurrentGame) -> Result<CommGraph, GameError> {
    parse_comm(&std::fs::read_to_string(path)?, game)
}
