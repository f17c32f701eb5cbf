use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::game::{CommGraph, ConcurrentGame, FullHistory, Message, Move, PlayerId, Step, VertexId};

use super::StrategyProfile;

/// Which message rule a violation breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NormRule {
    /// Someone speaks while the play follows the main outcome's vertices.
    Silence,
    /// A neighbour of the deviator does not denounce it at the first visible step.
    Denounce,
    /// A player does not relay exactly the id it received.
    Relay,
    /// The machine rejects the input or has no successor.
    Undefined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormViolation {
    pub rule: NormRule,
    pub player: Option<String>,
    pub message: String,
    /// `v_r | actions | messages` lines of the witness history.
    pub witness: Vec<String>,
}

impl fmt::Display for NormViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.rule, self.message)?;
        for l in &self.witness {
            write!(f, "\n    {l}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormedReport {
    pub depth: usize,
    pub configurations: usize,
    pub violations: Vec<NormViolation>,
}

impl NormedReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `diam(G) + |V| + 2`.
pub fn default_depth(game: &ConcurrentGame, graph: &CommGraph) -> usize {
    graph.diameter() as usize + game.num_vertices() + 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Phase {
    Main,
    /// Deviation by the player became visible on the last round.
    First(PlayerId),
    Later(PlayerId),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Config {
    node: u32,
    vertex: VertexId,
    last: Vec<Message>,
    phase: Phase,
}

struct Entry {
    config: Config,
    parent: Option<(usize, Move)>,
}

/// Explores every play of `sigma` against every immediately visible honest
/// single-player deviation for `depth` rounds and checks the message rules:
/// silence on the main outcome, denunciation by the deviator's neighbours at
/// the first visible step, and epidemic relaying afterwards.
pub fn check_normed(game: &ConcurrentGame, graph: &CommGraph, sigma: &StrategyProfile, depth: usize) -> NormedReport {
    let n = game.num_players();
    let mut arena: Vec<Entry> = vec![Entry {
        config: Config {
            node: 0,
            vertex: game.init(),
            last: vec![Message::Silent; n],
            phase: Phase::Main,
        },
        parent: None,
    }];
    let mut seen: HashSet<Config> = HashSet::from([arena[0].config.clone()]);
    let mut layer = vec![0usize];
    let mut violations = Vec::new();
    let witness = |arena: &[Entry], mut i: usize| -> Vec<String> {
        let mut steps = Vec::new();
        while let Some((p, mv)) = &arena[i].parent {
            let c = &arena[i].config;
            steps.push(Step {
                mv: mv.clone(),
                messages: c.last.clone(),
                next: c.vertex,
            });
            i = *p;
        }
        steps.reverse();
        let mut h = FullHistory::new(game.init());
        h.steps = steps;
        h.render_lines(game)
    };

    for round in 0..=depth {
        let mut next_layer = Vec::new();
        for &i in &layer {
            let c = arena[i].config.clone();
            let outs = match sigma.outputs(graph, c.node, &c.last) {
                Ok(o) => o,
                Err(e) => {
                    violations.push(NormViolation {
                        rule: NormRule::Undefined,
                        player: None,
                        message: e.to_string(),
                        witness: witness(&arena, i),
                    });
                    continue;
                }
            };
            let name = |a: PlayerId| Some(game.player_name(a).to_string());
            for a in game.players() {
                let got = outs[a.index()].message;
                let (rule, expected) = match c.phase {
                    Phase::Main => (NormRule::Silence, Some(Message::Silent)),
                    Phase::First(d) => (NormRule::Denounce, graph.relates(d, a).then_some(Message::Id(d))),
                    Phase::Later(d) => {
                        let heard = graph.vois(a).iter().any(|b| c.last[b.index()] == Message::Id(d));
                        (NormRule::Relay, Some(if heard { Message::Id(d) } else { Message::Silent }))
                    }
                };
                if let Some(want) = expected {
                    if got != want {
                        violations.push(NormViolation {
                            rule,
                            player: name(a),
                            message: format!(
                                "player {} sends {} instead of {}",
                                game.player_name(a),
                                render(game, got),
                                render(game, want)
                            ),
                            witness: witness(&arena, i),
                        });
                    }
                }
            }
            if round == depth {
                continue;
            }
            let base = Move(outs.iter().map(|o| o.action).collect());
            let msgs: Vec<Message> = outs.iter().map(|o| o.message).collect();
            let target = game.next(c.vertex, &base);
            let mut succs: Vec<(Move, Vec<Message>, Phase)> = Vec::new();
            match c.phase {
                Phase::Main => {
                    succs.push((base.clone(), msgs.clone(), Phase::Main));
                    for d in game.players() {
                        for &x in game.allowed(c.vertex, d) {
                            let m = base.with(d, x);
                            if game.next(c.vertex, &m) != target {
                                let mut ms = msgs.clone();
                                ms[d.index()] = Message::Id(d);
                                succs.push((m, ms, Phase::First(d)));
                            }
                        }
                    }
                }
                Phase::First(d) | Phase::Later(d) => {
                    for &x in game.allowed(c.vertex, d) {
                        let mut ms = msgs.clone();
                        ms[d.index()] = Message::Id(d);
                        succs.push((base.with(d, x), ms, Phase::Later(d)));
                    }
                }
            }
            for (m, ms, phase) in succs {
                let v = game.next(c.vertex, &m);
                let Some(node) = sigma.step(c.node, v) else {
                    violations.push(NormViolation {
                        rule: NormRule::Undefined,
                        player: None,
                        message: format!("node {}: no successor at vertex {}", c.node, game.vertex_name(v)),
                        witness: witness(&arena, i),
                    });
                    continue;
                };
                let config = Config {
                    node,
                    vertex: v,
                    last: ms,
                    phase,
                };
                if seen.insert(config.clone()) {
                    arena.push(Entry {
                        config,
                        parent: Some((i, m)),
                    });
                    next_layer.push(arena.len() - 1);
                }
            }
        }
        layer = next_layer;
    }
    NormedReport {
        depth,
        configurations: arena.len(),
        violations,
    }
}

fn render(game: &ConcurrentGame, m: Message) -> String {
    match m {
        Message::Silent => "ε".into(),
        Message::Id(d) => format!("id{}", game.player_name(d)),
    }
}
