use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::game::{
    ActionId, CommGraph, ConcurrentGame, FullHistory, Message, Move, PayoffVector, PlayerId, Step,
    VertexId,
};

use super::{StrategyProfile, TranslateError};

/// Player `deviator` replaces its action by `actions[i]` at round
/// `step + i`, then plays what its machine says. From the first round where
/// the replacement changes the successor vertex it sends its own id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeviationScript {
    pub deviator: PlayerId,
    pub step: usize,
    pub actions: Vec<ActionId>,
}

#[derive(Serialize, Deserialize)]
struct ScriptFile {
    deviator: String,
    step: usize,
    actions: Vec<String>,
}

impl DeviationScript {
    pub fn parse(game: &ConcurrentGame, json: &str) -> Result<DeviationScript, TranslateError> {
        let bad = |m: String| TranslateError::Script(m);
        let f: ScriptFile = serde_json::from_str(json).map_err(|e| bad(e.to_string()))?;
        Ok(DeviationScript {
            deviator: game
                .player_by_name(&f.deviator)
                .ok_or_else(|| bad(format!("unknown player `{}`", f.deviator)))?,
            step: f.step,
            actions: f
                .actions
                .iter()
                .map(|a| game.action_by_name(a).ok_or_else(|| bad(format!("unknown action `{a}`"))))
                .collect::<Result<_, _>>()?,
        })
    }

    pub fn to_json(&self, game: &ConcurrentGame) -> String {
        serde_json::to_string(&ScriptFile {
            deviator: game.player_name(self.deviator).to_string(),
            step: self.step,
            actions: self.actions.iter().map(|&a| game.action_name(a).to_string()).collect(),
        })
        .expect("script serializes")
    }
}

/// First repeated configuration after the script is exhausted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceLasso {
    /// Round at which the cycle starts.
    pub start: usize,
    pub cycle: Vec<VertexId>,
    pub payoff: PayoffVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub history: FullHistory,
    /// Machine node after each round, starting with the initial node.
    pub nodes: Vec<u32>,
    /// Round whose move first left the main outcome.
    pub visible_at: Option<usize>,
    pub lasso: Option<TraceLasso>,
}

impl Trace {
    pub fn render_lines(&self, game: &ConcurrentGame) -> Vec<String> {
        self.history.render_lines(game)
    }
}

/// Plays `sigma` for `steps` rounds, with the deviation of `script` if any.
pub fn simulate(
    game: &ConcurrentGame,
    graph: &CommGraph,
    sigma: &StrategyProfile,
    script: Option<&DeviationScript>,
    steps: usize,
) -> Result<Trace, TranslateError> {
    if let Some(s) = script {
        if s.step >= steps {
            return Err(TranslateError::Script(format!(
                "trigger step {} beyond the horizon of {steps} rounds",
                s.step
            )));
        }
        if s.deviator.index() >= game.num_players() {
            return Err(TranslateError::Script("unknown deviator".into()));
        }
    }
    let n = game.num_players();
    let mut history = FullHistory::new(game.init());
    let mut nodes = vec![0u32];
    let (mut id, mut last) = (0u32, vec![Message::Silent; n]);
    let mut visible_at = None;
    let mut lasso = None;
    let mut seen: HashMap<(u32, VertexId, Vec<Message>), usize> = HashMap::new();

    for r in 0..steps {
        let v = history.last();
        let scripted = script.and_then(|s| {
            r.checked_sub(s.step)
                .and_then(|i| s.actions.get(i))
                .map(|&x| (s.deviator, x))
        });
        let exhausted = script.is_none_or(|s| r >= s.step + s.actions.len());
        if exhausted && lasso.is_none() {
            if let Some(&start) = seen.get(&(id, v, last.clone())) {
                let cycle: Vec<VertexId> = history.vertices()[start..r].to_vec();
                let inf: BTreeSet<VertexId> = cycle.iter().copied().collect();
                lasso = Some(TraceLasso {
                    start,
                    payoff: game.payoff().payoff_of_inf_set(&inf),
                    cycle,
                });
            } else {
                seen.insert((id, v, last.clone()), r);
            }
        }

        let outs = sigma.outputs(graph, id, &last)?;
        let mut mv = Move(outs.iter().map(|o| o.action).collect());
        let mut msgs: Vec<Message> = outs.iter().map(|o| o.message).collect();
        if let Some((d, x)) = scripted {
            if !game.allowed(v, d).contains(&x) {
                return Err(TranslateError::Script(format!(
                    "round {r}: action {} not allowed for player {} at {}",
                    game.action_name(x),
                    game.player_name(d),
                    game.vertex_name(v)
                )));
            }
            let deviated = mv.with(d, x);
            if visible_at.is_none() && game.next(v, &deviated) != game.next(v, &mv) {
                visible_at = Some(r);
            }
            mv = deviated;
        }
        if let (Some(s), Some(_)) = (script, visible_at) {
            msgs[s.deviator.index()] = Message::Id(s.deviator);
        }
        let next = game.next(v, &mv);
        id = sigma.step(id, next).ok_or_else(|| TranslateError::Undefined {
            node: id,
            message: format!("no successor at vertex {}", game.vertex_name(next)),
        })?;
        history.push(Step {
            mv,
            messages: msgs.clone(),
            next,
        });
        nodes.push(id);
        last = msgs;
    }
    Ok(Trace {
        history,
        nodes,
        visible_at,
        lasso,
    })
}
