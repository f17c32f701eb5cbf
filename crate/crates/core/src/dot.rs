//! Graphviz export.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::epistemic::EpistemicGame;
use crate::game::{CommGraph, ConcurrentGame, VertexId};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Arena with one edge per successor, labelled by the moves leading there.
pub fn game_dot(game: &ConcurrentGame) -> String {
    let mut out = String::from("digraph game {\n  rankdir=LR;\n");
    for v in game.vertices() {
        let shape = if v == game.init() { "doublecircle" } else { "circle" };
        writeln!(out, "  {} [shape={shape}];", quote(game.vertex_name(v))).unwrap();
    }
    for v in game.vertices() {
        let mut by_target: BTreeMap<VertexId, Vec<String>> = BTreeMap::new();
        for m in game.moves(v) {
            by_target.entry(game.next(v, &m)).or_default().push(game.move_word(&m));
        }
        for (t, words) in by_target {
            let label = if words.len() > 4 {
                format!("{} … ({} moves)", words[..3].join(","), words.len())
            } else {
                words.join(",")
            };
            writeln!(
                out,
                "  {} -> {} [label={}];",
                quote(game.vertex_name(v)),
                quote(game.vertex_name(t)),
                quote(&label)
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

pub fn comm_dot(game: &ConcurrentGame, graph: &CommGraph) -> String {
    let mut out = String::from("digraph comm {\n");
    for a in game.players() {
        writeln!(out, "  {};", quote(game.player_name(a))).unwrap();
    }
    for (a, b) in graph.edges() {
        writeln!(out, "  {} -> {};", quote(game.player_name(a)), quote(game.player_name(b))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Eve states as boxes, Adam states as circles labelled by Eve's action.
pub fn epistemic_dot(game: &ConcurrentGame, eg: &EpistemicGame) -> String {
    let mut out = String::from("digraph epistemic {\n");
    for e in eg.eve_ids() {
        let node = eg.eve(e);
        let style = if node.state.is_deviated() { "" } else { ", style=bold" };
        writeln!(
            out,
            "  e{} [shape=box, label={}{style}];",
            e.0,
            quote(&node.state.render(game))
        )
        .unwrap();
    }
    for a in eg.adam_ids() {
        let node = eg.adam(a);
        writeln!(
            out,
            "  a{} [shape=circle, label={}];",
            a.0,
            quote(&node.action.render(game))
        )
        .unwrap();
        writeln!(out, "  e{} -> a{};", node.origin.0, a.0).unwrap();
        for &(v, t) in &node.edges {
            let style = if Some(t) == node.complying { "" } else { ", style=dashed" };
            writeln!(
                out,
                "  a{} -> e{} [label={}{style}];",
                a.0,
                t.0,
                quote(game.vertex_name(v))
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled::{comm_graph, five_player_game};
    use crate::epistemic::{build_reachable, BuildConfig};

    #[test]
    fn deterministic_and_balanced() {
        let g = five_player_game();
        let c = comm_graph(&g, "g1").unwrap();
        let eg = build_reachable(&g, &c, &BuildConfig::default()).unwrap();
        for text in [game_dot(&g), comm_dot(&g, &c), epistemic_dot(&g, &eg)] {
            assert!(text.starts_with("digraph"));
            assert!(text.ends_with("}\n"));
            assert_eq!(text.matches('"').count() % 2, 0);
        }
        assert_eq!(epistemic_dot(&g, &eg), epistemic_dot(&g, &eg));
        assert_eq!(comm_dot(&g, &c).matches("->").count(), 4);
        let e = epistemic_dot(&g, &eg);
        assert_eq!(e.matches("shape=box").count(), eg.num_eve());
        assert_eq!(e.matches("shape=circle").count(), eg.num_adam());
    }
}
