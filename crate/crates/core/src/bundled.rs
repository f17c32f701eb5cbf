//! The five-player example game and its three communication graphs.

use crate::game::parse::{parse_comm, parse_game};
use crate::game::{CommGraph, ConcurrentGame};

pub const FIVE_PLAYER_GAME: &str = include_str!("../assets/five_player.json");
pub const GRAPH_G1: &str = include_str!("../assets/g1.json");
pub const GRAPH_G2: &str = include_str!("../assets/g2.json");
pub const GRAPH_G3: &str = include_str!("../assets/g3.json");

pub fn five_player_game() -> ConcurrentGame {
    parse_game(FIVE_PLAYER_GAME).expect("bundled game is valid")
}

/// `name` is one of `g1`, `g2`, `g3`, `edgeless`, `complete`.
pub fn comm_graph(game: &ConcurrentGame, name: &str) -> Option<CommGraph> {
    let doc = match name {
        "g1" => GRAPH_G1,
        "g2" => GRAPH_G2,
        "g3" => GRAPH_G3,
        "edgeless" => return Some(CommGraph::edgeless(game.num_players())),
        "complete" => return Some(CommGraph::complete(game.num_players())),
        _ => return None,
    };
    Some(parse_comm(doc, game).expect("bundled graph is valid"))
}
