use equisynth::bundled::{comm_graph, five_player_game};
use equisynth::epistemic::*;
use equisynth::game::{ActionId, CommGraph, ConcurrentGame, Move, PlayerId, PlayerSet, VertexId};

fn p(i: u16) -> PlayerId {
    PlayerId(i)
}

fn set(ps: &[u16]) -> PlayerSet {
    ps.iter().map(|&i| p(i)).collect()
}

fn word(game: &ConcurrentGame, w: &str) -> Move {
    Move(
        w.chars()
            .map(|c| game.action_by_name(&c.to_string()).unwrap())
            .collect(),
    )
}

fn v(game: &ConcurrentGame, name: &str) -> VertexId {
    game.vertex_by_name(name).unwrap()
}

fn hidden_deviation(game: &ConcurrentGame, graph: &CommGraph) -> SituationSet {
    update_from_empty(game, graph, v(game, "v0"), &word(game, "aaaaa"), v(game, "v1p")).unwrap()
}

#[test]
fn situations_after_hidden_deviation() {
    let g = five_player_game();
    let g1 = comm_graph(&g, "g1").unwrap();
    let x = hidden_deviation(&g, &g1);
    assert_eq!(x.deviators(), set(&[2, 3, 4]));
    assert_eq!(x.informed(p(2)), Some(set(&[2])));
    assert_eq!(x.informed(p(3)), Some(set(&[3, 4])));
    assert_eq!(x.informed(p(4)), Some(set(&[0, 4])));
    let k = |d, a| x.knowledge(p(d), p(a)).unwrap();
    // K_2
    assert_eq!(k(2, 0), set(&[2, 3]));
    assert_eq!(k(2, 1), set(&[2, 3, 4]));
    assert_eq!(k(2, 3), set(&[2, 4]));
    assert_eq!(k(2, 4), set(&[2]));
    // K_3
    assert_eq!(k(3, 0), set(&[2, 3]));
    assert_eq!(k(3, 1), set(&[2, 3, 4]));
    assert_eq!(k(3, 2), set(&[3, 4]));
    // K_4
    assert_eq!(k(4, 1), set(&[2, 3, 4]));
    assert_eq!(k(4, 2), set(&[3, 4]));
    assert_eq!(k(4, 3), set(&[2, 4]));
    // Literal update formula agrees.
    for d in [2, 3, 4] {
        for a in 0..5 {
            let lit = literal_knowledge_from_empty(
                &g,
                &g1,
                v(&g, "v0"),
                &word(&g, "aaaaa"),
                v(&g, "v1p"),
                p(d),
                p(a),
            );
            assert_eq!(lit, k(d, a), "K_{d}({a})");
        }
    }
}

#[test]
fn complying_successor_is_empty() {
    let g = five_player_game();
    let g1 = comm_graph(&g, "g1").unwrap();
    let x = update_from_empty(&g, &g1, v(&g, "v0"), &word(&g, "aaaaa"), v(&g, "v1")).unwrap();
    assert!(x.is_empty());
    assert!(matches!(
        update_from_empty(&g, &g1, v(&g, "v0"), &word(&g, "aaaaa"), v(&g, "v3")),
        Err(EpistemicError::NotSuccessor(_))
    ));
}

#[test]
fn complete_graph_informs_everyone() {
    let g = five_player_game();
    let c = comm_graph(&g, "complete").unwrap();
    let x = hidden_deviation(&g, &c);
    for s in x.iter() {
        assert_eq!(s.informed, g.all_players());
        for a in g.players() {
            assert_eq!(x.knowledge(s.deviator, a).unwrap(), PlayerSet::singleton(s.deviator));
        }
    }
}

#[test]
fn informed_sets_propagate_along_g1() {
    let g = five_player_game();
    let g1 = comm_graph(&g, "g1").unwrap();
    let x = hidden_deviation(&g, &g1);
    // From v1p every move goes to v0; keep deviator 3 only by reaching v0.
    let f = DevFunction::new(
        [2, 3, 4]
            .iter()
            .map(|&d| (p(d), word(&g, "aaaaa")))
            .collect(),
    );
    let y = update_from_nonempty(&g, &g1, &x, v(&g, "v1p"), &f, v(&g, "v0")).unwrap();
    assert_eq!(y.informed(p(3)), Some(set(&[0, 3, 4])));
    let z = update_from_nonempty(&g, &g1, &y, v(&g, "v0"), &f, v(&g, "v1p")).unwrap();
    assert_eq!(z.informed(p(3)), Some(set(&[0, 1, 3, 4])));
    let e = CommGraph::edgeless(5);
    let xe = hidden_deviation(&g, &e);
    let ye = update_from_nonempty(&g, &e, &xe, v(&g, "v1p"), &f, v(&g, "v0")).unwrap();
    for s in ye.iter() {
        assert_eq!(s.informed, PlayerSet::singleton(s.deviator));
    }
}

#[test]
fn hidden_deviation_eve_actions_match_constraints() {
    let g = five_player_game();
    let g1 = comm_graph(&g, "g1").unwrap();
    let state = EveState {
        vertex: v(&g, "v0"),
        situations: hidden_deviation(&g, &g1),
    };
    let enumerated: Vec<EveAction> = enabled_eve_actions(&g, &state).collect();
    assert_eq!(enumerated.len(), 1024);
    let four = |f: &DevFunction| {
        let at = |d: u16, a: u16| f.get(p(d)).unwrap().get(p(a));
        at(2, 0) == at(3, 0)
            && at(2, 1) == at(3, 1)
            && at(3, 1) == at(4, 1)
            && at(3, 2) == at(4, 2)
            && at(2, 3) == at(4, 3)
    };
    for a in &enumerated {
        let EveAction::Dev(f) = a else { panic!() };
        assert!(four(f));
        assert!(is_enabled(&g, &state, a));
    }
    // Brute force over all f: {2,3,4} -> moves.
    let moves: Vec<Move> = g.moves(v(&g, "v0")).collect();
    let mut count = 0;
    for i in 0..moves.len() {
        for j in 0..moves.len() {
            for k in 0..moves.len() {
                let f = DevFunction::new(vec![
                    (p(2), moves[i].clone()),
                    (p(3), moves[j].clone()),
                    (p(4), moves[k].clone()),
                ]);
                let enabled = is_enabled(&g, &state, &EveAction::Dev(f.clone()));
                assert_eq!(enabled, four(&f));
                count += usize::from(enabled);
            }
        }
    }
    assert_eq!(count, enumerated.len());
}

#[test]
fn five_player_reachable_graph() {
    let g = five_player_game();
    let g1 = comm_graph(&g, "g1").unwrap();
    let eg = build_reachable(&g, &g1, &BuildConfig::default()).unwrap();
    let init = eg.init();
    assert_eq!(eg.eve(init).state, EveState::complying(v(&g, "v0")));
    let a = eg
        .adam_for_action(&g, &g1, init, &EveAction::Move(word(&g, "aaaaa")))
        .unwrap();
    let node = eg.adam(a);
    assert_eq!(eg.eve(node.complying.unwrap()).state, EveState::complying(v(&g, "v1")));
    let x = EveState {
        vertex: v(&g, "v1p"),
        situations: hidden_deviation(&g, &g1),
    };
    let xid = eg.find(&x).unwrap();
    assert!(node.edges.contains(&(v(&g, "v1p"), xid)));
    assert_eq!(eg.steps(xid), vec![1]);
    assert!(check_knowledge_invariant(&g, &g1, &eg).is_empty());
    assert!(check_distance_characterization(&g1, &eg).is_empty());
    let size = size_report(&g, &g1, &eg);
    assert!(size.eve_ok() && size.adam_ok());
}

#[test]
fn corrupted_situation_is_reported() {
    let g = five_player_game();
    let g1 = comm_graph(&g, "g1").unwrap();
    let x = hidden_deviation(&g, &g1);
    let corrupted = SituationSet::new(
        x.iter()
            .map(|s| {
                let mut s = *s;
                if s.deviator == p(4) {
                    s.informed = s.informed.without(p(0));
                }
                s
            })
            .collect(),
    )
    .unwrap();
    let pred = EveState::complying(v(&g, "v0"));
    let action = EveAction::Move(word(&g, "aaaaa"));
    assert!(check_transition_knowledge(&g, &g1, &pred, &action, v(&g, "v1p"), &x).is_empty());
    let bad = check_transition_knowledge(&g, &g1, &pred, &action, v(&g, "v1p"), &corrupted);
    assert!(!bad.is_empty());
}

#[test]
fn state_cap_enforced() {
    let g = five_player_game();
    let g1 = comm_graph(&g, "g1").unwrap();
    let cfg = BuildConfig {
        state_cap: 10,
        ..BuildConfig::default()
    };
    assert!(matches!(build_reachable(&g, &g1, &cfg), Err(EpistemicError::StateCap(10))));
}

#[test]
fn build_is_deterministic() {
    let g = five_player_game();
    let g2 = comm_graph(&g, "g2").unwrap();
    let a = build_reachable(&g, &g2, &BuildConfig::default()).unwrap();
    let b = build_reachable(&g, &g2, &BuildConfig::default()).unwrap();
    assert_eq!(a.num_eve(), b.num_eve());
    assert_eq!(a.num_adam(), b.num_adam());
    for id in a.eve_ids() {
        assert_eq!(a.eve(id).state, b.eve(id).state);
    }
    for id in a.adam_ids() {
        assert_eq!(a.adam(id).edges, b.adam(id).edges);
    }
}

#[test]
fn single_action_game_builds() {
    let _ = ActionId(0);
    let g = equisynth::game::parse::parse_game(
        r#"{ "players": ["p"], "actions": ["a"], "vertices": ["v"], "init": "v",
             "transitions": { "v": [ { "pattern": {}, "to": "v" } ] },
             "payoff": { "rules": [], "default": [0] } }"#,
    )
    .unwrap();
    let eg = build_reachable(&g, &CommGraph::edgeless(1), &BuildConfig::default()).unwrap();
    assert_eq!(eg.num_eve(), 1);
    assert_eq!(eg.num_adam(), 1);
}
