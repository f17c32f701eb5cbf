use std::collections::BTreeSet;

use equisynth::bundled::{comm_graph, five_player_game};
use equisynth::epistemic::{build_reachable, BuildConfig, EpistemicGame, EveAction, EveState};
use equisynth::game::{CommGraph, ConcurrentGame, Move, PayoffVector, VertexId};
use equisynth::solver::*;

fn v(game: &ConcurrentGame, name: &str) -> VertexId {
    game.vertex_by_name(name).unwrap()
}

fn setup(name: &str) -> (ConcurrentGame, CommGraph, EpistemicGame) {
    let g = five_player_game();
    let c = comm_graph(&g, name).unwrap();
    let eg = build_reachable(&g, &c, &BuildConfig::default()).unwrap();
    (g, c, eg)
}

fn main_inf(g: &ConcurrentGame) -> SolveConfig {
    SolveConfig {
        main_inf: Some(BTreeSet::from([v(g, "v0"), v(g, "v1")])),
        ..SolveConfig::default()
    }
}

fn target() -> Query {
    "p=(0,0,1,1,1)".parse().unwrap()
}

#[test]
fn g1_and_g2_found_g3_not() {
    for (name, expect) in [("g1", true), ("g2", true), ("g3", false)] {
        let (g, c, eg) = setup(name);
        let out = solve(&g, &eg, &target(), &main_inf(&g)).unwrap();
        match out {
            SolveOutcome::Found(sol) => {
                assert!(expect, "{name}: unexpectedly found");
                assert_eq!(sol.payoff, PayoffVector::from_ints(&[0, 0, 1, 1, 1]));
                let cyc: BTreeSet<VertexId> = sol.cycle.iter().copied().collect();
                assert_eq!(cyc, BTreeSet::from([v(&g, "v0"), v(&g, "v1")]));
                let report = model_check_strategy(&g, &c, &eg, &sol.strategy, &sol.payoff).unwrap();
                assert!(report.winning, "{name}: {:?}", report.violations);
            }
            SolveOutcome::NotFound { .. } => assert!(!expect, "{name}: not found"),
        }
    }
}

#[test]
fn hidden_deviation_state_in_punishment_region() {
    let p = PayoffVector::from_ints(&[0, 0, 1, 1, 1]);
    for (name, expect) in [("g1", true), ("g3", false)] {
        let (g, c, eg) = setup(name);
        let x = equisynth::epistemic::update_from_empty(
            &g,
            &c,
            v(&g, "v0"),
            &Move(vec![g.action_by_name("a").unwrap(); 5]),
            v(&g, "v1p"),
        )
        .unwrap();
        let id = eg
            .find(&EveState {
                vertex: v(&g, "v1p"),
                situations: x,
            })
            .unwrap();
        let w = punishment_region(&g, &eg, &p, 1_000_000).unwrap();
        assert_eq!(w.contains(&id), expect, "{name}");
    }
}

#[test]
fn top_payoff_found_under_every_graph() {
    for name in ["g1", "g2", "g3", "edgeless", "complete"] {
        let (g, c, eg) = setup(name);
        let q: Query = "p[2]>=3".parse().unwrap();
        assert_eq!(candidate_payoffs(&g, &q), vec![PayoffVector::from_ints(&[0, 0, 3, 3, 3])]);
        let SolveOutcome::Found(sol) = solve(&g, &eg, &q, &SolveConfig::default()).unwrap() else {
            panic!("{name}: not found");
        };
        assert_eq!(sol.cycle, vec![v(&g, "v0p")]);
        assert!(model_check_strategy(&g, &c, &eg, &sol.strategy, &sol.payoff).unwrap().winning);
    }
}

#[test]
fn unsatisfiable_predicate() {
    let (g, _, eg) = setup("g1");
    let q: Query = "p[0]=5".parse().unwrap();
    assert!(candidate_payoffs(&g, &q).is_empty());
    assert!(matches!(
        solve(&g, &eg, &q, &SolveConfig::default()).unwrap(),
        SolveOutcome::NotFound { .. }
    ));
}

#[test]
fn candidates_in_rule_order() {
    let g = five_player_game();
    let all = candidate_payoffs(&g, &Query::True);
    let want: Vec<PayoffVector> = [
        [0, 0, 1, 1, 1],
        [0, 0, 2, 2, 2],
        [0, 0, 0, 2, 2],
        [0, 0, 2, 0, 2],
        [0, 0, 2, 2, 0],
        [0, 0, 3, 3, 3],
        [0, 0, 0, 0, 0],
    ]
    .iter()
    .map(|r| PayoffVector::from_ints(r))
    .collect();
    assert_eq!(all, want);
}

#[test]
fn lazy_strategy_is_not_winning() {
    // Play aaaaa at every complying state and the first enumerated action elsewhere.
    let (g, c, eg) = setup("g1");
    let a = g.action_by_name("a").unwrap();
    let strat = EveStrategy::positional(&eg, |e| {
        let node = eg.eve(e);
        node.adam
            .iter()
            .copied()
            .find(|&ad| match &eg.adam(ad).action {
                EveAction::Move(m) => m.0.iter().all(|&x| x == a),
                EveAction::Dev(_) => true,
            })
            .unwrap_or(node.adam[0])
    });
    let p = PayoffVector::from_ints(&[0, 0, 1, 1, 1]);
    let report = model_check_strategy(&g, &c, &eg, &strat, &p).unwrap();
    assert!(!report.winning);
    assert_eq!(report.complying_payoff.as_deref(), Some("(0,0,1,1,1)"));
}

#[test]
fn max_vector_punishes_everything() {
    let (g, _, eg) = setup("g3");
    let max = g.payoff().max_vector();
    let w = punishment_region(&g, &eg, &max, 1_000_000).unwrap();
    let deviated = eg.eve_ids().filter(|&e| eg.eve(e).state.is_deviated()).count();
    assert_eq!(w.len(), deviated);
}
