use equisynth::epistemic::*;
use equisynth::gen::{random_comm, random_game, GenConfig};
use equisynth::game::{CommGraph, ConcurrentGame, PlayerSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instances(n: u64) -> impl Iterator<Item = (u64, ConcurrentGame, CommGraph)> {
    (0..n).map(|seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(0xE915 + seed);
        let g = random_game(&mut rng, &GenConfig::default());
        let density = rng.gen_range(0.0..0.7);
        let c = random_comm(&mut rng, g.num_players(), density);
        (seed, g, c)
    })
}

#[test]
fn knowledge_and_distance_invariants_on_random_games() {
    for (seed, g, c) in instances(120) {
        let eg = build_reachable(&g, &c, &BuildConfig::default()).unwrap();
        let k = check_knowledge_invariant(&g, &c, &eg);
        assert!(k.is_empty(), "seed {seed}: {}", k[0]);
        let d = check_distance_characterization(&c, &eg);
        assert!(d.is_empty(), "seed {seed}: {}", d[0]);
        let s = size_report(&g, &c, &eg);
        assert!(s.eve_ok() && s.adam_ok(), "seed {seed}: {s}");
    }
}

#[test]
fn structural_properties_on_random_games() {
    for (seed, g, c) in instances(60) {
        let eg = build_reachable(&g, &c, &BuildConfig::default()).unwrap();
        for a in eg.adam_ids() {
            let node = eg.adam(a);
            let from = &eg.eve(node.origin).state;
            for &(v, e) in &node.edges {
                let to = &eg.eve(e).state;
                assert_eq!(to.vertex, v);
                match &node.action {
                    EveAction::Move(m) => {
                        // Empty successor exactly on the table's target.
                        assert_eq!(to.situations.is_empty(), g.next(from.vertex, m) == v, "seed {seed}");
                        // Some single substitution explains the edge.
                        assert!(g.players().any(|d| g
                            .allowed(from.vertex, d)
                            .iter()
                            .any(|&x| g.next(from.vertex, &m.with(d, x)) == v)));
                    }
                    EveAction::Dev(_) => {
                        assert!(to.situations.deviators().is_subset(from.situations.deviators()));
                        for s in to.situations.iter() {
                            let before = from.situations.informed(s.deviator).unwrap();
                            assert!(before.is_subset(s.informed), "seed {seed}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn edgeless_graph_never_informs() {
    for (seed, g, _) in instances(60) {
        let c = CommGraph::edgeless(g.num_players());
        let eg = build_reachable(&g, &c, &BuildConfig::default()).unwrap();
        for e in eg.eve_ids() {
            let x = &eg.eve(e).state.situations;
            for s in x.iter() {
                assert_eq!(s.informed, PlayerSet::singleton(s.deviator), "seed {seed}");
                // Suspects of an uninformed player: every deviator but the player itself.
                for a in g.players().filter(|&a| a != s.deviator) {
                    assert_eq!(x.knowledge(s.deviator, a).unwrap(), x.deviators().without(a));
                }
            }
        }
        assert!(check_knowledge_invariant(&g, &c, &eg).is_empty());
    }
}

#[test]
fn complete_graph_informs_at_once() {
    for (seed, g, _) in instances(60) {
        let c = CommGraph::complete(g.num_players());
        let eg = build_reachable(&g, &c, &BuildConfig::default()).unwrap();
        for e in eg.eve_ids() {
            for s in eg.eve(e).state.situations.iter() {
                assert_eq!(s.informed, g.all_players(), "seed {seed}");
            }
        }
    }
}

#[test]
fn every_enabled_action_has_a_built_adam_state() {
    for (seed, g, c) in instances(40) {
        let eg = build_reachable(&g, &c, &BuildConfig::default()).unwrap();
        for e in eg.eve_ids() {
            let state = &eg.eve(e).state;
            let it = enabled_eve_actions(&g, state);
            if it.total() > 4096 {
                continue;
            }
            for action in it {
                assert!(is_enabled(&g, state, &action));
                eg.adam_for_action(&g, &c, e, &action)
                    .unwrap_or_else(|err| panic!("seed {seed}: {err}"));
            }
        }
    }
}
