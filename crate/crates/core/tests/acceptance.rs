//! One line per acceptance criterion. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use equisynth::bundled::{comm_graph, five_player_game};
use equisynth::epistemic::*;
use equisynth::game::{CommGraph, ConcurrentGame, Move, PayoffVector, PlayerId, PlayerSet, VertexId};
use equisynth::gen::{random_comm, random_game, GenConfig};
use equisynth::solver::*;
use equisynth::translate::{check_deviation_resistance, check_normed, default_depth, omega, upsilon};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::{brute_force_winners, lar_lasso_round, random_parity};

type Verdict = Result<String, String>;

fn p(i: u16) -> PlayerId {
    PlayerId(i)
}

fn set(ps: &[u16]) -> PlayerSet {
    ps.iter().map(|&i| p(i)).collect()
}

fn word(game: &ConcurrentGame, w: &str) -> Move {
    Move(w.chars().map(|c| game.action_by_name(&c.to_string()).unwrap()).collect())
}

fn v(game: &ConcurrentGame, name: &str) -> VertexId {
    game.vertex_by_name(name).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Suite {
    game: ConcurrentGame,
    graph: CommGraph,
    eg: EpistemicGame,
}

/// Random games with at most 5 vertices, 4 players and 3 actions.
fn random_suite(n: u64) -> Vec<Suite> {
    (0..n)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(0xACCE + seed);
            let game = random_game(&mut rng, &GenConfig::default());
            let density = rng.gen_range(0.0..0.7);
            let graph = random_comm(&mut rng, game.num_players(), density);
            let eg = build_reachable(&game, &graph, &BuildConfig::default()).unwrap();
            Suite { game, graph, eg }
        })
        .collect()
}

fn five_player_suite() -> Vec<Suite> {
    let game = five_player_game();
    ["g1", "g2", "g3", "edgeless", "complete"]
        .iter()
        .map(|name| {
            let graph = comm_graph(&game, name).unwrap();
            let eg = build_reachable(&game, &graph, &BuildConfig::default()).unwrap();
            Suite { game: game.clone(), graph, eg }
        })
        .collect()
}

fn golden_situations() -> Verdict {
    let g = five_player_game();
    let g1 = comm_graph(&g, "g1").unwrap();
    let x = update_from_empty(&g, &g1, v(&g, "v0"), &word(&g, "aaaaa"), v(&g, "v1p")).map_err(|e| e.to_string())?;
    ensure(x.deviators() == set(&[2, 3, 4]), || format!("dev = {}", x.deviators()))?;
    for (d, i) in [(2, vec![2]), (3, vec![3, 4]), (4, vec![0, 4])] {
        ensure(x.informed(p(d)) == Some(set(&i)), || format!("I_{d} = {:?}", x.informed(p(d))))?;
    }
    // K_d(a) as printed, for every uninformed a.
    let golden: [(u16, u16, &[u16]); 10] = [
        (2, 0, &[2, 3]),
        (2, 1, &[2, 3, 4]),
        (2, 3, &[2, 4]),
        (2, 4, &[2]),
        (3, 0, &[2, 3]),
        (3, 1, &[2, 3, 4]),
        (3, 2, &[3, 4]),
        (4, 1, &[2, 3, 4]),
        (4, 2, &[3, 4]),
        (4, 3, &[2, 4]),
    ];
    for (d, a, k) in golden {
        let got = x.knowledge(p(d), p(a)).map_err(|e| e.to_string())?;
        ensure(got == set(k), || format!("K_{d}({a}) = {got}"))?;
    }
    Ok(format!("{} situations, {} K values", x.len(), golden.len()))
}

fn example_verdicts() -> Verdict {
    let g = five_player_game();
    let target = PayoffVector::from_ints(&[0, 0, 1, 1, 1]);
    let config = SolveConfig {
        main_inf: Some(BTreeSet::from([v(&g, "v0"), v(&g, "v1")])),
        ..SolveConfig::default()
    };
    let mut got = Vec::new();
    for (name, want) in [("g1", true), ("g2", true), ("g3", false)] {
        let graph = comm_graph(&g, name).unwrap();
        let eg = build_reachable(&g, &graph, &BuildConfig::default()).map_err(|e| e.to_string())?;
        let out = solve(&g, &eg, &Query::exactly(target.clone()), &config).map_err(|e| e.to_string())?;
        let found = matches!(out, SolveOutcome::Found(_));
        ensure(found == want, || format!("{name}: found = {found}"))?;
        got.push(format!("{name} {}", if found { "FOUND" } else { "NOT-FOUND" }));
    }
    Ok(got.join(", "))
}

fn eve_action_constraints() -> Verdict {
    let g = five_player_game();
    let g1 = comm_graph(&g, "g1").unwrap();
    let state = EveState {
        vertex: v(&g, "v0"),
        situations: update_from_empty(&g, &g1, v(&g, "v0"), &word(&g, "aaaaa"), v(&g, "v1p")).unwrap(),
    };
    // f(d)(a) = f(e)(a) whenever a is uninformed about both d and e.
    let equalities = |f: &DevFunction| {
        let at = |d: u16, a: u16| f.get(p(d)).unwrap().get(p(a));
        at(2, 0) == at(3, 0) && at(2, 1) == at(3, 1) && at(3, 1) == at(4, 1) && at(3, 2) == at(4, 2) && at(2, 3) == at(4, 3)
    };
    let enumerated: Vec<EveAction> = enabled_eve_actions(&g, &state).collect();
    for a in &enumerated {
        let EveAction::Dev(f) = a else {
            return Err("move action at a deviated state".into());
        };
        ensure(equalities(f), || format!("{} violates the equalities", a.render(&g)))?;
    }
    let moves: Vec<Move> = g.moves(v(&g, "v0")).collect();
    let mut brute = 0usize;
    for m2 in &moves {
        for m3 in &moves {
            for m4 in &moves {
                let f = DevFunction::new(vec![(p(2), m2.clone()), (p(3), m3.clone()), (p(4), m4.clone())]);
                brute += usize::from(equalities(&f));
            }
        }
    }
    ensure(brute == enumerated.len(), || format!("enumerated {} vs brute force {brute}", enumerated.len()))?;
    Ok(format!("{brute} functions out of {}", moves.len().pow(3)))
}

fn knowledge_suite(suite: &[Suite]) -> Verdict {
    let mut states = 0;
    for (i, s) in suite.iter().enumerate() {
        let k = check_knowledge_invariant(&s.game, &s.graph, &s.eg);
        ensure(k.is_empty(), || format!("game {i}: {}", k[0]))?;
        states += s.eg.num_eve();
    }
    Ok(format!("{} games, {states} Eve states", suite.len()))
}

fn distance_suite(suite: &[Suite]) -> Verdict {
    for (i, s) in suite.iter().enumerate() {
        let d = check_distance_characterization(&s.graph, &s.eg);
        ensure(d.is_empty(), || format!("game {i}: {}", d[0]))?;
    }
    Ok(format!("{} games", suite.len()))
}

fn size_bounds(suites: &[&[Suite]]) -> Verdict {
    let mut n = 0;
    for s in suites.iter().flat_map(|s| s.iter()) {
        let r = size_report(&s.game, &s.graph, &s.eg);
        ensure(r.eve_ok() && r.adam_ok(), || r.to_string())?;
        n += 1;
    }
    Ok(format!("{n} instances"))
}

fn parity_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9A81);
    let rounds = 220;
    for round in 0..rounds {
        let pg = random_parity(&mut rng);
        let sol = parity_solve(&pg);
        ensure(sol.winner == brute_force_winners(&pg), || format!("round {round}: {pg:?}"))?;
    }
    Ok(format!("{rounds} games"))
}

fn lar_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1A5);
    let rounds = 600;
    for round in 0..rounds {
        let (reduced, direct, what) = lar_lasso_round(&mut rng);
        ensure(reduced == direct, || format!("round {round}: {what}"))?;
    }
    Ok(format!("{rounds} lassos"))
}

fn round_trip(suites: &[&[Suite]]) -> Verdict {
    let mut checked = 0;
    for s in suites.iter().flat_map(|s| s.iter()) {
        for p in s.game.payoff().distinct_vectors() {
            let Some(sol) = solve_for(&s.game, &s.eg, &p, &SolveConfig::default()).map_err(|e| e.to_string())? else {
                continue;
            };
            let sigma = omega(&s.game, &s.eg, &sol.strategy).map_err(|e| e.to_string())?;
            let normed = check_normed(&s.game, &s.graph, &sigma, default_depth(&s.game, &s.graph));
            ensure(normed.ok(), || format!("{p}: {}", normed.violations[0]))?;
            let r = check_deviation_resistance(&s.game, &s.graph, &s.eg, &sigma, &p).map_err(|e| e.to_string())?;
            ensure(r.winning, || format!("{p}: {:?}", r.violations))?;
            let back = upsilon(&s.game, &s.graph, &s.eg, &sigma).map_err(|e| e.to_string())?;
            ensure(back.complying_lasso(&s.eg) == sol.strategy.complying_lasso(&s.eg), || {
                format!("{p}: complying outcome changed")
            })?;
            checked += 1;
        }
    }
    ensure(checked > 0, || "no strategy found".into())?;
    Ok(format!("{checked} strategies"))
}

fn edgeless_complete(suite: &[Suite]) -> Verdict {
    let mut states = 0;
    for (i, s) in suite.iter().enumerate() {
        let n = s.game.num_players();
        let edgeless = CommGraph::edgeless(n);
        let eg = build_reachable(&s.game, &edgeless, &BuildConfig::default()).map_err(|e| e.to_string())?;
        for e in eg.eve_ids() {
            let x = &eg.eve(e).state.situations;
            for sit in x.iter() {
                ensure(sit.informed == PlayerSet::singleton(sit.deviator), || format!("game {i}: edgeless informs"))?;
                // An uninformed player suspects every remaining deviator but itself.
                for a in s.game.players().filter(|&a| a != sit.deviator) {
                    let k = x.knowledge(sit.deviator, a).map_err(|e| e.to_string())?;
                    ensure(k == x.deviators().without(a), || format!("game {i}: K_{}({})", sit.deviator.0, a.0))?;
                }
            }
            states += 1;
        }
        let complete = CommGraph::complete(n);
        let eg = build_reachable(&s.game, &complete, &BuildConfig::default()).map_err(|e| e.to_string())?;
        for e in eg.eve_ids() {
            for sit in eg.eve(e).state.situations.iter() {
                ensure(sit.informed == s.game.all_players(), || format!("game {i}: complete graph"))?;
            }
            states += 1;
        }
    }
    Ok(format!("{} games, {states} Eve states", suite.len()))
}

fn main() {
    let random = random_suite(120);
    let five = five_player_suite();
    let mut small: Vec<Suite> = Vec::new();
    let cfg = GenConfig {
        max_vertices: 4,
        max_players: 3,
        ..GenConfig::default()
    };
    for seed in 0..150u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x501E + seed);
        let game = random_game(&mut rng, &cfg);
        let density = rng.gen_range(0.0..0.8);
        let graph = random_comm(&mut rng, game.num_players(), density);
        let eg = build_reachable(&game, &graph, &BuildConfig::default()).unwrap();
        small.push(Suite { game, graph, eg });
    }

    type Check<'a> = Box<dyn Fn() -> Verdict + 'a>;
    let criteria: Vec<(&str, Duration, Check)> = vec![
        ("golden situation set after a hidden deviation", Duration::from_secs(1), Box::new(golden_situations)),
        ("example verdicts under G1, G2, G3", Duration::from_secs(30), Box::new(example_verdicts)),
        ("Eve action constraints vs brute force", Duration::from_secs(5), Box::new(eve_action_constraints)),
        ("knowledge invariant and literal K", Duration::from_secs(120), Box::new(|| knowledge_suite(&random))),
        ("distance characterization", Duration::from_secs(120), Box::new(|| distance_suite(&random))),
        ("size bounds", Duration::from_secs(120), Box::new(|| size_bounds(&[&random, &five, &small]))),
        ("parity solver vs positional enumeration", Duration::from_secs(60), Box::new(parity_oracle)),
        ("LAR reduction vs Muller acceptance", Duration::from_secs(60), Box::new(lar_oracle)),
        ("profile round trip", Duration::from_secs(300), Box::new(|| round_trip(&[&five, &small]))),
        ("edgeless and complete graphs", Duration::from_secs(120), Box::new(|| edgeless_complete(&random))),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let elapsed = start.elapsed();
        let line = match verdict {
            Ok(detail) if elapsed <= *budget => format!("PASS  {:>2}. {name}: {detail}", i + 1),
            Ok(detail) => format!("FAIL  {:>2}. {name}: {detail}, over the {budget:?} budget", i + 1),
            Err(why) => format!("FAIL  {:>2}. {name}: {why}", i + 1),
        };
        failed += usize::from(line.starts_with("FAIL"));
        println!("{line}  [{:.2}s]", elapsed.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
