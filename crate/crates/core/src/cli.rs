//! Command-line front end.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::epistemic::{
    build_reachable, check_distance_characterization, check_knowledge_invariant, size_report,
    BuildConfig, EpistemicError, EpistemicGame,
};
use crate::game::parse::{load_comm, load_game};
use crate::game::{CommGraph, ConcurrentGame, GameError, VertexId};
use crate::gen::{random_comm, random_game, GenConfig};
use crate::solver::{model_check_strategy, solve, Query, SolveConfig, SolveOutcome, SolverError};
use crate::translate::{
    check_deviation_resistance, check_normed, default_depth, omega, parse_profile, profile_to_json,
    simulate, verify_profile, DeviationScript, StrategyProfile, TranslateError,
};

pub const EXIT_FOUND: i32 = 0;
pub const EXIT_NOT_FOUND: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "equisynth", version, about = "Nash equilibria of concurrent games with communication graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the epistemic game and check its invariants.
    Build(Common),
    /// Search for an equilibrium whose payoff satisfies the predicate.
    Solve(Common),
    /// Check a profile produced by `solve`.
    Verify(Common),
    /// Export the game, the communication graph or the epistemic game.
    Dot {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = DotWhat::Game)]
        what: DotWhat,
    },
    /// Play a profile, optionally with a deviation script.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// JSON file `{deviator, step, actions}`.
        #[arg(long)]
        script: Option<PathBuf>,
    },
    /// Run the solve and verify pipeline on seeded random games.
    CheckRandom {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Game JSON file, or `five-player` for the bundled five-player game.
    #[arg(long, default_value = "five-player")]
    pub game: String,
    /// Communication graph JSON file, or one of `g1`, `g2`, `g3`, `edgeless`, `complete`.
    #[arg(long, default_value = "g1")]
    pub comm: String,
    /// Payoff predicate, e.g. `p[2]=1 & p[3]>=1`.
    #[arg(long, default_value = "true")]
    pub predicate: String,
    /// Comma-separated vertices the main outcome must visit infinitely often (and no others).
    #[arg(long)]
    pub main_inf: Option<String>,
    /// Exploration depth of the normed check and simulation length.
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, default_value_t = 1_000_000)]
    pub state_cap: usize,
    #[arg(long, default_value_t = 2_000_000)]
    pub lar_cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Output file (profile for `solve`, report otherwise). Defaults to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Profile file for `verify` and `simulate`.
    #[arg(long)]
    pub profile: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DotWhat {
    Game,
    Comm,
    Epistemic,
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(m: impl ToString) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: m.to_string(),
        }
    }
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        Failure::input(e)
    }
}

impl From<EpistemicError> for Failure {
    fn from(e: EpistemicError) -> Self {
        let code = match e {
            EpistemicError::StateCap(_) | EpistemicError::ActionCap(_) => EXIT_CAP,
            EpistemicError::Game(_) => EXIT_INPUT,
            _ => EXIT_VERIFY,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::LarCap(_) | SolverError::SubsetCap(_) => Failure {
                code: EXIT_CAP,
                message: e.to_string(),
            },
            SolverError::Query(_) => Failure::input(e),
            SolverError::Epistemic(e) => e.into(),
            SolverError::Undefined(_) => Failure {
                code: EXIT_VERIFY,
                message: e.to_string(),
            },
        }
    }
}

impl From<TranslateError> for Failure {
    fn from(e: TranslateError) -> Self {
        match e {
            TranslateError::Format(_) | TranslateError::Script(_) => Failure::input(e),
            TranslateError::Epistemic(e) => e.into(),
            TranslateError::Solver(e) => e.into(),
            _ => Failure {
                code: EXIT_VERIFY,
                message: e.to_string(),
            },
        }
    }
}

/// Report text and exit code of a successful run.
pub struct Outcome {
    pub report: String,
    pub code: i32,
}

struct Inputs {
    game: ConcurrentGame,
    graph: CommGraph,
}

fn load_inputs(c: &Common) -> Result<Inputs, Failure> {
    let game = if c.game == "five-player" && !Path::new(&c.game).exists() {
        crate::bundled::five_player_game()
    } else {
        load_game(Path::new(&c.game))?
    };
    let graph = match crate::bundled::comm_graph(&game, &c.comm) {
        Some(g) if !Path::new(&c.comm).exists() => g,
        _ => load_comm(Path::new(&c.comm), &game)?,
    };
    Ok(Inputs { game, graph })
}

fn build(c: &Common, inp: &Inputs) -> Result<EpistemicGame, Failure> {
    if c.state_cap == 0 || c.lar_cap == 0 {
        return Err(Failure::input("caps must be positive"));
    }
    let config = BuildConfig {
        state_cap: c.state_cap,
        ..BuildConfig::default()
    };
    Ok(build_reachable(&inp.game, &inp.graph, &config)?)
}

fn parse_main_inf(game: &ConcurrentGame, s: &Option<String>) -> Result<Option<BTreeSet<VertexId>>, Failure> {
    let Some(s) = s else { return Ok(None) };
    s.split(',')
        .map(|n| {
            game.vertex_by_name(n.trim())
                .ok_or_else(|| Failure::input(format!("unknown vertex `{}`", n.trim())))
        })
        .collect::<Result<BTreeSet<_>, _>>()
        .map(Some)
}

fn render<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("report serializes") + "\n",
        _ => text(),
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Build(c) => cmd_build(c),
        Command::Solve(c) => cmd_solve(c),
        Command::Verify(c) => cmd_verify(c),
        Command::Dot { common, what } => cmd_dot(common, *what),
        Command::Simulate { common, script } => cmd_simulate(common, script.as_deref()),
        Command::CheckRandom { common, count } => cmd_check_random(common, *count),
    }
}

#[derive(Serialize)]
struct BuildReport {
    vertices: usize,
    players: usize,
    tab: usize,
    diameter: u32,
    eve_states: usize,
    adam_states: usize,
    deviated_eve_states: usize,
    eve_bound: String,
    adam_bound: String,
    eve_bound_ok: bool,
    adam_bound_ok: bool,
    knowledge_violations: Vec<String>,
    distance_violations: Vec<String>,
}

fn cmd_build(c: &Common) -> Result<Outcome, Failure> {
    let inp = load_inputs(c)?;
    let eg = build(c, &inp)?;
    if c.format == Format::Dot {
        return Ok(Outcome {
            report: crate::dot::epistemic_dot(&inp.game, &eg),
            code: EXIT_FOUND,
        });
    }
    let s = size_report(&inp.game, &inp.graph, &eg);
    let k: Vec<String> = check_knowledge_invariant(&inp.game, &inp.graph, &eg)
        .iter()
        .map(|v| v.to_string())
        .collect();
    let d: Vec<String> = check_distance_characterization(&inp.graph, &eg)
        .iter()
        .map(|v| v.to_string())
        .collect();
    let ok = k.is_empty() && d.is_empty() && s.eve_ok() && s.adam_ok();
    let report = BuildReport {
        vertices: s.vertices,
        players: inp.game.num_players(),
        tab: s.tab,
        diameter: s.diameter,
        eve_states: s.eve_states,
        adam_states: s.adam_states,
        deviated_eve_states: s.deviated_eve_states,
        eve_bound: s.eve_bound.to_string(),
        adam_bound: s.adam_bound.to_string(),
        eve_bound_ok: s.eve_ok(),
        adam_bound_ok: s.adam_ok(),
        knowledge_violations: k,
        distance_violations: d,
    };
    let text = render(c.format, &report, || {
        let mut t = format!("{s}\n");
        for v in report.knowledge_violations.iter().chain(&report.distance_violations) {
            writeln!(t, "violation: {v}").unwrap();
        }
        writeln!(t, "checks: {}", if ok { "ok" } else { "FAILED" }).unwrap();
        t
    });
    Ok(Outcome {
        report: text,
        code: if ok { EXIT_FOUND } else { EXIT_VERIFY },
    })
}

#[derive(Serialize)]
struct SolveReport {
    verdict: &'static str,
    payoff: Option<String>,
    prefix: Vec<String>,
    cycle: Vec<String>,
    tried: Vec<String>,
    eve_states: usize,
    adam_states: usize,
    punishing_states: Option<usize>,
    strategy_nodes: Option<usize>,
    profile_nodes: Option<usize>,
    profile_normed: Option<bool>,
    profile_resistant: Option<bool>,
}

fn cmd_solve(c: &Common) -> Result<Outcome, Failure> {
    let inp = load_inputs(c)?;
    let query: Query = c.predicate.parse().map_err(Failure::input)?;
    query
        .check_arity(inp.game.num_players())
        .map_err(Failure::input)?;
    let main_inf = parse_main_inf(&inp.game, &c.main_inf)?;
    let eg = build(c, &inp)?;
    let config = SolveConfig {
        lar_cap: c.lar_cap,
        main_inf,
        ..SolveConfig::default()
    };
    let names = |vs: &[VertexId]| -> Vec<String> { vs.iter().map(|&v| inp.game.vertex_name(v).to_string()).collect() };
    let mut report = SolveReport {
        verdict: "not-found",
        payoff: None,
        prefix: Vec::new(),
        cycle: Vec::new(),
        tried: Vec::new(),
        eve_states: eg.num_eve(),
        adam_states: eg.num_adam(),
        punishing_states: None,
        strategy_nodes: None,
        profile_nodes: None,
        profile_normed: None,
        profile_resistant: None,
    };
    let mut code = EXIT_NOT_FOUND;
    match solve(&inp.game, &eg, &query, &config)? {
        SolveOutcome::NotFound { tried } => {
            report.tried = tried.iter().map(|p| p.to_string()).collect();
        }
        SolveOutcome::Found(sol) => {
            let mut profile = omega(&inp.game, &eg, &sol.strategy)?;
            profile.payoff = Some(sol.payoff.clone());
            let depth = c.depth.unwrap_or_else(|| default_depth(&inp.game, &inp.graph));
            let normed = check_normed(&inp.game, &inp.graph, &profile, depth).ok();
            let resist = check_deviation_resistance(&inp.game, &inp.graph, &eg, &profile, &sol.payoff)?;
            report.verdict = "found";
            report.payoff = Some(sol.payoff.to_string());
            report.prefix = names(&sol.prefix);
            report.cycle = names(&sol.cycle);
            report.punishing_states = Some(sol.punishing_states);
            report.strategy_nodes = Some(sol.strategy.len());
            report.profile_nodes = Some(profile.len());
            report.profile_normed = Some(normed);
            report.profile_resistant = Some(resist.winning);
            code = if normed && resist.winning { EXIT_FOUND } else { EXIT_VERIFY };
            if let Some(path) = &c.out {
                std::fs::write(path, profile_to_json(&inp.game, &profile)).map_err(Failure::input)?;
            }
        }
    }
    let text = render(c.format, &report, || {
        let mut t = format!("verdict: {}\n", report.verdict);
        writeln!(t, "epistemic game: {} Eve states, {} Adam states", report.eve_states, report.adam_states).unwrap();
        if let Some(p) = &report.payoff {
            writeln!(t, "payoff: {p}").unwrap();
            let mut lasso = report.prefix.join(" ");
            if !lasso.is_empty() {
                lasso.push(' ');
            }
            writeln!(t, "main outcome: {lasso}({})^ω", report.cycle.join(" ")).unwrap();
            writeln!(t, "punishing states: {}", report.punishing_states.unwrap()).unwrap();
            writeln!(
                t,
                "profile: {} nodes, normed {}, resistant {}",
                report.profile_nodes.unwrap(),
                report.profile_normed.unwrap(),
                report.profile_resistant.unwrap()
            )
            .unwrap();
        } else {
            writeln!(t, "candidates tried: {}", report.tried.join(" ")).unwrap();
        }
        t
    });
    Ok(Outcome { report: text, code })
}

fn load_profile(c: &Common, game: &ConcurrentGame) -> Result<StrategyProfile, Failure> {
    let path = c.profile.as_ref().ok_or_else(|| Failure::input("--profile is required"))?;
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(parse_profile(game, &text)?)
}

#[derive(Serialize)]
struct VerifyReport {
    verdict: &'static str,
    main_payoff: Option<String>,
    recorded_payoff: Option<String>,
    predicate_holds: Option<bool>,
    normed: bool,
    resistant: bool,
    problems: Vec<String>,
}

fn cmd_verify(c: &Common) -> Result<Outcome, Failure> {
    let inp = load_inputs(c)?;
    let query: Query = c.predicate.parse().map_err(Failure::input)?;
    let profile = load_profile(c, &inp.game)?;
    let eg = build(c, &inp)?;
    let depth = c.depth.unwrap_or_else(|| default_depth(&inp.game, &inp.graph));
    let v = verify_profile(&inp.game, &inp.graph, &eg, &profile, &query, depth);
    let ok = v.ok();
    let report = VerifyReport {
        verdict: if ok { "pass" } else { "fail" },
        main_payoff: v.main_payoff.as_ref().map(|p| p.to_string()),
        recorded_payoff: profile.payoff.as_ref().map(|p| p.to_string()),
        predicate_holds: v.predicate_holds,
        normed: v.normed.ok(),
        resistant: v.resistant,
        problems: v.problems,
    };
    let text = render(c.format, &report, || {
        let mut t = format!("verdict: {}\n", report.verdict);
        if let Some(p) = &report.main_payoff {
            writeln!(t, "main payoff: {p}").unwrap();
        }
        writeln!(t, "normed: {} (depth {depth}, {} configurations)", report.normed, v.normed.configurations).unwrap();
        writeln!(t, "resistant: {}", report.resistant).unwrap();
        for p in &report.problems {
            writeln!(t, "problem: {p}").unwrap();
        }
        t
    });
    Ok(Outcome {
        report: text,
        code: if ok { EXIT_FOUND } else { EXIT_VERIFY },
    })
}

fn cmd_dot(c: &Common, what: DotWhat) -> Result<Outcome, Failure> {
    let inp = load_inputs(c)?;
    let report = match what {
        DotWhat::Game => crate::dot::game_dot(&inp.game),
        DotWhat::Comm => crate::dot::comm_dot(&inp.game, &inp.graph),
        DotWhat::Epistemic => crate::dot::epistemic_dot(&inp.game, &build(c, &inp)?),
    };
    Ok(Outcome { report, code: EXIT_FOUND })
}

#[derive(Serialize)]
struct TraceReport {
    lines: Vec<String>,
    visible_at: Option<usize>,
    lasso_start: Option<usize>,
    lasso_cycle: Vec<String>,
    lasso_payoff: Option<String>,
}

fn cmd_simulate(c: &Common, script: Option<&Path>) -> Result<Outcome, Failure> {
    let inp = load_inputs(c)?;
    let profile = load_profile(c, &inp.game)?;
    let script = match script {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::input(format!("{}: {e}", p.display())))?;
            Some(DeviationScript::parse(&inp.game, &text)?)
        }
        None => None,
    };
    let steps = c.depth.unwrap_or_else(|| default_depth(&inp.game, &inp.graph));
    let trace = simulate(&inp.game, &inp.graph, &profile, script.as_ref(), steps)?;
    let report = TraceReport {
        lines: trace.render_lines(&inp.game),
        visible_at: trace.visible_at,
        lasso_start: trace.lasso.as_ref().map(|l| l.start),
        lasso_cycle: trace
            .lasso
            .as_ref()
            .map(|l| l.cycle.iter().map(|&v| inp.game.vertex_name(v).to_string()).collect())
            .unwrap_or_default(),
        lasso_payoff: trace.lasso.as_ref().map(|l| l.payoff.to_string()),
    };
    let text = render(c.format, &report, || {
        let mut t = report.lines.join("\n") + "\n";
        if let Some(r) = report.visible_at {
            writeln!(t, "deviation visible at round {r}").unwrap();
        }
        if let Some(p) = &report.lasso_payoff {
            writeln!(
                t,
                "lasso from round {}: ({})^ω payoff {p}",
                report.lasso_start.unwrap(),
                report.lasso_cycle.join(" ")
            )
            .unwrap();
        }
        t
    });
    Ok(Outcome { report: text, code: EXIT_FOUND })
}

#[derive(Serialize, Default)]
struct RandomReport {
    seed: u64,
    games: usize,
    found: usize,
    not_found: usize,
    skipped: usize,
    failures: Vec<String>,
}

fn cmd_check_random(c: &Common, count: usize) -> Result<Outcome, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let mut report = RandomReport {
        seed: c.seed,
        ..RandomReport::default()
    };
    let query: Query = c.predicate.parse().map_err(Failure::input)?;
    let cfg = GenConfig::default();
    for i in 0..count {
        let game = random_game(&mut rng, &cfg);
        let density = rng.gen_range(0.0..0.8);
        let graph = random_comm(&mut rng, game.num_players(), density);
        report.games += 1;
        let config = BuildConfig {
            state_cap: c.state_cap,
            ..BuildConfig::default()
        };
        let eg = match build_reachable(&game, &graph, &config) {
            Ok(eg) => eg,
            Err(EpistemicError::StateCap(_) | EpistemicError::ActionCap(_)) => {
                report.skipped += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let mut fail = |m: String| report.failures.push(format!("game {i}: {m}"));
        if !check_knowledge_invariant(&game, &graph, &eg).is_empty() {
            fail("knowledge invariant".into());
        }
        if !check_distance_characterization(&graph, &eg).is_empty() {
            fail("distance characterization".into());
        }
        let s = size_report(&game, &graph, &eg);
        if !s.eve_ok() || !s.adam_ok() {
            fail(format!("size bound: {s}"));
        }
        let solve_config = SolveConfig {
            lar_cap: c.lar_cap,
            ..SolveConfig::default()
        };
        let query = if query.check_arity(game.num_players()).is_ok() { query.clone() } else { Query::True };
        match solve(&game, &eg, &query, &solve_config) {
            Ok(SolveOutcome::Found(sol)) => {
                report.found += 1;
                let mc = model_check_strategy(&game, &graph, &eg, &sol.strategy, &sol.payoff)?;
                if !mc.winning {
                    fail(format!("model check: {:?}", mc.violations));
                }
                let profile = omega(&game, &eg, &sol.strategy)?;
                let depth = c.depth.unwrap_or_else(|| default_depth(&game, &graph));
                if !check_normed(&game, &graph, &profile, depth).ok() {
                    fail("profile not normed".into());
                }
                if !check_deviation_resistance(&game, &graph, &eg, &profile, &sol.payoff)?.winning {
                    fail("profile not resistant".into());
                }
            }
            Ok(SolveOutcome::NotFound { .. }) => report.not_found += 1,
            Err(SolverError::LarCap(_) | SolverError::SubsetCap(_)) => report.skipped += 1,
            Err(e) => return Err(e.into()),
        }
    }
    let ok = report.failures.is_empty();
    let text = render(c.format, &report, || {
        let mut t = format!(
            "seed {}: {} games, {} found, {} not found, {} skipped\n",
            report.seed, report.games, report.found, report.not_found, report.skipped
        );
        for f in &report.failures {
            writeln!(t, "failure: {f}").unwrap();
        }
        t
    });
    Ok(Outcome {
        report: text,
        code: if ok { EXIT_FOUND } else { EXIT_VERIFY },
    })
}

/// Parses arguments, runs the command, writes the report and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_FOUND };
        }
    };
    let out_path = match &cli.command {
        Command::Solve(_) => None,
        Command::Build(c) | Command::Verify(c) => c.out.clone(),
        Command::Dot { common, .. } | Command::Simulate { common, .. } | Command::CheckRandom { common, .. } => {
            common.out.clone()
        }
    };
    let start = std::time::Instant::now();
    let result = execute(&cli);
    tracing::info!(elapsed_ms = start.elapsed().as_millis() as u64, "command finished");
    match result {
        Ok(o) => {
            match out_path {
                Some(p) => {
                    if let Err(e) = std::fs::write(&p, &o.report) {
                        eprintln!("error: {}: {e}", p.display());
                        return EXIT_INPUT;
                    }
                }
                None => print!("{}", o.report),
            }
            o.code
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

pub fn init_logging() {
    let filter = tracing_subscriber::EnvFilter::try_from_env("EQUISYNTH_LOG")
        .unwrap_or_else(|_| tracing_subscriber::EnvFilter::new("warn"));
    let _ = tracing_subscriber::fmt()
        .with_env_filter(filter)
        .with_writer(std::io::stderr)
        .try_init();
}
