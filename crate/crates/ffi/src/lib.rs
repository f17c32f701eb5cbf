//! C ABI over the `equisynth` library.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free` function. Strings returned by the library are
//! NUL-terminated UTF-8 and must be released with [`es_string_free`].
//! Every fallible call returns an [`EsStatus`]; on failure the message is
//! available from [`es_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use equisynth::epistemic::{build_reachable, BuildConfig, EpistemicError, EpistemicGame};
use equisynth::game::parse::{parse_comm, parse_game};
use equisynth::game::{CommGraph, ConcurrentGame};
use equisynth::solver::{solve, Query, SolveConfig, SolveOutcome, SolverError};
use equisynth::translate::{default_depth, omega, parse_profile, profile_to_json, verify_profile, TranslateError};

/// Status codes, numbered like the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EsStatus {
    Ok = 0,
    NotFound = 1,
    InvalidInput = 2,
    ResourceCap = 3,
    VerificationFailed = 4,
    NullPointer = 5,
    Panic = 6,
}

/// A concurrent game.
pub struct EsGame {
    game: ConcurrentGame,
}

/// A communication graph with the epistemic game built over it.
pub struct EsEpistemic {
    graph: CommGraph,
    eg: EpistemicGame,
}

/// A found equilibrium: its payoff, main outcome and distributed profile.
pub struct EsSolveResult {
    payoff: CString,
    outcome: CString,
    profile: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Fail(EsStatus, String);

impl From<EpistemicError> for Fail {
    fn from(e: EpistemicError) -> Self {
        let s = match e {
            EpistemicError::StateCap(_) | EpistemicError::ActionCap(_) => EsStatus::ResourceCap,
            EpistemicError::Game(_) => EsStatus::InvalidInput,
            _ => EsStatus::VerificationFailed,
        };
        Fail(s, e.to_string())
    }
}

impl From<SolverError> for Fail {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::LarCap(_) | SolverError::SubsetCap(_) => Fail(EsStatus::ResourceCap, e.to_string()),
            SolverError::Query(_) => Fail(EsStatus::InvalidInput, e.to_string()),
            SolverError::Epistemic(e) => e.into(),
            SolverError::Undefined(_) => Fail(EsStatus::VerificationFailed, e.to_string()),
        }
    }
}

impl From<TranslateError> for Fail {
    fn from(e: TranslateError) -> Self {
        match e {
            TranslateError::Format(_) | TranslateError::Script(_) => Fail(EsStatus::InvalidInput, e.to_string()),
            TranslateError::Epistemic(e) => e.into(),
            TranslateError::Solver(e) => e.into(),
            _ => Fail(EsStatus::VerificationFailed, e.to_string()),
        }
    }
}

fn input(m: impl ToString) -> Fail {
    Fail(EsStatus::InvalidInput, m.to_string())
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, recording failures and panics as the thread's last error.
fn guard(f: impl FnOnce() -> Result<EsStatus, Fail>) -> EsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, m))) => {
            set_error(m);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            EsStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(EsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| input(format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(EsStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out_arg<T>(out: *mut *mut T, value: T) -> Result<EsStatus, Fail> {
    if out.is_null() {
        return Err(Fail(EsStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(EsStatus::Ok)
}

/// Copy of the last error message on this thread, or null if the last call
/// succeeded.
#[no_mangle]
pub extern "C" fn es_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn es_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a game from its JSON description.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn es_game_from_json(json: *const c_char, out: *mut *mut EsGame) -> EsStatus {
    guard(|| {
        let game = parse_game(str_arg(json, "json")?).map_err(input)?;
        out_arg(out, EsGame { game })
    })
}

/// The bundled five-player example game.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn es_game_bundled(out: *mut *mut EsGame) -> EsStatus {
    guard(|| {
        out_arg(
            out,
            EsGame {
                game: equisynth::bundled::five_player_game(),
            },
        )
    })
}

/// # Safety
/// `game` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn es_game_free(game: *mut EsGame) {
    if !game.is_null() {
        drop(Box::from_raw(game));
    }
}

/// # Safety
/// `game` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn es_game_num_players(game: *const EsGame) -> usize {
    game.as_ref().map_or(0, |g| g.game.num_players())
}

/// Builds the epistemic game over a communication graph. `comm` is either a
/// bundled graph name (`g1`, `g2`, `g3`, `edgeless`, `complete`) or a JSON
/// description. A `state_cap` of 0 keeps the default.
///
/// # Safety
/// `game` must be a live handle, `comm` a NUL-terminated string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn es_epistemic_build(
    game: *const EsGame,
    comm: *const c_char,
    state_cap: usize,
    out: *mut *mut EsEpistemic,
) -> EsStatus {
    guard(|| {
        let game = &ref_arg(game, "game")?.game;
        let comm = str_arg(comm, "comm")?;
        let graph = match equisynth::bundled::comm_graph(game, comm) {
            Some(g) => g,
            None => parse_comm(comm, game).map_err(input)?,
        };
        let mut config = BuildConfig::default();
        if state_cap > 0 {
            config.state_cap = state_cap;
        }
        let eg = build_reachable(game, &graph, &config)?;
        out_arg(out, EsEpistemic { graph, eg })
    })
}

/// # Safety
/// `eg` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn es_epistemic_free(eg: *mut EsEpistemic) {
    if !eg.is_null() {
        drop(Box::from_raw(eg));
    }
}

/// # Safety
/// `eg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn es_epistemic_num_eve(eg: *const EsEpistemic) -> usize {
    eg.as_ref().map_or(0, |e| e.eg.num_eve())
}

/// # Safety
/// `eg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn es_epistemic_num_adam(eg: *const EsEpistemic) -> usize {
    eg.as_ref().map_or(0, |e| e.eg.num_adam())
}

/// Searches for an equilibrium whose payoff satisfies `predicate`.
/// `main_inf` is null or a comma-separated list of vertices the main outcome
/// must visit infinitely often. Returns `Ok` with `*out` set, or `NotFound`
/// with `*out` left null.
///
/// # Safety
/// Handles must be live, strings NUL-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn es_solve(
    game: *const EsGame,
    eg: *const EsEpistemic,
    predicate: *const c_char,
    main_inf: *const c_char,
    out: *mut *mut EsSolveResult,
) -> EsStatus {
    guard(|| {
        let game = &ref_arg(game, "game")?.game;
        let e = ref_arg(eg, "epistemic game")?;
        if out.is_null() {
            return Err(Fail(EsStatus::NullPointer, "output pointer is null".into()));
        }
        *out = ptr::null_mut();
        let query: Query = str_arg(predicate, "predicate")?.parse().map_err(input)?;
        query.check_arity(game.num_players()).map_err(input)?;
        let mut config = SolveConfig::default();
        if !main_inf.is_null() {
            let names = str_arg(main_inf, "main_inf")?;
            config.main_inf = Some(
                names
                    .split(',')
                    .map(|n| game.vertex_by_name(n.trim()).ok_or_else(|| input(format!("unknown vertex `{n}`"))))
                    .collect::<Result<_, _>>()?,
            );
        }
        let SolveOutcome::Found(sol) = solve(game, &e.eg, &query, &config)? else {
            return Ok(EsStatus::NotFound);
        };
        let mut profile = omega(game, &e.eg, &sol.strategy)?;
        profile.payoff = Some(sol.payoff.clone());
        let name = |v: &equisynth::game::VertexId| game.vertex_name(*v).to_string();
        let prefix: Vec<String> = sol.prefix.iter().map(name).collect();
        let cycle: Vec<String> = sol.cycle.iter().map(name).collect();
        let outcome = if prefix.is_empty() {
            format!("({})^ω", cycle.join(" "))
        } else {
            format!("{} ({})^ω", prefix.join(" "), cycle.join(" "))
        };
        let cs = |s: String| CString::new(s).map_err(|_| input("NUL in output"));
        out_arg(
            out,
            EsSolveResult {
                payoff: cs(sol.payoff.to_string())?,
                outcome: cs(outcome)?,
                profile: cs(profile_to_json(game, &profile))?,
            },
        )
    })
}

/// Payoff of the equilibrium, e.g. `(0,0,1,1,1)`. Free with `es_string_free`.
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn es_solve_result_payoff(r: *const EsSolveResult) -> *mut c_char {
    r.as_ref().map_or(ptr::null_mut(), |r| r.payoff.clone().into_raw())
}

/// Main outcome as a lasso, e.g. `(v0 v1)^ω`. Free with `es_string_free`.
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn es_solve_result_outcome(r: *const EsSolveResult) -> *mut c_char {
    r.as_ref().map_or(ptr::null_mut(), |r| r.outcome.clone().into_raw())
}

/// Profile as JSON, accepted by `es_verify_profile` and the command line.
/// Free with `es_string_free`.
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn es_solve_result_profile_json(r: *const EsSolveResult) -> *mut c_char {
    r.as_ref().map_or(ptr::null_mut(), |r| r.profile.clone().into_raw())
}

/// # Safety
/// `r` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn es_solve_result_free(r: *mut EsSolveResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Checks a profile: normed up to the default depth, resistant against its
/// main payoff, and that payoff satisfies `predicate`. Returns `Ok` or
/// `VerificationFailed` with the problems as the last error.
///
/// # Safety
/// Handles must be live and strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn es_verify_profile(
    game: *const EsGame,
    eg: *const EsEpistemic,
    profile_json: *const c_char,
    predicate: *const c_char,
) -> EsStatus {
    guard(|| {
        let game = &ref_arg(game, "game")?.game;
        let e = ref_arg(eg, "epistemic game")?;
        let profile = parse_profile(game, str_arg(profile_json, "profile")?)?;
        let query: Query = str_arg(predicate, "predicate")?.parse().map_err(input)?;
        let v = verify_profile(game, &e.graph, &e.eg, &profile, &query, default_depth(game, &e.graph));
        if v.ok() {
            Ok(EsStatus::Ok)
        } else {
            Err(Fail(EsStatus::VerificationFailed, v.problems.join("\n")))
        }
    })
}

/// Version string of the library. Static; do not free.
#[no_mangle]
pub extern "C" fn es_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
