use std::ffi::{c_char, CStr, CString};
use std::ptr;

use equisynth_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { es_string_free(s) };
    out
}

fn last_error() -> Option<String> {
    let p = es_last_error_message();
    (!p.is_null()).then(|| take(p))
}

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

struct Handles {
    game: *mut EsGame,
    eg: *mut EsEpistemic,
}

impl Handles {
    fn new(comm: &str) -> Self {
        let mut game = ptr::null_mut();
        assert_eq!(unsafe { es_game_bundled(&mut game) }, EsStatus::Ok);
        let mut eg = ptr::null_mut();
        let status = unsafe { es_epistemic_build(game, c(comm).as_ptr(), 0, &mut eg) };
        assert_eq!(status, EsStatus::Ok, "{:?}", last_error());
        Handles { game, eg }
    }
}

impl Drop for Handles {
    fn drop(&mut self) {
        unsafe {
            es_epistemic_free(self.eg);
            es_game_free(self.game);
        }
    }
}

const PRED: &str = "p[2]=1 & p[3]=1 & p[4]=1";

#[test]
fn solve_and_verify_g1() {
    let h = Handles::new("g1");
    assert_eq!(unsafe { es_game_num_players(h.game) }, 5);
    assert!(unsafe { es_epistemic_num_eve(h.eg) } > 0);
    let mut r = ptr::null_mut();
    let status = unsafe { es_solve(h.game, h.eg, c(PRED).as_ptr(), c("v0,v1").as_ptr(), &mut r) };
    assert_eq!(status, EsStatus::Ok);
    assert_eq!(take(unsafe { es_solve_result_payoff(r) }), "(0,0,1,1,1)");
    assert_eq!(take(unsafe { es_solve_result_outcome(r) }), "(v0 v1)^ω");
    let profile = take(unsafe { es_solve_result_profile_json(r) });
    unsafe { es_solve_result_free(r) };

    let p = c(&profile);
    assert_eq!(unsafe { es_verify_profile(h.game, h.eg, p.as_ptr(), c(PRED).as_ptr()) }, EsStatus::Ok);
    assert_eq!(last_error(), None);
    let status = unsafe { es_verify_profile(h.game, h.eg, p.as_ptr(), c("p[2]=2").as_ptr()) };
    assert_eq!(status, EsStatus::VerificationFailed);
    assert!(last_error().unwrap().contains("violates"));

    // The same profile does not survive the sparser graph.
    let g3 = Handles::new("g3");
    let status = unsafe { es_verify_profile(g3.game, g3.eg, p.as_ptr(), c(PRED).as_ptr()) };
    assert_eq!(status, EsStatus::VerificationFailed);
}

#[test]
fn not_found_leaves_output_null() {
    let h = Handles::new("g3");
    let mut r = ptr::null_mut();
    let status = unsafe { es_solve(h.game, h.eg, c(PRED).as_ptr(), c("v0,v1").as_ptr(), &mut r) };
    assert_eq!(status, EsStatus::NotFound);
    assert!(r.is_null());
}

#[test]
fn error_codes() {
    let h = Handles::new("g1");
    let mut r = ptr::null_mut();
    let bad = unsafe { es_solve(h.game, h.eg, c("p[0]==").as_ptr(), ptr::null(), &mut r) };
    assert_eq!(bad, EsStatus::InvalidInput);
    assert!(last_error().is_some());
    let null = unsafe { es_solve(ptr::null(), h.eg, c("true").as_ptr(), ptr::null(), &mut r) };
    assert_eq!(null, EsStatus::NullPointer);

    let mut eg = ptr::null_mut();
    assert_eq!(unsafe { es_epistemic_build(h.game, c("g1").as_ptr(), 10, &mut eg) }, EsStatus::ResourceCap);
    assert!(eg.is_null());
    assert_eq!(unsafe { es_epistemic_build(h.game, c("{").as_ptr(), 0, &mut eg) }, EsStatus::InvalidInput);

    let mut g = ptr::null_mut();
    assert_eq!(unsafe { es_game_from_json(c("[]").as_ptr(), &mut g) }, EsStatus::InvalidInput);
    assert_eq!(unsafe { es_verify_profile(h.game, h.eg, c("{}").as_ptr(), c("true").as_ptr()) }, EsStatus::InvalidInput);

    // Null handles are tolerated by the accessors and destructors.
    unsafe {
        assert_eq!(es_game_num_players(ptr::null()), 0);
        assert!(es_solve_result_payoff(ptr::null()).is_null());
        es_game_free(ptr::null_mut());
        es_string_free(ptr::null_mut());
    }
}

#[test]
fn game_from_json_round_trip() {
    let json = equisynth::game::parse::game_to_json(&equisynth::bundled::five_player_game());
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { es_game_from_json(c(&json).as_ptr(), &mut g) }, EsStatus::Ok);
    assert_eq!(unsafe { es_game_num_players(g) }, 5);
    unsafe { es_game_free(g) };
    let v = unsafe { CStr::from_ptr(es_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_is_current() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/equisynth.h")).unwrap();
    for name in [
        "es_game_bundled",
        "es_game_from_json",
        "es_epistemic_build",
        "es_solve",
        "es_verify_profile",
        "es_last_error_message",
        "es_string_free",
        "typedef struct EsGame EsGame;",
        "ES_STATUS_RESOURCE_CAP = 3",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
