mod common;

use tightrank_core::complement::complement;
use tightrank_core::hoa::{parse_hoa, serialize_hoa, HoaError};
use tightrank_core::oracle::tabakov_vardi;
use tightrank_core::ranking::Trub;

#[test]
fn generated_automata_round_trip() {
    for seed in 0..200 {
        let ba = common::suite_member(seed);
        let back = parse_hoa(&serialize_hoa(&ba)).unwrap();
        assert!(back.same_structure(&ba), "seed {seed}");
    }
    for (symbols, seed) in [(1, 1), (3, 2), (4, 3), (5, 4)] {
        let ba = tabakov_vardi(4, symbols, 1.5, 0.5, seed).unwrap();
        let back = parse_hoa(&serialize_hoa(&ba)).unwrap();
        assert_eq!(back.num_states(), ba.num_states());
        assert_eq!(back.num_transitions(), ba.num_transitions());
    }
}

#[test]
fn complements_round_trip() {
    for seed in 0..30 {
        let c = complement(&common::suite_member(seed), &Trub::Trivial).ba;
        let back = parse_hoa(&serialize_hoa(&c)).unwrap();
        assert!(back.same_structure(&c), "seed {seed}");
    }
}

#[test]
fn transition_based_acceptance() {
    let text = r#"HOA: v1
name: "tba"
States: 2
Start: 0
AP: 1 "x"
Acceptance: 1 Inf(0)
--BODY--
State: 0
[0] 0 {0}
[!0] 1
State: 1
[t] 1
--END--
"#;
    let ba = parse_hoa(text).unwrap();
    assert_eq!(ba.num_states(), 2);
    assert!(ba.accepting_states().is_empty());
    let x = ba.alphabet().lookup("x").unwrap();
    assert_eq!(ba.transition(0, x, 0), Some(true));
    assert_eq!(ba.transition(1, x, 1), Some(false));
}

#[test]
fn errors_carry_positions() {
    let err = parse_hoa("HOA: v1\nStates: 1\nStart: 0\nAcceptance: 1 Inf(0)\n--BODY--\nState: 0 [\n--END--\n")
        .unwrap_err();
    assert!(matches!(err, HoaError::Syntax { line: 7, col: 1, .. }), "{err:?}");
    let err = parse_hoa("HOA: v1\nStates: 1\nStart: 3\nAcceptance: 1 Inf(0)\n--BODY--\n--END--\n").unwrap_err();
    assert!(matches!(err, HoaError::StateOutOfRange { .. }), "{err:?}");
}
