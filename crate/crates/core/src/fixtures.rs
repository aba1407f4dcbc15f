//! Small hand-built automata used by tests, docs and the CLI examples.

use crate::automaton::{Alphabet, Ba, Symbol};

const A: Symbol = Symbol(0);
const B: Symbol = Symbol(1);

fn named(b: &mut crate::automaton::BaBuilder, names: &[&str]) {
    for (i, n) in names.iter().enumerate() {
        b.set_name(i, *n);
    }
}

/// Two states `p`, `q` over `{a, b}`: `p -a-> p`, `p -a-> q`, `q -b-> q`,
/// initial `p`, accepting `q`. Accepts `a^+ b^ω`.
pub fn running_example() -> Ba {
    let mut b = Ba::builder(Alphabet::letters(2), 2);
    named(&mut b, &["p", "q"]);
    b.add_initial(0).set_accepting(1);
    b.add_transition(0, A, 0)
        .add_transition(0, A, 1)
        .add_transition(1, B, 1);
    b.build()
}

/// States `q`, `s`, `t` over `{a, b}` with initial `q` and accepting `s`.
///
/// `{q}` is a deterministic non-accepting component feeding the inherently
/// weak component `{s, t}`.
pub fn mixed_example() -> Ba {
    let mut b = Ba::builder(Alphabet::letters(2), 3);
    named(&mut b, &["q", "s", "t"]);
    b.add_initial(0).set_accepting(1);
    b.add_transition(0, A, 0)
        .add_transition(0, A, 1)
        .add_transition(0, B, 1)
        .add_transition(1, A, 1)
        .add_transition(1, B, 2)
        .add_transition(2, A, 1)
        .add_transition(2, B, 1);
    b.build()
}

/// A chain of three deterministic accepting components over the
/// propositions `a`, `b`, `c`.
///
/// State `i` loops on every letter, and the loop is accepting exactly on
/// letters where proposition `i` holds. Every letter also moves `0 -> 1`
/// and `1 -> 2`. The automaton is an elevator automaton but not
/// semi-deterministic.
pub fn elevator_chain() -> Ba {
    let alphabet = Alphabet::from_props(["a", "b", "c"]);
    let mut b = Ba::builder(alphabet.clone(), 3);
    b.add_initial(0);
    for sym in alphabet.symbols() {
        for q in 0..3 {
            b.add_edge(q, sym, q, sym.0 >> q & 1 == 1);
        }
        b.add_transition(0, sym, 1).add_transition(1, sym, 2);
    }
    b.build()
}

/// Unary automaton `p -> {p, q}`, `q -> {r, s}`, `r -> p`, `s -> p`, where
/// the last two transitions are accepting. No state is accepting.
pub fn dataflow_example() -> Ba {
    let mut b = Ba::builder(Alphabet::letters(1), 4);
    named(&mut b, &["p", "q", "r", "s"]);
    b.add_initial(0);
    b.add_transition(0, A, 0)
        .add_transition(0, A, 1)
        .add_transition(1, A, 2)
        .add_transition(1, A, 3)
        .add_accepting_transition(2, A, 0)
        .add_accepting_transition(3, A, 0);
    b.build()
}
