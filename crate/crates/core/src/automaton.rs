//! Büchi automata with mixed state/transition acceptance.

use std::fmt;

use thiserror::Error;

use crate::stateset::StateSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("state set is not a maximal strongly connected component")]
    NotAComponent,
    #[error("automaton must be trimmed and acceptance-normalized first")]
    NotPrepared,
    #[error("automaton is not an elevator automaton")]
    NotElevator,
}

/// Index of a letter in an [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(pub u32);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite, ordered set of letters.
///
/// An alphabet built from atomic propositions has `2^k` letters, where
/// letter `i` is the valuation whose bit `j` gives the value of
/// proposition `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    props: Option<Vec<String>>,
}

impl Alphabet {
    pub fn from_names<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        assert!(!names.is_empty(), "an alphabet needs at least one letter");
        Alphabet { names, props: None }
    }

    /// `k` letters named `a`, `b`, ... (or `s0`, `s1`, ... past 26).
    pub fn letters(k: usize) -> Self {
        if k <= 26 {
            Self::from_names((0..k).map(|i| ((b'a' + i as u8) as char).to_string()))
        } else {
            Self::from_names((0..k).map(|i| format!("s{i}")))
        }
    }

    pub fn from_props<S: Into<String>>(props: impl IntoIterator<Item = S>) -> Self {
        let props: Vec<String> = props.into_iter().map(Into::into).collect();
        let names = (0..1usize << props.len())
            .map(|v| {
                if props.is_empty() {
                    return "t".to_string();
                }
                let lits: Vec<String> = props
                    .iter()
                    .enumerate()
                    .map(|(j, p)| if v >> j & 1 == 1 { p.clone() } else { format!("!{p}") })
                    .collect();
                lits.join("&")
            })
            .collect();
        Alphabet {
            names,
            props: Some(props),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, a: Symbol) -> &str {
        &self.names[a.index()]
    }

    pub fn props(&self) -> Option<&[String]> {
        self.props.as_deref()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + Clone {
        (0..self.names.len() as u32).map(Symbol)
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.names.iter().position(|n| n == name).map(|i| Symbol(i as u32))
    }
}

/// An outgoing transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub target: usize,
    pub accepting: bool,
}

/// A nondeterministic Büchi automaton over states `0..n`.
///
/// Acceptance may sit on states, on transitions, or both. A transition
/// `(p, a, q)` appears at most once; its `accepting` flag says whether it
/// belongs to the accepting transition set.
#[derive(Clone, PartialEq, Eq)]
pub struct Ba {
    alphabet: Alphabet,
    trans: Vec<Vec<Vec<Edge>>>,
    initial: StateSet,
    accepting: StateSet,
    names: Vec<Option<String>>,
}

impl Ba {
    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_symbols(&self) -> usize {
        self.alphabet.len()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + Clone {
        self.alphabet.symbols()
    }

    pub fn states(&self) -> std::ops::Range<usize> {
        0..self.num_states()
    }

    pub fn initial(&self) -> &StateSet {
        &self.initial
    }

    pub fn accepting_states(&self) -> &StateSet {
        &self.accepting
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting.contains(q)
    }

    /// Outgoing edges of `q` on `a`, sorted by target.
    pub fn edges(&self, q: usize, a: Symbol) -> &[Edge] {
        &self.trans[q][a.index()]
    }

    /// The accepting flag of `(p, a, q)`, or `None` if there is no such transition.
    pub fn transition(&self, p: usize, a: Symbol, q: usize) -> Option<bool> {
        let edges = self.edges(p, a);
        edges
            .binary_search_by_key(&q, |e| e.target)
            .ok()
            .map(|i| edges[i].accepting)
    }

    pub fn post(&self, q: usize, a: Symbol) -> impl Iterator<Item = usize> + '_ {
        self.edges(q, a).iter().map(|e| e.target)
    }

    /// `δ(S, a)`.
    pub fn post_set(&self, set: &StateSet, a: Symbol) -> StateSet {
        let mut out = StateSet::new();
        for q in set {
            out.extend(self.post(q, a));
        }
        out
    }

    /// Successors of `q` over all letters, possibly with repetitions.
    pub fn successors(&self, q: usize) -> impl Iterator<Item = usize> + '_ {
        self.trans[q].iter().flatten().map(|e| e.target)
    }

    /// All transitions as `(source, letter, edge)`.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, Symbol, Edge)> + '_ {
        self.trans.iter().enumerate().flat_map(|(p, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(a, es)| es.iter().map(move |e| (p, Symbol(a as u32), *e)))
        })
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.iter().flatten().map(Vec::len).sum()
    }

    pub fn has_accepting_transitions(&self) -> bool {
        self.transitions().any(|(_, _, e)| e.accepting)
    }

    pub fn name(&self, q: usize) -> Option<&str> {
        self.names[q].as_deref()
    }

    /// The name of `q`, or its index when unnamed.
    pub fn label(&self, q: usize) -> String {
        self.name(q).map_or_else(|| q.to_string(), str::to_string)
    }

    /// Renders a state set as `{x,y}` using state labels.
    pub fn format_set(&self, set: &StateSet) -> String {
        let parts: Vec<String> = set.iter().map(|q| self.label(q)).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Sub-automaton induced by `keep`, renumbered in increasing index order.
    ///
    /// Returns the automaton and, for each new state, its old index.
    pub fn restrict(&self, keep: &StateSet) -> (Ba, Vec<usize>) {
        let old: Vec<usize> = keep.iter().filter(|&q| q < self.num_states()).collect();
        let mut new_of = vec![usize::MAX; self.num_states()];
        for (i, &q) in old.iter().enumerate() {
            new_of[q] = i;
        }
        let mut b = BaBuilder::new(self.alphabet.clone(), old.len());
        for (i, &q) in old.iter().enumerate() {
            if self.initial.contains(q) {
                b.add_initial(i);
            }
            if self.accepting.contains(q) {
                b.set_accepting(i);
            }
            if let Some(n) = self.name(q) {
                b.set_name(i, n);
            }
            for a in self.symbols() {
                for e in self.edges(q, a) {
                    if new_of[e.target] != usize::MAX {
                        b.add_edge(i, a, new_of[e.target], e.accepting);
                    }
                }
            }
        }
        (b.build(), old)
    }

    /// Equality of everything except letter and state names.
    pub fn same_structure(&self, other: &Ba) -> bool {
        self.num_symbols() == other.num_symbols()
            && self.trans == other.trans
            && self.initial == other.initial
            && self.accepting == other.accepting
    }

    /// Copy of this automaton with the given acceptance sets.
    pub fn with_acceptance(
        &self,
        accepting: StateSet,
        keep_transition: impl Fn(usize, Symbol, usize) -> bool,
    ) -> Ba {
        let mut out = self.clone();
        out.accepting = accepting;
        for (p, row) in out.trans.iter_mut().enumerate() {
            for (a, es) in row.iter_mut().enumerate() {
                for e in es.iter_mut() {
                    e.accepting = e.accepting && keep_transition(p, Symbol(a as u32), e.target);
                }
            }
        }
        out
    }

    pub fn builder(alphabet: Alphabet, n: usize) -> BaBuilder {
        BaBuilder::new(alphabet, n)
    }
}

impl fmt::Debug for Ba {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Ba {{ states: {}, initial: {}, accepting: {}",
            self.num_states(),
            self.format_set(&self.initial),
            self.format_set(&self.accepting)
        )?;
        for (p, a, e) in self.transitions() {
            writeln!(
                f,
                "  {} -{}-> {}{}",
                self.label(p),
                self.alphabet.name(a),
                self.label(e.target),
                if e.accepting { " *" } else { "" }
            )?;
        }
        write!(f, "}}")
    }
}

/// Incremental constructor for [`Ba`].
///
/// Adding a transition twice keeps one copy; it is accepting if any of the
/// additions was. Out-of-range indices panic.
#[derive(Clone, Debug)]
pub struct BaBuilder {
    alphabet: Alphabet,
    trans: Vec<Vec<Vec<Edge>>>,
    initial: StateSet,
    accepting: StateSet,
    names: Vec<Option<String>>,
}

impl BaBuilder {
    pub fn new(alphabet: Alphabet, n: usize) -> Self {
        let k = alphabet.len();
        BaBuilder {
            alphabet,
            trans: vec![vec![Vec::new(); k]; n],
            initial: StateSet::new(),
            accepting: StateSet::new(),
            names: vec![None; n],
        }
    }

    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    /// Appends a fresh state and returns its index.
    pub fn add_state(&mut self) -> usize {
        self.trans.push(vec![Vec::new(); self.alphabet.len()]);
        self.names.push(None);
        self.trans.len() - 1
    }

    pub fn add_initial(&mut self, q: usize) -> &mut Self {
        assert!(q < self.num_states());
        self.initial.insert(q);
        self
    }

    pub fn set_accepting(&mut self, q: usize) -> &mut Self {
        assert!(q < self.num_states());
        self.accepting.insert(q);
        self
    }

    pub fn set_name(&mut self, q: usize, name: impl Into<String>) -> &mut Self {
        self.names[q] = Some(name.into());
        self
    }

    pub fn add_edge(&mut self, p: usize, a: Symbol, q: usize, accepting: bool) -> &mut Self {
        assert!(q < self.num_states(), "target {q} out of range");
        self.trans[p][a.index()].push(Edge {
            target: q,
            accepting,
        });
        self
    }

    pub fn add_transition(&mut self, p: usize, a: Symbol, q: usize) -> &mut Self {
        self.add_edge(p, a, q, false)
    }

    pub fn add_accepting_transition(&mut self, p: usize, a: Symbol, q: usize) -> &mut Self {
        self.add_edge(p, a, q, true)
    }

    pub fn build(mut self) -> Ba {
        for es in self.trans.iter_mut().flatten() {
            // Accepting copies sort after plain ones, so keep the last of each run.
            es.sort_unstable();
            let mut merged: Vec<Edge> = Vec::with_capacity(es.len());
            for e in es.drain(..) {
                match merged.last_mut() {
                    Some(last) if last.target == e.target => last.accepting |= e.accepting,
                    _ => merged.push(e),
                }
            }
            *es = merged;
        }
        Ba {
            alphabet: self.alphabet,
            trans: self.trans,
            initial: self.initial,
            accepting: self.accepting,
            names: self.names,
        }
    }
}
