//! Ground truth on ultimately periodic words, and random automata.
//!
//! Everything here works on the run graph of an automaton over a lasso
//! `u v^ω`, folded so that positions wrap from the end of `v` back to its
//! start. The code deliberately avoids the component analysis used by the
//! construction, so it can serve as an independent check.

use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::automaton::{Alphabet, Ba, Symbol};
use crate::stateset::StateSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("the word is accepted, so it has no rank")]
    Accepted,
    #[error("automata have different alphabet sizes ({0} and {1})")]
    AlphabetMismatch(usize, usize),
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("the loop of a lasso word must be non-empty")]
    EmptyLoop,
}

/// The ultimately periodic word `stem · cycle^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LassoWord {
    pub stem: Vec<Symbol>,
    pub cycle: Vec<Symbol>,
}

impl LassoWord {
    pub fn new(stem: Vec<Symbol>, cycle: Vec<Symbol>) -> Result<Self, OracleError> {
        if cycle.is_empty() {
            return Err(OracleError::EmptyLoop);
        }
        Ok(LassoWord { stem, cycle })
    }

    /// Folded length `|u| + |v|`.
    pub fn period_end(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    pub fn letter(&self, pos: usize) -> Symbol {
        if pos < self.stem.len() {
            self.stem[pos]
        } else {
            self.cycle[pos - self.stem.len()]
        }
    }

    /// Folded position after `pos`.
    pub fn next(&self, pos: usize) -> usize {
        if pos + 1 < self.period_end() {
            pos + 1
        } else {
            self.stem.len()
        }
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        let show = |w: &[Symbol]| w.iter().map(|&a| alphabet.name(a)).collect::<Vec<_>>().join(" ");
        format!("[{}] ([{}])^ω", show(&self.stem), show(&self.cycle))
    }
}

impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |w: &[Symbol]| w.iter().map(|a| a.0.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({})({})^w", show(&self.stem), show(&self.cycle))
    }
}

/// The reachable folded run graph of `ba` on a lasso.
pub struct RunGraph {
    /// `(state, position)` of every vertex.
    pub vertices: Vec<(usize, usize)>,
    /// Successors with the accepting flag of the transition taken.
    pub succ: Vec<Vec<(usize, bool)>>,
    pub accepting: Vec<bool>,
    period: usize,
    lookup: Vec<u32>,
}

impl RunGraph {
    pub fn build(ba: &Ba, word: &LassoWord) -> RunGraph {
        let period = word.period_end();
        let mut g = RunGraph {
            vertices: Vec::new(),
            succ: Vec::new(),
            accepting: Vec::new(),
            period,
            lookup: vec![u32::MAX; ba.num_states() * period],
        };
        for q in ba.initial() {
            g.intern(ba, q, 0);
        }
        let mut next = 0;
        while next < g.vertices.len() {
            let (q, pos) = g.vertices[next];
            let a = word.letter(pos);
            let to = word.next(pos);
            let mut out = Vec::with_capacity(ba.edges(q, a).len());
            for e in ba.edges(q, a) {
                out.push((g.intern(ba, e.target, to), e.accepting));
            }
            g.succ[next] = out;
            next += 1;
        }
        g
    }

    fn intern(&mut self, ba: &Ba, q: usize, pos: usize) -> usize {
        let slot = q * self.period + pos;
        if self.lookup[slot] == u32::MAX {
            self.lookup[slot] = self.vertices.len() as u32;
            self.vertices.push((q, pos));
            self.succ.push(Vec::new());
            self.accepting.push(ba.is_accepting(q));
        }
        self.lookup[slot] as usize
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, q: usize, pos: usize) -> Option<usize> {
        let v = *self.lookup.get(q * self.period + pos)?;
        (v != u32::MAX).then_some(v as usize)
    }

    /// Kosaraju's algorithm on the vertices marked `alive`.
    fn components(&self, alive: &[bool]) -> Vec<usize> {
        let n = self.len();
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for root in 0..n {
            if !alive[root] || seen[root] {
                continue;
            }
            seen[root] = true;
            let mut stack = vec![(root, 0usize)];
            while let Some((v, i)) = stack.last_mut() {
                let v = *v;
                if let Some(&(w, _)) = self.succ[v].get(*i) {
                    *i += 1;
                    if alive[w] && !seen[w] {
                        seen[w] = true;
                        stack.push((w, 0));
                    }
                } else {
                    order.push(v);
                    stack.pop();
                }
            }
        }
        let mut pred = vec![Vec::new(); n];
        for v in 0..n {
            if alive[v] {
                for &(w, _) in &self.succ[v] {
                    if alive[w] {
                        pred[w].push(v);
                    }
                }
            }
        }
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for &root in order.iter().rev() {
            if comp[root] != usize::MAX {
                continue;
            }
            comp[root] = count;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &u in &pred[v] {
                    if comp[u] == usize::MAX {
                        comp[u] = count;
                        stack.push(u);
                    }
                }
            }
            count += 1;
        }
        comp
    }

    /// Alive vertices that reach a seed through alive vertices (seeds included).
    fn backward_closure(&self, alive: &[bool], seeds: &[bool]) -> Vec<bool> {
        let n = self.len();
        let mut pred = vec![Vec::new(); n];
        for v in 0..n {
            if alive[v] {
                for &(w, _) in &self.succ[v] {
                    if alive[w] {
                        pred[w].push(v);
                    }
                }
            }
        }
        let mut mark: Vec<bool> = (0..n).map(|v| alive[v] && seeds[v]).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| mark[v]).collect();
        while let Some(v) = stack.pop() {
            for &u in &pred[v] {
                if !mark[u] {
                    mark[u] = true;
                    stack.push(u);
                }
            }
        }
        mark
    }

    /// Alive vertices lying on a cycle of alive vertices.
    fn on_cycle(&self, alive: &[bool]) -> Vec<bool> {
        let comp = self.components(alive);
        let mut cyclic = vec![false; self.len()];
        for v in 0..self.len() {
            if !alive[v] {
                continue;
            }
            for &(w, _) in &self.succ[v] {
                if alive[w] && comp[w] == comp[v] {
                    cyclic[v] = true;
                }
            }
        }
        cyclic
    }

    fn has_accepting_cycle(&self) -> bool {
        let alive = vec![true; self.len()];
        let comp = self.components(&alive);
        let cyclic = self.on_cycle(&alive);
        (0..self.len()).any(|v| {
            (cyclic[v] && self.accepting[v])
                || self.succ[v].iter().any(|&(w, acc)| acc && comp[w] == comp[v])
        })
    }
}

/// Whether `ba` accepts the lasso word.
pub fn member(ba: &Ba, word: &LassoWord) -> bool {
    RunGraph::build(ba, word).has_accepting_cycle()
}

/// Ranks of the run graph of a rejected word.
pub struct RankedRunGraph {
    pub graph: RunGraph,
    pub ranks: Vec<u32>,
}

impl RankedRunGraph {
    pub fn rank_of(&self, q: usize, pos: usize) -> Option<u32> {
        self.graph.vertex(q, pos).map(|v| self.ranks[v])
    }

    pub fn max_rank(&self) -> u32 {
        self.ranks.iter().copied().max().unwrap_or(0)
    }
}

/// Ranks every vertex of the run graph by alternately removing vertices
/// with finitely many descendants and vertices that can no longer see
/// acceptance.
pub fn rank_run_graph(ba: &Ba, word: &LassoWord) -> Result<RankedRunGraph, OracleError> {
    let graph = RunGraph::build(ba, word);
    if graph.has_accepting_cycle() {
        return Err(OracleError::Accepted);
    }
    let n = graph.len();
    let mut alive = vec![true; n];
    let mut ranks = vec![0u32; n];
    let mut remaining = n;
    let limit = 2 * ba.num_states() as u32 + 1;
    let mut j = 0u32;
    while remaining > 0 && j <= limit {
        let cyclic = graph.on_cycle(&alive);
        let infinite = graph.backward_closure(&alive, &cyclic);
        for v in 0..n {
            if alive[v] && !infinite[v] {
                alive[v] = false;
                ranks[v] = j;
                remaining -= 1;
            }
        }
        if remaining == 0 {
            break;
        }
        let mut seeds = vec![false; n];
        for v in 0..n {
            if alive[v] {
                seeds[v] = graph.accepting[v]
                    || graph.succ[v].iter().any(|&(w, acc)| acc && alive[w]);
            }
        }
        let hopeful = graph.backward_closure(&alive, &seeds);
        for v in 0..n {
            if alive[v] && !hopeful[v] {
                alive[v] = false;
                ranks[v] = j + 1;
                remaining -= 1;
            }
        }
        j += 2;
    }
    assert_eq!(remaining, 0, "rejected word left an unranked vertex");
    Ok(RankedRunGraph { graph, ranks })
}

/// Largest rank in the run graph of a rejected word.
pub fn lasso_rank(ba: &Ba, word: &LassoWord) -> Result<u32, OracleError> {
    rank_run_graph(ba, word).map(|r| r.max_rank())
}

/// The levels of the subset construction that recur forever along the
/// word, as `(folded position, level)`.
pub fn recurring_levels(ba: &Ba, word: &LassoWord) -> Vec<(usize, StateSet)> {
    let mut seen: Vec<(usize, StateSet)> = Vec::new();
    let mut level = ba.initial().clone();
    let mut pos = 0;
    loop {
        if pos >= word.stem.len() {
            if let Some(start) = seen.iter().position(|(p, l)| *p == pos && *l == level) {
                return seen.split_off(start);
            }
        }
        let next = ba.post_set(&level, word.letter(pos));
        seen.push((pos, level));
        level = next;
        pos = word.next(pos);
    }
}

/// All lasso words with `|stem| ≤ max_stem` and `1 ≤ |cycle| ≤ max_cycle`,
/// by total length and then lexicographically.
pub fn lasso_words(symbols: usize, max_stem: usize, max_cycle: usize) -> Vec<LassoWord> {
    fn all_words(symbols: usize, len: usize) -> Vec<Vec<Symbol>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..symbols as u32).map(move |a| {
                        let mut w = w.clone();
                        w.push(Symbol(a));
                        w
                    })
                })
                .collect();
        }
        out
    }
    let mut words = Vec::new();
    for total in 1..=max_stem + max_cycle {
        let mut batch = Vec::new();
        for stem_len in 0..=max_stem.min(total - 1) {
            let cycle_len = total - stem_len;
            if cycle_len > max_cycle {
                continue;
            }
            for stem in all_words(symbols, stem_len) {
                for cycle in all_words(symbols, cycle_len) {
                    batch.push(LassoWord {
                        stem: stem.clone(),
                        cycle,
                    });
                }
            }
        }
        batch.sort();
        words.extend(batch);
    }
    words
}

/// First lasso word on which the two automata disagree, if any.
pub fn lasso_equiv(
    a: &Ba,
    b: &Ba,
    max_stem: usize,
    max_cycle: usize,
) -> Result<Option<LassoWord>, OracleError> {
    if a.num_symbols() != b.num_symbols() {
        return Err(OracleError::AlphabetMismatch(a.num_symbols(), b.num_symbols()));
    }
    Ok(lasso_words(a.num_symbols(), max_stem, max_cycle)
        .into_iter()
        .find(|w| member(a, w) != member(b, w)))
}

/// First lasso word that both or neither automaton accepts, if any.
pub fn complement_check(
    original: &Ba,
    complement: &Ba,
    max_stem: usize,
    max_cycle: usize,
) -> Result<Option<LassoWord>, OracleError> {
    if original.num_symbols() != complement.num_symbols() {
        return Err(OracleError::AlphabetMismatch(
            original.num_symbols(),
            complement.num_symbols(),
        ));
    }
    Ok(lasso_words(original.num_symbols(), max_stem, max_cycle)
        .into_iter()
        .find(|w| member(original, w) == member(complement, w)))
}

fn count_for(density: f64, n: usize) -> usize {
    // The small offset keeps products like 0.3 * 10 from rounding up.
    (density * n as f64 - 1e-9).ceil().max(0.0) as usize
}

/// A random automaton in the Tabakov–Vardi model.
///
/// Each letter gets `⌈td·n⌉` distinct transitions chosen uniformly among
/// the `n²` state pairs, and `⌈ad·n⌉` distinct states are accepting. State 0
/// is initial. The same parameters always give the same automaton.
pub fn tabakov_vardi(n: usize, symbols: usize, td: f64, ad: f64, seed: u64) -> Result<Ba, OracleError> {
    if n == 0 || symbols == 0 {
        return Err(OracleError::InvalidParameters("need at least one state and one letter".into()));
    }
    if !(td >= 0.0 && ad >= 0.0 && td.is_finite() && ad.is_finite()) {
        return Err(OracleError::InvalidParameters("densities must be finite and non-negative".into()));
    }
    let per_letter = count_for(td, n);
    let accepting = count_for(ad, n);
    if per_letter > n * n {
        return Err(OracleError::InvalidParameters(format!(
            "transition density {td} needs {per_letter} transitions per letter, only {} exist",
            n * n
        )));
    }
    if accepting > n {
        return Err(OracleError::InvalidParameters(format!(
            "acceptance density {ad} needs {accepting} accepting states, only {n} exist"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Ba::builder(Alphabet::letters(symbols), n);
    b.add_initial(0);
    for a in 0..symbols {
        for pair in sample(&mut rng, n * n, per_letter) {
            b.add_transition(pair / n, Symbol(a as u32), pair % n);
        }
    }
    for q in sample(&mut rng, n, accepting) {
        b.set_accepting(q);
    }
    Ok(b.build())
}
