//! Level rankings and tight-rank upper bounds.

use std::collections::HashMap;
use std::fmt;

use crate::automaton::{Ba, Symbol};
use crate::stateset::StateSet;

/// Largest even number not above `i`.
pub fn evenceil(i: u32) -> u32 {
    i & !1
}

/// Subtraction saturating at zero.
pub fn monus(a: u32, b: u32) -> u32 {
    a.saturating_sub(b)
}

/// A map from states to ranks, stored densely for states `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking(Vec<u32>);

impl Ranking {
    pub fn zeros(n: usize) -> Self {
        Ranking(vec![0; n])
    }

    pub fn from_vec(values: Vec<u32>) -> Self {
        Ranking(values)
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, q: usize) -> u32 {
        self.0[q]
    }

    pub fn set(&mut self, q: usize, v: u32) {
        self.0[q] = v;
    }

    /// Maximum value, or 0 for an empty ranking.
    pub fn rank(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Accepting states carry even values.
    pub fn respects_acceptance(&self, ba: &Ba) -> bool {
        ba.accepting_states().iter().all(|q| self.0[q] % 2 == 0)
    }

    /// Odd rank `r`, every odd value up to `r` used inside `set`, and zero
    /// outside `set`.
    pub fn is_tight_for(&self, set: &StateSet) -> bool {
        let r = self.rank();
        if r % 2 == 0 {
            return false;
        }
        if self.0.iter().enumerate().any(|(q, &v)| v != 0 && !set.contains(q)) {
            return false;
        }
        let mut seen = vec![false; r as usize + 1];
        for q in set {
            seen[self.0[q] as usize] = true;
        }
        (1..=r).step_by(2).all(|v| seen[v as usize])
    }

    pub fn le(&self, other: &Ranking) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &Ranking) -> Ranking {
        Ranking(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, other: &Ranking) -> Ranking {
        Ranking(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Lowers every state at the maximum by one; accepting states keep
    /// an even value.
    pub fn dec(&self, ba: &Ba) -> Ranking {
        let r = self.rank();
        Ranking(
            self.0
                .iter()
                .enumerate()
                .map(|(q, &v)| match (v == r, ba.is_accepting(q)) {
                    (false, _) => v,
                    (true, false) => monus(v, 1),
                    (true, true) => evenceil(monus(v, 1)),
                })
                .collect(),
        )
    }

    /// States of `set` with value `v`.
    pub fn preimage(&self, v: u32, set: &StateSet) -> StateSet {
        set.iter().filter(|&q| self.0[q] == v).collect()
    }

    pub fn format(&self, ba: &Ba, set: &StateSet) -> String {
        let parts: Vec<String> = set
            .iter()
            .map(|q| format!("{}:{}", ba.label(q), self.0[q]))
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Whether `next` may follow `prev` from `set` on `a`.
///
/// Every successor must not exceed its predecessor's rank, and successors
/// over accepting transitions must not exceed the even floor of it.
pub fn transition_consistent(ba: &Ba, prev: &Ranking, next: &Ranking, set: &StateSet, a: Symbol) -> bool {
    set.iter().all(|q| {
        ba.edges(q, a).iter().all(|e| {
            let bound = if e.accepting { evenceil(prev.get(q)) } else { prev.get(q) };
            next.get(e.target) <= bound
        })
    })
}

/// The pointwise largest ranking consistent with `prev` on `a`.
///
/// Targets with no predecessor in `set` get `2n`; accepting states are
/// rounded down to even.
pub fn max_successor_ranking(ba: &Ba, set: &StateSet, a: Symbol, prev: &Ranking) -> Ranking {
    let top = 2 * ba.num_states() as u32;
    let mut out = vec![top; ba.num_states()];
    for q in set {
        let v = prev.get(q);
        for e in ba.edges(q, a) {
            let bound = if e.accepting { evenceil(v) } else { v };
            let slot = &mut out[e.target];
            *slot = (*slot).min(bound);
        }
    }
    for q in ba.accepting_states() {
        out[q] = evenceil(out[q]);
    }
    Ranking(out)
}

/// A tight-rank upper bound: for each subset-construction level, a ranking
/// that every tight level ranking of a rejected word eventually stays below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Trub {
    /// `2|S \ F| - 1` for every level `S`.
    Trivial,
    /// A fixed bound per state.
    PerState(Vec<u32>),
    /// A scalar bound per level; missing levels use the trivial bound.
    Scalar(HashMap<StateSet, u32>),
    /// A ranking per level; missing levels use the trivial bound.
    Rankings(HashMap<StateSet, Ranking>),
    /// The pointwise minimum of two bounds.
    Min(Box<Trub>, Box<Trub>),
}

/// The classical bound `2|S \ F| ⊖ 1`.
pub fn trivial_bound(ba: &Ba, set: &StateSet) -> u32 {
    monus(2 * set.difference(ba.accepting_states()).len() as u32, 1)
}

/// Spreads a scalar bound `m` over `set`: accepting states get the even
/// floor of `m ⊖ 1`, other members `m`, non-members 0.
pub fn lift_scalar(ba: &Ba, set: &StateSet, m: u32) -> Ranking {
    let mut r = Ranking::zeros(ba.num_states());
    for q in set {
        r.set(q, if ba.is_accepting(q) { evenceil(monus(m, 1)) } else { m });
    }
    r
}

/// Restricts a per-state bound to `set`, rounding accepting states down to even.
pub fn lift_per_state(ba: &Ba, set: &StateSet, bound: &[u32]) -> Ranking {
    let mut r = Ranking::zeros(ba.num_states());
    for q in set {
        r.set(q, if ba.is_accepting(q) { evenceil(bound[q]) } else { bound[q] });
    }
    r
}

impl Trub {
    /// The bounding ranking for level `set`.
    pub fn ranking(&self, ba: &Ba, set: &StateSet) -> Ranking {
        match self {
            Trub::Trivial => lift_scalar(ba, set, trivial_bound(ba, set)),
            Trub::PerState(bound) => lift_per_state(ba, set, bound),
            Trub::Scalar(map) => {
                let m = map.get(set).copied().unwrap_or_else(|| trivial_bound(ba, set));
                lift_scalar(ba, set, m)
            }
            Trub::Rankings(map) => map
                .get(set)
                .cloned()
                .unwrap_or_else(|| lift_scalar(ba, set, trivial_bound(ba, set))),
            Trub::Min(a, b) => a.ranking(ba, set).meet(&b.ranking(ba, set)),
        }
    }

    /// A scalar bound for level `set` whose lift dominates [`Trub::ranking`]
    /// on tight rankings.
    pub fn scalar(&self, ba: &Ba, set: &StateSet) -> u32 {
        match self {
            Trub::Trivial => trivial_bound(ba, set),
            Trub::PerState(bound) => set.iter().map(|q| bound[q]).max().unwrap_or(0),
            Trub::Scalar(map) => map.get(set).copied().unwrap_or_else(|| trivial_bound(ba, set)),
            Trub::Rankings(_) => self.ranking(ba, set).rank(),
            Trub::Min(a, b) => a.scalar(ba, set).min(b.scalar(ba, set)),
        }
    }
}
