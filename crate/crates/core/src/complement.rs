//! Rank-based complementation with tight rankings.
//!
//! The result has a waiting part, which is the subset construction, and a
//! tight part of macrostates `(S, O, f, i)`. A level ranking `f` is admitted
//! for level `S` only if it stays below the bound supplied by a [`Trub`].

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::rc::Rc;

use thiserror::Error;

use crate::automaton::{Ba, BaBuilder, Symbol};
use crate::ranking::{max_successor_ranking, Ranking, Trub};
use crate::stateset::StateSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplementError {
    #[error("complement exceeded {0} states")]
    TooLarge(usize),
}

/// A tight macrostate `(S, O, f, i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TightState {
    pub level: StateSet,
    pub pending: StateSet,
    pub ranking: Ranking,
    pub index: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Macrostate {
    Waiting(StateSet),
    Tight(TightState),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ComplementStats {
    pub waiting: usize,
    pub tight: usize,
    pub transitions: usize,
    /// Largest rank of any tight macrostate; 0 when there are none.
    pub max_rank: u32,
}

impl ComplementStats {
    pub fn total(&self) -> usize {
        self.waiting + self.tight
    }
}

/// A complement automaton together with the macrostate behind each state.
#[derive(Clone, Debug)]
pub struct Complement {
    pub ba: Ba,
    pub macrostates: Vec<Macrostate>,
    pub stats: ComplementStats,
}

/// Enumerates level rankings below per-state caps that are tight for their
/// support with a prescribed rank.
struct TightEnumerator<'a> {
    members: Vec<usize>,
    even_only: Vec<bool>,
    caps: Vec<u32>,
    /// Largest cap of a state able to hold an odd value, from index `i` on.
    odd_cap_suffix: Vec<u32>,
    odd_slots_suffix: Vec<usize>,
    n: usize,
    out: &'a mut Vec<Ranking>,
}

impl TightEnumerator<'_> {
    fn run(&mut self, rank: u32) {
        let mut counts = vec![0u32; rank as usize + 1];
        let mut current = vec![0u32; self.n];
        self.go(0, rank, (rank + 1) / 2, &mut counts, &mut current);
    }

    /// Largest odd value in `1..=rank` with no state assigned yet.
    fn largest_missing(counts: &[u32], rank: u32) -> u32 {
        let mut v = rank;
        while v >= 1 {
            if counts[v as usize] == 0 {
                return v;
            }
            if v < 2 {
                break;
            }
            v -= 2;
        }
        0
    }

    fn go(&mut self, i: usize, rank: u32, missing: u32, counts: &mut [u32], current: &mut [u32]) {
        if missing > 0 {
            if missing as usize > self.odd_slots_suffix[i] {
                return;
            }
            if Self::largest_missing(counts, rank) > self.odd_cap_suffix[i] {
                return;
            }
        }
        if i == self.members.len() {
            self.out.push(Ranking::from_vec(current.to_vec()));
            return;
        }
        let q = self.members[i];
        let top = self.caps[i].min(rank);
        let step = if self.even_only[i] { 2 } else { 1 };
        for v in (0..=top).step_by(step) {
            let fresh = v % 2 == 1 && counts[v as usize] == 0;
            counts[v as usize] += 1;
            current[q] = v;
            self.go(i + 1, rank, missing - fresh as u32, counts, current);
            counts[v as usize] -= 1;
        }
        current[q] = 0;
    }
}

/// All rankings `f ≤ cap` on `level` that are `level`-tight with rank
/// `rank`, or with any odd rank when `rank` is `None`. Accepting states only
/// take even values.
pub fn tight_rankings_below(ba: &Ba, level: &StateSet, cap: &Ranking, rank: Option<u32>) -> Vec<Ranking> {
    let members: Vec<usize> = level.iter().collect();
    let even_only: Vec<bool> = members.iter().map(|&q| ba.is_accepting(q)).collect();
    let caps: Vec<u32> = members.iter().map(|&q| cap.get(q)).collect();
    let k = members.len();
    let mut odd_cap_suffix = vec![0u32; k + 1];
    let mut odd_slots_suffix = vec![0usize; k + 1];
    for i in (0..k).rev() {
        let usable = !even_only[i] && caps[i] >= 1;
        odd_cap_suffix[i] = odd_cap_suffix[i + 1].max(if usable { caps[i] } else { 0 });
        odd_slots_suffix[i] = odd_slots_suffix[i + 1] + usable as usize;
    }
    let mut out = Vec::new();
    let max_rank = odd_cap_suffix[0];
    let ranks: Vec<u32> = match rank {
        Some(r) => vec![r],
        None => (1..=max_rank).step_by(2).collect(),
    };
    let mut e = TightEnumerator {
        members,
        even_only,
        caps,
        odd_cap_suffix,
        odd_slots_suffix,
        n: ba.num_states(),
        out: &mut out,
    };
    for r in ranks {
        if r % 2 == 1 {
            e.run(r);
        }
    }
    out
}

/// Complements `ba`, admitting only tight rankings below `trub`.
pub fn complement(ba: &Ba, trub: &Trub) -> Complement {
    complement_bounded(ba, trub, usize::MAX).expect("unbounded construction cannot overflow")
}

/// As [`complement`], giving up once more than `limit` states exist.
pub fn complement_bounded(ba: &Ba, trub: &Trub, limit: usize) -> Result<Complement, ComplementError> {
    Builder::new(ba, trub, limit).run()
}

struct Builder<'a> {
    ba: &'a Ba,
    trub: &'a Trub,
    limit: usize,
    index: HashMap<Macrostate, usize>,
    states: Vec<Macrostate>,
    out: BaBuilder,
    bounds: HashMap<StateSet, Ranking>,
    entries: HashMap<StateSet, Rc<Vec<Ranking>>>,
}

impl<'a> Builder<'a> {
    fn new(ba: &'a Ba, trub: &'a Trub, limit: usize) -> Self {
        Builder {
            ba,
            trub,
            limit,
            index: HashMap::new(),
            states: Vec::new(),
            out: BaBuilder::new(ba.alphabet().clone(), 0),
            bounds: HashMap::new(),
            entries: HashMap::new(),
        }
    }

    fn bound(&mut self, level: &StateSet) -> &Ranking {
        if !self.bounds.contains_key(level) {
            let r = self.trub.ranking(self.ba, level);
            self.bounds.insert(level.clone(), r);
        }
        &self.bounds[level]
    }

    fn entry_rankings(&mut self, level: &StateSet) -> Rc<Vec<Ranking>> {
        if let Some(v) = self.entries.get(level) {
            return v.clone();
        }
        let cap = self.bound(level).clone();
        let v = Rc::new(tight_rankings_below(self.ba, level, &cap, None));
        self.entries.insert(level.clone(), v.clone());
        v
    }

    fn intern(&mut self, m: Macrostate) -> Result<usize, ComplementError> {
        match self.index.entry(m) {
            Entry::Occupied(e) => Ok(*e.get()),
            Entry::Vacant(e) => {
                if self.states.len() >= self.limit {
                    return Err(ComplementError::TooLarge(self.limit));
                }
                let id = self.out.add_state();
                self.states.push(e.key().clone());
                e.insert(id);
                Ok(id)
            }
        }
    }

    fn run(mut self) -> Result<Complement, ComplementError> {
        let start = self.intern(Macrostate::Waiting(self.ba.initial().clone()))?;
        self.out.add_initial(start);
        let mut next = 0;
        while next < self.states.len() {
            let m = self.states[next].clone();
            for a in self.ba.symbols() {
                let succ = match &m {
                    Macrostate::Waiting(level) => self.waiting_successors(level, a)?,
                    Macrostate::Tight(t) => self.tight_successors(t, a)?,
                };
                for t in succ {
                    self.out.add_transition(next, a, t);
                }
            }
            next += 1;
        }

        let mut stats = ComplementStats::default();
        for (id, m) in self.states.iter().enumerate() {
            match m {
                Macrostate::Waiting(level) => {
                    stats.waiting += 1;
                    if level.is_empty() {
                        self.out.set_accepting(id);
                    }
                }
                Macrostate::Tight(t) => {
                    stats.tight += 1;
                    stats.max_rank = stats.max_rank.max(t.ranking.rank());
                    if t.pending.is_empty() {
                        self.out.set_accepting(id);
                    }
                }
            }
        }
        let ba = self.out.build();
        stats.transitions = ba.num_transitions();
        Ok(Complement {
            ba,
            macrostates: self.states,
            stats,
        })
    }

    fn waiting_successors(&mut self, level: &StateSet, a: Symbol) -> Result<Vec<usize>, ComplementError> {
        let next = self.ba.post_set(level, a);
        let mut out = vec![self.intern(Macrostate::Waiting(next.clone()))?];
        for f in self.entry_rankings(&next).iter() {
            out.push(self.intern(Macrostate::Tight(TightState {
                level: next.clone(),
                pending: StateSet::new(),
                ranking: f.clone(),
                index: 0,
            }))?);
        }
        Ok(out)
    }

    fn tight_successors(&mut self, t: &TightState, a: Symbol) -> Result<Vec<usize>, ComplementError> {
        let next = self.ba.post_set(&t.level, a);
        if next.is_empty() {
            return Ok(Vec::new());
        }
        let cap = max_successor_ranking(self.ba, &t.level, a, &t.ranking).meet(self.bound(&next));
        let rank = t.ranking.rank();
        let pending_post = self.ba.post_set(&t.pending, a);
        let mut out = Vec::new();
        for f in tight_rankings_below(self.ba, &next, &cap, Some(rank)) {
            let (pending, index) = if t.pending.is_empty() {
                let index = (t.index + 2) % (rank + 1);
                (f.preimage(index, &next), index)
            } else {
                (f.preimage(t.index, &pending_post), t.index)
            };
            out.push(self.intern(Macrostate::Tight(TightState {
                level: next.clone(),
                pending,
                ranking: f,
                index,
            }))?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(xs: &[usize]) -> StateSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let ba = fixtures::mixed_example();
        let level = set(&[0, 1, 2]);
        let cap = Ranking::from_vec(vec![5, 4, 3]);
        let got = tight_rankings_below(&ba, &level, &cap, None);
        let mut expected = Vec::new();
        for x in 0..=5 {
            for y in (0..=4).step_by(2) {
                for z in 0..=3 {
                    let r = Ranking::from_vec(vec![x, y, z]);
                    if r.is_tight_for(&level) {
                        expected.push(r);
                    }
                }
            }
        }
        let mut got_sorted = got.clone();
        got_sorted.sort();
        expected.sort();
        assert_eq!(got_sorted, expected);
    }

    #[test]
    fn trivial_bound_admits_single_tight_state_on_mixed_example() {
        // Level {s, t}: the only tight ranking below the trivial bound is s:0, t:1.
        let ba = fixtures::mixed_example();
        let level = set(&[1, 2]);
        let cap = Trub::Trivial.ranking(&ba, &level);
        let got = tight_rankings_below(&ba, &level, &cap, None);
        assert_eq!(got, vec![Ranking::from_vec(vec![0, 0, 1])]);
    }

    #[test]
    fn running_example_complement_shape() {
        let ba = fixtures::running_example();
        let c = complement(&ba, &Trub::Trivial);
        assert!(c.stats.waiting >= 1);
        assert_eq!(c.stats.total(), c.ba.num_states());
        assert!(c.ba.initial().contains(0));
        assert!(matches!(c.macrostates[0], Macrostate::Waiting(_)));
        assert_eq!(c.stats.max_rank, 1);
    }

    #[test]
    fn limit_is_enforced() {
        let ba = fixtures::mixed_example();
        assert_eq!(
            complement_bounded(&ba, &Trub::Trivial, 2).unwrap_err(),
            ComplementError::TooLarge(2)
        );
    }
}
