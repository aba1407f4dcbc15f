//! Rank bounds from the component structure, and the rewrites that make
//! elevator automata cheap to complement.
//!
//! Components are labelled bottom-up. A label pairs a kind with an upper
//! bound on the rank of any run-graph vertex whose state lies in the
//! component. Deterministic, inherently weak and "general" kinds carry even
//! bounds; non-accepting kinds carry odd ones.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::automaton::{AutomatonError, Ba, BaBuilder};
use crate::ranking::Trub;
use crate::scc::{condense, inter_component_deterministic, is_elevator, is_prepared, prepare, Condensation};
use crate::stateset::StateSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SccKind {
    /// Deterministic and accepting.
    Deterministic,
    /// Inherently weak accepting.
    Iwa,
    /// Non-accepting.
    NonAccepting,
    /// Anything else; only produced by the general analysis.
    General,
}

impl fmt::Display for SccKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SccKind::Deterministic => "D",
            SccKind::Iwa => "IWA",
            SccKind::NonAccepting => "N",
            SccKind::General => "G",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SccLabel {
    pub kind: SccKind,
    pub bound: u32,
}

/// Result of [`assign_ranks`].
#[derive(Clone, Debug)]
pub struct RankAnalysis {
    pub condensation: Condensation,
    /// One label per component of `condensation`.
    pub labels: Vec<SccLabel>,
    /// Per-state bound: the bound of the state's component.
    pub chi: Vec<u32>,
}

impl RankAnalysis {
    pub fn max_bound(&self) -> u32 {
        self.chi.iter().copied().max().unwrap_or(0)
    }

    /// The analysis as a per-state rank bound.
    pub fn to_trub(&self) -> Trub {
        Trub::PerState(self.chi.clone())
    }
}

/// Which rule set to apply to components that are not elevator-shaped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rules {
    /// Reject automata that are not elevator automata.
    Elevator,
    /// Give other components the general bound.
    General,
}

/// Largest bound per child kind, and whether every edge into the children
/// attaining it is deterministic.
#[derive(Default)]
struct ChildSummary {
    best: BTreeMap<SccKind, u32>,
    det_into_best: HashMap<SccKind, bool>,
}

impl ChildSummary {
    fn get(&self, kind: SccKind) -> Option<u32> {
        self.best.get(&kind).copied()
    }

    /// 0 when all edges into the maximal children of `kind` are deterministic, else 2.
    fn penalty(&self, kind: SccKind) -> u32 {
        if self.det_into_best.get(&kind).copied().unwrap_or(false) {
            0
        } else {
            2
        }
    }
}

fn max_opt(xs: impl IntoIterator<Item = Option<u32>>) -> Option<u32> {
    xs.into_iter().flatten().max()
}

/// Labels every component of a trimmed, acceptance-normalized automaton.
pub fn assign_ranks(ba: &Ba, rules: Rules) -> Result<RankAnalysis, AutomatonError> {
    if !is_prepared(ba) {
        return Err(AutomatonError::NotPrepared);
    }
    let cond = condense(ba);
    let mut labels: Vec<Option<SccLabel>> = vec![None; cond.len()];

    for &c in cond.topological.iter().rev() {
        let class = cond.classes[c];
        let members = &cond.components[c];
        let general_extra = 2 * members.difference(ba.accepting_states()).len() as u32;

        if cond.is_terminal(c) {
            // Trimmed automata only have accepting, non-trivial terminal components.
            let label = if class.iwa {
                SccLabel { kind: SccKind::Iwa, bound: 0 }
            } else if class.deterministic {
                SccLabel { kind: SccKind::Deterministic, bound: 2 }
            } else if rules == Rules::General {
                SccLabel { kind: SccKind::General, bound: general_extra }
            } else {
                return Err(AutomatonError::NotElevator);
            };
            labels[c] = Some(label);
            continue;
        }

        let mut kids = ChildSummary::default();
        for &d in &cond.children[c] {
            let l = labels[d].expect("children are labelled first");
            let best = kids.best.entry(l.kind).or_insert(l.bound);
            *best = (*best).max(l.bound);
        }
        for (&kind, &bound) in &kids.best {
            let det = cond.children[c]
                .iter()
                .filter(|&&d| labels[d].is_some_and(|l| l.kind == kind && l.bound == bound))
                .all(|&d| inter_component_deterministic(ba, members, &cond.components[d]));
            kids.det_into_best.insert(kind, det);
        }
        let d = kids.get(SccKind::Deterministic);
        let w = kids.get(SccKind::Iwa);
        let n = kids.get(SccKind::NonAccepting);
        let g = kids.get(SccKind::General);

        let d_rule = || {
            max_opt([
                d.map(|x| x + kids.penalty(SccKind::Deterministic)),
                n.map(|x| x + 1),
                w.map(|x| x + kids.penalty(SccKind::Iwa)),
                g.map(|x| x + 2),
                Some(2),
            ])
            .unwrap()
        };
        let n_rule = || max_opt([d.map(|x| x + 1), n, w.map(|x| x + 1), g.map(|x| x + 1)]).unwrap();

        let label = if class.trivial {
            // Inherit the largest child bound; ties prefer D, then IWA, then N, then G.
            let order = [SccKind::Deterministic, SccKind::Iwa, SccKind::NonAccepting, SccKind::General];
            let top = max_opt([d, w, n, g]).unwrap();
            let kind = *order.iter().find(|k| kids.get(**k) == Some(top)).unwrap();
            SccLabel { kind, bound: top }
        } else if class.iwa {
            let bound = max_opt([d, n.map(|x| x + 1), w, g]).unwrap();
            SccLabel { kind: SccKind::Iwa, bound }
        } else if class.deterministic && !class.nonaccepting {
            SccLabel { kind: SccKind::Deterministic, bound: d_rule() }
        } else if class.deterministic {
            let (db, nb) = (d_rule(), n_rule());
            if db < nb {
                SccLabel { kind: SccKind::Deterministic, bound: db }
            } else {
                SccLabel { kind: SccKind::NonAccepting, bound: nb }
            }
        } else if class.nonaccepting {
            SccLabel { kind: SccKind::NonAccepting, bound: n_rule() }
        } else if rules == Rules::General {
            let base = max_opt([d, n.map(|x| x + 1), w, g]).unwrap();
            SccLabel { kind: SccKind::General, bound: base + general_extra }
        } else {
            return Err(AutomatonError::NotElevator);
        };
        labels[c] = Some(label);
    }

    let labels: Vec<SccLabel> = labels.into_iter().map(|l| l.unwrap()).collect();
    let chi = (0..ba.num_states())
        .map(|q| labels[cond.component_of[q]].bound)
        .collect();
    Ok(RankAnalysis {
        condensation: cond,
        labels,
        chi,
    })
}

/// The per-state bound of `analysis` as a rank bound for the complement.
pub fn chi_to_trub(analysis: &RankAnalysis) -> Trub {
    analysis.to_trub()
}

/// Splits every accepting non-trivial component into a non-accepting
/// original and an accepting copy that runs may enter but never leave.
///
/// Copies are numbered after the original states, in increasing order of
/// the state they copy. The result accepts the same language and every
/// accepting component of it is terminal.
pub fn deelevate(ba: &Ba) -> Ba {
    let cond = condense(ba);
    let copied: StateSet = (0..ba.num_states())
        .filter(|&q| {
            let cl = cond.classes[cond.component_of[q]];
            !cl.trivial && !cl.nonaccepting
        })
        .collect();
    let n = ba.num_states();
    let mut copy_of = vec![usize::MAX; n];
    for (i, q) in copied.iter().enumerate() {
        copy_of[q] = n + i;
    }

    let mut b = BaBuilder::new(ba.alphabet().clone(), n + copied.len());
    for q in ba.states() {
        if ba.initial().contains(q) {
            b.add_initial(q);
        }
        if let Some(name) = ba.name(q) {
            b.set_name(q, name);
            if copy_of[q] != usize::MAX {
                b.set_name(copy_of[q], format!("{name}'"));
            }
        }
        for a in ba.symbols() {
            for e in ba.edges(q, a) {
                b.add_transition(q, a, e.target);
                if copy_of[e.target] != usize::MAX {
                    b.add_transition(q, a, copy_of[e.target]);
                }
            }
        }
    }
    for q in &copied {
        let qc = copy_of[q];
        if ba.is_accepting(q) {
            b.set_accepting(qc);
        }
        for a in ba.symbols() {
            for e in ba.edges(q, a) {
                if cond.component_of[e.target] == cond.component_of[q] {
                    b.add_edge(qc, a, copy_of[e.target], e.accepting);
                }
            }
        }
    }
    b.build()
}

/// Turns an elevator automaton into an equivalent semi-deterministic one.
///
/// The input is prepared and deelevated; then each copy of a
/// nondeterministic inherently weak component is replaced by its subset
/// automaton, every state of which is accepting.
pub fn semideterminize(ba: &Ba) -> Result<Ba, AutomatonError> {
    let prepared = prepare(ba);
    if !is_elevator(&prepared) {
        return Err(AutomatonError::NotElevator);
    }
    let split = deelevate(&prepared);
    let cond = condense(&split);

    // Copy components that need a subset construction.
    let n = prepared.num_states();
    let mut powerset_comp = vec![false; cond.len()];
    for (c, members) in cond.components.iter().enumerate() {
        let cl = cond.classes[c];
        let is_copy = members.first().is_some_and(|q| q >= n);
        powerset_comp[c] = is_copy && cl.iwa && !cl.deterministic;
    }
    let dropped = |q: usize| powerset_comp[cond.component_of[q]];

    let mut keep = StateSet::new();
    for q in split.states() {
        if !dropped(q) {
            keep.insert(q);
        }
    }
    let kept: Vec<usize> = keep.iter().collect();
    let mut new_of = vec![usize::MAX; split.num_states()];
    for (i, &q) in kept.iter().enumerate() {
        new_of[q] = i;
    }

    let mut b = BaBuilder::new(split.alphabet().clone(), kept.len());
    let mut subsets: HashMap<StateSet, usize> = HashMap::new();
    let mut queue: Vec<StateSet> = Vec::new();
    let intern = |subsets: &mut HashMap<StateSet, usize>,
                  b: &mut BaBuilder,
                  set: StateSet,
                  queue: &mut Vec<StateSet>|
     -> usize {
        *subsets.entry(set.clone()).or_insert_with(|| {
            let id = b.add_state();
            b.set_accepting(id);
            queue.push(set);
            id
        })
    };

    for &q in &kept {
        let nq = new_of[q];
        if split.initial().contains(q) {
            b.add_initial(nq);
        }
        if split.is_accepting(q) {
            b.set_accepting(nq);
        }
        if let Some(name) = split.name(q) {
            b.set_name(nq, name);
        }
        for a in split.symbols() {
            let mut into: BTreeMap<usize, StateSet> = BTreeMap::new();
            for e in split.edges(q, a) {
                if dropped(e.target) {
                    into.entry(cond.component_of[e.target]).or_default().insert(e.target);
                } else {
                    b.add_edge(nq, a, new_of[e.target], e.accepting);
                }
            }
            for (_, set) in into {
                let t = intern(&mut subsets, &mut b, set, &mut queue);
                b.add_transition(nq, a, t);
            }
        }
    }

    while let Some(set) = queue.pop() {
        let from = subsets[&set];
        let c = cond.component_of[set.first().unwrap()];
        for a in split.symbols() {
            let next: StateSet = split
                .post_set(&set, a)
                .iter()
                .filter(|&t| cond.component_of[t] == c)
                .collect();
            if !next.is_empty() {
                let to = intern(&mut subsets, &mut b, next, &mut queue);
                b.add_transition(from, a, to);
            }
        }
    }
    Ok(b.build())
}

/// Renders the component labels one per line, sources first.
pub fn describe(ba: &Ba, analysis: &RankAnalysis) -> String {
    let cond = &analysis.condensation;
    let mut out = String::new();
    for &c in &cond.topological {
        let l = analysis.labels[c];
        out.push_str(&format!("{}: {} {}\n", ba.format_set(&cond.components[c]), l.kind, l.bound));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::automaton::Symbol;
    use crate::scc::is_semi_deterministic;

    #[test]
    fn running_example_bounds() {
        let ba = fixtures::running_example();
        let r = assign_ranks(&ba, Rules::Elevator).unwrap();
        // {q} is inherently weak, so the IWA terminal rule wins over the deterministic one.
        assert_eq!(r.chi, vec![1, 0]);
        let q = r.condensation.component_of[1];
        assert_eq!(r.labels[q], SccLabel { kind: SccKind::Iwa, bound: 0 });
    }

    #[test]
    fn mixed_example_bounds() {
        let ba = fixtures::mixed_example();
        let r = assign_ranks(&ba, Rules::Elevator).unwrap();
        assert_eq!(r.chi, vec![1, 0, 0]);
        assert_eq!(
            describe(&ba, &r),
            "{q}: N 1\n{s,t}: IWA 0\n"
        );
    }

    #[test]
    fn chain_bounds() {
        let ba = fixtures::elevator_chain();
        let r = assign_ranks(&ba, Rules::Elevator).unwrap();
        assert_eq!(r.chi, vec![6, 4, 2]);
        assert!(!is_semi_deterministic(&ba));
    }

    #[test]
    fn unprepared_input_is_rejected() {
        let mut b = Ba::builder(crate::Alphabet::letters(1), 2);
        b.add_initial(0).set_accepting(0).add_transition(0, Symbol(0), 0).add_transition(0, Symbol(0), 1);
        assert_eq!(assign_ranks(&b.build(), Rules::Elevator).unwrap_err(), AutomatonError::NotPrepared);
    }

    #[test]
    fn deelevate_running_example() {
        let ba = fixtures::running_example();
        let d = deelevate(&ba);
        assert_eq!(d.num_states(), 3);
        assert!(!d.is_accepting(1));
        assert!(d.is_accepting(2));
        assert_eq!(d.transition(0, Symbol(0), 2), Some(false));
        assert_eq!(d.transition(2, Symbol(1), 2), Some(false));
    }

    #[test]
    fn semideterminize_chain_is_deelevation() {
        let ba = fixtures::elevator_chain();
        let s = semideterminize(&ba).unwrap();
        assert!(is_semi_deterministic(&s));
        assert!(s.same_structure(&deelevate(&ba)));
    }
}
