//! Strongly connected components, condensation, and structural predicates.

use std::collections::BTreeSet;

use crate::automaton::{AutomatonError, Ba, Symbol};
use crate::stateset::StateSet;

/// Tarjan's algorithm over an arbitrary graph, without recursion.
///
/// Returns the component index of every node. Components are numbered in
/// the order Tarjan completes them, which is a reverse topological order.
pub fn tarjan<F, I>(n: usize, mut succ: F) -> (Vec<usize>, usize)
where
    F: FnMut(usize) -> I,
    I: IntoIterator<Item = usize>,
{
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut count = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, std::vec::IntoIter<usize>)> = Vec::new();
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        let out: Vec<usize> = succ(root).into_iter().collect();
        call.push((root, out.into_iter()));

        while let Some((v, it)) = call.last_mut() {
            let v = *v;
            if let Some(w) = it.next() {
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    let out: Vec<usize> = succ(w).into_iter().collect();
                    call.push((w, out.into_iter()));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some((parent, _)) = call.last() {
                low[*parent] = low[*parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = count;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    (comp, count)
}

/// Properties of one maximal strongly connected component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SccClass {
    /// A single state without a self-loop.
    pub trivial: bool,
    /// Every cycle inside the component passes an accepting state or transition.
    pub iwa: bool,
    /// At most one successor inside the component per state and letter.
    pub deterministic: bool,
    /// No accepting state and no internal accepting transition.
    pub nonaccepting: bool,
}

/// The DAG of maximal strongly connected components.
#[derive(Clone, Debug)]
pub struct Condensation {
    /// Members of each component.
    pub components: Vec<StateSet>,
    /// Component index of each state.
    pub component_of: Vec<usize>,
    /// Distinct successor components, excluding the component itself.
    pub children: Vec<Vec<usize>>,
    pub classes: Vec<SccClass>,
    /// Components ordered so that every edge goes forward.
    pub topological: Vec<usize>,
}

impl Condensation {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_terminal(&self, c: usize) -> bool {
        self.children[c].is_empty()
    }

    /// Number of components on the longest path of the DAG.
    pub fn depth(&self) -> usize {
        let mut longest = vec![0usize; self.len()];
        for &c in self.topological.iter().rev() {
            longest[c] = 1 + self.children[c].iter().map(|&d| longest[d]).max().unwrap_or(0);
        }
        longest.into_iter().max().unwrap_or(0)
    }

    /// Index of the component equal to `set`, if any.
    pub fn find(&self, set: &StateSet) -> Option<usize> {
        let q = set.first()?;
        let c = *self.component_of.get(q)?;
        (self.components[c] == *set).then_some(c)
    }
}

/// Computes the condensation of all states of `ba`.
pub fn condense(ba: &Ba) -> Condensation {
    let n = ba.num_states();
    let (component_of, count) = tarjan(n, |q| ba.successors(q).collect::<Vec<_>>());
    let mut components = vec![StateSet::new(); count];
    for q in 0..n {
        components[component_of[q]].insert(q);
    }
    let mut children = vec![BTreeSet::new(); count];
    for (p, _, e) in ba.transitions() {
        let (c, d) = (component_of[p], component_of[e.target]);
        if c != d {
            children[c].insert(d);
        }
    }
    let children: Vec<Vec<usize>> = children.into_iter().map(|s| s.into_iter().collect()).collect();
    let classes = classify_all(ba, &components, &component_of);
    Condensation {
        components,
        component_of,
        children,
        classes,
        topological: (0..count).rev().collect(),
    }
}

fn classify_all(ba: &Ba, components: &[StateSet], component_of: &[usize]) -> Vec<SccClass> {
    let same = |p: usize, q: usize| component_of[p] == component_of[q];
    let mut classes: Vec<SccClass> = components
        .iter()
        .map(|m| SccClass {
            trivial: m.len() == 1,
            iwa: true,
            deterministic: true,
            nonaccepting: true,
        })
        .collect();
    for q in 0..ba.num_states() {
        let cl = &mut classes[component_of[q]];
        if ba.is_accepting(q) {
            cl.nonaccepting = false;
        }
        for a in ba.symbols() {
            let mut inner = 0;
            for e in ba.edges(q, a).iter().filter(|e| same(q, e.target)) {
                inner += 1;
                cl.nonaccepting &= !e.accepting;
                if e.target == q {
                    cl.trivial = false;
                    if !e.accepting && !ba.is_accepting(q) {
                        cl.iwa = false;
                    }
                }
            }
            cl.deterministic &= inner <= 1;
        }
    }

    // A component is IWA when removing its accepting states and accepting
    // edges leaves it acyclic; self-loops were handled above.
    let (sub, _) = tarjan(ba.num_states(), |q| {
        let plain_source = !ba.is_accepting(q);
        ba.symbols()
            .flat_map(move |a| ba.edges(q, a).iter().copied())
            .filter(move |e| {
                plain_source && !e.accepting && !ba.is_accepting(e.target) && same(q, e.target)
            })
            .map(|e| e.target)
            .collect::<Vec<_>>()
    });
    let mut size = vec![0usize; ba.num_states()];
    for &c in &sub {
        size[c] += 1;
    }
    for q in 0..ba.num_states() {
        if size[sub[q]] > 1 {
            classes[component_of[q]].iwa = false;
        }
    }
    classes
}

/// Classifies `set`, which must be a maximal SCC of `ba`.
pub fn classify(ba: &Ba, set: &StateSet) -> Result<SccClass, AutomatonError> {
    let cond = condense(ba);
    let c = cond.find(set).ok_or(AutomatonError::NotAComponent)?;
    Ok(cond.classes[c])
}

fn forward_closure(ba: &Ba, start: &StateSet) -> StateSet {
    let mut seen = start.clone();
    let mut todo: Vec<usize> = start.iter().collect();
    while let Some(q) = todo.pop() {
        for t in ba.successors(q) {
            if seen.insert(t) {
                todo.push(t);
            }
        }
    }
    seen
}

/// Keeps the states that are reachable and can reach an accepting cycle.
pub fn trim(ba: &Ba) -> Ba {
    let reachable = forward_closure(ba, ba.initial());
    let (sub, _) = ba.restrict(&reachable);
    let cond = condense(&sub);
    let n = sub.num_states();
    let mut preds = vec![Vec::new(); n];
    for (p, _, e) in sub.transitions() {
        preds[e.target].push(p);
    }
    let mut useful = StateSet::new();
    let mut todo = Vec::new();
    for (c, members) in cond.components.iter().enumerate() {
        let cl = cond.classes[c];
        if !cl.trivial && !cl.nonaccepting {
            for q in members {
                useful.insert(q);
                todo.push(q);
            }
        }
    }
    while let Some(q) = todo.pop() {
        for &p in &preds[q] {
            if useful.insert(p) {
                todo.push(p);
            }
        }
    }
    sub.restrict(&useful).0
}

/// Drops accepting marks that cannot lie on a cycle.
pub fn normalize_acceptance(ba: &Ba) -> Ba {
    let cond = condense(ba);
    let accepting: StateSet = ba
        .accepting_states()
        .iter()
        .filter(|&q| !cond.classes[cond.component_of[q]].trivial)
        .collect();
    ba.with_acceptance(accepting, |p, _, q| cond.component_of[p] == cond.component_of[q])
}

/// Trim followed by acceptance normalization.
pub fn prepare(ba: &Ba) -> Ba {
    normalize_acceptance(&trim(ba))
}

/// Whether `ba` equals its own preparation.
pub fn is_prepared(ba: &Ba) -> bool {
    prepare(ba).same_structure(ba)
}

/// Every component is deterministic, inherently weak, or non-accepting.
pub fn is_elevator(ba: &Ba) -> bool {
    condense(ba)
        .classes
        .iter()
        .all(|c| c.deterministic || c.iwa || c.nonaccepting)
}

/// Every state reachable from an accepting state or from the target of an
/// accepting transition has at most one successor per letter.
pub fn is_semi_deterministic(ba: &Ba) -> bool {
    let mut seeds = ba.accepting_states().clone();
    for (_, _, e) in ba.transitions() {
        if e.accepting {
            seeds.insert(e.target);
        }
    }
    forward_closure(ba, &seeds)
        .iter()
        .all(|q| ba.symbols().all(|a| ba.edges(q, a).len() <= 1))
}

/// Determinism of the states entered from `from` inside `from ∪ to`.
///
/// Let `C = δ(from, Σ) ∩ (from ∪ to)`. The result says whether every state
/// of `C` has at most one successor inside `C` per letter.
pub fn inter_component_deterministic(ba: &Ba, from: &StateSet, to: &StateSet) -> bool {
    let scope = from.union(to);
    let mut entered = StateSet::new();
    for a in ba.symbols() {
        entered.union_with(&ba.post_set(from, a));
    }
    entered.intersect_with(&scope);
    entered.iter().all(|q| {
        ba.symbols()
            .all(|a: Symbol| ba.post(q, a).filter(|&t| entered.contains(t)).count() <= 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{Alphabet, Symbol};
    use crate::fixtures;

    #[test]
    fn running_example_components() {
        let ba = fixtures::running_example();
        let cond = condense(&ba);
        assert_eq!(cond.len(), 2);
        let p = classify(&ba, &StateSet::singleton(0)).unwrap();
        assert_eq!(
            p,
            SccClass {
                trivial: false,
                iwa: false,
                deterministic: true,
                nonaccepting: true
            }
        );
        let q = classify(&ba, &StateSet::singleton(1)).unwrap();
        assert!(q.iwa && q.deterministic && !q.nonaccepting && !q.trivial);
        assert_eq!(
            classify(&ba, &[0, 1].into_iter().collect()),
            Err(AutomatonError::NotAComponent)
        );
        assert_eq!(cond.depth(), 2);
    }

    #[test]
    fn trivial_component() {
        let mut b = Ba::builder(Alphabet::letters(1), 2);
        b.add_initial(0).add_transition(0, Symbol(0), 1).add_transition(1, Symbol(0), 1);
        let ba = b.build();
        assert!(classify(&ba, &StateSet::singleton(0)).unwrap().trivial);
        assert!(!classify(&ba, &StateSet::singleton(1)).unwrap().trivial);
    }

    #[test]
    fn running_example_predicates() {
        let ba = fixtures::running_example();
        assert!(is_elevator(&ba));
        assert!(is_semi_deterministic(&ba));
        assert!(!inter_component_deterministic(
            &ba,
            &StateSet::singleton(0),
            &StateSet::singleton(1)
        ));
        assert!(is_prepared(&ba));
    }

    #[test]
    fn no_edges_into_target_is_deterministic() {
        let mut b = Ba::builder(Alphabet::letters(1), 2);
        b.add_initial(0).add_transition(0, Symbol(0), 0).add_transition(1, Symbol(0), 1);
        let ba = b.build();
        assert!(inter_component_deterministic(
            &ba,
            &StateSet::singleton(0),
            &StateSet::singleton(1)
        ));
    }

    #[test]
    fn trim_drops_dead_and_unreachable() {
        let mut b = Ba::builder(Alphabet::letters(1), 4);
        b.add_initial(0).set_accepting(0);
        b.add_transition(0, Symbol(0), 0)
            .add_transition(0, Symbol(0), 1)
            .add_transition(3, Symbol(0), 0);
        let ba = b.build();
        let t = trim(&ba);
        assert_eq!(t.num_states(), 1);
        assert!(t.is_accepting(0));
        assert!(trim(&t).same_structure(&t));
    }

    #[test]
    fn trim_to_empty() {
        let mut b = Ba::builder(Alphabet::letters(1), 2);
        b.add_initial(0).set_accepting(1);
        b.add_transition(0, Symbol(0), 1).add_transition(1, Symbol(0), 0);
        assert_eq!(trim(&b.build()).num_states(), 2);
        let mut c = Ba::builder(Alphabet::letters(1), 2);
        c.add_initial(0).set_accepting(1).add_transition(0, Symbol(0), 1);
        assert_eq!(trim(&c.build()).num_states(), 0);
    }

    #[test]
    fn normalization_moves_nothing_on_cycles() {
        let mut b = Ba::builder(Alphabet::letters(1), 3);
        b.add_initial(0).set_accepting(0).set_accepting(2);
        b.add_accepting_transition(0, Symbol(0), 1)
            .add_accepting_transition(1, Symbol(0), 2)
            .add_accepting_transition(2, Symbol(0), 2);
        let ba = normalize_acceptance(&b.build());
        assert!(!ba.is_accepting(0));
        assert!(ba.is_accepting(2));
        assert_eq!(ba.transition(0, Symbol(0), 1), Some(false));
        assert_eq!(ba.transition(1, Symbol(0), 2), Some(false));
        assert_eq!(ba.transition(2, Symbol(0), 2), Some(true));
    }

    #[test]
    fn iwa_needs_every_cycle_marked() {
        // Two-state cycle with one accepting edge, plus an unmarked self-loop.
        let mut b = Ba::builder(Alphabet::letters(2), 2);
        b.add_initial(0);
        b.add_accepting_transition(0, Symbol(0), 1).add_transition(1, Symbol(0), 0);
        let mut looped = b.clone();
        let ba = b.build();
        assert!(classify(&ba, &[0, 1].into_iter().collect()).unwrap().iwa);
        looped.add_transition(1, Symbol(1), 1);
        let ba = looped.build();
        assert!(!classify(&ba, &[0, 1].into_iter().collect()).unwrap().iwa);
    }
}
