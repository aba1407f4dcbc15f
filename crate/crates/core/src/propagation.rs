//! Tightening rank bounds by propagation over the subset graph.
//!
//! Both analyses compute a greatest fixpoint below an initial bound. The
//! outer one works with a single number per level; the inner one with a
//! ranking per level.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{Ba, Symbol};
use crate::ranking::{max_successor_ranking, Ranking, Trub};
use crate::stateset::StateSet;

/// The reachable part of the subset construction, with `∅` included when reachable.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub nodes: Vec<StateSet>,
    /// `succ[i][a]` is the node reached from node `i` on letter `a`.
    pub succ: Vec<Vec<usize>>,
    /// Distinct `(node, letter)` pairs leading to each node.
    pub preds: Vec<Vec<(usize, Symbol)>>,
    index: HashMap<StateSet, usize>,
}

impl Skeleton {
    pub fn build(ba: &Ba) -> Skeleton {
        let mut sk = Skeleton {
            nodes: Vec::new(),
            succ: Vec::new(),
            preds: Vec::new(),
            index: HashMap::new(),
        };
        sk.intern(ba.initial().clone());
        let mut next = 0;
        while next < sk.nodes.len() {
            let level = sk.nodes[next].clone();
            let mut row = Vec::with_capacity(ba.num_symbols());
            for a in ba.symbols() {
                let t = sk.intern(ba.post_set(&level, a));
                row.push(t);
                sk.preds[t].push((next, a));
            }
            sk.succ[next] = row;
            next += 1;
        }
        sk
    }

    fn intern(&mut self, set: StateSet) -> usize {
        if let Some(&i) = self.index.get(&set) {
            return i;
        }
        let i = self.nodes.len();
        self.index.insert(set.clone(), i);
        self.nodes.push(set);
        self.succ.push(Vec::new());
        self.preds.push(Vec::new());
        i
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, set: &StateSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    /// Distinct predecessor nodes of `i`.
    pub fn pred_nodes(&self, i: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.preds[i].iter().map(|&(p, _)| p).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Distinct successor nodes of `i`.
    pub fn succ_nodes(&self, i: usize) -> Vec<usize> {
        let mut v = self.succ[i].clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// The order in which pending nodes are revisited.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WorklistOrder {
    Fifo,
    Lifo,
}

/// A fixpoint together with the number of worklist pops it took.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixpoint<V> {
    pub values: Vec<V>,
    pub pops: usize,
}

fn solve<V: PartialEq>(
    sk: &Skeleton,
    mut values: Vec<V>,
    order: WorklistOrder,
    mut update: impl FnMut(&[V], usize) -> V,
) -> Fixpoint<V> {
    let mut queue: VecDeque<usize> = (0..sk.len()).collect();
    let mut queued = vec![true; sk.len()];
    let mut pops = 0;
    loop {
        let next = match order {
            WorklistOrder::Fifo => queue.pop_front(),
            WorklistOrder::Lifo => queue.pop_back(),
        };
        let Some(i) = next else { break };
        queued[i] = false;
        pops += 1;
        let v = update(&values, i);
        if v != values[i] {
            values[i] = v;
            for j in sk.succ_nodes(i) {
                if !queued[j] {
                    queued[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    Fixpoint { values, pops }
}

/// `min{μ(S), max over predecessors R of μ(R)}`; nodes without
/// predecessors keep their value.
pub fn outer_update(sk: &Skeleton, values: &[u32], i: usize) -> u32 {
    match sk.pred_nodes(i).iter().map(|&p| values[p]).max() {
        Some(m) => values[i].min(m),
        None => values[i],
    }
}

pub fn outer_analysis(sk: &Skeleton, initial: Vec<u32>, order: WorklistOrder) -> Fixpoint<u32> {
    solve(sk, initial, order, |v, i| outer_update(sk, v, i))
}

/// The meet of `μ(S)` with the join of the largest successor rankings of
/// every predecessor, before the parity correction.
pub fn inner_meet(ba: &Ba, sk: &Skeleton, values: &[Ranking], i: usize) -> Ranking {
    let mut joined: Option<Ranking> = None;
    for &(p, a) in &sk.preds[i] {
        let g = max_successor_ranking(ba, &sk.nodes[p], a, &values[p]);
        joined = Some(match joined {
            Some(j) => j.join(&g),
            None => g,
        });
    }
    match joined {
        Some(j) => values[i].meet(&j),
        None => values[i].clone(),
    }
}

/// [`inner_meet`] followed by decrements while the result has a non-zero
/// even rank, since tight rankings have odd rank. One decrement can leave
/// the rank even when only accepting states held the maximum.
pub fn inner_update(ba: &Ba, sk: &Skeleton, values: &[Ranking], i: usize) -> Ranking {
    let mut theta = inner_meet(ba, sk, values, i);
    while theta.rank() > 0 && theta.rank() % 2 == 0 {
        theta = theta.dec(ba);
    }
    theta
}

pub fn inner_analysis(ba: &Ba, sk: &Skeleton, initial: Vec<Ranking>, order: WorklistOrder) -> Fixpoint<Ranking> {
    solve(sk, initial, order, |v, i| inner_update(ba, sk, v, i))
}

/// Scalar bounds of `trub` on every skeleton node.
pub fn scalar_start(ba: &Ba, sk: &Skeleton, trub: &Trub) -> Vec<u32> {
    sk.nodes.iter().map(|s| trub.scalar(ba, s)).collect()
}

/// Ranking bounds of `trub` on every skeleton node.
pub fn ranking_start(ba: &Ba, sk: &Skeleton, trub: &Trub) -> Vec<Ranking> {
    sk.nodes.iter().map(|s| trub.ranking(ba, s)).collect()
}

pub fn scalar_trub(sk: &Skeleton, values: &[u32]) -> Trub {
    Trub::Scalar(sk.nodes.iter().cloned().zip(values.iter().copied()).collect())
}

pub fn ranking_trub(sk: &Skeleton, values: &[Ranking]) -> Trub {
    Trub::Rankings(sk.nodes.iter().cloned().zip(values.iter().cloned()).collect())
}
