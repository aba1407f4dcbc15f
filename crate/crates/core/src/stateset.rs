//! Compact sets of state indices.

use std::fmt;

/// A set of state indices backed by a bit vector.
///
/// Trailing zero words are always stripped, so two sets with the same
/// members compare and hash equal regardless of how they were built.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    words: Vec<u64>,
}

impl StateSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The set `{0, 1, ..., n - 1}`.
    pub fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n / 64];
        if n % 64 != 0 {
            words.push((1u64 << (n % 64)) - 1);
        }
        let mut s = Self { words };
        s.normalize();
        s
    }

    pub fn singleton(q: usize) -> Self {
        let mut s = Self::new();
        s.insert(q);
        s
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn contains(&self, q: usize) -> bool {
        self.words
            .get(q / 64)
            .is_some_and(|w| w & (1u64 << (q % 64)) != 0)
    }

    /// Inserts `q`; returns whether it was absent.
    pub fn insert(&mut self, q: usize) -> bool {
        let (i, bit) = (q / 64, 1u64 << (q % 64));
        if self.words.len() <= i {
            self.words.resize(i + 1, 0);
        }
        let fresh = self.words[i] & bit == 0;
        self.words[i] |= bit;
        fresh
    }

    /// Removes `q`; returns whether it was present.
    pub fn remove(&mut self, q: usize) -> bool {
        let (i, bit) = (q / 64, 1u64 << (q % 64));
        let Some(w) = self.words.get_mut(i) else {
            return false;
        };
        let present = *w & bit != 0;
        *w &= !bit;
        self.normalize();
        present
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn union_with(&mut self, other: &StateSet) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &StateSet) {
        self.words.truncate(other.words.len());
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        self.normalize();
    }

    pub fn difference_with(&mut self, other: &StateSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        self.normalize();
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.words.len() <= other.words.len()
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl<'a> IntoIterator for &'a StateSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl FromIterator<usize> for StateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = StateSet::new();
        for q in iter {
            s.insert(q);
        }
        s
    }
}

impl Extend<usize> for StateSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        for q in iter {
            self.insert(q);
        }
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn canonical_after_removal() {
        let mut a = StateSet::singleton(130);
        a.insert(2);
        a.remove(130);
        assert_eq!(a, StateSet::singleton(2));
        assert_eq!(a.len(), 1);
    }

    #[test]
    fn full_set_boundaries() {
        assert_eq!(StateSet::full(0), StateSet::new());
        assert_eq!(StateSet::full(64).len(), 64);
        assert_eq!(StateSet::full(65).iter().last(), Some(64));
    }

    proptest! {
        #[test]
        fn matches_btreeset(xs in prop::collection::vec(0usize..200, 0..40),
                            ys in prop::collection::vec(0usize..200, 0..40)) {
            let a: StateSet = xs.iter().copied().collect();
            let b: StateSet = ys.iter().copied().collect();
            let ra: BTreeSet<usize> = xs.iter().copied().collect();
            let rb: BTreeSet<usize> = ys.iter().copied().collect();
            prop_assert_eq!(a.iter().collect::<Vec<_>>(), ra.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(a.union(&b).iter().collect::<BTreeSet<_>>(), &ra | &rb);
            prop_assert_eq!(a.intersection(&b).iter().collect::<BTreeSet<_>>(), &ra & &rb);
            prop_assert_eq!(a.difference(&b).iter().collect::<BTreeSet<_>>(), &ra - &rb);
            prop_assert_eq!(a.is_subset(&b), ra.is_subset(&rb));
            prop_assert_eq!(a.intersects(&b), !ra.is_disjoint(&rb));
            let rebuilt: StateSet = a.intersection(&b).union(&a.difference(&b)).iter().collect();
            prop_assert_eq!(rebuilt, a);
        }
    }
}
