//! Fixed-universe index sets used for extents, intents and concept blocks.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;

use fixedbitset::FixedBitSet;

/// Marker for sets of attribute indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Attr {}

/// Marker for sets of object indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Obj {}

/// Marker for sets of element indices of a lattice or poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Elem {}

/// A subset of `0..universe`, tagged with the kind of index it holds.
///
/// Ordering is colexicographic: the set containing the largest index on which
/// two sets differ is the greater one. This is a linear extension of
/// inclusion, so sorting extents this way puts the bottom concept first and
/// the top concept last.
pub struct Subset<K> {
    bits: FixedBitSet,
    _kind: PhantomData<K>,
}

pub type AttributeSet = Subset<Attr>;
pub type ObjectSet = Subset<Obj>;
pub type ElementSet = Subset<Elem>;

impl<K> Subset<K> {
    pub fn empty(universe: usize) -> Self {
        Subset {
            bits: FixedBitSet::with_capacity(universe),
            _kind: PhantomData,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        s.bits.insert_range(..);
        s
    }

    /// Builds a set from indices.
    ///
    /// Panics if an index is outside the universe; callers that handle
    /// untrusted input validate first (see `FormalContext::attribute_set`).
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.bits.is_full()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe(), "index {i} outside universe {}", self.universe());
        self.bits.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.universe() {
            self.bits.set(i, false);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.bits.maximum()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union_with(&mut self, other: &Self) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &Self) {
        self.bits.difference_with(&other.bits);
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> Self {
        let mut s = Self::full(self.universe());
        s.difference_with(self);
        s
    }

    /// Reinterprets the indices under another marker, e.g. when transposing a
    /// context turns extents into intents.
    pub fn retag<L>(self) -> Subset<L> {
        Subset {
            bits: self.bits,
            _kind: PhantomData,
        }
    }
}

impl<K> Clone for Subset<K> {
    fn clone(&self) -> Self {
        Subset {
            bits: self.bits.clone(),
            _kind: PhantomData,
        }
    }
}

impl<K> PartialEq for Subset<K> {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl<K> Eq for Subset<K> {}

impl<K> Hash for Subset<K> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl<K> Ord for Subset<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe().cmp(&other.universe()).then_with(|| {
            let a = self.bits.as_slice();
            let b = other.bits.as_slice();
            a.iter().rev().cmp(b.iter().rev())
        })
    }
}

impl<K> PartialOrd for Subset<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<K> fmt::Debug for Subset<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
