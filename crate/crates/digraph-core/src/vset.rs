//! Fixed-universe vertex sets backed by a bitset.

use fixedbitset::FixedBitSet;
use std::fmt;

/// A subset of `0..universe`.
///
/// Iteration is always in ascending vertex order, which the construction
/// code relies on for deterministic "lowest id first" choices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        VertexSet { bits }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn from_iter<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self {
        let mut s = Self::new(universe);
        for v in items {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        !self.bits.put(v)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let was = self.bits.contains(v);
        self.bits.set(v, false);
        was
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn clear(&mut self) {
        self.bits.clear();
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }

    /// The `k` smallest members (fewer if the set is smaller).
    pub fn lowest(&self, k: usize) -> Vec<usize> {
        self.iter().take(k).collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.bits.intersection_count(&other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Smallest common member of two sets, scanning word by word.
    pub fn first_common(&self, other: &VertexSet) -> Option<usize> {
        let a = self.bits.as_slice();
        let b = other.bits.as_slice();
        for (i, (x, y)) in a.iter().zip(b).enumerate() {
            let w = x & y;
            if w != 0 {
                return Some(i * usize::BITS as usize + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Smallest member of `self ∩ other` that is not in `skip`.
    pub fn first_common_excluding(&self, other: &VertexSet, skip: &VertexSet) -> Option<usize> {
        let a = self.bits.as_slice();
        let b = other.bits.as_slice();
        let c = skip.bits.as_slice();
        for (i, ((x, y), z)) in a.iter().zip(b).zip(c).enumerate() {
            let w = x & y & !z;
            if w != 0 {
                return Some(i * usize::BITS as usize + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        !self.is_disjoint(other)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
