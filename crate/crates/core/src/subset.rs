//! Subsets of a finite, ordered universe stored as a single `u64` bitmask.
//!
//! Element `i` of the universe is bit `i`. Universes hold at most
//! [`MAX_STATES`] elements; every set operation is a handful of word ops.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported universe.
pub const MAX_STATES: usize = 64;

/// Set of element indices in a universe of `universe` elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset {
    bits: u64,
    universe: u8,
}

fn full_mask(universe: usize) -> u64 {
    if universe >= 64 {
        u64::MAX
    } else {
        (1u64 << universe) - 1
    }
}

impl Subset {
    pub fn empty(universe: usize) -> Self {
        assert!(universe <= MAX_STATES, "universe of {universe} exceeds {MAX_STATES}");
        Subset { bits: 0, universe: universe as u8 }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        s.bits = full_mask(universe);
        s
    }

    /// Builds a subset from a raw mask, rejecting bits outside the universe.
    pub fn from_bits(universe: usize, bits: u64) -> Result<Self> {
        if universe > MAX_STATES || bits & !full_mask(universe) != 0 {
            return Err(Error::InvalidSubset(universe));
        }
        Ok(Subset { bits, universe: universe as u8 })
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Result<Self> {
        let mut s = Self::empty(universe);
        for i in indices {
            if i >= universe {
                return Err(Error::InvalidSubset(universe));
            }
            s.bits |= 1 << i;
        }
        Ok(s)
    }

    pub fn singleton(universe: usize, index: usize) -> Result<Self> {
        Self::from_indices(universe, [index])
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn universe(self) -> usize {
        self.universe as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(self, index: usize) -> bool {
        index < 64 && self.bits >> index & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, index: usize) {
        debug_assert!(index < self.universe());
        self.bits |= 1 << index;
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        Subset { bits: self.bits | other.bits, ..self }
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        Subset { bits: self.bits & other.bits, ..self }
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        Subset { bits: self.bits & !other.bits, ..self }
    }

    #[inline]
    pub fn complement(self) -> Self {
        Subset { bits: !self.bits & full_mask(self.universe()), ..self }
    }

    #[inline]
    pub fn is_subset_of(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.bits & other.bits == 0
    }

    /// Member indices in ascending order.
    pub fn iter(self) -> Members {
        Members { bits: self.bits }
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Canonical order: cardinality first, then the mask as an integer.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then(self.bits.cmp(&other.bits))
    }

    /// Every subset of a universe of `universe <= 63` elements, in mask order.
    pub fn all(universe: usize) -> impl Iterator<Item = Subset> {
        assert!(universe < 64, "cannot enumerate 2^{universe} subsets");
        (0..1u64 << universe).map(move |bits| Subset { bits, universe: universe as u8 })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterator over the set bits of a [`Subset`].
pub struct Members {
    bits: u64,
}

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let i = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.bits.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Sorts a family of subsets into canonical order and removes duplicates.
pub fn canonicalize(family: &mut Vec<Subset>) {
    family.sort_by(Subset::canonical_cmp);
    family.dedup();
}
