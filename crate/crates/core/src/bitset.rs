//! Fixed-width bit sets over vertex or edge ids.
//!
//! Every set carries its width. Set algebra between two sets of different
//! widths is a programming error and panics; [`BitSet::try_union`] and
//! friends report it as [`Error::WidthMismatch`] instead.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported width. Everything in this crate is desk scale, so a
/// single machine word pair is plenty.
pub const MAX_WIDTH: usize = 128;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    width: u16,
    bits: u128,
}

/// A set of vertex ids.
pub type VertexSet = BitSet;
/// A set of edge ids.
pub type EdgeSet = BitSet;

impl BitSet {
    /// The empty set of the given width.
    ///
    /// Panics if `width > MAX_WIDTH`; use [`BitSet::try_empty`] to get an
    /// error instead.
    pub fn empty(width: usize) -> Self {
        Self::try_empty(width).expect("bit set width exceeds MAX_WIDTH")
    }

    pub fn try_empty(width: usize) -> Result<Self> {
        if width > MAX_WIDTH {
            return Err(Error::TooLarge {
                what: "bit set width",
                size: width,
                limit: MAX_WIDTH,
            });
        }
        Ok(BitSet {
            width: width as u16,
            bits: 0,
        })
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        s.bits = mask(width);
        s
    }

    pub fn from_bits(width: usize, bits: u128) -> Self {
        let mut s = Self::empty(width);
        assert!(bits & !mask(width) == 0, "bits outside width {width}");
        s.bits = bits;
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(width: usize, items: I) -> Self {
        let mut s = Self::empty(width);
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn singleton(width: usize, i: usize) -> Self {
        Self::from_iter(width, [i])
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width as usize
    }

    #[inline]
    pub fn bits(&self) -> u128 {
        self.bits
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.width() && (self.bits >> i) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.width(), "index {i} outside width {}", self.width);
        self.bits |= 1u128 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.width() {
            self.bits &= !(1u128 << i);
        }
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn without(mut self, i: usize) -> Self {
        self.remove(i);
        self
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_full(&self) -> bool {
        self.bits == mask(self.width())
    }

    /// True if the set is neither empty nor the whole ground set.
    #[inline]
    pub fn is_proper_nonempty(&self) -> bool {
        !self.is_empty() && !self.is_full()
    }

    #[inline]
    fn check(&self, other: &Self) {
        assert_eq!(
            self.width, other.width,
            "bit set width mismatch ({} vs {})",
            self.width, other.width
        );
    }

    #[inline]
    pub fn union(&self, other: &Self) -> Self {
        self.check(other);
        BitSet {
            width: self.width,
            bits: self.bits | other.bits,
        }
    }

    #[inline]
    pub fn intersection(&self, other: &Self) -> Self {
        self.check(other);
        BitSet {
            width: self.width,
            bits: self.bits & other.bits,
        }
    }

    #[inline]
    pub fn difference(&self, other: &Self) -> Self {
        self.check(other);
        BitSet {
            width: self.width,
            bits: self.bits & !other.bits,
        }
    }

    #[inline]
    pub fn complement(&self) -> Self {
        BitSet {
            width: self.width,
            bits: !self.bits & mask(self.width()),
        }
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.check(other);
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check(other);
        self.bits & other.bits == 0
    }

    #[inline]
    pub fn intersects(&self, other: &Self) -> bool {
        !self.is_disjoint(other)
    }

    pub fn try_union(&self, other: &Self) -> Result<Self> {
        self.same_width(other)?;
        Ok(self.union(other))
    }

    pub fn try_intersection(&self, other: &Self) -> Result<Self> {
        self.same_width(other)?;
        Ok(self.intersection(other))
    }

    pub fn try_difference(&self, other: &Self) -> Result<Self> {
        self.same_width(other)?;
        Ok(self.difference(other))
    }

    pub fn same_width(&self, other: &Self) -> Result<()> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                left: self.width(),
                right: other.width(),
            });
        }
        Ok(())
    }

    /// Smallest element, if any.
    pub fn first(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Iter {
        Iter { bits: self.bits }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

#[inline]
fn mask(width: usize) -> u128 {
    if width >= 128 {
        u128::MAX
    } else {
        (1u128 << width) - 1
    }
}

pub struct Iter {
    bits: u128,
}

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let i = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(i)
    }
}

impl IntoIterator for &BitSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Serializes as the sorted member list.
impl serde::Serialize for BitSet {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_seq(self.iter())
    }
}

impl fmt::Display for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_within_width() {
        let a = BitSet::from_iter(5, [0, 2]);
        let b = BitSet::from_iter(5, [2, 3]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 2, 3]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert_eq!(a.difference(&b).to_vec(), vec![0]);
        assert_eq!(a.complement().to_vec(), vec![1, 3, 4]);
        assert!(BitSet::full(5).is_full());
        assert!(!BitSet::full(5).is_proper_nonempty());
        assert!(BitSet::full(128).complement().is_empty());
    }

    #[test]
    fn width_mismatch_is_an_error() {
        let a = BitSet::empty(3);
        let b = BitSet::empty(4);
        assert!(matches!(
            a.try_union(&b),
            Err(Error::WidthMismatch { left: 3, right: 4 })
        ));
        assert!(BitSet::try_empty(MAX_WIDTH + 1).is_err());
    }

    #[test]
    #[should_panic(expected = "width mismatch")]
    fn width_mismatch_panics_in_operators() {
        let _ = BitSet::empty(3).union(&BitSet::empty(4));
    }
}
