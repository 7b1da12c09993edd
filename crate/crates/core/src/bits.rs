//! Bitset encodings used throughout the crate.
//!
//! [`SubsetMask`] encodes a subset of a small carrier (a semiring or a
//! semimodule, at most 64 elements). [`PointSet`] encodes a subset of the
//! point set of a subsemimodule space, which can be much larger than the
//! carrier.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Maximum carrier size representable by a [`SubsetMask`].
pub const MAX_CARRIER: usize = 64;

/// A subset of a carrier `{0, .., n-1}` stored as a 64-bit mask.
///
/// Ordering is the numeric order of the mask, which is the canonical order
/// used for every enumeration in this crate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetMask(pub u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn full(n: usize) -> SubsetMask {
        debug_assert!(n <= MAX_CARRIER);
        if n == MAX_CARRIER {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> SubsetMask {
        SubsetMask(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> SubsetMask {
        let mut m = 0u64;
        for i in it {
            m |= 1u64 << i;
        }
        SubsetMask(m)
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    #[inline]
    pub fn is_subset(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_proper_subset(self, other: SubsetMask) -> bool {
        self != other && self.is_subset(other)
    }

    #[inline]
    pub fn union(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Complement relative to a carrier of size `n`.
    pub fn complement(self, n: usize) -> SubsetMask {
        SubsetMask(!self.0 & SubsetMask::full(n).0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A subset of the points of a space, of fixed universe size.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    len: usize,
    blocks: Vec<u64>,
}

impl PointSet {
    pub fn empty(len: usize) -> PointSet {
        PointSet {
            len,
            blocks: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> PointSet {
        let mut s = PointSet::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, it: I) -> PointSet {
        let mut s = PointSet::empty(len);
        for i in it {
            s.insert(i);
        }
        s
    }

    /// Size of the universe, not the number of members.
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "point {i} outside universe of size {}", self.len);
        self.blocks[i / 64] |= 1u64 << (i % 64);
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        PointSet {
            len: self.len,
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        PointSet {
            len: self.len,
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn complement(&self) -> PointSet {
        let mut out = PointSet::full(self.len);
        for (o, b) in out.blocks.iter_mut().zip(&self.blocks) {
            *o &= !b;
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &block)| {
            let mut rest = block;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let i = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(bi * 64 + i)
                }
            })
        })
    }
}

// Numeric order of the bitmask read as a big integer.
impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.blocks.iter().rev().zip(other.blocks.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mask_basics() {
        let m = SubsetMask::from_indices([0, 2, 5]);
        assert!(m.contains(2));
        assert!(!m.contains(1));
        assert_eq!(m.len(), 3);
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![0, 2, 5]);
        assert_eq!(SubsetMask::full(3).complement(3), SubsetMask::EMPTY);
        assert_eq!(SubsetMask::full(64).len(), 64);
    }

    #[test]
    fn pointset_across_blocks() {
        let s = PointSet::from_indices(130, [0, 63, 64, 129]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(s.complement().count(), 126);
        assert!(PointSet::empty(130) < s);
    }

    proptest! {
        #[test]
        fn pointset_order_matches_numeric(a in 0u64..1 << 20, b in 0u64..1 << 20) {
            let pa = PointSet::from_indices(20, SubsetMask(a).iter());
            let pb = PointSet::from_indices(20, SubsetMask(b).iter());
            prop_assert_eq!(pa.cmp(&pb), a.cmp(&b));
            prop_assert_eq!(pa.union(&pb).iter().collect::<Vec<_>>(), SubsetMask(a | b).iter().collect::<Vec<_>>());
            prop_assert_eq!(pa.is_subset(&pb), SubsetMask(a).is_subset(SubsetMask(b)));
        }
    }
}
