//! Fixed-width subsets of a small indexed carrier.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, BitXor, Sub};

/// Largest carrier a [`Subset`] can index.
pub const MAX_CARRIER: usize = 128;

/// A subset of `{0, .., MAX_CARRIER - 1}` stored as a single 128-bit word.
///
/// Every order-theoretic object in this crate (up-sets, prime filters,
/// congruence classes, dual subsets) is one of these, so set algebra is a
/// handful of word operations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u128);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u128) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    /// `{0, .., len - 1}`.
    pub fn full(len: usize) -> Self {
        assert!(len <= MAX_CARRIER, "subset carrier of {len} exceeds {MAX_CARRIER}");
        if len == MAX_CARRIER {
            Subset(u128::MAX)
        } else {
            Subset((1u128 << len) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_CARRIER, "index {i} out of subset range");
        Subset(1u128 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_CARRIER && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        *self |= Subset::singleton(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u128 << i);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement relative to `{0, .., len - 1}`.
    pub fn complement(self, len: usize) -> Subset {
        Subset::full(len) - self
    }

    /// Least member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    /// Image of this subset under a total map given as a table.
    pub fn image(self, map: &[usize]) -> Subset {
        self.iter().map(|x| map[x]).collect()
    }

    /// Preimage of this subset under a total map given as a table.
    pub fn preimage(self, map: &[usize]) -> Subset {
        map.iter()
            .enumerate()
            .filter(|&(_, &y)| self.contains(y))
            .map(|(x, _)| x)
            .collect()
    }

    /// All subsets of `{0, .., len - 1}` in increasing bit order.
    ///
    /// Panics if `len >= 64`; exhaustive scans are only meant for small
    /// carriers.
    pub fn all(len: usize) -> impl Iterator<Item = Subset> {
        assert!(len < 64, "refusing to enumerate 2^{len} subsets");
        (0..(1u64 << len)).map(|b| Subset(b as u128))
    }
}

pub struct SubsetIter(u128);

impl Iterator for SubsetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for SubsetIter {}

impl IntoIterator for Subset {
    type Item = usize;
    type IntoIter = SubsetIter;

    fn into_iter(self) -> SubsetIter {
        self.iter()
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = Subset::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl BitOrAssign for Subset {
    fn bitor_assign(&mut self, rhs: Subset) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl BitAndAssign for Subset {
    fn bitand_assign(&mut self, rhs: Subset) {
        self.0 &= rhs.0;
    }
}

/// Symmetric difference.
impl BitXor for Subset {
    type Output = Subset;
    fn bitxor(self, rhs: Subset) -> Subset {
        Subset(self.0 ^ rhs.0)
    }
}

/// Set difference.
impl Sub for Subset {
    type Output = Subset;
    fn sub(self, rhs: Subset) -> Subset {
        Subset(self.0 & !rhs.0)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_algebra() {
        let a: Subset = [0, 2, 5].into_iter().collect();
        let b: Subset = [2, 3].into_iter().collect();
        assert_eq!((a | b).iter().collect::<Vec<_>>(), vec![0, 2, 3, 5]);
        assert_eq!((a & b).iter().collect::<Vec<_>>(), vec![2]);
        assert_eq!((a - b).iter().collect::<Vec<_>>(), vec![0, 5]);
        assert_eq!((a ^ b).iter().collect::<Vec<_>>(), vec![0, 3, 5]);
        assert_eq!(a.len(), 3);
        assert_eq!(a.first(), Some(0));
        assert!(Subset::EMPTY.first().is_none());
        assert_eq!(b.complement(4).iter().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn full_width_edges() {
        assert_eq!(Subset::full(MAX_CARRIER).len(), MAX_CARRIER);
        assert!(Subset::full(MAX_CARRIER).contains(127));
        assert_eq!(Subset::full(0), Subset::EMPTY);
    }

    #[test]
    fn image_and_preimage() {
        let map = [1, 1, 0];
        let s: Subset = [0, 1].into_iter().collect();
        assert_eq!(s.image(&map), Subset::singleton(1));
        assert_eq!(Subset::singleton(1).preimage(&map), s);
        assert_eq!(Subset::singleton(2).preimage(&map), Subset::EMPTY);
    }

    #[test]
    fn enumerates_power_set() {
        assert_eq!(Subset::all(3).count(), 8);
        assert_eq!(Subset::all(0).collect::<Vec<_>>(), vec![Subset::EMPTY]);
    }
}
