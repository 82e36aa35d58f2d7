//! Fixed-universe bit sets used for subsets of a dimension and for cell sets.

use std::cmp::Ordering;
use std::fmt;

/// A subset of `{0, .., len-1}`.
///
/// Ordering is lexicographic on the bit string `b_0 b_1 .. b_{len-1}` with
/// `0 < 1`, which is the canonical order used for concept output.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    len: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(len: usize) -> Self {
        ElementSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for (w, word) in s.words.iter_mut().enumerate() {
            let remaining = len - w * 64;
            *word = if remaining >= 64 {
                u64::MAX
            } else {
                (1u64 << remaining) - 1
            };
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, items: I) -> Self {
        let mut s = Self::empty(len);
        for i in items {
            s.insert(i);
        }
        s
    }

    /// Builds the subset whose bits are the low `len` bits of `mask`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        debug_assert!(len <= 64);
        let mut s = Self::empty(len);
        if len > 0 {
            s.words[0] = if len == 64 { mask } else { mask & ((1u64 << len) - 1) };
        }
        s
    }

    /// Size of the universe, not the number of members.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "element {i} outside universe of size {}", self.len);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / 64] &= !(1u64 << (i % 64));
        }
    }

    pub fn with(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.insert(i);
        s
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_proper_subset(&self, other: &ElementSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &ElementSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> ElementSet {
        Self::full(self.len).difference(self)
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Keeps only members strictly below `bound`.
    pub fn truncate_below(&mut self, bound: usize) {
        for (w, word) in self.words.iter_mut().enumerate() {
            let lo = w * 64;
            if bound <= lo {
                *word = 0;
            } else if bound < lo + 64 {
                *word &= (1u64 << (bound - lo)) - 1;
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(w * 64 + bit)
                }
            })
        })
    }

    /// All subsets of a universe of size `len`, in increasing mask order.
    ///
    /// Panics if `len >= 64`; callers guard against that.
    pub fn all_subsets(len: usize) -> impl Iterator<Item = ElementSet> {
        assert!(len < 64, "cannot iterate subsets of a universe of size {len}");
        (0..1u64 << len).map(move |m| ElementSet::from_mask(len, m))
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.words.iter().zip(&other.words) {
                let diff = a ^ b;
                if diff != 0 {
                    let bit = diff & diff.wrapping_neg();
                    return if a & bit != 0 {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    };
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_complement() {
        for len in [0, 1, 5, 63, 64, 65, 130] {
            let full = ElementSet::full(len);
            assert_eq!(full.count(), len);
            assert!(full.complement().is_empty());
        }
    }

    #[test]
    fn lexicographic_bit_string_order() {
        // bit strings over 3 elements: {} = 000, {2} = 001, {1} = 010, {0} = 100
        let e = ElementSet::empty(3);
        let s2 = ElementSet::from_indices(3, [2]);
        let s1 = ElementSet::from_indices(3, [1]);
        let s0 = ElementSet::from_indices(3, [0]);
        let s01 = ElementSet::from_indices(3, [0, 1]);
        let mut v = vec![s01.clone(), s0.clone(), s1.clone(), e.clone(), s2.clone()];
        v.sort();
        assert_eq!(v, vec![e, s2, s1, s0, s01]);
    }

    #[test]
    fn order_crosses_word_boundary() {
        let a = ElementSet::from_indices(100, [70]);
        let b = ElementSet::from_indices(100, [3]);
        assert!(a < b);
    }

    #[test]
    fn truncate_and_first() {
        let mut s = ElementSet::from_indices(130, [1, 64, 65, 129]);
        assert_eq!(s.first(), Some(1));
        s.truncate_below(65);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 64]);
        s.truncate_below(0);
        assert_eq!(s.first(), None);
    }

    #[test]
    fn subsets_enumeration() {
        assert_eq!(ElementSet::all_subsets(3).count(), 8);
        assert!(ElementSet::all_subsets(0).next().unwrap().is_empty());
    }
}
