//! Fixed-width bit vectors over element indices.
//!
//! Every subgroup, centralizer and coset mark in the crate is an
//! [`ElementSet`]. All set algebra is done one 64-bit word at a time.

use std::fmt;

const WORD_BITS: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A set of element indices `0..len`, stored as packed 64-bit words.
///
/// Ordering is word-wise lexicographic on the packed representation, where
/// element `i` lives in bit `i % 64` of word `i / 64`. Two sets of different
/// universe sizes are never compared by the library.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    words: Vec<u64>,
    len: usize,
}

impl ElementSet {
    /// The empty set over a universe of `len` elements.
    pub fn new(len: usize) -> Self {
        ElementSet {
            words: vec![0; words_for(len)],
            len,
        }
    }

    /// The full set `{0, .., len-1}`.
    pub fn full(len: usize) -> Self {
        let mut s = ElementSet {
            words: vec![u64::MAX; words_for(len)],
            len,
        };
        s.trim();
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, it: I) -> Self {
        let mut s = Self::new(len);
        for i in it {
            s.insert(i);
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Size of the universe, not the number of members.
    #[inline]
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    /// Inserts `i`, returning true if it was not already present.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        debug_assert!(i < self.len);
        let w = &mut self.words[i / WORD_BITS];
        let mask = 1u64 << (i % WORD_BITS);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / WORD_BITS] &= !(1u64 << (i % WORD_BITS));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
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

    /// Smallest index not in the set at or after `from`.
    pub fn next_absent(&self, from: usize) -> Option<usize> {
        let mut wi = from / WORD_BITS;
        if wi >= self.words.len() {
            return None;
        }
        let mut w = !self.words[wi] & (u64::MAX << (from % WORD_BITS));
        loop {
            if w != 0 {
                let i = wi * WORD_BITS + w.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
            wi += 1;
            if wi >= self.words.len() {
                return None;
            }
            w = !self.words[wi];
        }
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD_BITS + tz);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_is_trimmed() {
        let s = ElementSet::full(70);
        assert_eq!(s.count(), 70);
        assert_eq!(s.iter().last(), Some(69));
        assert_eq!(s.next_absent(0), None);
    }

    #[test]
    fn next_absent_crosses_words() {
        let mut s = ElementSet::full(130);
        s.remove(128);
        assert_eq!(s.next_absent(3), Some(128));
        assert_eq!(ElementSet::new(5).next_absent(4), Some(4));
    }

    proptest! {
        #[test]
        fn set_algebra_matches_btreeset(
            a in proptest::collection::btree_set(0usize..200, 0..60),
            b in proptest::collection::btree_set(0usize..200, 0..60),
        ) {
            let sa = ElementSet::from_indices(200, a.iter().copied());
            let sb = ElementSet::from_indices(200, b.iter().copied());
            let inter: Vec<_> = a.intersection(&b).copied().collect();
            let uni: Vec<_> = a.union(&b).copied().collect();
            prop_assert_eq!(sa.intersection(&sb).iter().collect::<Vec<_>>(), inter);
            prop_assert_eq!(sa.union(&sb).iter().collect::<Vec<_>>(), uni);
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
            prop_assert_eq!(sa.count(), a.len());
        }
    }
}
