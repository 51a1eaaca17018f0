//! Subsets of a small ground set as bitmasks, and families of subsets as
//! bitsets indexed by subset mask.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not};

use crate::error::Error;

/// Largest supported ground set. A family over 16 elements occupies
/// 2^16 bits = 1024 words.
pub const MAX_ELEMENTS: usize = 16;

/// Index of a ground-set element, 0-based. Text formats use 1-based labels.
pub type ElementId = usize;

/// A subset of the ground set `{0, .., n-1}`; bit `i` is set iff element `i`
/// belongs to the subset. Symmetric difference is `^`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    #[inline]
    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The whole ground set of size `n`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    #[inline]
    pub const fn singleton(e: ElementId) -> Self {
        Subset(1 << e)
    }

    pub fn from_elements<I: IntoIterator<Item = ElementId>>(elements: I) -> Self {
        Subset(elements.into_iter().fold(0, |acc, e| acc | (1 << e)))
    }

    #[inline]
    pub const fn contains(self, e: ElementId) -> bool {
        (self.0 >> e) & 1 == 1
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn with(self, e: ElementId) -> Self {
        Subset(self.0 | (1 << e))
    }

    #[inline]
    pub const fn without(self, e: ElementId) -> Self {
        Subset(self.0 & !(1 << e))
    }

    #[inline]
    pub const fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn complement(self, n: usize) -> Self {
        Subset(!self.0 & Subset::full(n).0)
    }

    /// Whether every element lies in `{0, .., n-1}`.
    #[inline]
    pub const fn fits(self, n: usize) -> bool {
        self.0 & !Subset::full(n).0 == 0
    }

    /// Elements in ascending order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// Keeps only the positions listed in `keep` and packs them down so that
    /// the i-th smallest element of `keep` becomes element `i`.
    pub fn compress(self, keep: Subset) -> Subset {
        let mut out = 0u32;
        for (i, e) in keep.elements().enumerate() {
            if self.contains(e) {
                out |= 1 << i;
            }
        }
        Subset(out)
    }

    /// Inverse of [`Subset::compress`]: spreads bit `i` onto the i-th
    /// smallest element of `onto`.
    pub fn expand(self, onto: Subset) -> Subset {
        let mut out = 0u32;
        for (i, e) in onto.elements().enumerate() {
            if self.contains(i) {
                out |= 1 << e;
            }
        }
        Subset(out)
    }

    /// Removes position `e` and shifts every higher element down by one.
    #[inline]
    pub const fn remove_index(self, e: ElementId) -> Subset {
        let low = self.0 & ((1u32 << e) - 1);
        let high = (self.0 >> (e + 1)) << e;
        Subset(low | high)
    }

    /// Relabels element `i` as `perm[i]`.
    pub fn permute(self, perm: &[ElementId]) -> Subset {
        Subset(self.elements().fold(0, |acc, e| acc | (1 << perm[e])))
    }
}

/// Ascending iterator over the elements of a [`Subset`].
#[derive(Clone, Debug)]
pub struct Elements(u32);

impl Iterator for Elements {
    type Item = ElementId;

    #[inline]
    fn next(&mut self) -> Option<ElementId> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Elements {}

impl BitXor for Subset {
    type Output = Subset;
    #[inline]
    fn bitxor(self, rhs: Subset) -> Subset {
        Subset(self.0 ^ rhs.0)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    #[inline]
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl BitOr for Subset {
    type Output = Subset;
    #[inline]
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl Not for Subset {
    type Output = Subset;
    #[inline]
    fn not(self) -> Subset {
        Subset(!self.0)
    }
}

/// Renders with 1-based labels: `{}` for the empty set, `{1,3}` otherwise.
impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", e + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Positions whose bit `i` is clear, for the in-word part of an XOR relabeling.
const LOW_HALVES: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Moves bit `m` of `word` to position `m ^ a` for `a < 64`.
#[inline]
pub fn xor_positions(mut word: u64, a: u32) -> u64 {
    for (i, &low) in LOW_HALVES.iter().enumerate() {
        if (a >> i) & 1 == 1 {
            let s = 1 << i;
            word = ((word & low) << s) | ((word >> s) & low);
        }
    }
    word
}

/// A collection of subsets of `{0, .., n-1}` stored as a bitset of length
/// `2^n`: bit `m` is set iff the subset with mask `m` is a member.
///
/// A raw family is a set system and may be empty.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Family {
    n: usize,
    words: Vec<u64>,
}

/// A ground set together with a family of its subsets.
pub type SetSystem = Family;

#[inline]
fn word_count(n: usize) -> usize {
    (1usize << n).div_ceil(64)
}

#[inline]
fn valid_bits(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

impl Family {
    pub fn empty(n: usize) -> Result<Self, Error> {
        if n > MAX_ELEMENTS {
            return Err(Error::CapacityExceeded { size: n, limit: MAX_ELEMENTS });
        }
        Ok(Family { n, words: vec![0; word_count(n)] })
    }

    /// Every subset of the ground set.
    pub fn power_set(n: usize) -> Result<Self, Error> {
        let mut family = Family::empty(n)?;
        let top = valid_bits(n);
        family.words.iter_mut().for_each(|w| *w = top);
        Ok(family)
    }

    pub fn from_subsets<I: IntoIterator<Item = Subset>>(n: usize, subsets: I) -> Result<Self, Error> {
        let mut family = Family::empty(n)?;
        for s in subsets {
            if !s.fits(n) {
                return Err(Error::SubsetOutOfRange { subset: s, n });
            }
            family.insert(s);
        }
        Ok(family)
    }

    /// Builds a family from its raw bitset words, least significant mask first.
    pub fn from_words(n: usize, words: Vec<u64>) -> Result<Self, Error> {
        let family = Family::empty(n)?;
        if words.len() != family.words.len() || words.last().is_some_and(|&w| w & !valid_bits(n) != 0) {
            return Err(Error::BitsOutOfRange { n });
        }
        Ok(Family { n, words })
    }

    /// Single-word constructor for `n <= 6`.
    pub fn from_word(n: usize, word: u64) -> Result<Self, Error> {
        if n > 6 {
            return Err(Error::CapacityExceeded { size: n, limit: 6 });
        }
        Family::from_words(n, vec![word])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The family as one word, available for `n <= 6`.
    pub fn as_word(&self) -> Option<u64> {
        (self.n <= 6).then(|| self.words[0])
    }

    #[inline]
    pub fn contains(&self, s: Subset) -> bool {
        let m = s.bits() as usize;
        m < (1 << self.n) && (self.words[m >> 6] >> (m & 63)) & 1 == 1
    }

    /// Panics if `s` does not fit the ground set.
    #[inline]
    pub fn insert(&mut self, s: Subset) {
        assert!(s.fits(self.n), "{s} does not fit a ground set of size {}", self.n);
        let m = s.bits() as usize;
        self.words[m >> 6] |= 1 << (m & 63);
    }

    #[inline]
    pub fn remove(&mut self, s: Subset) {
        let m = s.bits() as usize;
        if m < (1 << self.n) {
            self.words[m >> 6] &= !(1 << (m & 63));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in ascending mask order.
    pub fn iter(&self) -> Members<'_> {
        Members { words: &self.words, index: 0, current: self.words[0] }
    }

    pub fn min_size(&self) -> Option<usize> {
        self.iter().map(Subset::len).min()
    }

    pub fn max_size(&self) -> Option<usize> {
        self.iter().map(Subset::len).max()
    }

    pub fn filter(&self, mut keep: impl FnMut(Subset) -> bool) -> Family {
        let mut out = Family { n: self.n, words: vec![0; self.words.len()] };
        for s in self.iter().filter(|&s| keep(s)) {
            out.insert(s);
        }
        out
    }

    /// `{F ^ a : F in self}`.
    pub fn xor_all(&self, a: Subset) -> Family {
        let low = a.bits() & 63;
        let high = (a.bits() >> 6) as usize;
        let mut words = vec![0; self.words.len()];
        for (i, &w) in self.words.iter().enumerate() {
            words[i ^ high] = xor_positions(w, low);
        }
        Family { n: self.n, words }
    }

    /// Relabels element `i` as `perm[i]`.
    pub fn permute(&self, perm: &[ElementId]) -> Family {
        debug_assert_eq!(perm.len(), self.n);
        let mut out = Family { n: self.n, words: vec![0; self.words.len()] };
        for s in self.iter() {
            out.insert(s.permute(perm));
        }
        out
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} ", self.n)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iterator over the members of a [`Family`].
pub struct Members<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Members<'_> {
    type Item = Subset;

    #[inline]
    fn next(&mut self) -> Option<Subset> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros();
                self.current &= self.current - 1;
                return Some(Subset::from_bits((self.index as u32) << 6 | bit));
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}
