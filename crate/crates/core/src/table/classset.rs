use std::fmt;

/// Maximum number of conjugacy classes a table may have.
pub const MAX_CLASSES: usize = 512;

const WORDS: usize = MAX_CLASSES / 64;

/// A set of class indices below [`MAX_CLASSES`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ClassSet([u64; WORDS]);

impl ClassSet {
    pub fn empty() -> Self {
        ClassSet([0; WORDS])
    }

    /// `{0, 1, ..., k-1}`.
    pub fn full(k: usize) -> Self {
        (0..k).collect()
    }

    pub fn single(i: usize) -> Self {
        let mut s = Self::empty();
        s.insert(i);
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < MAX_CLASSES && self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = *self;
        out.0.iter_mut().zip(other.0).for_each(|(a, b)| *a |= b);
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = *self;
        out.0.iter_mut().zip(other.0).for_each(|(a, b)| *a &= b);
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = *self;
        out.0.iter_mut().zip(other.0).for_each(|(a, b)| *a &= !b);
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_CLASSES).filter(move |&i| self.contains(i))
    }
}

impl FromIterator<usize> for ClassSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ClassSet::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for ClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
