//! Partitions of `A^n` into indexed classes, shared by the weight-class
//! enumeration and the rewrite-graph component computations.

/// A partition of the word codes `0..q^n` into classes.
///
/// Class indices are canonical for the construction that produced the
/// partition: weight classes are ordered by weight vector lexicographically,
/// graph components by their minimum word code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    q: u32,
    n: usize,
    class_of: Vec<u32>,
    representatives: Vec<u32>,
}

impl ComponentPartition {
    /// Build from a raw class-index array. `class_of[code]` must use the
    /// contiguous range `0..k`; representatives are the minimum codes.
    pub(crate) fn from_class_indices(q: u32, n: usize, class_of: Vec<u32>) -> Self {
        let count = class_of.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut representatives = vec![u32::MAX; count];
        for (code, &c) in class_of.iter().enumerate() {
            if representatives[c as usize] == u32::MAX {
                representatives[c as usize] = code as u32;
            }
        }
        ComponentPartition {
            q,
            n,
            class_of,
            representatives,
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    /// Class index of a word code.
    pub fn class_of(&self, code: usize) -> usize {
        self.class_of[code] as usize
    }

    /// Minimum word code in each class, indexed by class.
    pub fn representatives(&self) -> &[u32] {
        &self.representatives
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.class_count()];
        for &c in &self.class_of {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// Word codes of one class, in ascending order.
    pub fn class_codes(&self, class: usize) -> Vec<usize> {
        self.class_of
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c as usize == class)
            .map(|(code, _)| code)
            .collect()
    }

    /// True if the two partitions have identical classes, regardless of
    /// index order.
    pub fn same_classes_as(&self, other: &ComponentPartition) -> bool {
        if self.class_of.len() != other.class_of.len() {
            return false;
        }
        if self.class_count() != other.class_count() {
            return false;
        }
        // Classes partition the same set, so a consistent bijection of
        // indices on representatives settles it.
        let mut map = vec![u32::MAX; self.class_count()];
        for code in 0..self.class_of.len() {
            let a = self.class_of[code];
            let b = other.class_of[code];
            if map[a as usize] == u32::MAX {
                map[a as usize] = b;
            } else if map[a as usize] != b {
                return false;
            }
        }
        true
    }
}
