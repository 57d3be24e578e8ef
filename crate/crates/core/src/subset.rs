use std::fmt;

use serde::{Deserialize, Serialize};

/// Subset of a ground set `{0, …, n-1}` as a bitmask (n ≤ 32).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        if n >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Subset {
        Subset(1 << e)
    }

    pub fn from_elements(elems: &[usize]) -> Subset {
        Subset(elems.iter().fold(0, |acc, &e| acc | (1 << e)))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    #[inline]
    pub fn with(self, e: usize) -> Subset {
        Subset(self.0 | (1 << e))
    }

    #[inline]
    pub fn without(self, e: usize) -> Subset {
        Subset(self.0 & !(1 << e))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn minus(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
    }

    pub fn is_subset_of(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    /// Number of elements of `self` smaller than `e`.
    #[inline]
    pub fn count_below(self, e: usize) -> usize {
        (self.0 & ((1u32 << e) - 1)).count_ones() as usize
    }

    /// The sign `ε^{S,e}`: `-1` iff an odd number of elements of `S` precede `e`.
    #[inline]
    pub fn epsilon(self, e: usize) -> i64 {
        if self.count_below(e) % 2 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        let b = self.0;
        (0..32).filter(move |&i| b >> i & 1 == 1)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.elements().collect()
    }

    /// All subsets of `{0..n}` of size `k`, in increasing bitmask order.
    pub fn of_size(n: usize, k: usize) -> Vec<Subset> {
        (0..1u32 << n)
            .filter(|s| s.count_ones() as usize == k)
            .map(Subset)
            .collect()
    }

    /// Removes element `e` and shifts higher elements down by one.
    pub fn delete_index(self, e: usize) -> Subset {
        let low = self.0 & ((1u32 << e) - 1);
        let high = (self.0 >> (e + 1)) << e;
        Subset(low | high)
    }

    /// Inverse of `delete_index`: inserts a gap at position `e`.
    pub fn insert_gap(self, e: usize) -> Subset {
        let low = self.0 & ((1u32 << e) - 1);
        let high = (self.0 >> e) << (e + 1);
        Subset(low | high)
    }

    /// 1-based display string such as `{1,2,4}`.
    pub fn display(self) -> String {
        let v: Vec<String> = self.elements().map(|e| (e + 1).to_string()).collect();
        format!("{{{}}}", v.join(","))
    }

    pub fn display_with(self, labels: &[usize]) -> String {
        let v: Vec<String> = self.elements().map(|e| labels[e].to_string()).collect();
        format!("{{{}}}", v.join(","))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_and_reindex() {
        let s = Subset::from_elements(&[0, 2, 3]);
        assert_eq!(s.epsilon(1), -1);
        assert_eq!(s.epsilon(4), -1);
        assert_eq!(s.epsilon(0), 1);
        assert_eq!(s.delete_index(1), Subset::from_elements(&[0, 1, 2]));
        assert_eq!(s.delete_index(1).insert_gap(1), s);
        assert_eq!(s.display(), "{1,3,4}");
    }
}
