//! Matroids stored as full rank tables over the subset lattice.

use serde::{Deserialize, Serialize};

use crate::exactlin::{rank_over_field, Field, IntMatrix};
use crate::graph::Graph;
use crate::poly::Poly;
use crate::subset::Subset;

pub const MAX_GROUND: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matroid {
    n: usize,
    ranks: Vec<u8>,
    /// Original (1-based) names of the elements, kept through minors.
    labels: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatroidError {
    #[error("ground set of size {0} exceeds the limit of {MAX_GROUND}")]
    TooLarge(usize),
    #[error("rank table has {got} entries, expected {want}")]
    TableSize { got: usize, want: usize },
    #[error("uniform matroid needs k <= n (got k = {k}, n = {n})")]
    BadUniform { k: usize, n: usize },
    #[error("element {0} is not in the ground set")]
    BadElement(usize),
    #[error("{0} is not a circuit-hyperplane")]
    NotCircuitHyperplane(String),
}

/// First violated axiom, with the subsets that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `0 <= rank(S) <= |S|` fails.
    Bounds { s: Subset },
    /// `rank(S1) <= rank(S2)` fails for `S1 ⊂ S2`.
    Monotone { s1: Subset, s2: Subset },
    /// Submodularity fails for `(S1, S2)`.
    Submodular { s1: Subset, s2: Subset },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementKind {
    Loop,
    Coloop,
    Ordinary,
}

impl Matroid {
    /// Wraps a bitmask-indexed rank table without checking the axioms.
    pub fn from_rank_table(n: usize, ranks: Vec<u8>) -> Result<Self, MatroidError> {
        if n > MAX_GROUND {
            return Err(MatroidError::TooLarge(n));
        }
        if ranks.len() != 1 << n {
            return Err(MatroidError::TableSize {
                got: ranks.len(),
                want: 1 << n,
            });
        }
        Ok(Matroid {
            n,
            ranks,
            labels: (1..=n).collect(),
        })
    }

    fn from_fn(n: usize, f: impl Fn(Subset) -> usize) -> Self {
        let ranks = (0..1u32 << n).map(|s| f(Subset(s)) as u8).collect();
        Matroid {
            n,
            ranks,
            labels: (1..=n).collect(),
        }
    }

    pub fn uniform(k: usize, n: usize) -> Result<Self, MatroidError> {
        if k > n {
            return Err(MatroidError::BadUniform { k, n });
        }
        if n > MAX_GROUND {
            return Err(MatroidError::TooLarge(n));
        }
        Ok(Self::from_fn(n, |s| s.len().min(k)))
    }

    pub fn from_graph(g: &Graph) -> Self {
        Self::from_fn(g.edge_count(), |s| g.vertices - g.component_count(s))
    }

    /// Column matroid over the rationals.
    pub fn from_matrix(a: &IntMatrix) -> Result<Self, MatroidError> {
        let n = a.cols();
        if n > MAX_GROUND {
            return Err(MatroidError::TooLarge(n));
        }
        Ok(Self::from_fn(n, |s| {
            if s.is_empty() {
                0
            } else {
                rank_over_field(&a.select_cols(&s.to_vec()), Field::Rational)
            }
        }))
    }

    /// The Pappus configuration: nine points, rank 3, with the nine lines
    /// {123,148,159,247,269,357,368,456,789}.
    pub fn pappus() -> Self {
        let lines = pappus_lines();
        Self::from_fn(9, |s| {
            if s.len() <= 2 {
                s.len()
            } else if lines.contains(&s) {
                2
            } else {
                3
            }
        })
    }

    /// Pappus with the line {4,5,6} relaxed.
    pub fn non_pappus() -> Self {
        Self::pappus()
            .relax(Subset::from_elements(&[3, 4, 5]))
            .expect("456 is a circuit-hyperplane of Pappus")
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<usize>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = labels;
        self
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.n)
    }

    #[inline]
    pub fn rank(&self, s: Subset) -> usize {
        self.ranks[s.0 as usize] as usize
    }

    pub fn rank_table(&self) -> &[u8] {
        &self.ranks
    }

    /// `rank(M) = rank(E)`.
    pub fn total_rank(&self) -> usize {
        self.rank(self.ground())
    }

    pub fn corank(&self, s: Subset) -> usize {
        self.total_rank() - self.rank(s)
    }

    /// Checks bounds, monotonicity and submodularity. Monotonicity and
    /// submodularity are checked in their local (one- and two-element) forms,
    /// which are equivalent to the global ones for set functions.
    pub fn validate_axioms(&self) -> Result<(), AxiomViolation> {
        let full = 1u32 << self.n;
        for s in 0..full {
            let s = Subset(s);
            if self.rank(s) > s.len() {
                return Err(AxiomViolation::Bounds { s });
            }
        }
        for s in 0..full {
            let s = Subset(s);
            for e in 0..self.n {
                if !s.contains(e) && self.rank(s) > self.rank(s.with(e)) {
                    return Err(AxiomViolation::Monotone { s1: s, s2: s.with(e) });
                }
            }
        }
        for s in 0..full {
            let s = Subset(s);
            for e in 0..self.n {
                if s.contains(e) {
                    continue;
                }
                for f in e + 1..self.n {
                    if s.contains(f) {
                        continue;
                    }
                    let (a, b) = (s.with(e), s.with(f));
                    if self.rank(a) + self.rank(b) < self.rank(a.union(b)) + self.rank(s) {
                        return Err(AxiomViolation::Submodular { s1: a, s2: b });
                    }
                }
            }
        }
        Ok(())
    }

    fn check(&self, e: usize) -> Result<(), MatroidError> {
        if e >= self.n {
            Err(MatroidError::BadElement(e))
        } else {
            Ok(())
        }
    }

    fn minor_labels(&self, e: usize) -> Vec<usize> {
        let mut l = self.labels.clone();
        l.remove(e);
        l
    }

    /// `M \ e`, elements above `e` shift down by one.
    pub fn delete(&self, e: usize) -> Result<Self, MatroidError> {
        self.check(e)?;
        let m = Self::from_fn(self.n - 1, |s| self.rank(s.insert_gap(e)));
        Ok(m.with_labels(self.minor_labels(e)))
    }

    /// `M / e`: `rank(S ∪ e) - rank(e)`.
    pub fn contract(&self, e: usize) -> Result<Self, MatroidError> {
        self.check(e)?;
        let re = self.rank(Subset::singleton(e));
        let m = Self::from_fn(self.n - 1, |s| self.rank(s.insert_gap(e).with(e)) - re);
        Ok(m.with_labels(self.minor_labels(e)))
    }

    /// Ground set `E ⊔ E'`, elements of `other` placed after those of `self`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Self, MatroidError> {
        let n = self.n + other.n;
        if n > MAX_GROUND {
            return Err(MatroidError::TooLarge(n));
        }
        let mask = Subset::full(self.n);
        let m = Self::from_fn(n, |s| {
            self.rank(s.intersection(mask)) + other.rank(Subset(s.0 >> self.n))
        });
        let mut labels: Vec<usize> = (1..=self.n).collect();
        labels.extend((1..=other.n).map(|x| x + self.n));
        Ok(m.with_labels(labels))
    }

    pub fn is_circuit_hyperplane(&self, s0: Subset) -> bool {
        let r = self.total_rank();
        if r == 0 || self.rank(s0) != r - 1 || s0.len() != r {
            return false;
        }
        (0..self.n).all(|e| {
            if s0.contains(e) {
                self.rank(s0.without(e)) == r - 1
            } else {
                self.rank(s0.with(e)) == r
            }
        })
    }

    pub fn circuit_hyperplanes(&self) -> Vec<Subset> {
        let r = self.total_rank();
        if r == 0 {
            return vec![];
        }
        Subset::of_size(self.n, r)
            .into_iter()
            .filter(|&s| self.is_circuit_hyperplane(s))
            .collect()
    }

    pub fn relax(&self, s0: Subset) -> Result<Self, MatroidError> {
        if !self.is_circuit_hyperplane(s0) {
            return Err(MatroidError::NotCircuitHyperplane(s0.display()));
        }
        let mut m = self.clone();
        m.ranks[s0.0 as usize] = self.total_rank() as u8;
        Ok(m)
    }

    pub fn classify(&self, e: usize) -> Result<ElementKind, MatroidError> {
        self.check(e)?;
        Ok(if self.rank(Subset::singleton(e)) == 0 {
            ElementKind::Loop
        } else if self.corank(self.ground().without(e)) == 1 {
            ElementKind::Coloop
        } else {
            ElementKind::Ordinary
        })
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank(Subset::singleton(e)) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.corank(self.ground().without(e)) == 1
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.n).filter(|&e| self.is_loop(e)).collect()
    }

    pub fn coloops(&self) -> Vec<usize> {
        (0..self.n).filter(|&e| self.is_coloop(e)).collect()
    }

    pub fn parallel_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if !self.is_loop(a)
                    && !self.is_loop(b)
                    && self.rank(Subset::from_elements(&[a, b])) == 1
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn closure(&self, s: Subset) -> Subset {
        let r = self.rank(s);
        (0..self.n).fold(s, |acc, e| {
            if !s.contains(e) && self.rank(s.with(e)) == r {
                acc.with(e)
            } else {
                acc
            }
        })
    }

    pub fn is_flat(&self, s: Subset) -> bool {
        self.closure(s) == s
    }

    /// All flats in increasing bitmask order.
    pub fn flats(&self) -> Vec<Subset> {
        (0..1u32 << self.n)
            .map(Subset)
            .filter(|&s| self.is_flat(s))
            .collect()
    }

    /// `χ(M; λ) = Σ_S (-1)^{|S|} λ^{corank S}`.
    pub fn char_poly(&self) -> Poly {
        let r = self.total_rank();
        let mut c = vec![0i64; r + 1];
        for s in 0..1u32 << self.n {
            let s = Subset(s);
            let k = r - self.rank(s);
            if s.len().is_multiple_of(2) {
                c[k] += 1;
            } else {
                c[k] -= 1;
            }
        }
        Poly::new(c)
    }

    /// Relabels the ground set: element `e` of `self` becomes `perm[e]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut ranks = vec![0u8; 1 << self.n];
        for s in 0..1u32 << self.n {
            let t = Subset(s)
                .elements()
                .fold(Subset::EMPTY, |acc, e| acc.with(perm[e]));
            ranks[t.0 as usize] = self.ranks[s as usize];
        }
        let mut labels = vec![0; self.n];
        for e in 0..self.n {
            labels[perm[e]] = self.labels[e];
        }
        Matroid {
            n: self.n,
            ranks,
            labels,
        }
    }

    /// Rank-table equality up to relabeling; exhaustive, intended for n ≤ 8.
    pub fn is_isomorphic(&self, other: &Matroid) -> bool {
        if self.n != other.n || self.total_rank() != other.total_rank() {
            return false;
        }
        let mut hist_a = vec![0usize; self.n + 1];
        let mut hist_b = vec![0usize; self.n + 1];
        for s in 0..1usize << self.n {
            hist_a[self.ranks[s] as usize] += 1;
            hist_b[other.ranks[s] as usize] += 1;
        }
        if hist_a != hist_b {
            return false;
        }
        let mut perm: Vec<usize> = (0..self.n).collect();
        loop {
            if (0..1u32 << self.n).all(|s| {
                let t = Subset(s)
                    .elements()
                    .fold(Subset::EMPTY, |acc, e| acc.with(perm[e]));
                self.ranks[s as usize] == other.ranks[t.0 as usize]
            }) {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }

    /// Same rank table (labels ignored).
    pub fn same_ranks(&self, other: &Matroid) -> bool {
        self.n == other.n && self.ranks == other.ranks
    }
}

pub fn pappus_lines() -> Vec<Subset> {
    ["123", "148", "159", "247", "269", "357", "368", "456", "789"]
        .iter()
        .map(|w| {
            Subset::from_elements(
                &w.bytes().map(|b| (b - b'1') as usize).collect::<Vec<_>>(),
            )
        })
        .collect()
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(k: usize, n: usize) -> Matroid {
        Matroid::uniform(k, n).unwrap()
    }

    #[test]
    fn uniform_examples() {
        assert_eq!(u(0, 0).size(), 0);
        let m = u(1, 2);
        assert_eq!(m.rank(Subset(1)), 1);
        assert_eq!(m.rank(Subset(3)), 1);
        assert!(Matroid::uniform(3, 2).is_err());
        assert_eq!(u(2, 3).char_poly(), Poly::new(vec![2, -3, 1]));
        assert_eq!(u(0, 0).char_poly(), Poly::constant(1));
    }

    #[test]
    fn graphic_examples() {
        assert!(Matroid::from_graph(&Graph::complete(3)).is_isomorphic(&u(2, 3)));
        let lp = Graph::new(1, &[(0, 0)]).unwrap();
        assert!(Matroid::from_graph(&lp).same_ranks(&u(0, 1)));
        assert!(Matroid::from_graph(&Graph::path(3)).same_ranks(&u(2, 2)));
    }

    #[test]
    fn matrix_examples() {
        let m = Matroid::from_matrix(&IntMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 1]])).unwrap();
        assert!(m.same_ranks(&u(2, 3)));
        let z = Matroid::from_matrix(&IntMatrix::from_i64(&[&[1, 0], &[0, 0]])).unwrap();
        assert!(z.is_loop(1));
    }

    #[test]
    fn minors() {
        assert!(u(2, 3).delete(0).unwrap().same_ranks(&u(2, 2)));
        assert!(u(2, 3).contract(0).unwrap().same_ranks(&u(1, 2)));
        assert!(u(0, 1).delete(0).unwrap().same_ranks(&u(0, 0)));
        assert!(u(3, 3).contract(1).unwrap().same_ranks(&u(2, 2)));
        let s = u(0, 1).direct_sum(&u(1, 1)).unwrap();
        assert!(s.contract(0).unwrap().same_ranks(&u(1, 1)));
        assert!(u(1, 1).direct_sum(&u(1, 1)).unwrap().same_ranks(&u(2, 2)));
        assert_eq!(s.total_rank(), 1);
        assert!(s.is_loop(0));
        assert!(u(2, 3).direct_sum(&u(0, 0)).unwrap().same_ranks(&u(2, 3)));
        assert_eq!(u(2, 3).delete(1).unwrap().labels(), &[1, 3]);
    }

    #[test]
    fn pappus_structure() {
        let p = Matroid::pappus();
        assert!(p.validate_axioms().is_ok());
        assert_eq!(p.circuit_hyperplanes(), {
            let mut l = pappus_lines();
            l.sort();
            l
        });
        let np = Matroid::non_pappus();
        assert!(np.validate_axioms().is_ok());
        assert_eq!(np.circuit_hyperplanes().len(), 8);
    }

    #[test]
    fn k4_relaxation() {
        let k4 = Matroid::from_graph(&Graph::complete(4));
        let ch = k4.circuit_hyperplanes();
        assert_eq!(ch.len(), 4);
        let r = k4.relax(ch[0]).unwrap();
        assert!(r.validate_axioms().is_ok());
        assert_eq!(r.circuit_hyperplanes().len(), 3);
        assert!(u(2, 3).circuit_hyperplanes().is_empty());
    }

    #[test]
    fn axiom_failures() {
        let mut t = vec![0u8, 2];
        let m = Matroid::from_rank_table(1, t.clone()).unwrap();
        assert_eq!(m.validate_axioms(), Err(AxiomViolation::Bounds { s: Subset(1) }));
        t = vec![0, 1, 1, 0];
        let m = Matroid::from_rank_table(2, t).unwrap();
        assert!(matches!(m.validate_axioms(), Err(AxiomViolation::Monotone { .. })));
    }

    #[test]
    fn classification() {
        assert!((0..3).all(|e| u(3, 3).classify(e).unwrap() == ElementKind::Coloop));
        assert_eq!(u(0, 1).classify(0).unwrap(), ElementKind::Loop);
        assert_eq!(u(1, 2).parallel_pairs(), vec![(0, 1)]);
        assert_eq!(u(2, 3).closure(Subset(3)), Subset(7));
        assert_eq!(u(2, 3).closure(Subset(0)), Subset(0));
        assert_eq!(u(2, 3).closure(Subset(7)), Subset(7));
    }
}
