//! The characteristic cochain complex `C^{i,j}(M, ρ) = ⊕_{|S|=i} ⋀^j N/ρ(S)`
//! and its bigraded cohomology.
//!
//! Every quotient `N/ρ(S)` keeps the generators of `N`, so each block of the
//! differential lifts to `±identity` on exterior multi-indices. Cohomology is
//! computed on reduced diagonal presentations of the blocks, which only
//! depend on the closure of `S`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::exactlin::block::{
    assemble_map, assemble_module, block_cohomology, block_cohomology_dim, BlockMap,
};
use crate::exactlin::{
    binomial, combinations, exterior_minimized, exterior_power, FgaClass, Field, Int, IntMatrix,
    Minimized, ModuleMap, PresentedModule,
};
use crate::poly::Poly;
use crate::quasirep::{QuasiRep, QuasiRepViolation};
use crate::subset::Subset;

/// Generator `e_{S,J}` of a chain group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisIndex {
    pub s: Subset,
    pub j: Vec<usize>,
}

impl BasisIndex {
    pub fn display(&self) -> String {
        let j: Vec<String> = self.j.iter().map(|x| (x + 1).to_string()).collect();
        format!("e_{{{}, ({})}}", self.s.display(), j.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("quasi-representation violates an axiom: {0:?}")]
    Invalid(QuasiRepViolation),
    #[error("differential d^{{{i},{j}}} is not well defined at {}", witness.display())]
    IllDefined { i: usize, j: usize, witness: BasisIndex },
    #[error("d^{{{},{j}}} d^{{{i},{j}}} is nonzero on {}", i + 1, witness.display())]
    NonzeroSquare { i: usize, j: usize, witness: BasisIndex },
}

#[derive(Clone, Debug)]
pub struct BigradedComplex {
    q: QuasiRep,
    n: usize,
    jmax: usize,
    /// Reduced generator count of `N`; `⋀^j` vanishes above it.
    auto_jmax: usize,
    gens: usize,
    /// Subsets of each size, ascending bitmask.
    by_size: Vec<Vec<Subset>>,
    /// Position of a subset within its size class.
    pos: Vec<usize>,
    /// Flat index of every subset.
    flat_of: Vec<usize>,
    flats: Vec<Subset>,
    quotients: Vec<PresentedModule>,
    minimized: Vec<Minimized>,
    raw: bool,
}

impl BigradedComplex {
    /// Builds the complex after validating the quasi-representation.
    /// `jmax = None` uses the generator count of a reduced presentation of `N`.
    pub fn new(q: &QuasiRep, jmax: Option<usize>) -> Result<Self, ComplexError> {
        q.validate().map_err(ComplexError::Invalid)?;
        Ok(Self::build(q, jmax, false))
    }

    /// Builds without validating; differentials may then fail to be well
    /// defined, which [`check`](Self::check) reports.
    pub fn new_raw(q: &QuasiRep, jmax: Option<usize>) -> Self {
        Self::build(q, jmax, true)
    }

    fn build(q: &QuasiRep, jmax: Option<usize>, raw: bool) -> Self {
        let m = q.matroid();
        let n = m.size();
        let mut by_size = vec![Vec::new(); n + 1];
        let mut pos = vec![0; 1 << n];
        for s in 0..1u32 << n {
            let k = s.count_ones() as usize;
            pos[s as usize] = by_size[k].len();
            by_size[k].push(Subset(s));
        }
        let mut flats = Vec::new();
        let mut flat_id: HashMap<Subset, usize> = HashMap::new();
        let mut flat_of = vec![0; 1 << n];
        for s in 0..1u32 << n {
            let c = m.closure(Subset(s));
            let id = *flat_id.entry(c).or_insert_with(|| {
                flats.push(c);
                flats.len() - 1
            });
            flat_of[s as usize] = id;
        }
        let quotients: Vec<PresentedModule> = flats.iter().map(|&f| q.quotient(f)).collect();
        let minimized = quotients.iter().map(PresentedModule::minimize).collect();
        let auto_jmax = q.ambient().minimize().diag.len();
        BigradedComplex {
            q: q.clone(),
            n,
            jmax: jmax.unwrap_or(auto_jmax),
            auto_jmax,
            gens: q.ambient().gens,
            by_size,
            pos,
            flat_of,
            flats,
            quotients,
            minimized,
            raw,
        }
    }

    pub fn quasirep(&self) -> &QuasiRep {
        &self.q
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn jmax(&self) -> usize {
        self.jmax
    }

    pub fn auto_jmax(&self) -> usize {
        self.auto_jmax
    }

    pub fn is_raw(&self) -> bool {
        self.raw
    }

    pub fn subsets(&self, i: usize) -> &[Subset] {
        self.by_size.get(i).map_or(&[], |v| v.as_slice())
    }

    /// Position of `s` among the subsets of its size.
    pub fn position(&self, s: Subset) -> usize {
        self.pos[s.0 as usize]
    }

    /// Isomorphism class of the chain group `C^{i,j}`.
    pub fn chain_class(&self, i: usize, j: usize) -> FgaClass {
        let d: Vec<Int> = self.reduced_blocks(i, j).into_iter().flat_map(|m| m.diag).collect();
        FgaClass::from_cyclic(0, &d)
    }

    /// `N/ρ(S)` with the generators of `N`.
    pub fn quotient(&self, s: Subset) -> &PresentedModule {
        &self.quotients[self.flat_of[s.0 as usize]]
    }

    pub fn minimized(&self, s: Subset) -> &Minimized {
        &self.minimized[self.flat_of[s.0 as usize]]
    }

    /// Presentations of the summands `⋀^j N/ρ(S)` of `C^{i,j}`.
    pub fn chain_blocks(&self, i: usize, j: usize) -> Vec<PresentedModule> {
        if i > self.n {
            return vec![];
        }
        let mut cache: HashMap<usize, PresentedModule> = HashMap::new();
        self.by_size[i]
            .iter()
            .map(|s| {
                let f = self.flat_of[s.0 as usize];
                cache
                    .entry(f)
                    .or_insert_with(|| exterior_power(&self.quotients[f], j))
                    .clone()
            })
            .collect()
    }

    pub fn chain_group(&self, i: usize, j: usize) -> PresentedModule {
        assemble_module(&self.chain_blocks(i, j))
    }

    /// Generators per block of `C^{i,j}` before any reduction.
    pub fn block_width(&self, j: usize) -> usize {
        binomial(self.gens, j)
    }

    pub fn basis_index(&self, i: usize, j: usize, position: usize) -> BasisIndex {
        let w = self.block_width(j);
        let s = self.by_size[i][position / w];
        let jset = combinations(self.gens, j)[position % w].clone();
        BasisIndex { s, j: jset }
    }

    pub fn position_of(&self, b: &BasisIndex) -> Option<usize> {
        let w = self.block_width(b.j.len());
        let inner = combinations(self.gens, b.j.len()).iter().position(|x| *x == b.j)?;
        Some(self.pos[b.s.0 as usize] * w + inner)
    }

    /// `d^{i,j}` as blocks `S → S ∪ e` with lift `ε^{S,e}·I`.
    pub fn differential_blocks(&self, i: usize, j: usize) -> BlockMap {
        let mut map = BlockMap::new();
        if i >= self.n {
            return map;
        }
        let w = self.block_width(j);
        for (a, &s) in self.by_size[i].iter().enumerate() {
            for e in 0..self.n {
                if s.contains(e) {
                    continue;
                }
                let t = s.with(e);
                let lift = IntMatrix::identity(w).scale(&Int::from(s.epsilon(e)));
                map.push(a, self.pos[t.0 as usize], lift);
            }
        }
        map
    }

    pub fn differential(&self, i: usize, j: usize) -> ModuleMap {
        assemble_map(
            &self.chain_blocks(i, j),
            &self.chain_blocks(i + 1, j),
            &self.differential_blocks(i, j),
        )
    }

    /// Reduced diagonal presentations of the blocks of `C^{i,j}`.
    pub fn reduced_blocks(&self, i: usize, j: usize) -> Vec<Minimized> {
        if i > self.n {
            return vec![];
        }
        let mut cache: HashMap<usize, Minimized> = HashMap::new();
        self.by_size[i]
            .iter()
            .map(|s| {
                let f = self.flat_of[s.0 as usize];
                cache
                    .entry(f)
                    .or_insert_with(|| exterior_minimized(&self.minimized[f], j))
                    .clone()
            })
            .collect()
    }

    /// Well-definedness of every differential and `d² = 0`, at module level.
    pub fn check(&self) -> Result<(), ComplexError> {
        for j in 0..=self.jmax {
            let blocks: Vec<Vec<PresentedModule>> =
                (0..=self.n).map(|i| self.chain_blocks(i, j)).collect();
            let maps: Vec<BlockMap> = (0..self.n).map(|i| self.differential_blocks(i, j)).collect();
            let w = self.block_width(j);
            for i in 0..self.n {
                if let Some((src, _, _)) = maps[i].ill_defined_witness(&blocks[i], &blocks[i + 1]) {
                    return Err(ComplexError::IllDefined {
                        i,
                        j,
                        witness: self.basis_index(i, j, src * w),
                    });
                }
            }
            for i in 0..self.n.saturating_sub(1) {
                let sq = maps[i].then(&maps[i + 1]);
                if let Some((src, _, c)) = sq.nonzero_witness(&blocks[i + 2]) {
                    return Err(ComplexError::NonzeroSquare {
                        i,
                        j,
                        witness: self.basis_index(i, j, src * w + c),
                    });
                }
            }
        }
        Ok(())
    }

    fn cell_parts(&self, i: usize, j: usize) -> [(Vec<Minimized>, BlockMap); 3] {
        let prev = if i == 0 {
            (vec![], BlockMap::new())
        } else {
            (self.reduced_blocks(i - 1, j), self.differential_blocks(i - 1, j))
        };
        let mid = (self.reduced_blocks(i, j), self.differential_blocks(i, j));
        let next = (self.reduced_blocks(i + 1, j), BlockMap::new());
        [prev, mid, next]
    }

    /// `H^{i,j}` over ℤ.
    pub fn cohomology(&self, i: usize, j: usize) -> FgaClass {
        let [prev, mid, next] = self.cell_parts(i, j);
        block_cohomology(&prev.0, &mid.0, &next.0, &prev.1, &mid.1)
    }

    /// `dim H^{i,j}(C ⊗ F)`.
    pub fn cohomology_dim(&self, i: usize, j: usize, field: Field) -> usize {
        let [prev, mid, next] = self.cell_parts(i, j);
        block_cohomology_dim(&prev.0, &mid.0, &next.0, &prev.1, &mid.1, field)
    }

    fn empty_table(&self, ring: &str) -> CohomologyTable {
        let mut notes = Vec::new();
        if self.jmax > self.auto_jmax {
            notes.push(format!(
                "cells with j > {} vanish: N needs only {} generators",
                self.auto_jmax, self.auto_jmax
            ));
        }
        CohomologyTable {
            n: self.n,
            rank: self.q.matroid().total_rank(),
            quasirep: self.q.descriptor().to_string(),
            ring: ring.to_string(),
            jmax: self.jmax,
            cells: vec![],
            euler: self.graded_euler(),
            notes,
        }
    }

    /// Integer cohomology of every cell `0 ≤ i ≤ n`, `0 ≤ j ≤ jmax`.
    pub fn cohomology_table(&self) -> Result<CohomologyTable, ComplexError> {
        if self.raw {
            self.check()?;
        }
        let mut t = self.empty_table("Z");
        for i in 0..=self.n {
            for j in 0..=self.jmax {
                t.cells.push(Cell::new(i, j, self.cohomology(i, j)));
            }
        }
        Ok(t)
    }

    /// Dimensions over a field, stored as free ranks.
    pub fn dimension_table(&self, field: Field) -> Result<CohomologyTable, ComplexError> {
        if self.raw {
            self.check()?;
        }
        let ring = match field {
            Field::Rational => "Q".to_string(),
            Field::Prime(p) => format!("Z/{p}"),
        };
        let mut t = self.empty_table(&ring);
        for i in 0..=self.n {
            for j in 0..=self.jmax {
                let d = self.cohomology_dim(i, j, field);
                t.cells.push(Cell::new(i, j, FgaClass::free(d)));
            }
        }
        Ok(t)
    }

    /// `rank_ℚ C^{i,j}`.
    pub fn chain_rank(&self, i: usize, j: usize) -> usize {
        if i > self.n {
            return 0;
        }
        self.by_size[i]
            .iter()
            .map(|s| {
                let free = self.minimized(*s).diag.iter().filter(|d| d.is_zero()).count();
                binomial(free, j)
            })
            .sum()
    }

    /// `χ_q = Σ_{i,j} (-1)^i rank C^{i,j} q^j`, summed over all `j` with a
    /// nonzero rational chain group.
    pub fn graded_euler(&self) -> Poly {
        let mut c = vec![0i64; self.gens + 1];
        for s in 0..1u32 << self.n {
            let s = Subset(s);
            let free = self.minimized(s).diag.iter().filter(|d| d.is_zero()).count();
            let sign = if s.len().is_multiple_of(2) { 1 } else { -1 };
            for (j, x) in c.iter_mut().enumerate().take(free + 1) {
                *x += sign * binomial(free, j) as i64;
            }
        }
        Poly::new(c)
    }

    /// Graded rank `Σ_j rank C^{i,j} q^j`.
    pub fn chain_q_rank(&self, i: usize) -> Poly {
        Poly::new((0..=self.gens).map(|j| self.chain_rank(i, j) as i64).collect())
    }

    pub fn flats(&self) -> &[Subset] {
        &self.flats
    }
}

/// One cell `H^{i,j}` of a table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub i: usize,
    pub j: usize,
    pub free: usize,
    pub torsion: Vec<Int>,
}

impl Cell {
    pub fn new(i: usize, j: usize, c: FgaClass) -> Self {
        Cell {
            i,
            j,
            free: c.free_rank,
            torsion: c.torsion,
        }
    }

    pub fn class(&self) -> FgaClass {
        FgaClass::from_cyclic(self.free, &self.torsion)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub n: usize,
    pub rank: usize,
    pub quasirep: String,
    /// `"Z"`, `"Q"` or `"Z/p"`; over a field `free` is the dimension.
    pub ring: String,
    pub jmax: usize,
    pub cells: Vec<Cell>,
    pub euler: Poly,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CohomologyTable {
    pub fn get(&self, i: usize, j: usize) -> FgaClass {
        self.cells
            .iter()
            .find(|c| c.i == i && c.j == j)
            .map(Cell::class)
            .unwrap_or_else(FgaClass::zero)
    }

    /// Free rank (or dimension) of a cell.
    pub fn rank(&self, i: usize, j: usize) -> usize {
        self.get(i, j).free_rank
    }

    pub fn nonzero(&self) -> Vec<(usize, usize, FgaClass)> {
        self.cells
            .iter()
            .filter(|c| c.free > 0 || !c.torsion.is_empty())
            .map(|c| (c.i, c.j, c.class()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero().is_empty()
    }

    /// `Σ (-1)^i rank H^{i,j} q^j`.
    pub fn euler_from_cells(&self) -> Poly {
        let top = self.cells.iter().map(|c| c.j).max().unwrap_or(0);
        let mut v = vec![0i64; top + 1];
        for c in &self.cells {
            let s = if c.i % 2 == 0 { 1 } else { -1 };
            v[c.j] += s * c.free as i64;
        }
        Poly::new(v)
    }

    /// Same cells as `other`, ignoring metadata. Missing cells count as 0.
    pub fn same_cells(&self, other: &CohomologyTable) -> bool {
        self.first_difference(other).is_none()
    }

    pub fn first_difference(&self, other: &CohomologyTable) -> Option<(usize, usize)> {
        let mut keys: Vec<(usize, usize)> = self
            .cells
            .iter()
            .chain(other.cells.iter())
            .map(|c| (c.i, c.j))
            .collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find(|&(i, j)| self.get(i, j) != other.get(i, j))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Bigraded table with rows `i` and columns `j`.
    pub fn render(&self) -> String {
        let imax = self.cells.iter().map(|c| c.i).max().unwrap_or(0);
        let jmax = self.cells.iter().map(|c| c.j).max().unwrap_or(0);
        let mut grid = vec![vec![String::from("0"); jmax + 1]; imax + 1];
        for c in &self.cells {
            grid[c.i][c.j] = match (self.ring.as_str(), c.free) {
                ("Z", _) => c.class().to_string(),
                (_, 0) => "0".into(),
                ("Q", 1) => "Q".into(),
                ("Q", f) => format!("Q^{f}"),
                (r, 1) => r.to_string(),
                (r, f) => format!("({r})^{f}"),
            };
        }
        let mut width = vec![3usize; jmax + 1];
        for row in &grid {
            for (j, s) in row.iter().enumerate() {
                width[j] = width[j].max(s.chars().count());
            }
        }
        let mut out = String::new();
        let _ = write!(out, "{:>4} ", "i\\j");
        for (j, w) in width.iter().enumerate() {
            let _ = write!(out, " {:>w$}", j, w = w);
        }
        out.push('\n');
        for (i, row) in grid.iter().enumerate() {
            let _ = write!(out, "{i:>4} ");
            for (j, s) in row.iter().enumerate() {
                let pad = width[j] - s.chars().count();
                let _ = write!(out, " {}{}", " ".repeat(pad), s);
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::cohomology_at;
    use crate::matroid::Matroid;

    fn canonical_uniform(k: usize, n: usize) -> QuasiRep {
        let m = Matroid::uniform(k, n).unwrap();
        // columns of a Vandermonde-like matrix are in general position
        let a = IntMatrix::from_fn(k, n, |r, c| Int::from((c as i64 + 1).pow(r as u32)));
        QuasiRep::canonical_from_matrix(&m, &a).unwrap()
    }

    fn table(q: &QuasiRep) -> CohomologyTable {
        BigradedComplex::new(q, None).unwrap().cohomology_table().unwrap()
    }

    #[test]
    fn chain_groups_small() {
        let q = QuasiRep::free_default(&Matroid::uniform(1, 1).unwrap());
        let c = BigradedComplex::new(&q, None).unwrap();
        assert_eq!(c.chain_group(0, 1).class(), FgaClass::free(1));
        assert!(c.chain_group(1, 1).class().is_zero());
        let d = BigradedComplex::new(&QuasiRep::diagonal_u22(2, 3).unwrap(), None).unwrap();
        let want = FgaClass::from_cyclic(2, &[Int::from(2), Int::from(3)]);
        assert_eq!(d.chain_group(1, 1).class(), want);
        for i in 0..=2 {
            assert_eq!(d.chain_group(i, 0).class(), FgaClass::free(binomial(2, i)));
        }
    }

    #[test]
    fn torsion_example() {
        let t = table(&QuasiRep::diagonal_u22(4, 6).unwrap());
        assert_eq!(t.get(1, 1), FgaClass::from_cyclic(0, &[Int::from(4), Int::from(6)]));
        assert_eq!(t.get(0, 2), FgaClass::free(1));
        assert_eq!(t.get(1, 2), FgaClass::from_cyclic(0, &[Int::from(2)]));
        assert_eq!(t.nonzero().len(), 3);
    }

    #[test]
    fn uniform_small() {
        let t = table(&canonical_uniform(2, 3));
        let nz: Vec<(usize, usize)> = t.nonzero().iter().map(|x| (x.0, x.1)).collect();
        assert_eq!(nz, vec![(0, 2), (1, 1)]);
        assert_eq!(t.euler, Poly::new(vec![0, -1, 1]));
        let t = table(&canonical_uniform(1, 1));
        assert_eq!(t.nonzero(), vec![(0, 1, FgaClass::free(1))]);
        let z = table(&QuasiRep::free_default(&Matroid::uniform(0, 0).unwrap()));
        assert_eq!(z.nonzero(), vec![(0, 0, FgaClass::free(1))]);
    }

    #[test]
    fn reduced_matches_dense() {
        for q in [
            QuasiRep::diagonal_u22(2, 4).unwrap(),
            canonical_uniform(2, 3),
            QuasiRep::graphic(&crate::graph::Graph::cycle(4)).unwrap(),
        ] {
            let c = BigradedComplex::new(&q, None).unwrap();
            c.check().unwrap();
            for j in 0..=c.jmax() {
                for i in 0..=c.size() {
                    let fin = if i == 0 {
                        ModuleMap::zero(PresentedModule::zero(), c.chain_group(0, j))
                    } else {
                        c.differential(i - 1, j)
                    };
                    let fout = c.differential(i, j);
                    assert_eq!(cohomology_at(&fin, &fout).unwrap(), c.cohomology(i, j));
                }
            }
        }
    }

    #[test]
    fn basis_roundtrip() {
        let c = BigradedComplex::new(&canonical_uniform(2, 3), None).unwrap();
        for p in 0..c.chain_blocks(1, 1).len() * c.block_width(1) {
            assert_eq!(c.position_of(&c.basis_index(1, 1, p)), Some(p));
        }
    }

    #[test]
    fn json_roundtrip() {
        let t = table(&QuasiRep::diagonal_u22(2, 3).unwrap());
        let s = t.to_json();
        assert_eq!(CohomologyTable::from_json(&s).unwrap().to_json(), s);
        assert!(t.render().contains("Z/6"));
    }
}
