//! Direct sums of presented modules and block-sparse maps between them.
//!
//! Chain groups here are large direct sums of small summands and the maps
//! only connect a few summand pairs, so checks are run per summand (or per
//! connected group of summands) instead of on assembled dense matrices.

use std::collections::HashMap;

use super::field::Field;
use super::int::Int;
use super::lattice::{column_basis, coords_in_basis};
use super::matrix::IntMatrix;
use super::module::{
    exactness_witness, reduced_cohomology, reduced_cohomology_dim, FgaClass, Minimized,
    ModuleMap, PresentedModule,
};

#[derive(Clone, Debug)]
pub struct BlockEntry {
    pub src: usize,
    pub tgt: usize,
    /// `tgt.gens × src.gens`
    pub lift: IntMatrix,
}

/// Map between direct sums, stored as its nonzero summand-to-summand lifts.
#[derive(Clone, Debug, Default)]
pub struct BlockMap {
    pub entries: Vec<BlockEntry>,
}

impl BlockMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, src: usize, tgt: usize, lift: IntMatrix) {
        self.entries.push(BlockEntry { src, tgt, lift });
    }

    fn by_src(&self) -> HashMap<usize, Vec<&BlockEntry>> {
        let mut m: HashMap<usize, Vec<&BlockEntry>> = HashMap::new();
        for e in &self.entries {
            m.entry(e.src).or_default().push(e);
        }
        m
    }

    /// `after ∘ self`, with lifts summed per block pair.
    pub fn then(&self, after: &BlockMap) -> BlockMap {
        let idx = after.by_src();
        let mut acc: HashMap<(usize, usize), IntMatrix> = HashMap::new();
        let mut order = Vec::new();
        for e in &self.entries {
            if let Some(nexts) = idx.get(&e.tgt) {
                for n in nexts {
                    let prod = n.lift.mul(&e.lift);
                    let key = (e.src, n.tgt);
                    match acc.get_mut(&key) {
                        Some(m) => *m = m.add(&prod),
                        None => {
                            order.push(key);
                            acc.insert(key, prod);
                        }
                    }
                }
            }
        }
        let mut out = BlockMap::new();
        for key in order {
            let lift = acc.remove(&key).unwrap();
            out.push(key.0, key.1, lift);
        }
        out
    }

    /// `self - other`, merging block pairs.
    pub fn minus(&self, other: &BlockMap) -> BlockMap {
        let mut acc: HashMap<(usize, usize), IntMatrix> = HashMap::new();
        let mut order = Vec::new();
        let items = self
            .entries
            .iter()
            .map(|e| (e, false))
            .chain(other.entries.iter().map(|e| (e, true)));
        for (e, negate) in items {
            let key = (e.src, e.tgt);
            let m = if negate { e.lift.neg() } else { e.lift.clone() };
            match acc.get_mut(&key) {
                Some(x) => *x = x.add(&m),
                None => {
                    order.push(key);
                    acc.insert(key, m);
                }
            }
        }
        let mut out = BlockMap::new();
        for key in order {
            let lift = acc.remove(&key).unwrap();
            out.push(key.0, key.1, lift);
        }
        out
    }

    /// First `(src block, tgt block, src generator)` whose image is nonzero.
    pub fn nonzero_witness(&self, tgt: &[PresentedModule]) -> Option<(usize, usize, usize)> {
        let mut bases: HashMap<usize, IntMatrix> = HashMap::new();
        let mut merged: HashMap<(usize, usize), IntMatrix> = HashMap::new();
        let mut order = Vec::new();
        for e in &self.entries {
            let key = (e.src, e.tgt);
            match merged.get_mut(&key) {
                Some(x) => *x = x.add(&e.lift),
                None => {
                    order.push(key);
                    merged.insert(key, e.lift.clone());
                }
            }
        }
        for key in order {
            let lift = &merged[&key];
            if lift.is_zero() {
                continue;
            }
            let basis = bases
                .entry(key.1)
                .or_insert_with(|| column_basis(&tgt[key.1].relations));
            for c in 0..lift.cols() {
                let col = lift.column(c);
                if col.iter().all(Int::is_zero) {
                    continue;
                }
                if coords_in_basis(basis, &col).is_none() {
                    return Some((key.0, key.1, c));
                }
            }
        }
        None
    }

    /// Well-definedness per entry: first `(src, tgt, relation column)` that fails.
    pub fn ill_defined_witness(
        &self,
        src: &[PresentedModule],
        tgt: &[PresentedModule],
    ) -> Option<(usize, usize, usize)> {
        for e in &self.entries {
            let m = ModuleMap::new(src[e.src].clone(), tgt[e.tgt].clone(), e.lift.clone());
            if let Err(c) = m.check_well_defined() {
                return Some((e.src, e.tgt, c));
            }
        }
        None
    }
}

pub fn offsets(blocks: &[PresentedModule]) -> Vec<usize> {
    let mut off = Vec::with_capacity(blocks.len() + 1);
    let mut acc = 0;
    off.push(0);
    for b in blocks {
        acc += b.gens;
        off.push(acc);
    }
    off
}

pub fn assemble_module(blocks: &[PresentedModule]) -> PresentedModule {
    let n: usize = blocks.iter().map(|b| b.gens).sum();
    let m: usize = blocks.iter().map(|b| b.relations.cols()).sum();
    let mut rel = IntMatrix::zeros(n, m);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        rel.paste(r, c, &b.relations);
        r += b.gens;
        c += b.relations.cols();
    }
    PresentedModule::new(n, rel)
}

pub fn assemble_lift(src: &[PresentedModule], tgt: &[PresentedModule], map: &BlockMap) -> IntMatrix {
    let so = offsets(src);
    let to = offsets(tgt);
    let mut lift = IntMatrix::zeros(*to.last().unwrap(), *so.last().unwrap());
    for e in &map.entries {
        lift.add_block(to[e.tgt], so[e.src], &e.lift);
    }
    lift
}

pub fn assemble_map(src: &[PresentedModule], tgt: &[PresentedModule], map: &BlockMap) -> ModuleMap {
    ModuleMap::new(assemble_module(src), assemble_module(tgt), assemble_lift(src, tgt, map))
}

/// Which of the three exactness conditions failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SesFailure {
    IllDefined { map: &'static str, src_block: usize, tgt_block: usize },
    NotInjective { blocks: Vec<usize>, element: Vec<Int> },
    NotExact { blocks: Vec<usize>, element: Vec<Int> },
    NotSurjective { blocks: Vec<usize>, generator: usize },
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (x, y) = (self.find(a), self.find(b));
        if x != y {
            self.0[x] = y;
        }
    }
}

/// Exactness of `0 → A --α--> B --β--> C → 0`, checked on each connected
/// group of summands linked by nonzero lifts.
pub fn ses_exact(
    a: &[PresentedModule],
    b: &[PresentedModule],
    c: &[PresentedModule],
    alpha: &BlockMap,
    beta: &BlockMap,
) -> Result<(), SesFailure> {
    if let Some((s, t, _)) = alpha.ill_defined_witness(a, b) {
        return Err(SesFailure::IllDefined { map: "alpha", src_block: s, tgt_block: t });
    }
    if let Some((s, t, _)) = beta.ill_defined_witness(b, c) {
        return Err(SesFailure::IllDefined { map: "beta", src_block: s, tgt_block: t });
    }
    let (na, nb) = (a.len(), b.len());
    let mut dsu = Dsu((0..na + nb + c.len()).collect());
    for e in &alpha.entries {
        if !e.lift.is_zero() {
            dsu.union(e.src, na + e.tgt);
        }
    }
    for e in &beta.entries {
        if !e.lift.is_zero() {
            dsu.union(na + e.src, na + nb + e.tgt);
        }
    }
    let mut groups: HashMap<usize, (Vec<usize>, Vec<usize>, Vec<usize>)> = HashMap::new();
    let mut order = Vec::new();
    for x in 0..na + nb + c.len() {
        let r = dsu.find(x);
        let g = groups.entry(r).or_insert_with(|| {
            order.push(r);
            Default::default()
        });
        if x < na {
            g.0.push(x);
        } else if x < na + nb {
            g.1.push(x - na);
        } else {
            g.2.push(x - na - nb);
        }
    }
    for r in order {
        let (ga, gb, gc) = &groups[&r];
        let sub = |blocks: &[PresentedModule], idx: &[usize]| -> Vec<PresentedModule> {
            idx.iter().map(|&i| blocks[i].clone()).collect()
        };
        let pos = |idx: &[usize]| -> HashMap<usize, usize> {
            idx.iter().enumerate().map(|(k, &i)| (i, k)).collect()
        };
        let (pa, pb, pc) = (pos(ga), pos(gb), pos(gc));
        let mut al = BlockMap::new();
        for e in &alpha.entries {
            if let (Some(&s), Some(&t)) = (pa.get(&e.src), pb.get(&e.tgt)) {
                al.push(s, t, e.lift.clone());
            }
        }
        let mut be = BlockMap::new();
        for e in &beta.entries {
            if let (Some(&s), Some(&t)) = (pb.get(&e.src), pc.get(&e.tgt)) {
                be.push(s, t, e.lift.clone());
            }
        }
        let (ma, mb, mc) = (sub(a, ga), sub(b, gb), sub(c, gc));
        let fa = assemble_map(&ma, &mb, &al);
        let fb = assemble_map(&mb, &mc, &be);
        let mut blocks = ga.clone();
        blocks.extend(gb.iter().map(|x| x + na));
        blocks.extend(gc.iter().map(|x| x + na + nb));
        if let Some(el) = fa.injectivity_witness() {
            return Err(SesFailure::NotInjective { blocks, element: el });
        }
        if let Some(el) = exactness_witness(&fa, &fb) {
            return Err(SesFailure::NotExact { blocks, element: el });
        }
        if let Some(g) = fb.surjectivity_witness() {
            return Err(SesFailure::NotSurjective { blocks, generator: g });
        }
    }
    Ok(())
}

/// Reduced (diagonal) lift of a block map between minimized direct sums.
pub fn reduced_lift(src: &[Minimized], tgt: &[Minimized], map: &BlockMap) -> IntMatrix {
    let so = min_offsets(src);
    let to = min_offsets(tgt);
    let mut lift = IntMatrix::zeros(*to.last().unwrap(), *so.last().unwrap());
    for e in &map.entries {
        let (s, t) = (&src[e.src], &tgt[e.tgt]);
        if s.diag.is_empty() || t.diag.is_empty() {
            continue;
        }
        let r = t.to_min.mul(&e.lift).mul(&s.from_min);
        lift.add_block(to[e.tgt], so[e.src], &r);
    }
    lift
}

pub fn min_offsets(blocks: &[Minimized]) -> Vec<usize> {
    let mut off = vec![0];
    let mut acc = 0;
    for b in blocks {
        acc += b.diag.len();
        off.push(acc);
    }
    off
}

pub fn concat_diag(blocks: &[Minimized]) -> Vec<Int> {
    blocks.iter().flat_map(|b| b.diag.iter().cloned()).collect()
}

/// Cohomology at the middle of `prev --d_in--> mid --d_out--> next`.
pub fn block_cohomology(
    prev: &[Minimized],
    mid: &[Minimized],
    next: &[Minimized],
    d_in: &BlockMap,
    d_out: &BlockMap,
) -> FgaClass {
    let fi = reduced_lift(prev, mid, d_in);
    let fo = reduced_lift(mid, next, d_out);
    reduced_cohomology(&fi, &concat_diag(mid), &fo, &concat_diag(next))
}

pub fn block_cohomology_dim(
    prev: &[Minimized],
    mid: &[Minimized],
    next: &[Minimized],
    d_in: &BlockMap,
    d_out: &BlockMap,
    field: Field,
) -> usize {
    let fi = reduced_lift(prev, mid, d_in);
    let fo = reduced_lift(mid, next, d_out);
    let pd = concat_diag(prev);
    let keep: Vec<usize> = pd
        .iter()
        .enumerate()
        .filter(|(_, x)| field.kills(x))
        .map(|(i, _)| i)
        .collect();
    let fi = fi.select_cols(&keep);
    reduced_cohomology_dim(&fi, &concat_diag(mid), &fo, &concat_diag(next), field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_zero_check() {
        let z = PresentedModule::free(1);
        let mut f = BlockMap::new();
        f.push(0, 0, IntMatrix::identity(1));
        f.push(0, 1, IntMatrix::identity(1));
        let mut g = BlockMap::new();
        g.push(0, 0, IntMatrix::identity(1));
        g.push(1, 0, IntMatrix::identity(1).neg());
        let h = f.then(&g);
        assert!(h.nonzero_witness(std::slice::from_ref(&z)).is_none());
        let two = PresentedModule::diagonal(&[Int::from(2)]);
        let mut k = BlockMap::new();
        k.push(0, 0, IntMatrix::from_i64(&[&[2]]));
        assert!(k.nonzero_witness(&[two]).is_none());
        assert!(k.nonzero_witness(&[z]).is_some());
    }

    #[test]
    fn split_ses() {
        // 0 → ℤ → ℤ ⊕ ℤ → ℤ → 0, split
        let z = PresentedModule::free(1);
        let mut al = BlockMap::new();
        al.push(0, 0, IntMatrix::identity(1));
        let mut be = BlockMap::new();
        be.push(1, 0, IntMatrix::identity(1));
        assert!(ses_exact(std::slice::from_ref(&z), &[z.clone(), z.clone()], std::slice::from_ref(&z), &al, &be).is_ok());
        // ℤ --2--> ℤ → ℤ/2 is exact, but into ℤ with β = 0 it is not
        let mut a2 = BlockMap::new();
        a2.push(0, 0, IntMatrix::from_i64(&[&[2]]));
        let mut b2 = BlockMap::new();
        b2.push(0, 0, IntMatrix::identity(1));
        let z2 = PresentedModule::diagonal(&[Int::from(2)]);
        assert!(ses_exact(std::slice::from_ref(&z), std::slice::from_ref(&z), &[z2], &a2, &b2).is_ok());
        let r = ses_exact(std::slice::from_ref(&z), std::slice::from_ref(&z), std::slice::from_ref(&z), &a2, &b2);
        assert!(matches!(r, Err(SesFailure::NotExact { .. })));
    }
}
