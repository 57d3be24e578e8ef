//! Finitely presented abelian groups and maps between them.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{rank_over_field, Field};
use super::int::Int;
use super::lattice::{
    column_basis, coords_in_basis, first_outside, lattice_subset, preimage_lattice,
};
use super::matrix::IntMatrix;
use super::snf::{chain_from_diagonal, invariant_factors, smith_parts, Track};
use super::LinAlgError;

/// `coker(relations)`: generators are the rows, each column is one relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PresentedModule {
    pub gens: usize,
    pub relations: IntMatrix,
}

impl PresentedModule {
    pub fn new(gens: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.rows(), gens, "relation matrix must have one row per generator");
        PresentedModule { gens, relations }
    }

    pub fn free(n: usize) -> Self {
        Self::new(n, IntMatrix::zeros(n, 0))
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    /// `⊕ ℤ/d_i`; a zero entry gives a free summand.
    pub fn diagonal(d: &[Int]) -> Self {
        let n = d.len();
        let cols: Vec<Vec<Int>> = d
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| {
                let mut c = vec![Int::ZERO; n];
                c[i] = x.clone();
                c
            })
            .collect();
        Self::new(n, IntMatrix::from_columns(n, &cols))
    }

    /// Same generators with extra relations appended.
    pub fn quotient(&self, extra: &IntMatrix) -> Self {
        Self::new(self.gens, self.relations.hstack(extra))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(self.gens + other.gens, self.relations.block_diag(&other.relations))
    }

    pub fn class(&self) -> FgaClass {
        cokernel_class(self)
    }

    /// True if `v` (in generator coordinates) is zero in the module.
    pub fn is_zero_element(&self, v: &[Int]) -> bool {
        let h = column_basis(&self.relations);
        coords_in_basis(&h, v).is_some()
    }

    pub fn minimize(&self) -> Minimized {
        minimize(self)
    }
}

/// Isomorphism class `ℤ^free ⊕ ℤ/d_1 ⊕ … ⊕ ℤ/d_k`, `d_i ≥ 2`, `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FgaClass {
    #[serde(rename = "free")]
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl FgaClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(r: usize) -> Self {
        FgaClass {
            free_rank: r,
            torsion: vec![],
        }
    }

    /// Canonical class from any list of cyclic orders (0 = free, 1 dropped).
    pub fn from_cyclic(free: usize, orders: &[Int]) -> Self {
        let mut free_rank = free;
        let mut d = Vec::new();
        for o in orders {
            if o.is_zero() {
                free_rank += 1;
            } else if !o.is_unit() {
                d.push(o.abs());
            }
        }
        let torsion = chain_from_diagonal(d).into_iter().filter(|x| !x.is_unit()).collect();
        FgaClass { free_rank, torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        Self::from_cyclic(self.free_rank + other.free_rank, &orders)
    }

    /// `G ⊗_ℤ H`, using `ℤ/a ⊗ ℤ/b = ℤ/gcd(a, b)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let free = self.free_rank * other.free_rank;
        let mut orders = Vec::new();
        for _ in 0..self.free_rank {
            orders.extend(other.torsion.iter().cloned());
        }
        for _ in 0..other.free_rank {
            orders.extend(self.torsion.iter().cloned());
        }
        for a in &self.torsion {
            for b in &other.torsion {
                orders.push(a.gcd(b));
            }
        }
        Self::from_cyclic(free, &orders)
    }

    /// Dimension of `G ⊗ ℤ/p` (or of `G ⊗ ℚ`).
    pub fn tensor_dim(&self, field: Field) -> usize {
        match field {
            Field::Rational => self.free_rank,
            Field::Prime(p) => {
                self.free_rank + self.torsion.iter().filter(|d| d.rem_u64(p) == 0).count()
            }
        }
    }

    /// Number of cyclic summands of order divisible by `p` (the rank of `Tor(G, ℤ/p)`).
    pub fn p_torsion_count(&self, p: u64) -> usize {
        self.torsion.iter().filter(|d| d.rem_u64(p) == 0).count()
    }

    /// Checks the canonical-form invariant.
    pub fn is_canonical(&self) -> bool {
        self.torsion.iter().all(|d| d > &Int::ONE)
            && self.torsion.windows(2).all(|w| w[0].divides(&w[1]))
    }
}

impl fmt::Display for FgaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        if !self.torsion.is_empty() {
            let t: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
            parts.push(t.join("+"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Homomorphism given by a lift on generators: `lift` is `target.gens × source.gens`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleMap {
    pub source: PresentedModule,
    pub target: PresentedModule,
    pub lift: IntMatrix,
}

impl ModuleMap {
    pub fn new(source: PresentedModule, target: PresentedModule, lift: IntMatrix) -> Self {
        assert_eq!(lift.rows(), target.gens, "lift rows must match target generators");
        assert_eq!(lift.cols(), source.gens, "lift columns must match source generators");
        ModuleMap {
            source,
            target,
            lift,
        }
    }

    pub fn zero(source: PresentedModule, target: PresentedModule) -> Self {
        let lift = IntMatrix::zeros(target.gens, source.gens);
        Self::new(source, target, lift)
    }

    pub fn identity(m: PresentedModule) -> Self {
        let lift = IntMatrix::identity(m.gens);
        Self::new(m.clone(), m, lift)
    }

    /// `Err(column)` names a source relation whose image is nonzero in the target.
    pub fn check_well_defined(&self) -> Result<(), usize> {
        let img = self.lift.mul(&self.source.relations);
        match first_outside(&img, &self.target.relations) {
            None => Ok(()),
            Some(c) => Err(c),
        }
    }

    pub fn compose(&self, after: &ModuleMap) -> ModuleMap {
        ModuleMap::new(
            self.source.clone(),
            after.target.clone(),
            after.lift.mul(&self.lift),
        )
    }

    /// First generator whose image is nonzero, if any.
    pub fn nonzero_witness(&self) -> Option<usize> {
        first_outside(&self.lift, &self.target.relations)
    }

    pub fn is_zero_map(&self) -> bool {
        self.nonzero_witness().is_none()
    }

    /// Returns an element of the kernel that is nonzero in the source, if any.
    pub fn injectivity_witness(&self) -> Option<Vec<Int>> {
        let k = preimage_lattice(&self.lift, &self.target.relations);
        first_outside(&k, &self.source.relations).map(|c| k.column(c))
    }

    pub fn is_injective(&self) -> bool {
        self.injectivity_witness().is_none()
    }

    /// Index of a target generator outside the image, if any.
    pub fn surjectivity_witness(&self) -> Option<usize> {
        let img = self.lift.hstack(&self.target.relations);
        first_outside(&IntMatrix::identity(self.target.gens), &img)
    }

    pub fn is_surjective(&self) -> bool {
        self.surjectivity_witness().is_none()
    }
}

/// Exactness of `A --f--> B --g--> C` at `B`; on failure returns an offending element of `B`.
pub fn exactness_witness(f: &ModuleMap, g: &ModuleMap) -> Option<Vec<Int>> {
    let comp = g.lift.mul(&f.lift);
    if let Some(c) = first_outside(&comp, &g.target.relations) {
        return Some(f.lift.column(c));
    }
    let ker = preimage_lattice(&g.lift, &g.target.relations);
    let img = f.lift.hstack(&f.target.relations);
    first_outside(&ker, &img).map(|c| ker.column(c))
}

pub fn exact_at(f: &ModuleMap, g: &ModuleMap) -> bool {
    exactness_witness(f, g).is_none()
}

/// Connected components of the bipartite generator/relation incidence graph.
fn relation_components(rel: &IntMatrix) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = rel.rows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    let mut col_root = vec![usize::MAX; rel.cols()];
    for c in 0..rel.cols() {
        let mut first: Option<usize> = None;
        for r in 0..n {
            if rel.get(r, c).is_zero() {
                continue;
            }
            match first {
                None => first = Some(r),
                Some(f) => {
                    let (a, b) = (find(&mut parent, f), find(&mut parent, r));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if let Some(f) = first {
            col_root[c] = f;
        }
    }
    let mut groups: HashMap<usize, (Vec<usize>, Vec<usize>)> = HashMap::new();
    let mut order = Vec::new();
    for r in 0..n {
        let root = find(&mut parent, r);
        groups
            .entry(root)
            .or_insert_with(|| {
                order.push(root);
                (vec![], vec![])
            })
            .0
            .push(r);
    }
    for (c, &f) in col_root.iter().enumerate() {
        if f != usize::MAX {
            let root = find(&mut parent, f);
            groups.get_mut(&root).unwrap().1.push(c);
        }
    }
    order.into_iter().map(|r| groups.remove(&r).unwrap()).collect()
}

pub fn cokernel_class(p: &PresentedModule) -> FgaClass {
    let mut free = 0;
    let mut orders = Vec::new();
    for (rows, cols) in relation_components(&p.relations) {
        if cols.is_empty() {
            free += rows.len();
            continue;
        }
        let block = p.relations.submatrix(&rows, &cols);
        let f = invariant_factors(&block);
        free += rows.len() - f.len();
        orders.extend(f);
    }
    FgaClass::from_cyclic(free, &orders)
}

/// Lexicographic list of strictly increasing `j`-subsets of `0..n`.
pub fn combinations(n: usize, j: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if j > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..j).collect();
    loop {
        out.push(cur.clone());
        let mut i = j;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - j + i {
                cur[i] += 1;
                for k in i + 1..j {
                    cur[k] = cur[k - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

fn subset_key(s: &[usize]) -> u128 {
    s.iter().fold(0u128, |acc, &i| acc | (1u128 << i))
}

/// Index of every `j`-subset in lexicographic order.
pub(crate) fn subset_index(n: usize, j: usize) -> HashMap<u128, usize> {
    combinations(n, j)
        .iter()
        .enumerate()
        .map(|(i, s)| (subset_key(s), i))
        .collect()
}

/// `⋀^j` of a presented module, basis `g_J` for lexicographic `J`.
pub fn exterior_power(p: &PresentedModule, j: usize) -> PresentedModule {
    let n = p.gens;
    if j == 0 {
        return PresentedModule::free(1);
    }
    if j > n {
        return PresentedModule::zero();
    }
    assert!(n <= 128, "exterior power limited to 128 generators");
    let idx = subset_index(n, j);
    let size = idx.len();
    let lower = combinations(n, j - 1);
    let mut cols: Vec<Vec<Int>> = Vec::new();
    for c in 0..p.relations.cols() {
        let r = p.relations.column(c);
        for jp in &lower {
            let mut col = vec![Int::ZERO; size];
            let mut any = false;
            for (k, rk) in r.iter().enumerate() {
                if rk.is_zero() || jp.contains(&k) {
                    continue;
                }
                let before = jp.iter().filter(|&&l| l < k).count();
                let mut s: Vec<usize> = jp.clone();
                s.push(k);
                let pos = idx[&subset_key(&s)];
                if before % 2 == 0 {
                    col[pos] += rk;
                } else {
                    col[pos] -= rk;
                }
                any = true;
            }
            if any && col.iter().any(|x| !x.is_zero()) {
                cols.push(col);
            }
        }
    }
    PresentedModule::new(size, IntMatrix::from_columns(size, &cols))
}

/// Matrix of `⋀^j a`: entry `(I, J)` is the minor on rows `I`, columns `J`.
pub fn exterior_matrix(a: &IntMatrix, j: usize) -> IntMatrix {
    let rows = combinations(a.rows(), j);
    let cols = combinations(a.cols(), j);
    if j == 0 {
        return IntMatrix::identity(1);
    }
    IntMatrix::from_fn(rows.len(), cols.len(), |r, c| a.submatrix(&rows[r], &cols[c]).determinant())
}

pub fn exterior_map(f: &ModuleMap, j: usize) -> Result<ModuleMap, LinAlgError> {
    if let Err(c) = f.check_well_defined() {
        return Err(LinAlgError::IllDefinedMap { relation: c });
    }
    Ok(ModuleMap::new(
        exterior_power(&f.source, j),
        exterior_power(&f.target, j),
        exterior_matrix(&f.lift, j),
    ))
}

/// Diagonal presentation `⊕ ℤ/d_i` (no unit factors) with mutually inverse
/// transfer matrices.
#[derive(Clone, Debug)]
pub struct Minimized {
    /// Cyclic orders; `0` marks a free generator.
    pub diag: Vec<Int>,
    /// `diag.len() × gens`: original coordinates to reduced coordinates.
    pub to_min: IntMatrix,
    /// `gens × diag.len()`: reduced generators in original coordinates.
    pub from_min: IntMatrix,
}

impl Minimized {
    pub fn module(&self) -> PresentedModule {
        PresentedModule::diagonal(&self.diag)
    }

    pub fn is_free(&self) -> bool {
        self.diag.iter().all(Int::is_zero)
    }

    pub fn class(&self) -> FgaClass {
        FgaClass::from_cyclic(0, &self.diag)
    }

    pub fn identity_free(n: usize) -> Self {
        Minimized {
            diag: vec![Int::ZERO; n],
            to_min: IntMatrix::identity(n),
            from_min: IntMatrix::identity(n),
        }
    }
}

pub fn minimize(p: &PresentedModule) -> Minimized {
    let n = p.gens;
    if p.relations.cols() == 0 || p.relations.is_zero() {
        return Minimized::identity_free(n);
    }
    let parts = smith_parts(
        &p.relations,
        Track {
            u: true,
            u_inv: true,
            v: false,
        },
    );
    let u = parts.u.unwrap();
    let ui = parts.u_inv.unwrap();
    let mut keep = Vec::new();
    let mut diag = Vec::new();
    for i in 0..n {
        let d = parts.diag.get(i).cloned().unwrap_or(Int::ZERO);
        if !d.is_unit() {
            keep.push(i);
            diag.push(d);
        }
    }
    Minimized {
        diag,
        to_min: u.select_rows(&keep),
        from_min: ui.select_cols(&keep),
    }
}

/// `⋀^j` of a minimized module: summands `ℤ/gcd(d_i : i ∈ I)` over
/// `j`-subsets `I`, with the transfer matrices raised to `⋀^j`.
pub fn exterior_minimized(m: &Minimized, j: usize) -> Minimized {
    let k = m.diag.len();
    let mut keep = Vec::new();
    let mut diag = Vec::new();
    for (pos, set) in combinations(k, j).iter().enumerate() {
        let d = set.iter().fold(Int::ZERO, |acc, &i| acc.gcd(&m.diag[i]));
        if !d.is_unit() {
            keep.push(pos);
            diag.push(d);
        }
    }
    Minimized {
        diag,
        to_min: exterior_matrix(&m.to_min, j).select_rows(&keep),
        from_min: exterior_matrix(&m.from_min, j).select_cols(&keep),
    }
}

/// `ker(f_out) / im(f_in)` at the middle module.
pub fn cohomology_at(f_in: &ModuleMap, f_out: &ModuleMap) -> Result<FgaClass, LinAlgError> {
    if f_in.target != f_out.source {
        return Err(LinAlgError::DimensionMismatch(
            "f_in.target differs from f_out.source".into(),
        ));
    }
    let comp = f_out.lift.mul(&f_in.lift);
    if let Some(c) = first_outside(&comp, &f_out.target.relations) {
        return Err(LinAlgError::NonzeroComposite {
            generator: c,
            image: comp.column(c),
        });
    }
    let mb = minimize(&f_out.source);
    let mc = minimize(&f_out.target);
    let fo = mc.to_min.mul(&f_out.lift).mul(&mb.from_min);
    let fi = mb.to_min.mul(&f_in.lift);
    Ok(reduced_cohomology(&fi, &mb.diag, &fo, &mc.diag))
}

/// Cohomology at the middle of `ℤ^a --fi--> ⊕ℤ/mid --fo--> ⊕ℤ/tgt` with diagonal modules.
pub fn reduced_cohomology(fi: &IntMatrix, mid: &[Int], fo: &IntMatrix, tgt: &[Int]) -> FgaClass {
    let n = mid.len();
    debug_assert_eq!(fi.rows(), n);
    debug_assert_eq!(fo.cols(), n);
    let mid_free = mid.iter().all(Int::is_zero);
    let tgt_free = tgt.iter().all(Int::is_zero);
    if mid_free && tgt_free {
        let rank_out = rank_over_field(fo, Field::Rational);
        let f = invariant_factors(fi);
        let free = n - rank_out - f.len();
        return FgaClass::from_cyclic(free, &f);
    }
    let tgt_rel = PresentedModule::diagonal(tgt).relations;
    let k = preimage_lattice(fo, &tgt_rel);
    let mid_rel = PresentedModule::diagonal(mid).relations;
    let img = fi.hstack(&mid_rel);
    let mut cols = Vec::with_capacity(img.cols());
    for c in 0..img.cols() {
        let y = coords_in_basis(&k, &img.column(c)).expect("image not contained in kernel");
        cols.push(y);
    }
    let y = IntMatrix::from_columns(k.cols(), &cols);
    cokernel_class(&PresentedModule::new(k.cols(), y))
}

/// Dimension of cohomology of the complex tensored with a field, from diagonal data.
pub fn reduced_cohomology_dim(
    fi: &IntMatrix,
    mid: &[Int],
    fo: &IntMatrix,
    tgt: &[Int],
    field: Field,
) -> usize {
    let keep = |d: &[Int]| -> Vec<usize> {
        d.iter()
            .enumerate()
            .filter(|(_, x)| field.kills(x))
            .map(|(i, _)| i)
            .collect()
    };
    let km = keep(mid);
    let kt = keep(tgt);
    let fo2 = fo.submatrix(&kt, &km);
    let fi2 = fi.select_rows(&km);
    km.len() - rank_over_field(&fo2, field) - rank_over_field(&fi2, field)
}

pub fn cohomology_dim_at(
    f_in: &ModuleMap,
    f_out: &ModuleMap,
    field: Field,
) -> Result<usize, LinAlgError> {
    if f_in.target != f_out.source {
        return Err(LinAlgError::DimensionMismatch(
            "f_in.target differs from f_out.source".into(),
        ));
    }
    let ma = minimize(&f_in.source);
    let mb = minimize(&f_out.source);
    let mc = minimize(&f_out.target);
    let fo = mc.to_min.mul(&f_out.lift).mul(&mb.from_min);
    let fi = mb.to_min.mul(&f_in.lift).mul(&ma.from_min);
    // source generators that die over the field contribute nothing to the image
    let ka: Vec<usize> = ma
        .diag
        .iter()
        .enumerate()
        .filter(|(_, x)| field.kills(x))
        .map(|(i, _)| i)
        .collect();
    let fi = fi.select_cols(&ka);
    Ok(reduced_cohomology_dim(&fi, &mb.diag, &fo, &mc.diag, field))
}

/// True if `a ⊆ b` as sublattices.
pub fn contains_lattice(b: &IntMatrix, a: &IntMatrix) -> bool {
    lattice_subset(a, b)
}
