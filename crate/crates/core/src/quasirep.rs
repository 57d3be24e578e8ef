//! Quasi-representations: flats of a matroid mapped to submodules of a
//! presented ambient module `N`.

use std::collections::BTreeMap;

use crate::exactlin::lattice::{coords_in_basis, first_outside, solve};
use crate::exactlin::{
    column_basis, rank_over_field, FgaClass, Field, Int, IntMatrix, PresentedModule,
};
use crate::graph::Graph;
use crate::matroid::{Matroid, MatroidError};
use crate::subset::Subset;

/// A submodule is stored as a matrix whose columns (in generator
/// coordinates of the ambient module) generate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiRep {
    matroid: Matroid,
    ambient: PresentedModule,
    assignment: BTreeMap<Subset, IntMatrix>,
    descriptor: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuasiRepError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("no submodule assigned to flat {0}")]
    MissingFlat(String),
    #[error("{0} is not a flat")]
    NotAFlat(String),
    #[error("generator matrix for {0} has the wrong number of rows")]
    BadShape(String),
    #[error("matrix does not represent the matroid: rank differs on {0}")]
    RankMismatch(String),
    #[error("parameters must be nonzero")]
    ZeroParameter,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("coloop hypothesis fails: {0}")]
    Hypothesis(String),
}

/// First violated quasi-representation axiom, with witness subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuasiRepViolation {
    /// `rank ρ(S) ≠ rank_M(S)`.
    Rank { s: Subset, got: usize, want: usize },
    /// `ρ(∅) ≠ 0`.
    EmptyNonzero,
    /// `ρ(E) ≠ N`.
    NotFull { s: Subset },
    /// `S1 ⊂ S2` but `ρ(S1) ⊄ ρ(S2)`.
    NotMonotone { s1: Subset, s2: Subset },
}

impl QuasiRepViolation {
    pub fn witness(&self) -> Vec<Subset> {
        match self {
            QuasiRepViolation::Rank { s, .. } => vec![*s],
            QuasiRepViolation::EmptyNonzero => vec![Subset::EMPTY],
            QuasiRepViolation::NotFull { s } => vec![*s],
            QuasiRepViolation::NotMonotone { s1, s2 } => vec![*s1, *s2],
        }
    }
}

fn unit_columns(gens: usize, idx: &[usize]) -> IntMatrix {
    let cols: Vec<Vec<Int>> = idx
        .iter()
        .map(|&i| {
            let mut c = vec![Int::ZERO; gens];
            c[i] = Int::ONE;
            c
        })
        .collect();
    IntMatrix::from_columns(gens, &cols)
}

/// Presentation of the submodule generated by `g` inside `coker(r)`, with
/// the lattice basis used for its generators.
struct SubPresentation {
    basis: IntMatrix,
    module: PresentedModule,
}

fn sub_presentation(g: &IntMatrix, r: &IntMatrix) -> SubPresentation {
    let basis = column_basis(&g.hstack(r));
    let k = basis.cols();
    let cols: Vec<Vec<Int>> = (0..r.cols())
        .map(|c| coords_in_basis(&basis, &r.column(c)).expect("relation outside lattice"))
        .collect();
    SubPresentation {
        module: PresentedModule::new(k, IntMatrix::from_columns(k, &cols)),
        basis,
    }
}

fn coords_matrix(basis: &IntMatrix, g: &IntMatrix) -> IntMatrix {
    let cols: Vec<Vec<Int>> = (0..g.cols())
        .map(|c| coords_in_basis(basis, &g.column(c)).expect("generator outside lattice"))
        .collect();
    IntMatrix::from_columns(basis.cols(), &cols)
}

impl QuasiRep {
    /// Assembles a quasi-representation from values on every flat. Axioms
    /// are not checked here; see [`QuasiRep::validate`].
    pub fn from_flats(
        matroid: Matroid,
        ambient: PresentedModule,
        assignment: BTreeMap<Subset, IntMatrix>,
        descriptor: &str,
    ) -> Result<Self, QuasiRepError> {
        for (s, g) in &assignment {
            if !matroid.is_flat(*s) {
                return Err(QuasiRepError::NotAFlat(s.display()));
            }
            if g.rows() != ambient.gens {
                return Err(QuasiRepError::BadShape(s.display()));
            }
        }
        for f in matroid.flats() {
            if !assignment.contains_key(&f) {
                return Err(QuasiRepError::MissingFlat(f.display()));
            }
        }
        Ok(QuasiRep {
            matroid,
            ambient,
            assignment,
            descriptor: descriptor.to_string(),
        })
    }

    /// `ρ(F)` spanned by the images of the elements of `F`.
    pub fn from_element_images(
        matroid: Matroid,
        ambient: PresentedModule,
        images: &IntMatrix,
        descriptor: &str,
    ) -> Result<Self, QuasiRepError> {
        if images.cols() != matroid.size() || images.rows() != ambient.gens {
            return Err(QuasiRepError::BadShape("element images".into()));
        }
        let assignment = matroid
            .flats()
            .into_iter()
            .map(|f| (f, images.select_cols(&f.to_vec())))
            .collect();
        Self::from_flats(matroid, ambient, assignment, descriptor)
    }

    /// `ρ(S) = ⟨A_e : e ∈ S⟩_ℤ`, ambient `ρ(E)` with a lattice basis as generators.
    pub fn canonical_from_matrix(m: &Matroid, a: &IntMatrix) -> Result<Self, QuasiRepError> {
        if a.cols() != m.size() {
            return Err(QuasiRepError::BadShape("matrix columns".into()));
        }
        for s in 0..1u32 << m.size() {
            let s = Subset(s);
            let r = if s.is_empty() {
                0
            } else {
                rank_over_field(&a.select_cols(&s.to_vec()), Field::Rational)
            };
            if r != m.rank(s) {
                return Err(QuasiRepError::RankMismatch(s.display()));
            }
        }
        let basis = column_basis(a);
        let images = coords_matrix(&basis, a);
        Self::from_element_images(
            m.clone(),
            PresentedModule::free(basis.cols()),
            &images,
            "canonical",
        )
    }

    /// `N = ℤ^{rank M}`, `ρ(S)` spanned by the first `rank(S)` basis vectors.
    pub fn free_default(m: &Matroid) -> Self {
        let r = m.total_rank();
        let assignment = m
            .flats()
            .into_iter()
            .map(|f| (f, unit_columns(r, &(0..m.rank(f)).collect::<Vec<_>>())))
            .collect();
        Self::from_flats(m.clone(), PresentedModule::free(r), assignment, "free_default")
            .expect("flats are complete")
    }

    /// Quasi-representation of `U_{k,n}` spanned by representing columns.
    /// For the regular cases `k ≤ 1` or `k ≥ n - 1` the matrix is the totally
    /// unimodular `[I_k | 1]`, which gives the canonical quasi-representation.
    /// Otherwise no unimodular matrix exists and the columns `(1, c, c², …)`
    /// are used; their spans need not be saturated.
    pub fn canonical_uniform(k: usize, n: usize) -> Result<Self, QuasiRepError> {
        let m = Matroid::uniform(k, n)?;
        let a = if k <= 1 || k + 1 >= n {
            IntMatrix::from_fn(k, n, |r, c| if c >= k || r == c { Int::ONE } else { Int::ZERO })
        } else {
            IntMatrix::from_fn(k, n, |r, c| Int::from((c as i64 + 1).pow(r as u32)))
        };
        Self::canonical_from_matrix(&m, &a)
    }

    /// `ρ({1}) = ⟨(a,0)⟩`, `ρ({2}) = ⟨(0,b)⟩` on `U_{2,2}`, `N = ℤ²`.
    pub fn diagonal_u22(a: i64, b: i64) -> Result<Self, QuasiRepError> {
        if a == 0 || b == 0 {
            return Err(QuasiRepError::ZeroParameter);
        }
        let m = Matroid::uniform(2, 2)?;
        let mut asg = BTreeMap::new();
        asg.insert(Subset(0), IntMatrix::zeros(2, 0));
        asg.insert(Subset(1), IntMatrix::from_i64(&[&[a], &[0]]));
        asg.insert(Subset(2), IntMatrix::from_i64(&[&[0], &[b]]));
        asg.insert(Subset(3), IntMatrix::identity(2));
        Self::from_flats(m, PresentedModule::free(2), asg, &format!("u22_diagonal({a},{b})"))
    }

    /// Graphic quasi-representation: `Ñ = ⊕_v ℤv` modulo `I_G` (the minimal
    /// vertex of every connected component), `ρ(S)` spanned by `u - v` for
    /// the edges `uv ∈ S`.
    pub fn graphic(g: &Graph) -> Result<Self, QuasiRepError> {
        if g.vertices == 0 {
            return Err(QuasiRepError::EmptyGraph);
        }
        let m = Matroid::from_graph(g);
        let nv = g.vertices;
        let ig = g.component_minima(Subset::full(g.edge_count()));
        let ambient = PresentedModule::new(nv, unit_columns(nv, &ig));
        let mut images = IntMatrix::zeros(nv, g.edge_count());
        for (k, &(u, v)) in g.edges.iter().enumerate() {
            if u != v {
                images.set(u, k, Int::ONE);
                images.set(v, k, Int::from(-1));
            }
        }
        Self::from_element_images(m, ambient, &images, "graphic")
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn ambient(&self) -> &PresentedModule {
        &self.ambient
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn set_descriptor(&mut self, d: &str) {
        self.descriptor = d.to_string();
    }

    pub fn assignment(&self) -> &BTreeMap<Subset, IntMatrix> {
        &self.assignment
    }

    /// Generators of `ρ(S) = ρ(cl S)`.
    pub fn rho(&self, s: Subset) -> &IntMatrix {
        &self.assignment[&self.matroid.closure(s)]
    }

    /// `N / ρ(S)` with the images of `N`'s generators as generators.
    pub fn quotient(&self, s: Subset) -> PresentedModule {
        self.ambient.quotient(self.rho(s))
    }

    /// Rank over the fraction field of the image of `g` in `N`.
    pub fn submodule_rank(&self, g: &IntMatrix) -> usize {
        let r = &self.ambient.relations;
        rank_over_field(&g.hstack(r), Field::Rational) - rank_over_field(r, Field::Rational)
    }

    /// True if `⟨a⟩ ⊆ ⟨b⟩` as submodules of `N`.
    pub fn submodule_leq(&self, a: &IntMatrix, b: &IntMatrix) -> bool {
        first_outside(a, &b.hstack(&self.ambient.relations)).is_none()
    }

    /// Isomorphism class of the submodule generated by `g`.
    pub fn submodule_class(&self, g: &IntMatrix) -> FgaClass {
        sub_presentation(g, &self.ambient.relations).module.class()
    }

    pub fn validate(&self) -> Result<(), QuasiRepViolation> {
        let m = &self.matroid;
        let flats = m.flats();
        for &f in &flats {
            let got = self.submodule_rank(&self.assignment[&f]);
            if got != m.rank(f) {
                return Err(QuasiRepViolation::Rank { s: f, got, want: m.rank(f) });
            }
        }
        let empty = &self.assignment[&m.closure(Subset::EMPTY)];
        if !self.submodule_leq(empty, &IntMatrix::zeros(self.ambient.gens, 0)) {
            return Err(QuasiRepViolation::EmptyNonzero);
        }
        let e = m.ground();
        if !self.submodule_leq(&IntMatrix::identity(self.ambient.gens), &self.assignment[&e]) {
            return Err(QuasiRepViolation::NotFull { s: e });
        }
        for &f in &flats {
            for x in 0..m.size() {
                if f.contains(x) {
                    continue;
                }
                let up = m.closure(f.with(x));
                if !self.submodule_leq(&self.assignment[&f], &self.assignment[&up]) {
                    return Err(QuasiRepViolation::NotMonotone { s1: f, s2: up });
                }
            }
        }
        Ok(())
    }

    /// `ρ_{∖e}(S) = ρ(S)` inside `ρ(E∖e)`; the ambient is kept when
    /// `ρ(E∖e) = N` and re-presented otherwise.
    pub fn delete(&self, e: usize) -> Result<Self, QuasiRepError> {
        let m2 = self.matroid.delete(e)?;
        let rest = self.rho(self.matroid.ground().without(e)).clone();
        let full = self.submodule_leq(&IntMatrix::identity(self.ambient.gens), &rest);
        let (ambient, basis) = if full {
            (self.ambient.clone(), None)
        } else {
            let sp = sub_presentation(&rest, &self.ambient.relations);
            (sp.module, Some(sp.basis))
        };
        let mut asg = BTreeMap::new();
        for f in m2.flats() {
            let g = self.rho(f.insert_gap(e));
            let v = match &basis {
                None => g.clone(),
                Some(b) => coords_matrix(b, g),
            };
            asg.insert(f, v);
        }
        Self::from_flats(m2, ambient, asg, &self.descriptor)
    }

    /// `ρ_{/e}(S) = ρ(S ∪ e)/ρ(e)` inside `N/ρ(e)`.
    pub fn contract(&self, e: usize) -> Result<Self, QuasiRepError> {
        let m2 = self.matroid.contract(e)?;
        let ambient = self.ambient.quotient(self.rho(Subset::singleton(e)));
        let mut asg = BTreeMap::new();
        for f in m2.flats() {
            asg.insert(f, self.rho(f.insert_gap(e).with(e)).clone());
        }
        Self::from_flats(m2, ambient, asg, &self.descriptor)
    }

    pub fn direct_sum(&self, other: &QuasiRep) -> Result<Self, QuasiRepError> {
        let m = self.matroid.direct_sum(&other.matroid)?;
        let ambient = self.ambient.direct_sum(&other.ambient);
        let n1 = self.matroid.size();
        let mut asg = BTreeMap::new();
        for f in m.flats() {
            let f1 = f.intersection(Subset::full(n1));
            let f2 = Subset(f.0 >> n1);
            asg.insert(f, self.rho(f1).block_diag(other.rho(f2)));
        }
        let d = format!("{}+{}", self.descriptor, other.descriptor);
        Self::from_flats(m, ambient, asg, &d)
    }

    /// `ρ^-(S_0) = N`; every other flat `F` of the relaxation keeps `ρ(F)`.
    pub fn relax(&self, s0: Subset) -> Result<Self, QuasiRepError> {
        let m2 = self.matroid.relax(s0)?;
        let mut asg = BTreeMap::new();
        for f in m2.flats() {
            asg.insert(f, self.rho(f).clone());
        }
        Self::from_flats(m2, self.ambient.clone(), asg, &self.descriptor)
    }

    /// Relabels elements: `e` becomes `perm[e]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let m2 = self.matroid.permute(perm);
        let asg = self
            .assignment
            .iter()
            .map(|(s, g)| {
                let t = s.elements().fold(Subset::EMPTY, |acc, e| acc.with(perm[e]));
                (t, g.clone())
            })
            .collect();
        QuasiRep {
            matroid: m2,
            ambient: self.ambient.clone(),
            assignment: asg,
            descriptor: self.descriptor.clone(),
        }
    }

    /// `N / ρ(E∖e)` is torsion-free, i.e. `ρ(E∖e)` is saturated in `N`.
    pub fn saturation_test(&self, e: usize) -> bool {
        let rest = self.rho(self.matroid.ground().without(e));
        self.ambient.quotient(rest).class().torsion.is_empty()
    }

    /// `N = ρ(E∖e) ⊕ ρ(e)` with `ρ(e)` free of rank one.
    pub fn splitting_test(&self, e: usize) -> bool {
        let rest = self.rho(self.matroid.ground().without(e));
        let re = self.rho(Subset::singleton(e));
        let ce = self.submodule_class(re);
        if ce != FgaClass::free(1) {
            return false;
        }
        if !self.submodule_leq(&IntMatrix::identity(self.ambient.gens), &rest.hstack(re)) {
            return false;
        }
        // a surjection A ⊕ B → N between isomorphic groups is injective
        self.submodule_class(rest).direct_sum(&ce) == self.ambient.class()
    }

    /// Re-presents `N` as `ρ(E∖e) ⊕ ⟨w⟩` with `ρ(e) = ⟨w⟩` as the last
    /// generator. Requires both coloop hypotheses.
    pub fn coloop_adapted(&self, e: usize) -> Result<(Self, usize), QuasiRepError> {
        if !self.matroid.is_coloop(e) {
            return Err(QuasiRepError::Hypothesis(format!("element {} is not a coloop", e + 1)));
        }
        if !self.saturation_test(e) {
            return Err(QuasiRepError::Hypothesis("rho(E\\e) is not saturated in N".into()));
        }
        if !self.splitting_test(e) {
            return Err(QuasiRepError::Hypothesis("N does not split as rho(E\\e) + rho(e)".into()));
        }
        let r = &self.ambient.relations;
        let rest = sub_presentation(self.rho(self.matroid.ground().without(e)), r);
        let single = sub_presentation(self.rho(Subset::singleton(e)), r);
        let mn = single.module.minimize();
        debug_assert_eq!(mn.diag.len(), 1);
        let w = single.basis.mul(&mn.from_min);
        let k = rest.basis.cols();
        let ambient = PresentedModule::new(
            k + 1,
            rest.module.relations.vstack(&IntMatrix::zeros(1, rest.module.relations.cols())),
        );
        let sys = rest.basis.hstack(&w).hstack(r);
        let mut asg = BTreeMap::new();
        for (f, g) in &self.assignment {
            let mut cols = Vec::with_capacity(g.cols());
            for c in 0..g.cols() {
                let x = solve(&sys, &g.column(c)).expect("splitting guarantees a solution");
                cols.push(x[..k + 1].to_vec());
            }
            asg.insert(*f, IntMatrix::from_columns(k + 1, &cols));
        }
        let q = Self::from_flats(self.matroid.clone(), ambient, asg, &self.descriptor)?;
        Ok((q, k))
    }

    /// Deletion of a coloop from a [`coloop_adapted`](Self::coloop_adapted)
    /// quasi-representation: the ambient is the first `k` generators.
    pub fn adapted_deletion(&self, e: usize, k: usize) -> Result<Self, QuasiRepError> {
        let m2 = self.matroid.delete(e)?;
        let rel = self.ambient.relations.select_rows(&(0..k).collect::<Vec<_>>());
        let ambient = PresentedModule::new(k, rel);
        let rows: Vec<usize> = (0..k).collect();
        let mut asg = BTreeMap::new();
        for f in m2.flats() {
            asg.insert(f, self.rho(f.insert_gap(e)).select_rows(&rows));
        }
        Self::from_flats(m2, ambient, asg, &self.descriptor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(k: usize, n: usize) -> Matroid {
        Matroid::uniform(k, n).unwrap()
    }

    #[test]
    fn canonical_identity() {
        let q = QuasiRep::canonical_from_matrix(&u(2, 2), &IntMatrix::identity(2)).unwrap();
        assert_eq!(q.rho(Subset(1)), &IntMatrix::from_i64(&[&[1], &[0]]));
        assert_eq!(q.rho(Subset(2)), &IntMatrix::from_i64(&[&[0], &[1]]));
        assert!(q.validate().is_ok());
    }

    #[test]
    fn canonical_rank_mismatch() {
        let r = QuasiRep::canonical_from_matrix(&u(2, 2), &IntMatrix::from_i64(&[&[1, 2]]));
        assert!(matches!(r, Err(QuasiRepError::RankMismatch(_))));
    }

    #[test]
    fn canonical_loop_column() {
        let m = Matroid::from_matrix(&IntMatrix::from_i64(&[&[1, 0]])).unwrap();
        let q = QuasiRep::canonical_from_matrix(&m, &IntMatrix::from_i64(&[&[1, 0]])).unwrap();
        assert!(q.validate().is_ok());
        assert_eq!(q.submodule_rank(q.rho(Subset(2))), 0);
    }

    #[test]
    fn free_default_cases() {
        let q = QuasiRep::free_default(&Matroid::non_pappus());
        assert_eq!(q.ambient().gens, 3);
        assert!(q.validate().is_ok());
        let z = QuasiRep::free_default(&u(0, 3));
        assert_eq!(z.ambient().gens, 0);
        assert!(z.validate().is_ok());
    }

    #[test]
    fn diagonal_cases() {
        let q = QuasiRep::diagonal_u22(2, 3).unwrap();
        assert_eq!(q.rho(Subset(1)), &IntMatrix::from_i64(&[&[2], &[0]]));
        assert!(q.validate().is_ok());
        assert!(QuasiRep::diagonal_u22(0, 1).is_err());
    }

    #[test]
    fn graphic_cases() {
        let q = QuasiRep::graphic(&Graph::complete(3)).unwrap();
        assert!(q.validate().is_ok());
        assert_eq!(q.ambient().class(), FgaClass::free(2));
        let q1 = QuasiRep::graphic(&Graph::path(2)).unwrap();
        assert_eq!(q1.ambient().class(), FgaClass::free(1));
        let two = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let q2 = QuasiRep::graphic(&two).unwrap();
        assert_eq!(q2.ambient().relations.cols(), 2);
        assert_eq!(q2.ambient().class(), FgaClass::free(2));
        assert!(q2.validate().is_ok());
    }

    #[test]
    fn remark_rho2_readings() {
        // element-generated: ρ₂(E) = ⟨e₁⟩ has rank 1 on {1,2}
        let images = IntMatrix::from_i64(&[&[1, 1], &[0, 0]]);
        let q = QuasiRep::from_element_images(u(2, 2), PresentedModule::free(2), &images, "rho2")
            .unwrap();
        let v = q.validate().unwrap_err();
        assert_eq!(v.witness(), vec![Subset(3)]);
        // flat-wise with ρ₂(E) = N satisfies every axiom
        let mut asg = BTreeMap::new();
        asg.insert(Subset(0), IntMatrix::zeros(2, 0));
        asg.insert(Subset(1), IntMatrix::from_i64(&[&[1], &[0]]));
        asg.insert(Subset(2), IntMatrix::from_i64(&[&[1], &[0]]));
        asg.insert(Subset(3), IntMatrix::identity(2));
        let q = QuasiRep::from_flats(u(2, 2), PresentedModule::free(2), asg, "rho2").unwrap();
        assert!(q.validate().is_ok());
    }

    #[test]
    fn not_full_detected() {
        let mut asg = BTreeMap::new();
        asg.insert(Subset(0), IntMatrix::zeros(1, 0));
        asg.insert(Subset(1), IntMatrix::from_i64(&[&[2]]));
        let q = QuasiRep::from_flats(u(1, 1), PresentedModule::free(1), asg, "x").unwrap();
        assert_eq!(q.validate(), Err(QuasiRepViolation::NotFull { s: Subset(1) }));
    }

    #[test]
    fn operations() {
        let q = QuasiRep::canonical_from_matrix(&u(2, 2), &IntMatrix::identity(2)).unwrap();
        let c = q.contract(0).unwrap();
        assert_eq!(c.ambient().class(), FgaClass::free(1));
        assert!(c.validate().is_ok());
        assert!(c.submodule_leq(&IntMatrix::identity(2), c.rho(Subset(1))));
        let f = QuasiRep::free_default(&u(2, 3));
        let d = f.delete(2).unwrap();
        let g = QuasiRep::free_default(&u(2, 2));
        assert_eq!(d.assignment(), g.assignment());
        let k4 = Matroid::from_graph(&Graph::complete(4));
        let fk = QuasiRep::free_default(&k4);
        let t = k4.circuit_hyperplanes()[0];
        let r = fk.relax(t).unwrap();
        assert!(r.validate().is_ok());
        assert!(r.submodule_leq(&IntMatrix::identity(3), r.rho(t)));
        let s = q.direct_sum(&f).unwrap();
        assert!(s.validate().is_ok());
        assert_eq!(s.ambient().gens, 4);
    }

    #[test]
    fn coloop_hypotheses() {
        let q = QuasiRep::canonical_from_matrix(&u(2, 2), &IntMatrix::identity(2)).unwrap();
        assert!(q.saturation_test(0) && q.splitting_test(0));
        let (a, k) = q.coloop_adapted(0).unwrap();
        assert_eq!(k, 1);
        assert!(a.validate().is_ok());
        // ρ(E∖e) = ⟨2e₁⟩ is not saturated
        let mut asg = BTreeMap::new();
        asg.insert(Subset(0), IntMatrix::zeros(2, 0));
        asg.insert(Subset(1), IntMatrix::from_i64(&[&[0], &[1]]));
        asg.insert(Subset(2), IntMatrix::from_i64(&[&[2], &[0]]));
        asg.insert(Subset(3), IntMatrix::identity(2));
        let bad = QuasiRep::from_flats(u(2, 2), PresentedModule::free(2), asg, "x").unwrap();
        assert!(bad.validate().is_ok());
        assert!(!bad.saturation_test(0));
        assert!(matches!(bad.coloop_adapted(0), Err(QuasiRepError::Hypothesis(_))));
    }
}
