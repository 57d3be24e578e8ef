//! Central hyperplane arrangements over ℚ and their characteristic complex
//! `C^{S,j} = ⋀^j H_S`, `H_S = ⋂_{p∈S} ν_p^⊥`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::chromatic::exact_sequence_defect;
use crate::cohomology::BigradedComplex;
use crate::exactlin::lattice::coords_in_basis;
use crate::exactlin::{binomial, column_basis, combinations, Field, Int, IntMatrix, PresentedModule};
use crate::graph::Graph;
use crate::matroid::{Matroid, MatroidError};
use crate::quasirep::QuasiRep;
use crate::subset::Subset;

type Q = BigRational;
type QMat = Vec<Vec<Q>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrangement {
    pub dim: usize,
    pub normals: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("normal {0} has the wrong length")]
    BadNormal(usize),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("center has dimension {0}, expected 1")]
    CenterDimension(usize),
}

fn q(x: i64) -> Q {
    Q::from_integer(x.into())
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(a: &mut QMat, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][c].recip();
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..a[row].len() {
                    let v = &a[row][k] * &f;
                    a[r][k] -= v;
                }
            }
        }
        pivots.push(c);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    pivots
}

pub fn rank_q(a: &QMat, cols: usize) -> usize {
    let mut m = a.clone();
    rref(&mut m, cols).len()
}

fn det_q(mut a: QMat) -> Q {
    let n = a.len();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..n {
            if !a[r][c].is_zero() {
                let f = &a[r][c] / &a[c][c];
                for k in c..n {
                    let v = &a[c][k] * &f;
                    a[r][k] -= v;
                }
            }
        }
    }
    det
}

fn mat_mul(a: &QMat, b: &QMat, inner: usize, cols: usize) -> QMat {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).fold(Q::zero(), |acc, k| acc + &row[k] * &b[k][c]))
                .collect()
        })
        .collect()
}

fn transpose(a: &QMat, rows: usize, cols: usize) -> QMat {
    (0..cols).map(|c| (0..rows).map(|r| a[r][c].clone()).collect()).collect()
}

/// Solves `g x = b` for invertible `g` (`n × n`), `b` with `m` columns.
fn solve_q(g: &QMat, b: &QMat, n: usize, m: usize) -> QMat {
    let mut aug: QMat = (0..n)
        .map(|r| g[r].iter().cloned().chain(b[r].iter().cloned()).collect())
        .collect();
    rref(&mut aug, n);
    aug.into_iter().map(|row| row[n..n + m].to_vec()).collect()
}

/// `⋀^j` of an `r × c` matrix: minors on lexicographic `j`-subsets.
fn exterior_q(a: &QMat, rows: usize, cols: usize, j: usize) -> QMat {
    let rs = combinations(rows, j);
    let cs = combinations(cols, j);
    rs.iter()
        .map(|ri| {
            cs.iter()
                .map(|ci| det_q(ri.iter().map(|&r| ci.iter().map(|&c| a[r][c].clone()).collect()).collect()))
                .collect()
        })
        .collect()
}

/// Per-subset data: basis of `H_S` as columns of an `r × d` matrix.
struct Flat {
    basis: QMat,
    d: usize,
}

impl Arrangement {
    pub fn new(dim: usize, normals: Vec<Vec<i64>>) -> Result<Self, ArrangementError> {
        if let Some(k) = normals.iter().position(|v| v.len() != dim) {
            return Err(ArrangementError::BadNormal(k));
        }
        Ok(Arrangement { dim, normals })
    }

    /// Coordinate hyperplanes `x_k = 0` in ℚ^n.
    pub fn boolean(n: usize) -> Self {
        let normals = (0..n).map(|k| (0..n).map(|c| i64::from(c == k)).collect()).collect();
        Arrangement { dim: n, normals }
    }

    /// `x_u = x_v` for every edge, essentialized by setting the last
    /// coordinate to zero.
    pub fn graphic(g: &Graph) -> Self {
        let r = g.vertices.saturating_sub(1);
        let normals = g
            .edges
            .iter()
            .map(|&(u, v)| {
                let mut nu = vec![0i64; r];
                if u < r {
                    nu[u] += 1;
                }
                if v < r {
                    nu[v] -= 1;
                }
                nu
            })
            .collect();
        Arrangement { dim: r, normals }
    }

    pub fn size(&self) -> usize {
        self.normals.len()
    }

    /// Normals as the columns of an integer matrix.
    pub fn normal_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.dim, self.size(), |r, c| Int::from(self.normals[c][r]))
    }

    pub fn matroid(&self) -> Result<Matroid, ArrangementError> {
        Ok(Matroid::from_matrix(&self.normal_matrix())?)
    }

    pub fn center_dim(&self) -> usize {
        let rows: QMat = self.normals.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
        self.dim - rank_q(&rows, self.dim)
    }

    pub fn is_essential(&self) -> bool {
        self.center_dim() == 0
    }

    /// Basis of `H_S` from the reduced echelon form of the normals in `S`.
    fn flat(&self, s: Subset) -> Flat {
        let r = self.dim;
        let mut rows: QMat = s.elements().map(|p| self.normals[p].iter().map(|&x| q(x)).collect()).collect();
        let pivots = rref(&mut rows, r);
        let free: Vec<usize> = (0..r).filter(|c| !pivots.contains(c)).collect();
        let mut basis = vec![vec![Q::zero(); free.len()]; r];
        for (k, &f) in free.iter().enumerate() {
            basis[f][k] = Q::one();
            for (row, &p) in pivots.iter().enumerate() {
                basis[p][k] = -rows[row][f].clone();
            }
        }
        Flat { basis, d: free.len() }
    }

    /// Matrix of the orthogonal projection `H_S → H_T` in the chosen bases.
    fn projection(&self, from: &Flat, to: &Flat) -> QMat {
        let r = self.dim;
        let bt = transpose(&to.basis, r, to.d);
        let gram = mat_mul(&bt, &to.basis, r, to.d);
        let rhs = mat_mul(&bt, &from.basis, r, from.d);
        solve_q(&gram, &rhs, to.d, from.d)
    }

    pub fn complex(&self) -> ArrComplex {
        let n = self.size();
        let flats: Vec<Flat> = (0..1u32 << n).map(|s| self.flat(Subset(s))).collect();
        let mut by_size = vec![Vec::new(); n + 1];
        let mut pos = vec![0; 1 << n];
        for s in 0..1u32 << n {
            let k = s.count_ones() as usize;
            pos[s as usize] = by_size[k].len();
            by_size[k].push(Subset(s));
        }
        let mut proj = std::collections::HashMap::new();
        for s in 0..1u32 << n {
            for e in 0..n {
                if s >> e & 1 == 0 {
                    let t = s | 1 << e;
                    proj.insert((s, e), self.projection(&flats[s as usize], &flats[t as usize]));
                }
            }
        }
        ArrComplex {
            n,
            dim: self.dim,
            dims: flats.iter().map(|f| f.d).collect(),
            by_size,
            pos,
            proj,
        }
    }
}

/// The rational complex `⊕_{|S|=i} ⋀^j H_S` with differentials
/// `ε^{S,e} ⋀^j(projection)`.
pub struct ArrComplex {
    n: usize,
    dim: usize,
    dims: Vec<usize>,
    by_size: Vec<Vec<Subset>>,
    pos: Vec<usize>,
    proj: std::collections::HashMap<(u32, usize), QMat>,
}

impl ArrComplex {
    pub fn rank(&self, i: usize, j: usize) -> usize {
        self.by_size
            .get(i)
            .map_or(0, |v| v.iter().map(|s| binomial(self.dims[s.0 as usize], j)).sum())
    }

    fn offsets(&self, i: usize, j: usize) -> Vec<usize> {
        let mut off = vec![0];
        for s in &self.by_size[i] {
            let last = *off.last().unwrap();
            off.push(last + binomial(self.dims[s.0 as usize], j));
        }
        off
    }

    /// Dense matrix of `d^{i,j}`.
    pub fn differential(&self, i: usize, j: usize) -> QMat {
        let rows = self.rank(i + 1, j);
        let cols = self.rank(i, j);
        let mut m = vec![vec![Q::zero(); cols]; rows];
        if i >= self.n {
            return m;
        }
        let so = self.offsets(i, j);
        let to = self.offsets(i + 1, j);
        for (a, &s) in self.by_size[i].iter().enumerate() {
            for e in 0..self.n {
                if s.contains(e) {
                    continue;
                }
                let t = s.with(e);
                let b = self.pos[t.0 as usize];
                let p = &self.proj[&(s.0, e)];
                let ext = exterior_q(p, self.dims[t.0 as usize], self.dims[s.0 as usize], j);
                let sign = s.epsilon(e);
                for (r, row) in ext.iter().enumerate() {
                    for (c, x) in row.iter().enumerate() {
                        if !x.is_zero() {
                            let v = if sign < 0 { -x.clone() } else { x.clone() };
                            m[to[b] + r][so[a] + c] += v;
                        }
                    }
                }
            }
        }
        m
    }

    /// `d^{i+1,j} d^{i,j} = 0` for every cell.
    pub fn d_squared_zero(&self) -> bool {
        for j in 0..=self.dim {
            for i in 0..self.n.saturating_sub(1) {
                let a = self.differential(i, j);
                let b = self.differential(i + 1, j);
                let prod = mat_mul(&b, &a, self.rank(i + 1, j), self.rank(i, j));
                if prod.iter().flatten().any(|x| !x.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    pub fn cohomology_dim(&self, i: usize, j: usize) -> usize {
        let out = rank_q(&self.differential(i, j), self.rank(i, j));
        let inc = if i == 0 { 0 } else { rank_q(&self.differential(i - 1, j), self.rank(i - 1, j)) };
        self.rank(i, j) - out - inc
    }

    /// Dimension table indexed `[i][j]`, `0 ≤ j ≤ dim`.
    pub fn dimension_table(&self) -> Vec<Vec<usize>> {
        (0..=self.n)
            .map(|i| (0..=self.dim).map(|j| self.cohomology_dim(i, j)).collect())
            .collect()
    }
}

/// Dimensions of `H(M(A), ρ) ⊗ ℚ` with `ρ(S) = ⟨ν_p : p ∈ S⟩`, indexed `[i][j]`.
///
/// The ambient is `ℤ^dim`, so `ρ(E)` is only a full-rank sublattice (or, for
/// non-essential arrangements, not of full rank); the complex is built in raw
/// mode and only rational dimensions are read off.
pub fn matroid_side(a: &Arrangement) -> Result<Vec<Vec<usize>>, ArrangementError> {
    let m = a.matroid()?;
    let qr = QuasiRep::from_element_images(
        m,
        PresentedModule::free(a.dim),
        &a.normal_matrix(),
        "arrangement",
    )
    .expect("shapes agree");
    let c = BigradedComplex::new_raw(&qr, Some(a.dim));
    let t = c.dimension_table(Field::Rational).expect("monotone by construction");
    Ok((0..=a.size())
        .map(|i| (0..=a.dim).map(|j| t.rank(i, j)).collect())
        .collect())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Comparison {
    pub arrangement: Vec<Vec<usize>>,
    pub matroid: Vec<Vec<usize>>,
    pub d_squared_zero: bool,
    /// First `(i, j)` where the dimensions differ.
    pub mismatch: Option<(usize, usize)>,
}

impl Comparison {
    pub fn pass(&self) -> bool {
        self.d_squared_zero && self.mismatch.is_none()
    }
}

pub fn compare(a: &Arrangement) -> Result<Comparison, ArrangementError> {
    let c = a.complex();
    let left = c.dimension_table();
    let right = matroid_side(a)?;
    let mut mismatch = None;
    'outer: for i in 0..left.len() {
        for j in 0..left[i].len() {
            if left[i][j] != right[i][j] {
                mismatch = Some((i, j));
                break 'outer;
            }
        }
    }
    Ok(Comparison { arrangement: left, matroid: right, d_squared_zero: c.d_squared_zero(), mismatch })
}

/// The essential arrangement `A_ess` of `A` written in integer coordinates
/// of the lattice spanned by the normals.
pub fn essentialize(a: &Arrangement) -> Arrangement {
    let m = a.normal_matrix();
    let basis = column_basis(&m);
    let normals = (0..m.cols())
        .map(|c| {
            coords_in_basis(&basis, &m.column(c))
                .expect("normal lies in its own lattice")
                .iter()
                .map(|x| x.to_i64().expect("small coordinates"))
                .collect()
        })
        .collect();
    Arrangement { dim: basis.cols(), normals }
}

/// For a one-dimensional center, `H_S(A) = H_S(A_ess) ⊕ ℚ`, so the complexes
/// fit in `0 → C^{•,j}(A_ess) → C^{•,j}(A) → C^{•,j-1}(A_ess) → 0`. Checks the
/// forced ranks of the long exact sequence and the splitting
/// `dim H^{i,j}(A) = dim H^{i,j}(A_ess) + dim H^{i,j-1}(A_ess)`.
pub fn essentialization_check(a: &Arrangement) -> Result<bool, ArrangementError> {
    let cd = a.center_dim();
    if cd != 1 {
        return Err(ArrangementError::CenterDimension(cd));
    }
    let big = a.complex().dimension_table();
    let ess = essentialize(a).complex().dimension_table();
    let get = |t: &Vec<Vec<usize>>, i: usize, j: isize| -> usize {
        if j < 0 {
            0
        } else {
            t.get(i).and_then(|r| r.get(j as usize)).copied().unwrap_or(0)
        }
    };
    let n = a.size();
    for j in 0..=a.dim as isize {
        let mut seq = Vec::new();
        for i in 0..=n {
            seq.push(get(&ess, i, j));
            seq.push(get(&big, i, j));
            seq.push(get(&ess, i, j - 1));
        }
        if exact_sequence_defect(&seq).is_some() {
            return Ok(false);
        }
        for i in 0..=n {
            if get(&big, i, j) != get(&ess, i, j) + get(&ess, i, j - 1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_two() {
        let a = Arrangement::boolean(2);
        let c = a.complex();
        assert_eq!(c.rank(2, 0), 1);
        assert_eq!(c.rank(2, 1), 0);
        let cmp = compare(&a).unwrap();
        assert!(cmp.pass());
        // concentrated like U_{2,2}: only H^{0,2}
        assert_eq!(cmp.arrangement[0][2], 1);
        assert_eq!(cmp.arrangement.iter().flatten().sum::<usize>(), 1);
    }

    #[test]
    fn empty_arrangement() {
        let a = Arrangement::new(1, vec![]).unwrap();
        let t = a.complex().dimension_table();
        assert_eq!(t, vec![vec![1, 1]]);
    }

    #[test]
    fn graphic_triangle() {
        let a = Arrangement::graphic(&Graph::complete(3));
        assert!(a.is_essential());
        let cmp = compare(&a).unwrap();
        assert!(cmp.pass());
        assert_eq!(cmp.arrangement[0][2], 1);
        assert_eq!(cmp.arrangement[1][1], 1);
    }

    #[test]
    fn center_one() {
        let a = Arrangement::new(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]).unwrap();
        assert_eq!(a.center_dim(), 1);
        assert!(compare(&a).unwrap().pass());
        assert!(essentialization_check(&a).unwrap());
        assert!(essentialization_check(&Arrangement::boolean(2)).is_err());
    }

    #[test]
    fn skew_normals() {
        // non-orthogonal normals make the Gram solve non-diagonal
        let a = Arrangement::new(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1], vec![1, 2, 3]]).unwrap();
        assert!(a.complex().d_squared_zero());
        assert!(compare(&a).unwrap().pass());
    }
}
