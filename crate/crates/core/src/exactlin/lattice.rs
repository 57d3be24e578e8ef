//! Column-style Hermite normal form and the lattice operations derived from it.
//!
//! A lattice is always given by the columns of a matrix.

use super::int::Int;
use super::matrix::IntMatrix;

/// Result of column echelon reduction: `a * v = h`.
pub(crate) struct Echelon {
    pub h: IntMatrix,
    pub v: Option<IntMatrix>,
    /// `pivots[k]` is the pivot row of column `k`; columns past `pivots.len()` are zero.
    pub pivots: Vec<usize>,
}

fn col_op(h: &mut IntMatrix, v: &mut Option<IntMatrix>, dst: usize, src: usize, c: &Int) {
    h.add_col_multiple(dst, src, c);
    if let Some(v) = v {
        v.add_col_multiple(dst, src, c);
    }
}

fn col_swap(h: &mut IntMatrix, v: &mut Option<IntMatrix>, a: usize, b: usize) {
    h.swap_cols(a, b);
    if let Some(v) = v {
        v.swap_cols(a, b);
    }
}

/// Lower echelon form by unimodular column operations, reduced to Hermite normal form.
pub(crate) fn column_echelon(a: &IntMatrix, track: bool) -> Echelon {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut v = track.then(|| IntMatrix::identity(n));
    let mut pivots = Vec::new();
    let mut k = 0;
    for r in 0..m {
        if k == n {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            let mut others = false;
            for j in k..n {
                let x = h.get(r, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some(b) if x.cmp_abs(h.get(r, b)).is_ge() => others = true,
                    Some(_) => {
                        others = true;
                        best = Some(j)
                    }
                    None => best = Some(j),
                }
            }
            let Some(b) = best else { break };
            col_swap(&mut h, &mut v, k, b);
            if !others {
                if h.get(r, k).is_negative() {
                    h.negate_col(k);
                    if let Some(v) = &mut v {
                        v.negate_col(k);
                    }
                }
                pivots.push(r);
                k += 1;
                break;
            }
            let p = h.get(r, k).clone();
            for j in k + 1..n {
                if h.get(r, j).is_zero() {
                    continue;
                }
                let q = h.get(r, j).div_floor(&p);
                col_op(&mut h, &mut v, j, k, &-q);
            }
        }
    }
    // reduce entries left of each pivot into [0, pivot)
    for (c, &r) in pivots.iter().enumerate() {
        let p = h.get(r, c).clone();
        for c2 in 0..c {
            let x = h.get(r, c2);
            if x.is_zero() {
                continue;
            }
            let q = x.div_floor(&p);
            if !q.is_zero() {
                col_op(&mut h, &mut v, c2, c, &-q);
            }
        }
    }
    Echelon { h, v, pivots }
}

/// Canonical (Hermite) basis of the column lattice of `a`.
pub fn column_basis(a: &IntMatrix) -> IntMatrix {
    let e = column_echelon(a, false);
    let k = e.pivots.len();
    e.h.select_cols(&(0..k).collect::<Vec<_>>())
}

/// Basis of `{x : a x = 0}` in Hermite form.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let n = a.cols();
    let e = column_echelon(a, true);
    let k = e.pivots.len();
    let v = e.v.unwrap();
    let ker = v.select_cols(&(k..n).collect::<Vec<_>>());
    column_basis(&ker)
}

/// Basis of `{x : f x ∈ col(l)}`.
pub fn preimage_lattice(f: &IntMatrix, l: &IntMatrix) -> IntMatrix {
    assert_eq!(f.rows(), l.rows(), "preimage: row mismatch");
    let n = f.cols();
    let lb = column_basis(l);
    let stacked = f.hstack(&lb);
    let ker = kernel_basis(&stacked);
    let proj = ker.select_rows(&(0..n).collect::<Vec<_>>());
    column_basis(&proj)
}

/// Coordinates of `y` with respect to a Hermite basis `h` (as returned by `column_basis`).
pub fn coords_in_basis(h: &IntMatrix, y: &[Int]) -> Option<Vec<Int>> {
    let pivots = hermite_pivots(h);
    let mut rest = y.to_vec();
    let mut x = vec![Int::ZERO; h.cols()];
    let mut next = 0;
    for row in 0..rest.len() {
        let cur = rest[row].clone();
        if next < pivots.len() && pivots[next] == row {
            let p = h.get(row, next);
            if !p.divides(&cur) {
                return None;
            }
            let q = cur.div_exact(p);
            if !q.is_zero() {
                for i in row..h.rows() {
                    let hv = h.get(i, next);
                    if !hv.is_zero() {
                        rest[i] = &rest[i] - &(hv * &q);
                    }
                }
            }
            x[next] = q;
            next += 1;
        } else if !cur.is_zero() {
            return None;
        }
    }
    Some(x)
}

fn hermite_pivots(h: &IntMatrix) -> Vec<usize> {
    (0..h.cols())
        .map(|c| {
            (0..h.rows())
                .find(|&r| !h.get(r, c).is_zero())
                .expect("zero column in a lattice basis")
        })
        .collect()
}

pub fn lattice_contains(h: &IntMatrix, y: &[Int]) -> bool {
    coords_in_basis(h, y).is_some()
}

/// True if every column of `a` lies in the column lattice of `b`.
pub fn lattice_subset(a: &IntMatrix, b: &IntMatrix) -> bool {
    let hb = column_basis(b);
    (0..a.cols()).all(|j| lattice_contains(&hb, &a.column(j)))
}

/// First column of `a` outside the column lattice of `b`.
pub fn first_outside(a: &IntMatrix, b: &IntMatrix) -> Option<usize> {
    let hb = column_basis(b);
    (0..a.cols()).find(|&j| !lattice_contains(&hb, &a.column(j)))
}

pub fn lattice_eq(a: &IntMatrix, b: &IntMatrix) -> bool {
    column_basis(a) == column_basis(b)
}

/// Some integer `x` with `a x = y`, if one exists.
pub fn solve(a: &IntMatrix, y: &[Int]) -> Option<Vec<Int>> {
    let e = column_echelon(a, true);
    let k = e.pivots.len();
    let h = e.h.select_cols(&(0..k).collect::<Vec<_>>());
    let z = coords_in_basis(&h, y)?;
    let v = e.v.unwrap();
    let vk = v.select_cols(&(0..k).collect::<Vec<_>>());
    Some(vk.mul_vec(&z))
}

/// Solves `a X = b` column by column.
pub fn solve_matrix(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let e = column_echelon(a, true);
    let k = e.pivots.len();
    let h = e.h.select_cols(&(0..k).collect::<Vec<_>>());
    let vk = e.v.unwrap().select_cols(&(0..k).collect::<Vec<_>>());
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        let z = coords_in_basis(&h, &b.column(j))?;
        cols.push(vk.mul_vec(&z));
    }
    Some(IntMatrix::from_columns(a.cols(), &cols))
}

/// Lattice rank (rank over the rationals).
pub fn lattice_rank(a: &IntMatrix) -> usize {
    column_echelon(a, false).pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn preimage_examples() {
        let p = preimage_lattice(&IntMatrix::from_i64(&[&[2]]), &IntMatrix::from_i64(&[&[4]]));
        assert_eq!(p, IntMatrix::from_i64(&[&[2]]));
        let p = preimage_lattice(&IntMatrix::identity(3), &IntMatrix::identity(3));
        assert_eq!(p, IntMatrix::identity(3));
        let p = preimage_lattice(&IntMatrix::from_i64(&[&[2, 3]]), &IntMatrix::zeros(1, 0));
        assert_eq!(p.cols(), 1);
        let c = p.column(0);
        assert!(c == ints(&[3, -2]) || c == ints(&[-3, 2]));
    }

    #[test]
    fn hermite_is_canonical() {
        let a = IntMatrix::from_i64(&[&[2, 4, 6], &[1, 3, 5]]);
        let b = IntMatrix::from_i64(&[&[4, 2], &[3, 1]]);
        assert!(lattice_eq(&a, &b));
        assert!(lattice_contains(&column_basis(&a), &ints(&[2, 1])));
        assert!(!lattice_contains(&column_basis(&a), &ints(&[1, 0])));
    }

    #[test]
    fn solve_roundtrip() {
        let a = IntMatrix::from_i64(&[&[3, 5], &[1, 2], &[0, 7]]);
        let y = a.mul_vec(&ints(&[4, -3]));
        let x = solve(&a, &y).unwrap();
        assert_eq!(a.mul_vec(&x), y);
        assert!(solve(&a, &ints(&[1, 0, 0])).is_none());
    }

    #[test]
    fn kernel_is_saturated() {
        let a = IntMatrix::from_i64(&[&[2, 4, 6]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
        assert!(lattice_contains(&k, &ints(&[-2, 1, 0])));
        assert!(lattice_contains(&k, &ints(&[-3, 0, 1])));
    }
}
