//! Smith normal form and the diagonal reductions built on it.

use super::int::Int;
use super::matrix::IntMatrix;

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal with a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }
}

#[derive(Clone, Copy, Default)]
pub(crate) struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
}

pub(crate) struct SmithParts {
    pub diag: Vec<Int>,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
}

struct Work {
    a: IntMatrix,
    u: Option<IntMatrix>,
    u_inv: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(w) = &mut self.u_inv {
            w.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &Int) {
        self.a.add_row_multiple(dst, src, c);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, c);
        }
        if let Some(w) = &mut self.u_inv {
            w.add_col_multiple(src, dst, &-c);
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &Int) {
        self.a.add_col_multiple(dst, src, c);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        if let Some(u) = &mut self.u {
            u.negate_row(r);
        }
        if let Some(w) = &mut self.u_inv {
            w.negate_col(r);
        }
    }
}

fn min_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            if v.is_unit() {
                return Some((i, j));
            }
            match best {
                Some((bi, bj)) if v.cmp_abs(a.get(bi, bj)).is_ge() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Diagonalizes in place. With `chain`, enforces the divisibility chain as well.
fn diagonalize(w: &mut Work, chain: bool) -> usize {
    let (m, n) = (w.a.rows(), w.a.cols());
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_pivot(&w.a, t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                if w.a.get(i, t).is_zero() {
                    continue;
                }
                let q = w.a.get(i, t).div_floor(&p);
                w.add_row(i, t, &-q);
                if !w.a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if w.a.get(t, j).is_zero() {
                    continue;
                }
                let q = w.a.get(t, j).div_floor(&p);
                w.add_col(j, t, &-q);
                if !w.a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // pick the smallest remainder in row t / column t as the new pivot
                let mut best = (t, t);
                for i in t + 1..m {
                    let v = w.a.get(i, t);
                    if !v.is_zero() && v.cmp_abs(w.a.get(best.0, best.1)).is_lt() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    let v = w.a.get(t, j);
                    if !v.is_zero() && v.cmp_abs(w.a.get(best.0, best.1)).is_lt() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            if chain && !p.is_unit() {
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !p.divides(w.a.get(i, j))));
                if let Some(i) = bad {
                    w.add_row(t, i, &Int::ONE);
                    continue;
                }
            }
            break;
        }
        if w.a.get(t, t).is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    t
}

pub(crate) fn smith_parts(a: &IntMatrix, track: Track) -> SmithParts {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        u: track.u.then(|| IntMatrix::identity(m)),
        u_inv: track.u_inv.then(|| IntMatrix::identity(m)),
        v: track.v.then(|| IntMatrix::identity(n)),
    };
    diagonalize(&mut w, true);
    let diag = (0..m.min(n)).map(|i| w.a.get(i, i).clone()).collect();
    SmithParts {
        diag,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
    }
}

/// Smith normal form with both transforms.
pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let parts = smith_parts(
        a,
        Track {
            u: true,
            u_inv: false,
            v: true,
        },
    );
    let mut d = IntMatrix::zeros(a.rows(), a.cols());
    for (i, x) in parts.diag.iter().enumerate() {
        d.set(i, i, x.clone());
    }
    SmithDecomposition {
        u: parts.u.unwrap(),
        d,
        v: parts.v.unwrap(),
    }
}

/// Nonzero invariant factors of `a` (including units), without transforms.
pub fn invariant_factors(a: &IntMatrix) -> Vec<Int> {
    let mut w = Work {
        a: a.clone(),
        u: None,
        u_inv: None,
        v: None,
    };
    let r = diagonalize(&mut w, false);
    let diag: Vec<Int> = (0..r).map(|i| w.a.get(i, i).abs()).collect();
    chain_from_diagonal(diag)
}

/// Turns an arbitrary list of positive diagonal entries into a divisibility chain.
pub fn chain_from_diagonal(mut d: Vec<Int>) -> Vec<Int> {
    d.retain(|x| !x.is_zero());
    let k = d.len();
    for i in 0..k {
        for j in i + 1..k {
            if d[i].divides(&d[j]) {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}
