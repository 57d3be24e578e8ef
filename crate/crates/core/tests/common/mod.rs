//! Independent mod-p oracle. Everything here uses its own small integer and
//! finite-field elimination so that it shares no arithmetic with the crate.
//!
//! A complex of presented modules `C^k = coker(R_k)` is replaced by the free
//! total complex `T^k = F_k ⊕ F'_{k+1}`, `d(x, y) = (Dx + Ry, -Ey)` with
//! `R_{k+1} E_k = D_k R_k` and each `R_k` injective. `T` has the cohomology of
//! `C`, so by universal coefficients
//! `dim H^k(T ⊗ F_p) = free(H^k) + t_p(H^k) + t_p(H^{k+1})`.

#![allow(dead_code)]

use matcoh::cohomology::CohomologyTable;
use matcoh::exactlin::Int;
use matcoh::graph::Graph;
use matcoh::quasirep::QuasiRep;
use matcoh::subset::Subset;

pub const PRIMES: [u64; 5] = [2, 3, 5, 7, 11];

type Col = Vec<i128>;

fn int(x: &Int) -> i128 {
    x.to_i64().expect("oracle inputs are small") as i128
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Echelon basis of the lattice spanned by `cols` in `ℤ^rows`: returned
/// columns have strictly increasing pivot rows.
pub fn lattice_basis(rows: usize, mut cols: Vec<Col>) -> Vec<Col> {
    let mut basis: Vec<Col> = Vec::new();
    for r in 0..rows {
        let idx: Vec<usize> = (0..cols.len()).filter(|&c| cols[c][r] != 0).collect();
        if idx.is_empty() {
            continue;
        }
        let mut piv = cols[idx[0]].clone();
        for &c in &idx[1..] {
            let other = cols[c].clone();
            let (g, s, t) = egcd(piv[r], other[r]);
            let (u, v) = (piv[r] / g, other[r] / g);
            let next: Col = piv.iter().zip(&other).map(|(a, b)| s * a + t * b).collect();
            cols[c] = piv.iter().zip(&other).map(|(a, b)| v * a - u * b).collect();
            piv = next;
        }
        cols.remove(idx[0]);
        cols.retain(|c| c.iter().any(|&x| x != 0));
        basis.push(piv);
    }
    basis
}

fn pivot(c: &Col) -> usize {
    c.iter().position(|&x| x != 0).unwrap()
}

/// Coordinates of `v` in an echelon basis; panics if `v` is outside.
pub fn echelon_solve(basis: &[Col], v: &Col) -> Col {
    let mut v = v.clone();
    let mut out = vec![0; basis.len()];
    for (k, b) in basis.iter().enumerate() {
        let p = pivot(b);
        assert_eq!(v[p] % b[p], 0, "vector not in lattice");
        let q = v[p] / b[p];
        out[k] = q;
        for (x, y) in v.iter_mut().zip(b) {
            *x -= q * y;
        }
    }
    assert!(v.iter().all(|&x| x == 0), "vector not in lattice");
    out
}

/// Rank over `F_p` by Gaussian elimination on a dense row-major matrix.
pub fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let inv = |a: u64| -> u64 {
        let mut r = 1u64;
        let (mut b, mut e) = (a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    for x in m.iter_mut().flatten() {
        *x %= p;
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pr);
        let iv = inv(m[rank][c]);
        for x in m[rank].iter_mut() {
            *x = *x * iv % p;
        }
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    let sub = f * m[rank][k] % p;
                    m[r][k] = (m[r][k] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..n {
            cur.push(a);
            go(a + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Relations of `⋀^j coker(R)` on the basis `e_J`: all `r ∧ e_K`.
fn exterior_relations(g: usize, j: usize, rel: &[Col]) -> Vec<Col> {
    if j == 0 {
        return vec![];
    }
    let basis = combos(g, j);
    let index = |v: &Vec<usize>| basis.iter().position(|b| b == v).unwrap();
    let mut out = Vec::new();
    for r in rel {
        for k in combos(g, j - 1) {
            let mut col = vec![0i128; basis.len()];
            for (a, &ra) in r.iter().enumerate() {
                if ra == 0 || k.contains(&a) {
                    continue;
                }
                let below = k.iter().filter(|&&x| x < a).count();
                let mut jset = k.clone();
                jset.push(a);
                jset.sort_unstable();
                let sign = if below % 2 == 0 { 1 } else { -1 };
                col[index(&jset)] += sign * ra;
            }
            out.push(col);
        }
    }
    out
}

fn sign(s: Subset, e: usize) -> i128 {
    if (s.0 & ((1u32 << e) - 1)).count_ones() % 2 == 1 {
        -1
    } else {
        1
    }
}

fn subsets_of_size(n: usize, i: usize) -> Vec<Subset> {
    (0u32..(1 << n)).filter(|s| s.count_ones() as usize == i).map(Subset).collect()
}

/// Free total complex of one `j`-row: for every `k`, the dense integer
/// matrix of `d: T^k → T^{k+1}` for `k = -1..=n`.
struct Total {
    dims: Vec<usize>,
    maps: Vec<Vec<Vec<i128>>>,
}

/// Degree `k` of the total complex is stored at index `k + 1`.
fn total_complex(n: usize, f: &[usize], fp: &[usize], d: &dyn Fn(usize) -> Vec<Vec<i128>>, r: &dyn Fn(usize) -> Vec<Vec<i128>>, e: &dyn Fn(usize) -> Vec<Vec<i128>>) -> Total {
    // T^k = F_k ⊕ F'_{k+1}, k = -1..=n
    let fk = |k: isize| if k < 0 || k as usize > n { 0 } else { f[k as usize] };
    let fpk = |k: isize| if k < 0 || k as usize > n { 0 } else { fp[k as usize] };
    let mut dims = Vec::new();
    let mut maps = Vec::new();
    for k in -1..=(n as isize) {
        dims.push(fk(k) + fpk(k + 1));
    }
    for k in -1..(n as isize) {
        let (a0, a1) = (fk(k), fpk(k + 1));
        let (b0, b1) = (fk(k + 1), fpk(k + 2));
        let mut m = vec![vec![0i128; a0 + a1]; b0 + b1];
        if k >= 0 {
            let dk = d(k as usize);
            for (row, line) in dk.iter().enumerate() {
                for (col, &v) in line.iter().enumerate() {
                    m[row][col] = v;
                }
            }
        }
        let rk = r((k + 1) as usize);
        for (row, line) in rk.iter().enumerate() {
            for (col, &v) in line.iter().enumerate() {
                m[row][a0 + col] = v;
            }
        }
        if (k + 2) as usize <= n {
            let ek = e((k + 1) as usize);
            for (row, line) in ek.iter().enumerate() {
                for (col, &v) in line.iter().enumerate() {
                    m[b0 + row][a0 + col] = -v;
                }
            }
        }
        maps.push(m);
    }
    Total { dims, maps }
}

fn total_dims_mod_p(t: &Total, p: u64) -> Vec<usize> {
    let ranks: Vec<usize> = t
        .maps
        .iter()
        .map(|m| {
            let mm = m.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i128) as u64).collect()).collect();
            rank_mod_p(mm, p)
        })
        .collect();
    (0..t.dims.len())
        .map(|k| {
            let out = if k < ranks.len() { ranks[k] } else { 0 };
            let inc = if k > 0 { ranks[k - 1] } else { 0 };
            t.dims[k] - out - inc
        })
        .collect()
}

/// `dim_{F_p} H^{i,j}(T ⊗ F_p)` for `i = -1..=n` (index `i + 1`) of the
/// matroid complex.
pub fn matroid_dims_mod_p(q: &QuasiRep, j: usize, p: u64) -> Vec<usize> {
    let n = q.matroid().size();
    let amb = q.ambient();
    let g = amb.gens;
    let w = combos(g, j).len();
    let amb_rel: Vec<Col> = (0..amb.relations.cols())
        .map(|c| (0..g).map(|r| int(amb.relations.get(r, c))).collect())
        .collect();
    // injective presentation of ⋀^j N/ρ(S) for every subset
    let mut rel: Vec<Vec<Col>> = vec![vec![]; 1 << n];
    for s in 0u32..(1 << n) {
        let rho = q.rho(Subset(s));
        let mut cols = amb_rel.clone();
        cols.extend((0..rho.cols()).map(|c| (0..g).map(|r| int(rho.get(r, c))).collect::<Col>()));
        let basis = lattice_basis(g, cols);
        rel[s as usize] = lattice_basis(w, exterior_relations(g, j, &basis));
    }
    let by: Vec<Vec<Subset>> = (0..=n).map(|i| subsets_of_size(n, i)).collect();
    let f: Vec<usize> = (0..=n).map(|i| by[i].len() * w).collect();
    let fp: Vec<usize> = (0..=n).map(|i| by[i].iter().map(|s| rel[s.0 as usize].len()).sum()).collect();
    let pos = |i: usize, s: Subset| by[i].iter().position(|&t| t == s).unwrap();
    let r_off = |i: usize, s: Subset| -> usize { by[i].iter().take_while(|&&t| t != s).map(|t| rel[t.0 as usize].len()).sum() };
    let d = |i: usize| -> Vec<Vec<i128>> {
        let mut m = vec![vec![0i128; f[i]]; f[i + 1]];
        for &s in &by[i] {
            for e in 0..n {
                if s.contains(e) {
                    continue;
                }
                let t = s.with(e);
                let (a, b) = (pos(i, s) * w, pos(i + 1, t) * w);
                for x in 0..w {
                    m[b + x][a + x] += sign(s, e);
                }
            }
        }
        m
    };
    let r = |i: usize| -> Vec<Vec<i128>> {
        let mut m = vec![vec![0i128; fp[i]]; f[i]];
        for &s in &by[i] {
            let (a, b) = (pos(i, s) * w, r_off(i, s));
            for (c, col) in rel[s.0 as usize].iter().enumerate() {
                for x in 0..w {
                    m[a + x][b + c] = col[x];
                }
            }
        }
        m
    };
    let e = |i: usize| -> Vec<Vec<i128>> {
        // R_{i+1} E = D R_i, solved block by block
        let mut m = vec![vec![0i128; fp[i]]; fp[i + 1]];
        for &s in &by[i] {
            for el in 0..n {
                if s.contains(el) {
                    continue;
                }
                let t = s.with(el);
                let (a, b) = (r_off(i, s), r_off(i + 1, t));
                for (c, col) in rel[s.0 as usize].iter().enumerate() {
                    let v: Col = col.iter().map(|&x| x * sign(s, el)).collect();
                    let coords = echelon_solve(&rel[t.0 as usize], &v);
                    for (k, &y) in coords.iter().enumerate() {
                        m[b + k][a + c] += y;
                    }
                }
            }
        }
        m
    };
    total_dims_mod_p(&total_complex(n, &f, &fp, &d, &r, &e), p)
}

/// Chromatic complex built from scratch: states are (S, set of components
/// colored x); `d` adds an edge with sign `ε^{S,e}` and multiplies colors.
pub fn chromatic_dims_mod_p(g: &Graph, j: usize, p: u64) -> Vec<usize> {
    let n = g.edges.len();
    let comps = |s: u32| -> Vec<usize> {
        // component label = smallest vertex
        let mut lab: Vec<usize> = (0..g.vertices).collect();
        loop {
            let mut changed = false;
            for (k, &(a, b)) in g.edges.iter().enumerate() {
                if s & (1 << k) != 0 {
                    let m = lab[a].min(lab[b]);
                    if lab[a] != m || lab[b] != m {
                        lab[a] = m;
                        lab[b] = m;
                        changed = true;
                    }
                }
            }
            if !changed {
                return lab;
            }
        }
    };
    let states = |s: u32| -> Vec<Vec<usize>> {
        let lab = comps(s);
        let mut minima: Vec<usize> = lab.iter().enumerate().filter(|(v, &l)| *v == l).map(|(v, _)| v).collect();
        minima.sort_unstable();
        combos(minima.len(), j).into_iter().map(|c| c.iter().map(|&k| minima[k]).collect()).collect()
    };
    let by: Vec<Vec<u32>> = (0..=n).map(|i| (0u32..(1 << n)).filter(|s| s.count_ones() as usize == i).collect()).collect();
    let index: Vec<Vec<(u32, Vec<usize>)>> =
        by.iter().map(|v| v.iter().flat_map(|&s| states(s).into_iter().map(move |x| (s, x))).collect()).collect();
    let f: Vec<usize> = index.iter().map(|v| v.len()).collect();
    let lookup: Vec<std::collections::HashMap<(u32, Vec<usize>), usize>> =
        index.iter().map(|v| v.iter().cloned().enumerate().map(|(k, st)| (st, k)).collect()).collect();
    let d = |i: usize| -> Vec<Vec<i128>> {
        let mut m = vec![vec![0i128; f[i]]; f[i + 1]];
        for (c, (s, x)) in index[i].iter().enumerate() {
            let lab = comps(*s);
            for (e, &(a, b)) in g.edges.iter().enumerate() {
                if s & (1 << e) != 0 {
                    continue;
                }
                let t = s | (1 << e);
                let (la, lb) = (lab[a], lab[b]);
                let mut y: Vec<usize> = Vec::new();
                if la != lb {
                    let (xa, xb) = (x.contains(&la), x.contains(&lb));
                    if xa && xb {
                        continue;
                    }
                    let lo = la.min(lb);
                    y.extend(x.iter().copied().filter(|&v| v != la && v != lb));
                    if xa || xb {
                        y.push(lo);
                    }
                } else {
                    y = x.clone();
                }
                y.sort_unstable();
                let r = lookup[i + 1][&(t, y)];
                m[r][c] += sign(Subset(*s), e);
            }
        }
        m
    };
    let zero_r = |i: usize| vec![vec![0i128; 0]; f[i]];
    let fp = vec![0usize; n + 1];
    let no_e = |i: usize| vec![vec![0i128; fp[i]]; fp[i + 1]];
    total_dims_mod_p(&total_complex(n, &f, &fp, &d, &zero_r, &no_e), p)
}

/// Universal-coefficient prediction from an integer table: index `i + 1`.
pub fn predicted_dims(t: &CohomologyTable, j: usize, p: u64) -> Vec<usize> {
    let tp = |i: usize| -> usize {
        t.get(i, j).torsion.iter().filter(|d| d.rem_u64(p) == 0).count()
    };
    let mut out = vec![tp(0)];
    for i in 0..=t.n {
        let c = t.get(i, j);
        out.push(c.free_rank + tp(i) + if i < t.n { tp(i + 1) } else { 0 });
    }
    out
}

/// First `(p, i, j, oracle, predicted)` disagreement, if any.
pub fn check_table(
    t: &CohomologyTable,
    oracle: &dyn Fn(usize, u64) -> Vec<usize>,
) -> Option<(u64, isize, usize, usize, usize)> {
    for &p in &PRIMES {
        for j in 0..=t.jmax {
            let got = oracle(j, p);
            let want = predicted_dims(t, j, p);
            for (k, (&a, &b)) in got.iter().zip(&want).enumerate() {
                if a != b {
                    return Some((p, k as isize - 1, j, a, b));
                }
            }
        }
    }
    None
}

pub fn check_matroid_table(q: &QuasiRep, t: &CohomologyTable) -> Option<(u64, isize, usize, usize, usize)> {
    check_table(t, &|j, p| matroid_dims_mod_p(q, j, p))
}

pub fn check_chromatic_table(g: &Graph, t: &CohomologyTable) -> Option<(u64, isize, usize, usize, usize)> {
    check_table(t, &|j, p| chromatic_dims_mod_p(g, j, p))
}

/// All labeled graphs on `v` vertices, edges listed in lexicographic order.
pub fn all_graphs(v: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
    (0u32..(1 << pairs.len()))
        .map(|mask| {
            let e: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &p)| p).collect();
            Graph::new(v, &e).unwrap()
        })
        .collect()
}
