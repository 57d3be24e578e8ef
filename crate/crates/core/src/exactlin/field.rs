use serde::{Deserialize, Serialize};

use super::int::Int;
use super::matrix::IntMatrix;

/// Coefficient field for rank and dimension computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// True if `d` maps to zero in the field, so `ℤ/d ⊗ F ≠ 0`.
    pub fn kills(&self, d: &Int) -> bool {
        match self {
            Field::Rational => d.is_zero(),
            Field::Prime(p) => d.rem_u64(*p) == 0,
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact rank over `ℚ` or `ℤ/p`.
pub fn rank_over_field(a: &IntMatrix, field: Field) -> usize {
    match field {
        Field::Rational => rank_rational(a),
        Field::Prime(p) => {
            let rows: Vec<Vec<u64>> = (0..a.rows())
                .map(|i| a.row(i).iter().map(|x| x.rem_u64(p)).collect())
                .collect();
            rank_mod_p(rows, a.cols(), p)
        }
    }
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    r
}

/// Rank of a matrix over `ℤ/p` given by rows of residues.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p);
        let prow: Vec<u64> = rows[rank].iter().map(|&x| mul_mod(x, inv, p)).collect();
        for r in rank + 1..rows.len() {
            let f = rows[r][c];
            if f == 0 {
                continue;
            }
            for k in c..cols {
                if prow[k] != 0 {
                    rows[r][k] = (rows[r][k] + p - mul_mod(f, prow[k], p)) % p;
                }
            }
        }
        rows[rank] = prow;
        rank += 1;
    }
    rank
}

fn content(row: &[Int]) -> Int {
    row.iter().fold(Int::ZERO, |g, x| if x.is_zero() { g } else { g.gcd(x) })
}

/// Fraction-free row elimination, dividing out row content to contain growth.
fn rank_rational(a: &IntMatrix) -> usize {
    let mut rows: Vec<Vec<Int>> = (0..a.rows())
        .map(|i| a.row(i).to_vec())
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let cols = a.cols();
    let mut rank = 0;
    for c in 0..cols {
        let piv = (rank..rows.len())
            .filter(|&r| !rows[r][c].is_zero())
            .min_by(|&x, &y| rows[x][c].cmp_abs(&rows[y][c]));
        let Some(piv) = piv else { continue };
        rows.swap(rank, piv);
        let prow = rows[rank].clone();
        let p = prow[c].clone();
        for r in rank + 1..rows.len() {
            let f = rows[r][c].clone();
            if f.is_zero() {
                continue;
            }
            let g = p.gcd(&f);
            let (mp, mf) = (p.div_exact(&g), f.div_exact(&g));
            for k in c..cols {
                let x = &(&rows[r][k] * &mp) - &(&prow[k] * &mf);
                rows[r][k] = x;
            }
            let ct = content(&rows[r]);
            if !ct.is_zero() && !ct.is_one() {
                for x in rows[r].iter_mut() {
                    *x = x.div_exact(&ct);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        let d = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(rank_over_field(&d, Field::Rational), 2);
        assert_eq!(rank_over_field(&d, Field::Prime(2)), 1);
        assert_eq!(rank_over_field(&d, Field::Prime(3)), 1);
        assert_eq!(rank_over_field(&d, Field::Prime(5)), 2);
        assert_eq!(rank_over_field(&IntMatrix::zeros(3, 4), Field::Rational), 0);
        let s = IntMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank_over_field(&s, Field::Rational), 2);
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(11) && !is_prime(1) && !is_prime(9));
    }
}
