//! Small exact linear-algebra kernels: integer echelon forms, ranks over F2 and
//! characteristic polynomials over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Row-reduces an integer matrix column by column and returns the pivot
/// columns in increasing order. The number of pivots is the rank over Q, and
/// the pivot set equals the set of leading columns of any echelon basis of the
/// row space.
pub fn pivot_columns(mut rows: Vec<Vec<BigInt>>) -> Vec<usize> {
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    let ncols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    for r in rows.iter_mut() {
        r.resize(ncols, BigInt::zero());
    }
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(p) = (top..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(top, p);
        let (head, tail) = rows.split_at_mut(top + 1);
        let prow = &head[top];
        let a = &prow[col];
        for r in tail.iter_mut() {
            if r[col].is_zero() {
                continue;
            }
            let g = a.gcd(&r[col]);
            let fa = a / &g;
            let fb = &r[col] / &g;
            for k in col..ncols {
                r[k] = &r[k] * &fa - &prow[k] * &fb;
            }
            make_primitive(&mut r[col..]);
        }
        pivots.push(col);
        top += 1;
    }
    pivots
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for c in row.iter() {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for c in row.iter_mut() {
            *c /= &g;
        }
    }
}

/// Rank over Q of an integer matrix.
pub fn rank_bigint(rows: Vec<Vec<BigInt>>) -> usize {
    pivot_columns(rows).len()
}

/// Rank over F2; rows are bit vectors packed into `u64` words.
pub fn rank_f2(mut rows: Vec<Vec<u64>>) -> usize {
    let words = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    for r in rows.iter_mut() {
        r.resize(words, 0);
    }
    let mut rank = 0;
    for col in 0..words * 64 {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && r[w] & b != 0 {
                for (x, y) in r.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Characteristic polynomial `det(x I - M)` of a square rational matrix,
/// coefficients in ascending degree (monic). Uses reduction to Hessenberg form.
pub fn charpoly(m: &[Vec<BigRational>]) -> Vec<BigRational> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "charpoly needs a square matrix");
    let mut h: Vec<Vec<BigRational>> = m.to_vec();
    for k in 1..n.saturating_sub(1) {
        let Some(i) = (k..n).find(|&i| !h[i][k - 1].is_zero()) else {
            continue;
        };
        if i != k {
            h.swap(i, k);
            for row in h.iter_mut() {
                row.swap(i, k);
            }
        }
        for j in k + 1..n {
            if h[j][k - 1].is_zero() {
                continue;
            }
            let u = &h[j][k - 1] / &h[k][k - 1];
            for c in 0..n {
                let t = &u * &h[k][c];
                h[j][c] -= t;
            }
            for row in h.iter_mut() {
                let t = &u * &row[j];
                row[k] += t;
            }
        }
    }
    // p[m] = charpoly of the leading m x m block
    let mut p: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
    for mm in 1..=n {
        let a = mm - 1;
        let mut next = poly_mul_x_minus(&p[mm - 1], &h[a][a]);
        let mut prod = BigRational::one();
        for i in (1..mm).rev() {
            prod *= &h[i][i - 1];
            let coef = &h[i - 1][a] * &prod;
            if coef.is_zero() {
                continue;
            }
            for (d, c) in p[i - 1].iter().enumerate() {
                next[d] -= &coef * c;
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}

fn poly_mul_x_minus(p: &[BigRational], a: &BigRational) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= c * a;
    }
    out
}

pub fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigRational::zero(); m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][k] * &bk[j];
            }
        }
    }
    out
}

pub fn trace(a: &[Vec<BigRational>]) -> BigRational {
    a.iter().enumerate().map(|(i, r)| r[i].clone()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&c| c.into()).collect()).collect()
    }

    fn q(v: &[&[i64]]) -> Vec<Vec<BigRational>> {
        v.iter()
            .map(|r| r.iter().map(|&c| BigRational::from_integer(c.into())).collect())
            .collect()
    }

    #[test]
    fn pivots_and_rank() {
        let m = z(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]]);
        assert_eq!(pivot_columns(m.clone()), vec![0, 1]);
        assert_eq!(rank_bigint(m), 2);
        assert_eq!(rank_bigint(vec![]), 0);
    }

    #[test]
    fn f2_rank() {
        assert_eq!(rank_f2(vec![vec![0b011], vec![0b110], vec![0b101]]), 2);
        assert_eq!(rank_f2(vec![vec![1], vec![2], vec![4]]), 3);
    }

    #[test]
    fn charpoly_small() {
        // [[1,2],[3,4]]: x^2 - 5x - 2
        let c = charpoly(&q(&[&[1, 2], &[3, 4]]));
        let want: Vec<BigRational> = [-2, -5, 1]
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect();
        assert_eq!(c, want);
        // zero subdiagonal forces a row/column swap
        let c = charpoly(&q(&[&[2, 0, 1], &[0, 3, 0], &[1, 0, 2]]));
        // (x-3)(x^2-4x+3) = x^3 - 7x^2 + 15x - 9
        let want: Vec<BigRational> = [-9, 15, -7, 1]
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect();
        assert_eq!(c, want);
    }

    proptest! {
        #[test]
        fn cayley_hamilton(entries in prop::collection::vec(-3i64..=3, 16)) {
            let m: Vec<Vec<BigRational>> = entries
                .chunks(4)
                .map(|r| r.iter().map(|&c| BigRational::from_integer(c.into())).collect())
                .collect();
            let c = charpoly(&m);
            let mut acc = vec![vec![BigRational::zero(); 4]; 4];
            let mut pw: Vec<Vec<BigRational>> = (0..4)
                .map(|i| (0..4).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
                .collect();
            for coef in &c {
                for i in 0..4 {
                    for j in 0..4 {
                        acc[i][j] += coef * &pw[i][j];
                    }
                }
                pw = mat_mul(&pw, &m);
            }
            prop_assert!(acc.iter().flatten().all(|x| x.is_zero()));
            prop_assert_eq!(&c[3], &-trace(&m));
        }
    }
}
