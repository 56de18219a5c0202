//! Three computations of the graded trace series of an endomorphism of a
//! graded vector space, which must agree:
//!
//! 1. `exp(sum_n str(phi^n) T^n / n)` from Newton power sums,
//! 2. the cycle-index sum `sum_{lambda |- n} p_lambda / z_lambda`, i.e. the
//!    supertrace on symmetric tensors,
//! 3. `prod_i det(1 - phi_i T)^((-1)^(i+1))`.
//!
//! Characteristic polynomials are monic `det(x - phi_i)` in ascending degree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Partition;

pub type QSeries = Vec<BigRational>;

#[derive(Clone, Debug, PartialEq)]
pub struct TrexpReport {
    pub newton: QSeries,
    pub cycle_index: QSeries,
    pub determinant: QSeries,
    pub agree: bool,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Power sums `p_1..p_n` of the roots of a monic polynomial.
pub fn power_sums(charpoly: &[BigRational], n: usize) -> Vec<BigRational> {
    let d = charpoly.len() - 1;
    assert!(charpoly[d].is_one(), "characteristic polynomial must be monic");
    // e_k = (-1)^k c_{d-k}
    let e = |k: usize| -> BigRational {
        if k > d {
            BigRational::zero()
        } else if k % 2 == 0 {
            charpoly[d - k].clone()
        } else {
            -charpoly[d - k].clone()
        }
    };
    let mut p = vec![BigRational::zero(); n + 1];
    for k in 1..=n {
        let mut acc = BigRational::zero();
        for i in 1..k {
            let t = e(i) * &p[k - i];
            if i % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        let last = e(k) * q(k as i64);
        if k % 2 == 1 {
            acc += last;
        } else {
            acc -= last;
        }
        p[k] = acc;
    }
    p
}

/// Super power sums `sum_i (-1)^i p_k(phi_i)`, index 0 unused.
pub fn super_power_sums(charpolys: &BTreeMap<i64, QSeries>, n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); n + 1];
    for (deg, cp) in charpolys {
        let p = power_sums(cp, n);
        for k in 1..=n {
            if deg.rem_euclid(2) == 0 {
                out[k] += &p[k];
            } else {
                out[k] -= &p[k];
            }
        }
    }
    out
}

pub fn qs_mul(a: &[BigRational], b: &[BigRational], n: usize) -> QSeries {
    let mut out = vec![BigRational::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn qs_inverse(a: &[BigRational], n: usize) -> QSeries {
    let c0 = a[0].clone();
    assert!(!c0.is_zero(), "series inverse needs nonzero constant term");
    let inv0 = c0.recip();
    let mut out = vec![inv0.clone()];
    for k in 1..=n {
        let mut s = BigRational::zero();
        for j in 1..=k.min(a.len() - 1) {
            s += &a[j] * &out[k - j];
        }
        out.push(-(s * &inv0));
    }
    out
}

/// `exp(sum_{k>=1} p_k T^k / k)`.
pub fn exp_power_sums(p: &[BigRational], n: usize) -> QSeries {
    // e' = (sum p_k T^{k-1}) e  =>  m e_m = sum_k p_k e_{m-k}
    let mut e = vec![BigRational::one()];
    for m in 1..=n {
        let mut s = BigRational::zero();
        for k in 1..=m {
            s += &p[k] * &e[m - k];
        }
        e.push(s / q(m as i64));
    }
    e
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn cycle_index(p: &[BigRational], n: usize) -> QSeries {
    (0..=n)
        .map(|m| {
            Partition::all(m)
                .iter()
                .map(|lam| {
                    let mut num = BigRational::one();
                    let mut z = BigInt::one();
                    for (i, a) in lam.parts_with_mult() {
                        for _ in 0..a {
                            num *= &p[i];
                        }
                        z *= BigInt::from(i).pow(a as u32) * factorial(a);
                    }
                    num / BigRational::from_integer(z)
                })
                .sum()
        })
        .collect()
}

/// `det(1 - phi T)` from `det(x - phi)`: the reversed polynomial.
fn det_one_minus(cp: &[BigRational]) -> QSeries {
    cp.iter().rev().cloned().collect()
}

fn determinant_product(charpolys: &BTreeMap<i64, QSeries>, n: usize) -> QSeries {
    let mut acc = vec![BigRational::one()];
    acc.resize(n + 1, BigRational::zero());
    for (deg, cp) in charpolys {
        let mut d = det_one_minus(cp);
        d.resize(n + 1, BigRational::zero());
        let factor = if deg.rem_euclid(2) == 1 {
            d
        } else {
            qs_inverse(&d, n)
        };
        acc = qs_mul(&acc, &factor, n);
    }
    acc
}

/// Runs all three routes to order `n` and compares them.
pub fn trexp_check(charpolys: &BTreeMap<i64, QSeries>, n: usize) -> TrexpReport {
    let p = super_power_sums(charpolys, n);
    let newton = exp_power_sums(&p, n);
    let cycle_index = cycle_index(&p, n);
    let determinant = determinant_product(charpolys, n);
    let agree = newton == cycle_index && newton == determinant;
    TrexpReport {
        newton,
        cycle_index,
        determinant,
        agree,
    }
}
