//! Twisted sectors of `Q_f` for a plane curve germ.
//!
//! The `T^n` coefficient is `sum_{lambda |- n} L^{-v(lambda)} int |Delta_f|^s prod A_i`.
//! For the single-cycle sector `lambda = (n)` a point of `X_n` is an arc in
//! `tau = t^{1/n}` and its `n` conjugates `tau -> zeta^k tau` form the
//! orbifold point. With `ord_t = ord_tau / n`,
//! `ord Delta_f = 2 sum_{k < l} min_c ord_t(c(zeta^k tau) - c(zeta^l tau))`
//! over the coordinates `c`. A sector contributes `S^{ord Delta_f}` when this
//! order is the same on every sampled arc.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::contact::{clin_convert, good_prime, is_prime, ContactTable, JetProblem};
use crate::error::{Error, Result};
use crate::motring::MotClass;
use crate::polyexpr::MPoly;
use crate::series::{sym_m, Partition};

/// Arcs sampled per prime.
pub const SAMPLES_PER_PRIME: usize = 20;
/// Primes sampled per sector.
pub const SAMPLE_PRIMES: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectorSample {
    pub prime: u64,
    /// `sum over pairs of ord_tau`, one entry per sampled arc.
    pub raw_ords: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectorReport {
    pub n: usize,
    pub partition: String,
    pub ord_delta: u64,
    pub samples: Vec<SectorSample>,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// A primitive `n`-th root of unity mod `p`, for `p = 1 mod n`.
fn root_of_unity(n: u64, p: u64) -> u64 {
    let factors: Vec<u64> = (2..=n).filter(|&r| n % r == 0 && is_prime(r)).collect();
    (2..p)
        .map(|g| pow_mod(g, (p - 1) / n, p))
        .find(|&z| factors.iter().all(|&r| pow_mod(z, n / r, p) != 1))
        .expect("p = 1 mod n has primitive roots of unity")
}

/// `sum_{k<l} min_c ord_tau(c(zeta^k tau) - c(zeta^l tau))`, or `None` when a
/// difference vanishes to the jet order.
fn pair_ord_sum(arc: &[Vec<u64>], n: usize, zeta: u64, p: u64) -> Option<u64> {
    let zpow: Vec<u64> = (0..n as u64 * n as u64 + 1).map(|e| pow_mod(zeta, e, p)).collect();
    let levels = arc[0].len() - 1;
    let mut sum = 0u64;
    for k in 0..n {
        for l in k + 1..n {
            let ord = (1..=levels).find(|&lev| {
                let zk = zpow[(k * lev) % n];
                let zl = zpow[(l * lev) % n];
                let diff = (zk + p - zl) % p;
                arc.iter().any(|c| c[lev] * diff % p != 0)
            })?;
            sum += ord as u64;
        }
    }
    Some(sum)
}

fn sample_arcs(pr: &JetProblem, rng: &mut ChaCha8Rng) -> (Vec<Vec<Vec<u64>>>, usize) {
    let mut seen = 0usize;
    let mut keep: Vec<Vec<Vec<u64>>> = Vec::with_capacity(SAMPLES_PER_PRIME);
    pr.for_each_solution(&mut |a| {
        seen += 1;
        if keep.len() < SAMPLES_PER_PRIME {
            keep.push(a.to_vec());
        } else {
            let j = rng.gen_range(0..seen);
            if j < SAMPLES_PER_PRIME {
                keep[j] = a.to_vec();
            }
        }
    });
    (keep, seen)
}

/// Samples `ord Delta_f` on the sector `(n)` and checks that it is constant.
pub fn single_cycle_order(f: &MPoly, n: usize, seed: u64) -> Result<SectorReport> {
    let partition = Partition::from_parts(&[n]).to_string();
    if n == 1 {
        return Ok(SectorReport {
            n,
            partition,
            ord_delta: 0,
            samples: Vec::new(),
        });
    }
    let mut samples = Vec::new();
    let mut values = std::collections::BTreeSet::new();
    for p in (3u64..).filter(|&p| p % n as u64 == 1 && good_prime(f, p)).take(8) {
        let pr = JetProblem::contact(f, n, p)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p << 16) ^ n as u64);
        let (arcs, seen) = sample_arcs(&pr, &mut rng);
        if seen < SAMPLES_PER_PRIME {
            continue;
        }
        let zeta = root_of_unity(n as u64, p);
        let raw: Vec<u64> = arcs
            .iter()
            .map(|a| {
                pair_ord_sum(a, n, zeta, p).ok_or_else(|| {
                    Error::Budget(format!(
                        "sector ({n}): conjugate arcs agree to jet order {n} at p = {p}"
                    ))
                })
            })
            .collect::<Result<_>>()?;
        values.extend(raw.iter().copied());
        samples.push(SectorSample { prime: p, raw_ords: raw });
        if samples.len() == SAMPLE_PRIMES {
            break;
        }
    }
    if samples.len() < SAMPLE_PRIMES {
        return Err(Error::Budget(format!(
            "sector ({n}): fewer than {SAMPLE_PRIMES} primes with {SAMPLES_PER_PRIME} arcs"
        )));
    }
    if values.len() != 1 {
        return Err(Error::Budget(format!(
            "sector ({n}): ord Delta_f is not constant (raw tau-orders {values:?}); stratified counting is not supported"
        )));
    }
    let raw = *values.iter().next().unwrap();
    if (2 * raw) % n as u64 != 0 {
        return Err(Error::Consistency(format!(
            "sector ({n}): ord Delta_f = 2*{raw}/{n} is not an integer"
        )));
    }
    Ok(SectorReport {
        n,
        partition,
        ord_delta: 2 * raw / n as u64,
        samples,
    })
}

/// `T^n` coefficient from the twisted sectors: `(class, S-power)` terms plus reports.
pub fn sector_terms(
    table: &ContactTable,
    n: usize,
    seed: u64,
) -> Result<(Vec<(MotClass, u64)>, Vec<SectorReport>)> {
    let m = table.m();
    let d = (m - 1) as u32;
    let a: Vec<MotClass> = (1..=n)
        .map(|i| Ok(clin_convert(table.class(i)?, i, m)))
        .collect::<Result<_>>()?;
    let mut terms = Vec::new();
    let mut reports = Vec::new();
    for lam in Partition::all(n) {
        let mut prod = MotClass::one();
        for (i, ai) in lam.parts_with_mult() {
            prod = &prod * &sym_m(&a[i - 1], ai);
        }
        if prod.is_zero() {
            continue;
        }
        if lam.length() != 1 {
            return Err(Error::Scope(format!(
                "sector {lam} of T^{n} has several cycles and a nonzero class"
            )));
        }
        let rep = single_cycle_order(&table.f, n, seed)?;
        terms.push((prod.mul_q_pow(-lam.v_weight(d).twice()), rep.ord_delta));
        reports.push(rep);
    }
    Ok((terms, reports))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity() {
        for (n, p) in [(2u64, 3u64), (3, 7), (4, 13), (6, 7)] {
            let z = root_of_unity(n, p);
            assert_eq!(pow_mod(z, n, p), 1);
            assert!((1..n).all(|k| pow_mod(z, k, p) != 1));
        }
    }

    #[test]
    fn node_sector_orders() {
        let f = MPoly::parse("x*y", 2).unwrap();
        let r2 = single_cycle_order(&f, 2, 1).unwrap();
        assert_eq!(r2.ord_delta, 1);
        assert_eq!(r2.samples.len(), 2);
        assert!(r2.samples.iter().all(|s| s.raw_ords.len() == SAMPLES_PER_PRIME));
        assert_eq!(single_cycle_order(&f, 3, 1).unwrap().ord_delta, 2);
    }

    #[test]
    fn cusp_sector_orders() {
        let f = MPoly::parse("y^2-x^3", 2).unwrap();
        assert_eq!(single_cycle_order(&f, 2, 5).unwrap().ord_delta, 1);
        assert_eq!(single_cycle_order(&f, 3, 5).unwrap().ord_delta, 2);
    }
}
