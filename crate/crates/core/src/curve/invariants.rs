use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{powers, mul_trunc, CurveSing, Valuation, GUARD};
use crate::error::{Error, Result};
use crate::linalg::{pivot_columns, rank_bigint};
use crate::motring::{MotClass, Poly};
use crate::polyexpr::MPoly;
use crate::series::MotSeries;

/// `L - 1` as a polynomial in `q`.
fn l_minus_one() -> Poly {
    Poly::from_i64s(&[-1, 0, 1])
}

fn all_nonempty_subsets(r: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1 << r)).map(move |mask| (0..r).filter(|i| mask & (1 << i) != 0).collect())
}

/// Multi-indices `v >= 0` with `|v| = n`, in lexicographic order.
fn compositions(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, r - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl CurveSing {
    /// Class of the projectivized arrangement complement `P H'(v)`, where
    /// `H'(v) = J_v/J_{v+1}` minus the subspaces `J_{v+e_i}/J_{v+1}`.
    pub fn arrangement_motive(&self, v: &[usize]) -> Result<MotClass> {
        let signed: Vec<i64> = v.iter().map(|&x| x as i64).collect();
        self.arrangement_motive_signed(&signed)
    }

    /// Same as [`CurveSing::arrangement_motive`] on arbitrary integer
    /// multi-indices, with `h` evaluated on clamped indices.
    pub fn arrangement_motive_signed(&self, v: &[i64]) -> Result<MotClass> {
        let r = self.r();
        let plus = |extra: &[usize]| -> Vec<i64> {
            let mut w = v.to_vec();
            for &i in extra {
                w[i] += 1;
            }
            w
        };
        let all: Vec<usize> = (0..r).collect();
        let h_top = self.h_codim_signed(&plus(&all))?;
        let h_v = self.h_codim_signed(v)?;
        let d = h_top - h_v;
        // [H'] as a polynomial in q (only even powers occur)
        let mut h_prime = Poly::monomial(1, 2 * d);
        for subset in all_nonempty_subsets(r) {
            let dim = h_top - self.h_codim_signed(&plus(&subset))?;
            let term = Poly::monomial(1, 2 * dim);
            h_prime = if subset.len() % 2 == 1 {
                &h_prime - &term
            } else {
                &h_prime + &term
            };
        }
        let proj = h_prime.div_exact(&l_minus_one()).ok_or_else(|| {
            Error::Consistency(format!(
                "arrangement class at v = {v:?} is not divisible by L - 1"
            ))
        })?;
        Ok(MotClass::from_poly(proj))
    }

    /// `pi_v = L^{1 - h(v+1)} [P H'(v)]`.
    pub fn pi_coefficient(&self, v: &[usize]) -> Result<MotClass> {
        let signed: Vec<i64> = v.iter().map(|&x| x as i64).collect();
        self.pi_coefficient_signed(&signed)
    }

    pub fn pi_coefficient_signed(&self, v: &[i64]) -> Result<MotClass> {
        let arr = self.arrangement_motive_signed(v)?;
        if arr.is_zero() {
            return Ok(arr);
        }
        let top: Vec<i64> = v.iter().map(|x| x + 1).collect();
        let h = self.h_codim_signed(&top)? as i64;
        Ok(arr.mul_q_pow(2 * (1 - h)))
    }

    /// Motivic Poincare series `P_gel(T) = sum_v pi_v T^{|v|}` over `v >= 0`.
    pub fn poincare_gel(&self, n: usize) -> Result<MotSeries> {
        let mut coeffs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = MotClass::zero();
            for v in compositions(k, self.r()) {
                acc += &self.pi_coefficient(&v)?;
            }
            coeffs.push(acc);
        }
        Ok(MotSeries::new(coeffs))
    }

    /// `[Hilb^1_n(f)_0] = L^n * (T^n coefficient of P_gel)`.
    pub fn hilb1_classes(&self, n: usize) -> Result<Vec<MotClass>> {
        let p = self.poincare_gel(n)?;
        Ok(p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c.mul_q_pow(2 * k as i64))
            .collect())
    }

    /// Euler-characteristic specialization of `P_gel`. For a single branch the
    /// result is cross-checked against the semigroup series `sum_{s in Gamma} T^s`.
    pub fn alexander_series(&self, n: usize) -> Result<Vec<BigRational>> {
        let chi = self.poincare_gel(n)?.euler()?;
        if self.r() == 1 {
            let gamma = self.semigroup(n)?;
            for (k, c) in chi.iter().enumerate() {
                let want = if gamma.contains(&k) {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                if *c != want {
                    return Err(Error::Consistency(format!(
                        "Euler coefficient at T^{k} is {c}, semigroup predicts {want}"
                    )));
                }
            }
        }
        Ok(chi)
    }

    /// Values `<= bound` of the valuation on a single-branch curve.
    pub fn semigroup(&self, bound: usize) -> Result<Vec<usize>> {
        if self.r() != 1 {
            return Err(Error::Scope("the semigroup is defined here for one branch only".into()));
        }
        let b = &self.branches[0];
        let k = bound + 1;
        b.require(k)?;
        let (x, y) = b.jets(k);
        let xp = powers(&x, bound, k);
        let yp = powers(&y, bound, k);
        let mut rows = Vec::new();
        for deg in 0..=bound {
            for a in 0..=deg {
                rows.push(mul_trunc(&xp[a], &yp[deg - a], k));
            }
        }
        Ok(pivot_columns(rows))
    }

    /// `dim k[[x,y]]/(f, g)`, computed as `dim k[x,y]/((f,g) + m^D)` for
    /// increasing `D` until two consecutive values agree.
    pub fn intersection_dim(&self, g: &MPoly) -> Result<usize> {
        let f = self
            .f
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("intersection needs a defining polynomial".into()))?;
        let mut prev = None;
        for d in 1..=256usize {
            let cur = quotient_dim(f, g, d);
            if prev == Some(cur) {
                return Ok(cur);
            }
            prev = Some(cur);
        }
        Err(Error::Budget("intersection dimension did not stabilize by degree 256".into()))
    }

    /// Sum of branch valuations of `g`, or `None` if some valuation is not
    /// finite within the truncation.
    pub fn total_valuation(&self, g: &MPoly) -> Result<Option<usize>> {
        let mut sum = 0;
        for i in 0..self.r() {
            match self.valuation(i, g)? {
                Valuation::Finite(v) if v + GUARD <= self.branches[i].trunc => sum += v,
                _ => return Ok(None),
            }
        }
        Ok(Some(sum))
    }
}

/// `dim k[x,y]/((f, g) + m^d)`.
fn quotient_dim(f: &MPoly, g: &MPoly, d: usize) -> usize {
    let monos: Vec<(u32, u32)> = (0..d as u32)
        .flat_map(|deg| (0..=deg).map(move |a| (a, deg - a)))
        .collect();
    let index = |a: u32, b: u32| -> Option<usize> {
        let deg = (a + b) as usize;
        if deg >= d {
            None
        } else {
            Some(deg * (deg + 1) / 2 + a as usize)
        }
    };
    let mut rows = Vec::new();
    for gen in [f, g] {
        let ord = gen.order().unwrap_or(0) as usize;
        for &(a, b) in &monos {
            if (a + b) as usize + ord >= d {
                continue;
            }
            let mut row = vec![BigInt::zero(); monos.len()];
            for (e, c) in gen.terms() {
                if let Some(i) = index(e[0] + a, e[1] + b) {
                    row[i] += c;
                }
            }
            rows.push(row);
        }
    }
    monos.len() - rank_bigint(rows)
}
