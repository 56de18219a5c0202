//! Order spectra of a polynomial on the arc space `(t O)^n`.
//!
//! For `e >= 1` the set `{ord g(a) >= e}` is a cylinder over level-`K` jets
//! once `K >= e - 1`; its measure is `count_K(p) L^{-n(K+1)}` with the count
//! interpolated in `p`.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::contact::{class_from_l_poly, good_prime, interp, JetProblem};
use crate::error::{Error, Result};
use crate::motring::MotClass;
use crate::polyexpr::MPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub nvars: usize,
    pub level: usize,
    /// Interpolation primes followed by the held-out prime.
    pub primes: Vec<u64>,
    /// `measures[e]` is the measure of `{ord g = e}`, `e = 0..=E`.
    pub measures: Vec<MotClass>,
    /// Measure of `{ord g > E}`.
    pub tail: MotClass,
}

fn count_at_least(g: &MPoly, e: usize, level: usize, p: u64) -> Result<u128> {
    Ok(JetProblem::with_levels(g, p, vec![0; e], level)?.count())
}

/// Measures of `{ord g = e}` for `e <= e_max`, counted on level-`level` jets.
pub fn cylinder_spectrum(g: &MPoly, e_max: usize, level: usize) -> Result<Spectrum> {
    if level < e_max + 2 {
        return Err(Error::InvalidInput(format!(
            "jet level {level} is below the required {}",
            e_max + 2
        )));
    }
    if g.is_zero() {
        return Err(Error::InvalidInput("polynomial is zero".into()));
    }
    let n = g.nvars();
    let needed = n * level + 2;
    let primes: Vec<u64> = (3u64..).filter(|&p| good_prime(g, p)).take(needed).collect();
    let (fit, held) = primes.split_at(needed - 1);
    let held = held[0];

    // counts[i][e - 1] at prime i for ord >= e
    let counts: Vec<Vec<u128>> = primes
        .par_iter()
        .map(|&p| (1..=e_max + 1).map(|e| count_at_least(g, e, level, p)).collect())
        .collect::<Result<_>>()?;

    let unit = MotClass::l_pow(-((n * (level + 1)) as i64));
    let mut at_least = vec![MotClass::l_pow(-(n as i64))];
    for e in 1..=e_max + 1 {
        let pts: Vec<(BigInt, BigInt)> = fit
            .iter()
            .zip(&counts)
            .map(|(&p, c)| (BigInt::from(p), BigInt::from(c[e - 1])))
            .collect();
        let coeffs = interp::lagrange(&pts);
        if let Some(c) = coeffs.iter().find(|c| !c.is_integer()) {
            return Err(Error::Validation(format!(
                "count of ord >= {e} is not an integer polynomial in p (coefficient {c})"
            )));
        }
        let actual = counts[needed - 1][e - 1];
        let predicted = interp::eval_rational(&coeffs, &BigInt::from(held));
        if predicted != BigInt::from(actual).into() {
            return Err(Error::Validation(format!(
                "count of ord >= {e} predicts {predicted} at p = {held}, counted {actual}"
            )));
        }
        let next = count_at_least(g, e, level + 1, held)?;
        if next != actual * u128::from(held).pow(n as u32) {
            return Err(Error::Validation(format!(
                "ord >= {e} is not stable at level {level} (p = {held}); retry with level {}",
                level + 1
            )));
        }
        let ints: Vec<BigInt> = coeffs.iter().map(|c| c.to_integer()).collect();
        at_least.push(&class_from_l_poly(&ints) * &unit);
    }
    let measures: Vec<MotClass> = (0..=e_max).map(|e| &at_least[e] - &at_least[e + 1]).collect();
    let tail = at_least[e_max + 1].clone();
    let total: MotClass = measures.iter().cloned().sum::<MotClass>() + tail.clone();
    if total != MotClass::l_pow(-(n as i64)) {
        return Err(Error::Consistency(format!(
            "order spectrum plus tail is {total}, expected L^-{n}"
        )));
    }
    Ok(Spectrum {
        nvars: n,
        level,
        primes,
        measures,
        tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> MotClass {
        s.parse().unwrap()
    }

    #[test]
    fn single_coordinate() {
        let s = cylinder_spectrum(&MPoly::parse("x", 1).unwrap(), 3, 5).unwrap();
        assert!(s.measures[0].is_zero());
        for e in 1..=3 {
            assert_eq!(s.measures[e], c(&format!("(L-1)*L^(-{})", e + 1)));
        }
        assert_eq!(s.tail, c("L^-4"));
    }

    #[test]
    fn coordinate_in_two_variables() {
        let s = cylinder_spectrum(&MPoly::parse("y", 2).unwrap(), 3, 5).unwrap();
        for e in 1..=3 {
            assert_eq!(s.measures[e], c(&format!("(L-1)*L^(-{})", e + 2)));
        }
    }

    #[test]
    fn reduced_cubic_discriminant_low_orders() {
        let g = MPoly::parse("-4*x^3-27*y^2", 2).unwrap();
        let s = cylinder_spectrum(&g, 2, 4).unwrap();
        assert!(s.measures[0].is_zero());
        assert!(s.measures[1].is_zero());
        // y_1 != 0
        assert_eq!(s.measures[2], c("(L-1)*L^-3"));
    }

    #[test]
    fn rejects_low_level() {
        assert!(cylinder_spectrum(&MPoly::parse("x", 1).unwrap(), 3, 4).is_err());
    }
}
