//! Igusa zeta functions of the discriminants of monic polynomials of degree
//! `n <= 3` with coefficients in `t O`:
//! `I_n(s) = int |Disc_n(a)|^{s - 1/2} |da|`.
//!
//! On `{ord Disc = e}` the integrand is `L^{-(s-1/2)e} = (q S)^e`.

use crate::error::{Error, Result};
use crate::motring::MotClass;
use crate::polyexpr::MPoly;

use super::cylinder::cylinder_spectrum;
use super::twovar::TwoVarClass;
use super::Coefficient;

/// `Disc_n` of `y^n + a_{n-1} y^{n-1} + ... + a_0`, variables `a_0, ..., a_{n-1}`.
pub fn discriminant_poly(n: usize) -> Result<MPoly> {
    let vars: &[&str] = match n {
        1 => &["a0"],
        2 => &["a0", "a1"],
        3 => &["a0", "a1", "a2"],
        _ => return Err(Error::Budget(format!("discriminant of degree {n} is out of scope"))),
    };
    let text = match n {
        1 => "1",
        2 => "a1^2-4*a0",
        _ => "a1^2*a2^2-4*a1^3-4*a2^3*a0-27*a0^2+18*a0*a1*a2",
    };
    MPoly::parse_with_vars(text, vars)
}

/// Discriminant of the depressed cubic `y^3 + P y + Q`, variables `(P, Q)`.
pub fn reduced_cubic_discriminant() -> MPoly {
    MPoly::parse_with_vars("-4*P^3-27*Q^2", &["P", "Q"]).expect("fixed polynomial")
}

fn truncated_from(g: &MPoly, e_max: usize, factor: &MotClass) -> Result<Coefficient> {
    let s = cylinder_spectrum(g, e_max, e_max + 2)?;
    let terms = s
        .measures
        .iter()
        .enumerate()
        .map(|(e, m)| (m * factor).mul_q_pow(e as i64))
        .collect();
    Ok(Coefficient::Truncated {
        terms,
        tail: &s.tail * factor,
    })
}

/// `I_n(s)` truncated at `S^E`; `I_1` is exact.
///
/// For `n = 3` the translation `y -> y - a_2/3` maps `(t O)^3` onto
/// `(t O)^2 x t O` preserving measure (`p != 3`), so
/// `I_3 = L^{-1} int |Disc(P, Q)|^{s-1/2} dP dQ`.
pub fn discriminant_zeta(n: usize, e_max: usize) -> Result<Coefficient> {
    match n {
        1 => Ok(Coefficient::Exact(TwoVarClass::from_class(&MotClass::l_pow(-1)))),
        2 => truncated_from(&discriminant_poly(2)?, e_max, &MotClass::one()),
        3 => truncated_from(&reduced_cubic_discriminant(), e_max, &MotClass::l_pow(-1)),
        0 => Err(Error::InvalidInput("degree must be at least 1".into())),
        _ => Err(Error::Budget(format!("discriminant of degree {n} is out of scope"))),
    }
}

/// `I_3` without the reduction, from the full three-variable discriminant.
pub fn discriminant_zeta_direct3(e_max: usize) -> Result<Coefficient> {
    truncated_from(&discriminant_poly(3)?, e_max, &MotClass::one())
}

fn l() -> TwoVarClass {
    TwoVarClass::from_class(&MotClass::lefschetz())
}

fn k(c: &str) -> TwoVarClass {
    TwoVarClass::from_class(&c.parse().expect("fixed class"))
}

/// `L^{s} = S^{-1}`.
fn l_s() -> TwoVarClass {
    TwoVarClass::s_pow(-1)
}

/// `(L-1) L^{s-5/2} / (L^{s+1/2} - 1)`, which is `X` times [`i2_closed`].
pub fn i2_shifted() -> TwoVarClass {
    let num = k("L-1").mul(&l_s()).mul(&k("L^(-5/2)"));
    let den = l_s().mul(&k("L^(1/2)")).sub(&TwoVarClass::one());
    num.div(&den).expect("nonzero")
}

/// `I_2 = (L-1) L^{-2} / (L^{s+1/2} - 1)`, the form consistent with both endpoints.
pub fn i2_closed() -> TwoVarClass {
    let den = l_s().mul(&k("L^(1/2)")).sub(&TwoVarClass::one());
    k("(L-1)*L^-2").div(&den).expect("nonzero")
}

/// `I_3 = (L-1)/(X^6 L^5 - 1) (L^{-2} + X^3 + X^2/L + X^4 L + (L-1)/(L^3 (X L - 1)))`
/// with `X = L^{s-1/2}`.
pub fn i3_closed() -> TwoVarClass {
    let x = TwoVarClass::x();
    let one = TwoVarClass::one();
    let lm1 = k("L-1");
    let last = lm1
        .div(&k("L^3").mul(&x.mul(&l()).sub(&one)))
        .expect("nonzero");
    let bracket = k("L^-2")
        .add(&x.pow(3))
        .add(&x.pow(2).mul(&k("L^-1")))
        .add(&x.pow(4).mul(&l()))
        .add(&last);
    let den = x.pow(6).mul(&k("L^5")).sub(&one);
    lm1.div(&den).expect("nonzero").mul(&bracket)
}

/// Whether the truncated entry agrees with `closed` at every `S^e`, `e <= E`.
pub fn agrees_with(entry: &Coefficient, closed: &TwoVarClass) -> Result<Vec<bool>> {
    let e_max = entry.sorder();
    let mine = entry.expand(e_max)?;
    let theirs = closed.expand_s(e_max)?;
    Ok(mine.iter().zip(&theirs).map(|(a, b)| a == b).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> MotClass {
        s.parse().unwrap()
    }

    #[test]
    fn closed_forms_at_s_half() {
        let half = MotClass::q_pow(-1);
        assert_eq!(i2_closed().eval_s(&half).unwrap(), c("L^-2"));
        assert_eq!(i2_shifted().eval_s(&half).unwrap(), c("L^-2"));
        assert_eq!(i3_closed().eval_s(&half).unwrap(), c("L^-3"));
    }

    #[test]
    fn shifted_and_closed_i2_differ_by_x() {
        assert_eq!(i2_shifted(), i2_closed().mul(&TwoVarClass::x()));
        // The shifted form has a nonzero S^0 term, but ord Disc_2 >= 1 on (t O)^2.
        assert!(!i2_shifted().expand_s(0).unwrap()[0].is_zero());
        assert!(i2_closed().expand_s(0).unwrap()[0].is_zero());
    }

    #[test]
    fn i2_matches_closed_form() {
        let e = discriminant_zeta(2, 4).unwrap();
        assert!(agrees_with(&e, &i2_closed()).unwrap().iter().all(|&b| b));
        assert!(!agrees_with(&e, &i2_shifted()).unwrap()[0]);
        assert_eq!(e.at_half().unwrap(), c("L^-2"));
    }

    #[test]
    fn reduction_agrees_with_direct_discriminant() {
        let reduced = discriminant_zeta(3, 3).unwrap();
        let direct = discriminant_zeta_direct3(3).unwrap();
        assert_eq!(reduced, direct);
        assert!(agrees_with(&reduced, &i3_closed()).unwrap().iter().all(|&b| b));
    }

    #[test]
    fn degree_four_is_out_of_scope() {
        assert!(matches!(discriminant_zeta(4, 2), Err(Error::Budget(_))));
    }
}
