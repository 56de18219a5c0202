//! Rational functions in `q = L^(1/2)` and `S = L^(-s)` with integer coefficients.
//!
//! Canonical form mirrors [`MotClass`]: numerator and denominator are coprime
//! in `Z[q, S]` and the denominator's leading coefficient (highest power of
//! `S`, then highest power of `q`) is positive. The gcd is taken as the gcd
//! of `Z[q]`-contents times the primitive part of a Euclidean gcd over `Q(q)[S]`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::motring::{render_poly, MotClass, Poly};
use crate::series::{bigints_to_json, json_to_bigints};

/// Polynomial in `S` with coefficients in `Z[q]`; `c[k]` multiplies `S^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    c: Vec<Poly>,
}

impl BiPoly {
    pub fn from_coeffs(mut c: Vec<Poly>) -> BiPoly {
        while c.last().is_some_and(Poly::is_zero) {
            c.pop();
        }
        BiPoly { c }
    }

    pub fn zero() -> BiPoly {
        BiPoly { c: Vec::new() }
    }

    pub fn constant(p: Poly) -> BiPoly {
        BiPoly::from_coeffs(vec![p])
    }

    /// `p * S^k`.
    pub fn monomial(p: Poly, k: usize) -> BiPoly {
        let mut c = vec![Poly::zero(); k + 1];
        c[k] = p;
        BiPoly::from_coeffs(c)
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn lead(&self) -> &Poly {
        self.c.last().expect("nonzero")
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let n = self.c.len().max(o.c.len());
        BiPoly::from_coeffs(
            (0..n)
                .map(|i| match (self.c.get(i), o.c.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    _ => unreachable!(),
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            c: self.c.iter().map(|p| -p).collect(),
        }
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![Poly::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        BiPoly::from_coeffs(out)
    }

    pub fn scale(&self, p: &Poly) -> BiPoly {
        BiPoly::from_coeffs(self.c.iter().map(|a| a * p).collect())
    }

    /// gcd of all coefficients in `Z[q]`, including integer content; the
    /// result has positive leading coefficient.
    pub fn content(&self) -> Poly {
        let mut g = Poly::zero();
        let mut ic = BigInt::zero();
        for a in &self.c {
            if a.is_zero() {
                continue;
            }
            g = Poly::gcd_primitive(&g, a);
            ic = ic.gcd(&a.content());
        }
        g.scale(&ic)
    }

    fn div_poly_exact(&self, p: &Poly) -> BiPoly {
        BiPoly::from_coeffs(
            self.c
                .iter()
                .map(|a| a.div_exact(p).expect("content divides every coefficient"))
                .collect(),
        )
    }

    /// Exact quotient in `Z[q][S]`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        let da = self.degree().unwrap();
        if da < dd {
            return None;
        }
        let mut r = self.c.clone();
        let mut q = vec![Poly::zero(); da - dd + 1];
        for k in (0..=da - dd).rev() {
            let top = r[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let qc = top.div_exact(d.lead())?;
            for (i, b) in d.c.iter().enumerate() {
                r[k + i] = &r[k + i] - &(&qc * b);
            }
            q[k] = qc;
        }
        if r.iter().any(|p| !p.is_zero()) {
            return None;
        }
        Some(BiPoly::from_coeffs(q))
    }

    fn to_field(&self) -> Vec<MotClass> {
        self.c.iter().cloned().map(MotClass::from_poly).collect()
    }

    /// Clears denominators of a `Q(q)[S]` polynomial and takes the primitive part.
    fn from_field(v: &[MotClass]) -> BiPoly {
        let mut common = Poly::one();
        for a in v {
            if !a.is_zero() {
                common = &common * a.den();
            }
        }
        let c: Vec<Poly> = v
            .iter()
            .map(|a| {
                if a.is_zero() {
                    Poly::zero()
                } else {
                    (a.num() * &common)
                        .div_exact(a.den())
                        .expect("denominator divides the common multiple")
                }
            })
            .collect();
        let b = BiPoly::from_coeffs(c);
        let ct = b.content();
        b.div_poly_exact(&ct)
    }

    fn positive_lead(self) -> BiPoly {
        if self.lead().lead().is_negative() {
            self.neg()
        } else {
            self
        }
    }

    /// gcd in `Z[q, S]` with positive leading coefficient.
    pub fn gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
        if a.is_zero() {
            return b.clone().positive_lead_or_zero();
        }
        if b.is_zero() {
            return a.clone().positive_lead();
        }
        let ca = a.content();
        let cb = b.content();
        let c = Poly::gcd_primitive(&ca, &cb).scale(&ca.content().gcd(&cb.content()));
        let pa = a.div_poly_exact(&ca);
        let pb = b.div_poly_exact(&cb);
        if pa.degree() == Some(0) || pb.degree() == Some(0) {
            return BiPoly::constant(c);
        }
        let (mut x, mut y) = (pa.to_field(), pb.to_field());
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        loop {
            let r = field_rem(&x, &y);
            if r.is_empty() {
                break;
            }
            x = y;
            y = r;
        }
        let g = BiPoly::from_field(&y).positive_lead();
        g.scale(&c)
    }

    fn positive_lead_or_zero(self) -> BiPoly {
        if self.is_zero() {
            self
        } else {
            self.positive_lead()
        }
    }

    pub fn eval(&self, s: &MotClass) -> MotClass {
        let mut acc = MotClass::zero();
        for p in self.c.iter().rev() {
            acc = &(&acc * s) + &MotClass::from_poly(p.clone());
        }
        acc
    }

    fn inflate(&self, k: usize) -> BiPoly {
        let mut c = vec![Poly::zero(); self.c.len().saturating_sub(1) * k + 1];
        for (i, p) in self.c.iter().enumerate() {
            c[i * k] = p.inflate(k);
        }
        BiPoly::from_coeffs(c)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, p) in self.c.iter().enumerate().rev() {
            if p.is_zero() {
                continue;
            }
            let coef = render_poly(p);
            // a single negative term is written with a leading minus sign
            let (neg, coef) = match coef.strip_prefix('-') {
                Some(rest) if p.term_count() == 1 => (true, rest.to_string()),
                _ => (false, coef),
            };
            let part = match k {
                0 => coef,
                _ => {
                    let s = if k == 1 { "S".to_string() } else { format!("S^{k}") };
                    if coef == "1" {
                        s
                    } else if p.term_count() == 1 {
                        format!("{coef}*{s}")
                    } else {
                        format!("({coef})*{s}")
                    }
                }
            };
            match (out.is_empty(), neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&part);
        }
        out
    }

    fn to_json(&self) -> Value {
        Value::Array(self.c.iter().map(|p| bigints_to_json(p.coeffs())).collect())
    }

    fn from_json(v: &Value) -> Result<BiPoly> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::InvalidInput("expected an array of coefficient arrays".into()))?;
        Ok(BiPoly::from_coeffs(
            arr.iter()
                .map(|x| Ok(Poly::from_coeffs(json_to_bigints(Some(x))?)))
                .collect::<Result<_>>()?,
        ))
    }
}

/// Remainder of `a` by `b` over `Q(q)`; an empty vector is zero.
fn field_rem(a: &[MotClass], b: &[MotClass]) -> Vec<MotClass> {
    let mut r: Vec<MotClass> = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let top = r.last().unwrap().clone();
        if top.is_zero() {
            r.pop();
            continue;
        }
        let f = &top / lb;
        let shift = r.len() - 1 - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&f * bc);
        }
        r.pop();
    }
    while r.last().is_some_and(MotClass::is_zero) {
        r.pop();
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoVarClass {
    num: BiPoly,
    den: BiPoly,
}

impl TwoVarClass {
    pub fn normalize(num: BiPoly, den: BiPoly) -> Result<TwoVarClass> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(TwoVarClass::zero());
        }
        let g = BiPoly::gcd(&num, &den);
        let mut n = num.div_exact(&g).expect("gcd divides numerator");
        let mut d = den.div_exact(&g).expect("gcd divides denominator");
        if d.lead().lead().is_negative() {
            n = n.neg();
            d = d.neg();
        }
        Ok(TwoVarClass { num: n, den: d })
    }

    pub fn zero() -> TwoVarClass {
        TwoVarClass {
            num: BiPoly::zero(),
            den: BiPoly::constant(Poly::one()),
        }
    }

    pub fn one() -> TwoVarClass {
        TwoVarClass::from_class(&MotClass::one())
    }

    pub fn from_class(c: &MotClass) -> TwoVarClass {
        TwoVarClass::normalize(BiPoly::constant(c.num().clone()), BiPoly::constant(c.den().clone()))
            .expect("class denominator is nonzero")
    }

    /// `S^k` for any integer `k`.
    pub fn s_pow(k: i64) -> TwoVarClass {
        let m = BiPoly::monomial(Poly::one(), k.unsigned_abs() as usize);
        let one = BiPoly::constant(Poly::one());
        if k >= 0 {
            TwoVarClass { num: m, den: one }
        } else {
            TwoVarClass { num: one, den: m }
        }
    }

    /// `X = L^(s - 1/2) = q^{-1} S^{-1}`.
    pub fn x() -> TwoVarClass {
        TwoVarClass::s_pow(-1).mul(&TwoVarClass::from_class(&MotClass::q_pow(-1)))
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &TwoVarClass) -> TwoVarClass {
        TwoVarClass::normalize(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
        .expect("nonzero denominators")
    }

    pub fn sub(&self, o: &TwoVarClass) -> TwoVarClass {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> TwoVarClass {
        TwoVarClass {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &TwoVarClass) -> TwoVarClass {
        TwoVarClass::normalize(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn div(&self, o: &TwoVarClass) -> Result<TwoVarClass> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        TwoVarClass::normalize(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn pow(&self, e: u32) -> TwoVarClass {
        (0..e).fold(TwoVarClass::one(), |acc, _| acc.mul(self))
    }

    /// Adams operation `q -> q^k`, `S -> S^k`.
    pub fn adams(&self, k: usize) -> TwoVarClass {
        TwoVarClass::normalize(self.num.inflate(k), self.den.inflate(k)).expect("nonzero denominator")
    }

    /// Substitutes a class for `S`.
    pub fn eval_s(&self, s: &MotClass) -> Result<MotClass> {
        let d = self.den.eval(s);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.num.eval(s) / &d)
    }

    /// Power-series coefficients of `S^0..S^e`; the denominator must not vanish at `S = 0`.
    pub fn expand_s(&self, e: usize) -> Result<Vec<MotClass>> {
        let d0 = self.den.coeffs().first().cloned().unwrap_or_default();
        if d0.is_zero() {
            return Err(Error::InvalidInput("class has a pole at S = 0".into()));
        }
        let d0 = MotClass::from_poly(d0);
        let dc: Vec<MotClass> = self.den.to_field();
        let nc: Vec<MotClass> = self.num.to_field();
        let mut out: Vec<MotClass> = Vec::with_capacity(e + 1);
        for k in 0..=e {
            let mut acc = nc.get(k).cloned().unwrap_or_default();
            for j in 1..=k.min(dc.len().saturating_sub(1)) {
                acc -= &(&dc[j] * &out[k - j]);
            }
            out.push(&acc / &d0);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({ "num": self.num.to_json(), "den": self.den.to_json() })
    }

    pub fn from_json(v: &Value) -> Result<TwoVarClass> {
        let num = BiPoly::from_json(v.get("num").unwrap_or(&Value::Null))?;
        let den = BiPoly::from_json(v.get("den").unwrap_or(&Value::Null))?;
        TwoVarClass::normalize(num, den)
    }
}

impl fmt::Display for TwoVarClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == BiPoly::constant(Poly::one()) {
            write!(f, "{}", self.num.render())
        } else {
            write!(f, "({})/({})", self.num.render(), self.den.render())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(s: &str) -> TwoVarClass {
        TwoVarClass::from_class(&s.parse().unwrap())
    }

    fn s() -> TwoVarClass {
        TwoVarClass::s_pow(1)
    }

    #[test]
    fn cancels_common_factors() {
        // (S^2 - L)/(S - q) = S + q
        let num = s().mul(&s()).sub(&c("L"));
        let den = s().sub(&c("L^(1/2)"));
        let r = num.div(&den).unwrap();
        assert_eq!(r, s().add(&c("L^(1/2)")));
        assert_eq!(r.den(), &BiPoly::constant(Poly::one()));
    }

    #[test]
    fn x_is_inverse_of_q_s() {
        let prod = TwoVarClass::x().mul(&s()).mul(&c("L^(1/2)"));
        assert_eq!(prod, TwoVarClass::one());
    }

    #[test]
    fn expansion_and_substitution() {
        // 1/(1 - q S) = sum q^k S^k
        let g = TwoVarClass::one().div(&TwoVarClass::one().sub(&c("L^(1/2)").mul(&s()))).unwrap();
        let e = g.expand_s(3).unwrap();
        let want: Vec<MotClass> = (0..4).map(MotClass::q_pow).collect();
        assert_eq!(e, want);
        assert_eq!(g.eval_s(&MotClass::q_pow(-2)).unwrap(), "L^(1/2)/(L^(1/2)-1)".parse().unwrap());
        assert!(TwoVarClass::s_pow(-1).expand_s(2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = c("L-1").div(&c("L^(1/2)").sub(&s())).unwrap();
        assert_eq!(TwoVarClass::from_json(&a.to_json()).unwrap(), a);
    }

    fn small() -> impl Strategy<Value = TwoVarClass> {
        prop::collection::vec((-2i64..=2, 0usize..3, 0usize..3), 1..4).prop_map(|ts| {
            ts.into_iter().fold(TwoVarClass::zero(), |acc, (k, a, b)| {
                acc.add(
                    &TwoVarClass::from_class(&MotClass::int(k).mul_q_pow(a as i64))
                        .mul(&TwoVarClass::s_pow(b as i64)),
                )
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn canonical_form_is_unique(a in small(), b in small(), k in small()) {
            prop_assume!(!b.is_zero() && !k.is_zero());
            let x = a.div(&b).unwrap();
            let y = a.mul(&k).div(&b.mul(&k)).unwrap();
            prop_assert_eq!(&x, &y);
            let again = TwoVarClass::normalize(x.num().clone(), x.den().clone()).unwrap();
            prop_assert_eq!(x, again);
        }

        #[test]
        fn field_laws(a in small(), b in small(), k in 1usize..3) {
            prop_assert_eq!(a.add(&b).sub(&b), a.clone());
            prop_assert_eq!(a.mul(&b).adams(k), a.adams(k).mul(&b.adams(k)));
            if !b.is_zero() {
                prop_assert_eq!(a.div(&b).unwrap().mul(&b), a);
            }
        }
    }
}
