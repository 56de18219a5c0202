//! Truncated power series in `T` over [`MotClass`], plethystic exponential and
//! logarithm, symmetric powers and the orbifold partition sum.

mod partition;
pub mod trexp;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::motring::MotClass;
pub use partition::{HalfInt, Partition};

/// Power series `c_0 + c_1 T + ... + c_N T^N + O(T^(N+1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotSeries {
    coeffs: Vec<MotClass>,
}

impl MotSeries {
    /// Series whose truncation order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<MotClass>) -> MotSeries {
        assert!(!coeffs.is_empty(), "series needs at least a constant term");
        MotSeries { coeffs }
    }

    /// Pads or cuts `coeffs` to exactly order `n`.
    pub fn with_order(mut coeffs: Vec<MotClass>, n: usize) -> MotSeries {
        coeffs.resize(n + 1, MotClass::zero());
        MotSeries { coeffs }
    }

    pub fn zero(n: usize) -> MotSeries {
        MotSeries::with_order(Vec::new(), n)
    }

    pub fn one(n: usize) -> MotSeries {
        MotSeries::constant(MotClass::one(), n)
    }

    pub fn constant(c: MotClass, n: usize) -> MotSeries {
        MotSeries::with_order(vec![c], n)
    }

    /// `c T^k` truncated at order `n`.
    pub fn monomial(c: MotClass, k: usize, n: usize) -> MotSeries {
        let mut s = MotSeries::zero(n);
        if k <= n {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &MotClass {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[MotClass] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<MotClass> {
        self.coeffs
    }

    pub fn truncate(&self, n: usize) -> MotSeries {
        MotSeries::with_order(self.coeffs[..=n.min(self.order())].to_vec(), n.min(self.order()))
    }

    pub fn scale(&self, c: &MotClass) -> MotSeries {
        MotSeries::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Substitution `T -> c T`.
    pub fn rescale_t(&self, c: &MotClass) -> MotSeries {
        let mut pw = MotClass::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw = &pw * c;
        }
        MotSeries::new(out)
    }

    /// Adams operation on coefficients combined with `T -> T^k`.
    pub fn adams(&self, k: usize) -> MotSeries {
        let n = self.order();
        let mut out = vec![MotClass::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i * k > n {
                break;
            }
            out[i * k] = a.adams(k);
        }
        MotSeries::new(out)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<MotSeries> {
        let c0inv = self.coeffs[0].inv()?;
        let n = self.order();
        let mut out: Vec<MotClass> = Vec::with_capacity(n + 1);
        out.push(c0inv.clone());
        for k in 1..=n {
            let s: MotClass = (1..=k).map(|j| &self.coeffs[j] * &out[k - j]).sum();
            out.push(-(&s * &c0inv));
        }
        Ok(MotSeries::new(out))
    }

    /// Plethystic exponential of a series with zero constant term.
    pub fn exp_pleth(&self) -> Result<MotSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidInput(
                "plethystic exponential needs a zero constant term".into(),
            ));
        }
        let n = self.order();
        // g_m = sum_{k | m} adams_k(a_{m/k}) / k
        let mut g = vec![MotClass::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().skip(1) {
            if a.is_zero() {
                continue;
            }
            let mut k = 1;
            while i * k <= n {
                let term = a.adams(k) / MotClass::int(k as i64);
                g[i * k] += &term;
                k += 1;
            }
        }
        let e = exp_series(&g);
        if self.coeffs.iter().all(MotClass::is_integral) {
            if let Some(bad) = e.iter().position(|c| !c.is_integral()) {
                return Err(Error::Consistency(format!(
                    "plethystic exponential produced a non-integral coefficient at T^{bad}"
                )));
            }
        }
        Ok(MotSeries::new(e))
    }

    /// Inverse of [`MotSeries::exp_pleth`]; the constant term must be 1.
    pub fn log_pleth(&self) -> Result<MotSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidInput(
                "plethystic logarithm needs constant term 1".into(),
            ));
        }
        let n = self.order();
        let l = log_series(&self.coeffs);
        let mut a = vec![MotClass::zero(); n + 1];
        for m in 1..=n {
            let mut v = l[m].clone();
            for k in 2..=m {
                if m % k == 0 && !a[m / k].is_zero() {
                    v -= &(a[m / k].adams(k) / MotClass::int(k as i64));
                }
            }
            a[m] = v;
        }
        Ok(MotSeries::new(a))
    }

    /// Coefficientwise Euler-characteristic specialization.
    pub fn euler(&self) -> Result<Vec<BigRational>> {
        self.coeffs.iter().map(MotClass::euler).collect()
    }

    /// `[{n, num, den}]` with ascending `q`-coefficient arrays.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| {
                    json!({
                        "n": n,
                        "num": bigints_to_json(c.num().coeffs()),
                        "den": bigints_to_json(c.den().coeffs()),
                    })
                })
                .collect(),
        )
    }

    /// Reads the array form written by [`MotSeries::to_json`]; missing indices are zero.
    pub fn from_json(v: &Value) -> Result<MotSeries> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::InvalidInput("series JSON must be an array".into()))?;
        let mut entries = Vec::new();
        for e in arr {
            let n = e
                .get("n")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::InvalidInput("series entry needs integer `n`".into()))?
                as usize;
            let num = json_to_bigints(e.get("num"))?;
            let den = match e.get("den") {
                None => vec![BigInt::from(1)],
                d => json_to_bigints(d)?,
            };
            entries.push((n, MotClass::from_coeff_lists(num, den)?));
        }
        let order = entries.iter().map(|(n, _)| *n).max().unwrap_or(0);
        let mut coeffs = vec![MotClass::zero(); order + 1];
        for (n, c) in entries {
            coeffs[n] = c;
        }
        Ok(MotSeries::new(coeffs))
    }
}

pub(crate) fn bigints_to_json(cs: &[BigInt]) -> Value {
    Value::Array(
        cs.iter()
            .map(|c| match i64::try_from(c) {
                Ok(v) => json!(v),
                Err(_) => json!(c.to_string()),
            })
            .collect(),
    )
}

pub(crate) fn json_to_bigints(v: Option<&Value>) -> Result<Vec<BigInt>> {
    let arr = v
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidInput("expected an array of integers".into()))?;
    arr.iter()
        .map(|x| match x {
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| Error::InvalidInput(format!("not an integer: {n}"))),
            Value::String(s) => s
                .parse()
                .map_err(|_| Error::InvalidInput(format!("not an integer: {s}"))),
            other => Err(Error::InvalidInput(format!("not an integer: {other}"))),
        })
        .collect()
}

/// `exp(sum g_j T^j)` for `g_0 = 0`, via `n e_n = sum_j j g_j e_{n-j}`.
fn exp_series(g: &[MotClass]) -> Vec<MotClass> {
    let n = g.len() - 1;
    let mut e = vec![MotClass::one()];
    for m in 1..=n {
        let s: MotClass = (1..=m)
            .filter(|&j| !g[j].is_zero())
            .map(|j| &(&g[j] * &e[m - j]) * &MotClass::int(j as i64))
            .sum();
        e.push(s / MotClass::int(m as i64));
    }
    e
}

/// `log(G)` for `G_0 = 1`.
fn log_series(gs: &[MotClass]) -> Vec<MotClass> {
    let n = gs.len() - 1;
    let mut l = vec![MotClass::zero(); n + 1];
    for m in 1..=n {
        let s: MotClass = (1..m)
            .filter(|&j| !l[j].is_zero())
            .map(|j| &(&l[j] * &gs[m - j]) * &MotClass::int(j as i64))
            .sum();
        l[m] = &gs[m] - &(s / MotClass::int(m as i64));
    }
    l
}

/// `Sym_m(a)`, the `T^m` coefficient of `Exp(a T)`.
pub fn sym_m(a: &MotClass, m: usize) -> MotClass {
    sym_table(a, m).pop().unwrap()
}

/// `[Sym_0(a), ..., Sym_m(a)]`.
pub fn sym_table(a: &MotClass, m: usize) -> Vec<MotClass> {
    if a.is_zero() {
        let mut v = vec![MotClass::zero(); m + 1];
        v[0] = MotClass::one();
        return v;
    }
    MotSeries::monomial(a.clone(), 1, m)
        .exp_pleth()
        .expect("monomial has zero constant term")
        .into_coeffs()
}

/// Orbifold partition sum: the `T^n` coefficient is
/// `sum_{lambda |- n} L^{-v(lambda)} prod_i Sym_{a_i}(A_i)`, where `A[i - 1] = A_i`.
pub fn orbifold_sum(d: u32, a: &[MotClass], n: usize) -> Result<MotSeries> {
    if a.len() < n {
        return Err(Error::InvalidInput(format!(
            "orbifold sum to order {n} needs A_1..A_{n}, got {}",
            a.len()
        )));
    }
    let syms: Vec<Vec<MotClass>> = (1..=n).map(|i| sym_table(&a[i - 1], n / i)).collect();
    let coeffs: Vec<MotClass> = (0..=n)
        .into_par_iter()
        .map(|m| {
            Partition::all(m)
                .iter()
                .filter_map(|lam| {
                    let mut prod = MotClass::one();
                    for (i, ai) in lam.parts_with_mult() {
                        let s = &syms[i - 1][ai];
                        if s.is_zero() {
                            return None;
                        }
                        prod = &prod * s;
                    }
                    Some(prod.mul_q_pow(-lam.v_weight(d).twice()))
                })
                .sum()
        })
        .collect();
    Ok(MotSeries::new(coeffs))
}

fn binop(a: &MotSeries, b: &MotSeries, f: impl Fn(&MotClass, &MotClass) -> MotClass) -> MotSeries {
    let n = a.order().min(b.order());
    MotSeries::new((0..=n).map(|i| f(&a.coeffs[i], &b.coeffs[i])).collect())
}

impl Add for &MotSeries {
    type Output = MotSeries;
    fn add(self, rhs: &MotSeries) -> MotSeries {
        binop(self, rhs, |a, b| a + b)
    }
}

impl Sub for &MotSeries {
    type Output = MotSeries;
    fn sub(self, rhs: &MotSeries) -> MotSeries {
        binop(self, rhs, |a, b| a - b)
    }
}

impl Neg for &MotSeries {
    type Output = MotSeries;
    fn neg(self) -> MotSeries {
        MotSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &MotSeries {
    type Output = MotSeries;
    fn mul(self, rhs: &MotSeries) -> MotSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![MotClass::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        MotSeries::new(out)
    }
}

fn is_atomic(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    !body.contains(['+', '-', '/'])
}

impl fmt::Display for MotSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut s = c.to_string();
            let mut neg = false;
            if is_atomic(&s) && s.starts_with('-') && !first {
                neg = true;
                s.remove(0);
            }
            let body = match n {
                0 => s,
                _ => {
                    let t = if n == 1 { "T".to_string() } else { format!("T^{n}") };
                    if s == "1" {
                        t
                    } else if s == "-1" {
                        format!("-{t}")
                    } else if is_atomic(&s) {
                        format!("{s}*{t}")
                    } else {
                        format!("({s})*{t}")
                    }
                }
            };
            if first {
                write!(f, "{body}")?;
            } else if neg {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(T^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(s: &str) -> MotClass {
        s.parse().unwrap()
    }

    fn ser(cs: &[&str]) -> MotSeries {
        MotSeries::new(cs.iter().map(|s| c(s)).collect())
    }

    #[test]
    fn exp_of_point_is_geometric() {
        let e = ser(&["0", "1", "0", "0", "0"]).exp_pleth().unwrap();
        assert_eq!(e, ser(&["1", "1", "1", "1", "1"]));
        let e = ser(&["0", "L", "0", "0"]).exp_pleth().unwrap();
        assert_eq!(e, ser(&["1", "L", "L^2", "L^3"]));
    }

    #[test]
    fn exp_rejects_constant_term() {
        assert!(ser(&["1", "1"]).exp_pleth().is_err());
        assert!(ser(&["2", "1"]).log_pleth().is_err());
    }

    #[test]
    fn log_examples() {
        let geo = ser(&["1", "1", "1", "1", "1", "1"]);
        assert_eq!(geo.log_pleth().unwrap(), ser(&["0", "1", "0", "0", "0", "0"]));
        assert_eq!(MotSeries::one(4).log_pleth().unwrap(), MotSeries::zero(4));
        let f = ser(&["0", "L^(1/2)", "0", "1", "0", "0", "0"]);
        assert_eq!(f.exp_pleth().unwrap().log_pleth().unwrap(), f);
    }

    #[test]
    fn sym_examples() {
        assert_eq!(sym_m(&MotClass::one(), 5), MotClass::one());
        assert_eq!(sym_m(&c("L^-1"), 2), c("L^-2"));
        assert_eq!(sym_m(&c("L+1"), 2), c("L^2+L+1"));
        assert_eq!(sym_m(&c("0"), 0), MotClass::one());
    }

    #[test]
    fn orbifold_examples() {
        let zeros = vec![MotClass::zero(); 5];
        assert_eq!(orbifold_sum(1, &zeros, 5).unwrap(), MotSeries::one(5));
        let smooth = vec![c("L^-1"); 4];
        let s = orbifold_sum(1, &smooth, 4).unwrap();
        assert_eq!(s.coeff(2), &c("L^(-3/2)+L^(-2)"));
        assert_eq!(s.coeff(1), &smooth[0]);
        let node = vec![MotClass::zero(), c("(L-1)/L")];
        let s = orbifold_sum(1, &node, 2).unwrap();
        assert_eq!(s.coeff(2), &c("(L-1)*L^(-3/2)"));
        assert!(orbifold_sum(1, &node, 3).is_err());
    }

    #[test]
    fn rendering() {
        let s = ser(&["1", "-L", "L-1", "0"]);
        assert_eq!(s.to_string(), "1 - L*T + (L-1)*T^2 + O(T^4)");
        assert_eq!(MotSeries::zero(1).to_string(), "0 + O(T^2)");
    }

    #[test]
    fn json_round_trip() {
        let s = ser(&["1", "(L-1)/(L^2)", "L^(1/2)"]);
        assert_eq!(MotSeries::from_json(&s.to_json()).unwrap(), s);
        let big = MotClass::from_bigint(BigInt::from(10).pow(30));
        let s = MotSeries::new(vec![big]);
        assert_eq!(MotSeries::from_json(&s.to_json()).unwrap(), s);
    }

    fn small_class() -> impl Strategy<Value = MotClass> {
        (prop::collection::vec(-2i64..=2, 0..3), -2i64..=2).prop_map(|(v, s)| {
            MotClass::from_poly(crate::motring::Poly::from_i64s(&v)).mul_q_pow(s)
        })
    }

    fn primitive(n: usize) -> impl Strategy<Value = MotSeries> {
        prop::collection::vec(small_class(), n).prop_map(|mut v| {
            v.insert(0, MotClass::zero());
            MotSeries::new(v)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn exp_turns_sums_into_products(f in primitive(5), g in primitive(5)) {
            let lhs = (&f + &g).exp_pleth().unwrap();
            let rhs = &f.exp_pleth().unwrap() * &g.exp_pleth().unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn log_inverts_exp(f in primitive(5)) {
            prop_assert_eq!(f.exp_pleth().unwrap().log_pleth().unwrap(), f);
        }

        #[test]
        fn sym_half_twist(a in small_class(), m in 0usize..=6, sign in prop::bool::ANY) {
            let k = if sign { 1 } else { -1 };
            let lhs = sym_m(&a.mul_q_pow(k), m);
            prop_assert_eq!(lhs, sym_m(&a, m).mul_q_pow(k * m as i64));
        }

        #[test]
        fn sym_of_sum(a in small_class(), b in small_class(), m in 0usize..=5) {
            let sa = sym_table(&a, m);
            let sb = sym_table(&b, m);
            let rhs: MotClass = (0..=m).map(|i| &sa[i] * &sb[m - i]).sum();
            prop_assert_eq!(sym_m(&(&a + &b), m), rhs);
        }

        #[test]
        fn orbifold_first_coefficient(a in prop::collection::vec(small_class(), 4), d in 1u32..4) {
            let s = orbifold_sum(d, &a, 4).unwrap();
            prop_assert_eq!(s.coeff(0), &MotClass::one());
            prop_assert_eq!(s.coeff(1), &a[0]);
        }
    }
}
