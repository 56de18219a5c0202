//! Plane curve singularities given by branch parametrizations.
//!
//! A branch is a pair of truncated integer power series `(x(t), y(t))` through
//! the origin. Every quantity computed here reduces to ranks of integer
//! matrices built from truncated jets of monomials along the branches.

mod builtin;
mod hprofile;
mod invariants;

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyexpr::MPoly;
pub use builtin::{builtin, BUILTIN_NAMES};
pub use hprofile::{HEntry, HProfile};

/// Extra series terms required beyond the order an operation actually uses.
pub const GUARD: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchParam {
    pub x: Vec<BigInt>,
    pub y: Vec<BigInt>,
    /// Terms of order `>= trunc` are unknown.
    pub trunc: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(usize),
    /// Every known term vanishes.
    AtLeast(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub branches: usize,
    pub min_trunc: usize,
    pub checked_polynomial: bool,
}

pub struct CurveSing {
    pub name: String,
    pub f: Option<MPoly>,
    pub branches: Vec<BranchParam>,
    profile: Mutex<HProfile>,
}

impl Clone for CurveSing {
    fn clone(&self) -> Self {
        CurveSing {
            name: self.name.clone(),
            f: self.f.clone(),
            branches: self.branches.clone(),
            profile: Mutex::new(self.profile.lock().expect("profile lock").clone()),
        }
    }
}

impl std::fmt::Debug for CurveSing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CurveSing")
            .field("name", &self.name)
            .field("f", &self.f.as_ref().map(|p| p.to_string()))
            .field("branches", &self.branches)
            .finish()
    }
}

/// Truncated product of two series mod `t^k`.
pub(crate) fn mul_trunc(a: &[BigInt], b: &[BigInt], k: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); k];
    for (i, x) in a.iter().enumerate().take(k) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(k - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn series_order(s: &[BigInt]) -> Option<usize> {
    s.iter().position(|c| !c.is_zero())
}

impl BranchParam {
    pub fn new(x: Vec<BigInt>, y: Vec<BigInt>, trunc: usize) -> BranchParam {
        BranchParam { x, y, trunc }
    }

    pub fn from_i64(x: &[i64], y: &[i64], trunc: usize) -> BranchParam {
        let conv = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect();
        BranchParam::new(conv(x), conv(y), trunc)
    }

    fn padded(s: &[BigInt], k: usize) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = s.iter().take(k).cloned().collect();
        v.resize(k, BigInt::zero());
        v
    }

    /// `x(t) mod t^k` and `y(t) mod t^k`.
    pub fn jets(&self, k: usize) -> (Vec<BigInt>, Vec<BigInt>) {
        (Self::padded(&self.x, k), Self::padded(&self.y, k))
    }

    /// Requires `trunc >= k + GUARD` for an operation that uses order `k`.
    pub fn require(&self, k: usize) -> Result<()> {
        if self.trunc < k + GUARD {
            return Err(Error::Truncation(format!(
                "order {k} needs a branch truncation of at least {}, have {}",
                k + GUARD,
                self.trunc
            )));
        }
        Ok(())
    }

    /// `g(x(t), y(t)) mod t^k`; the caller guarantees `trunc >= k`.
    pub fn compose(&self, g: &MPoly, k: usize) -> Vec<BigInt> {
        let (x, y) = self.jets(k);
        let maxa = g.terms().map(|(e, _)| e[0]).max().unwrap_or(0) as usize;
        let maxb = g.terms().map(|(e, _)| e[1]).max().unwrap_or(0) as usize;
        let xp = powers(&x, maxa, k);
        let yp = powers(&y, maxb, k);
        let mut out = vec![BigInt::zero(); k];
        for (e, c) in g.terms() {
            let m = mul_trunc(&xp[e[0] as usize], &yp[e[1] as usize], k);
            for (o, v) in out.iter_mut().zip(m) {
                *o += c * v;
            }
        }
        out
    }

    /// `ord_t g(x(t), y(t))`, using every known term.
    pub fn valuation(&self, g: &MPoly) -> Valuation {
        let s = self.compose(g, self.trunc);
        match series_order(&s) {
            Some(v) => Valuation::Finite(v),
            None => Valuation::AtLeast(self.trunc),
        }
    }
}

/// `[1, s, s^2, ..., s^n] mod t^k`.
pub(crate) fn powers(s: &[BigInt], n: usize, k: usize) -> Vec<Vec<BigInt>> {
    let mut one = vec![BigInt::zero(); k];
    if k > 0 {
        one[0] = BigInt::from(1);
    }
    let mut out = vec![one];
    for i in 0..n {
        let next = mul_trunc(&out[i], s, k);
        out.push(next);
    }
    out
}

#[derive(Serialize, Deserialize)]
struct BranchJson {
    x: Vec<serde_json::Value>,
    y: Vec<serde_json::Value>,
    trunc: usize,
}

#[derive(Serialize, Deserialize)]
struct CurveJson {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    f: Option<String>,
    branches: Vec<BranchJson>,
}

impl CurveSing {
    pub fn new(name: impl Into<String>, f: Option<MPoly>, branches: Vec<BranchParam>) -> Result<CurveSing> {
        if branches.is_empty() {
            return Err(Error::InvalidInput("a curve needs at least one branch".into()));
        }
        if let Some(f) = &f {
            if f.nvars() != 2 {
                return Err(Error::InvalidInput("defining polynomial must be in x, y".into()));
            }
        }
        Ok(CurveSing {
            name: name.into(),
            f,
            branches,
            profile: Mutex::new(HProfile::default()),
        })
    }

    pub fn r(&self) -> usize {
        self.branches.len()
    }

    pub fn from_json_str(s: &str) -> Result<CurveSing> {
        let j: CurveJson = serde_json::from_str(s)?;
        let f = j.f.as_deref().map(|t| MPoly::parse(t, 2)).transpose()?;
        let conv = |v: Vec<serde_json::Value>| {
            crate::series::json_to_bigints(Some(&serde_json::Value::Array(v)))
        };
        let branches = j
            .branches
            .into_iter()
            .map(|b| Ok(BranchParam::new(conv(b.x)?, conv(b.y)?, b.trunc)))
            .collect::<Result<Vec<_>>>()?;
        CurveSing::new(j.name, f, branches)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = CurveJson {
            name: self.name.clone(),
            f: self.f.as_ref().map(|p| p.to_string()),
            branches: self
                .branches
                .iter()
                .map(|b| {
                    let conv = |v: &[BigInt]| match crate::series::bigints_to_json(v) {
                        serde_json::Value::Array(a) => a,
                        _ => unreachable!(),
                    };
                    BranchJson {
                        x: conv(&b.x),
                        y: conv(&b.y),
                        trunc: b.trunc,
                    }
                })
                .collect(),
        };
        serde_json::to_value(j).expect("curve serializes")
    }

    pub fn valuation(&self, i: usize, g: &MPoly) -> Result<Valuation> {
        if g.is_zero() {
            return Err(Error::InvalidInput("valuation of the zero polynomial".into()));
        }
        let b = self
            .branches
            .get(i)
            .ok_or_else(|| Error::InvalidInput(format!("no branch {i}")))?;
        Ok(b.valuation(g))
    }

    /// Checks that every branch passes through the origin, annihilates the
    /// defining polynomial to its truncation order, and that no two branches
    /// describe the same germ.
    pub fn validate(&self) -> Result<ValidationReport> {
        for (i, b) in self.branches.iter().enumerate() {
            let (x, y) = b.jets(b.trunc);
            let ox = series_order(&x);
            let oy = series_order(&y);
            if ox.is_none() && oy.is_none() {
                return Err(Error::Validation(format!("branch {i} is identically zero")));
            }
            if ox == Some(0) || oy == Some(0) {
                return Err(Error::Validation(format!(
                    "branch {i} does not pass through the origin"
                )));
            }
            if b.trunc <= GUARD {
                return Err(Error::Validation(format!(
                    "branch {i} truncation {} is below the guard",
                    b.trunc
                )));
            }
            if let Some(f) = &self.f {
                let s = b.compose(f, b.trunc);
                if let Some(o) = series_order(&s) {
                    return Err(Error::Validation(format!(
                        "branch {i} does not annihilate f = {f}: f(branch) has a nonzero term {}*t^{o}",
                        s[o]
                    )));
                }
            }
        }
        for i in 0..self.r() {
            for j in i + 1..self.r() {
                if self.same_germ(i, j)? {
                    return Err(Error::Validation(format!(
                        "branches {i} and {j} parametrize the same germ"
                    )));
                }
            }
        }
        Ok(ValidationReport {
            branches: self.r(),
            min_trunc: self.branches.iter().map(|b| b.trunc).min().unwrap_or(0),
            checked_polynomial: self.f.is_some(),
        })
    }

    /// Two branches give the same germ iff imposing order `k` on both cuts out
    /// the same ideal as imposing it on one, for the largest usable `k`.
    fn same_germ(&self, i: usize, j: usize) -> Result<bool> {
        let bi = self.branches[i].clone();
        let bj = self.branches[j].clone();
        let k = bi.trunc.min(bj.trunc) - GUARD;
        let pair = CurveSing::new("pair", None, vec![bi.clone(), bj])?;
        let single = CurveSing::new("single", None, vec![bi])?;
        Ok(pair.h_codim(&[k, k])? == single.h_codim(&[k])?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> MPoly {
        MPoly::parse(s, 2).unwrap()
    }

    #[test]
    fn builtins_validate() {
        for name in BUILTIN_NAMES {
            builtin(name).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn inconsistent_polynomial_is_rejected() {
        let c = CurveSing::new(
            "bad",
            Some(g("x*y")),
            vec![BranchParam::from_i64(&[0, 0, 1], &[0, 0, 0, 1], 24)],
        )
        .unwrap();
        let err = c.validate().unwrap_err();
        assert!(err.to_string().contains("t^5"), "{err}");
    }

    #[test]
    fn duplicate_branches_are_rejected() {
        let c = CurveSing::new(
            "dup",
            None,
            vec![
                BranchParam::from_i64(&[0, 1], &[0], 24),
                BranchParam::from_i64(&[0, 2], &[0], 24),
            ],
        )
        .unwrap();
        assert!(matches!(c.validate(), Err(Error::Validation(_))));
        let c = CurveSing::new("origin", None, vec![BranchParam::from_i64(&[1, 1], &[0, 1], 24)]).unwrap();
        assert!(matches!(c.validate(), Err(Error::Validation(_))));
    }

    #[test]
    fn valuations_on_cusp() {
        let c = builtin("cusp").unwrap();
        assert_eq!(c.valuation(0, &g("x+y")).unwrap(), Valuation::Finite(2));
        assert_eq!(c.valuation(0, &g("x*y")).unwrap(), Valuation::Finite(5));
        assert_eq!(c.valuation(0, &g("y^2-x^3")).unwrap(), Valuation::AtLeast(24));
        assert!(c.valuation(0, &MPoly::zero(2)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = builtin("node").unwrap();
        let back = CurveSing::from_json_str(&c.to_json().to_string()).unwrap();
        assert_eq!(back.branches, c.branches);
        assert_eq!(back.f, c.f);
        let text = r#"{"name":"c","f":"y^2-x^3","branches":[{"x":[0,0,1],"y":[0,0,0,"1"],"trunc":12}]}"#;
        let c = CurveSing::from_json_str(text).unwrap();
        c.validate().unwrap();
    }
}
