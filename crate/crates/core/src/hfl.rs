//! Knot Floer homology `HFL^-` of an algebraic knot from its semigroup.
//!
//! An algebraic knot is an L-space knot. Its Alexander polynomial is
//! `Delta(t) = (1 - t) sum_{s in Gamma} t^s = sum_i (-1)^i t^{n_i}` and the
//! full knot complex is the staircase on generators `x_0, ..., x_{2k}` with
//! `A(x_i) = g - n_i`, `M(x_0) = 0` and
//! `d x_{2j+1} = U^{n_{2j+1} - n_{2j}} x_{2j} + x_{2j+2}`.
//! In the associated graded complex only the first term survives, so
//! `HFL^-` is `F[U]/U^{l_j}` on each `x_{2j}`, `j < k`, plus `F[U]` on `x_{2k}`.
//! `U` lowers `M` by 2 and `A` by 1.
//!
//! Gradings are reported as `d = -M/2` and `v = g - A`. With these the sum
//! `sum dim HFL^-_d(v) L^{d - 2h(v)} T^v` is compared with `P_gel`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::curve::CurveSing;
use crate::error::{Error, Result};
use crate::motring::MotClass;
use crate::series::MotSeries;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub maslov: i64,
    pub alexander: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    /// `x_0, ..., x_{2k}` in order of decreasing Alexander grading.
    pub generators: Vec<Generator>,
    pub genus: usize,
    /// Semigroup elements up to the conductor `2g`.
    pub semigroup: Vec<usize>,
}

/// The `(d, v)` cells with `dim HFL^-_d(v) = 1`, for `v <= n_max`.
pub type HflTable = BTreeMap<(i64, i64), usize>;

/// Builds the staircase of the semigroup given by its elements up to some bound
/// past the conductor.
pub fn staircase(gamma: &[usize]) -> Result<Staircase> {
    let set: std::collections::BTreeSet<usize> = gamma.iter().copied().collect();
    let bound = *set
        .iter()
        .next_back()
        .ok_or_else(|| Error::InvalidInput("semigroup is empty".into()))?;
    if !set.contains(&0) {
        return Err(Error::InvalidInput("semigroup must contain 0".into()));
    }
    for &a in &set {
        for &b in &set {
            if a + b <= bound && !set.contains(&(a + b)) {
                return Err(Error::InvalidInput(format!(
                    "not a semigroup: {a} + {b} is missing"
                )));
            }
        }
    }
    let mult = set.iter().copied().find(|&s| s > 0).unwrap_or(1);
    // conductor: start of a run of `mult` consecutive elements
    let conductor = (0..=bound)
        .find(|&c| c + mult <= bound + 1 && (c..c + mult).all(|s| set.contains(&s)))
        .ok_or_else(|| {
            Error::Truncation(format!("semigroup up to {bound} does not reach its conductor"))
        })?;
    let genus = conductor / 2;
    if (0..conductor).filter(|s| !set.contains(s)).count() != genus || conductor % 2 != 0 {
        return Err(Error::Validation(format!(
            "semigroup with conductor {conductor} is not symmetric"
        )));
    }
    // exponents of Delta: jumps of the indicator of Gamma
    let mut n = Vec::new();
    let mut prev_in = false;
    for s in 0..=conductor {
        let inside = s >= conductor || set.contains(&s);
        if inside != prev_in {
            n.push(s as i64);
        }
        prev_in = inside;
    }
    let g = genus as i64;
    let mut generators = Vec::with_capacity(n.len());
    let mut m = 0i64;
    for (i, &ni) in n.iter().enumerate() {
        if i > 0 {
            m += if i % 2 == 1 { 1 - 2 * (ni - n[i - 1]) } else { -1 };
        }
        generators.push(Generator {
            maslov: m,
            alexander: g - ni,
        });
    }
    Ok(Staircase {
        generators,
        genus,
        semigroup: set.into_iter().filter(|&s| s <= conductor).collect(),
    })
}

impl Staircase {
    /// Cells of `HFL^-` in `(d, v)` gradings with `v <= n_max`.
    pub fn table(&self, n_max: usize) -> HflTable {
        let g = self.genus as i64;
        let mut out = HflTable::new();
        let gens = &self.generators;
        let mut push = |gen: &Generator, i: i64| {
            let v = g - (gen.alexander - i);
            if v <= n_max as i64 {
                *out.entry((-(gen.maslov - 2 * i) / 2, v)).or_default() += 1;
            }
        };
        for j in (0..gens.len() - 1).step_by(2) {
            let l = gens[j].alexander - gens[j + 1].alexander;
            for i in 0..l {
                push(&gens[j], i);
            }
        }
        let top = gens.last().unwrap();
        for i in 0..=n_max as i64 {
            push(top, i);
        }
        out
    }

    /// `sum_v chi(HFL^-(v)) t^v` up to `t^N`.
    pub fn euler_series(&self, n_max: usize) -> Vec<i64> {
        let mut out = vec![0i64; n_max + 1];
        // every cell has even Maslov grading
        for ((_, v), dim) in self.table(n_max) {
            out[v as usize] += dim as i64;
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct HflReport {
    pub staircase: Staircase,
    pub table: HflTable,
    pub series: MotSeries,
    pub gel: MotSeries,
    pub equal: Vec<bool>,
    /// The Euler characteristic matches the curve's Alexander series.
    pub euler_ok: bool,
}

impl HflReport {
    pub fn pass(&self) -> bool {
        self.euler_ok && self.equal.iter().all(|&b| b)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "genus": self.staircase.genus,
            "semigroup": self.staircase.semigroup,
            "staircase": self.staircase.generators,
            "table": self.table.iter().map(|((d, v), dim)| json!({"d": d, "v": v, "dim": dim})).collect::<Vec<_>>(),
            "series": self.series.to_json(),
            "gel": self.gel.to_json(),
            "equal": self.equal,
            "euler_ok": self.euler_ok,
            "pass": self.pass(),
        })
    }
}

/// Semigroup elements far enough to see the conductor.
fn curve_semigroup(curve: &CurveSing) -> Result<Vec<usize>> {
    let trunc = curve.branches[0].trunc;
    let bound = trunc.saturating_sub(crate::curve::GUARD + 1);
    curve.semigroup(bound)
}

/// `sum dim HFL^-_d(v) L^{d - 2h(v)} T^v` to `T^N`, compared with `P_gel`.
pub fn hfl_poincare(curve: &CurveSing, n_max: usize) -> Result<HflReport> {
    if curve.r() != 1 {
        return Err(Error::Scope(format!(
            "HFL^- is only available for one branch; the curve has {}",
            curve.r()
        )));
    }
    let sc = staircase(&curve_semigroup(curve)?)?;
    let table = sc.table(n_max);
    let mut coeffs = vec![MotClass::zero(); n_max + 1];
    for (&(d, v), &dim) in &table {
        if v < 0 {
            return Err(Error::Consistency(format!("HFL^- has a cell at negative v = {v}")));
        }
        let h = curve.h_codim(&[v as usize])? as i64;
        coeffs[v as usize] += &MotClass::l_pow(d - 2 * h).scale(&(dim as i64).into());
    }
    let series = MotSeries::new(coeffs);
    let gel = curve.poincare_gel(n_max)?;
    let equal = series
        .coeffs()
        .iter()
        .zip(gel.coeffs())
        .map(|(a, b)| a == b)
        .collect();
    let alex = curve.alexander_series(n_max)?;
    let euler_ok = sc
        .euler_series(n_max)
        .iter()
        .zip(&alex)
        .all(|(a, b)| num_rational::BigRational::from_integer((*a).into()) == *b);
    Ok(HflReport {
        staircase: sc,
        table,
        series,
        gel,
        equal,
        euler_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::builtin;

    fn gens(s: &Staircase) -> Vec<(i64, i64)> {
        s.generators.iter().map(|g| (g.maslov, g.alexander)).collect()
    }

    #[test]
    fn unknot() {
        let s = staircase(&[0, 1, 2]).unwrap();
        assert_eq!(s.genus, 0);
        assert_eq!(gens(&s), vec![(0, 0)]);
        let t = s.table(3);
        assert_eq!(t.keys().copied().collect::<Vec<_>>(), vec![(0, 0), (1, 1), (2, 2), (3, 3)]);
    }

    #[test]
    fn trefoil() {
        let s = staircase(&[0, 2, 3, 4, 5]).unwrap();
        assert_eq!(s.genus, 1);
        assert_eq!(gens(&s), vec![(0, 1), (-1, 0), (-2, -1)]);
        let t = s.table(4);
        assert_eq!(t.keys().copied().collect::<Vec<_>>(), vec![(0, 0), (1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn two_five_torus_knot() {
        let s = staircase(&[0, 2, 4, 5, 6, 7]).unwrap();
        assert_eq!(s.genus, 2);
        assert_eq!(s.generators.len(), 5);
        assert_eq!(s.euler_series(7), vec![1, 0, 1, 0, 1, 1, 1, 1]);
    }

    #[test]
    fn rejects_non_semigroups() {
        assert!(staircase(&[0, 2, 3, 4, 6, 7, 8]).is_err());
        assert!(staircase(&[1, 2]).is_err());
        assert!(matches!(staircase(&[0, 3, 6]), Err(Error::Truncation(_))));
    }

    #[test]
    fn matches_gelfand_side() {
        for (name, n) in [("cusp", 6), ("cusp25", 6), ("smooth", 4)] {
            let r = hfl_poincare(&builtin(name).unwrap(), n).unwrap();
            assert!(r.pass(), "{name}: {} vs {}", r.series, r.gel);
        }
        let smooth = hfl_poincare(&builtin("smooth").unwrap(), 4).unwrap();
        let want: Vec<MotClass> = (0..=4).map(|k| MotClass::l_pow(-k)).collect();
        assert_eq!(smooth.series.coeffs(), &want[..]);
    }

    #[test]
    fn node_is_out_of_scope() {
        assert!(matches!(hfl_poincare(&builtin("node").unwrap(), 3), Err(Error::Scope(_))));
    }
}
