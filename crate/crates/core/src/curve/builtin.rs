use super::{BranchParam, CurveSing};
use crate::error::{Error, Result};
use crate::polyexpr::MPoly;

pub const BUILTIN_NAMES: [&str; 4] = ["smooth", "node", "cusp", "cusp25"];

const TRUNC: usize = 24;

fn mono(e: usize) -> Vec<i64> {
    let mut v = vec![0; e + 1];
    v[e] = 1;
    v
}

/// Built-in curves: the smooth branch `x = 0`, the node `xy = 0`, the cusp
/// `y^2 = x^3` and the `(2,5)`-cusp `y^2 = x^5`.
pub fn builtin(name: &str) -> Result<CurveSing> {
    let (f, branches): (&str, Vec<BranchParam>) = match name {
        "smooth" => ("x", vec![BranchParam::from_i64(&[0], &mono(1), TRUNC)]),
        "node" => (
            "x*y",
            vec![
                BranchParam::from_i64(&mono(1), &[0], TRUNC),
                BranchParam::from_i64(&[0], &mono(1), TRUNC),
            ],
        ),
        "cusp" => ("y^2-x^3", vec![BranchParam::from_i64(&mono(2), &mono(3), TRUNC)]),
        "cusp25" => ("y^2-x^5", vec![BranchParam::from_i64(&mono(2), &mono(5), TRUNC)]),
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    };
    CurveSing::new(name, Some(MPoly::parse(f, 2)?), branches)
}
