//! Counting jets over a prime field.
//!
//! A jet is a tuple `a = (a_1, ..., a_m)` with `a_i in t F_p[t] / t^{J+1}`;
//! its coefficients at `t^1..t^J` are the levels. A [`JetProblem`] asks for
//! the number of jets with `[f(a)]_j = target_j` for `j = 0..=J`.
//!
//! The search assigns levels one at a time. After level `k` every equation
//! `j <= k + ord(f) - 1` is fixed and checked. Once `J <= 2k + 1` the
//! remaining levels enter linearly: writing `a = a' + b` with `b` in
//! `t^{k+1}`, `f(a) = f(a') + sum_i G_i b_i mod t^{J+1}` where
//! `G_i = d_i f(a')`. If `e` is the least order of the `G_i` mod `t^{J-k}`,
//! the linear part hits exactly `t^{k+1+e}`, so the fibre count is a power of
//! `p` once the equations `j <= k + e` hold. The same count holds for any `J`
//! when `e <= k`: then `b -> f(a' + b)` maps `t^{k+1}` onto `f(a') + t^{k+1+e}`
//! with uniform fibres, by Hensel's lemma.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polyexpr::MPoly;

#[derive(Clone, Debug)]
struct ModTerms {
    terms: Vec<(Vec<u32>, u64)>,
}

impl ModTerms {
    fn new(f: &MPoly, p: u64) -> ModTerms {
        let pb = num_bigint::BigInt::from(p);
        let terms = f
            .terms()
            .filter_map(|(e, c)| {
                let r = ((c % &pb) + &pb) % &pb;
                let r = u64::try_from(r).expect("residue fits");
                (r != 0).then(|| (e.to_vec(), r))
            })
            .collect();
        ModTerms { terms }
    }

    /// `f(a) mod (p, t^k)`; `a[i][l]` is the coefficient of `t^l` in `a_i`.
    fn eval(&self, a: &[Vec<u64>], k: usize, p: u64) -> Vec<u64> {
        let m = a.len();
        let mut maxe = vec![0u32; m];
        for (e, _) in &self.terms {
            for i in 0..m {
                maxe[i] = maxe[i].max(e[i]);
            }
        }
        let pows: Vec<Vec<Vec<u64>>> = (0..m)
            .map(|i| {
                let mut v = vec![unit(k)];
                for _ in 0..maxe[i] {
                    let next = mul_mod(v.last().unwrap(), &a[i], k, p);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = vec![0u64; k];
        for (e, c) in &self.terms {
            let mut prod = unit(k);
            for i in 0..m {
                if e[i] > 0 {
                    prod = mul_mod(&prod, &pows[i][e[i] as usize], k, p);
                }
            }
            for (o, v) in out.iter_mut().zip(prod) {
                *o = (*o + c * v) % p;
            }
        }
        out
    }
}

fn unit(k: usize) -> Vec<u64> {
    let mut v = vec![0u64; k];
    if k > 0 {
        v[0] = 1;
    }
    v
}

fn mul_mod(a: &[u64], b: &[u64], k: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; k];
    for (i, &x) in a.iter().enumerate().take(k) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(k - i) {
            if y != 0 {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The counting problem for one polynomial, prime and set of target equations.
#[derive(Clone, Debug)]
pub struct JetProblem {
    f: ModTerms,
    grads: Vec<ModTerms>,
    m: usize,
    levels: usize,
    eqs: usize,
    targets: Vec<u64>,
    p: u64,
    ord: usize,
}

impl JetProblem {
    /// Jets with `J = targets.len() - 1` levels and `[f(a)]_j = targets[j]`.
    pub fn new(f: &MPoly, p: u64, targets: Vec<u64>) -> Result<JetProblem> {
        let levels = targets.len().saturating_sub(1);
        JetProblem::with_levels(f, p, targets, levels)
    }

    /// Like [`JetProblem::new`] but with `levels >= J` free levels.
    pub fn with_levels(f: &MPoly, p: u64, targets: Vec<u64>, levels: usize) -> Result<JetProblem> {
        if !is_prime(p) || p > (1 << 31) {
            return Err(Error::InvalidInput(format!("{p} is not a usable prime")));
        }
        if f.is_zero() {
            return Err(Error::InvalidInput("polynomial is zero".into()));
        }
        let pb = num_bigint::BigInt::from(p);
        if (f.content() % &pb) == num_bigint::BigInt::from(0) {
            return Err(Error::InvalidInput(format!(
                "prime {p} divides the content of f"
            )));
        }
        if targets.is_empty() {
            return Err(Error::InvalidInput("need at least one equation".into()));
        }
        if levels + 1 < targets.len() {
            return Err(Error::InvalidInput("fewer levels than equations".into()));
        }
        let m = f.nvars();
        let fm = ModTerms::new(f, p);
        let ord = fm
            .terms
            .iter()
            .map(|(e, _)| e.iter().sum::<u32>() as usize)
            .min()
            .unwrap_or(0);
        Ok(JetProblem {
            grads: (0..m).map(|i| ModTerms::new(&f.derivative(i), p)).collect(),
            f: fm,
            m,
            levels,
            eqs: targets.len() - 1,
            targets: targets.into_iter().map(|t| t % p).collect(),
            p,
            ord,
        })
    }

    /// Contact-locus problem `f(a) = t^n mod t^{n+1}`.
    pub fn contact(f: &MPoly, n: usize, p: u64) -> Result<JetProblem> {
        let mut t = vec![0; n + 1];
        t[n] = 1;
        JetProblem::new(f, p, t)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    fn zero_jet(&self) -> Vec<Vec<u64>> {
        vec![vec![0u64; self.levels + 1]; self.m]
    }

    /// Sets level `k` of `a` from the index `idx < p^m`.
    fn assign(&self, a: &mut [Vec<u64>], k: usize, mut idx: u64) {
        for ai in a.iter_mut() {
            ai[k] = idx % self.p;
            idx /= self.p;
        }
    }

    fn branching(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    /// Equations `j <= upto` hold for the partial jet.
    fn equations_hold(&self, a: &[Vec<u64>], upto: usize) -> bool {
        let k = upto.min(self.levels) + 1;
        let v = self.f.eval(a, k, self.p);
        v.iter().zip(&self.targets).all(|(x, t)| x == t)
    }

    fn pow_u128(&self, e: usize) -> u128 {
        (self.p as u128).pow(e as u32)
    }

    /// Least order of the gradient at the partial jet, if it is at most `k`.
    /// It is then fixed by levels `1..=k`.
    fn hensel_order(&self, a: &[Vec<u64>], k: usize) -> Option<usize> {
        self.grads
            .iter()
            .filter_map(|g| g.eval(a, k + 1, self.p).iter().position(|&c| c != 0))
            .min()
    }

    /// Completions of levels `k+1..` when the linear part has image `t^{k+1+e}`.
    fn fibre(&self, a: &[Vec<u64>], k: usize, e: usize) -> u128 {
        if !self.equations_hold(a, k + e) {
            return 0;
        }
        let rest = self.levels - k;
        let free = self.m * rest - self.eqs.saturating_sub(k + e);
        self.pow_u128(free)
    }

    /// Number of completions of levels `k+1..` when `J <= 2k + 1`.
    fn closure(&self, a: &[Vec<u64>], k: usize) -> u128 {
        let span = self.eqs.saturating_sub(k);
        let e = self
            .grads
            .iter()
            .map(|g| {
                let gv = g.eval(a, span, self.p);
                gv.iter().position(|&c| c != 0).unwrap_or(span)
            })
            .min()
            .unwrap_or(span);
        self.fibre(a, k, e)
    }

    fn dfs(&self, a: &mut [Vec<u64>], k: usize) -> u128 {
        // levels 1..=k are assigned
        if let Some(e) = self.hensel_order(a, k) {
            return self.fibre(a, k, e);
        }
        if self.eqs <= 2 * k + 1 {
            return self.closure(a, k);
        }
        let next = k + 1;
        let mut total = 0u128;
        for idx in 0..self.branching() {
            self.assign(a, next, idx);
            if self.equations_hold(a, next + self.ord - 1) {
                total += self.dfs(a, next);
            }
        }
        self.assign(a, next, 0);
        total
    }

    /// Exact number of solutions. Level-1 branches run on the current rayon pool.
    pub fn count(&self) -> u128 {
        if self.ord == 0 && !self.equations_hold(&self.zero_jet(), 0) {
            return 0;
        }
        let zero = self.zero_jet();
        if let Some(e) = self.hensel_order(&zero, 0) {
            return self.fibre(&zero, 0, e);
        }
        if self.eqs <= 1 {
            return self.closure(&zero, 0);
        }
        (0..self.branching())
            .into_par_iter()
            .map(|idx| {
                let mut a = self.zero_jet();
                self.assign(&mut a, 1, idx);
                if self.equations_hold(&a, self.ord) {
                    self.dfs(&mut a, 1)
                } else {
                    0
                }
            })
            .sum()
    }

    /// Visits every solution jet in a fixed order (no closure shortcut).
    pub fn for_each_solution(&self, visit: &mut dyn FnMut(&[Vec<u64>])) {
        let mut a = self.zero_jet();
        self.enumerate(&mut a, 0, visit);
    }

    fn enumerate(&self, a: &mut [Vec<u64>], k: usize, visit: &mut dyn FnMut(&[Vec<u64>])) {
        if k == self.levels {
            if self.equations_hold(a, self.levels) {
                visit(a);
            }
            return;
        }
        let next = k + 1;
        for idx in 0..self.branching() {
            self.assign(a, next, idx);
            if self.equations_hold(a, (next + self.ord).saturating_sub(1)) {
                self.enumerate(a, next, visit);
            }
        }
        self.assign(a, next, 0);
    }

    /// Exhaustive count over all `p^{mJ}` jets; the reference for small cases.
    pub fn count_naive(&self) -> u128 {
        let total = self.pow_u128(self.m * self.levels);
        let mut hits = 0u128;
        let mut a = self.zero_jet();
        for mut idx in 0..total {
            for l in 1..=self.levels {
                let digit = (idx % self.branching() as u128) as u64;
                idx /= self.branching() as u128;
                self.assign(&mut a, l, digit);
            }
            if self.equations_hold(&a, self.levels) {
                hits += 1;
            }
        }
        hits
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(s: &str, m: usize) -> MPoly {
        MPoly::parse(s, m).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(JetProblem::contact(&f("x*y", 2), 1, 3).unwrap().count(), 0);
        assert_eq!(JetProblem::contact(&f("x*y", 2), 2, 3).unwrap().count(), 18);
        assert_eq!(JetProblem::contact(&f("x", 2), 3, 5).unwrap().count(), 125);
    }

    #[test]
    fn rejects_bad_primes() {
        assert!(JetProblem::contact(&f("x*y", 2), 2, 4).is_err());
        assert!(JetProblem::contact(&f("3*x*y", 2), 2, 3).is_err());
    }

    #[test]
    fn dfs_matches_exhaustive_count() {
        for poly in ["x*y", "y^2-x^3", "x", "x^2+y^2", "x*y*(x+y)", "y^2-x^5"] {
            for n in 1..=2 {
                let pr = JetProblem::contact(&f(poly, 2), n, 3).unwrap();
                assert_eq!(pr.count(), pr.count_naive(), "{poly} n={n}");
            }
        }
        let pr = JetProblem::contact(&f("y^2-x^3", 2), 3, 3).unwrap();
        assert_eq!(pr.count(), pr.count_naive());
        let pr = JetProblem::contact(&f("x*y*z", 3), 3, 3).unwrap();
        assert_eq!(pr.count(), pr.count_naive());
    }

    #[test]
    fn extra_levels_are_free() {
        for poly in ["x*y", "y^2-x^3", "x^2-4*y"] {
            for n in 1..=3 {
                let base = JetProblem::contact(&f(poly, 2), n, 5).unwrap();
                let mut t = vec![0; n + 1];
                t[n] = 1;
                let more = JetProblem::with_levels(&f(poly, 2), 5, t, n + 1).unwrap();
                assert_eq!(more.count(), base.count() * 25, "{poly} n={n}");
                assert_eq!(more.count(), more.count_naive());
            }
        }
    }

    #[test]
    fn enumeration_agrees_with_count() {
        let pr = JetProblem::contact(&f("x*y", 2), 3, 5).unwrap();
        let mut n = 0u128;
        pr.for_each_solution(&mut |_| n += 1);
        assert_eq!(n, pr.count());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn dfs_matches_exhaustive_on_random_polys(
            terms in prop::collection::vec((-2i64..=2, 0u32..3, 0u32..3), 1..4),
            n in 1usize..=3,
        ) {
            let g = terms.into_iter().fold(MPoly::zero(2), |acc, (c, a, b)| {
                acc.add(&MPoly::monomial(2, c, vec![a, b]))
            });
            prop_assume!(!g.is_zero() && g.content() % 3 != 0.into());
            let pr = JetProblem::contact(&g, n, 3).unwrap();
            prop_assert_eq!(pr.count(), pr.count_naive());
        }

        #[test]
        fn dfs_matches_exhaustive_with_targets_and_extra_levels(
            terms in prop::collection::vec((-2i64..=2, 0u32..4, 0u32..3), 1..5),
            targets in prop::collection::vec(0u64..3, 1..5),
            extra in 0usize..2,
        ) {
            let g = terms.into_iter().fold(MPoly::zero(2), |acc, (c, a, b)| {
                acc.add(&MPoly::monomial(2, c, vec![a, b]))
            });
            prop_assume!(!g.is_zero() && g.content() % 3 != 0.into());
            let levels = targets.len() - 1 + extra;
            let pr = JetProblem::with_levels(&g, 3, targets, levels).unwrap();
            prop_assert_eq!(pr.count(), pr.count_naive());
        }
    }
}
