//! Contact loci `X_n = { a in (t k[t]/t^{n+1})^m : f(a) = t^n }`, their classes,
//! the motivic Igusa zeta function and the orbifold/plethystic identity.
//!
//! Classes are obtained by counting points over prime fields and
//! interpolating in `L = p`. An interpolated class is accepted only if its
//! coefficients are integers and it predicts the count at a held-out prime.
//! When the count is not a polynomial in `p` over all primes (the locus
//! involves roots of unity), the computation is redone over primes
//! `p = 1 mod lcm(1..n)`, where all such roots are rational.

pub mod cache;
pub mod interp;
pub mod jets;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::motring::{MotClass, Poly};
use crate::polyexpr::MPoly;
use crate::series::{orbifold_sum, MotSeries};
use cache::{cache_key, CacheEntry, ContactCache};
pub use jets::{is_prime, JetProblem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Point counts interpolated over good primes.
    Oracle,
    /// Point counts interpolated over primes `1 mod lcm(1..n)`.
    OracleSplit,
    /// Closed form for a known polynomial.
    Builtin,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Oracle => "oracle",
            Provenance::OracleSplit => "oracle-split",
            Provenance::Builtin => "builtin",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactEntry {
    pub n: usize,
    pub class: MotClass,
    pub provenance: Provenance,
    /// Interpolation primes followed by the held-out prime.
    pub primes: Vec<u64>,
}

/// Number of jets in `(t F_p[t]/t^{n+1})^m` with `f = t^n mod t^{n+1}`.
pub fn count_points(f: &MPoly, n: usize, p: u64) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidInput("contact order must be at least 1".into()));
    }
    Ok(JetProblem::contact(f, n, p)?.count())
}

pub(crate) fn good_prime(f: &MPoly, p: u64) -> bool {
    let pb = BigInt::from(p);
    p >= 3
        && is_prime(p)
        && p > u64::from(f.total_degree().unwrap_or(0))
        && f.terms().all(|(_, c)| !(c % &pb).is_zero())
}

/// The first `count` good primes, optionally restricted to `p = 1 mod modulus`.
pub fn select_primes(f: &MPoly, count: usize, modulus: u64) -> Vec<u64> {
    (3u64..)
        .filter(|&p| p % modulus == 1 % modulus && good_prime(f, p))
        .take(count)
        .collect()
}

pub(crate) fn lcm_upto(n: usize) -> u64 {
    (1..=n as u64).fold(1, |acc, k| acc.lcm(&k))
}

/// Converts a polynomial in `L` with integer coefficients to a class.
pub(crate) fn class_from_l_poly(coeffs: &[BigInt]) -> MotClass {
    let mut q = vec![BigInt::zero(); 2 * coeffs.len()];
    for (i, c) in coeffs.iter().enumerate() {
        q[2 * i] = c.clone();
    }
    MotClass::from_poly(Poly::from_coeffs(q))
}

/// Interpolates the class from counts at `primes` (the last one is held out).
fn interpolate_class(f: &MPoly, n: usize, primes: &[u64]) -> Result<MotClass> {
    let (fit, held) = primes.split_at(primes.len() - 1);
    let counts: Vec<(BigInt, BigInt)> = fit
        .iter()
        .map(|&p| Ok((BigInt::from(p), BigInt::from(count_points(f, n, p)?))))
        .collect::<Result<_>>()?;
    let coeffs = interp::lagrange(&counts);
    if let Some(c) = coeffs.iter().find(|c| !c.is_integer()) {
        return Err(Error::Validation(format!(
            "interpolated count for n = {n} has non-integral coefficient {c}"
        )));
    }
    let held_p = held[0];
    let predicted = interp::eval_rational(&coeffs, &BigInt::from(held_p));
    let actual = BigInt::from(count_points(f, n, held_p)?);
    if predicted.to_integer() != actual {
        return Err(Error::Validation(format!(
            "interpolated class for n = {n} predicts {predicted} points at p = {held_p}, counted {actual}"
        )));
    }
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.to_integer()).collect();
    Ok(class_from_l_poly(&ints))
}

/// Class of the contact locus `X_n`, interpolated from finite-field counts.
/// `primes` overrides the prime choice; it needs `m n + 2` entries.
pub fn contact_class(f: &MPoly, n: usize, primes: Option<&[u64]>) -> Result<ContactEntry> {
    if n == 0 {
        return Err(Error::InvalidInput("contact order must be at least 1".into()));
    }
    let needed = f.nvars() * n + 2;
    if let Some(ps) = primes {
        if ps.len() < needed {
            return Err(Error::InvalidInput(format!(
                "interpolating X_{n} needs {needed} primes, got {}",
                ps.len()
            )));
        }
        if let Some(&bad) = ps.iter().find(|&&p| !good_prime(f, p)) {
            return Err(Error::InvalidInput(format!("prime {bad} is not usable for f = {f}")));
        }
        let ps = &ps[..needed];
        let class = interpolate_class(f, n, ps)?;
        return Ok(ContactEntry {
            n,
            class,
            provenance: Provenance::Oracle,
            primes: ps.to_vec(),
        });
    }
    let ps = select_primes(f, needed, 1);
    match interpolate_class(f, n, &ps) {
        Ok(class) => Ok(ContactEntry {
            n,
            class,
            provenance: Provenance::Oracle,
            primes: ps,
        }),
        Err(Error::Validation(first)) => {
            let split = select_primes(f, needed, lcm_upto(n));
            let class = interpolate_class(f, n, &split).map_err(|e| {
                Error::Validation(format!(
                    "{first}; retry over primes 1 mod {} also failed: {e}",
                    lcm_upto(n)
                ))
            })?;
            Ok(ContactEntry {
                n,
                class,
                provenance: Provenance::OracleSplit,
                primes: split,
            })
        }
        Err(e) => Err(e),
    }
}

/// Closed forms for `f = x` (any `m`) and `f = xy` (`m = 2`).
pub fn builtin_class(f: &MPoly, n: usize) -> Option<MotClass> {
    let m = f.nvars();
    let x = MPoly::var(m, 0);
    if *f == x {
        return Some(MotClass::l_pow(((m - 1) * n) as i64));
    }
    if m == 2 && *f == x.mul(&MPoly::var(2, 1)) {
        let l = MotClass::lefschetz();
        return Some(
            &(&MotClass::int(n as i64 - 1) * &(&l - &MotClass::one())) * &MotClass::l_pow(n as i64),
        );
    }
    None
}

/// Contact classes `[X_1], ..., [X_N]` of one polynomial.
#[derive(Clone, Debug)]
pub struct ContactTable {
    pub f: MPoly,
    pub entries: BTreeMap<usize, ContactEntry>,
}

#[derive(Default)]
pub struct TableOptions<'a> {
    /// Use closed forms where available instead of counting.
    pub use_builtin: bool,
    pub primes: Option<Vec<u64>>,
    pub cache: Option<&'a mut ContactCache>,
}

impl ContactTable {
    pub fn m(&self) -> usize {
        self.f.nvars()
    }

    pub fn order(&self) -> usize {
        self.entries.keys().max().copied().unwrap_or(0)
    }

    pub fn build(f: &MPoly, n_max: usize, mut opts: TableOptions<'_>) -> Result<ContactTable> {
        let mut entries = BTreeMap::new();
        let text = f.to_string();
        for n in 1..=n_max {
            if opts.use_builtin {
                if let Some(class) = builtin_class(f, n) {
                    entries.insert(
                        n,
                        ContactEntry {
                            n,
                            class,
                            provenance: Provenance::Builtin,
                            primes: Vec::new(),
                        },
                    );
                    continue;
                }
            }
            let key = cache_key(&text, f.nvars(), n);
            if opts.primes.is_none() {
                if let Some(hit) = opts.cache.as_ref().and_then(|c| c.get(&key)) {
                    let provenance = match hit.provenance.as_str() {
                        "oracle-split" => Provenance::OracleSplit,
                        _ => Provenance::Oracle,
                    };
                    entries.insert(
                        n,
                        ContactEntry {
                            n,
                            class: hit.class()?,
                            provenance,
                            primes: hit.primes.clone(),
                        },
                    );
                    continue;
                }
            }
            let e = contact_class(f, n, opts.primes.as_deref())?;
            if let Some(c) = opts.cache.as_deref_mut() {
                c.record(&key, CacheEntry::new(&e.class, &e.primes, &e.provenance.to_string()))?;
            }
            entries.insert(n, e);
        }
        Ok(ContactTable {
            f: f.clone(),
            entries,
        })
    }

    /// Table with all classes zero: both sides of the identity are 1.
    pub fn zero(m: usize, n_max: usize) -> ContactTable {
        let f = MPoly::zero(m);
        let entries = (1..=n_max)
            .map(|n| {
                (
                    n,
                    ContactEntry {
                        n,
                        class: MotClass::zero(),
                        provenance: Provenance::Builtin,
                        primes: Vec::new(),
                    },
                )
            })
            .collect();
        ContactTable { f, entries }
    }

    pub fn class(&self, n: usize) -> Result<&MotClass> {
        self.entries
            .get(&n)
            .map(|e| &e.class)
            .ok_or_else(|| Error::InvalidInput(format!("contact class X_{n} not available")))
    }
}

/// `Z_f(T) = sum_{n=1}^{N} [X_n] L^{-m n} T^n`.
pub fn igusa_zeta(table: &ContactTable, n_max: usize) -> Result<MotSeries> {
    let m = table.m() as i64;
    let mut coeffs = vec![MotClass::zero()];
    for n in 1..=n_max {
        coeffs.push(table.class(n)?.mul_q_pow(-2 * m * n as i64));
    }
    Ok(MotSeries::new(coeffs))
}

/// `L^{-(n+1)(m-1)} [X_n]`: the integral of the contact-locus volume form.
pub fn clin_convert(class: &MotClass, n: usize, m: usize) -> MotClass {
    class.mul_q_pow(-2 * ((n + 1) * (m - 1)) as i64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlesymReport {
    pub lhs: MotSeries,
    pub rhs: MotSeries,
    pub equal: Vec<bool>,
}

impl PlesymReport {
    pub fn pass(&self) -> bool {
        self.equal.iter().all(|&b| b)
    }
}

/// Orbifold partition sum of the converted classes against
/// `Exp(L^{-(m-1)/2} Z_f(L^{-(m-3)/2} T))`.
pub fn plesym_check(table: &ContactTable, n_max: usize) -> Result<PlesymReport> {
    let m = table.m();
    let a: Vec<MotClass> = (1..=n_max)
        .map(|i| Ok(clin_convert(table.class(i)?, i, m)))
        .collect::<Result<_>>()?;
    let lhs = orbifold_sum((m - 1) as u32, &a, n_max)?;
    let z = igusa_zeta(table, n_max)?;
    let inner = z
        .rescale_t(&MotClass::q_pow(-(m as i64 - 3)))
        .scale(&MotClass::q_pow(-(m as i64 - 1)));
    let rhs = inner.exp_pleth()?;
    let equal = lhs
        .coeffs()
        .iter()
        .zip(rhs.coeffs())
        .map(|(a, b)| a == b)
        .collect();
    Ok(PlesymReport { lhs, rhs, equal })
}

/// Reads the `m` default variables' polynomial and rejects the zero polynomial.
pub fn parse_f(text: &str, m: usize) -> Result<MPoly> {
    let f = MPoly::parse(text, m)?;
    if f.is_zero() {
        return Err(Error::InvalidInput("polynomial is zero".into()));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::InvalidInput("polynomial must vanish at the origin".into()));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> MotClass {
        s.parse().unwrap()
    }

    fn f(s: &str) -> MPoly {
        parse_f(s, 2).unwrap()
    }

    #[test]
    fn node_classes_small() {
        let xy = f("x*y");
        assert_eq!(contact_class(&xy, 1, None).unwrap().class, MotClass::zero());
        assert_eq!(contact_class(&xy, 3, None).unwrap().class, c("2*(L-1)*L^3"));
        for n in 1..=4 {
            assert_eq!(Some(contact_class(&xy, n, None).unwrap().class), builtin_class(&xy, n));
        }
    }

    #[test]
    fn smooth_classes() {
        let x = f("x");
        for n in 1..=3 {
            assert_eq!(contact_class(&x, n, None).unwrap().class, MotClass::l_pow(n as i64));
        }
    }

    #[test]
    fn cusp_classes_need_split_primes_at_three() {
        let cusp = f("y^2-x^3");
        let want = ["0", "2*L^3", "3*L^4", "2*L^5"];
        for (n, w) in (1..=4).zip(want) {
            let e = contact_class(&cusp, n, None).unwrap();
            assert_eq!(e.class, c(w), "n = {n}");
            if n == 3 {
                assert_eq!(e.provenance, Provenance::OracleSplit);
            }
        }
    }

    #[test]
    fn clin_examples() {
        assert_eq!(clin_convert(&c("(L-1)*L^2"), 2, 2), c("(L-1)/L"));
        assert_eq!(clin_convert(&c("L^5"), 5, 2), c("L^-1"));
        assert!(clin_convert(&MotClass::zero(), 3, 2).is_zero());
    }

    #[test]
    fn igusa_examples() {
        let t = ContactTable::build(&f("x*y"), 4, TableOptions { use_builtin: true, ..Default::default() }).unwrap();
        let z = igusa_zeta(&t, 4).unwrap();
        let want: Vec<MotClass> = ["0", "0", "(L-1)/L^2", "2*(L-1)/L^3", "3*(L-1)/L^4"].iter().map(|s| c(s)).collect();
        assert_eq!(z.coeffs(), want.as_slice());
        let t = ContactTable::build(&f("x"), 3, TableOptions::default()).unwrap();
        let z = igusa_zeta(&t, 3).unwrap();
        assert_eq!(z.coeffs(), &[c("0"), c("L^-1"), c("L^-2"), c("L^-3")]);
    }

    #[test]
    fn plesym_examples() {
        let t = ContactTable::build(&f("x"), 4, TableOptions { use_builtin: true, ..Default::default() }).unwrap();
        let r = plesym_check(&t, 4).unwrap();
        assert!(r.pass());
        assert_eq!(r.lhs.coeff(2), &c("L^-2+L^(-3/2)"));
        let t = ContactTable::build(&f("x*y"), 4, TableOptions { use_builtin: true, ..Default::default() }).unwrap();
        assert!(plesym_check(&t, 4).unwrap().pass());
        let r = plesym_check(&ContactTable::zero(2, 4), 4).unwrap();
        assert_eq!(r.lhs, MotSeries::one(4));
        assert_eq!(r.rhs, MotSeries::one(4));
    }

    #[test]
    fn prime_override() {
        let xy = f("x*y");
        let ps = [5, 7, 11, 13, 17, 19];
        assert_eq!(contact_class(&xy, 2, Some(&ps)).unwrap().class, c("(L-1)*L^2"));
        assert!(contact_class(&xy, 2, Some(&ps[..3])).is_err());
        assert!(contact_class(&xy, 2, Some(&[4, 5, 7, 11, 13, 17])).is_err());
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let mut cache = ContactCache::open(dir.path().join("c.json")).unwrap();
        let xy = f("x*y");
        let a = ContactTable::build(&xy, 2, TableOptions { cache: Some(&mut cache), ..Default::default() }).unwrap();
        assert_eq!(cache.len(), 2);
        let b = ContactTable::build(&xy, 2, TableOptions { cache: Some(&mut cache), ..Default::default() }).unwrap();
        assert_eq!(a.class(2).unwrap(), b.class(2).unwrap());
    }
}
