//! Multivariate integer polynomials and their expression parser.
//!
//! Grammar: integers, variable identifiers, `+ - * ^`, parentheses and unary
//! minus; whitespace is ignored. Printing is canonical (graded-lex, highest
//! degree first), so `parse(print(f)) == f` and printing is a fixpoint.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_VARS: [&str; 3] = ["x", "y", "z"];

/// Polynomial in `nvars` variables; the map holds only nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> MPoly {
        MPoly::monomial(nvars, c, vec![0; nvars])
    }

    pub fn monomial(nvars: usize, c: impl Into<BigInt>, exps: Vec<u32>) -> MPoly {
        assert_eq!(exps.len(), nvars);
        let mut p = MPoly::zero(nvars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> MPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::monomial(nvars, 1, e)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lowest total degree of a term (the multiplicity at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_default()
    }

    fn insert_add(&mut self, e: Vec<u32>, c: BigInt) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &MPoly) -> MPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_add(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::constant(self.nvars, 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.insert_add(e2, c * BigInt::from(e[i]));
        }
        out
    }

    /// Terms in canonical print order: total degree descending, then exponent
    /// vectors in descending lexicographic order.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    /// Canonical text with the given variable names.
    pub fn render(&self, vars: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.sorted_terms() {
            let mut mono = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => mono.push(vars[i].to_string()),
                    k => mono.push(format!("{}^{}", vars[i], k)),
                }
            }
            let neg = c.is_negative();
            let abs = c.abs();
            let body = if mono.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", abs, mono.join("*"))
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            out.push_str(&body);
        }
        out
    }

    /// Parses with the default variable names `x, y, z` (first `nvars` of them).
    pub fn parse(s: &str, nvars: usize) -> Result<MPoly> {
        if nvars == 0 || nvars > DEFAULT_VARS.len() {
            return Err(Error::InvalidInput(format!(
                "unsupported number of variables: {nvars}"
            )));
        }
        MPoly::parse_with_vars(s, &DEFAULT_VARS[..nvars])
    }

    pub fn parse_with_vars(s: &str, vars: &[&str]) -> Result<MPoly> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
            vars,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::parse(p.pos, "unexpected trailing input"));
        }
        Ok(v)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = if self.nvars <= DEFAULT_VARS.len() {
            DEFAULT_VARS[..self.nvars].iter().map(|s| s.to_string()).collect()
        } else {
            (0..self.nvars).map(|i| format!("x{i}")).collect()
        };
        let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
        write!(f, "{}", self.render(&refs))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let at = self.pos;
        let e = self.integer()?;
        let e: u32 = e
            .try_into()
            .ok()
            .filter(|&e: &u32| e <= 4096)
            .ok_or_else(|| Error::parse(at, "exponent must be a small nonnegative integer"))?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(Error::parse(self.pos, "expected `)`"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(MPoly::constant(self.nvars(), self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(MPoly::var(self.nvars(), i)),
                    None => Err(Error::parse(start, format!("unknown variable `{name}`"))),
                }
            }
            Some(c) => Err(Error::parse(self.pos, format!("unexpected `{}`", c as char))),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| Error::parse(start, "bad integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_print() {
        let f = MPoly::parse("y^2 - x^3", 2).unwrap();
        assert_eq!(f.to_string(), "-x^3+y^2");
        let g = MPoly::parse(" (x+y)^2 ", 2).unwrap();
        assert_eq!(g.to_string(), "x^2+2*x*y+y^2");
        assert_eq!(MPoly::parse("-(x*y) + 0", 2).unwrap().to_string(), "-x*y");
        assert_eq!(MPoly::parse("x - x", 2).unwrap().to_string(), "0");
        assert_eq!(MPoly::parse("x*y*z", 3).unwrap().order(), Some(3));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(MPoly::parse("x*z", 2), Err(Error::Parse { .. })));
        assert!(matches!(MPoly::parse("x+", 2), Err(Error::Parse { .. })));
        assert!(matches!(MPoly::parse("(x", 2), Err(Error::Parse { .. })));
        assert!(matches!(MPoly::parse("x^-1", 2), Err(Error::Parse { .. })));
        assert!(matches!(MPoly::parse("x y", 2), Err(Error::Parse { .. })));
    }

    #[test]
    fn derivatives() {
        let f = MPoly::parse("y^2-x^3", 2).unwrap();
        assert_eq!(f.derivative(0).to_string(), "-3*x^2");
        assert_eq!(f.derivative(1).to_string(), "2*y");
    }

    fn arb_poly() -> impl Strategy<Value = MPoly> {
        prop::collection::vec((-5i64..=5, 0u32..4, 0u32..4), 0..6).prop_map(|ts| {
            ts.into_iter().fold(MPoly::zero(2), |acc, (c, a, b)| {
                acc.add(&MPoly::monomial(2, c, vec![a, b]))
            })
        })
    }

    proptest! {
        #[test]
        fn print_parse_fixpoint(f in arb_poly()) {
            let s = f.to_string();
            let g = MPoly::parse(&s, 2).unwrap();
            prop_assert_eq!(&g, &f);
            prop_assert_eq!(g.to_string(), s);
        }

        #[test]
        fn ring_laws(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
            prop_assert_eq!(f.mul(&g), g.mul(&f));
        }
    }
}
