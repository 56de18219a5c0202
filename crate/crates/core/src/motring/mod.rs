//! The coefficient ring: rational functions in `q = L^(1/2)` with integer
//! coefficients, kept in a unique canonical form.
//!
//! A [`MotClass`] is a pair `num/den` of integer polynomials in `q` with
//! `gcd(num, den) = 1` over the rationals, the joint integer content of the two
//! polynomials equal to 1 and a positive leading coefficient in `den`. Negative
//! powers of `q` live in the denominator.

mod parse;
pub mod poly;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
pub use poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MotClass {
    num: Poly,
    den: Poly,
}

impl MotClass {
    /// Builds the canonical representative of `num/den`.
    pub fn normalize(num: Poly, den: Poly) -> Result<MotClass> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalize_nonzero(num, den))
    }

    fn normalize_nonzero(num: Poly, den: Poly) -> MotClass {
        if num.is_zero() {
            return MotClass::zero();
        }
        let (mut num, mut den) = (num, den);
        if !den.is_one() {
            let g = Poly::gcd_primitive(&num, &den);
            if g.degree() != Some(0) {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
            let c = num.content().gcd(&den.content());
            if !c.is_one() {
                num = num.div_scalar_exact(&c);
                den = den.div_scalar_exact(&c);
            }
            if den.lead().is_negative() {
                num = -num;
                den = -den;
            }
        }
        MotClass { num, den }
    }

    pub fn zero() -> MotClass {
        MotClass {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> MotClass {
        MotClass::int(1)
    }

    pub fn int(c: i64) -> MotClass {
        MotClass::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> MotClass {
        MotClass {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> MotClass {
        MotClass {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> MotClass {
        Self::normalize_nonzero(Poly::constant(r.numer().clone()), Poly::constant(r.denom().clone()))
    }

    /// `q^k = L^(k/2)` for any integer `k`.
    pub fn q_pow(k: i64) -> MotClass {
        if k >= 0 {
            MotClass::from_poly(Poly::monomial(1, k as usize))
        } else {
            MotClass {
                num: Poly::one(),
                den: Poly::monomial(1, k.unsigned_abs() as usize),
            }
        }
    }

    /// `L^k`.
    pub fn l_pow(k: i64) -> MotClass {
        MotClass::q_pow(2 * k)
    }

    /// The Lefschetz class `L = q^2`.
    pub fn lefschetz() -> MotClass {
        MotClass::q_pow(2)
    }

    /// `L^(1/2) = q`.
    pub fn sqrt_l() -> MotClass {
        MotClass::q_pow(1)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator has integer content 1, i.e. the class carries
    /// no rational-number denominators.
    pub fn is_integral(&self) -> bool {
        self.den.content().is_one()
    }

    /// True when the class is a Laurent polynomial in `q`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial() && self.den.lead().is_one()
    }

    /// `(coefficient, exponent of q)` pairs of a Laurent polynomial, highest
    /// exponent first; `None` if the class has a non-monomial denominator.
    pub fn laurent_terms(&self) -> Option<Vec<(BigInt, i64)>> {
        if !self.is_laurent() {
            return None;
        }
        let shift = self.den.degree().unwrap() as i64;
        Some(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (c.clone(), i as i64 - shift))
                .collect(),
        )
    }

    pub fn checked_div(&self, rhs: &MotClass) -> Result<MotClass> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_nonzero(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn inv(&self) -> Result<MotClass> {
        MotClass::one().checked_div(self)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<MotClass> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(e.unsigned_abs())
            .map_err(|_| Error::InvalidInput("exponent too large".into()))?;
        Ok(MotClass {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Multiplication by `q^k`.
    pub fn mul_q_pow(&self, k: i64) -> MotClass {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        self * &MotClass::q_pow(k)
    }

    pub fn scale(&self, c: &BigInt) -> MotClass {
        Self::normalize_nonzero(self.num.scale(c), self.den.clone())
    }

    /// Adams operation `q -> q^k`.
    pub fn adams(&self, k: usize) -> MotClass {
        assert!(k >= 1, "adams operation needs k >= 1");
        if k == 1 {
            return self.clone();
        }
        // q -> q^k keeps coprimality over Q, so only sign and content need care,
        // and both are preserved; the result is already canonical.
        MotClass {
            num: self.num.inflate(k),
            den: self.den.inflate(k),
        }
    }

    /// Euler-characteristic specialization `q -> 1`.
    pub fn euler(&self) -> Result<BigRational> {
        let one = BigInt::one();
        let d = self.den.eval(&one);
        if d.is_zero() {
            // canonical form already removed common (q - 1) factors
            return Err(Error::Pole);
        }
        Ok(BigRational::new(self.num.eval(&one), d))
    }

    /// Value at a rational `q`; fails if the denominator vanishes there.
    pub fn eval_q(&self, q: &BigRational) -> Result<BigRational> {
        let d = self.den.eval_rational(q);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval_rational(q) / d)
    }

    /// Value at an integer `L` (so `q^2 = L`); the class must involve only
    /// integral powers of `L`.
    pub fn eval_l(&self, l: &BigInt) -> Result<BigRational> {
        let has_odd =
            |p: &Poly| p.coeffs().iter().skip(1).step_by(2).any(|c| !c.is_zero());
        if has_odd(&self.num) || has_odd(&self.den) {
            return Err(Error::InvalidInput(
                "class involves half-integer powers of L".into(),
            ));
        }
        let even = |p: &Poly| {
            Poly::from_coeffs(p.coeffs().iter().step_by(2).cloned().collect())
        };
        let dv = even(&self.den).eval(l);
        if dv.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRational::new(even(&self.num).eval(l), dv))
    }

    /// Numerator and denominator coefficient lists (ascending powers of `q`).
    pub fn to_coeff_lists(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        (self.num.coeffs().to_vec(), self.den.coeffs().to_vec())
    }

    pub fn from_coeff_lists(num: Vec<BigInt>, den: Vec<BigInt>) -> Result<MotClass> {
        MotClass::normalize(Poly::from_coeffs(num), Poly::from_coeffs(den))
    }
}

impl Default for MotClass {
    fn default() -> Self {
        MotClass::zero()
    }
}

impl From<i64> for MotClass {
    fn from(c: i64) -> Self {
        MotClass::int(c)
    }
}

impl Add for &MotClass {
    type Output = MotClass;
    fn add(self, rhs: &MotClass) -> MotClass {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return MotClass::normalize_nonzero(&self.num + &rhs.num, self.den.clone());
        }
        MotClass::normalize_nonzero(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &MotClass {
    type Output = MotClass;
    fn sub(self, rhs: &MotClass) -> MotClass {
        self + &(-rhs)
    }
}

impl Mul for &MotClass {
    type Output = MotClass;
    fn mul(self, rhs: &MotClass) -> MotClass {
        if self.is_zero() || rhs.is_zero() {
            return MotClass::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return MotClass::from_poly(&self.num * &rhs.num);
        }
        MotClass::normalize_nonzero(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`MotClass::checked_div`] for a fallible version.
impl Div for &MotClass {
    type Output = MotClass;
    fn div(self, rhs: &MotClass) -> MotClass {
        self.checked_div(rhs).expect("division by zero MotClass")
    }
}

impl Neg for &MotClass {
    type Output = MotClass;
    fn neg(self) -> MotClass {
        MotClass {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for MotClass {
    type Output = MotClass;
    fn neg(self) -> MotClass {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MotClass {
            type Output = MotClass;
            fn $m(self, rhs: MotClass) -> MotClass {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MotClass> for MotClass {
            type Output = MotClass;
            fn $m(self, rhs: &MotClass) -> MotClass {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&MotClass> for MotClass {
    fn add_assign(&mut self, rhs: &MotClass) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&MotClass> for MotClass {
    fn sub_assign(&mut self, rhs: &MotClass) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&MotClass> for MotClass {
    fn mul_assign(&mut self, rhs: &MotClass) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for MotClass {
    fn sum<I: Iterator<Item = MotClass>>(iter: I) -> MotClass {
        iter.fold(MotClass::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for MotClass {
    fn product<I: Iterator<Item = MotClass>>(iter: I) -> MotClass {
        iter.fold(MotClass::one(), |a, b| a * b)
    }
}

fn render_monomial(e: usize) -> String {
    match e {
        0 => String::new(),
        1 => "L^(1/2)".into(),
        2 => "L".into(),
        e if e % 2 == 0 => format!("L^{}", e / 2),
        e => format!("L^({}/2)", e),
    }
}

/// Renders an integer polynomial in `q` using `L` and half powers of `L`.
pub fn render_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (e, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = render_monomial(e);
        let neg = c.is_negative();
        let abs = c.abs();
        let body = if mono.is_empty() {
            abs.to_string()
        } else if abs.is_one() {
            mono
        } else {
            format!("{abs}*{mono}")
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

impl fmt::Display for MotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", render_poly(&self.num))
        } else {
            write!(f, "({})/({})", render_poly(&self.num), render_poly(&self.den))
        }
    }
}

impl FromStr for MotClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<MotClass> {
        parse::parse_class(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_i64s(cs)
    }

    fn l() -> MotClass {
        MotClass::lefschetz()
    }

    #[test]
    fn normalize_examples() {
        let a = MotClass::normalize(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(a, MotClass::from_poly(p(&[1, 1])));
        let b = MotClass::normalize(p(&[0, 0, 1]), p(&[1])).unwrap();
        assert_eq!(b, l());
        let c = MotClass::normalize(p(&[0, 2]), p(&[4])).unwrap();
        assert_eq!(c.num(), &p(&[0, 1]));
        assert_eq!(c.den(), &p(&[2]));
        assert!(matches!(
            MotClass::normalize(p(&[1]), Poly::zero()),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn ring_examples() {
        let one = MotClass::one();
        assert_eq!(&l() - &one, MotClass::from_poly(p(&[-1, 0, 1])));
        let l2m1 = &(&l() * &l()) - &one;
        assert_eq!(&l2m1 / &(&l() - &one), &l() + &one);
        assert_eq!(&MotClass::sqrt_l() * &MotClass::sqrt_l(), l());
        assert!(matches!(one.checked_div(&MotClass::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn adams_examples() {
        assert_eq!(MotClass::sqrt_l().adams(2), MotClass::q_pow(2));
        let a = &(&l() - &MotClass::one()) / &l();
        let expect = MotClass::normalize(p(&[-1, 0, 0, 0, 0, 0, 1]), p(&[0, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(a.adams(3), expect);
        let b = MotClass::one().checked_div(&(&MotClass::one() - &l())).unwrap();
        let expect = MotClass::one().checked_div(&(&MotClass::one() - &(&l() * &l()))).unwrap();
        assert_eq!(b.adams(2), expect);
    }

    #[test]
    fn euler_examples() {
        assert_eq!(MotClass::l_pow(-3).euler().unwrap(), BigRational::one());
        let a = &(&(&l() * &l()) - &MotClass::one()) / &(&l() - &MotClass::one());
        assert_eq!(a.euler().unwrap(), BigRational::from_integer(2.into()));
        let pole = MotClass::one().checked_div(&(&l() - &MotClass::one())).unwrap();
        assert!(matches!(pole.euler(), Err(Error::Pole)));
    }

    #[test]
    fn rendering() {
        let a = &(&l() - &MotClass::one()) * &MotClass::l_pow(-2);
        assert_eq!(a.to_string(), "(L-1)/(L^2)");
        assert_eq!(MotClass::q_pow(3).to_string(), "L^(3/2)");
        assert_eq!(MotClass::q_pow(-1).to_string(), "(1)/(L^(1/2))");
        assert_eq!((MotClass::int(-2) * l()).to_string(), "-2*L");
        assert_eq!(MotClass::zero().to_string(), "0");
    }

    #[test]
    fn eval_at_integer_l() {
        let a = &(&l() - &MotClass::one()) * &MotClass::l_pow(-2);
        assert_eq!(a.eval_l(&BigInt::from(3)).unwrap(), BigRational::new(2.into(), 9.into()));
        assert!(MotClass::sqrt_l().eval_l(&BigInt::from(3)).is_err());
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-4i64..=4, 0..5).prop_map(|v| Poly::from_i64s(&v))
    }

    fn nonzero_poly() -> impl Strategy<Value = Poly> {
        small_poly().prop_filter("nonzero", |p| !p.is_zero())
    }

    pub(crate) fn arb_class() -> impl Strategy<Value = MotClass> {
        (small_poly(), nonzero_poly(), -3i64..=3).prop_map(|(n, d, s)| {
            MotClass::normalize(n, d).unwrap().mul_q_pow(s)
        })
    }

    proptest! {
        #[test]
        fn canonical_form_is_unique(n in small_poly(), d in nonzero_poly(), c in nonzero_poly()) {
            let a = MotClass::normalize(n.clone(), d.clone()).unwrap();
            let b = MotClass::normalize(&n * &c, &d * &c).unwrap();
            prop_assert_eq!(&a, &b);
            let again = MotClass::normalize(a.num().clone(), a.den().clone()).unwrap();
            prop_assert_eq!(&a, &again);
        }

        #[test]
        fn equality_matches_cross_multiplication(a in arb_class(), b in arb_class()) {
            let cross = a.num() * b.den() == b.num() * a.den();
            prop_assert_eq!(cross, a == b);
        }

        #[test]
        fn adams_is_ring_hom(a in arb_class(), b in arb_class(), k in 1usize..4, j in 1usize..4) {
            prop_assert_eq!((&a * &b).adams(k), &a.adams(k) * &b.adams(k));
            prop_assert_eq!((&a + &b).adams(k), &a.adams(k) + &b.adams(k));
            prop_assert_eq!(a.adams(k).adams(j), a.adams(k * j));
            prop_assert_eq!(a.adams(1), a.clone());
        }

        #[test]
        fn euler_is_compatible(a in arb_class(), b in arb_class(), k in 1usize..4) {
            if let (Ok(ea), Ok(eb)) = (a.euler(), b.euler()) {
                prop_assert_eq!(a.adams(k).euler().unwrap(), ea.clone());
                prop_assert_eq!((&a * &b).euler().unwrap(), &ea * &eb);
                prop_assert_eq!((&a + &b).euler().unwrap(), &ea + &eb);
            }
        }

        #[test]
        fn render_parse_round_trip(a in arb_class()) {
            let s = a.to_string();
            let back: MotClass = s.parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
