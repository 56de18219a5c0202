//! Parser for the textual form of classes: integers, `L`, `+ - * / ^` and
//! parentheses. Exponents are integers or `(a/2)`; half exponents only apply to `L`.

use num_bigint::BigInt;

use super::MotClass;
use crate::error::{Error, Result};

pub(super) fn parse_class(s: &str) -> Result<MotClass> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::parse(p.pos, "unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

enum Exponent {
    Int(i64),
    Half(i64),
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<MotClass> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MotClass> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let rhs = self.unary()?;
                acc = acc
                    .checked_div(&rhs)
                    .map_err(|_| Error::parse(at, "division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MotClass> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MotClass> {
        let is_l = self.peek() == Some(b'L');
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        match self.exponent()? {
            Exponent::Int(e) => base
                .pow(e)
                .map_err(|e| Error::parse(at, e.to_string())),
            Exponent::Half(k) if is_l => Ok(MotClass::q_pow(k)),
            Exponent::Half(_) => Err(Error::parse(at, "half exponent only allowed on L")),
        }
    }

    fn atom(&mut self) -> Result<MotClass> {
        match self.peek() {
            Some(b'L') => {
                self.pos += 1;
                Ok(MotClass::lefschetz())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(MotClass::from_bigint(self.integer()?)),
            Some(c) => Err(Error::parse(self.pos, format!("unexpected `{}`", c as char))),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits
            .parse()
            .map_err(|_| Error::parse(start, "bad integer"))
    }

    fn small_int(&mut self) -> Result<i64> {
        let at = self.pos;
        let neg = self.eat(b'-');
        let v: i64 = self
            .integer()?
            .try_into()
            .map_err(|_| Error::parse(at, "exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<Exponent> {
        if !self.eat(b'(') {
            return Ok(Exponent::Int(self.small_int()?));
        }
        let a = self.small_int()?;
        let out = if self.eat(b'/') {
            let at = self.pos;
            match self.small_int()? {
                1 => Exponent::Int(a),
                2 => Exponent::Half(a),
                _ => return Err(Error::parse(at, "exponent denominator must be 1 or 2")),
            }
        } else {
            Exponent::Int(a)
        };
        self.expect(b')')?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> MotClass {
        s.parse().unwrap()
    }

    #[test]
    fn parses_basic_forms() {
        assert_eq!(c("L"), MotClass::lefschetz());
        assert_eq!(c("L^(1/2)"), MotClass::sqrt_l());
        assert_eq!(c("L^(-3/2)"), MotClass::q_pow(-3));
        assert_eq!(c("L^-2"), MotClass::l_pow(-2));
        assert_eq!(c("(L-1)/(L^2)"), &(&c("L") - &MotClass::one()) * &MotClass::l_pow(-2));
        assert_eq!(c("-L^2"), -MotClass::l_pow(2));
        assert_eq!(c(" 2 * L + 1 "), c("1+L+L"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!("(L".parse::<MotClass>(), Err(Error::Parse { .. })));
        assert!(matches!("2^(1/2)".parse::<MotClass>(), Err(Error::Parse { .. })));
        assert!(matches!("L/0".parse::<MotClass>(), Err(Error::Parse { .. })));
        assert!(matches!("x".parse::<MotClass>(), Err(Error::Parse { .. })));
        assert!(matches!("L^(1/3)".parse::<MotClass>(), Err(Error::Parse { .. })));
    }
}
