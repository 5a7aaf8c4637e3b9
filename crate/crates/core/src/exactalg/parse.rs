//! Parser for the textual rendering of rational functions.
//!
//! ```text
//! rational  := "(" poly ")" [ "/" "(" factor { "*" factor } ")" ]
//!            | poly
//! factor    := "(" "1" "-" monomial ")" [ "^" uint ]
//! poly      := [ "-" ] term { ( "+" | "-" ) term }
//! term      := uint [ "*" monomial ] | monomial
//! monomial  := power { "*" power }
//! power     := var [ "^" [ "-" ] uint ]
//! var       := "p" | "t" | "q" | "z" | "X" uint | "Y" uint
//! ```
//!
//! Whitespace between tokens is ignored.

use num_bigint::BigInt;

use super::monomial::{Monomial, Var};
use super::poly::LaurentPolynomial;
use super::rational::RationalFunction;
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { src: s.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

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
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn small_uint<T: std::str::FromStr>(&mut self) -> Result<T> {
        let d = self.digits()?;
        d.parse().or_else(|_| self.err(format!("number {d} out of range")))
    }

    fn var(&mut self) -> Result<Var> {
        let v = match self.peek() {
            Some(b'p') => Var::P,
            Some(b't') => Var::T,
            Some(b'q') => Var::Q,
            Some(b'z') => Var::Z,
            Some(b'X') => {
                self.pos += 1;
                return Ok(Var::X(self.small_uint()?));
            }
            Some(b'Y') => {
                self.pos += 1;
                return Ok(Var::Y(self.small_uint()?));
            }
            _ => return self.err("expected variable"),
        };
        self.pos += 1;
        Ok(v)
    }

    fn power(&mut self) -> Result<(Var, i64)> {
        let v = self.var()?;
        if !self.eat(b'^') {
            return Ok((v, 1));
        }
        let neg = self.eat(b'-');
        let e: i64 = self.small_uint()?;
        Ok((v, if neg { -e } else { e }))
    }

    fn monomial(&mut self) -> Result<Monomial> {
        let mut pairs = vec![self.power()?];
        while self.eat(b'*') {
            pairs.push(self.power()?);
        }
        Ok(Monomial::from_pairs(pairs))
    }

    fn term(&mut self) -> Result<(Monomial, BigInt)> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c: BigInt = self.digits()?.parse().expect("digits");
                if self.eat(b'*') {
                    Ok((self.monomial()?, c))
                } else {
                    Ok((Monomial::one(), c))
                }
            }
            _ => Ok((self.monomial()?, BigInt::from(1))),
        }
    }

    fn poly(&mut self) -> Result<LaurentPolynomial> {
        let mut out = LaurentPolynomial::zero();
        let mut neg = self.eat(b'-');
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, if neg { -c } else { c });
            if self.eat(b'+') {
                neg = false;
            } else if self.eat(b'-') {
                neg = true;
            } else {
                return Ok(out);
            }
        }
    }

    fn factor(&mut self) -> Result<(Monomial, u32)> {
        self.expect(b'(')?;
        if self.digits()? != "1" {
            return self.err("factor must have the form (1 - M)");
        }
        self.expect(b'-')?;
        let m = self.monomial()?;
        self.expect(b')')?;
        let e = if self.eat(b'^') { self.small_uint()? } else { 1 };
        Ok((m, e))
    }

    fn rational(&mut self) -> Result<RationalFunction> {
        let numerator = if self.eat(b'(') {
            let p = self.poly()?;
            self.expect(b')')?;
            p
        } else {
            self.poly()?
        };
        let mut factors = Vec::new();
        if self.eat(b'/') {
            self.expect(b'(')?;
            loop {
                let (m, e) = self.factor()?;
                factors.extend(std::iter::repeat_n(m, e as usize));
                if !self.eat(b'*') {
                    break;
                }
            }
            self.expect(b')')?;
        }
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        RationalFunction::new(numerator, factors)
    }
}

impl std::str::FromStr for RationalFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Cursor::new(s).rational()
    }
}

impl std::str::FromStr for LaurentPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut c = Cursor::new(s);
        let p = c.poly()?;
        if c.peek().is_some() {
            return c.err("trailing input");
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_heisenberg_rendering() {
        let s = "(1 - p^3*t^3) / ((1 - t)*(1 - p*t)*(1 - p^2*t^2)*(1 - p^3*t^2))";
        let f: RationalFunction = s.parse().unwrap();
        assert_eq!(f.to_string(), s);
        assert_eq!(f.denominator_len(), 4);
    }

    #[test]
    fn parses_polynomials() {
        let p: LaurentPolynomial = "2*p^-1*X0*Y3 + 1 - q^2".parse().unwrap();
        assert_eq!(p.to_string(), "2*p^-1*X0*Y3 + 1 - q^2");
        assert_eq!("0".parse::<LaurentPolynomial>().unwrap(), LaurentPolynomial::zero());
    }

    #[test]
    fn anticanonical_input_factor_is_reoriented() {
        let f: RationalFunction = "(1) / ((1 - p^-1*t))".parse().unwrap();
        assert_eq!(f.to_string(), "(-p*t^-1) / ((1 - p*t^-1))");
    }

    #[test]
    fn errors_carry_position() {
        assert!(matches!("(1 - t".parse::<RationalFunction>(), Err(Error::Parse { .. })));
        assert!(matches!("(1) / ((2 - t))".parse::<RationalFunction>(), Err(Error::Parse { .. })));
        assert!(matches!("t t".parse::<RationalFunction>(), Err(Error::Parse { pos: 2, .. })));
    }

    proptest! {
        #[test]
        fn render_then_parse_is_identity(
            ts in prop::collection::vec((-5i64..=5, -3i64..=3, -3i64..=3, 0i64..=2), 0..5),
            fs in prop::collection::vec((-3i64..=3, -3i64..=3), 0..4),
        ) {
            let num = LaurentPolynomial::from_terms(ts.into_iter().map(|(c, a, b, x)| {
                (Monomial::from_pairs([(Var::P, a), (Var::T, b), (Var::Y(x as u16 + 1), x)]), BigInt::from(c))
            }));
            let facs: Vec<Monomial> = fs.into_iter().map(|(a, b)| Monomial::pt(a, b)).filter(|m| !m.is_one()).collect();
            let f = RationalFunction::new(num, facs).unwrap();
            let g: RationalFunction = f.to_string().parse().unwrap();
            prop_assert_eq!(&g, &f);
            prop_assert!(g.value_eq(&f));
        }
    }
}
