//! Parser for rational-function literals such as `(-1*k - 4)/(k + 3/2)`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::Rational;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Names accepted for the formal parameter.
pub const PARAMETER_NAMES: [&str; 3] = ["k", "kappa", "t"];

pub fn parse_ratfunc(text: &str) -> Result<RatFunc> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    parse_ratfunc(text)?
        .as_constant()
        .ok_or_else(|| Error::Parse { pos: 0, msg: format!("`{text}` is not a constant") })
}

pub(crate) struct Parser<'a> {
    pub s: &'a [u8],
    pub pos: usize,
}

impl<'a> Parser<'a> {
    pub fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    pub fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    pub fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        Ok(txt.parse().expect("digits"))
    }

    pub fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len()
            && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
        {
            if self.pos == start && self.s[self.pos].is_ascii_digit() {
                return None;
            }
            self.pos += 1;
        }
        (start != self.pos).then(|| String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    pub fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|_| Error::Parse {
                    pos: at,
                    msg: "division by zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let e = self.integer()?;
            let e: i32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            let e = if neg { -e } else { e };
            return base.pow(e).map_err(|_| self.err("zero to a negative power"));
        }
        Ok(base)
    }

    pub fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFunc::constant(Rational::from_integer(n)))
            }
            Some(_) => {
                let save = self.pos;
                match self.ident() {
                    Some(id) if PARAMETER_NAMES.contains(&id.as_str()) => Ok(RatFunc::var()),
                    _ => {
                        self.pos = save;
                        Err(self.err("expected number, parameter or `(`"))
                    }
                }
            }
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Render a rational as `p` or `p/q`, the form used in definition files.
pub fn render_rational(r: &Rational) -> String {
    if r.is_zero() {
        "0".into()
    } else {
        r.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::poly::{rat, Poly};

    #[test]
    fn round_trip_of_printed_forms() {
        for txt in ["(-1*k - 4)/(k + 3/2)", "(k^2 - 3/2*k + 7)", "(0)", "(-5/3)/(k^3 + k)"] {
            let f = parse_ratfunc(txt).unwrap();
            assert_eq!(f.render("k"), txt);
        }
    }

    #[test]
    fn general_expressions() {
        let f = parse_ratfunc("3*k/(k+2)").unwrap();
        assert_eq!(f.render("k"), "(3*k)/(k + 2)");
        let g = parse_ratfunc("(k^2-4)/(k+2)").unwrap();
        assert_eq!(g, RatFunc::from_poly(Poly::from_i64(&[-2, 1])));
        assert_eq!(parse_rational("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_ratfunc("kappa^-2").unwrap().render("kappa"), "(1)/(kappa^2)");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_ratfunc("(k + ") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_ratfunc("1/(k-k)").is_err());
        assert!(parse_ratfunc("x").is_err());
    }
}
