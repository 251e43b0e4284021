//! Text form of elements.
//!
//! ```text
//! element := ["-"] term (("+" | "-") term)*
//! term    := [coeff "*"] factor
//! factor  := NAME | "D^" INT "(" element ")" | ":" factor factor+ ":"
//!          | "(" element ")" | "1" | "0"
//! coeff   := "(" ratfunc ")" | number
//! ```
//! `:a b c:` nests to the right. `1` is the vacuum.

use std::sync::Arc;

use super::element::Element;
use super::monomial::{Field, Monomial, Vector};
use super::presentation::VAPresentation;
use crate::coeff::parse::Parser;
use crate::coeff::{RatFunc, Rational};
use crate::error::Result;

pub fn parse_element(pres: &Arc<VAPresentation>, text: &str) -> Result<Element> {
    let mut p = ElementParser { inner: Parser { s: text.as_bytes(), pos: 0 }, pres };
    let e = p.element()?;
    p.inner.skip_ws();
    if p.inner.pos != text.len() {
        return Err(p.inner.err("unexpected trailing input"));
    }
    Ok(e)
}

struct ElementParser<'a, 'b> {
    inner: Parser<'a>,
    pres: &'b Arc<VAPresentation>,
}

impl ElementParser<'_, '_> {
    fn element(&mut self) -> Result<Element> {
        let negate = self.inner.eat(b'-');
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            if self.inner.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.inner.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Element> {
        let save = self.inner.pos;
        match self.inner.peek() {
            Some(b'(') => {
                // A parenthesized coefficient followed by `*`, else a grouped element.
                if let Ok(c) = self.inner.atom() {
                    if self.inner.eat(b'*') {
                        let f = self.factor()?;
                        return Ok(f.scale(&c));
                    }
                    // A bare coefficient multiplies the vacuum.
                    return Ok(Element::vacuum(self.pres).scale(&c));
                }
                self.inner.pos = save;
                self.factor()
            }
            Some(c) if c.is_ascii_digit() => {
                let c = self.number()?;
                if self.inner.eat(b'*') {
                    let f = self.factor()?;
                    return Ok(f.scale(&RatFunc::constant(c)));
                }
                Ok(Element::vacuum(self.pres).scale(&RatFunc::constant(c)))
            }
            _ => self.factor(),
        }
    }

    fn number(&mut self) -> Result<Rational> {
        let n = self.inner.integer()?;
        let save = self.inner.pos;
        if self.inner.eat(b'/') {
            if let Ok(d) = self.inner.integer() {
                if d == 0.into() {
                    return Err(self.inner.err("zero denominator"));
                }
                return Ok(Rational::new(n, d));
            }
            self.inner.pos = save;
        }
        Ok(Rational::from_integer(n))
    }

    fn factor(&mut self) -> Result<Element> {
        match self.inner.peek() {
            Some(b'(') => {
                self.inner.pos += 1;
                let e = self.element()?;
                self.inner.expect(b')')?;
                Ok(e)
            }
            Some(b':') => {
                self.inner.pos += 1;
                let mut items = Vec::new();
                loop {
                    match self.inner.peek() {
                        Some(b':') if items.len() >= 2 && self.colon_closes() => {
                            self.inner.pos += 1;
                            break;
                        }
                        None => return Err(self.inner.err("unterminated normally ordered product")),
                        _ => items.push(self.factor()?),
                    }
                }
                Element::normal_order_all(&items)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok(Element::vacuum(self.pres).scale(&RatFunc::constant(n)))
            }
            Some(_) => {
                let Some(id) = self.inner.ident() else {
                    return Err(self.inner.err("expected factor"));
                };
                if id == "D" && self.inner.eat(b'^') {
                    let d = self.inner.integer()?;
                    let d: usize = d.try_into().map_err(|_| self.inner.err("derivative order too large"))?;
                    self.inner.expect(b'(')?;
                    let e = self.element()?;
                    self.inner.expect(b')')?;
                    return Ok(e.derivative_n(d));
                }
                Element::named(self.pres, &id)
            }
            None => Err(self.inner.err("unexpected end of input")),
        }
    }

    /// A colon closes a product unless it directly precedes a factor.
    fn colon_closes(&self) -> bool {
        match self.inner.s.get(self.inner.pos + 1) {
            Some(c) => !(c.is_ascii_alphanumeric() || *c == b'(' || *c == b'_'),
            None => true,
        }
    }
}

pub fn print_field(pres: &VAPresentation, f: Field) -> String {
    let name = &pres.generators[f.gen as usize].name;
    if f.deriv == 0 {
        name.clone()
    } else {
        format!("D^{}({name})", f.deriv)
    }
}

pub fn print_monomial(pres: &VAPresentation, m: &Monomial) -> String {
    match m.len() {
        0 => "1".into(),
        1 => print_field(pres, m[0]),
        _ => format!(":{}:", m.iter().map(|f| print_field(pres, *f)).collect::<Vec<_>>().join(" ")),
    }
}

pub fn print_vector(pres: &VAPresentation, v: &Vector) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let sym = pres.parameter.symbol();
    v.iter()
        .map(|(m, c)| {
            if c.is_one() {
                print_monomial(pres, m)
            } else if c.is_polynomial() {
                format!("{}*{}", c.render(sym), print_monomial(pres, m))
            } else {
                format!("({})*{}", c.render(sym), print_monomial(pres, m))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
