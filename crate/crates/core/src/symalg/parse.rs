//! Recursive-descent reader for rational expressions such as
//! `y(λ+t₁−z₁+y)(t₁−z₂)` or `-(lambda + z1 - z2)*y/(z1 - z2 - y)`.
//!
//! Juxtaposition is multiplication; `−` and `·` are accepted alongside the
//! ASCII operators; `^` takes an integer exponent (negative allowed).

use super::ratfunc::RationalFunction;
use super::scalar::Scalar;
use super::vars::VarTable;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn is_sub_digit(c: char) -> bool {
    ('₀'..='₉').contains(&c)
}

fn superscript_digit(c: char) -> Option<char> {
    let d = match c {
        '⁰' => 0,
        '¹' => 1,
        '²' => 2,
        '³' => 3,
        '⁴'..='⁹' => 4 + (c as u32 - '⁴' as u32),
        _ => return None,
    };
    char::from_digit(d, 10)
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' | '−' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' | '·' | '⋅' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::Open);
                i += 1;
            }
            ')' => {
                out.push(Tok::Close);
                i += 1;
            }
            s if superscript_digit(s).is_some() => {
                let mut digits = String::new();
                while let Some(d) = chars.get(i).copied().and_then(superscript_digit) {
                    digits.push(d);
                    i += 1;
                }
                out.push(Tok::Caret);
                out.push(Tok::Num(digits));
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Num(chars[start..i].iter().collect()));
            }
            a if a.is_alphabetic() => {
                let rest: String = chars[i..].iter().collect();
                let head = if rest.starts_with("lambda") { 6 } else { 1 };
                let start = i;
                i += head;
                while i < chars.len() && (chars[i].is_ascii_digit() || is_sub_digit(chars[i])) {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a VarTable,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr<C: Scalar>(&mut self) -> Result<RationalFunction<C>> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term<C: Scalar>(&mut self) -> Result<RationalFunction<C>> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    acc = acc.checked_div(&self.unary()?)?;
                }
                Some(Tok::Open) | Some(Tok::Ident(_)) | Some(Tok::Num(_)) => {
                    acc = &acc * &self.power()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary<C: Scalar>(&mut self) -> Result<RationalFunction<C>> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power<C: Scalar>(&mut self) -> Result<RationalFunction<C>> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let neg = if self.peek() == Some(&Tok::Minus) {
                self.bump();
                true
            } else {
                false
            };
            let e: i32 = match self.bump() {
                Some(Tok::Num(s)) => s.parse().map_err(|_| Error::Parse(format!("bad exponent {s}")))?,
                other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            };
            let e = if neg { -e } else { e };
            if e < 0 && base.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom<C: Scalar>(&mut self) -> Result<RationalFunction<C>> {
        match self.bump() {
            Some(Tok::Num(s)) => C::parse_canonical(&s)
                .map(RationalFunction::constant)
                .ok_or_else(|| Error::Parse(format!("bad number {s}"))),
            Some(Tok::Ident(name)) => self
                .vars
                .lookup(&name)
                .map(RationalFunction::var)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name}"))),
            Some(Tok::Open) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::Close) => Ok(inner),
                    other => Err(Error::Parse(format!("expected ')', found {other:?}"))),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse a rational expression over the variables of `vars`.
pub fn parse_ratf<C: Scalar>(src: &str, vars: &VarTable) -> Result<RationalFunction<C>> {
    let mut p = Parser { toks: lex(src)?, pos: 0, vars };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::poly::Polynomial;
    use num_rational::BigRational;

    type R = RationalFunction<BigRational>;

    #[test]
    fn juxtaposed_products() {
        let vt = VarTable::new(2, 1).unwrap();
        let a: R = parse_ratf("y(λ+t₁−z₁+y)(t₁−z₂)", &vt).unwrap();
        let b: R = parse_ratf("y*(lambda + t1 - z1 + y)*(t1 - z2)", &vt).unwrap();
        assert_eq!(a, b);
        assert!(a.is_polynomial());
        let c: R = parse_ratf("-(λ+z₁−z₂)y/(z₁−z₂−y)", &vt).unwrap();
        assert!(!c.is_polynomial());
        let d: R = parse_ratf("λ^2 - y²", &vt).unwrap();
        let lam = Polynomial::var(vt.lambda());
        let y = Polynomial::var(vt.y());
        assert_eq!(d.to_poly().unwrap(), &lam.pow(2) - &y.pow(2));
    }

    #[test]
    fn errors_are_reported() {
        let vt = VarTable::new(2, 1).unwrap();
        assert!(parse_ratf::<BigRational>("z3", &vt).is_err());
        assert!(parse_ratf::<BigRational>("(λ", &vt).is_err());
        assert_eq!(parse_ratf::<BigRational>("1/(y-y)", &vt), Err(Error::DivisionByZero));
    }
}
