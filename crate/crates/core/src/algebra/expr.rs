//! Parser for polynomial and rational-function expressions in `s`.
//!
//! Grammar: sums and differences of products; `*` may be omitted (`2s^3`, `αs`);
//! `/` divides; `^` takes a non-negative integer exponent. The field generator is
//! written `α`, `alpha` or `a`.

use num_bigint::BigInt;

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::scalar::{Scalar, ScalarField};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var,
    Alpha,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Var,
    Alpha,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> std::result::Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            'α' => out.push(Tok::Alpha),
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let t: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(t.parse().unwrap()));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_alphabetic() {
                    i += 1;
                }
                let word: String = chars[start..=i].iter().collect();
                match word.as_str() {
                    "s" => out.push(Tok::Var),
                    "a" | "alpha" => out.push(Tok::Alpha),
                    // allow juxtaposed identifiers such as "as" or "ss"
                    w if w.chars().all(|ch| ch == 's' || ch == 'a') => {
                        for ch in w.chars() {
                            out.push(if ch == 's' { Tok::Var } else { Tok::Alpha });
                        }
                    }
                    w => return Err(format!("unknown identifier '{}'", w)),
                }
            }
            other => return Err(format!("unexpected character '{}'", other)),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }
    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }
    fn expr(&mut self) -> std::result::Result<Expr, String> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }
    fn term(&mut self) -> std::result::Result<Expr, String> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Num(_)) | Some(Tok::Var) | Some(Tok::Alpha) | Some(Tok::LParen) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }
    fn unary(&mut self) -> std::result::Result<Expr, String> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }
    fn power(&mut self) -> std::result::Result<Expr, String> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.try_into().map_err(|_| "exponent too large".to_string())?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err("expected an integer exponent after '^'".into()),
            }
        }
        Ok(base)
    }
    fn atom(&mut self) -> std::result::Result<Expr, String> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(Expr::Int(n)),
            Some(Tok::Var) => Ok(Expr::Var),
            Some(Tok::Alpha) => Ok(Expr::Alpha),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err("expected ')'".into()),
                }
            }
            Some(t) => Err(format!("unexpected token {:?}", t)),
            None => Err("unexpected end of expression".into()),
        }
    }
}

pub fn parse_expr(s: &str) -> std::result::Result<Expr, String> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input at token {}", p.pos + 1));
    }
    Ok(e)
}

impl Expr {
    /// Evaluate in K(s); `alpha` supplies the generator if the expression uses it.
    pub fn eval<K: Scalar>(&self, field: &K::Field, alpha: Option<&K>) -> std::result::Result<RatFunc<K>, String> {
        Ok(match self {
            Expr::Int(n) => RatFunc::constant(field.from_int(n)),
            Expr::Var => RatFunc::from_poly(Poly::x(field)),
            Expr::Alpha => RatFunc::constant(alpha.ok_or("α is not defined over this field")?.clone()),
            Expr::Neg(a) => -&a.eval(field, alpha)?,
            Expr::Add(a, b) => &a.eval(field, alpha)? + &b.eval(field, alpha)?,
            Expr::Sub(a, b) => &a.eval(field, alpha)? - &b.eval(field, alpha)?,
            Expr::Mul(a, b) => &a.eval(field, alpha)? * &b.eval(field, alpha)?,
            Expr::Div(a, b) => a.eval(field, alpha)?.div(&b.eval(field, alpha)?).ok_or("division by zero")?,
            Expr::Pow(a, e) => a.eval(field, alpha)?.pow(*e),
        })
    }

    pub fn uses_alpha(&self) -> bool {
        match self {
            Expr::Alpha => true,
            Expr::Int(_) | Expr::Var => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.uses_alpha(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.uses_alpha() || b.uses_alpha(),
        }
    }
}

/// Parse a rational function in s.
pub fn parse_ratfunc<K: Scalar>(s: &str, field: &K::Field, alpha: Option<&K>, line: usize) -> Result<RatFunc<K>> {
    let e = parse_expr(s).map_err(|msg| Error::Parse { line, msg })?;
    e.eval(field, alpha).map_err(|msg| Error::Parse { line, msg })
}

/// Parse a polynomial in s.
pub fn parse_poly<K: Scalar>(s: &str, field: &K::Field, alpha: Option<&K>, line: usize) -> Result<Poly<K>> {
    let r = parse_ratfunc(s, field, alpha, line)?;
    r.as_poly().cloned().ok_or(Error::Parse { line, msg: format!("'{}' is not a polynomial", s.trim()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::Rationals;

    #[test]
    fn parses_implicit_products() {
        let f = parse_poly::<crate::algebra::rational::Rat>("s(s-2)^3(2s^2-9)", &Rationals, None, 1).unwrap();
        assert_eq!(f.degree(), Some(6));
        assert_eq!(f.coeff(6).to_string(), "2");
        assert!(parse_poly::<crate::algebra::rational::Rat>("s +* 2", &Rationals, None, 3).is_err());
        assert!(parse_poly::<crate::algebra::rational::Rat>("1/s", &Rationals, None, 3).is_err());
    }
}
