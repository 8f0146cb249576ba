//! Text grammar shared by polynomials and operators:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | name | '(' expr ')'
//! ```
//!
//! Names match `[a-z][a-z0-9_]*`. Division is only allowed by a nonzero
//! constant, which is how `p/q` coefficients are written.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::polynomial::Polynomial;
use super::varset::VarSet;
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn parse_err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().unwrap()), col));
            continue;
        }
        if c.is_ascii_lowercase() {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_lowercase() || chars[i].is_ascii_digit() || chars[i] == '_')
            {
                i += 1;
            }
            out.push((Tok::Name(chars[start..i].iter().collect()), col));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(parse_err(col, format!("unexpected character `{c}`"))),
        };
        out.push((t, col));
        i += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(BigInt),
    Name(String, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let col = self.col();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), col);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let col = self.col();
            match self.bump() {
                Some((Tok::Int(n), _)) => {
                    let e = n
                        .to_u32()
                        .ok_or_else(|| parse_err(col, "exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(parse_err(col, "expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let col = self.col();
        match self.bump() {
            Some((Tok::Int(n), _)) => Ok(Expr::Num(n)),
            Some((Tok::Name(s), c)) => Ok(Expr::Name(s, c)),
            Some((Tok::LParen, _)) => {
                let e = self.expr()?;
                let close = self.col();
                match self.bump() {
                    Some((Tok::RParen, _)) => Ok(e),
                    _ => Err(parse_err(close, "expected `)`")),
                }
            }
            Some(_) => Err(parse_err(col, "expected a number, variable or `(`")),
            None => Err(parse_err(col, "unexpected end of input")),
        }
    }
}

fn parse_expr(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end_col: text.chars().count() + 1,
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        let col = p.col();
        let msg = match p.peek() {
            Some(Tok::RParen) => "unbalanced `)`",
            Some(Tok::Name(_)) | Some(Tok::Int(_)) | Some(Tok::LParen) => {
                "expected an operator (implicit multiplication is not allowed)"
            }
            _ => "unexpected token",
        };
        return Err(parse_err(col, msg));
    }
    Ok(e)
}

/// Ring operations needed to evaluate a parsed expression.
pub trait ParseTarget: Sized + Clone {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn pow(&self, e: u32) -> Self;
    fn as_constant(&self) -> Option<Rational>;
}

struct Env<'a, T> {
    name: &'a dyn Fn(&str, usize) -> Result<T>,
    konst: &'a dyn Fn(Rational) -> T,
}

fn eval<T: ParseTarget>(e: &Expr, env: &Env<'_, T>) -> Result<T> {
    Ok(match e {
        Expr::Num(n) => (env.konst)(Rational::from_integer(n.clone())),
        Expr::Name(s, col) => (env.name)(s, *col)?,
        Expr::Add(a, b) => eval(a, env)?.add(&eval(b, env)?),
        Expr::Sub(a, b) => eval(a, env)?.sub(&eval(b, env)?),
        Expr::Mul(a, b) => eval(a, env)?.mul(&eval(b, env)?),
        Expr::Neg(a) => eval(a, env)?.neg(),
        Expr::Pow(a, k) => eval(a, env)?.pow(*k),
        Expr::Div(a, b, col) => {
            let d = eval(b, env)?
                .as_constant()
                .ok_or_else(|| parse_err(*col, "division only by a constant"))?;
            if d.is_zero() {
                return Err(parse_err(*col, "division by zero"));
            }
            eval(a, env)?.scale(&d.recip())
        }
    })
}

/// Parses `text`, resolving identifiers with `name` (which receives the
/// 1-based column for error reporting) and integers with `konst`.
pub fn parse_with<T: ParseTarget>(
    text: &str,
    name: &dyn Fn(&str, usize) -> Result<T>,
    konst: &dyn Fn(Rational) -> T,
) -> Result<T> {
    eval(&parse_expr(text)?, &Env { name, konst })
}

pub(crate) fn unknown_name(col: usize, s: &str) -> Error {
    parse_err(col, format!("unknown variable `{s}`"))
}

fn collect_names(e: &Expr, out: &mut BTreeSet<String>) {
    match e {
        Expr::Num(_) => {}
        Expr::Name(s, _) => {
            out.insert(s.clone());
        }
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
            collect_names(a, out);
            collect_names(b, out);
        }
        Expr::Neg(a) | Expr::Pow(a, _) => collect_names(a, out),
    }
}

/// Identifiers occurring in `text`, sorted.
pub fn variables_in(text: &str) -> Result<Vec<String>> {
    let mut names = BTreeSet::new();
    collect_names(&parse_expr(text)?, &mut names);
    Ok(names.into_iter().collect())
}

impl ParseTarget for Polynomial {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        Polynomial::scale(self, c)
    }
    fn pow(&self, e: u32) -> Self {
        Polynomial::pow(self, e)
    }
    fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.constant_term())
    }
}

/// Parses a polynomial over the given variables.
pub fn parse_polynomial(text: &str, vars: &Arc<VarSet>) -> Result<Polynomial> {
    parse_with(
        text,
        &|s, col| match vars.index_of(s) {
            Some(i) => Ok(Polynomial::var_at(vars, i)),
            None => Err(unknown_name(col, s)),
        },
        &|c| Polynomial::constant(vars, c),
    )
}

/// Parses a polynomial over the variables it mentions, in alphabetical order.
pub fn parse_polynomial_auto(text: &str) -> Result<Polynomial> {
    let vars = VarSet::new(variables_in(text)?)?;
    parse_polynomial(text, &vars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn basic_forms() {
        let f = parse_polynomial_auto("x^2 + y^3").unwrap();
        assert_eq!(f.vars().names(), ["x", "y"]);
        assert_eq!(f.render(), "y^3 + x^2");
        let g = parse_polynomial_auto("1/2*x*y^2 - 3*z").unwrap();
        assert_eq!(g.render(), "1/2*x*y^2 - 3*z");
        let z = parse_polynomial_auto("1/2*x - 1/2*x").unwrap();
        assert!(z.is_zero());
        let p = parse_polynomial_auto("(x+1)^2 - x*(x + 2)").unwrap();
        assert_eq!(p.render(), "1");
        let q = parse_polynomial_auto("-3/4").unwrap();
        assert_eq!(q.constant_term(), rat(-3, 4));
    }

    #[test]
    fn error_columns() {
        assert_eq!(
            parse_polynomial_auto("x + @"),
            Err(Error::Parse {
                column: 5,
                message: "unexpected character `@`".into()
            })
        );
        assert!(matches!(parse_polynomial_auto("2x"), Err(Error::Parse { column: 2, .. })));
        assert!(matches!(parse_polynomial_auto("x y"), Err(Error::Parse { column: 3, .. })));
        assert!(matches!(parse_polynomial_auto("x +"), Err(Error::Parse { column: 4, .. })));
        assert!(matches!(parse_polynomial_auto("x/y"), Err(Error::Parse { column: 3, .. })));
        assert!(matches!(parse_polynomial_auto("x^y"), Err(Error::Parse { column: 3, .. })));
        assert!(matches!(parse_polynomial_auto("X"), Err(Error::Parse { column: 1, .. })));
    }

    #[test]
    fn unknown_variable_has_column() {
        let vs = VarSet::new(["x"]).unwrap();
        assert!(matches!(
            parse_polynomial("x + zz", &vs),
            Err(Error::Parse { column: 5, .. })
        ));
    }
}
