//! ASCII syntax for polynomials and differential operators.
//!
//! Variables are `x1..xN` with aliases `x, y, z, w` for the first four; partial derivatives
//! are `dx1..dxN` with aliases `dx, dy, dz, dw`. Literals are integers, and `a/b` divides by
//! a constant. `+ - * ^` and parentheses work as usual; juxtaposition (`2x`, `x dx`,
//! `(x+y)(x-y)`) means multiplication, which for operators is composition.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};
use crate::weyl::WeylOperator;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column: col,
        message: msg.into(),
    }
}

fn lex(src: &str) -> Result<(Vec<Token>, (usize, usize))> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token {
                tok,
                line: l0,
                col: c0,
            });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Num(s.parse().expect("digits")),
                line: l0,
                col: c0,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(s),
                line: l0,
                col: c0,
            });
            continue;
        }
        return Err(err(l0, c0, format!("unexpected character '{c}'")));
    }
    Ok((out, (line, col)))
}

#[derive(Debug, Clone)]
enum Expr {
    Num(Rational),
    Var(usize),
    Diff(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, (usize, usize)),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Resolves a variable name to `(is_derivative, index)`.
fn resolve(name: &str) -> Option<(bool, usize)> {
    let (diff, rest) = match name.strip_prefix('d') {
        Some(r) if !r.is_empty() => (true, r),
        _ => (false, name),
    };
    let idx = match rest {
        "x" => 0,
        "y" => 1,
        "z" => 2,
        "w" => 3,
        _ => {
            let digits = rest.strip_prefix('x')?;
            if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) || digits.starts_with('0') {
                return None;
            }
            digits.parse::<usize>().ok()?.checked_sub(1)?
        }
    };
    Some((diff, idx))
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|t| (t.line, t.col))
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
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
                    let at = self.here();
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
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
            let (l, c) = self.here();
            match self.bump().map(|t| t.tok) {
                Some(Tok::Num(n)) => {
                    let e = n.to_u32().ok_or_else(|| err(l, c, "exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(err(l, c, "expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let (l, c) = self.here();
        match self.bump().map(|t| t.tok) {
            Some(Tok::Num(n)) => Ok(Expr::Num(Rational::from_integer(n))),
            Some(Tok::Ident(name)) => match resolve(&name) {
                Some((false, i)) => Ok(Expr::Var(i)),
                Some((true, i)) => Ok(Expr::Diff(i)),
                None => Err(err(l, c, format!("unknown identifier '{name}'"))),
            },
            Some(Tok::LParen) => {
                let e = self.expr()?;
                let (l2, c2) = self.here();
                match self.bump().map(|t| t.tok) {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(err(l2, c2, "expected ')'")),
                }
            }
            Some(t) => Err(err(l, c, format!("unexpected token {t:?}"))),
            None => Err(err(l, c, "unexpected end of input")),
        }
    }
}

fn parse_expr(src: &str) -> Result<Expr> {
    let (toks, end) = lex(src)?;
    let mut p = Parser { toks, pos: 0, end };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        let (l, c) = p.here();
        return Err(err(l, c, "unexpected trailing input"));
    }
    Ok(e)
}

fn max_index(e: &Expr) -> Option<usize> {
    match e {
        Expr::Num(_) => None,
        Expr::Var(i) | Expr::Diff(i) => Some(*i),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
            max_index(a).max(max_index(b))
        }
        Expr::Neg(a) | Expr::Pow(a, _) => max_index(a),
    }
}

fn eval(e: &Expr, n: usize) -> Result<WeylOperator> {
    Ok(match e {
        Expr::Num(c) => WeylOperator::from_polynomial(Polynomial::constant(n, c.clone())),
        Expr::Var(i) => WeylOperator::from_polynomial(Polynomial::var(n, *i)),
        Expr::Diff(i) => WeylOperator::partial(n, *i),
        Expr::Add(a, b) => eval(a, n)?.add(&eval(b, n)?),
        Expr::Sub(a, b) => eval(a, n)?.sub(&eval(b, n)?),
        Expr::Mul(a, b) => eval(a, n)?.compose(&eval(b, n)?)?,
        Expr::Neg(a) => eval(a, n)?.neg(),
        Expr::Pow(a, k) => {
            let base = eval(a, n)?;
            let mut acc = WeylOperator::one(n);
            for _ in 0..*k {
                acc = acc.compose(&base)?;
            }
            acc
        }
        Expr::Div(a, b, (l, c)) => {
            let d = eval(b, n)?;
            let constant = d
                .as_polynomial()
                .filter(|p| p.is_constant() && !p.is_zero())
                .map(|p| p.evaluate_at_origin())
                .ok_or_else(|| err(*l, *c, "division is only allowed by a nonzero constant"))?;
            debug_assert!(!constant.is_zero());
            eval(a, n)?.scale(&constant.recip())
        }
    })
}

fn ring_size(e: &Expr, nvars: Option<usize>) -> Result<usize> {
    let needed = max_index(e).map(|i| i + 1).unwrap_or(0);
    match nvars {
        Some(n) if n < needed => Err(err(
            1,
            1,
            format!("expression uses variable {needed} but the ring has {n} variables"),
        )),
        Some(n) => Ok(n),
        None => Ok(needed.max(1)),
    }
}

/// Parses a differential operator. With `nvars = None` the ring size is the largest
/// variable index used (at least one).
pub fn parse_operator(src: &str, nvars: Option<usize>) -> Result<WeylOperator> {
    let e = parse_expr(src)?;
    let n = ring_size(&e, nvars)?;
    eval(&e, n)
}

/// Parses a polynomial; derivative symbols are rejected.
pub fn parse_polynomial(src: &str, nvars: Option<usize>) -> Result<Polynomial> {
    let op = parse_operator(src, nvars)?;
    op.as_polynomial()
        .ok_or_else(|| err(1, 1, "expected a polynomial, found a differential operator"))
}

impl Polynomial {
    /// Parses with an inferred ring size; see [`parse_polynomial`].
    pub fn parse(src: &str) -> Result<Polynomial> {
        parse_polynomial(src, None)
    }

    pub fn parse_in(src: &str, nvars: usize) -> Result<Polynomial> {
        parse_polynomial(src, Some(nvars))
    }
}

impl WeylOperator {
    pub fn parse(src: &str) -> Result<WeylOperator> {
        parse_operator(src, None)
    }

    pub fn parse_in(src: &str, nvars: usize) -> Result<WeylOperator> {
        parse_operator(src, Some(nvars))
    }
}
