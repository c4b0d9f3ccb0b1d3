//! Expression grammar shared by scalars, algebra elements and 1-forms.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?
//! exponent := ['-'] integer | '(' ['-'] integer ')'
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers are resolved by the evaluator: `q`, `i`, `x`, `y`, `xi`, `eta`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Source location, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    pub fn error(self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(BigRational),
    Ident(String, Pos),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64, Pos),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

fn lex(src: &str, start: Pos) -> Result<Vec<(Tok, Pos)>> {
    let mut toks = Vec::new();
    let mut line = start.line;
    let mut col = start.column;
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
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
        if c.is_ascii_digit() {
            let begin = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[begin..i].iter().collect();
            col += i - begin;
            toks.push((Tok::Int(text.parse().expect("digits")), pos));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let begin = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - begin;
            toks.push((Tok::Ident(chars[begin..i].iter().collect()), pos));
            continue;
        }
        if "+-*/^()".contains(c) {
            toks.push((Tok::Sym(c), pos));
            i += 1;
            col += 1;
            continue;
        }
        return Err(pos.error(format!("unexpected character '{c}'")));
    }
    toks.push((Tok::End, Pos { line, column: col }));
    Ok(toks)
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if *self.peek() == Tok::Sym('/') {
                let pos = self.pos();
                self.bump();
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        let pos = self.pos();
        self.bump();
        let paren = self.eat('(');
        let negative = self.eat('-');
        let exp_pos = self.pos();
        let n = match self.bump() {
            Tok::Int(n) => n,
            _ => return Err(exp_pos.error("expected integer exponent")),
        };
        if paren && !self.eat(')') {
            return Err(self.pos().error("expected ')'"));
        }
        let n: i64 = i64::try_from(n).map_err(|_| exp_pos.error("exponent too large"))?;
        Ok(Expr::Pow(
            Box::new(base),
            if negative { -n } else { n },
            pos,
        ))
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(Expr::Num(BigRational::from_integer(n))),
            Tok::Ident(name) => Ok(Expr::Ident(name, pos)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.pos().error("expected ')'"));
                }
                Ok(e)
            }
            Tok::End => Err(pos.error("unexpected end of input")),
            Tok::Sym(c) => Err(pos.error(format!("unexpected '{c}'"))),
        }
    }
}

/// Parses an expression whose first character sits at `start`.
pub fn parse_expr_at(src: &str, start: Pos) -> Result<Expr> {
    let mut lx = Lexer {
        toks: lex(src, start)?,
        at: 0,
    };
    let e = lx.expr()?;
    if *lx.peek() != Tok::End {
        return Err(lx.pos().error("trailing input"));
    }
    Ok(e)
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    parse_expr_at(src, Pos { line: 1, column: 1 })
}

/// Evaluates a scalar expression; `ident` resolves names such as `q` or `i`.
pub fn eval_scalar<F: Field>(e: &Expr, ident: &dyn Fn(&str) -> Option<F>) -> Result<F> {
    Ok(match e {
        Expr::Num(r) => F::from_rational(r.clone()),
        Expr::Ident(name, pos) => ident(name)
            .ok_or_else(|| pos.error(format!("unknown symbol '{name}' in {} mode", F::MODE)))?,
        Expr::Add(a, b) => eval_scalar(a, ident)? + eval_scalar(b, ident)?,
        Expr::Sub(a, b) => eval_scalar(a, ident)? - eval_scalar(b, ident)?,
        Expr::Mul(a, b) => eval_scalar(a, ident)? * eval_scalar(b, ident)?,
        Expr::Div(a, b, pos) => {
            let d = eval_scalar(b, ident)?;
            let d_inv = d.inv().ok_or_else(|| pos.error("division by zero"))?;
            eval_scalar(a, ident)? * d_inv
        }
        Expr::Neg(a) => -eval_scalar(a, ident)?,
        Expr::Pow(a, n, pos) => {
            let base = eval_scalar(a, ident)?;
            let base = if *n < 0 {
                base.inv()
                    .ok_or_else(|| pos.error("zero raised to a negative power"))?
            } else {
                base
            };
            crate::scalar::pow(&base, n.unsigned_abs())
        }
    })
}
