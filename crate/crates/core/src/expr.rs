//! Small arithmetic language over the profile variable `u`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?
//! atom  := number | 'u' | func '(' expr ')' | '(' expr ')'
//! func  := ln | exp | sinh | cosh | j0 | i0
//! ```
//!
//! Expressions are evaluated on [`Jet`]s so every profile built from one comes
//! with exact derivatives up to third order.

use std::fmt;

use crate::bessel::{bessel_i0_derivs, bessel_j0_derivs, SeriesConfig};
use crate::error::{domain, Error, Result};
use crate::jet::Jet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Ln,
    Exp,
    Sinh,
    Cosh,
    J0,
    I0,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "ln" => Func::Ln,
            "exp" => Func::Exp,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "j0" => Func::J0,
            "i0" => Func::I0,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Func::Ln => "ln",
            Func::Exp => "exp",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::J0 => "j0",
            Func::I0 => "i0",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser {
            tokens: tokenize(src)?,
            pos: 0,
        };
        let e = p.expr()?;
        if let Some(t) = p.peek() {
            return Err(Error::Parse(format!("unexpected `{t}` after expression")));
        }
        Ok(e)
    }

    /// Value and derivatives `[f, f', f'', f''']` at `u`.
    pub fn eval_jet(&self, u: f64, cfg: &SeriesConfig) -> Result<Jet> {
        let j = self.eval_at(Jet::variable(u), cfg)?;
        if j.0.iter().any(|a| !a.is_finite()) {
            return domain(format!("expression `{self}` is not finite at u = {u}"));
        }
        Ok(j)
    }

    pub fn eval(&self, u: f64, cfg: &SeriesConfig) -> Result<f64> {
        Ok(self.eval_jet(u, cfg)?.value())
    }

    fn eval_at(&self, u: Jet, cfg: &SeriesConfig) -> Result<Jet> {
        Ok(match self {
            Expr::Num(c) => Jet::constant(*c),
            Expr::Var => u,
            Expr::Neg(a) => -a.eval_at(u, cfg)?,
            Expr::Add(a, b) => a.eval_at(u, cfg)? + b.eval_at(u, cfg)?,
            Expr::Sub(a, b) => a.eval_at(u, cfg)? - b.eval_at(u, cfg)?,
            Expr::Mul(a, b) => a.eval_at(u, cfg)? * b.eval_at(u, cfg)?,
            Expr::Div(a, b) => {
                let d = b.eval_at(u, cfg)?;
                if d.value() == 0.0 {
                    return domain(format!("division by zero in `{self}`"));
                }
                a.eval_at(u, cfg)? / d
            }
            Expr::Pow(a, b) => {
                let (base, exponent) = (a.eval_at(u, cfg)?, b.eval_at(u, cfg)?);
                if !exponent.is_constant() && base.value() <= 0.0 {
                    return domain(format!(
                        "variable exponent needs a positive base in `{self}`"
                    ));
                }
                base.pow(exponent)
            }
            Expr::Call(f, a) => {
                let x = a.eval_at(u, cfg)?;
                match f {
                    Func::Ln => {
                        if x.value() <= 0.0 {
                            return domain(format!("ln of non-positive value {}", x.value()));
                        }
                        x.ln()
                    }
                    Func::Exp => x.exp(),
                    Func::Sinh => x.sinh(),
                    Func::Cosh => x.cosh(),
                    Func::J0 => x.compose(bessel_j0_derivs(x.value(), cfg)?),
                    Func::I0 => x.compose(bessel_i0_derivs(x.value(), cfg)?),
                }
            }
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(c) => write!(f, "{c}"),
            Expr::Var => write!(f, "u"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, b) => write!(f, "({a} ^ {b})"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Op(char),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Num(c) => write!(f, "{c}"),
            Token::Ident(s) => write!(f, "{s}"),
            Token::Op(c) => write!(f, "{c}"),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // exponent part, e.g. 1e-3
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let value = text
                .parse()
                .map_err(|_| Error::Parse(format!("invalid number `{text}`")))?;
            out.push(Token::Num(value));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_op(&mut self, op: char) -> Result<()> {
        if self.eat_op(op) {
            Ok(())
        } else {
            Err(Error::Parse(match self.peek() {
                Some(t) => format!("expected `{op}`, found `{t}`"),
                None => format!("expected `{op}`, found end of input"),
            }))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_op('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_op('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_op('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_op('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat_op('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat_op('^') {
            return Ok(Expr::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Token::Num(c) => Ok(Expr::Num(c)),
            Token::Op('(') => {
                let e = self.expr()?;
                self.expect_op(')')?;
                Ok(e)
            }
            Token::Ident(name) if name == "u" => Ok(Expr::Var),
            Token::Ident(name) => {
                let f = Func::from_name(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown identifier `{name}`")))?;
                self.expect_op('(')?;
                let arg = self.expr()?;
                self.expect_op(')')?;
                Ok(Expr::Call(f, Box::new(arg)))
            }
            Token::Op(c) => Err(Error::Parse(format!("unexpected `{c}`"))),
        }
    }
}
