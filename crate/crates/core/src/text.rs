//! Parsing for the canonical text formats.
//!
//! One tokenizer and expression grammar serve three targets: Laurent
//! polynomials (`q^-1 - q`), noncommutative polynomials
//! (`z11*z22 + (-q^-1)*z12*z21`), and rational functions for the Bruhat
//! front end (`(q^2 - 1)/(q + 3)`). Rendering lives on the value types;
//! everything rendered here parses back to an equal value.

use std::sync::Arc;

use num::{BigInt, BigRational};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, ParamSpace};
use crate::ncalg::{Context, NcPoly};

/// Expression tree shared by all parse targets.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(BigRational),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
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

fn tokenize(input: &str) -> Result<Vec<(Token, usize)>> {
    let mut out = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((Token::Plus, i));
                i += 1;
            }
            '-' => {
                out.push((Token::Minus, i));
                i += 1;
            }
            '*' => {
                out.push((Token::Star, i));
                i += 1;
            }
            '/' => {
                out.push((Token::Slash, i));
                i += 1;
            }
            '^' => {
                out.push((Token::Caret, i));
                i += 1;
            }
            '(' => {
                out.push((Token::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Token::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = input[start..i].parse().map_err(|_| Error::Parse {
                    msg: "bad integer".into(),
                    at: start,
                })?;
                out.push((Token::Num(n), start));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Token::Ident(input[start..i].to_string()), start));
            }
            _ => {
                return Err(Error::Parse {
                    msg: format!("unexpected character {c:?}"),
                    at: i,
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn at(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or_else(|| self.tokens.last().map(|(_, p)| p + 1).unwrap_or(0))
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        let at = self.at();
        match self.bump() {
            Some(got) if got == t => Ok(()),
            got => Err(Error::Parse {
                msg: format!("expected {t:?}, found {got:?}"),
                at,
            }),
        }
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor (('*' | '/') factor)*
    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some(Token::Slash) => {
                    self.bump();
                    acc = Expr::Div(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    // factor := '-' factor | atom ('^' exponent)?
    fn factor(&mut self) -> Result<Expr> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            let mut sign = 1i32;
            if matches!(self.peek(), Some(Token::Minus)) {
                self.bump();
                sign = -1;
            }
            let at = self.at();
            match self.bump() {
                Some(Token::Num(n)) => {
                    let mag: i32 = n.to_string().parse().ok().filter(|m| *m <= 10_000).ok_or(
                        Error::Parse {
                            msg: "exponent out of range (|e| <= 10000)".into(),
                            at,
                        },
                    )?;
                    return Ok(Expr::Pow(Box::new(base), sign * mag));
                }
                got => {
                    return Err(Error::Parse {
                        msg: format!("expected integer exponent, found {got:?}"),
                        at,
                    })
                }
            }
        }
        Ok(base)
    }

    // atom := number | ident | '(' expr ')'
    fn atom(&mut self) -> Result<Expr> {
        let at = self.at();
        match self.bump() {
            Some(Token::Num(n)) => Ok(Expr::Num(BigRational::from(n))),
            Some(Token::Ident(s)) => Ok(Expr::Sym(s)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            got => Err(Error::Parse {
                msg: format!("expected a value, found {got:?}"),
                at,
            }),
        }
    }
}

/// Parse a full input string into an expression tree.
pub fn parse_expr(input: &str) -> Result<Expr> {
    let tokens = tokenize(input)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse {
            msg: "trailing input".into(),
            at: p.at(),
        });
    }
    Ok(e)
}

/// Evaluate an expression as a Laurent polynomial. Division is restricted to
/// invertible-monomial denominators.
pub fn eval_laurent(e: &Expr, space: &Arc<ParamSpace>) -> Result<LaurentPoly> {
    match e {
        Expr::Num(c) => Ok(LaurentPoly::constant(space, c.clone())),
        Expr::Sym(s) => {
            if space.index_of(s).is_some() {
                Ok(LaurentPoly::param(space, s))
            } else {
                Err(Error::MissingBinding { param: s.clone() })
            }
        }
        Expr::Neg(a) => Ok(eval_laurent(a, space)?.negated()),
        Expr::Add(a, b) => eval_laurent(a, space)?.checked_add(&eval_laurent(b, space)?),
        Expr::Sub(a, b) => eval_laurent(a, space)?.checked_sub(&eval_laurent(b, space)?),
        Expr::Mul(a, b) => eval_laurent(a, space)?.checked_mul(&eval_laurent(b, space)?),
        Expr::Div(a, b) => {
            let d = eval_laurent(b, space)?.inverted_monomial()?;
            eval_laurent(a, space)?.checked_mul(&d)
        }
        Expr::Pow(a, k) => eval_laurent(a, space)?.pow(*k),
    }
}

/// Parse a Laurent polynomial in the canonical format.
pub fn parse_laurent(input: &str, space: &Arc<ParamSpace>) -> Result<LaurentPoly> {
    eval_laurent(&parse_expr(input)?, space)
}

fn eval_nc(e: &Expr, ctx: &Arc<Context>) -> Result<NcPoly> {
    match e {
        Expr::Num(c) => Ok(NcPoly::scalar(
            ctx,
            LaurentPoly::constant(ctx.params(), c.clone()),
        )),
        Expr::Sym(s) => {
            if let Some(code) = ctx.code_by_name(s) {
                Ok(NcPoly::gen(ctx, code))
            } else if ctx.params().index_of(s).is_some() {
                Ok(NcPoly::scalar(ctx, LaurentPoly::param(ctx.params(), s)))
            } else {
                Err(Error::MissingBinding { param: s.clone() })
            }
        }
        Expr::Neg(a) => Ok(eval_nc(a, ctx)?.negated()),
        Expr::Add(a, b) => eval_nc(a, ctx)?.checked_add(&eval_nc(b, ctx)?),
        Expr::Sub(a, b) => eval_nc(a, ctx)?.checked_sub(&eval_nc(b, ctx)?),
        Expr::Mul(a, b) => eval_nc(a, ctx)?.checked_mul(&eval_nc(b, ctx)?),
        Expr::Div(a, b) => {
            // Scalar division only.
            let d = eval_nc(b, ctx)?;
            let c = d
                .as_scalar()
                .ok_or_else(|| Error::NotAMonomial(d.to_string()))?
                .inverted_monomial()?;
            Ok(eval_nc(a, ctx)?.scaled(&c))
        }
        Expr::Pow(a, k) => {
            let base = eval_nc(a, ctx)?;
            if *k < 0 {
                let c = base
                    .as_scalar()
                    .ok_or_else(|| Error::NotAMonomial(base.to_string()))?;
                return Ok(NcPoly::scalar(ctx, c.pow(*k)?));
            }
            let mut acc = NcPoly::one(ctx);
            for _ in 0..*k {
                acc = acc.checked_mul(&base)?;
            }
            Ok(acc)
        }
    }
}

/// Parse a noncommutative polynomial in the canonical format; identifiers
/// resolve to the context's generators first, then its parameters.
pub fn parse_ncpoly(input: &str, ctx: &Arc<Context>) -> Result<NcPoly> {
    eval_nc(&parse_expr(input)?, ctx)
}
