use num_bigint::BigInt;

use super::coeff::Coefficient;
use super::context::Ctx;
use super::poly::Polynomial;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(s[st..i].parse().expect("digits")), st));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(s[st..i].to_string()), st));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    out.push((Tok::End, s.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    ctx: &'a Ctx,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.at += 1;
                    acc = acc.checked_add(&self.term()?)?;
                }
                Tok::Sym('-') => {
                    self.at += 1;
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.at += 1;
                    acc = acc.checked_mul(&self.factor()?)?;
                }
                Tok::Sym('/') => {
                    let pos = self.pos();
                    self.at += 1;
                    let d = self.factor()?;
                    let c = d.as_constant().ok_or(Error::Syntax {
                        pos,
                        msg: "divisor must not involve variables".into(),
                    })?;
                    acc = acc.scale(&c.inv(self.ctx)?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        if self.peek() == &Tok::Sym('-') {
            self.at += 1;
            return Ok(self.factor()?.checked_neg());
        }
        let base = self.atom()?;
        if self.peek() == &Tok::Sym('^') {
            self.at += 1;
            match self.peek().clone() {
                Tok::Int(n) => {
                    self.at += 1;
                    let e = u32::try_from(&n).map_err(|_| Error::ExponentOverflow)?;
                    return base.pow(e);
                }
                _ => return self.err("exponent must be a natural number"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.at += 1;
                Ok(Polynomial::constant(self.ctx, Coefficient::from(n)))
            }
            Tok::Ident(name) => {
                self.at += 1;
                if self.ctx.var_index(&name).is_some() {
                    Polynomial::var(self.ctx, &name)
                } else if self.ctx.param_index(&name).is_some() {
                    Polynomial::param(self.ctx, &name)
                } else {
                    Err(Error::UndeclaredIdentifier(name))
                }
            }
            Tok::Sym('(') => {
                self.at += 1;
                let e = self.expr()?;
                if self.peek() != &Tok::Sym(')') {
                    return self.err("expected `)`");
                }
                self.at += 1;
                Ok(e)
            }
            Tok::End => self.err("unexpected end of input"),
            _ => self.err("expected an integer, identifier or `(`"),
        }
    }
}

/// Parses `expr := term (('+'|'-') term)*`, `term := factor (('*'|'/') factor)*`,
/// `factor := '-' factor | atom ('^' nat)?`, `atom := integer | identifier | '(' expr ')'`.
/// Division is only allowed by variable-free factors.
pub fn parse_poly(text: &str, ctx: &Ctx) -> Result<Polynomial> {
    let mut p = Parser { toks: tokenize(text)?, at: 0, ctx };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Parses an expression that must not involve variables.
pub fn parse_coefficient(text: &str, ctx: &Ctx) -> Result<Coefficient> {
    parse_poly(text, ctx)?
        .as_constant()
        .ok_or_else(|| Error::Malformed(format!("`{text}` involves variables")))
}
