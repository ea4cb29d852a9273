//! Parser for the text rendering of [`LaurentSeries`].
//!
//! Accepts sums of products of rational numbers, context parameters, `ε`
//! (or `eps`), parentheses, `/`, integer powers `^k`, and truncation
//! markers `O(ε^k)`. Division is only possible by invertible series.

use num_bigint::BigInt;

use super::poly::{Context, ParamPoly, Rational};
use super::series::LaurentSeries;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
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

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|x| x.1).collect();
                out.push((pos, Tok::Num(s.parse().expect("digits"))));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|x| x.1).collect();
                out.push((pos, Tok::Ident(s)));
            }
            _ => {
                let t = match c {
                    '+' => Tok::Plus,
                    '-' | '−' => Tok::Minus,
                    '*' | '·' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => {
                        return Err(Error::Parse {
                            pos,
                            msg: format!("unexpected character `{other}`"),
                        })
                    }
                };
                out.push((pos, t));
                i += 1;
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a Context,
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.peek() == Some(&t) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected {t:?}"))
        }
    }

    fn expr(&mut self) -> Result<LaurentSeries> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = acc.try_add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = acc.try_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentSeries> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = acc.try_mul(&self.unary()?)?;
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    let pos = self.pos();
                    let d = self.unary()?;
                    let inv = d.invert().map_err(|e| Error::Parse {
                        pos,
                        msg: e.to_string(),
                    })?;
                    acc = acc.try_mul(&inv)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentSeries> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentSeries> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let k = self.signed_int()?;
        if k >= 0 {
            Ok(base.pow(k as u32))
        } else {
            let pos = self.pos();
            let inv = base.invert().map_err(|e| Error::Parse {
                pos,
                msg: e.to_string(),
            })?;
            Ok(inv.pow((-k) as u32))
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                let v: i64 = n.try_into().map_err(|_| Error::Parse {
                    pos: self.pos(),
                    msg: "exponent too large".into(),
                })?;
                Ok(if neg { -v } else { v })
            }
            _ => self.err("expected integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<LaurentSeries> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(LaurentSeries::constant(self.ctx, Rational::from_integer(n)))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Ident(name)) if name == "O" => {
                self.at += 1;
                self.expect(Tok::LParen)?;
                match self.peek() {
                    Some(Tok::Ident(e)) if is_eps(e) => self.at += 1,
                    _ => return self.err("expected ε inside O(…)"),
                }
                let k = if self.peek() == Some(&Tok::Caret) {
                    self.at += 1;
                    self.signed_int()?
                } else {
                    1
                };
                self.expect(Tok::RParen)?;
                Ok(LaurentSeries::zero(self.ctx, Some(k as i32 - 1)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if is_eps(&name) {
                    return Ok(LaurentSeries::eps(self.ctx));
                }
                match self.ctx.param(&name) {
                    Ok(p) => Ok(LaurentSeries::poly(self.ctx, ParamPoly::var(self.ctx, p))),
                    Err(_) => {
                        self.at -= 1;
                        self.err(format!("unknown parameter `{name}`"))
                    }
                }
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn is_eps(s: &str) -> bool {
    s == "ε" || s == "eps"
}

pub(crate) fn parse_series(ctx: &Context, text: &str) -> Result<LaurentSeries> {
    let toks = lex(text)?;
    let mut p = Parser {
        ctx,
        toks,
        at: 0,
        end: text.len(),
    };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}
