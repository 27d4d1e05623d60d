use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{LaurentPoly, Rational, RingContext};
use crate::error::{Error, Result};

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

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => { out.push(Tok::Plus); i += 1; }
            '-' => { out.push(Tok::Minus); i += 1; }
            '*' => { out.push(Tok::Star); i += 1; }
            '/' => { out.push(Tok::Slash); i += 1; }
            '^' => { out.push(Tok::Caret); i += 1; }
            '(' => { out.push(Tok::LParen); i += 1; }
            ')' => { out.push(Tok::RParen); i += 1; }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = cs[start..i].iter().collect();
                out.push(Tok::Num(digits.parse().map_err(|_| Error::Parse(format!("bad number {digits}")))?));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(cs[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ctx: &'a RingContext,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(Error::Parse(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn sum(&mut self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero(self.ctx.num_vars());
        let mut negate = match self.peek() {
            Some(Tok::Plus) => { self.pos += 1; false }
            Some(Tok::Minus) => { self.pos += 1; true }
            _ => false,
        };
        loop {
            let term = self.term()?;
            acc = if negate { &acc - &term } else { &acc + &term };
            negate = match self.next() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                None => break,
                Some(t) => return Err(Error::Parse(format!("expected + or -, found {t:?}"))),
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let n = self.ctx.num_vars();
        let mut coef = Rational::one();
        let mut exp = vec![0i32; n];
        loop {
            match self.next() {
                Some(Tok::Num(a)) => {
                    let mut v = BigRational::from_integer(a);
                    if self.peek() == Some(&Tok::Slash) {
                        self.pos += 1;
                        match self.next() {
                            Some(Tok::Num(b)) if !b.is_zero() => v /= BigRational::from_integer(b),
                            got => return Err(Error::Parse(format!("bad denominator {got:?}"))),
                        }
                    }
                    coef *= v;
                }
                Some(Tok::Ident(name)) => {
                    let i = self
                        .ctx
                        .index_of(&name)
                        .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                    let mut e = 1i32;
                    if self.peek() == Some(&Tok::Caret) {
                        self.pos += 1;
                        e = self.exponent()?;
                    }
                    exp[i] = exp[i]
                        .checked_add(e)
                        .ok_or_else(|| Error::Parse("exponent overflow".into()))?;
                }
                got => return Err(Error::Parse(format!("expected a factor, found {got:?}"))),
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(LaurentPoly::monomial(n, exp, coef))
    }

    fn exponent(&mut self) -> Result<i32> {
        let paren = self.peek() == Some(&Tok::LParen);
        if paren {
            self.pos += 1;
        }
        let neg = match self.peek() {
            Some(Tok::Minus) => { self.pos += 1; true }
            Some(Tok::Plus) => { self.pos += 1; false }
            _ => false,
        };
        let v = match self.next() {
            Some(Tok::Num(v)) => i32::try_from(v).map_err(|_| Error::Parse("exponent too large".into()))?,
            got => return Err(Error::Parse(format!("expected exponent, found {got:?}"))),
        };
        if paren {
            self.expect(Tok::RParen)?;
        }
        Ok(if neg { -v } else { v })
    }
}

pub(super) fn parse_poly(ctx: &RingContext, s: &str) -> Result<LaurentPoly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { toks, pos: 0, ctx };
    let out = p.sum()?;
    if p.pos < p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}
