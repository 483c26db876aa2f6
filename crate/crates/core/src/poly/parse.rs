//! Lexer shared by the polynomial and formula parsers, and the infix
//! polynomial grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := number | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants. Rational coefficients are
//! cleared by multiplying with a positive common denominator, which keeps the
//! sign of the polynomial at every point.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{MultiPoly, PolyError, VarOrder};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
    Not,
    End,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: usize,
}

fn syntax(pos: usize, msg: impl Into<String>) -> PolyError {
    PolyError::Syntax { pos, msg: msg.into() }
}

pub(crate) fn lex(s: &str) -> Result<Vec<Token>, PolyError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let two = |t: &str| s[i..].starts_with(t);
        let tok = if c.is_whitespace() {
            i += 1;
            continue;
        } else if c.is_ascii_digit() || (c == '.' && i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit()) {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let int_part = &s[start..i];
            let mut frac_part = "";
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                let fs = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                frac_part = &s[fs..i];
            }
            let digits = format!("{int_part}{frac_part}");
            let num: BigInt = digits.parse().map_err(|_| syntax(start, "bad number"))?;
            let den = num_traits::pow(BigInt::from(10), frac_part.len());
            Tok::Num(BigRational::new(num, den))
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            Tok::Ident(s[start..i].to_string())
        } else if two("/\\") {
            i += 2;
            Tok::And
        } else if two("\\/") {
            i += 2;
            Tok::Or
        } else if two("!=") {
            i += 2;
            Tok::Ne
        } else if two("<=") {
            i += 2;
            Tok::Le
        } else if two(">=") {
            i += 2;
            Tok::Ge
        } else if two("==") {
            i += 2;
            Tok::Eq
        } else {
            i += c.len_utf8();
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '=' => Tok::Eq,
                '<' => Tok::Lt,
                '>' => Tok::Gt,
                '~' => Tok::Not,
                _ => return Err(syntax(start, format!("unexpected character `{c}`"))),
            }
        };
        out.push(Token { tok, pos: start });
    }
    out.push(Token {
        tok: Tok::End,
        pos: s.len(),
    });
    Ok(out)
}

/// Polynomial with rational coefficients represented as `num / den`, `den > 0`.
#[derive(Clone, Debug)]
pub(crate) struct RatPoly {
    pub num: MultiPoly,
    pub den: BigInt,
}

impl RatPoly {
    fn constant(order: &Arc<VarOrder>, r: &BigRational) -> Self {
        RatPoly {
            num: MultiPoly::constant(order, r.numer().clone()),
            den: r.denom().clone(),
        }
    }

    pub fn add(&self, o: &RatPoly, negate: bool) -> RatPoly {
        let rhs = o.num.scale(&self.den);
        let lhs = self.num.scale(&o.den);
        RatPoly {
            num: if negate { &lhs - &rhs } else { &lhs + &rhs },
            den: &self.den * &o.den,
        }
    }

    fn mul(&self, o: &RatPoly) -> RatPoly {
        RatPoly {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
    }

    /// Smallest integer multiple: `num / gcd(content(num), den)`.
    pub fn cleared(&self) -> MultiPoly {
        use num_integer::Integer;
        let g = self.num.integer_content().gcd(&self.den);
        if g.is_zero() || g.is_one() {
            self.num.clone()
        } else {
            self.num.div_integer(&g)
        }
    }

    fn as_constant(&self) -> Option<BigRational> {
        self.num.constant_value().map(|c| BigRational::new(c, self.den.clone()))
    }
}

pub(crate) struct PolyParser<'a> {
    pub toks: &'a [Token],
    pub pos: usize,
    pub order: &'a Arc<VarOrder>,
}

impl<'a> PolyParser<'a> {
    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn here(&self) -> usize {
        self.toks[self.pos].pos
    }

    pub fn bump(&mut self) -> &Tok {
        let t = &self.toks[self.pos].tok;
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn expr(&mut self) -> Result<RatPoly, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?, false);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.add(&self.term()?, true);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatPoly, PolyError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Slash => {
                    let at = self.here();
                    self.bump();
                    let d = self.unary()?;
                    let c = match d.as_constant() {
                        Some(c) if !c.is_zero() => c,
                        _ => return Err(syntax(at, "division by a non-constant or zero")),
                    };
                    let inv = c.recip();
                    acc = acc.mul(&RatPoly::constant(self.order, &inv));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatPoly, PolyError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                let p = self.unary()?;
                Ok(RatPoly {
                    num: -&p.num,
                    den: p.den,
                })
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatPoly, PolyError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let at = self.here();
        self.bump();
        let k = match self.bump().clone() {
            Tok::Num(r) if r.is_integer() && !r.is_negative() => r
                .to_integer()
                .to_u32()
                .ok_or_else(|| syntax(at, "exponent too large"))?,
            _ => return Err(syntax(at, "exponent must be a nonnegative integer")),
        };
        Ok(RatPoly {
            num: base.num.pow(k),
            den: num_traits::pow(base.den, k as usize),
        })
    }

    fn atom(&mut self) -> Result<RatPoly, PolyError> {
        let at = self.here();
        match self.bump().clone() {
            Tok::Num(r) => Ok(RatPoly::constant(self.order, &r)),
            Tok::Ident(name) => match self.order.index_of(&name) {
                Some(v) => Ok(RatPoly {
                    num: MultiPoly::var(self.order, v),
                    den: BigInt::one(),
                }),
                None => Err(PolyError::UndeclaredVariable(name)),
            },
            Tok::LParen => {
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(syntax(self.here(), "expected `)`"));
                }
                self.bump();
                Ok(e)
            }
            _ => Err(syntax(at, "expected a number, variable or `(`")),
        }
    }
}

/// Parses an infix polynomial over `order`, clearing rational coefficients.
pub fn parse_poly(s: &str, order: &Arc<VarOrder>) -> Result<MultiPoly, PolyError> {
    let toks = lex(s)?;
    let mut p = PolyParser {
        toks: &toks,
        pos: 0,
        order,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.here(), "unexpected trailing input"));
    }
    Ok(e.cleared())
}
