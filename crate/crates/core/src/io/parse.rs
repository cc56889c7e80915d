//! Recursive-descent parser for the expression language.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' exp]
//! exp    := ['-'] INT | '(' ['-'] INT ')'
//! atom   := NUMBER ['/' INT] | IDENT | 'I' | '(' expr ')'
//! ```
//!
//! `x_j` and `y_j` expand to `(z_j + zb_j)/2` and `(z_j - zb_j)/(2I)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};

use crate::algebra::{GaussRational, LaurentPoly, MultiPoly, Var};

/// Which variables an expression may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseMode {
    /// Real defining polynomial: `z`, `zb`, `x`, `y`.
    Rho,
    /// Parametrized family: `z` and `zeta`, with negative `zeta` powers.
    Param,
    /// Any variable of the universe; used to read back printed output.
    Poly,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` is not allowed in this mode")]
    ForbiddenVariable(String),
    #[error("index of `{name}` exceeds the dimension n = {n}")]
    IndexOutOfRange { name: String, n: usize },
    #[error("negative exponent is only allowed on powers of zeta in param mode")]
    NegativeExponent,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("column {}: {kind}", .pos + 1)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ if c.is_ascii_digit() || c == '.' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let int_end = i;
                let mut frac = "";
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    let f0 = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    frac = &text[f0..i];
                }
                let int = &text[start..int_end];
                if int.is_empty() && frac.is_empty() {
                    return Err(ParseError { pos: start, kind: ParseErrorKind::Syntax("malformed number".into()) });
                }
                out.push((Tok::Num(decimal(int, frac)), start));
                continue;
            }
            _ if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                return Err(ParseError { pos: start, kind: ParseErrorKind::Syntax(format!("unexpected character `{c}`")) })
            }
        };
        out.push((tok, start));
        i += c.len_utf8();
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// Exact value of a decimal literal such as `12.25`.
fn decimal(int: &str, frac: &str) -> BigRational {
    let digits = format!("{int}{frac}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().unwrap() };
    let den = BigInt::from(10).pow(frac.len() as u32);
    BigRational::new(num, den)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    mode: ParseMode,
    n: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError { pos: self.pos(), kind: ParseErrorKind::Syntax(msg.into()) })
    }

    fn expect(&mut self, t: Tok, what: &str) -> PResult<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> PResult<LaurentPoly> {
        let mut acc = match self.peek() {
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            Tok::Minus => {
                self.bump();
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<LaurentPoly> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<LaurentPoly> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> PResult<LaurentPoly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let e = self.exponent()?;
        if e < 0 && self.mode != ParseMode::Param {
            return Err(ParseError { pos, kind: ParseErrorKind::NegativeExponent });
        }
        base.powi(e).ok_or(ParseError { pos, kind: ParseErrorKind::NegativeExponent })
    }

    fn exponent(&mut self) -> PResult<i64> {
        let paren = *self.peek() == Tok::LParen;
        if paren {
            self.bump();
        }
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        let v = match self.bump() {
            Tok::Num(r) if r.is_integer() => match i64::try_from(r.to_integer()) {
                Ok(v) if v <= 4096 => v,
                _ => return self.err("exponent too large"),
            },
            _ => {
                self.at = self.at.saturating_sub(1);
                return self.err("expected an integer exponent");
            }
        };
        if paren {
            self.expect(Tok::RParen, "`)`")?;
        }
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> PResult<LaurentPoly> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(r) => {
                let mut value = r;
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.bump() {
                        Tok::Num(d) if d.is_integer() && !d.is_zero() => value /= d,
                        _ => {
                            self.at = self.at.saturating_sub(1);
                            return self.err("expected a nonzero integer denominator");
                        }
                    }
                }
                Ok(MultiPoly::constant(GaussRational::real(value)).into())
            }
            Tok::Ident(name) => self.variable(&name, pos),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::End => self.err("unexpected end of input"),
            t => {
                self.at = self.at.saturating_sub(1);
                self.err(format!("unexpected token {}", describe(&t)))
            }
        }
    }

    fn variable(&self, name: &str, pos: usize) -> PResult<LaurentPoly> {
        let fail = |kind| ParseError { pos, kind };
        if name == "I" {
            return Ok(MultiPoly::constant(GaussRational::i()).into());
        }
        let split = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
        let (stem, digits) = name.split_at(split);
        let index = if digits.is_empty() {
            None
        } else {
            match digits.parse::<u8>() {
                Ok(k) if k >= 1 && digits.len() == 1 => Some(k),
                _ => return Err(fail(ParseErrorKind::UnknownVariable(name.into()))),
            }
        };
        let allowed = |ok: bool| -> PResult<()> {
            if ok {
                Ok(())
            } else {
                Err(fail(ParseErrorKind::ForbiddenVariable(name.into())))
            }
        };
        let in_range = |k: u8, limit: usize| -> PResult<()> {
            if (k as usize) <= limit {
                Ok(())
            } else {
                Err(fail(ParseErrorKind::IndexOutOfRange { name: name.into(), n: self.n }))
            }
        };
        let poly = |v: Var| -> LaurentPoly { MultiPoly::var(v).into() };
        let m = self.mode;
        match (stem, index) {
            ("t", None) => {
                allowed(m == ParseMode::Poly)?;
                Ok(poly(Var::T))
            }
            ("zeta", None) => {
                allowed(m != ParseMode::Rho)?;
                Ok(poly(Var::Zeta))
            }
            ("z", Some(k)) => {
                in_range(k, self.n)?;
                Ok(poly(Var::Z(k)))
            }
            ("zb", Some(k)) => {
                allowed(m != ParseMode::Param)?;
                in_range(k, self.n)?;
                Ok(poly(Var::Zb(k)))
            }
            ("wb", Some(k)) => {
                allowed(m == ParseMode::Poly)?;
                in_range(k, self.n)?;
                Ok(poly(Var::Wb(k)))
            }
            ("p", Some(k)) => {
                allowed(m == ParseMode::Poly)?;
                in_range(k, self.n.saturating_sub(1))?;
                Ok(poly(Var::P(k)))
            }
            ("x", Some(k)) | ("y", Some(k)) => {
                // both expand through zb_k, which param mode lacks
                allowed(m != ParseMode::Param)?;
                in_range(k, self.n)?;
                Ok(real_part(k, stem == "y").into())
            }
            _ => Err(fail(ParseErrorKind::UnknownVariable(name.into()))),
        }
    }
}

/// `x_k = (z_k + zb_k)/2`, `y_k = (z_k - zb_k)/(2I)`.
fn real_part(k: u8, imaginary: bool) -> MultiPoly {
    let z = MultiPoly::var(Var::Z(k));
    let zb = MultiPoly::var(Var::Zb(k));
    if imaginary {
        (&z - &zb).scale(&GaussRational::new(BigRational::zero(), BigRational::new((-1).into(), 2.into())))
    } else {
        (&z + &zb).scale(&GaussRational::from_ratio(1, 2))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(r) => format!("`{r}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses `text` into a Laurent polynomial; negative powers of `ζ` occur
/// only in [`ParseMode::Param`].
pub fn parse_laurent(text: &str, mode: ParseMode, n: usize) -> Result<LaurentPoly, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0, mode, n };
    let value = p.expr()?;
    if *p.peek() != Tok::End {
        let t = p.peek().clone();
        return p.err(format!("unexpected token {}", describe(&t)));
    }
    Ok(value)
}

/// Parses a polynomial expression (no negative exponents).
pub fn parse(text: &str, mode: ParseMode, n: usize) -> Result<MultiPoly, ParseError> {
    let l = parse_laurent(text, mode, n)?;
    match l.as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(ParseError { pos: 0, kind: ParseErrorKind::NegativeExponent }),
    }
}

/// Parses a constant such as `1/2` or `-0.25 + 3*I` exactly.
pub fn parse_constant(text: &str) -> Result<GaussRational, ParseError> {
    let p = parse(text, ParseMode::Poly, 0)?;
    p.constant_value().ok_or(ParseError { pos: 0, kind: ParseErrorKind::Syntax("expected a constant".into()) })
}

/// Parses `c1,...,cn` into exact coordinates.
pub fn parse_point(text: &str) -> Result<Vec<GaussRational>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let c = parse_constant(part).map_err(|e| ParseError { pos: e.pos + offset, kind: e.kind })?;
        out.push(c);
        offset += part.len() + 1;
    }
    Ok(out)
}
