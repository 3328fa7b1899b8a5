//! Parser for the canonical polynomial text format.
//!
//! form  := ['+'|'-'] term (('+'|'-') term)*
//! term  := coef | coef '*' varprod | varprod
//! var   := ('x'|'y') ['^' nat]
//! coef  := int | int '/' nat
//!
//! Whitespace is insignificant.  Terms must share one total degree; the
//! error message lists the offending degrees.

use curvesy_core::algebra::rat::Rat;
use curvesy_core::{BinForm, FElem, FieldNode};
use num_bigint::BigInt;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Int(BigInt),
    Var(char),
}

type Spanned = (Tok, usize, usize);

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer { chars: s.chars().peekable(), line: 1, col: 1 }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        loop {
            while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
                self.bump();
            }
            let (line, col) = (self.line, self.col);
            let Some(&c) = self.chars.peek() else { break };
            match c {
                '+' => {
                    self.bump();
                    out.push((Tok::Plus, line, col));
                }
                '-' => {
                    self.bump();
                    out.push((Tok::Minus, line, col));
                }
                '*' => {
                    self.bump();
                    out.push((Tok::Star, line, col));
                }
                '^' => {
                    self.bump();
                    out.push((Tok::Caret, line, col));
                }
                '/' => {
                    self.bump();
                    out.push((Tok::Slash, line, col));
                }
                'x' | 'y' => {
                    self.bump();
                    out.push((Tok::Var(c), line, col));
                }
                d if d.is_ascii_digit() => {
                    let mut s = String::new();
                    while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
                        s.push(self.bump().unwrap());
                    }
                    out.push((Tok::Int(s.parse().unwrap()), line, col));
                }
                other => {
                    return Err(ParseError {
                        line,
                        col,
                        msg: format!("unexpected character '{}'", other),
                    })
                }
            }
        }
        Ok(out)
    }
}

struct Term {
    coeff: Rat,
    xe: usize,
    ye: usize,
    line: usize,
    col: usize,
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|(_, l, c)| (*l, *c))
            .unwrap_or((1, 1))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError { line, col, msg: msg.into() }
    }

    fn nat(&mut self) -> Result<BigInt, ParseError> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(n),
            _ => Err(self.err("expected a number")),
        }
    }

    fn var_power(&mut self) -> Result<(char, usize), ParseError> {
        let v = match self.bump() {
            Some(Tok::Var(v)) => v,
            _ => return Err(self.err("expected a variable")),
        };
        let mut e = 1usize;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let n = self.nat()?;
            e = n
                .try_into()
                .map_err(|_| self.err("exponent too large"))?;
        }
        Ok((v, e))
    }

    fn term(&mut self, sign: i32) -> Result<Term, ParseError> {
        let (line, col) = self.here();
        let mut coeff = Rat::from_integer(1.into());
        let mut xe = 0usize;
        let mut ye = 0usize;
        if let Some(Tok::Int(_)) = self.peek() {
            let n = self.nat()?;
            let mut c = Rat::from_integer(n);
            if self.peek() == Some(&Tok::Slash) {
                self.bump();
                let d = self.nat()?;
                if d == BigInt::from(0) {
                    return Err(self.err("zero denominator"));
                }
                c /= Rat::from_integer(d);
            }
            coeff = c;
            if self.peek() == Some(&Tok::Star) {
                self.bump();
                let (v, e) = self.var_power()?;
                if v == 'x' {
                    xe += e;
                } else {
                    ye += e;
                }
            } else {
                // bare constant term
                return Ok(Term { coeff: coeff * Rat::from_integer(sign.into()), xe, ye, line, col });
            }
        } else {
            let (v, e) = self.var_power()?;
            if v == 'x' {
                xe += e;
            } else {
                ye += e;
            }
        }
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let (v, e) = self.var_power()?;
            if v == 'x' {
                xe += e;
            } else {
                ye += e;
            }
        }
        Ok(Term { coeff: coeff * Rat::from_integer(sign.into()), xe, ye, line, col })
    }
}

/// Parse the canonical serialization into a binary form.  Inhomogeneous
/// input is rejected with the list of offending degrees.
pub fn parse_form(text: &str) -> Result<BinForm, ParseError> {
    let toks = Lexer::new(text).tokens()?;
    if toks.is_empty() {
        return Err(ParseError { line: 1, col: 1, msg: "empty input".into() });
    }
    let mut p = Parser { toks, pos: 0 };
    let mut terms: Vec<Term> = Vec::new();
    let mut sign = 1i32;
    if p.peek() == Some(&Tok::Plus) {
        p.bump();
    } else if p.peek() == Some(&Tok::Minus) {
        p.bump();
        sign = -1;
    }
    terms.push(p.term(sign)?);
    while let Some(t) = p.peek() {
        let sign = match t {
            Tok::Plus => 1,
            Tok::Minus => -1,
            _ => return Err(p.err("expected '+' or '-' between terms")),
        };
        p.bump();
        terms.push(p.term(sign)?);
    }
    // homogeneity
    let nonzero: Vec<&Term> = terms.iter().filter(|t| !t.coeff.eq(&Rat::from_integer(0.into()))).collect();
    let degrees: Vec<usize> = {
        let mut d: Vec<usize> = nonzero.iter().map(|t| t.xe + t.ye).collect();
        d.sort_unstable();
        d.dedup();
        d
    };
    if degrees.len() > 1 {
        let first_bad = nonzero
            .iter()
            .find(|t| t.xe + t.ye != degrees[0])
            .unwrap();
        return Err(ParseError {
            line: first_bad.line,
            col: first_bad.col,
            msg: format!("inhomogeneous form (term degrees {:?})", degrees),
        });
    }
    let deg = degrees.first().copied().unwrap_or(0);
    let mut bf = BinForm::zero(FieldNode::Base, deg);
    for t in terms {
        bf.add_term(t.xe, FElem::Rat(t.coeff));
    }
    Ok(bf)
}
