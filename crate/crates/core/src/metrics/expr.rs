//! Parser for metric coefficient expressions.
//!
//! ```text
//! expr   := poly ( "/" poly )?
//! poly   := term ( ("+"|"-") term )*
//! term   := coeff ( "*"? "t" ( "^" uint )? )? | "t" ( "^" uint )?
//! coeff  := uint ( "." digits )? | uint "/" uint
//! ```
//!
//! Whitespace is ignored and decimals are exact (`0.01` is `1/100`). Two
//! extensions: a single leading sign on the first term (`-t`, `-1/2`), and
//! optional parentheses around either side of the top-level `/`. The
//! coefficient form `uint "/" uint` binds tighter than the top-level division,
//! so `1/2+t` is `1/2 + t`; write `1/(2+t)` for the quotient.
//!
//! [`Template`] extends `coeff` with identifiers (`alpha*t`), used by the
//! parameter search to describe families of metrics. Parameter names may not
//! start with `t`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::{Polynomial, Rational, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected {found} at position {pos}: expected {expected}")]
    Unexpected { pos: usize, found: String, expected: &'static str },
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("division by zero in coefficient at position {pos}")]
    ZeroCoefficientDenominator { pos: usize },
    #[error("exponent too large at position {pos}")]
    ExponentTooLarge { pos: usize },
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
}

const MAX_EXPONENT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Coeff {
    Number(Rational),
    Param(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Term {
    negative: bool,
    coeff: Coeff,
    degree: usize,
}

/// A parsed expression whose coefficients may be named parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    num: Vec<Term>,
    den: Option<Vec<Term>>,
}

impl Template {
    pub fn parse(src: &str) -> Result<Self, ParseError> {
        Parser::new(src, true).expr()
    }

    /// Parameter names in order of first appearance.
    pub fn parameters(&self) -> Vec<String> {
        let mut names: Vec<String> = Vec::new();
        let all = self.num.iter().chain(self.den.iter().flatten());
        for term in all {
            if let Coeff::Param(name) = &term.coeff {
                if !names.contains(name) {
                    names.push(name.clone());
                }
            }
        }
        names
    }

    pub fn instantiate(
        &self,
        values: &BTreeMap<String, Rational>,
    ) -> Result<RationalFunction, ParseError> {
        let num = build_poly(&self.num, values)?;
        let den = match &self.den {
            Some(terms) => build_poly(terms, values)?,
            None => Polynomial::one(),
        };
        RationalFunction::new(num, den).map_err(|_| ParseError::ZeroDenominator)
    }
}

fn build_poly(terms: &[Term], values: &BTreeMap<String, Rational>) -> Result<Polynomial, ParseError> {
    let mut p = Polynomial::zero();
    for term in terms {
        let c = match &term.coeff {
            Coeff::Number(q) => q.clone(),
            Coeff::Param(name) => values
                .get(name)
                .cloned()
                .ok_or_else(|| ParseError::UnknownParameter(name.clone()))?,
        };
        let c = if term.negative { -c } else { c };
        p = &p + &Polynomial::monomial(c, term.degree);
    }
    Ok(p)
}

/// Parses a coefficient expression in `t`.
pub fn parse_expr(src: &str) -> Result<RationalFunction, ParseError> {
    Parser::new(src, false).expr()?.instantiate(&BTreeMap::new())
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    allow_params: bool,
}

impl Parser {
    fn new(src: &str, allow_params: bool) -> Self {
        let chars = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Parser { chars, pos: 0, allow_params }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or_else(
            || self.chars.last().map_or(0, |&(i, c)| i + c.len_utf8()),
            |&(i, _)| i,
        )
    }

    fn error(&self, expected: &'static str) -> ParseError {
        let found = match self.peek() {
            Some(c) => alloc::format!("`{c}`"),
            None => "end of input".to_string(),
        };
        ParseError::Unexpected { pos: self.offset(), found, expected }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Template, ParseError> {
        let num = self.group()?;
        let den = if self.eat('/') { Some(self.group()?) } else { None };
        if self.peek().is_some() {
            return Err(self.error("`+`, `-`, `/` or end of input"));
        }
        Ok(Template { num, den })
    }

    fn group(&mut self) -> Result<Vec<Term>, ParseError> {
        if !self.eat('(') {
            return self.poly();
        }
        let terms = self.poly()?;
        if !self.eat(')') {
            return Err(self.error("`)`"));
        }
        Ok(terms)
    }

    fn poly(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut terms = Vec::new();
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            terms.push(self.term(negative)?);
            negative = match self.peek() {
                Some('+') => false,
                Some('-') => true,
                _ => return Ok(terms),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self, negative: bool) -> Result<Term, ParseError> {
        if self.peek() == Some('t') {
            let degree = self.power()?;
            return Ok(Term { negative, coeff: Coeff::Number(Rational::one()), degree });
        }
        let coeff = self.coeff()?;
        let degree = if self.peek() == Some('*') && self.peek_at(1) == Some('t') {
            self.pos += 1;
            self.power()?
        } else if self.peek() == Some('t') {
            self.power()?
        } else {
            0
        };
        Ok(Term { negative, coeff, degree })
    }

    /// `"t" ("^" uint)?`
    fn power(&mut self) -> Result<usize, ParseError> {
        if !self.eat('t') {
            return Err(self.error("`t`"));
        }
        if !self.eat('^') {
            return Ok(1);
        }
        let at = self.offset();
        let digits = self.digits().ok_or_else(|| self.error("exponent"))?;
        digits
            .parse::<usize>()
            .ok()
            .filter(|&d| d <= MAX_EXPONENT)
            .ok_or(ParseError::ExponentTooLarge { pos: at })
    }

    fn coeff(&mut self) -> Result<Coeff, ParseError> {
        if self.allow_params && self.peek().is_some_and(is_ident_start) {
            let mut name = String::new();
            while let Some(c) = self.peek().filter(|&c| is_ident_char(c)) {
                name.push(c);
                self.pos += 1;
            }
            return Ok(Coeff::Param(name));
        }
        let at = self.offset();
        let int = self.digits().ok_or_else(|| self.error("number or `t`"))?;
        let int = parse_uint(&int);
        if self.peek() == Some('.') {
            self.pos += 1;
            let frac = self.digits().ok_or_else(|| self.error("digits after `.`"))?;
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let value = Rational::new(int * &scale + parse_uint(&frac), scale);
            return Ok(Coeff::Number(value));
        }
        if self.peek() == Some('/') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
            let den = parse_uint(&self.digits().expect("digit checked"));
            if den.is_zero() {
                return Err(ParseError::ZeroCoefficientDenominator { pos: at });
            }
            return Ok(Coeff::Number(Rational::new(int, den)));
        }
        Ok(Coeff::Number(Rational::from_integer(int)))
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        (!s.is_empty()).then_some(s)
    }
}

fn is_ident_start(c: char) -> bool {
    (c.is_ascii_alphabetic() || c == '_') && c != 't'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn parse_uint(s: &str) -> BigInt {
    s.parse().expect("ascii digits")
}
