//! Text grammar for forms.
//!
//! ```text
//! form   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := INT | 'x'INT ['^' INT] | 'r2' ['^' INT] | '(' form ')' ['^' INT]
//! ```
//!
//! Whitespace is insignificant, variables are 1-indexed, and `r2` expands to
//! `x1^2 + ... + xn^2` for the ambient dimension. Division is only defined by
//! scalar (degree-zero) values. Every nonzero result must be homogeneous:
//! adding monomials of unequal total degree is a `MixedDegree` error.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::poly::HomoForm;
use crate::rational::{rat, Rat};

const PARSE_TERM_BUDGET: usize = 1_000_000;
const MAX_EXPONENT: u32 = 256;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Var(usize),
    R2,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Token>, Error> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '-' => {
                chars.next();
                tokens.push(Token::Minus);
            }
            '*' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '/' => {
                chars.next();
                tokens.push(Token::Slash);
            }
            '^' => {
                chars.next();
                tokens.push(Token::Caret);
            }
            '(' => {
                chars.next();
                tokens.push(Token::LParen);
            }
            ')' => {
                chars.next();
                tokens.push(Token::RParen);
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let v: BigInt = digits
                    .parse()
                    .map_err(|_| Error::Syntax(format!("bad integer '{digits}'")))?;
                tokens.push(Token::Int(v));
            }
            'x' => {
                chars.next();
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if digits.is_empty() {
                    return Err(Error::Syntax(
                        "'x' must be followed by a variable index".into(),
                    ));
                }
                let idx: usize = digits
                    .parse()
                    .map_err(|_| Error::Syntax(format!("bad variable index '{digits}'")))?;
                tokens.push(Token::Var(idx));
            }
            'r' => {
                chars.next();
                match chars.next() {
                    Some('2') => tokens.push(Token::R2),
                    other => {
                        return Err(Error::Syntax(format!(
                            "expected 'r2', found 'r{}'",
                            other.map(String::from).unwrap_or_default()
                        )))
                    }
                }
            }
            other => return Err(Error::Syntax(format!("unexpected character '{other}'"))),
        }
    }
    Ok(tokens)
}

/// Parsed value: either an exact scalar or a form. Scalars promote to
/// degree-zero forms at the top level.
#[derive(Debug, Clone)]
enum Value {
    Scalar(Rat),
    Form(HomoForm),
}

impl Value {
    fn into_form(self, n: usize) -> HomoForm {
        match self {
            Value::Scalar(c) => HomoForm::constant(n, c),
            Value::Form(f) => f,
        }
    }

    fn degree(&self) -> Option<u32> {
        match self {
            Value::Scalar(c) => {
                if c.is_zero() {
                    None // exact zero combines with any degree
                } else {
                    Some(0)
                }
            }
            Value::Form(f) => {
                if f.is_zero() {
                    None
                } else {
                    Some(f.degree())
                }
            }
        }
    }

    fn add(self, other: Value, n: usize) -> Result<Value, Error> {
        match (self.degree(), other.degree()) {
            (None, _) => Ok(other),
            (_, None) => Ok(self),
            (Some(a), Some(b)) if a != b => Err(Error::MixedDegree(a, b)),
            (Some(0), Some(0)) => match (self, other) {
                (Value::Scalar(a), Value::Scalar(b)) => Ok(Value::Scalar(a + b)),
                (a, b) => Ok(Value::Form(a.into_form(n).add(&b.into_form(n)))),
            },
            _ => Ok(Value::Form(self.into_form(n).add(&other.into_form(n)))),
        }
    }

    fn neg(self) -> Value {
        match self {
            Value::Scalar(c) => Value::Scalar(-c),
            Value::Form(f) => Value::Form(f.neg()),
        }
    }

    fn mul(self, other: Value) -> Result<Value, Error> {
        match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => Ok(Value::Scalar(a * b)),
            (Value::Scalar(a), Value::Form(f)) | (Value::Form(f), Value::Scalar(a)) => {
                Ok(Value::Form(f.scale(&a)))
            }
            (Value::Form(f), Value::Form(g)) => {
                Ok(Value::Form(f.multiply_with_budget(&g, PARSE_TERM_BUDGET)?))
            }
        }
    }

    fn div(self, other: Value) -> Result<Value, Error> {
        let divisor = match other {
            Value::Scalar(c) => c,
            Value::Form(f) => {
                if f.degree() == 0 && f.num_terms() <= 1 {
                    f.terms().values().next().cloned().unwrap_or_else(Rat::zero)
                } else {
                    return Err(Error::NonScalarDivisor);
                }
            }
        };
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Value::Scalar(a) => Ok(Value::Scalar(a / divisor)),
            Value::Form(f) => Ok(Value::Form(f.scale(&(rat(1) / divisor)))),
        }
    }

    fn pow(self, e: u32) -> Result<Value, Error> {
        match self {
            Value::Scalar(c) => Ok(Value::Scalar(crate::rational::pow_rat(&c, e))),
            Value::Form(f) => Ok(Value::Form(f.pow_with_budget(e, PARSE_TERM_BUDGET)?)),
        }
    }
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Value, Error> {
        let mut acc = if matches!(self.peek(), Some(Token::Minus)) {
            self.next();
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.add(t, self.n)?;
                }
                Some(Token::Minus) => {
                    self.next();
                    let t = self.term()?.neg();
                    acc = acc.add(t, self.n)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.next();
                    let f = self.factor()?;
                    acc = acc.mul(f)?;
                }
                Some(Token::Slash) => {
                    self.next();
                    let f = self.factor()?;
                    acc = acc.div(f)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn exponent_suffix(&mut self) -> Result<Option<u32>, Error> {
        if matches!(self.peek(), Some(Token::Caret)) {
            self.next();
            match self.next() {
                Some(Token::Int(v)) => {
                    let e: u32 = v
                        .try_into()
                        .map_err(|_| Error::Syntax("exponent out of range".into()))?;
                    if e > MAX_EXPONENT {
                        return Err(Error::Syntax(format!(
                            "exponent {e} exceeds the supported maximum {MAX_EXPONENT}"
                        )));
                    }
                    Ok(Some(e))
                }
                _ => Err(Error::Syntax("'^' must be followed by an integer".into())),
            }
        } else {
            Ok(None)
        }
    }

    fn factor(&mut self) -> Result<Value, Error> {
        let tok = self
            .next()
            .ok_or_else(|| Error::Syntax("unexpected end of input".into()))?
            .clone();
        let base = match tok {
            Token::Int(v) => Value::Scalar(Rat::from_integer(v)),
            Token::Var(idx) => {
                if idx == 0 || idx > self.n {
                    return Err(Error::WrongArity {
                        index: idx,
                        n: self.n,
                    });
                }
                Value::Form(HomoForm::variable(self.n, idx - 1))
            }
            Token::R2 => Value::Form(HomoForm::r2(self.n)),
            Token::LParen => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => inner,
                    _ => return Err(Error::Syntax("missing closing parenthesis".into())),
                }
            }
            other => return Err(Error::Syntax(format!("unexpected token {other:?}"))),
        };
        match self.exponent_suffix()? {
            Some(e) => base.pow(e),
            None => Ok(base),
        }
    }
}

/// Parse a form in `n` variables from its text representation.
pub fn parse_form(text: &str, n: usize) -> Result<HomoForm, Error> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Syntax("empty input".into()));
    }
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        n,
    };
    let value = parser.expr()?;
    if parser.pos != tokens.len() {
        return Err(Error::Syntax(format!(
            "trailing input after position {}",
            parser.pos
        )));
    }
    Ok(value.into_form(n))
}

/// Parse an exact rational like `-3/5` or `2`.
pub fn parse_rational(text: &str) -> Result<Rat, Error> {
    let text = text.trim();
    let (negative, rest) = match text.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, text),
    };
    let mut parts = rest.splitn(2, '/');
    let numer: BigInt = parts
        .next()
        .filter(|s| !s.is_empty() && s.chars().all(|c| c.is_ascii_digit()))
        .ok_or_else(|| Error::Syntax(format!("bad rational '{text}'")))?
        .parse()
        .map_err(|_| Error::Syntax(format!("bad rational '{text}'")))?;
    let denom: BigInt = match parts.next() {
        Some(s) if !s.is_empty() && s.chars().all(|c| c.is_ascii_digit()) => s
            .parse()
            .map_err(|_| Error::Syntax(format!("bad rational '{text}'")))?,
        Some(_) => return Err(Error::Syntax(format!("bad rational '{text}'"))),
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let v = Rat::new(numer, denom);
    Ok(if negative { -v } else { v })
}

/// Parse a comma-separated vector of exact rationals.
pub fn parse_rational_vector(text: &str) -> Result<Vec<Rat>, Error> {
    text.split(',').map(parse_rational).collect()
}
