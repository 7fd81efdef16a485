use num_bigint::BigInt;
use num_traits::Zero;

use super::IntPolynomial;
use crate::{Error, Result};

/// Parses a polynomial from text.
///
/// Two forms are accepted:
///
/// * a comma-separated list of integer coefficients in ascending order of
///   exponent, e.g. `1,-1,0,1` for `x^3 - x + 1`;
/// * a symbolic expression in one variable (`x` or `t`) with integer
///   coefficients, `^` for powers and optional `*` between coefficient and
///   variable, e.g. `x^3 - x + 1` or `-2*t^4 + 3t`.
///
/// Text without a variable letter is read as a coefficient list, so a bare
/// integer is a constant polynomial in either reading.
pub fn parse_poly(text: &str) -> Result<IntPolynomial> {
    if text.trim().is_empty() {
        return Err(Error::Parse { position: 0, message: "empty input".into() });
    }
    if text.chars().any(|c| c.is_ascii_alphabetic()) {
        Symbolic::new(text).parse()
    } else {
        parse_csv(text)
    }
}

fn parse_csv(text: &str) -> Result<IntPolynomial> {
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for field in text.split(',') {
        let start = offset + (field.len() - field.trim_start().len());
        let tok = field.trim();
        offset += field.len() + 1;
        if tok.is_empty() {
            return Err(Error::Parse { position: start, message: "empty coefficient".into() });
        }
        coeffs.push(parse_integer(tok, start)?);
    }
    Ok(IntPolynomial::new(coeffs))
}

fn parse_integer(tok: &str, position: usize) -> Result<BigInt> {
    if let Ok(v) = tok.parse::<BigInt>() {
        return Ok(v);
    }
    if tok.contains(['.', '/', 'e', 'E']) && tok.parse::<f64>().is_ok() || looks_fractional(tok) {
        return Err(Error::Domain(format!("coefficient `{tok}` at position {position} is not an integer")));
    }
    Err(Error::Parse { position, message: format!("invalid integer `{tok}`") })
}

fn looks_fractional(tok: &str) -> bool {
    let mut parts = tok.splitn(2, '/');
    let (Some(a), Some(b)) = (parts.next(), parts.next()) else {
        return false;
    };
    a.trim().parse::<i64>().is_ok() && b.trim().parse::<i64>().is_ok()
}

struct Symbolic<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
    var: Option<char>,
}

impl<'a> Symbolic<'a> {
    fn new(text: &'a str) -> Self {
        Symbolic { chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(), pos: 0, text, var: None }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.text.len(), |&(i, _)| i)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.offset(), message: message.into() })
    }

    fn digits(&mut self) -> Option<(usize, String)> {
        let start = self.offset();
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        (!s.is_empty()).then_some((start, s))
    }

    fn parse(mut self) -> Result<IntPolynomial> {
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut first = true;
        while self.pos < self.chars.len() || first {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                Some(c) => return self.err(format!("expected `+` or `-`, found `{c}`")),
                None => break,
            };
            first = false;
            let (exp, coeff) = self.term()?;
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, BigInt::zero());
            }
            coeffs[exp] += coeff * sign;
        }
        Ok(IntPolynomial::new(coeffs))
    }

    /// One signless term: `c`, `c*x^k`, `c x^k`, `x^k`.
    fn term(&mut self) -> Result<(usize, BigInt)> {
        let coeff = match self.digits() {
            Some((start, d)) => {
                if matches!(self.peek(), Some('.') | Some('/')) {
                    return Err(Error::Domain(format!("coefficient at position {start} is not an integer")));
                }
                Some(d.parse::<BigInt>().expect("digits"))
            }
            None => None,
        };
        if coeff.is_some() && self.peek() == Some('*') {
            self.pos += 1;
            if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
                return self.err("expected variable after `*`");
            }
        }
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {
                if c != 'x' && c != 't' {
                    return self.err(format!("unknown variable `{c}`"));
                }
                match self.var {
                    Some(v) if v != c => return self.err("mixed variables"),
                    _ => self.var = Some(c),
                }
                self.pos += 1;
                let exp = if self.peek() == Some('^') {
                    self.pos += 1;
                    match self.digits() {
                        Some((start, d)) => d
                            .parse::<usize>()
                            .map_err(|_| Error::Parse { position: start, message: "exponent too large".into() })?,
                        None => return self.err("expected exponent after `^`"),
                    }
                } else {
                    1
                };
                Ok((exp, coeff.unwrap_or_else(|| BigInt::from(1))))
            }
            _ => match coeff {
                Some(c) => Ok((0, c)),
                None => match self.peek() {
                    Some(c) => self.err(format!("unexpected `{c}`")),
                    None => self.err("unexpected end of input"),
                },
            },
        }
    }
}
