//! Text grammar for polynomials.
//!
//! Terms are joined by `+`/`-`; a term is an optional integer or `a/b`
//! coefficient followed by `*`-separated factors `var` or `var^exp`.
//! Variables come from exactly one family: `x,y,z`, `u,v` or `t,s`.
//! Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{QPoly, Rational, Vars};
use crate::error::{Error, Result};

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Lexer { chars, pos: 0, _src: src }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or_else(|| self._src.len(), |&(i, _)| i)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.column(), msg: msg.into() })
    }

    fn integer(&mut self) -> Result<BigInt> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        if s.is_empty() {
            return self.err("expected digits");
        }
        Ok(s.parse().expect("digits parse"))
    }
}

fn family_of(c: char) -> Option<(Vars, usize)> {
    match c {
        'x' => Some((Vars::Xyz, 0)),
        'y' => Some((Vars::Xyz, 1)),
        'z' => Some((Vars::Xyz, 2)),
        'u' => Some((Vars::Uv, 0)),
        'v' => Some((Vars::Uv, 1)),
        't' => Some((Vars::Ts, 0)),
        's' => Some((Vars::Ts, 1)),
        _ => None,
    }
}

/// Parses a polynomial, inferring the variable family. Constants default to
/// the projective family.
pub fn parse_poly(text: &str) -> Result<QPoly> {
    parse_with_default(text, Vars::Xyz)
}

/// Parses a polynomial that must use `vars` (constants are accepted).
pub fn parse_in(text: &str, vars: Vars) -> Result<QPoly> {
    let p = parse_with_default(text, vars)?;
    if p.vars() != vars {
        return Err(Error::InvalidInput(format!(
            "expected variables {:?}, got {:?}",
            vars.names(),
            p.vars().names()
        )));
    }
    Ok(p)
}

fn parse_with_default(text: &str, default: Vars) -> Result<QPoly> {
    let mut lx = Lexer::new(text);
    let mut family: Option<Vars> = None;
    let mut terms: Vec<([u32; 3], Rational)> = Vec::new();
    if lx.peek().is_none() {
        return lx.err("empty input");
    }
    let mut first = true;
    while lx.peek().is_some() {
        let mut negative = false;
        match lx.peek() {
            Some('+') => {
                lx.bump();
            }
            Some('-') => {
                lx.bump();
                negative = true;
            }
            _ if !first => return lx.err("expected '+' or '-'"),
            _ => {}
        }
        first = false;
        let mut coeff = Rational::from_integer(BigInt::from(1));
        let mut mono = [0u32; 3];
        let mut expect_factor = true;
        if lx.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = lx.integer()?;
            let mut c = Rational::from_integer(num);
            if lx.peek() == Some('/') {
                lx.bump();
                let den = lx.integer()?;
                if den.is_zero() {
                    return lx.err("zero denominator");
                }
                c = Rational::new(c.to_integer(), den);
            }
            coeff = c;
            expect_factor = false;
            if lx.peek() == Some('*') {
                lx.bump();
                expect_factor = true;
            }
        }
        if expect_factor {
            loop {
                let Some(c) = lx.peek() else {
                    return lx.err("expected a variable");
                };
                let Some((fam, idx)) = family_of(c) else {
                    return lx.err(format!("unexpected character '{c}'"));
                };
                match family {
                    None => family = Some(fam),
                    Some(f) if f != fam => return lx.err("mixed variable families"),
                    _ => {}
                }
                lx.bump();
                let mut e = 1u32;
                if lx.peek() == Some('^') {
                    lx.bump();
                    let n = lx.integer()?;
                    e = u32::try_from(n).or_else(|_| lx.err("exponent too large"))?;
                }
                mono[idx] += e;
                if lx.peek() == Some('*') {
                    lx.bump();
                } else {
                    break;
                }
            }
        }
        if negative {
            coeff = -coeff;
        }
        terms.push((mono, coeff));
    }
    let vars = family.unwrap_or(default);
    Ok(QPoly::from_terms(vars, terms))
}
