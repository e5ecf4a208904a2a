//! Parser for the textual polynomial form, e.g. `3*t^(1/2) - 2 + 7*t^(-1)`.
//!
//! The textual form covers polynomials in t with rational coefficients and
//! rational exponents; exponents other than non-negative integers are
//! parenthesized.  Parsing is lenient about whitespace and accepts bare
//! negative integer exponents (`t^-1`); printing always uses the
//! parenthesized form.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use super::elem::FieldElem;
use super::poly::PuiseuxPoly;
use super::{PuiseuxError, Rat};

/// Parses the textual polynomial form into a field element.
pub fn parse_textual(s: &str) -> Result<FieldElem, PuiseuxError> {
    let mut cur = Cursor {
        bytes: s.as_bytes(),
        pos: 0,
    };
    cur.skip_ws();
    if cur.at_end() {
        return Err(cur.error("empty input"));
    }
    let mut terms: Vec<(Rat, Rat)> = Vec::new();
    let mut negate = match cur.peek() {
        Some(b'-') => {
            cur.bump();
            true
        }
        Some(b'+') => {
            cur.bump();
            false
        }
        _ => false,
    };
    loop {
        cur.skip_ws();
        let (coeff, exp) = parse_term(&mut cur)?;
        terms.push((exp, if negate { -coeff } else { coeff }));
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.bump();
                negate = false;
            }
            Some(b'-') => {
                cur.bump();
                negate = true;
            }
            Some(c) => {
                return Err(cur.error(&format!("expected '+' or '-', found '{}'", c as char)))
            }
        }
    }
    Ok(FieldElem::from_poly(PuiseuxPoly::from_terms(terms)))
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<(Rat, Rat), PuiseuxError> {
    match cur.peek() {
        Some(b't') => {
            let exp = parse_tpart(cur)?;
            Ok((Rat::one(), exp))
        }
        Some(c) if c.is_ascii_digit() => {
            let coeff = parse_rational(cur, false)?;
            cur.skip_ws();
            if cur.peek() == Some(b'*') {
                cur.bump();
                cur.skip_ws();
                if cur.peek() != Some(b't') {
                    return Err(cur.error("expected 't' after '*'"));
                }
                let exp = parse_tpart(cur)?;
                Ok((coeff, exp))
            } else {
                Ok((coeff, Rat::from_integer(BigInt::from(0))))
            }
        }
        Some(c) => Err(cur.error(&format!("expected term, found '{}'", c as char))),
        None => Err(cur.error("expected term, found end of input")),
    }
}

fn parse_tpart(cur: &mut Cursor<'_>) -> Result<Rat, PuiseuxError> {
    cur.bump(); // consume 't'
    cur.skip_ws();
    if cur.peek() != Some(b'^') {
        return Ok(Rat::one());
    }
    cur.bump();
    cur.skip_ws();
    if cur.peek() == Some(b'(') {
        cur.bump();
        cur.skip_ws();
        let exp = parse_rational(cur, true)?;
        cur.skip_ws();
        if cur.peek() != Some(b')') {
            return Err(cur.error("expected ')'"));
        }
        cur.bump();
        Ok(exp)
    } else {
        let mut negate = false;
        if cur.peek() == Some(b'-') {
            cur.bump();
            negate = true;
        }
        let digits = cur.take_digits()?;
        let n = big_from_digits(&digits);
        Ok(Rat::from_integer(if negate { -n } else { n }))
    }
}

fn parse_rational(cur: &mut Cursor<'_>, allow_sign: bool) -> Result<Rat, PuiseuxError> {
    let mut negate = false;
    if allow_sign && cur.peek() == Some(b'-') {
        cur.bump();
        negate = true;
    }
    let numer_digits = cur.take_digits()?;
    let numer = big_from_digits(&numer_digits);
    let mut value = if cur.peek() == Some(b'/') {
        cur.bump();
        let denom_digits = cur.take_digits()?;
        let denom = big_from_digits(&denom_digits);
        if denom == BigInt::from(0) {
            return Err(cur.error("zero denominator"));
        }
        Rat::new(numer, denom)
    } else {
        Rat::from_integer(numer)
    };
    if negate {
        value = -value;
    }
    Ok(value)
}

fn big_from_digits(digits: &str) -> BigInt {
    BigInt::parse_bytes(digits.as_bytes(), 10).expect("digits are ascii decimal")
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.bump();
        }
    }

    fn take_digits(&mut self) -> Result<String, PuiseuxError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        Ok(String::from(
            core::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits"),
        ))
    }

    fn error(&self, msg: &str) -> PuiseuxError {
        PuiseuxError::Parse(format!("{msg} (at byte {})", self.pos))
    }
}
