//! Text formats for complex scalars and vectors: "a+bi" with optional
//! parts ("1", "i", "-2.5e-3+0.25i", "1-i"), and comma-separated
//! 7-component vectors. Errors carry the byte position they occurred at.

use num_complex::Complex64;
use thiserror::Error;

use crate::euclid7::Vec7C;

#[derive(Clone, Debug, Error, PartialEq)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

pub(crate) struct Scanner<'a> {
    bytes: &'a [u8],
    pub pos: usize,
}

impl<'a> Scanner<'a> {
    pub fn new(input: &'a str) -> Self {
        Scanner {
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    pub fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    pub fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    pub fn bump(&mut self) {
        self.pos += 1;
    }

    pub fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.bump();
        }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    /// Unsigned decimal float: digits, optional fraction, optional exponent.
    pub fn scan_float(&mut self) -> Result<f64, ParseError> {
        let start = self.pos;
        let mut saw_digit = false;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            saw_digit = true;
            self.bump();
        }
        if self.eat(b'.') {
            while matches!(self.peek(), Some(b'0'..=b'9')) {
                saw_digit = true;
                self.bump();
            }
        }
        if !saw_digit {
            return Err(self.err("expected a number"));
        }
        if matches!(self.peek(), Some(b'e') | Some(b'E')) {
            let mark = self.pos;
            self.bump();
            if matches!(self.peek(), Some(b'+') | Some(b'-')) {
                self.bump();
            }
            if matches!(self.peek(), Some(b'0'..=b'9')) {
                while matches!(self.peek(), Some(b'0'..=b'9')) {
                    self.bump();
                }
            } else {
                // not an exponent after all (e.g. "2e" would be malformed);
                // leave the 'e' for the caller to reject
                self.pos = mark;
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
        text.parse::<f64>().map_err(|_| ParseError {
            pos: start,
            msg: format!("malformed number {text:?}"),
        })
    }

    pub fn scan_uint(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let mut value: u64 = 0;
        let mut saw_digit = false;
        while let Some(b @ b'0'..=b'9') = self.peek() {
            saw_digit = true;
            value = value * 10 + (b - b'0') as u64;
            if value > u32::MAX as u64 {
                return Err(ParseError {
                    pos: start,
                    msg: "integer too large".into(),
                });
            }
            self.bump();
        }
        if !saw_digit {
            return Err(self.err("expected an integer"));
        }
        Ok(value as u32)
    }

    pub fn is_imag_suffix(b: u8) -> bool {
        b == b'i' || b == b'j'
    }

    /// One signed summand of a complex literal: `[+-]? (float [ij]? | [ij])`.
    /// Returns the value and whether it was imaginary.
    pub fn scan_complex_part(&mut self) -> Result<(f64, bool), ParseError> {
        let mut sign = 1.0;
        if self.eat(b'-') {
            sign = -1.0;
        } else if self.eat(b'+') {
        }
        self.skip_ws();
        match self.peek() {
            Some(b) if Self::is_imag_suffix(b) => {
                self.bump();
                Ok((sign, true))
            }
            _ => {
                let x = self.scan_float()?;
                if matches!(self.peek(), Some(b) if Self::is_imag_suffix(b)) {
                    self.bump();
                    Ok((sign * x, true))
                } else {
                    Ok((sign * x, false))
                }
            }
        }
    }

    /// Full complex literal with one or two parts, e.g. "1", "i", "1+2i",
    /// "2i-1". Two parts of the same kind are rejected.
    pub fn scan_complex(&mut self) -> Result<Complex64, ParseError> {
        self.skip_ws();
        let first_pos = self.pos;
        let (x1, imag1) = self.scan_complex_part()?;
        let mut re = if imag1 { 0.0 } else { x1 };
        let mut im = if imag1 { x1 } else { 0.0 };
        self.skip_ws();
        if matches!(self.peek(), Some(b'+') | Some(b'-')) {
            let second_pos = self.pos;
            let (x2, imag2) = self.scan_complex_part()?;
            if imag2 == imag1 {
                return Err(ParseError {
                    pos: if imag1 { first_pos } else { second_pos },
                    msg: "complex literal needs one real and one imaginary part".into(),
                });
            }
            if imag2 {
                im = x2;
            } else {
                re = x2;
            }
        }
        Ok(Complex64::new(re, im))
    }
}

/// Parses a complex scalar such as "1", "-i", "1+2i", "2.5e-3-0.25i".
pub fn parse_complex(input: &str) -> Result<Complex64, ParseError> {
    let mut sc = Scanner::new(input);
    let z = sc.scan_complex()?;
    sc.skip_ws();
    if !sc.at_end() {
        return Err(sc.err("trailing characters after complex number"));
    }
    Ok(z)
}

/// Parses "z1,z2,...,z7" into a complex 7-vector. Positions in errors are
/// relative to the whole input string.
pub fn parse_vec7c(input: &str) -> Result<Vec7C, ParseError> {
    let mut coords = [Complex64::ZERO; 7];
    let mut n = 0;
    let mut offset = 0;
    for segment in input.split(',') {
        if n >= 7 {
            return Err(ParseError {
                pos: offset,
                msg: "expected exactly 7 components, found more".into(),
            });
        }
        let z = parse_complex(segment).map_err(|e| ParseError {
            pos: offset + e.pos,
            msg: e.msg,
        })?;
        coords[n] = z;
        n += 1;
        offset += segment.len() + 1;
    }
    if n != 7 {
        return Err(ParseError {
            pos: input.len(),
            msg: format!("expected exactly 7 components, found {n}"),
        });
    }
    Ok(Vec7C(coords))
}

/// Shortest text for a complex coefficient: "2", "-1.5j", "1+2j", "1-2j".
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}j", z.im)
    } else if z.im < 0.0 {
        format!("{}-{}j", z.re, -z.im)
    } else {
        format!("{}+{}j", z.re, z.im)
    }
}
