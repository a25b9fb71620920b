//! Operand grammar for the calculator:
//!
//! ```text
//! element := term (('+' | '-') term)*
//! term    := [rational ('*' | '·')] ('L' coords | 'c')
//! coords  := int (',' int)*        optionally wrapped in [ ]
//! ```

use hvir_arith::Scalar;
use hvir_core::{LatticeVector, LieElement};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("{msg} at position {pos} in `{text}`")]
pub struct OperandError {
    /// 1-based character column.
    pub pos: usize,
    pub msg: String,
    pub text: String,
}

struct Cursor<'a> {
    chars: Vec<char>,
    at: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            chars: text.chars().map(|c| if c == '−' { '-' } else { c }).collect(),
            at: 0,
            text,
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.at += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, OperandError> {
        Err(OperandError {
            pos: self.at + 1,
            msg: msg.into(),
            text: self.text.to_string(),
        })
    }

    fn digits(&mut self) -> Option<i64> {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        let s: String = self.chars[start..self.at].iter().collect();
        s.parse().ok()
    }

    fn int(&mut self) -> Result<i64, OperandError> {
        self.skip_ws();
        let neg = self.eat('-');
        self.skip_ws();
        match self.digits() {
            Some(n) => Ok(if neg { -n } else { n }),
            None => self.fail("expected an integer"),
        }
    }

    fn coords(&mut self) -> Result<LatticeVector, OperandError> {
        let bracketed = self.eat('[');
        let mut v = vec![self.int()?];
        while self.eat(',') {
            v.push(self.int()?);
        }
        if bracketed && !self.eat(']') {
            return self.fail("expected `]`");
        }
        Ok(LatticeVector::new(v))
    }

    fn done(&mut self) -> bool {
        self.skip_ws();
        self.at == self.chars.len()
    }
}

/// Comma separated integer coordinates.
pub fn parse_coords(text: &str) -> Result<LatticeVector, OperandError> {
    let mut c = Cursor::new(text);
    let v = c.coords()?;
    if !c.done() {
        return c.fail("unexpected input");
    }
    Ok(v)
}

pub fn parse_element(text: &str) -> Result<LieElement, OperandError> {
    let mut c = Cursor::new(text);
    let mut x = LieElement::zero();
    let mut sign = if c.eat('-') { -1 } else { 1 };
    loop {
        c.skip_ws();
        let mut k = Scalar::integer(sign);
        if c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
            let n = c.digits().expect("digit present");
            let d = if c.eat('/') {
                c.skip_ws();
                match c.digits() {
                    Some(0) | None => return c.fail("expected a nonzero denominator"),
                    Some(d) => d,
                }
            } else {
                1
            };
            k = k.mul(&Scalar::rational(n, d));
            if !(c.eat('*') || c.eat('·')) {
                return c.fail("expected `*` after the coefficient");
            }
            c.skip_ws();
        }
        match c.peek() {
            Some('L') => {
                c.at += 1;
                let v = c.coords()?;
                x.add_term(v, k);
            }
            Some('c') => {
                c.at += 1;
                x = x.add(&LieElement::central(k));
            }
            _ => return c.fail("expected `L` or `c`"),
        }
        if c.done() {
            return Ok(x);
        }
        sign = if c.eat('+') {
            1
        } else if c.eat('-') {
            -1
        } else {
            return c.fail("expected `+` or `-`");
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_generator() {
        let x = parse_element("L 1,0").unwrap();
        assert_eq!(x, LieElement::generator(LatticeVector::new(vec![1, 0])));
        assert_eq!(parse_element("L[1,0]").unwrap(), x);
    }

    #[test]
    fn combinations() {
        let x = parse_element("2*L 1,-1 − 1/2·L 0,1 + 3*c").unwrap();
        assert_eq!(x.coefficient(&LatticeVector::new(vec![1, -1])), Scalar::integer(2));
        assert_eq!(x.coefficient(&LatticeVector::new(vec![0, 1])), Scalar::rational(-1, 2));
        assert_eq!(x.central_part(), &Scalar::integer(3));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_element("L x").unwrap_err().pos, 3);
        assert_eq!(parse_element("L 1,0 L 0,1").unwrap_err().pos, 7);
        assert_eq!(parse_element("2 L 1").unwrap_err().pos, 3);
        assert_eq!(parse_coords("1,,2").unwrap_err().pos, 3);
        assert_eq!(parse_coords("[1,2").unwrap_err().pos, 5);
    }
}
