//! Text syntax for scalars.
//!
//! ```text
//! expr    := term (('+' | '-' | '−') term)*
//! term    := unary (('*' | '·' | '/') unary)*
//! unary   := ('-' | '−') unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | ident ('[' raw ']')? | '(' expr ')'
//! ```
//!
//! Multiplication is always explicit. The bracketed suffix of an identifier
//! is passed verbatim to the resolver, which decides what an index means.

use crate::error::ArithError;
use crate::scalar::Scalar;
use crate::symbol::SymbolTable;

/// Maps identifiers (with an optional raw index text) to scalars.
pub trait SymbolResolver {
    fn resolve(&self, name: &str, index: Option<&str>) -> Result<Scalar, String>;
}

impl SymbolResolver for SymbolTable {
    fn resolve(&self, name: &str, index: Option<&str>) -> Result<Scalar, String> {
        match index {
            None => self
                .lookup(name)
                .cloned()
                .map(Scalar::var)
                .ok_or_else(|| format!("unknown symbol `{name}`")),
            Some(raw) => {
                let index = parse_integer_index(raw)?;
                self.unknown(name, index)
                    .map(Scalar::var)
                    .map_err(|e| e.to_string())
            }
        }
    }
}

/// Parses `1,0;0,1` into `[[1,0],[0,1]]`.
pub fn parse_integer_index(raw: &str) -> Result<Vec<Vec<i64>>, String> {
    raw.split(';')
        .map(|part| {
            part.split(',')
                .map(|t| {
                    let t = t.trim().replace('−', "-");
                    t.parse::<i64>().map_err(|_| format!("bad index entry `{t}`"))
                })
                .collect()
        })
        .collect()
}

pub fn parse_scalar(text: &str, resolver: &dyn SymbolResolver) -> Result<Scalar, ArithError> {
    let mut p = Parser {
        chars: text.char_indices().collect(),
        pos: 0,
        len: text.len(),
        resolver,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric()
        || matches!(c, '_' | '\'' | '′' | '″' | '\u{0304}')
        || ('\u{2080}'..='\u{2089}').contains(&c)
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
    resolver: &'a dyn SymbolResolver,
}

impl Parser<'_> {
    fn byte_pos(&self) -> usize {
        self.chars.get(self.pos).map(|(b, _)| *b).unwrap_or(self.len)
    }

    fn error(&self, msg: impl Into<String>) -> ArithError {
        ArithError::Parse {
            pos: self.byte_pos(),
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, options: &[char]) -> Option<char> {
        self.skip_ws();
        let c = self.peek()?;
        if options.contains(&c) {
            self.pos += 1;
            Some(c)
        } else {
            None
        }
    }

    fn expr(&mut self) -> Result<Scalar, ArithError> {
        let mut acc = self.term()?;
        while let Some(op) = self.eat(&['+', '-', '−']) {
            let rhs = self.term()?;
            acc = if op == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, ArithError> {
        let mut acc = self.unary()?;
        while let Some(op) = self.eat(&['*', '·', '/']) {
            let at = self.byte_pos();
            let rhs = self.unary()?;
            acc = if op == '/' {
                acc.div(&rhs).map_err(|_| ArithError::Parse {
                    pos: at,
                    msg: "division by zero".into(),
                })?
            } else {
                acc.mul(&rhs)
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar, ArithError> {
        if self.eat(&['-', '−']).is_some() {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, ArithError> {
        let base = self.atom()?;
        if self.eat(&['^']).is_some() {
            self.skip_ws();
            let exp = self.integer()?;
            let exp: u32 = exp
                .parse()
                .map_err(|_| self.error("exponent must be a small non-negative integer"))?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<String, ArithError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        Ok(self.chars[start..self.pos].iter().map(|(_, c)| c).collect())
    }

    fn atom(&mut self) -> Result<Scalar, ArithError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.eat(&[')']).is_none() {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.integer()?;
                let n: num_bigint::BigInt = digits.parse().expect("digits");
                Ok(Scalar::constant(crate::Rational::from_integer(n)))
            }
            Some(c) if is_ident_start(c) => {
                let start = self.pos;
                let at = self.byte_pos();
                while self.peek().is_some_and(is_ident_continue) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
                let index = if self.peek() == Some('[') {
                    self.pos += 1;
                    let s = self.pos;
                    let mut depth = 1;
                    while let Some(c) = self.peek() {
                        match c {
                            '[' => depth += 1,
                            ']' => {
                                depth -= 1;
                                if depth == 0 {
                                    break;
                                }
                            }
                            _ => {}
                        }
                        self.pos += 1;
                    }
                    if self.peek() != Some(']') {
                        return Err(self.error("unterminated index"));
                    }
                    let raw: String = self.chars[s..self.pos].iter().map(|(_, c)| c).collect();
                    self.pos += 1;
                    Some(raw)
                } else {
                    None
                };
                self.resolver
                    .resolve(&name, index.as_deref())
                    .map_err(|msg| ArithError::Parse { pos: at, msg })
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> SymbolTable {
        let mut t = SymbolTable::new();
        for n in ["b", "b′", "b″", "d", "ν̄"] {
            t.declare_parameter(n).unwrap();
        }
        t.declare_family("c");
        t
    }

    #[test]
    fn precedence_and_unicode_operators() {
        let t = table();
        let e = parse_scalar("(d−1)·(d+1) - d^2", &t).unwrap();
        assert_eq!(e, Scalar::integer(-1));
        let f = parse_scalar("1/2 + 1/3", &t).unwrap();
        assert_eq!(f, Scalar::rational(5, 6));
        let g = parse_scalar("-2^2", &t).unwrap();
        assert_eq!(g, Scalar::integer(-4));
    }

    #[test]
    fn primes_and_bars_in_names() {
        let t = table();
        let e = parse_scalar("(b″−b)*(b″−b−1)/(b″−b)", &t).unwrap();
        assert_eq!(e, parse_scalar("b″−b−1", &t).unwrap());
        assert!(parse_scalar("ν̄ + b′", &t).is_ok());
    }

    #[test]
    fn indexed_unknowns() {
        let t = table();
        let e = parse_scalar("2*c[1,0;0,1]", &t).unwrap();
        assert_eq!(e.to_string(), "2·c[1,0;0,1]");
    }

    #[test]
    fn errors_carry_positions() {
        let t = table();
        match parse_scalar("b + q", &t) {
            Err(ArithError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match parse_scalar("b b", &t) {
            Err(ArithError::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_scalar("1/(b-b)", &t).is_err());
    }
}
