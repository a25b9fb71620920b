//! Operator expressions in the enveloping algebra and their PBW normal form.
//!
//! Words are rewritten with `xy = yx + [x,y]` until every word is
//! weakly descending in [`LatticeVector::pbw_key`], with the central
//! element c last.
//!
//! Prefix syntax for [`OperatorExpr::parse`]:
//!
//! ```text
//! expr := (L vec) | c | (+ expr...) | (- expr expr) | (* expr...)
//!       | (comm expr expr) | (scale "scalar" expr)
//! ```
//!
//! `vec` is a coordinate list (`1,0`) or a combination of generator names
//! (`mu+mu'+d`); ASCII `mu`, `nu` and `'` stand for μ, ν and ′.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use hvir_arith::{parse_scalar, Scalar, Symbol, SymbolResolver};

use crate::algebra::Virasoro;
use crate::error::{CoreError, Result};
use crate::lattice::{LatticeBasis, LatticeVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorExpr {
    Gen(LatticeVector),
    Central,
    Sum(Vec<OperatorExpr>),
    Scale(Scalar, Box<OperatorExpr>),
    /// Left-to-right word concatenation; acts on modules right to left.
    Product(Vec<OperatorExpr>),
    Comm(Box<OperatorExpr>, Box<OperatorExpr>),
}

impl OperatorExpr {
    pub fn gen(v: LatticeVector) -> Self {
        OperatorExpr::Gen(v)
    }

    pub fn comm(a: OperatorExpr, b: OperatorExpr) -> Self {
        OperatorExpr::Comm(Box::new(a), Box::new(b))
    }

    pub fn scale(k: Scalar, e: OperatorExpr) -> Self {
        OperatorExpr::Scale(k, Box::new(e))
    }

    pub fn product(parts: Vec<OperatorExpr>) -> Self {
        OperatorExpr::Product(parts)
    }

    pub fn sum(parts: Vec<OperatorExpr>) -> Self {
        OperatorExpr::Sum(parts)
    }

    pub fn sub(a: OperatorExpr, b: OperatorExpr) -> Self {
        OperatorExpr::Sum(vec![a, OperatorExpr::scale(Scalar::integer(-1), b)])
    }

    pub fn parse(text: &str, basis: &LatticeBasis) -> Result<Self> {
        let tokens = tokenize(text)?;
        let mut pos = 0;
        let e = parse_sexpr(&tokens, &mut pos, basis)?;
        if pos != tokens.len() {
            return Err(CoreError::Parse(format!("trailing input in `{text}`")));
        }
        Ok(e)
    }

    /// Expansion into the free associative algebra.
    pub fn expand(&self) -> FreeElement {
        match self {
            OperatorExpr::Gen(v) => FreeElement::letter(Letter::L(v.clone())),
            OperatorExpr::Central => FreeElement::letter(Letter::C),
            OperatorExpr::Sum(parts) => {
                let mut acc = FreeElement::zero();
                for p in parts {
                    acc.add_assign(&p.expand(), &Scalar::one());
                }
                acc
            }
            OperatorExpr::Scale(k, e) => e.expand().scale(k),
            OperatorExpr::Product(parts) => {
                let mut acc = FreeElement::one();
                for p in parts {
                    acc = acc.mul(&p.expand());
                }
                acc
            }
            OperatorExpr::Comm(a, b) => {
                let (a, b) = (a.expand(), b.expand());
                let mut out = a.mul(&b);
                out.add_assign(&b.mul(&a), &Scalar::integer(-1));
                out
            }
        }
    }
}

/// A letter of a word: L_μ or c.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    L(LatticeVector),
    C,
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Letter::L(a), Letter::L(b)) => b.pbw_key().cmp(&a.pbw_key()),
            (Letter::L(_), Letter::C) => Ordering::Less,
            (Letter::C, Letter::L(_)) => Ordering::Greater,
            (Letter::C, Letter::C) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::L(v) => write!(f, "L{v}"),
            Letter::C => f.write_str("c"),
        }
    }
}

pub type Word = Vec<Letter>;

fn word_key(w: &Word) -> (usize, &Word) {
    (w.len(), w)
}

/// Linear combination of words.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeElement {
    terms: BTreeMap<Word, Scalar>,
}

impl FreeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut e = Self::zero();
        e.terms.insert(Vec::new(), Scalar::one());
        e
    }

    pub fn letter(l: Letter) -> Self {
        let mut e = Self::zero();
        e.terms.insert(vec![l], Scalar::one());
        e
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_word(&mut self, w: Word, k: Scalar) {
        if k.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(k);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&k);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &FreeElement, k: &Scalar) {
        for (w, c) in &other.terms {
            self.add_word(w.clone(), c.mul(k));
        }
    }

    pub fn scale(&self, k: &Scalar) -> FreeElement {
        let mut out = FreeElement::zero();
        out.add_assign(self, k);
        out
    }

    pub fn mul(&self, other: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend(v.iter().cloned());
                out.add_word(w, a.mul(b));
            }
        }
        out
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut words: Vec<_> = self.terms.iter().collect();
        words.sort_by(|a, b| word_key(b.0).cmp(&word_key(a.0)));
        for (i, (w, c)) in words.into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            if w.is_empty() {
                f.write_str("·1")?;
            }
            for l in w {
                write!(f, "·{l}")?;
            }
        }
        Ok(())
    }
}

/// A combination of ordered words; equal elements of the enveloping algebra
/// have identical forms.
pub type PbwForm = FreeElement;

fn descents(w: &Word) -> Vec<usize> {
    (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]).collect()
}

/// Normal form, always rewriting the leftmost out-of-order pair.
pub fn pbw_normal_form(vir: &Virasoro, e: &OperatorExpr) -> Result<PbwForm> {
    normal_form_with(vir, &e.expand(), &mut |_| 0)
}

/// Normal form with a caller-chosen rewrite site among the descents of each
/// word (the closure receives the descent count and returns an index).
pub fn normal_form_with(
    vir: &Virasoro,
    e: &FreeElement,
    choose: &mut dyn FnMut(usize) -> usize,
) -> Result<PbwForm> {
    // Longest words first, so shorter ones collect all contributions
    // before they are rewritten.
    let mut pending: BTreeMap<(usize, Word), Scalar> = e
        .terms
        .iter()
        .map(|(w, c)| ((w.len(), w.clone()), c.clone()))
        .collect();
    let mut out = FreeElement::zero();
    while let Some(((_, w), k)) = pending.pop_last() {
        if k.is_zero() {
            continue;
        }
        let ds = descents(&w);
        if ds.is_empty() {
            out.add_word(w, k);
            continue;
        }
        let i = ds[choose(ds.len()) % ds.len()];
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        push(&mut pending, swapped, k.clone());
        if let (Letter::L(x), Letter::L(y)) = (&w[i], &w[i + 1]) {
            let br = vir.bracket_generators(x, y);
            for (v, c) in br.terms() {
                let mut nw = w[..i].to_vec();
                nw.push(Letter::L(v.clone()));
                nw.extend_from_slice(&w[i + 2..]);
                push(&mut pending, nw, k.mul(c));
            }
            if !br.central_part().is_zero() {
                let mut nw = w[..i].to_vec();
                nw.push(Letter::C);
                nw.extend_from_slice(&w[i + 2..]);
                push(&mut pending, nw, k.mul(br.central_part()));
            }
        }
    }
    Ok(out)
}

fn push(pending: &mut BTreeMap<(usize, Word), Scalar>, w: Word, k: Scalar) {
    if k.is_zero() {
        return;
    }
    let key = (w.len(), w);
    let s = match pending.remove(&key) {
        Some(old) => old.add(&k),
        None => k,
    };
    if !s.is_zero() {
        pending.insert(key, s);
    }
}

/// ASCII spellings accepted in expression text.
pub fn normalize_names(text: &str) -> String {
    text.replace("nubar", "ν̄")
        .replace("mu", "μ")
        .replace("nu", "ν")
        .replace("''", "″")
        .replace('\'', "′")
}

/// Resolves identifiers to generator values when they name a generator and
/// to free parameters otherwise.
pub struct BasisResolver<'a> {
    pub basis: &'a LatticeBasis,
}

impl SymbolResolver for BasisResolver<'_> {
    fn resolve(&self, name: &str, index: Option<&str>) -> std::result::Result<Scalar, String> {
        if let Some(raw) = index {
            return Err(format!("unexpected index `{name}[{raw}]`"));
        }
        let name = normalize_names(name);
        match self.basis.index_of(&name) {
            Ok(i) => Ok(self.basis.generators()[i].value.clone()),
            Err(_) => Ok(Scalar::var(Symbol::parameter(&name))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Str(String),
    Atom(String),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '(' => {
                chars.next();
                out.push(Token::Open);
            }
            ')' => {
                chars.next();
                out.push(Token::Close);
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some(ch) => s.push(ch),
                        None => return Err(CoreError::Parse("unterminated string".into())),
                    }
                }
                out.push(Token::Str(s));
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            _ => {
                let mut s = String::new();
                while let Some(&ch) = chars.peek() {
                    if ch.is_whitespace() || ch == '(' || ch == ')' {
                        break;
                    }
                    s.push(ch);
                    chars.next();
                }
                out.push(Token::Atom(s));
            }
        }
    }
    Ok(out)
}

fn parse_sexpr(tokens: &[Token], pos: &mut usize, basis: &LatticeBasis) -> Result<OperatorExpr> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| CoreError::Parse("unexpected end of expression".into()))?;
    *pos += 1;
    match tok {
        Token::Atom(a) if a == "c" => Ok(OperatorExpr::Central),
        Token::Open => {
            let head = match tokens.get(*pos) {
                Some(Token::Atom(h)) => h.clone(),
                other => return Err(CoreError::Parse(format!("expected operator, got {other:?}"))),
            };
            *pos += 1;
            let e = match head.as_str() {
                "L" => {
                    let v = match tokens.get(*pos) {
                        Some(Token::Atom(v)) => v.clone(),
                        other => {
                            return Err(CoreError::Parse(format!("expected vector, got {other:?}")))
                        }
                    };
                    *pos += 1;
                    OperatorExpr::Gen(basis.parse_vector(&normalize_names(&v))?)
                }
                "c" => OperatorExpr::Central,
                "scale" => {
                    let k = match tokens.get(*pos) {
                        Some(Token::Str(s)) | Some(Token::Atom(s)) => s.clone(),
                        other => {
                            return Err(CoreError::Parse(format!("expected scalar, got {other:?}")))
                        }
                    };
                    *pos += 1;
                    let k = parse_scalar(&k, &BasisResolver { basis })?;
                    let inner = parse_sexpr(tokens, pos, basis)?;
                    OperatorExpr::scale(k, inner)
                }
                "+" | "*" | "-" | "comm" => {
                    let mut args = Vec::new();
                    while tokens.get(*pos) != Some(&Token::Close) {
                        if *pos >= tokens.len() {
                            return Err(CoreError::Parse("missing `)`".into()));
                        }
                        args.push(parse_sexpr(tokens, pos, basis)?);
                    }
                    match head.as_str() {
                        "+" => OperatorExpr::Sum(args),
                        "*" => OperatorExpr::Product(args),
                        _ => {
                            if args.len() != 2 {
                                return Err(CoreError::Parse(format!("`{head}` takes two arguments")));
                            }
                            let b = args.pop().unwrap();
                            let a = args.pop().unwrap();
                            if head == "-" {
                                OperatorExpr::sub(a, b)
                            } else {
                                OperatorExpr::comm(a, b)
                            }
                        }
                    }
                }
                other => return Err(CoreError::Parse(format!("unknown operator `{other}`"))),
            };
            match tokens.get(*pos) {
                Some(Token::Close) => {
                    *pos += 1;
                    Ok(e)
                }
                _ => Err(CoreError::Parse(format!("expected `)` after `{head}`"))),
            }
        }
        other => Err(CoreError::Parse(format!("unexpected token {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic() -> (LatticeBasis, Virasoro) {
        let b = LatticeBasis::generic(&["μ", "μ′", "d"], true).unwrap();
        (b.clone(), Virasoro::new(b))
    }

    #[test]
    fn single_rewrite() {
        let (b, vir) = generic();
        let e = OperatorExpr::parse("(* (L d) (L 1))", &b).unwrap();
        let nf = pbw_normal_form(&vir, &e).unwrap();
        let expect = OperatorExpr::parse(
            "(+ (* (L 1) (L d)) (scale \"1-d\" (L 1+d)))",
            &b,
        )
        .unwrap()
        .expand();
        assert_eq!(nf, expect);
    }

    #[test]
    fn ordered_word_is_fixed() {
        let (b, vir) = generic();
        let e = OperatorExpr::parse("(* (L 1) (L mu) (L d))", &b).unwrap();
        let w = e.expand();
        let nf = pbw_normal_form(&vir, &e).unwrap();
        // The fixed order decides which of μ and 1 comes first; either way a
        // word is ordered exactly when rewriting leaves it alone.
        if descents(w.terms().keys().next().unwrap()).is_empty() {
            assert_eq!(nf, w);
        }
        let again = normal_form_with(&vir, &nf, &mut |_| 0).unwrap();
        assert_eq!(again, nf);
    }

    #[test]
    fn central_terms_appear_when_delta_fires() {
        let b = LatticeBasis::standard(1).unwrap().bind(0, Scalar::one());
        let vir = Virasoro::new(b.clone());
        let e = OperatorExpr::parse("(comm (L 2) (L -2))", &b).unwrap();
        let nf = pbw_normal_form(&vir, &e).unwrap();
        let expect = OperatorExpr::parse("(+ (scale \"-4\" (L 0)) (scale \"-1/2\" c))", &b)
            .unwrap()
            .expand();
        assert_eq!(nf, expect);
    }

    #[test]
    fn parse_errors() {
        let (b, _) = generic();
        assert!(OperatorExpr::parse("(L q)", &b).is_err());
        assert!(OperatorExpr::parse("(comm (L mu))", &b).is_err());
        assert!(OperatorExpr::parse("(L mu", &b).is_err());
    }
}
