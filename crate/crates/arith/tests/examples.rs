use std::collections::BTreeMap;

use hvir_arith::{
    parse_scalar, poly_divides, rational_roots, resultant, Polynomial, Rational, Scalar, Symbol,
    SymbolTable,
};

fn table() -> SymbolTable {
    let mut t = SymbolTable::new();
    for n in ["a", "b", "b′", "b″", "d", "ν̄", "x"] {
        t.declare_parameter(n).unwrap();
    }
    t
}

fn s(text: &str) -> Scalar {
    parse_scalar(text, &table()).unwrap()
}

fn p(text: &str) -> Polynomial {
    s(text).to_polynomial().unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[test]
fn scalar_arithmetic_examples() {
    assert_eq!(s("1/2").add(&s("1/3")), s("5/6"));
    assert_eq!(s("d-1").mul(&s("d+1")), s("d^2-1"));
    let num = s("(b″−b)*(b″−b−1)");
    let quo = num.div(&s("b″−b")).unwrap();
    assert_eq!(quo, s("b″−b−1"));
    assert_eq!(quo.mul(&s("b″−b")), num);
    assert!(s("b").div(&s("0")).is_err());
}

#[test]
fn canonical_text_is_stable() {
    assert_eq!(s("1/(d-1)").to_string(), "(1)/(d−1)");
    assert_eq!(s("(2*d+b)/(4*d-2)").to_string(), "(d+1/2·b)/(2·d−1)");
    assert_eq!(s("-x^2 + 3").to_string(), "−x^2+3");
}

#[test]
fn substitution_examples() {
    let b = Symbol::parameter("b");
    let bp = Symbol::parameter("b′");
    let nb = Symbol::parameter("ν̄");
    let mut bind = BTreeMap::new();
    bind.insert(bp, Scalar::var(b));
    assert!(s("b′-b").substitute(&bind).unwrap().is_zero());
    let mut bind = BTreeMap::new();
    bind.insert(nb, s("-b*d"));
    assert!(s("ν̄+b*d").substitute(&bind).unwrap().is_zero());
    let t = table();
    let mut bind = BTreeMap::new();
    bind.insert(Symbol::parameter("undeclared"), Scalar::one());
    assert!(s("b").substitute_checked(&t, &bind).is_err());
}

#[test]
fn divisibility_examples() {
    let (quo, ok) = match poly_divides(&p("x+1"), &p("x^2-1")).unwrap() {
        Some(qt) => (qt, true),
        None => (Polynomial::zero(), false),
    };
    assert!(ok);
    assert_eq!(quo, p("x-1"));
    assert!(poly_divides(&Polynomial::zero(), &p("x")).is_err());

    // Dense quartic in ν̄ whose value at ν̄ = −b is 7, so (ν̄+b) cannot divide it.
    let dense = p("(ν̄+b)*(3*ν̄^3 - 2*b*ν̄^2 + d*ν̄ - 5) + 7");
    let mut at = BTreeMap::new();
    at.insert(Symbol::parameter("ν̄"), p("-b"));
    assert_eq!(dense.substitute(&at), Polynomial::integer(7));
    assert_eq!(poly_divides(&p("ν̄+b"), &dense).unwrap(), None);
}

#[test]
fn resultant_examples() {
    let x = Symbol::parameter("x");
    assert!(resultant(&p("x-1"), &p("x-1"), &x).unwrap().is_zero());
    assert_eq!(resultant(&p("x-a"), &p("x-b"), &x).unwrap(), p("a-b"));
}

#[test]
fn rational_root_examples() {
    assert_eq!(rational_roots(&p("x^2-1")).unwrap(), vec![q(-1, 1), q(1, 1)]);
    assert!(rational_roots(&p("x^2+1")).unwrap().is_empty());
    let case = p("(b″−b)*(b″−b−1)");
    let mut at = BTreeMap::new();
    at.insert(Symbol::parameter("b"), Rational::from_integer(0.into()));
    let spec = case.evaluate(&at);
    assert_eq!(rational_roots(&spec).unwrap(), vec![q(0, 1), q(1, 1)]);
    assert!(rational_roots(&Polynomial::zero()).is_err());
}
