//! Interned symbols and the symbol table.
//!
//! Symbols are interned globally, so equality and hashing are pointer
//! operations. Ordering is by content (kind, name, index), which keeps the
//! monomial order independent of the order in which symbols were created.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::ArithError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    /// Scalar value of a lattice generator (β₁, β₂, ...).
    BasisValue,
    /// Free parameter (a, b, b′, d, ν̄, ...).
    Parameter,
    /// Member of an unknown family indexed by lattice points (a_ν, c_{μ,ν}).
    IndexedUnknown,
}

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Clone)]
struct SymbolData {
    kind: SymbolKind,
    name: String,
    index: Vec<Vec<i64>>,
}

#[derive(Clone)]
pub struct Symbol(Arc<SymbolData>);

fn interner() -> &'static Mutex<HashMap<SymbolData, Arc<SymbolData>>> {
    static INTERNER: OnceLock<Mutex<HashMap<SymbolData, Arc<SymbolData>>>> = OnceLock::new();
    INTERNER.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Symbol {
    fn intern(data: SymbolData) -> Symbol {
        let mut table = interner().lock().expect("symbol interner poisoned");
        if let Some(existing) = table.get(&data) {
            return Symbol(existing.clone());
        }
        let arc = Arc::new(data.clone());
        table.insert(data, arc.clone());
        Symbol(arc)
    }

    pub fn basis_value(name: &str) -> Symbol {
        Self::intern(SymbolData {
            kind: SymbolKind::BasisValue,
            name: name.to_string(),
            index: Vec::new(),
        })
    }

    pub fn parameter(name: &str) -> Symbol {
        Self::intern(SymbolData {
            kind: SymbolKind::Parameter,
            name: name.to_string(),
            index: Vec::new(),
        })
    }

    /// An indexed unknown. `index` holds one coordinate vector per lattice
    /// argument: `a_ν` has one, `c_{μ,ν}` has two.
    pub fn unknown(family: &str, index: Vec<Vec<i64>>) -> Symbol {
        Self::intern(SymbolData {
            kind: SymbolKind::IndexedUnknown,
            name: family.to_string(),
            index,
        })
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn kind(&self) -> SymbolKind {
        self.0.kind
    }

    pub fn index(&self) -> &[Vec<i64>] {
        &self.0.index
    }

    pub fn is_unknown(&self) -> bool {
        self.0.kind == SymbolKind::IndexedUnknown
    }

    /// Same family, different index.
    pub fn with_index(&self, index: Vec<Vec<i64>>) -> Symbol {
        Symbol::unknown(&self.0.name, index)
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for Symbol {}

impl Hash for Symbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (Arc::as_ptr(&self.0) as usize).hash(state);
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            Ordering::Equal
        } else {
            self.0.cmp(&other.0)
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.name)?;
        if self.0.kind == SymbolKind::IndexedUnknown {
            f.write_str("[")?;
            for (i, chunk) in self.0.index.iter().enumerate() {
                if i > 0 {
                    f.write_str(";")?;
                }
                for (j, c) in chunk.iter().enumerate() {
                    if j > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Registry of the symbols a computation is allowed to mention.
///
/// Plain symbols are looked up by name. Indexed unknowns are declared per
/// family and created on demand.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    named: BTreeMap<String, Symbol>,
    families: BTreeSet<String>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare_parameter(&mut self, name: &str) -> Result<Symbol, ArithError> {
        self.declare(Symbol::parameter(name))
    }

    pub fn declare_basis_value(&mut self, name: &str) -> Result<Symbol, ArithError> {
        self.declare(Symbol::basis_value(name))
    }

    fn declare(&mut self, sym: Symbol) -> Result<Symbol, ArithError> {
        match self.named.get(sym.name()) {
            Some(existing) if *existing != sym => {
                Err(ArithError::DuplicateSymbol(sym.name().to_string()))
            }
            _ => {
                self.named.insert(sym.name().to_string(), sym.clone());
                Ok(sym)
            }
        }
    }

    pub fn declare_family(&mut self, family: &str) {
        self.families.insert(family.to_string());
    }

    pub fn unknown(&self, family: &str, index: Vec<Vec<i64>>) -> Result<Symbol, ArithError> {
        if !self.families.contains(family) {
            return Err(ArithError::UnknownSymbol(family.to_string()));
        }
        Ok(Symbol::unknown(family, index))
    }

    pub fn lookup(&self, name: &str) -> Option<&Symbol> {
        self.named.get(name)
    }

    pub fn has_family(&self, family: &str) -> bool {
        self.families.contains(family)
    }

    pub fn contains(&self, sym: &Symbol) -> bool {
        match sym.kind() {
            SymbolKind::IndexedUnknown => self.families.contains(sym.name()),
            _ => self.named.get(sym.name()) == Some(sym),
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.named.values()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_gives_pointer_equality() {
        let a = Symbol::parameter("b′");
        let b = Symbol::parameter("b′");
        assert_eq!(a, b);
        assert_ne!(a, Symbol::basis_value("b′"));
        assert_eq!(Symbol::unknown("c", vec![vec![1, 0], vec![0, 1]]).to_string(), "c[1,0;0,1]");
    }

    #[test]
    fn order_is_by_content() {
        let b1 = Symbol::basis_value("β₁");
        let b2 = Symbol::basis_value("β₂");
        let d = Symbol::parameter("d");
        let u = Symbol::unknown("a", vec![vec![0]]);
        assert!(b1 < b2);
        assert!(b2 < d);
        assert!(d < u);
    }

    #[test]
    fn table_rejects_kind_clash_and_undeclared_family() {
        let mut table = SymbolTable::new();
        table.declare_parameter("x").unwrap();
        assert!(table.declare_basis_value("x").is_err());
        assert!(table.unknown("a", vec![vec![0]]).is_err());
        table.declare_family("a");
        let a0 = table.unknown("a", vec![vec![0]]).unwrap();
        assert!(table.contains(&a0));
        assert!(!table.contains(&Symbol::parameter("y")));
    }
}
