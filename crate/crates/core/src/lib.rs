//! Exact symbolic machinery for Virasoro algebras over lattices of arbitrary
//! rank and their modules of the intermediate series.

pub mod algebra;
pub mod error;
pub mod intermediate;
pub mod lab;
pub mod lattice;
pub mod layered;
pub mod pbw;

pub use algebra::{LieElement, Virasoro};
pub use error::{CoreError, Result};
pub use intermediate::{APrime, FamilySpec, Membership, Rescale, SeriesVector, Simplicity};
pub use lattice::{
    basis_lemma21, basis_lemma23, cone_membership, BasisChange, Delta, Generator, GeneratorKind,
    LatticeBasis, LatticeSubstitution, LatticeVector, Lemma23, Lemma23Case,
};
pub use pbw::{normal_form_with, pbw_normal_form, FreeElement, Letter, OperatorExpr, PbwForm, Word};
pub use layered::{LayeredModule, LinearForm, ModuleConfig, ModuleVector, Relation};
