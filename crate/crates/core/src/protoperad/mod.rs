//! Binary quadratic protoperads: presentations, the algebras `A(P, n)`,
//! quadratic duality, weight components and the Koszulness driver.

mod components;
mod family;
mod presentation;
mod verdict;

pub use components::{canonical_trace, Component, Components, Letter, Relabel};
pub use family::{build_algebra, FamilyAlgebra};
pub use presentation::{
    dual_presentation, fmt_weight2, free_dim, ind_dim, weight2_basis, BinaryQuadraticProtoperad,
    GeneratorSpec, ProtoperadJson, RelationJson, RelationVector, Symmetry, TermJson, Weight2,
};
pub use verdict::{check_koszul, koszul_dual_dim, ArityReport, CheckConfig, KoszulVerdict, VerdictStatus};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ProtoError {
    #[error("generator {0:?} appears twice")]
    DuplicateGenerator(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{path}: {msg}")]
    Field { path: String, msg: String },
}
