//! Quadratic associative algebras over ℚ: duality, monomial orders,
//! rewriting systems, confluence of critical monomials, Hilbert series of
//! normal words and Koszulness certificates.
//!
//! Generators are indexed `0..g`; a word is a sequence of generator indices.

use std::collections::BTreeMap;

use crate::exactq::rational::signed_term;
use crate::exactq::Rational;

mod algebra;
mod certify;
mod hilbert;
mod order;
mod rewrite;

pub use algebra::{dual_name, quadratic_dual, AlgebraJson, QuadraticAlgebra, TermJson};
pub use certify::{candidate_orders, certify_koszul, certify_pinned, Attempt, Certificate, KoszulStatus};
pub use hilbert::{
    graded_dims, hilbert_coeffs, ideal_dims, koszul_identity_holds, koszul_numerical_check, try_graded_dims,
    NormalBasis,
};
pub use order::MonomialOrder;
pub use rewrite::{
    check_confluence, critical_monomials, derive_rewrite_system, ConfluenceFailure,
    ConfluenceReport, RewriteRule, RewriteSystem, Strategy,
};

pub type Word = Vec<usize>;

/// Linear combination of words with nonzero coefficients.
pub type LinComb = BTreeMap<Word, Rational>;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum QuadError {
    #[error("generator {0:?} appears twice")]
    DuplicateGenerator(String),
    #[error("relation matrix has {found} columns, expected {expected}")]
    RelationWidth { expected: usize, found: usize },
    #[error("generator index {0} out of range")]
    UnknownGeneratorIndex(usize),
    #[error("{path}: {msg}")]
    Field { path: String, msg: String },
    #[error("rewriting system is not confluent ({0} failing critical monomials)")]
    NotConfluent(usize),
}

/// `c1·w1 + c2·w2 - …` with words rendered by `word`; `0` when empty.
pub fn fmt_lincomb(lc: &LinComb, word: impl Fn(&[usize]) -> String) -> String {
    if lc.is_empty() {
        return "0".to_string();
    }
    lc.iter()
        .enumerate()
        .map(|(i, (w, c))| signed_term(i == 0, c, &word(w)))
        .collect()
}
