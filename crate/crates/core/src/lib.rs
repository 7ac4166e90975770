//! Koszulness certification for binary quadratic protoperads.
//!
//! The pipeline reduces a binary quadratic protoperad to the family of
//! quadratic algebras `A(P, n)`, certifies each of them by orienting the
//! relations and checking confluence of all critical monomials, and
//! cross-validates through exact rational homology of bar complexes built on
//! walls and leveled walls.

pub mod barhom;
pub mod cli;
pub mod exactq;
pub mod par;
pub mod protoperad;
pub mod quadalg;
pub mod walls;

/// Version tag carried by every JSON document read or written.
pub const SCHEMA: &str = "pkit/1";
