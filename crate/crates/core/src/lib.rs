//! Canonical sheaves on moment graphs.
//!
//! The crate builds moment graphs of Schubert varieties from finite Weyl
//! groups (or loads arbitrary ones from JSON), runs the top-down
//! projective-cover construction of the canonical sheaf in exact rational
//! arithmetic, and reads off local and global intersection cohomology. The
//! stalk Poincaré polynomials of a Schubert graph are Kazhdan-Lusztig
//! polynomials; [`hecke`] computes those independently so the two routes can
//! be compared.
//!
//! All coefficients are rational: every map in the construction is defined
//! over `Q` when the edge directions are rational, and ranks do not change
//! under field extension.
//!
//! Grading: linear forms have degree 1 here, so internal degree `d`
//! corresponds to cohomological degree `2d`.


pub mod cli;
pub mod coxeter;
pub mod exactalg;
pub mod hecke;
pub mod moment_graph;
pub mod sheaf;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed or inconsistent input (bad word, invalid graph, bad flag).
    #[error("validation error: {0}")]
    Validation(String),
    /// A configured resource cap would be exceeded.
    #[error("{what} has {size} elements, exceeding the cap of {cap}")]
    Size { what: String, size: u128, cap: u128 },
    /// An operation was asked about arguments outside its domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// The construction contradicted one of its own guarantees.
    #[error("internal consistency error: {0}")]
    Inconsistent(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub use coxeter::{CartanDatum, Family, WeylGroup};
pub use exactalg::Rational;
pub use moment_graph::MomentGraph;
pub use sheaf::{canonical_sheaf, structure_sheaf, GammaSheaf, KLPolynomial, SheafOptions};
