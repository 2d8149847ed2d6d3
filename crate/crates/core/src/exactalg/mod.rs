//! Exact arithmetic substrate: rationals, sparse linear algebra, and the
//! graded polynomial ring with its linear quotients.

pub mod linalg;
pub mod poly;
pub mod rational;

pub use linalg::{image_basis, intersect, kernel_basis, Echelon, QMatrix, SparseVec};
pub use poly::{
    edge_ring, graded_dim, monomials, multiply_map, poly_mul, quotient_ring, LinearForm, MonomialBasis,
    QuotientRing,
};
pub use rational::Rational;
