//! Quadratic hulls of linear codes, multiplication reductions between
//! finite-dimensional commutative algebras, and an exhaustive search for
//! minimal symmetric multiplication algorithms over small finite fields.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI and the
//! multi-threaded search driver live in the companion `quadhull` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod bcode;
pub mod evalinterp;
pub mod field;
pub mod linalg;
pub mod multred;
pub mod poly;
pub mod quadhull;
pub mod search;
pub mod sym;

pub use algebra::Algebra;
pub use bcode::BCode;
pub use field::{Elem, Fq};
pub use linalg::{Mat, Subspace};
pub use multred::MultReduction;
pub use poly::Poly;
pub use quadhull::{HullReport, QuadHull};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field order exceeds the supported table size")]
    FieldTooLarge,
    #[error("modulus is reducible")]
    ReducibleModulus,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("base fields differ")]
    FieldMismatch,
    #[error("algebra has no known local decomposition")]
    MissingFactors,
    #[error("structure constants are not those of a commutative associative unital algebra: {0}")]
    NotAnAlgebra(&'static str),
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("zero vector where a projective point was expected")]
    ZeroVector,
    #[error("enumeration of {size} candidates exceeds the cap of {cap}")]
    BudgetExceeded { size: u64, cap: u64 },
    #[error("search node budget of {0} exhausted")]
    NodeBudget(u64),
    #[error("map is not a multiplication reduction")]
    NotAReduction,
    #[error("form is not homogeneous of degree {0}")]
    Inhomogeneous(u32),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("self-check failed: {0}")]
    SelfCheck(&'static str),
}
