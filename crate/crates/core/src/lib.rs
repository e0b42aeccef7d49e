//! Exact-arithmetic engine for dimensional analysis.
//!
//! Given the dimensions of a set of variables and a choice of dependent
//! variable, the engine enumerates every adequate partition of the dimension
//! tuple, computes the distinguished integer exponent tuple for each entry,
//! and assembles the full system of representation equations
//! `y_0^(W_0) = prod_j x_j^(W_0j) * Psi_l(pi_1, ..)` — one equation per
//! partition, each with its own opaque function symbol. Systems can be
//! normalized to a common left-hand exponent and, when two equations map
//! onto each other under a declared variable exchange, reduced to a closed
//! form with a single free constant.
//!
//! All computation is exact: arbitrary-precision integers and rationals,
//! fraction-free elimination, no floating point anywhere. Every public type
//! is an immutable value and every operation a pure function, safe for
//! unrestricted concurrent use.

pub mod error;
pub mod matrix;
pub mod partition;
pub mod pi;
pub mod quantity;
pub mod scalar;

pub use error::{Error, Result};
pub use matrix::{primitive_normalize, IntMatrix};
pub use partition::{
    adequate_partitions, is_independent, maximal_independent_subtuples, AdequatePartition,
    DimTuple, TupleEntry,
};
pub use pi::{
    build_representation, build_system, distinguished_exponents, kappa_multiple_check,
    normalize_system, symmetry_reduce, ClosedForm, EquationSystem, ExponentRow, Normalization,
    PiGroup, PowerProduct, ReduceOutcome, RepresentationEquation, NO_PARTITION_DIAGNOSTIC,
};
pub use quantity::{nu, DimVector, Expansion, LocalBasis, Quantity};
pub use scalar::{rat, rat_int, rat_pow, BigRat};

pub use num_bigint::BigInt;
