//! Exact scalars, dense matrices, subspaces in canonical echelon form, and
//! integer lattice utilities.

pub mod lattice;
pub mod matrix;
pub mod scalar;
pub mod subspace;

pub use lattice::{hermite_rows, integer_left_kernel, integralize_columns, invariants_rank, smith_form, LatticeSubgroup, Smith};
pub use matrix::{flatten, unflatten, CMatrix, Matrix, QMatrix, ZMatrix};
pub use scalar::{common_denominator, int_str, primitive_integer, Field, GaussRational, Rational, Ring};
pub use subspace::{CSubspace, QSubspace, Subspace, SubspaceOp};

/// Shorthand for an integer rational.
pub fn q(n: i64) -> Rational {
    Rational::int(n)
}

/// Shorthand for n/d.
pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Rational vector from integers.
pub fn qv(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::int(x)).collect()
}
