//! Exact linear and polyhedral algebra for degenerating mixed Hodge
//! structures.
//!
//! Everything is computed over ℚ or ℚ(i) with arbitrary-precision integers;
//! there is no floating point in the library. The modules build on each
//! other in this order:
//!
//! - [`exactlin`]: scalars, matrices, subspaces, Smith forms;
//! - [`filtration`]: weight and Hodge filtrations, graded pieces, ⊕/⊗/Hom;
//! - [`monodromy`]: weight filtrations of nilpotents, the relative monodromy
//!   filtration M(N, W) with a certifying verifier, cone admissibility;
//! - [`cones`]: rational polyhedral cones via an exact simplex;
//! - [`hodge`]: Hodge frames, period-domain membership, Deligne bigradings,
//!   the (s′, δ) splitting;
//! - [`orbits`]: nilpotent-orbit tests, certified and sampled;
//! - [`fans`]: fan and weak-fan checks, Γ(σ), compatibility;
//! - [`neron`]: cones σ_{τ′,υ}, Kummer index, B₁, the two-weight
//!   relatively complete fan;
//! - [`corpus`] and [`document`]: the worked examples and the JSON documents
//!   consumed by the `lmhodge` binary.

pub mod cones;
pub mod corpus;
pub mod document;
pub mod error;
pub mod exactlin;
pub mod fans;
pub mod filtration;
pub mod hodge;
pub mod monodromy;
pub mod neron;
pub mod orbits;

pub use error::{Error, Result};
