//! Rational polyhedral cones: exact LP, faces, sharpness, intersections;
//! nilpotent cones and marked cones on top of them.

mod lp;
mod nilp;
mod poly;

pub use lp::feasible;
pub use nilp::{Cone, MarkedCone};
pub use poly::{combinations, FaceLattice, PolyCone};
