//! Hodge frames, membership in Ď and D, Deligne bigradings and δ-splittings.

mod deligne;
mod delta;
mod frame;

pub use deligne::{bigrading_conjugation_ok, bigrading_reconstructs, deligne_bigrading, is_mhs, is_r_split, Bigrading};
pub use delta::{delta_splitting, in_l_minus_one, DeltaSplitting};
pub use frame::{is_positive_hermitian, period_point, HodgeFrame, PeriodPoint};
