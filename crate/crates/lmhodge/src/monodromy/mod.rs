//! Monodromy weight filtrations, relative monodromy filtrations M(N, W),
//! cone admissibility and successive filtrations.

mod admissible;
mod relative;
mod weight;

pub use admissible::{
    check_adjoint_admissible, check_admissible, check_admissible_cone, Action, AdmissibilityReport, AdmissibleVerdict,
    FaceFiltration,
};
pub use relative::{relative_monodromy, successive_filtrations, verify_rmf, RmfCheck, RmfFailure, RmfResult, RmfVerdict};
pub use weight::weight_filtration;
