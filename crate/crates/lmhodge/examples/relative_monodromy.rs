//! Relative monodromy filtrations: one that exists, one that does not.

use lmhodge::corpus::EllipticExtension;
use lmhodge::exactlin::QMatrix;
use lmhodge::filtration::{standard_filtration, FilteredNilp};
use lmhodge::monodromy::relative_monodromy;

fn main() {
    // Extension of ℤ by H¹ of an elliptic curve, N: e₂ ↦ e₁.
    let ex = EllipticExtension::new(1);
    let x = FilteredNilp::new(ex.frame.w().clone(), ex.n(0)).expect("N preserves W");
    let r = relative_monodromy(&x);
    println!("{:?} (decided by {})", r.verdict, r.decided_by);
    if let Some(m) = &r.filtration {
        for (k, step) in m.steps() {
            println!("  M_{k}: dim {}", step.dim());
        }
    }

    // A Jordan block straddling weights 0 and 1 has no M.
    let x = FilteredNilp::new(standard_filtration(&[0, 1]), QMatrix::from_ints(&[&[0, 1], &[0, 0]])).expect("filtered");
    let r = relative_monodromy(&x);
    println!("{:?}: {}", r.verdict, r.witness.unwrap_or_default());
}
