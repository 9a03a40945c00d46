//! Admissibility of a two-dimensional cone and of its adjoint action.

use lmhodge::corpus::EllipticExtension;
use lmhodge::monodromy::{check_adjoint_admissible, check_admissible_cone, Action};

fn main() {
    let ex = EllipticExtension::new(1);
    let w = ex.frame.w();
    let cone = ex.sigma_pair(0);
    let r = check_admissible_cone(&cone, w).expect("well-formed cone");
    println!("cone: {:?}", r.verdict);
    for f in &r.face_filtrations {
        let dims: Vec<usize> = f.filtration.steps().map(|(_, s)| s.dim()).collect();
        println!("  face {:?}: dims {:?}", f.face, dims);
    }
    let adj = check_adjoint_admissible(cone.poly(), &Action::Flattened { n: 3 }, w).expect("well-formed cone");
    println!("adjoint action: {:?}", adj.verdict);
}
