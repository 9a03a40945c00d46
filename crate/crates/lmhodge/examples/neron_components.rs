//! B₁ of a unipotent matrix and Kummer types of translated cones.

use lmhodge::corpus::EllipticExtension;
use lmhodge::exactlin::{QMatrix, Rational};
use lmhodge::neron::{compute_b1, kummer_type, sigma_tau_upsilon};

fn main() {
    for g in [QMatrix::from_ints(&[&[1, 1], &[0, 1]]), QMatrix::from_ints(&[&[1, 2], &[0, 1]])] {
        let b1 = compute_b1(&g).expect("unipotent");
        println!("{}", serde_json::to_string(&b1).expect("serializable"));
    }

    let ex = EllipticExtension::new(1);
    let ctx = ex.neron_context();
    for (num, den) in [(-2, 1), (1, 2), (2, 3)] {
        let ups = ex.upsilon(&Rational::int(0), &Rational::new(num, den));
        let s = sigma_tau_upsilon(&ctx, &[0], &ups).expect("face of σ′");
        println!("υ with b₂ = {num}/{den}: {:?}", kummer_type(&ctx, &s, &[0]).expect("small search box"));
    }
}
