//! Nilpotent orbit tests, including the transversality boundary of the
//! twisted elliptic extension.

use lmhodge::corpus::EllipticExtension;
use lmhodge::exactlin::{GaussRational, Ring};
use lmhodge::orbits::{mixed_orbit_test, OrbitMode};

fn main() {
    let i = GaussRational::i();
    let zero = GaussRational::zero();
    let ex = EllipticExtension::new(1);
    let r = mixed_orbit_test(&ex.frame, &ex.sigma(0), &ex.flag(&i, &GaussRational::ints(1, 1), &zero), OrbitMode::Both)
        .expect("valid input");
    println!("(σ₀, F(i, 1+i)): {:?}", r.verdict);

    let tw = EllipticExtension::new(2);
    let five = GaussRational::ints(5, 0);
    for w in [zero.clone(), GaussRational::one()] {
        let r = mixed_orbit_test(&tw.frame, &tw.sigma(0), &tw.flag(&i, &five, &w), OrbitMode::Both).expect("valid input");
        println!("twisted (N₀, F(i, 5, {w:?})): {:?}", r.verdict);
    }
}
