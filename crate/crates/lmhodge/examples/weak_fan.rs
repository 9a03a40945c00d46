//! Search for weak-fan violations among nested cones.

use lmhodge::cones::Cone;
use lmhodge::corpus::{sample_points, EllipticExtension};
use lmhodge::exactlin::{GaussRational, Ring};
use lmhodge::fans::{weakfan_falsify, FanSet};

fn main() {
    let ex = EllipticExtension::new(1);
    let flags: Vec<_> = sample_points().iter().map(|z| ex.flag(&GaussRational::i(), z, &GaussRational::zero())).collect();

    let fan = FanSet::absolute(ex.sigma_window(-2..=2)).expect("sharp cones");
    println!("σ_(n,n+1) window: {:?}", weakfan_falsify(&fan, &flags, &ex.frame).expect("valid"));

    let mut cones = Cone::new(3, vec![ex.n(0), ex.n(2)]).expect("cone").faces();
    cones.extend(ex.sigma_pair(0).faces());
    let fan = FanSet::absolute(cones).expect("sharp cones");
    println!("σ_(0,2) with σ_(0,1): {:?}", weakfan_falsify(&fan, &flags, &ex.frame).expect("valid"));
}
