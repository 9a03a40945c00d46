//! Build the relatively complete fan for the elliptic extension, locate a
//! nilpotent in it and cover a probe cone.

use lmhodge::cones::MarkedCone;
use lmhodge::corpus::EllipticExtension;
use lmhodge::exactlin::Rational;
use lmhodge::neron::{build_relcomplete_fan, relative_completeness_probe};

fn main() {
    let ex = EllipticExtension::new(1);
    let fan = build_relcomplete_fan(&ex.two_weight_data()).expect("valid data");
    println!("dim X = {}, dim Y = {}", fan.x_space().dim(), fan.y_space().dim());
    let p = fan.query(&ex.n_rational(&Rational::new(3, 2))).expect("right shape");
    println!("N_(3/2) lands at {}", serde_json::to_string(&p).expect("serializable"));

    let one = Rational::int(1);
    let probe = MarkedCone::new(1, 3, vec![ex.graded_log()], vec![(vec![one.clone()], ex.n(0)), (vec![one], ex.n(2))])
        .expect("fiber cone");
    for rep in relative_completeness_probe(&fan, &[probe]) {
        let ns: Vec<String> = rep.pieces.iter().map(|p| p.n[0].to_string()).collect();
        println!("covered: {}, pieces in σ(0, n) for n = {}", rep.covered, ns.join(", "));
    }
}
