mod common;

use common::*;
use lmhodge::corpus::{l_flag, l_nilp, EllipticExtension};
use lmhodge::exactlin::{GaussRational, Ring};
use lmhodge::orbits::{exp_combination, griffiths_transversal, mixed_orbit_test, pure_orbit_test, OrbitMode, OrbitVerdict};

#[test]
fn certified_and_sampled_agree_on_the_corpus() {
    let t = orbit_agreement();
    assert!(t.clean(), "{:?}", t.failures);
    assert!(t.checked >= 40);
}

#[test]
fn corpus_verdicts_are_mixed() {
    let mut seen = (0, 0);
    for inst in orbit_instances() {
        match mixed_orbit_test(&inst.frame, &inst.cone, &inst.f, OrbitMode::Both).unwrap().verdict {
            OrbitVerdict::Generates => seen.0 += 1,
            OrbitVerdict::Fails(_) => seen.1 += 1,
            OrbitVerdict::Undecided => panic!("{} undecided", inst.label),
        }
    }
    assert!(seen.0 > 10 && seen.1 > 5, "{seen:?}");
}

#[test]
fn upper_half_plane_orientation() {
    let gr = EllipticExtension::new(1).frame.graded_frame(-1).unwrap();
    let f = l_flag(0, &GaussRational::i());
    let yes = pure_orbit_test(&gr, &[l_nilp()], &f, OrbitMode::Certified).unwrap();
    assert!(yes.verdict.generates());
    let no = pure_orbit_test(&gr, &[l_nilp().neg()], &f, OrbitMode::Certified).unwrap();
    assert!(no.verdict.fails());
}

#[test]
fn transversality_boundary_for_the_twist() {
    let ex = EllipticExtension::new(2);
    let i = GaussRational::i();
    let five = GaussRational::ints(5, 0);
    assert!(griffiths_transversal(&ex.n(0), &ex.flag(&i, &five, &GaussRational::zero())).unwrap());
    assert!(!griffiths_transversal(&ex.n(0), &ex.flag(&i, &five, &GaussRational::one())).unwrap());
}

#[test]
fn exp_of_commuting_nilpotents() {
    let ex = EllipticExtension::new(1);
    let z = [GaussRational::ints(1, 2), GaussRational::ints(-3, 1)];
    let e = exp_combination(&[ex.n(0), ex.n(1)], &z, 3);
    let sum = ex.n(0).to_complex().scale(&z[0]).add(&ex.n(1).to_complex().scale(&z[1]));
    assert_eq!(e, sum.exp_nilpotent());
}
