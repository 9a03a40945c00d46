//! Ready-made problem documents, one or more per kind, built from the
//! example constructors.

use crate::cones::{Cone, MarkedCone};
use crate::document::*;
use crate::exactlin::{GaussRational, QMatrix, Rational, Ring};
use crate::fans::FanSet;
use crate::filtration::{standard_filtration, FilteredNilp};
use crate::orbits::OrbitMode;

use super::data::*;

fn doc(p: Problem) -> ProblemDocument {
    p.document(Options::default())
}

/// (name, document) pairs covering every document kind.
pub fn sample_documents() -> Vec<(&'static str, ProblemDocument)> {
    let ell = EllipticExtension::new(1);
    let twist = EllipticExtension::new(2);
    let prod = ProductExtension::new();
    let i = GaussRational::i();
    let zero = GaussRational::zero();
    let q = Rational::int;

    let rmf = FilteredNilp::new(ell.frame.w().clone(), ell.n(0)).expect("valid");
    let rmf_none = FilteredNilp::new(standard_filtration(&[0, 1]), l_nilp()).expect("valid");
    let adm = AdmissiblePayload { cone: ell.sigma_pair(0), w: ell.frame.w().clone(), adjoint: true };
    let orbit = |f, cone| OrbitPayload { frame: ell.frame.clone(), cone, f, mode: OrbitMode::Both };
    let twist_orbit = |w: i64| OrbitPayload {
        frame: twist.frame.clone(),
        cone: OrbitCone::Cone(twist.sigma(0)),
        f: twist.flag(&i, &GaussRational::ints(5, 0), &GaussRational::ints(w, 0)),
        mode: OrbitMode::Both,
    };
    let moved = prod.tau().ad(&prod.gamma(1, 1)).expect("conjugate cone");
    let mut pair = prod.tau().faces();
    pair.extend(moved.faces());
    let sigma_fan = FanSet::absolute(ell.sigma0_window(-3..=3)).expect("fan");
    let weak = WeakfanPayload {
        fan: FanPayload { fan: FanSet::absolute(ell.sigma0_window(-1..=1)).expect("fan"), group: None },
        frame: ell.frame.clone(),
        candidates: sample_points().iter().map(|z| ell.flag(&i, z, &zero)).collect(),
    };
    let neron = |b2: Rational| NeronConePayload {
        frame: ell.frame.clone(),
        gamma_prime: vec![ell.graded_log().exp_nilpotent()],
        face: vec![0],
        upsilon: ell.upsilon(&q(0), &b2),
    };
    let gl = vec![ell.graded_log()];
    let probe = ProbePayload {
        data: ell.two_weight_data(),
        probes: vec![
            MarkedCone::new(1, 3, gl.clone(), vec![(vec![q(3)], ell.n(0).scale(&q(2)).add(&ell.n(1)))]).expect("probe"),
            MarkedCone::new(1, 3, gl.clone(), vec![(vec![q(1)], ell.n(0)), (vec![q(1)], ell.n(2))]).expect("probe"),
            MarkedCone::zero(1, 3, gl),
        ],
    };
    vec![
        ("rmf-elliptic", doc(Problem::Rmf(rmf))),
        ("rmf-nonexistence", doc(Problem::Rmf(rmf_none))),
        ("admissible-elliptic", doc(Problem::Admissible(adm))),
        ("orbit-elliptic", doc(Problem::Orbit(Box::new(orbit(ell.flag(&i, &GaussRational::ints(1, 1), &zero), OrbitCone::Cone(ell.sigma(0))))))),
        ("orbit-elliptic-marked", doc(Problem::Orbit(Box::new(orbit(ell.flag(&i, &zero, &zero), OrbitCone::MarkedCone(ell.marked_sigma(0))))))),
        ("orbit-twist-pass", doc(Problem::Orbit(Box::new(twist_orbit(0))))),
        ("orbit-twist-fail", doc(Problem::Orbit(Box::new(twist_orbit(1))))),
        ("fan-product-pair", doc(Problem::Fan(FanPayload { fan: FanSet::absolute(pair).expect("cones"), group: None }))),
        ("fan-elliptic", doc(Problem::Fan(FanPayload { fan: sigma_fan, group: None }))),
        ("fan-tate", doc(Problem::Fan(tate_fan()))),
        ("weakfan-elliptic", doc(Problem::Weakfan(Box::new(weak)))),
        ("neron-sigma-upsilon", doc(Problem::NeronSigmaUpsilon(Box::new(neron(q(-2)))))),
        ("neron-kummer", doc(Problem::NeronKummer(Box::new(neron(Rational::new(1, 2)))))),
        ("neron-b1", doc(Problem::NeronB1(B1Payload { gamma: QMatrix::from_ints(&[&[1, 2], &[0, 1]]) }))),
        ("neron-build-fan", doc(Problem::NeronBuildFan(BuildFanPayload { data: ell.two_weight_data(), xs: None }))),
        ("neron-probe", doc(Problem::NeronProbe(probe))),
        ("corpus-ranks", doc(Problem::Corpus(CorpusPayload { name: "7.1.5".into() }))),
    ]
}

fn tate_fan() -> FanPayload {
    let ex = TateExtension::new();
    let cones = vec![ex.sigma(), Cone::ray(&ex.n.neg()).expect("ray"), Cone::zero(2)];
    FanPayload { fan: FanSet::absolute(cones).expect("fan"), group: Some(ex.group()) }
}
