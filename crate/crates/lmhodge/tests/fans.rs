use lmhodge::cones::Cone;
use lmhodge::corpus::{sample_points, EllipticExtension, ProductExtension};
use lmhodge::exactlin::{GaussRational, QMatrix, Rational, Ring};
use lmhodge::fans::{check_face_closure, check_fan, check_strong_compat, minimal_exponent, weakfan_falsify, FanSet};

fn elliptic_flags(ex: &EllipticExtension) -> Vec<lmhodge::hodge::PeriodPoint> {
    sample_points().iter().map(|z| ex.flag(&GaussRational::i(), z, &GaussRational::zero())).collect()
}

#[test]
fn elliptic_window_is_a_closed_fan() {
    let ex = EllipticExtension::new(1);
    let fan = FanSet::absolute(ex.sigma_window(-3..=3)).unwrap();
    assert!(check_fan(&fan).unwrap().ok);
    assert!(check_face_closure(&fan).ok);
    assert!(weakfan_falsify(&fan, &elliptic_flags(&ex), &ex.frame).unwrap().is_none());
}

#[test]
fn dropping_a_ray_breaks_face_closure() {
    let ex = EllipticExtension::new(1);
    let cones: Vec<Cone> = ex.sigma_window(0..=1).into_iter().filter(|c| !c.same_cone(&ex.sigma(1))).collect();
    let fan = FanSet::absolute(cones).unwrap();
    let r = check_face_closure(&fan);
    assert!(!r.ok);
    assert_eq!(r.missing.len(), 2);
}

#[test]
fn nested_cones_are_not_a_fan_and_violate_the_weak_property() {
    let ex = EllipticExtension::new(1);
    let wide = Cone::new(3, vec![ex.n(0), ex.n(2)]).unwrap();
    let mut cones = wide.faces();
    cones.extend(ex.sigma_pair(0).faces());
    let fan = FanSet::absolute(cones).unwrap();
    let r = check_fan(&fan).unwrap();
    assert!(!r.ok && r.violation.is_some());
    assert!(weakfan_falsify(&fan, &elliptic_flags(&ex), &ex.frame).unwrap().is_some());
}

#[test]
fn product_pair_witness_is_the_diagonal() {
    let ex = ProductExtension::new();
    let tau = ex.tau();
    let mut cones = tau.faces();
    cones.extend(tau.ad(&ex.gamma(1, 1)).unwrap().faces());
    let r = check_fan(&FanSet::absolute(cones).unwrap()).unwrap();
    let v = r.violation.expect("violation");
    let diag = Cone::ray(&ex.n1.add(&ex.n2)).unwrap();
    assert_eq!(v.intersection, diag.poly().canonical_rays().unwrap().into_iter().map(|r| r.into_iter().map(Rational::from_bigint).collect::<Vec<_>>()).collect::<Vec<_>>());
}

#[test]
fn strong_compatibility_needs_an_inner_window() {
    let ex = EllipticExtension::new(1);
    let fan = FanSet::absolute(ex.sigma_window(-2..=2)).unwrap();
    let whole = check_strong_compat(&fan, &ex.gamma()).unwrap();
    assert!(!whole.ok() && !whole.missing.is_empty());
    let inner: Vec<usize> = (0..fan.len()).filter(|&i| (-1..=1).any(|k| ex.sigma_pair(k).poly().contains_cone(fan.poly(i)))).collect();
    let r = check_strong_compat(&fan.clone().with_window(inner).unwrap(), &ex.gamma()).unwrap();
    assert!(r.ok(), "{r:?}");
}

#[test]
fn minimal_exponent_matches_a_scan() {
    let ex = EllipticExtension::new(1);
    let g = ex.gamma();
    for (num, den) in [(1, 1), (1, 3), (2, 3), (3, 4), (5, 2)] {
        let n = QMatrix::unit(3, 0, 1).scale(&Rational::new(num, den));
        let got = minimal_exponent(&n, &g).unwrap();
        // exp(cN) = 1 + cN here, so c·num/den must be an integer.
        let scan = (1..=600).map(|k| Rational::new(k, 60)).find(|c| (c.clone() * Rational::new(num, den)).is_integer()).unwrap();
        assert_eq!(got, scan, "{num}/{den}");
    }
    assert!(minimal_exponent(&QMatrix::zeros(3, 3), &g).is_err());
}

#[test]
fn empty_fan_is_rejected() {
    assert!(FanSet::absolute(vec![]).is_err());
}

/// A ray outside the Lie algebra of Γ has no integral exponential, so the
/// pair is not strongly compatible.
#[test]
fn ray_without_integral_exponential_is_not_strong() {
    let ex = EllipticExtension::new(1);
    let lower = QMatrix::unit(3, 1, 0);
    let fan = FanSet::absolute(vec![Cone::zero(3), Cone::ray(&lower).unwrap()]).unwrap();
    let r = check_strong_compat(&fan, &ex.gamma()).unwrap();
    assert!(!r.strong);
    assert_eq!(r.non_integral_cones, vec![1]);
}
