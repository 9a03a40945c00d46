mod common;

use common::*;
use lmhodge::corpus::EllipticExtension;
use lmhodge::exactlin::{QMatrix, QSubspace, Rational};
use lmhodge::neron::{build_relcomplete_fan, compute_b1, kummer_type, relative_completeness_probe, sigma_tau_upsilon, KummerType};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::Rng;

#[test]
fn b1_of_a_doubled_shear() {
    let g = QMatrix::from_ints(&[&[1, 2], &[0, 1]]);
    let b1 = compute_b1(&g).unwrap();
    assert_eq!(b1.finite.len(), 1);
    assert_eq!(b1.finite[0].order, BigInt::from(2));
    assert_eq!(QSubspace::span(2, &b1.divisible), QSubspace::span(2, &[vec![q(1), q(0)]]));
    // (γ′ − 1)b = (2b₂, 0), so b ∈ B₁ iff 2b₂ ∈ ℤ.
    let mut r = rng(31);
    for _ in 0..200 {
        let b = vec![Rational::new(r.gen_range(-20..=20), 6), Rational::new(r.gen_range(-20..=20), 6)];
        let expect = (b[1].clone() * q(2)).is_integer();
        assert_eq!(b1.contains(&b, &g), expect, "{b:?}");
    }
    assert!(b1.finite.iter().all(|f| b1.contains(&f.b, &g)));
}

#[test]
fn b1_rejects_non_unipotent() {
    assert!(compute_b1(&QMatrix::from_ints(&[&[2, 0], &[0, 1]])).is_err());
}

#[test]
fn kummer_index_is_the_reduced_denominator() {
    let ex = EllipticExtension::new(1);
    let ctx = ex.neron_context();
    for d in 1..=6i64 {
        for a in -d..=d {
            for b1 in [Rational::int(0), Rational::new(1, 2), Rational::new(2, 3)] {
                let s = sigma_tau_upsilon(&ctx, &[0], &ex.upsilon(&b1, &Rational::new(a, d))).unwrap();
                let index = (d / a.gcd(&d)) as u64;
                let expect = if index == 1 { KummerType::Iso } else { KummerType::Kummer(index) };
                assert_eq!(kummer_type(&ctx, &s, &[0]).unwrap(), expect, "b = ({b1:?}, {a}/{d})");
            }
        }
    }
}

#[test]
fn random_fiber_probes_are_covered() {
    let ex = EllipticExtension::new(1);
    let fan = build_relcomplete_fan(&ex.two_weight_data()).unwrap();
    let mut r = rng(32);
    let probes: Vec<_> = (0..20).map(|_| random_fiber_probe(&mut r, &ex)).collect();
    for (p, rep) in probes.iter().zip(relative_completeness_probe(&fan, &probes)) {
        assert!(rep.covered, "{:?}: {:?}", p, rep.reason);
        assert!(!rep.pieces.is_empty());
    }
}

#[test]
fn query_lands_in_the_floor_cone() {
    let ex = EllipticExtension::new(1);
    let fan = build_relcomplete_fan(&ex.two_weight_data()).unwrap();
    for (num, den) in [(3, 2), (-7, 3), (5, 1), (0, 1)] {
        let p = fan.query(&ex.n_rational(&Rational::new(num, den))).unwrap().unwrap();
        assert_eq!(p.n, vec![BigInt::from(num).div_floor(&BigInt::from(den))]);
        assert_eq!(p.d, BigInt::from(1));
    }
    assert!(fan.query(&QMatrix::zeros(3, 3)).unwrap().is_none());
}
