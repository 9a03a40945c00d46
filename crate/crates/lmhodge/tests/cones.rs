mod common;

use common::*;
use lmhodge::cones::{Cone, PolyCone};
use lmhodge::corpus::ProductExtension;
use lmhodge::exactlin::Rational;
use proptest::prelude::*;

fn pc(dim: usize, gens: &[Vec<i64>]) -> PolyCone {
    PolyCone::new(dim, &gens.iter().map(|g| g.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>()).unwrap()
}

/// Sharp cones in the open half-space x₀ > 0.
fn sharp_cone() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((1i64..=4, -4i64..=4, -4i64..=4), 1..=5).prop_map(|v| v.into_iter().map(|(a, b, c)| vec![a, b, c]).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn face_lattice_is_closed(g in sharp_cone()) {
        let c = pc(3, &g);
        prop_assert!(c.is_sharp());
        let faces = c.faces();
        for f in &faces {
            prop_assert!(f.is_face_of(&c).unwrap());
            for h in &faces {
                let m = f.intersect(h).unwrap();
                prop_assert!(faces.iter().any(|x| x.same_cone(&m)));
            }
        }
        prop_assert!(faces.iter().any(|f| f.is_zero()));
        prop_assert!(faces.iter().any(|f| f.same_cone(&c)));
    }

    #[test]
    fn intersection_is_the_largest_common_subcone(a in sharp_cone(), b in sharp_cone()) {
        let (ca, cb) = (pc(3, &a), pc(3, &b));
        let m = ca.intersect(&cb).unwrap();
        prop_assert!(ca.contains_cone(&m) && cb.contains_cone(&m));
        // Lattice points of a box in both cones lie in the meet.
        for x in 0..=3i64 {
            for y in -3..=3i64 {
                for z in -3..=3i64 {
                    let v = vec![q(x), q(y), q(z)];
                    prop_assert_eq!(ca.contains(&v) && cb.contains(&v), m.contains(&v));
                }
            }
        }
    }

    #[test]
    fn canonical_is_a_cone_invariant(g in sharp_cone(), scale in 1i64..=5) {
        let c = pc(3, &g);
        let mut h: Vec<Vec<i64>> = g.iter().rev().map(|v| v.iter().map(|x| x * scale).collect()).collect();
        h.push(g.iter().fold(vec![0; 3], |acc, v| acc.iter().zip(v).map(|(a, b)| a + b).collect()));
        let d = pc(3, &h);
        prop_assert_eq!(c.canonical_rays(), d.canonical_rays());
        let p = c.interior_point();
        prop_assert!(c.contains(&p));
        prop_assert!(c.smallest_face(&p).unwrap().same_cone(&c));
    }
}

#[test]
fn product_meet_is_the_diagonal_ray() {
    let ex = ProductExtension::new();
    let tau = ex.tau();
    let moved = tau.ad(&ex.gamma(1, 1)).unwrap();
    let meet = tau.intersect(&moved).unwrap();
    assert!(meet.same_cone(&Cone::ray(&ex.n1.add(&ex.n2)).unwrap()));
    assert!(!meet.is_face_of(&tau).unwrap());
    assert!(tau.relative_interiors_meet(&moved).unwrap());
}

#[test]
fn nonsharp_cone_is_flagged() {
    let c = pc(2, &[vec![1, 0], vec![-1, 0], vec![0, 1]]);
    assert!(!c.is_sharp());
    assert_eq!(c.rank(), 2);
    let half = Rational::new(1, 2);
    assert!(c.contains(&[-half, q(3)]));
}
