mod common;

use common::*;
use lmhodge::exactlin::{QMatrix, QSubspace};
use lmhodge::filtration::{graded_endomorphism, standard_filtration, FilteredNilp};
use lmhodge::monodromy::{relative_monodromy, successive_filtrations, weight_filtration, RmfVerdict};
use proptest::prelude::*;

#[test]
fn functoriality_on_random_jordan_pairs() {
    let t = functoriality(11, 110);
    assert!(t.clean(), "{:?}", t);
    assert!(t.checked >= 400);
}

#[test]
fn restriction_and_quotient() {
    let t = restriction(12, 60);
    assert!(t.clean(), "{:?}", t);
}

#[test]
fn kernel_inclusion() {
    let t = inclusion(13, 120);
    assert!(t.clean(), "{:?}", t);
}

#[test]
fn extension_instances_are_decided() {
    let mut r = rng(14);
    let mut seen = [0usize; 2];
    for _ in 0..80 {
        let x = extension_instance(&mut r, 6);
        match relative_monodromy(&x).verdict {
            RmfVerdict::Exists => seen[0] += 1,
            RmfVerdict::NotExists => seen[1] += 1,
            RmfVerdict::Undecided => panic!("undecided on {x:?}"),
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn two_dim_witness() {
    let x = FilteredNilp::new(standard_filtration(&[0, 1]), jordan(2)).unwrap();
    let r = relative_monodromy(&x);
    assert_eq!(r.verdict, RmfVerdict::NotExists);
    assert!(r.witness.unwrap().contains("M_1"));
}

/// h intertwining N between equal Jordan types in adjacent weights lowers W
/// by one, so it lowers M by one and gr^M(h) vanishes.
#[test]
fn lowering_operator_dies_on_graded_pieces() {
    let mut r = rng(15);
    for _ in 0..40 {
        use rand::Rng;
        let sizes: Vec<usize> = (0..r.gen_range(1..=2)).map(|_| r.gen_range(1..=3)).collect();
        let block = QMatrix::block_diag(&sizes.iter().map(|&k| jordan(k)).collect::<Vec<_>>());
        let d = block.rows();
        let a = r.gen_range(-2..=1);
        let weights: Vec<i64> = (0..2 * d).map(|i| if i < d { a } else { a + 1 }).collect();
        let n0 = QMatrix::block_diag(&[block.clone(), block.clone()]);
        let mut h0 = QMatrix::zeros(2 * d, 2 * d);
        h0.put_block(0, d, &QMatrix::identity(d));
        let g = w_unipotent(&mut r, &weights);
        let gi = g.inverse().unwrap();
        let (n, h) = (g.mul(&n0).mul(&gi), g.mul(&h0).mul(&gi));
        assert!(n.commutes(&h));
        let x = FilteredNilp::new(standard_filtration(&weights), n).unwrap();
        let m = relative_monodromy(&x).into_filtration().unwrap();
        assert!(graded_endomorphism(&m, &h).is_zero());
    }
}

#[test]
fn successive_filtrations_of_commuting_family() {
    let w = standard_filtration(&[-1, -1, 0]);
    let n1 = QMatrix::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
    let n2 = QMatrix::from_ints(&[&[0, 1, 1], &[0, 0, 0], &[0, 0, 0]]);
    let rs = successive_filtrations(&[n1, n2], &w).unwrap();
    assert!(rs.iter().all(|r| r.verdict == RmfVerdict::Exists));
    let e1 = QSubspace::span(3, &[vec![q(1), q(0), q(0)]]);
    assert_eq!(rs[1].filtration.as_ref().unwrap().get(-2), &e1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pure_case_is_the_weight_filtration(sizes in prop::collection::vec(1usize..4, 1..4), w in -3i64..3) {
        let n = QMatrix::block_diag(&sizes.iter().map(|&k| jordan(k)).collect::<Vec<_>>());
        let x = FilteredNilp::new(standard_filtration(&vec![w; n.rows()]), n.clone()).unwrap();
        let m = relative_monodromy(&x).into_filtration().unwrap();
        prop_assert_eq!(m, weight_filtration(&n, w).unwrap());
    }

    #[test]
    fn solver_matches_construction(seed in any::<u64>()) {
        let k = known_instance(&mut rng(seed), 7);
        let r = relative_monodromy(&k.x);
        prop_assert_eq!(r.verdict, RmfVerdict::Exists);
        prop_assert_eq!(r.filtration.unwrap(), k.m);
    }
}
