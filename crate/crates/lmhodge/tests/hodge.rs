mod common;

use common::*;
use lmhodge::corpus::{sample_points, TateExtension};
use lmhodge::exactlin::{GaussRational, QMatrix, Ring};
use lmhodge::hodge::{bigrading_conjugation_ok, bigrading_reconstructs, deligne_bigrading, delta_splitting, is_mhs, is_r_split};

#[test]
fn delta_splitting_reconstructs_random_structures() {
    let t = delta_reconstruction(21, 50);
    assert!(t.clean(), "{:?}", t.failures);
    assert!(t.checked >= 200);
}

#[test]
fn delta_shifts_by_the_imaginary_part() {
    let t = shift_law();
    assert!(t.clean(), "{:?}", t.failures);
    assert!(t.checked > 0);
}

#[test]
fn bigrading_of_random_structures() {
    let mut r = rng(22);
    for _ in 0..20 {
        let (w, f) = random_mhs(&mut r);
        let b = deligne_bigrading(&w, &f).unwrap();
        assert!(bigrading_reconstructs(&b, &w.to_complex(), &f));
        assert!(bigrading_conjugation_ok(&b));
    }
}

#[test]
fn tate_extension_is_split_only_on_the_real_axis() {
    let ex = TateExtension::new();
    let w = ex.frame.w().clone();
    for z in sample_points() {
        let f = ex.flag(&z);
        assert!(is_mhs(&w, &f).unwrap());
        let b = deligne_bigrading(&w, &f).unwrap();
        assert_eq!(is_r_split(&b), z.im == GaussRational::zero().im, "z = {z:?}");
        let d = delta_splitting(&w, &f).unwrap();
        assert_eq!(d.delta, ex.n.scale(&z.im));
        assert_eq!(d.splitting, QMatrix::identity(2).add(&ex.n.scale(&z.re)));
    }
}
