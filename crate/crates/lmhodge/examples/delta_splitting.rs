//! The δ-splitting of the extension of ℤ by ℤ(1) at a few points.

use lmhodge::corpus::{sample_points, TateExtension};
use lmhodge::hodge::delta_splitting;

fn main() {
    let ex = TateExtension::new();
    for z in sample_points() {
        let d = delta_splitting(ex.frame.w(), &ex.flag(&z)).expect("mixed Hodge structure");
        assert!(d.reconstruct() == ex.flag(&z));
        println!("z = {z:?}\n  s′ = {:?}\n  δ = {:?}", d.splitting.row_vecs(), d.delta.row_vecs());
    }
}
