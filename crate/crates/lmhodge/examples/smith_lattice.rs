//! Smith normal form, lattice membership and invariant ranks.

use lmhodge::corpus::triple_product_ops;
use lmhodge::exactlin::{invariants_rank, smith_form, LatticeSubgroup, QMatrix, Rational};

fn main() {
    let m = QMatrix::from_ints(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let s = smith_form(&m.to_integer().expect("integral"));
    println!("invariant factors: {:?}", s.divisors().iter().map(|d| d.to_string()).collect::<Vec<_>>());

    let l = LatticeSubgroup::new(3, m);
    println!("index in ℤ³: {:?}", l.index_in_standard().map(|d| d.to_string()));
    let v = [Rational::int(2), Rational::int(4), Rational::int(4)];
    println!("(2, 4, 4) ∈ L: {}", l.contains(&v));

    let ops = triple_product_ops();
    for k in 0..=3 {
        let gs: Vec<QMatrix> = ops[..k].iter().map(|n| n.exp_nilpotent()).collect();
        println!("invariants of {k} operators: rank {}", invariants_rank(&gs, 20, true).expect("commuting unipotents"));
    }
}
