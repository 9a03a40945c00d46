use lmhodge::exactlin::{
    invariants_rank, smith_form, LatticeSubgroup, QMatrix, QSubspace, Rational, ZMatrix,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

fn zmat(rows: usize, cols: usize, v: &[i64]) -> ZMatrix {
    ZMatrix::from_vec(rows, cols, v.iter().map(|&x| BigInt::from(x)).collect())
}

fn qmat(rows: usize, cols: usize, v: &[i64]) -> QMatrix {
    QMatrix::from_vec(rows, cols, v.iter().map(|&x| Rational::int(x)).collect())
}

fn matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-6i64..=6, r * c)))
}

/// Determinant of an integer matrix by cofactor expansion.
fn det_i(m: &[Vec<i64>]) -> i64 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det_i(&minor)
        })
        .sum()
}

/// gcd of all k×k minors.
fn minor_gcd(m: &[Vec<i64>], k: usize) -> i64 {
    let (r, c) = (m.len(), m[0].len());
    let mut g = 0i64;
    for rs in subsets(r, k) {
        for cs in subsets(c, k) {
            let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
            g = g.gcd(&det_i(&sub));
        }
    }
    g
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

fn span(dim: usize, vs: &[Vec<i64>]) -> QSubspace {
    QSubspace::span(dim, &vs.iter().map(|v| v.iter().map(|&x| Rational::int(x)).collect()).collect::<Vec<_>>())
}

proptest! {
    #[test]
    fn smith_factorizes_with_divisibility((r, c, v) in matrix()) {
        let a = zmat(r, c, &v);
        let s = smith_form(&a);
        prop_assert_eq!(s.u.mul(&s.d).mul(&s.v), a.clone());
        prop_assert!(s.u.mul(&s.u_inv).is_identity());
        prop_assert!(s.v.mul(&s.v_inv).is_identity());
        let d = s.divisors();
        for i in 0..r {
            for j in 0..c {
                prop_assert!(i == j || s.d.get(i, j).is_zero());
            }
        }
        for w in d.windows(2) {
            prop_assert!(w[0] >= BigInt::zero());
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
        // d₁⋯d_k is the gcd of the k×k minors.
        let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
        let mut prod = BigInt::from(1);
        for k in 1..=r.min(c) {
            prod *= &d[k - 1];
            prop_assert_eq!(prod.clone(), BigInt::from(minor_gcd(&rows, k)));
        }
    }

    #[test]
    fn subspace_dimension_law(
        a in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..4),
        b in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..4),
    ) {
        let (sa, sb) = (span(4, &a), span(4, &b));
        let sum = sa.sum(&sb);
        let meet = sa.intersect(&sb);
        prop_assert_eq!(sum.dim() + meet.dim(), sa.dim() + sb.dim());
        prop_assert!(sum.contains(&sa) && sum.contains(&sb));
        prop_assert!(sa.contains(&meet) && sb.contains(&meet));
        prop_assert_eq!(sa.annihilator().annihilator(), sa.clone());
    }

    #[test]
    fn kernel_is_annihilated((r, c, v) in matrix()) {
        let m = qmat(r, c, &v);
        let k = m.kernel();
        prop_assert_eq!(k.len() + m.rank(), c);
        for x in &k {
            prop_assert!(m.mul_vec(x).iter().all(|y| *y == Rational::int(0)));
        }
    }

    #[test]
    fn lattice_membership_matches_coefficients((r, c, v) in matrix(), probe in prop::collection::vec(-8i64..=8, 4)) {
        let l = LatticeSubgroup::new(c, qmat(r, c, &v));
        let x: Vec<Rational> = probe[..c].iter().map(|&t| Rational::int(t)).collect();
        match l.coefficients(&x) {
            Some(co) => {
                let g = l.generators();
                let mut y = vec![Rational::int(0); c];
                for (i, ci) in co.iter().enumerate() {
                    for j in 0..c {
                        y[j] = y[j].clone() + g.get(i, j).clone() * Rational::from_bigint(ci.clone());
                    }
                }
                prop_assert_eq!(y, x.clone());
                prop_assert!(l.contains(&x));
            }
            None => prop_assert!(!l.contains(&x)),
        }
        // every generator is a member
        for row in qmat(r, c, &v).row_vecs() {
            prop_assert!(l.contains(&row));
        }
    }
}

#[test]
fn invariants_of_commuting_shears() {
    let a = qmat(3, 3, &[1, 1, 0, 0, 1, 0, 0, 0, 1]);
    let b = qmat(3, 3, &[1, 0, 1, 0, 1, 0, 0, 0, 1]);
    assert_eq!(invariants_rank(&[a.clone()], 3, true).unwrap(), 2);
    assert_eq!(invariants_rank(&[a.clone(), b.clone()], 3, true).unwrap(), 1);
    assert!(invariants_rank(&[a, qmat(3, 3, &[1, 0, 0, 1, 1, 0, 0, 0, 1])], 3, true).is_err());
    assert!(invariants_rank(&[qmat(2, 2, &[2, 0, 0, 1])], 2, true).is_err());
}

#[test]
fn index_of_a_sublattice() {
    let l = LatticeSubgroup::new(2, qmat(2, 2, &[2, 0, 1, 3]));
    assert_eq!(l.index_in_standard(), Some(BigInt::from(6)));
}
