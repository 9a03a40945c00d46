//! Direct sum, tensor product and Hom of filtered nilpotent objects.
//!
//! Index conventions: V₁ ⊕ V₂ puts V₁ first; V₁ ⊗ V₂ uses e_i ⊗ f_j ↦ i·n₂ + j;
//! Hom(V₁, V₂) stores f as an n₂ × n₁ matrix flattened row-major.

use super::{FilteredNilp, QFiltration};
use crate::error::Result;
use crate::exactlin::{QMatrix, QSubspace, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CombineOp {
    DirectSum,
    Tensor,
    Hom,
}

pub fn direct_sum_op(a: &QMatrix, b: &QMatrix) -> QMatrix {
    QMatrix::block_diag(&[a.clone(), b.clone()])
}

pub fn tensor_op(a: &QMatrix, b: &QMatrix) -> QMatrix {
    a.kron(&QMatrix::identity(b.rows())).add(&QMatrix::identity(a.rows()).kron(b))
}

/// f ↦ b·f − f·a on Hom(V₁, V₂), where a acts on V₁ and b on V₂.
pub fn hom_op(a: &QMatrix, b: &QMatrix) -> QMatrix {
    b.kron(&QMatrix::identity(a.rows())).sub(&QMatrix::identity(b.rows()).kron(&a.transpose()))
}

fn pad(v: &[Rational], before: usize, after: usize) -> Vec<Rational> {
    let mut out = vec![Rational::int(0); before];
    out.extend(v.iter().cloned());
    out.extend(std::iter::repeat(Rational::int(0)).take(after));
    out
}

pub fn direct_sum_filtration(a: &QFiltration, b: &QFiltration) -> QFiltration {
    let (na, nb) = (a.dim(), b.dim());
    let (lo, hi) = a.joint_window(b);
    QFiltration::from_fn(na + nb, lo, hi, |k| {
        let mut vecs: Vec<Vec<Rational>> = a.get(k).basis_vectors().iter().map(|v| pad(v, 0, nb)).collect();
        vecs.extend(b.get(k).basis_vectors().iter().map(|v| pad(v, na, 0)));
        QSubspace::span(na + nb, &vecs)
    })
    .unwrap()
}

fn kron_vec(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            out.push(a.clone() * b);
        }
    }
    out
}

pub fn tensor_filtration(a: &QFiltration, b: &QFiltration) -> QFiltration {
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    let lo = a.lo() + b.lo();
    let hi = a.hi() + b.hi();
    QFiltration::from_fn(n, lo, hi, |w| {
        let mut vecs = Vec::new();
        for j in a.lo()..=a.hi() {
            let wa = a.get(j);
            let wb = b.get(w - j);
            for x in wa.basis_vectors() {
                for y in wb.basis_vectors() {
                    vecs.push(kron_vec(&x, &y));
                }
            }
        }
        QSubspace::span(n, &vecs)
    })
    .unwrap()
}

/// W_w Hom = {f : f(W_k V₁) ⊆ W_{k+w} V₂ for all k}.
pub fn hom_filtration(a: &QFiltration, b: &QFiltration) -> QFiltration {
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    let lo = b.lo() - a.hi();
    let hi = b.hi() - a.lo();
    QFiltration::from_fn(n, lo, hi, |w| {
        let mut conds = Vec::new();
        for k in a.lo()..=a.hi() {
            let ann = b.get(k + w).annihilator();
            if ann.is_zero() {
                continue;
            }
            for beta in a.get(k).basis_vectors() {
                for alpha in ann.basis_vectors() {
                    conds.push(kron_vec(&alpha, &beta));
                }
            }
        }
        QSubspace::span(n, &conds).annihilator()
    })
    .unwrap()
}

pub fn combine(a: &FilteredNilp, b: &FilteredNilp, op: CombineOp) -> Result<FilteredNilp> {
    match op {
        CombineOp::DirectSum => FilteredNilp::new(direct_sum_filtration(&a.w, &b.w), direct_sum_op(&a.n, &b.n)),
        CombineOp::Tensor => FilteredNilp::new(tensor_filtration(&a.w, &b.w), tensor_op(&a.n, &b.n)),
        CombineOp::Hom => FilteredNilp::new(hom_filtration(&a.w, &b.w), hom_op(&a.n, &b.n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::qv;

    #[test]
    fn hom_op_matches_matrix_formula() {
        let a = QMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        let b = QMatrix::from_ints(&[&[0, 2, 0], &[0, 0, 1], &[0, 0, 0]]);
        let f = QMatrix::from_vec(3, 2, qv(&[1, 2, 3, 4, 5, 6]));
        let direct = b.mul(&f).sub(&f.mul(&a));
        assert_eq!(hom_op(&a, &b).mul_vec(f.data()), direct.data().to_vec());
    }
}
