//! Sub-quotients A/B of K^n in coordinates given by an echelon lift.

use super::IncFiltration;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace};

/// A/B for B ⊆ A ⊆ K^n. Coordinates on A/B come from the lift vectors: the
/// rows of A's echelon basis whose pivot columns are not pivots of B.
#[derive(Clone, Debug)]
pub struct SubQuotient<T: Field> {
    sub: Subspace<T>,
    quot: Subspace<T>,
    lift_rows: Vec<usize>,
}

impl<T: Field> SubQuotient<T> {
    pub fn new(sub: Subspace<T>, quot: Subspace<T>) -> Self {
        assert!(sub.contains(&quot), "sub-quotient needs B ⊆ A");
        let lift_rows = sub.complement_rows(&quot);
        SubQuotient { sub, quot, lift_rows }
    }
    pub fn ambient_dim(&self) -> usize {
        self.sub.ambient_dim()
    }
    pub fn dim(&self) -> usize {
        self.lift_rows.len()
    }
    pub fn sub(&self) -> &Subspace<T> {
        &self.sub
    }
    pub fn quot(&self) -> &Subspace<T> {
        &self.quot
    }
    /// Lift of the i-th coordinate vector.
    pub fn lift_vector(&self, i: usize) -> Vec<T> {
        self.sub.basis().row(self.lift_rows[i]).to_vec()
    }
    /// The lift vectors as columns of an n × dim matrix.
    pub fn lift_matrix(&self) -> Matrix<T> {
        let cols: Vec<Vec<T>> = (0..self.dim()).map(|i| self.lift_vector(i)).collect();
        Matrix::from_cols(self.ambient_dim(), &cols)
    }
    pub fn lift(&self, coords: &[T]) -> Vec<T> {
        let mut v = vec![T::zero(); self.ambient_dim()];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, x) in self.sub.basis().row(self.lift_rows[i]).iter().enumerate() {
                v[j] = v[j].clone() + &(c.clone() * x);
            }
        }
        v
    }
    /// Coordinates of the class of v ∈ A.
    pub fn project(&self, v: &[T]) -> Vec<T> {
        debug_assert!(self.sub.contains_vec(v), "projected vector is not in A");
        let r = self.quot.reduce(v);
        let piv = self.sub.pivots();
        self.lift_rows.iter().map(|&i| r[piv[i]].clone()).collect()
    }
    /// Image in A/B of S ∩ A.
    pub fn induced_subspace(&self, s: &Subspace<T>) -> Subspace<T> {
        let meet = s.intersect(&self.sub);
        let vecs: Vec<Vec<T>> = meet.basis_vectors().iter().map(|v| self.project(v)).collect();
        Subspace::span(self.dim(), &vecs)
    }
    /// Preimage in A of a subspace of A/B (always contains B).
    pub fn pull_back(&self, s: &Subspace<T>) -> Subspace<T> {
        let vecs: Vec<Vec<T>> = s.basis_vectors().iter().map(|c| self.lift(c)).collect();
        Subspace::span(self.ambient_dim(), &vecs).sum(&self.quot)
    }
    /// Induced endomorphism of A/B; requires f(A) ⊆ A and f(B) ⊆ B.
    pub fn induced_map(&self, f: &Matrix<T>) -> Matrix<T> {
        let cols: Vec<Vec<T>> = (0..self.dim()).map(|i| self.project(&f.mul_vec(&self.lift_vector(i)))).collect();
        Matrix::from_cols(self.dim(), &cols)
    }
    pub fn preserves(&self, f: &Matrix<T>) -> bool {
        self.sub.contains(&self.sub.image(f)) && self.quot.contains(&self.quot.image(f))
    }
    /// Filtration induced on A/B by an increasing filtration of the ambient space.
    pub fn induced_filtration(&self, m: &IncFiltration<T>) -> IncFiltration<T> {
        IncFiltration::new(self.dim(), m.lo(), (m.lo()..=m.hi()).map(|k| self.induced_subspace(m.get(k))).collect())
            .expect("induced filtration is a filtration")
    }
}

/// gr_w = W_w / W_{w-1} with its echelon lift.
pub fn graded_piece<T: Field>(w: &IncFiltration<T>, k: i64) -> SubQuotient<T> {
    SubQuotient::new(w.get(k).clone(), w.get(k - 1).clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InduceMode {
    /// M on W_a (intersection).
    RestrictTo(i64),
    /// M on V / W_a (image).
    QuotientBy(i64),
    /// M on gr^W_w.
    OnGraded(i64),
}

/// Filtration induced by M on a sub-quotient cut out by W.
pub fn induced_on_sub_quot<T: Field>(
    w: &IncFiltration<T>,
    m: &IncFiltration<T>,
    mode: InduceMode,
) -> Result<IncFiltration<T>> {
    if w.dim() != m.dim() {
        return Err(Error::DimensionMismatch(format!("W on K^{} and M on K^{}", w.dim(), m.dim())));
    }
    let n = w.dim();
    let sq = match mode {
        InduceMode::RestrictTo(a) => SubQuotient::new(w.get(a).clone(), Subspace::zero(n)),
        InduceMode::QuotientBy(a) => SubQuotient::new(Subspace::full(n), w.get(a).clone()),
        InduceMode::OnGraded(k) => graded_piece(w, k),
    };
    Ok(sq.induced_filtration(m))
}

/// gr^W(f) as a block-diagonal matrix on ⊕_w gr_w (weights increasing,
/// echelon-lift coordinates on each piece). f must preserve W.
pub fn graded_endomorphism<T: Field>(w: &IncFiltration<T>, f: &Matrix<T>) -> Matrix<T> {
    let blocks: Vec<Matrix<T>> = (w.lo()..=w.hi())
        .filter(|&k| w.gr_dim(k) > 0)
        .map(|k| graded_piece(w, k).induced_map(f))
        .collect();
    Matrix::block_diag(&blocks)
}
