//! Subspaces of K^n stored by their canonical reduced echelon basis.

use serde::Serialize;

use super::matrix::Matrix;
use super::scalar::{Field, GaussRational, Rational};
use crate::error::{Error, Result};

/// Row span of `basis`, kept in reduced row echelon form with no zero rows,
/// so two subspaces are equal exactly when their bases are.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace<T> {
    dim: usize,
    basis: Matrix<T>,
    pivots: Vec<usize>,
}

pub type QSubspace = Subspace<Rational>;
pub type CSubspace = Subspace<GaussRational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceOp {
    Sum,
    Intersect,
}

impl<T: Field> Subspace<T> {
    pub fn zero(dim: usize) -> Self {
        Subspace { dim, basis: Matrix::zeros(0, dim), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Subspace { dim, basis: Matrix::identity(dim), pivots: (0..dim).collect() }
    }

    /// Span of the rows of `m`.
    pub fn row_span(m: &Matrix<T>) -> Self {
        let (mut r, pivots) = m.rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        let cols: Vec<usize> = (0..m.cols()).collect();
        r = r.submatrix(&keep, &cols);
        Subspace { dim: m.cols(), basis: r, pivots }
    }

    pub fn span(dim: usize, vectors: &[Vec<T>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(dim);
        }
        Self::row_span(&Matrix::from_rows(dim, vectors.to_vec()))
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &Matrix<T>) -> Self {
        Self::row_span(&m.transpose())
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.dim
    }
    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }
    pub fn basis_vectors(&self) -> Vec<Vec<T>> {
        self.basis.row_vecs()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::DimensionMismatch(format!("subspaces of K^{} and K^{}", self.dim, o.dim)));
        }
        Ok(())
    }

    pub fn sum(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "subspace ambient mismatch");
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        Self::row_span(&self.basis.vstack(&o.basis))
    }

    pub fn try_sum(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.sum(o))
    }

    /// Annihilator {x : b·x = 0 for all basis rows b}, as a subspace of the same K^n.
    pub fn annihilator(&self) -> Self {
        if self.is_zero() {
            return Self::full(self.dim);
        }
        Self::span(self.dim, &self.basis.kernel())
    }

    pub fn intersect(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "subspace ambient mismatch");
        if self.is_zero() || o.is_full() {
            return self.clone();
        }
        if o.is_zero() || self.is_full() {
            return o.clone();
        }
        // Vectors λ·A equal to μ·B: kernel of [A; -B]^T.
        let stacked = self.basis.vstack(&o.basis.neg()).transpose();
        let ker = stacked.kernel();
        let k = self.dim();
        let vecs: Vec<Vec<T>> = ker
            .iter()
            .map(|lm| {
                let lam = &lm[..k];
                let mut v = vec![T::zero(); self.dim];
                for (c, row) in lam.iter().zip(0..k) {
                    if c.is_zero() {
                        continue;
                    }
                    for (j, b) in self.basis.row(row).iter().enumerate() {
                        v[j] = v[j].clone() + &(c.clone() * b);
                    }
                }
                v
            })
            .collect();
        Self::span(self.dim, &vecs)
    }

    pub fn try_intersect(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.intersect(o))
    }

    pub fn op(&self, o: &Self, op: SubspaceOp) -> Result<Self> {
        match op {
            SubspaceOp::Sum => self.try_sum(o),
            SubspaceOp::Intersect => self.try_intersect(o),
        }
    }

    /// Reduce v by the echelon basis; the result is zero iff v lies in the span.
    pub fn reduce(&self, v: &[T]) -> Vec<T> {
        let mut v = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = v[p].clone();
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    v[j] = v[j].clone() - &(c.clone() * b);
                }
            }
        }
        v
    }

    pub fn contains_vec(&self, v: &[T]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains(&self, o: &Self) -> bool {
        assert_eq!(self.dim, o.dim, "subspace ambient mismatch");
        o.dim() <= self.dim() && (0..o.dim()).all(|i| self.contains_vec(o.basis.row(i)))
    }

    pub fn try_contains(&self, o: &Self) -> Result<bool> {
        self.check(o)?;
        Ok(self.contains(o))
    }

    /// Coordinates of v ∈ self in the echelon basis (read off at the pivots).
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T>> {
        if !self.contains_vec(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Image f(S) where f acts on column vectors.
    pub fn image(&self, f: &Matrix<T>) -> Self {
        assert_eq!(f.cols(), self.dim, "map does not act on this ambient space");
        if self.is_zero() {
            return Self::zero(f.rows());
        }
        Self::row_span(&self.basis.mul(&f.transpose()))
    }

    /// Preimage {x : f x ∈ S} for f : K^m → K^n and S ⊆ K^n.
    pub fn preimage(&self, f: &Matrix<T>) -> Self {
        assert_eq!(f.rows(), self.dim, "map does not land in this ambient space");
        if self.is_full() {
            return Self::full(f.cols());
        }
        let ann = self.annihilator();
        let cond = ann.basis.mul(f);
        Self::span(f.cols(), &cond.kernel())
    }

    pub fn try_image(&self, f: &Matrix<T>) -> Result<Self> {
        if f.cols() != self.dim {
            return Err(Error::DimensionMismatch(format!("map with {} columns on K^{}", f.cols(), self.dim)));
        }
        Ok(self.image(f))
    }

    pub fn try_preimage(&self, f: &Matrix<T>) -> Result<Self> {
        if f.rows() != self.dim {
            return Err(Error::DimensionMismatch(format!("map with {} rows into K^{}", f.rows(), self.dim)));
        }
        Ok(self.preimage(f))
    }

    pub fn conj(&self) -> Self {
        Self::row_span(&self.basis.conj())
    }

    /// Kernel of f as a subspace of its source.
    pub fn kernel_of(f: &Matrix<T>) -> Self {
        Self::zero(f.rows()).preimage(f)
    }

    /// Image of f (column span).
    pub fn image_of(f: &Matrix<T>) -> Self {
        Self::full(f.cols()).image(f)
    }

    /// Rows of the echelon basis of `self` whose pivots are not pivots of `sub`.
    /// For sub ⊆ self these are independent modulo `sub` and complete it to self.
    pub fn complement_rows(&self, sub: &Self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !sub.pivots.contains(&self.pivots[i])).collect()
    }
}

impl Subspace<Rational> {
    pub fn to_complex(&self) -> CSubspace {
        Subspace::row_span(&self.basis.to_complex())
    }
}

impl Subspace<GaussRational> {
    /// True when the subspace is stable under conjugation (defined over ℚ).
    pub fn is_real(&self) -> bool {
        self.basis.is_real()
    }
    pub fn real_points(&self) -> QSubspace {
        // S ∩ conj(S) is conjugation-stable; its real and imaginary parts span its real form.
        let s = self.intersect(&self.conj());
        let mut vecs = Vec::new();
        for v in s.basis_vectors() {
            vecs.push(v.iter().map(|z| z.re.clone()).collect::<Vec<_>>());
            vecs.push(v.iter().map(|z| z.im.clone()).collect::<Vec<_>>());
        }
        QSubspace::span(self.dim, &vecs)
    }
}

impl<T: Field + Serialize> Serialize for Subspace<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis.serialize(s)
    }
}

impl<T: Field> Subspace<T> {
    /// Build from a deserialized basis matrix, fixing the ambient dimension.
    pub fn from_basis(dim: usize, m: Matrix<T>) -> Result<Self> {
        let m = m.with_cols(dim);
        if m.cols() != dim {
            return Err(Error::Format(format!("basis rows have length {} but ambient dimension is {dim}", m.cols())));
        }
        Ok(Self::row_span(&m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::QMatrix;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::int(x)).collect()
    }

    #[test]
    fn distinct_lines_meet_in_zero() {
        let a = QSubspace::span(2, &[q(&[1, 0])]);
        let b = QSubspace::span(2, &[q(&[1, 1])]);
        assert!(a.intersect(&b).is_zero());
        assert!(a.sum(&b).is_full());
    }

    #[test]
    fn preimage_of_line() {
        let n = QMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        let e1 = QSubspace::span(2, &[q(&[1, 0])]);
        assert_eq!(QSubspace::zero(2).preimage(&n), e1);
        assert!(e1.preimage(&n).is_full());
        assert_eq!(QSubspace::full(2).image(&n), e1);
    }
}
