//! Dense row-major matrices over an exact ring.

use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, DeserializeOwned};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::{Field, GaussRational, Rational, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type QMatrix = Matrix<Rational>;
pub type CMatrix = Matrix<GaussRational>;
pub type ZMatrix = Matrix<BigInt>;

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

impl<T> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        Matrix { rows, cols, data }
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn data(&self) -> &[T] {
        &self.data
    }
    pub fn into_data(self) -> Vec<T> {
        self.data
    }
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }
    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: rows.len(), cols: cols.len(), data }
    }
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut data = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for i in 0..self.rows {
            data.extend(self.row(i).iter().cloned());
            data.extend(other.row(i).iter().cloned());
        }
        Matrix { rows: self.rows, cols: self.cols + other.cols, data }
    }
    /// Column vectors as a matrix (each vector becomes a column).
    pub fn from_cols(rows: usize, cols: &[Vec<T>]) -> Self {
        Matrix::from_rows(rows, cols.to_vec()).transpose_with_rows(rows)
    }
    fn transpose_with_rows(self, rows: usize) -> Self {
        if self.rows == 0 {
            return Matrix { rows, cols: 0, data: Vec::new() };
        }
        self.transpose()
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    let cur = std::mem::replace(&mut out.data[idx], T::zero());
                    out.data[idx] = cur + &(a.clone() * b);
                }
            }
        }
        out
    }
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + &(a.clone() * b);
                    }
                }
                acc
            })
            .collect()
    }
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sum shape mismatch");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix difference shape mismatch");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }
    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c)
    }
    pub fn pow(&self, e: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
    /// Commutator AB − BA.
    pub fn bracket(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }
    pub fn commutes(&self, o: &Self) -> bool {
        self.mul(o) == o.mul(self)
    }
    /// Kronecker product; the basis of the product is indexed by i·dim(o) + j.
    pub fn kron(&self, o: &Self) -> Self {
        let rows = self.rows * o.rows;
        let cols = self.cols * o.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        out.set(i * o.rows + k, j * o.cols + l, a.clone() * o.get(k, l));
                    }
                }
            }
        }
        out
    }
    pub fn block_diag(blocks: &[Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }
    /// Copy `block` into self at offset (r0, c0).
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }
    /// Smallest k with self^k = 0, or None when the matrix is not nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        assert!(self.is_square());
        let n = self.rows;
        let mut p = Self::identity(n);
        for k in 0..=n {
            if p.is_zero() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }
    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index().is_some()
    }
}

impl<T: Field> Matrix<T> {
    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.get(r, c).inv();
            for j in c..cols {
                let v = self.get(r, j).clone();
                if !v.is_zero() {
                    self.set(r, j, v * &inv);
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let b = self.get(r, j).clone();
                    if b.is_zero() {
                        continue;
                    }
                    let cur = self.get(i, j).clone();
                    self.set(i, j, cur - &(f.clone() * &b));
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.data.truncate(rows * cols);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of {x : A x = 0} as column vectors, one per free column, in RREF order.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let (r, piv) = self.rref();
        let mut is_piv = vec![false; self.cols];
        for &p in &piv {
            is_piv[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_piv[c]) {
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (i, &p) in piv.iter().enumerate() {
                v[p] = -r.get(i, free).clone();
            }
            out.push(v);
        }
        out
    }

    /// Some solution x of A x = b, or None.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let aug = self.hstack(&Matrix::from_vec(self.rows, 1, b.to_vec()));
        let (r, piv) = aug.rref();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (i, &p) in piv.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n));
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(r.submatrix(&rows, &cols))
    }

    pub fn det(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return T::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = det * &piv;
            let inv = piv.inv();
            for i in c + 1..n {
                let f = m.get(i, c).clone() * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j).clone() - &(f.clone() * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// exp of a nilpotent matrix as the finite series Σ A^k / k!.
    pub fn exp_nilpotent(&self) -> Self {
        let k = self.nilpotency_index().expect("exp_nilpotent needs a nilpotent matrix");
        let n = self.rows;
        let mut acc = Self::identity(n);
        let mut term = Self::identity(n);
        for j in 1..k.max(1) {
            let inv_j = T::from_rational(&Rational::new(1, j as i64));
            term = term.mul(self).scale(&inv_j);
            acc = acc.add(&term);
        }
        acc
    }

    /// log of a unipotent matrix as the finite series Σ (−1)^{k+1} (g−1)^k / k.
    pub fn log_unipotent(&self) -> Option<Self> {
        let n = self.rows;
        let u = self.sub(&Self::identity(n));
        let k = u.nilpotency_index()?;
        let mut acc = Self::zeros(n, n);
        let mut p = Self::identity(n);
        for j in 1..k.max(1) {
            p = p.mul(&u);
            let c = Rational::new(if j % 2 == 1 { 1 } else { -1 }, j as i64);
            acc = acc.add(&p.scale(&T::from_rational(&c)));
        }
        Some(acc)
    }
}

impl QMatrix {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| Rational::int(x)).collect()).collect())
    }
    pub fn to_complex(&self) -> CMatrix {
        self.map(|q| GaussRational::real(q.clone()))
    }
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|q| q.is_integer())
    }
    pub fn to_integer(&self) -> Option<ZMatrix> {
        if !self.is_integral() {
            return None;
        }
        Some(self.map(|q| q.numer().clone()))
    }
    /// The elementary matrix with a single 1 at (i, j).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(i, j, Rational::int(1));
        m
    }
}

impl CMatrix {
    pub fn real_part(&self) -> QMatrix {
        self.map(|z| z.re.clone())
    }
    pub fn imag_part(&self) -> QMatrix {
        self.map(|z| z.im.clone())
    }
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.is_real())
    }
}

impl ZMatrix {
    pub fn to_rational(&self) -> QMatrix {
        self.map(|z| Rational::from_bigint(z.clone()))
    }
}

impl<T: Serialize> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<&[T]> = (0..self.rows).map(|i| self.row(i)).collect();
        rows.serialize(s)
    }
}

/// Matrices deserialize from nested row arrays. A matrix with no rows has no
/// recorded width; callers that know the ambient dimension fix it with
/// [`Matrix::with_cols`].
impl<'de, T: DeserializeOwned + Clone> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<T>> = Vec::deserialize(d)?;
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(de::Error::custom("ragged matrix rows"));
        }
        Ok(Matrix::from_rows(cols, rows))
    }
}

impl<T> Matrix<T> {
    /// Set the column count of an empty (zero-row) matrix.
    pub fn with_cols(mut self, cols: usize) -> Self {
        if self.rows == 0 {
            self.cols = cols;
        }
        self
    }
}

/// Flatten a square matrix row-major into a vector.
pub fn flatten<T: Clone>(m: &Matrix<T>) -> Vec<T> {
    m.data().to_vec()
}

pub fn unflatten<T: Clone>(n: usize, v: &[T]) -> Matrix<T> {
    Matrix::from_vec(n, n, v.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let a = QMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(a.det(), Rational::int(1));
    }

    #[test]
    fn exp_log_roundtrip() {
        let n = QMatrix::from_ints(&[&[0, 1, 2], &[0, 0, 3], &[0, 0, 0]]);
        let g = n.exp_nilpotent();
        assert_eq!(g.log_unipotent().unwrap(), n);
    }

    #[test]
    fn kernel_of_jordan_block() {
        let n = QMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(n.kernel(), vec![vec![Rational::int(1), Rational::int(0)]]);
    }
}
