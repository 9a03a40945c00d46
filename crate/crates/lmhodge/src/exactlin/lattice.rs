//! Integer lattices: Smith and Hermite normal forms, lattice membership,
//! integer kernels, and invariant ranks of commuting operators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{QMatrix, ZMatrix};
use super::scalar::{common_denominator, Rational};
use super::subspace::QSubspace;
use crate::error::{Error, Result};

/// m = U·D·V with U, V unimodular and D diagonal with d₁ | d₂ | …
/// `u_inv` and `v_inv` are the inverses, kept because kernels and membership
/// tests read them off directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: ZMatrix,
    pub d: ZMatrix,
    pub v: ZMatrix,
    pub u_inv: ZMatrix,
    pub v_inv: ZMatrix,
}

impl Smith {
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }
    pub fn rank(&self) -> usize {
        self.divisors().iter().filter(|d| !d.is_zero()).count()
    }
}

struct SmithState {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

fn ident(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn to_z(rows: usize, cols: usize, a: Vec<Vec<BigInt>>) -> ZMatrix {
    ZMatrix::from_vec(rows, cols, a.into_iter().flatten().collect())
}

impl SmithState {
    // Invariant: original = u · a · v, with u_inv · u = 1 and v · v_inv = 1.
    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u_inv.swap(i, j);
        for row in &mut self.u {
            row.swap(i, j);
        }
    }
    /// row_i += c · row_j
    fn row_add(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.a[0].len() {
            let t = &self.a[j][k] * c;
            self.a[i][k] += t;
        }
        for k in 0..self.u_inv[0].len() {
            let t = &self.u_inv[j][k] * c;
            self.u_inv[i][k] += t;
        }
        for row in &mut self.u {
            let t = &row[i] * c;
            row[j] -= t;
        }
    }
    fn row_neg(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -x.clone();
        }
        for x in &mut self.u_inv[i] {
            *x = -x.clone();
        }
        for row in &mut self.u {
            row[i] = -row[i].clone();
        }
    }
    fn col_swap(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        for row in &mut self.v_inv {
            row.swap(i, j);
        }
        self.v.swap(i, j);
    }
    /// col_i += c · col_j
    fn col_add(&mut self, i: usize, j: usize, c: &BigInt) {
        for row in &mut self.a {
            let t = &row[j] * c;
            row[i] += t;
        }
        for row in &mut self.v_inv {
            let t = &row[j] * c;
            row[i] += t;
        }
        let n = self.v[0].len();
        for k in 0..n {
            let t = &self.v[i][k] * c;
            self.v[j][k] -= t;
        }
    }
}

/// Smith normal form of an integer matrix (deterministic pivoting).
pub fn smith_form(m: &ZMatrix) -> Smith {
    let (r, c) = (m.rows(), m.cols());
    let mut s = SmithState {
        a: (0..r).map(|i| m.row(i).to_vec()).collect(),
        u: ident(r),
        u_inv: ident(r),
        v: ident(c),
        v_inv: ident(c),
    };
    if r > 0 && c > 0 {
        for t in 0..r.min(c) {
            // Smallest nonzero entry in the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if !s.a[i][j].is_zero() && best.map_or(true, |(bi, bj)| s.a[i][j].abs() < s.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            if bi != t {
                s.row_swap(bi, t);
            }
            if bj != t {
                s.col_swap(bj, t);
            }
            loop {
                let mut dirty = false;
                for i in t + 1..r {
                    if s.a[i][t].is_zero() {
                        continue;
                    }
                    let q = s.a[i][t].div_floor(&s.a[t][t]);
                    s.row_add(i, t, &-q);
                    if !s.a[i][t].is_zero() {
                        s.row_swap(i, t);
                        dirty = true;
                    }
                }
                for j in t + 1..c {
                    if s.a[t][j].is_zero() {
                        continue;
                    }
                    let q = s.a[t][j].div_floor(&s.a[t][t]);
                    s.col_add(j, t, &-q);
                    if !s.a[t][j].is_zero() {
                        s.col_swap(j, t);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // Enforce divisibility of the trailing block by the pivot.
                let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !(&s.a[i][j] % &s.a[t][t]).is_zero()));
                match bad {
                    Some(i) => s.row_add(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if s.a[t][t].is_negative() {
                s.row_neg(t);
            }
        }
    }
    Smith {
        d: to_z(r, c, s.a),
        u: to_z(r, r, s.u),
        u_inv: to_z(r, r, s.u_inv),
        v: to_z(c, c, s.v),
        v_inv: to_z(c, c, s.v_inv),
    }
}

/// Row-style Hermite normal form: the nonzero rows form a canonical basis of
/// the lattice spanned by the rows of m.
pub fn hermite_rows(m: &ZMatrix) -> ZMatrix {
    let (r, c) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..r).map(|i| m.row(i).to_vec()).collect();
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        // Euclid down the column until only one nonzero entry remains at `row`.
        loop {
            let nz: Vec<usize> = (row..r).filter(|&i| !a[i][col].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by(|&&x, &&y| a[x][col].abs().cmp(&a[y][col].abs()).then(x.cmp(&y))).unwrap();
            a.swap(p, row);
            let mut done = true;
            for i in row + 1..r {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[row][col]);
                for k in 0..c {
                    let t = &a[row][k] * &q;
                    a[i][k] -= t;
                }
                if !a[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[row][col].is_zero() {
            continue;
        }
        if a[row][col].is_negative() {
            for x in &mut a[row] {
                *x = -x.clone();
            }
        }
        for i in 0..row {
            let q = a[i][col].div_floor(&a[row][col]);
            if q.is_zero() {
                continue;
            }
            for k in 0..c {
                let t = &a[row][k] * &q;
                a[i][k] -= t;
            }
        }
        row += 1;
    }
    a.truncate(row);
    ZMatrix::from_rows(c, a)
}

/// Integer vectors k with k·C = 0, as the rows of a basis matrix.
pub fn integer_left_kernel(c: &ZMatrix) -> ZMatrix {
    let s = smith_form(c);
    let rank = s.rank();
    let rows: Vec<Vec<BigInt>> = (rank..c.rows()).map(|i| s.u_inv.row(i).to_vec()).collect();
    hermite_rows(&ZMatrix::from_rows(c.rows(), rows))
}

/// Scale a rational matrix column-wise to an integer matrix with the same
/// integer left kernel.
pub fn integralize_columns(m: &QMatrix) -> ZMatrix {
    let mut out = ZMatrix::zeros(m.rows(), m.cols());
    for j in 0..m.cols() {
        let col = m.col(j);
        let d = common_denominator(&col);
        for (i, q) in col.iter().enumerate() {
            out.set(i, j, (q.numer() * &d) / q.denom());
        }
    }
    out
}

/// A finitely generated subgroup of ℚ^n given by generator rows, with its
/// Smith data cached.
#[derive(Clone, Debug)]
pub struct LatticeSubgroup {
    ambient_rank: usize,
    generators: QMatrix,
    denom: BigInt,
    smith: Smith,
}

impl LatticeSubgroup {
    pub fn new(ambient_rank: usize, generators: QMatrix) -> Self {
        let generators = generators.with_cols(ambient_rank);
        assert_eq!(generators.cols(), ambient_rank);
        let denom = common_denominator(generators.data());
        let scaled = generators.map(|q| (q.numer() * &denom) / q.denom());
        let smith = smith_form(&scaled);
        LatticeSubgroup { ambient_rank, generators, denom, smith }
    }
    pub fn standard(n: usize) -> Self {
        Self::new(n, QMatrix::identity(n))
    }
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }
    pub fn generators(&self) -> &QMatrix {
        &self.generators
    }
    pub fn smith(&self) -> &Smith {
        &self.smith
    }
    pub fn rank(&self) -> usize {
        self.smith.rank()
    }
    /// Canonical basis (Hermite rows of the scaled generators, rescaled).
    pub fn basis(&self) -> QMatrix {
        let scaled = self.generators.map(|q| (q.numer() * &self.denom) / q.denom());
        let h = hermite_rows(&scaled);
        let d = Rational::from_bigint(self.denom.clone());
        h.map(|z| Rational::from_bigint(z.clone()) / &d)
    }
    /// Integer coefficients k with k·generators = v, when they exist.
    pub fn coefficients(&self, v: &[Rational]) -> Option<Vec<BigInt>> {
        let d = Rational::from_bigint(self.denom.clone());
        let w: Vec<Rational> = v.iter().map(|x| x.clone() * &d).collect();
        // k·U·D·V = w  ⇔  (k·U)·D = w·V⁻¹.
        let vinv = self.smith.v_inv.to_rational();
        let wv: Vec<Rational> = (0..self.ambient_rank)
            .map(|j| w.iter().enumerate().fold(Rational::int(0), |acc, (i, x)| acc + &(x.clone() * vinv.get(i, j))))
            .collect();
        let g = self.generators.rows();
        let mut t = vec![BigInt::zero(); g];
        for (j, x) in wv.iter().enumerate() {
            let dj = if j < g { self.smith.d.get(j, j).clone() } else { BigInt::zero() };
            if dj.is_zero() {
                if x.signum() != 0 {
                    return None;
                }
                continue;
            }
            let q = x.clone() / &Rational::from_bigint(dj);
            if !q.is_integer() {
                return None;
            }
            t[j] = q.numer().clone();
        }
        // k = t·U⁻¹
        let uinv = &self.smith.u_inv;
        Some((0..g).map(|j| (0..g).fold(BigInt::zero(), |acc, i| acc + &t[i] * uinv.get(i, j))).collect())
    }
    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coefficients(v).is_some()
    }
    /// Index in ℤ^n for full-rank integer lattices.
    pub fn index_in_standard(&self) -> Option<BigInt> {
        if self.rank() < self.ambient_rank {
            return None;
        }
        let prod = self.smith.divisors().iter().fold(BigInt::one(), |a, d| a * d);
        let den = self.denom.pow(self.ambient_rank as u32);
        let (q, r) = prod.div_rem(&den);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
}

/// Rank over ℚ of ∩_g ker(g − 1).
pub fn invariants_rank(gs: &[QMatrix], n: usize, assert_unipotent: bool) -> Result<usize> {
    for g in gs {
        if !g.is_square() || g.rows() != n {
            return Err(Error::DimensionMismatch(format!("operator of shape {}x{} on rank {n}", g.rows(), g.cols())));
        }
        if !g.is_integral() {
            return Err(Error::Format("monodromy operators must be integral".into()));
        }
    }
    for (i, a) in gs.iter().enumerate() {
        for b in &gs[i + 1..] {
            if !a.commutes(b) {
                return Err(Error::NonCommuting);
            }
        }
    }
    if assert_unipotent {
        for (i, g) in gs.iter().enumerate() {
            if !g.sub(&QMatrix::identity(n)).is_nilpotent() {
                return Err(Error::NotUnipotent(format!("operator {i}")));
            }
        }
    }
    let mut inv = QSubspace::full(n);
    for g in gs {
        inv = inv.intersect(&QSubspace::kernel_of(&g.sub(&QMatrix::identity(n))));
    }
    Ok(inv.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> ZMatrix {
        QMatrix::from_ints(rows).to_integer().unwrap()
    }

    #[test]
    fn smith_reconstructs() {
        let m = z(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_form(&m);
        assert_eq!(s.u.mul(&s.d).mul(&s.v), m);
        assert!(s.u.mul(&s.u_inv).is_identity());
        assert!(s.v.mul(&s.v_inv).is_identity());
        let d: Vec<i64> = s.divisors().iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
    }

    #[test]
    fn lattice_membership() {
        let l = LatticeSubgroup::new(2, QMatrix::from_ints(&[&[2, 0], &[1, 1]]));
        assert!(l.contains(&[Rational::int(3), Rational::int(1)]));
        assert!(!l.contains(&[Rational::int(1), Rational::int(0)]));
        assert_eq!(l.index_in_standard(), Some(BigInt::from(2)));
    }
}
