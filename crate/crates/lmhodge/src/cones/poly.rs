//! Finitely generated rational cones in ℚ^d. All linear programs run in
//! coordinates of the linear span of the generators.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use serde::Serialize;

use super::lp::feasible;
use crate::error::{Error, Result};
use crate::exactlin::{primitive_integer, QMatrix, QSubspace, Rational, Ring};

#[derive(Clone, Debug)]
pub struct PolyCone {
    dim: usize,
    gens: Vec<Vec<Rational>>,
    span: QSubspace,
    coords: Vec<Vec<Rational>>,
}

/// Faces as sets of generator indices, smallest first.
#[derive(Clone, Debug, Serialize)]
pub struct FaceLattice {
    pub faces: Vec<Vec<usize>>,
    /// (i, j) when face i ⊊ face j.
    pub incidence: Vec<(usize, usize)>,
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| if x.is_zero() || y.is_zero() { acc } else { acc + &(x.clone() * y) })
}

fn scale_vec(v: &[Rational], c: &Rational) -> Vec<Rational> {
    v.iter().map(|x| x.clone() * c).collect()
}

fn add_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y).collect()
}

fn to_rat(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_bigint(x.clone())).collect()
}

impl PolyCone {
    /// Cone generated by `gens`. Zero generators are dropped, the rest are
    /// scaled to primitive integer vectors and deduplicated.
    pub fn new(dim: usize, gens: &[Vec<Rational>]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut kept = Vec::new();
        for g in gens {
            if g.len() != dim {
                return Err(Error::DimensionMismatch(format!("generator of length {} in ℚ^{dim}", g.len())));
            }
            if g.iter().all(|x| x.is_zero()) {
                continue;
            }
            let p = primitive_integer(g);
            if seen.insert(p.clone()) {
                kept.push(to_rat(&p));
            }
        }
        let span = QSubspace::span(dim, &kept);
        let coords = kept.iter().map(|g| span.coordinates(g).expect("generator in its span")).collect();
        Ok(PolyCone { dim, gens: kept, span, coords })
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(dim, &[]).unwrap()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }
    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.gens
    }
    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }
    pub fn span(&self) -> &QSubspace {
        &self.span
    }
    /// Dimension of the linear span.
    pub fn rank(&self) -> usize {
        self.span.dim()
    }
    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::DimensionMismatch(format!("cones in ℚ^{} and ℚ^{}", self.dim, o.dim)));
        }
        Ok(())
    }

    /// Constraint rows of G·λ (G has the generator coordinates as columns).
    fn coord_rows(&self, idx: &[usize]) -> Vec<Vec<Rational>> {
        (0..self.rank()).map(|t| idx.iter().map(|&i| self.coords[i][t].clone()).collect()).collect()
    }

    /// Sum of the generators: a point of the relative interior.
    pub fn interior_point(&self) -> Vec<Rational> {
        self.gens.iter().fold(vec![Rational::zero(); self.dim], |acc, g| add_vec(&acc, g))
    }

    /// Nonnegative coefficients λ with Σ λ_i g_i = v, if v ∈ σ.
    pub fn decompose(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.dim, "point dimension");
        let c = self.span.coordinates(v)?;
        let all: Vec<usize> = (0..self.gens.len()).collect();
        feasible(self.gens.len(), &self.coord_rows(&all), &c)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.decompose(v).is_some()
    }

    pub fn contains_cone(&self, o: &Self) -> bool {
        o.gens.iter().all(|g| self.contains(g))
    }

    /// Equality as sets.
    pub fn same_cone(&self, o: &Self) -> bool {
        self.dim == o.dim && self.span == o.span && self.contains_cone(o) && o.contains_cone(self)
    }

    /// σ ∩ (−σ) = {0}: no convex combination of generators vanishes.
    pub fn is_sharp(&self) -> bool {
        if self.gens.is_empty() {
            return true;
        }
        let k = self.gens.len();
        let all: Vec<usize> = (0..k).collect();
        let mut rows = self.coord_rows(&all);
        rows.push(vec![Rational::one(); k]);
        let mut rhs = vec![Rational::zero(); self.rank()];
        rhs.push(Rational::one());
        feasible(k, &rows, &rhs).is_none()
    }

    /// Generator indices of the smallest face containing v (v must lie in σ).
    /// g_i is in that face iff s·v − g_i ∈ σ for some s ≥ 0.
    pub fn smallest_face_indices(&self, v: &[Rational]) -> Result<Vec<usize>> {
        if !self.contains(v) {
            return Err(Error::NotInCone);
        }
        let cv = self.span.coordinates(v).unwrap();
        let k = self.gens.len();
        let mut out = Vec::new();
        for i in 0..k {
            let others: Vec<usize> = (0..k).filter(|&j| j != i).collect();
            let mut rows = self.coord_rows(&others);
            for (t, row) in rows.iter_mut().enumerate() {
                row.push(-cv[t].clone());
            }
            let rhs: Vec<Rational> = self.coords[i].iter().map(|x| -x.clone()).collect();
            if feasible(others.len() + 1, &rows, &rhs).is_some() {
                out.push(i);
            }
        }
        Ok(out)
    }

    fn face_closure(&self, seed: &[usize], extra: usize) -> Vec<usize> {
        // The smallest face containing the seed face and one more generator.
        let mut v = self.gens[extra].clone();
        for &i in seed {
            v = add_vec(&v, &self.gens[i]);
        }
        let k = self.gens.len();
        let known: BTreeSet<usize> = seed.iter().copied().chain([extra]).collect();
        let cv = self.span.coordinates(&v).unwrap();
        let mut out: Vec<usize> = known.iter().copied().collect();
        for i in 0..k {
            if known.contains(&i) {
                continue;
            }
            let others: Vec<usize> = (0..k).filter(|&j| j != i).collect();
            let mut rows = self.coord_rows(&others);
            for (t, row) in rows.iter_mut().enumerate() {
                row.push(-cv[t].clone());
            }
            let rhs: Vec<Rational> = self.coords[i].iter().map(|x| -x.clone()).collect();
            if feasible(others.len() + 1, &rows, &rhs).is_some() {
                out.push(i);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn smallest_face(&self, v: &[Rational]) -> Result<PolyCone> {
        Ok(self.sub_cone(&self.smallest_face_indices(v)?))
    }

    /// Cone on a subset of the generators.
    pub fn sub_cone(&self, idx: &[usize]) -> PolyCone {
        let g: Vec<Vec<Rational>> = idx.iter().map(|&i| self.gens[i].clone()).collect();
        PolyCone::new(self.dim, &g).unwrap()
    }

    /// The full face lattice, reached from the minimal face by adding one
    /// generator at a time (every cover of a face arises this way).
    pub fn face_lattice(&self) -> FaceLattice {
        let minimal = self.smallest_face_indices(&vec![Rational::zero(); self.dim]).unwrap();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(minimal.clone());
        queue.push_back(minimal);
        while let Some(f) = queue.pop_front() {
            for j in 0..self.gens.len() {
                if f.binary_search(&j).is_ok() {
                    continue;
                }
                let g = self.face_closure(&f, j);
                if seen.insert(g.clone()) {
                    queue.push_back(g);
                }
            }
        }
        let mut faces: Vec<Vec<usize>> = seen.into_iter().collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        let mut incidence = Vec::new();
        for (i, a) in faces.iter().enumerate() {
            for (j, b) in faces.iter().enumerate() {
                if i != j && a.len() < b.len() && a.iter().all(|x| b.binary_search(x).is_ok()) {
                    incidence.push((i, j));
                }
            }
        }
        FaceLattice { faces, incidence }
    }

    pub fn faces(&self) -> Vec<PolyCone> {
        self.face_lattice().faces.iter().map(|f| self.sub_cone(f)).collect()
    }

    /// f is a face of σ: f ⊆ σ and f is the smallest face of σ through an
    /// interior point of f.
    pub fn is_face_of(&self, sigma: &PolyCone) -> Result<bool> {
        self.check(sigma)?;
        if !sigma.contains_cone(self) {
            return Ok(false);
        }
        let face = sigma.smallest_face(&self.interior_point())?;
        Ok(face.same_cone(self))
    }

    /// Whether the relative interiors meet: some point is a combination of
    /// each generator set with all coefficients ≥ 1.
    pub fn relative_interiors_meet(&self, o: &Self) -> Result<bool> {
        self.check(o)?;
        let both = self.span.sum(&o.span);
        let ka = self.gens.len();
        let kb = o.gens.len();
        // G(1 + y) = H(1 + z) with y, z ≥ 0, in coordinates of span(σ) + span(σ′).
        let ca: Vec<Vec<Rational>> = self.gens.iter().map(|g| both.coordinates(g).unwrap()).collect();
        let cb: Vec<Vec<Rational>> = o.gens.iter().map(|g| both.coordinates(g).unwrap()).collect();
        let r = both.dim();
        let mut rows = Vec::with_capacity(r);
        let mut rhs = Vec::with_capacity(r);
        for t in 0..r {
            let mut row: Vec<Rational> = ca.iter().map(|c| c[t].clone()).collect();
            row.extend(cb.iter().map(|c| -c[t].clone()));
            let g1 = ca.iter().fold(Rational::zero(), |acc, c| acc + &c[t]);
            let h1 = cb.iter().fold(Rational::zero(), |acc, c| acc + &c[t]);
            rows.push(row);
            rhs.push(h1 - &g1);
        }
        Ok(feasible(ka + kb, &rows, &rhs).is_some())
    }

    /// Facet inequalities as functionals on the ambient space, each
    /// nonnegative on σ and meaningful on span(σ).
    pub fn facet_functionals(&self) -> Vec<Vec<Rational>> {
        let r = self.rank();
        if r == 0 {
            return Vec::new();
        }
        let lat = self.face_lattice();
        let mut out = Vec::new();
        for f in &lat.faces {
            let fc = self.sub_cone(f);
            if fc.rank() + 1 != r {
                continue;
            }
            let rows: Vec<Vec<Rational>> = f.iter().map(|&i| self.coords[i].clone()).collect();
            let mut normal = if rows.is_empty() {
                vec![Rational::one()]
            } else {
                let ker = QMatrix::from_rows(r, rows).kernel();
                debug_assert_eq!(ker.len(), 1);
                ker[0].clone()
            };
            let witness = (0..self.gens.len()).find(|i| f.binary_search(i).is_err()).expect("facet is proper");
            if dot(&normal, &self.coords[witness]).is_negative() {
                normal = normal.iter().map(|x| -x.clone()).collect();
            }
            let mut phi = vec![Rational::zero(); self.dim];
            for (t, &p) in self.span.pivots().iter().enumerate() {
                phi[p] = normal[t].clone();
            }
            out.push(phi);
        }
        out
    }

    /// Exact intersection σ ∩ σ′.
    pub fn intersect(&self, o: &Self) -> Result<PolyCone> {
        self.check(o)?;
        let u = self.span.intersect(&o.span);
        if u.is_zero() {
            return Ok(PolyCone::zero(self.dim));
        }
        let b = u.basis_vectors();
        let ineq: Vec<Vec<Rational>> = self
            .facet_functionals()
            .into_iter()
            .chain(o.facet_functionals())
            .map(|phi| b.iter().map(|row| dot(&phi, row)).collect::<Vec<_>>())
            .filter(|a: &Vec<Rational>| a.iter().any(|x| !x.is_zero()))
            .collect();
        let ud = b.len();
        let lin = if ineq.is_empty() {
            QSubspace::full(ud)
        } else {
            QSubspace::span(ud, &QMatrix::from_rows(ud, ineq.clone()).kernel())
        };
        let comp = lin.annihilator();
        let cb = comp.basis_vectors();
        let qd = cb.len();
        let red: Vec<Vec<Rational>> = ineq.iter().map(|a| cb.iter().map(|c| dot(a, c)).collect()).collect();
        let mut rays: Vec<Vec<Rational>> = Vec::new();
        if qd > 0 {
            for subset in combinations(red.len(), qd - 1) {
                let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| red[i].clone()).collect();
                let ker = if rows.is_empty() {
                    vec![vec![Rational::one()]]
                } else {
                    QMatrix::from_rows(qd, rows).kernel()
                };
                if ker.len() != 1 {
                    continue;
                }
                for sgn in [1i64, -1] {
                    let z = scale_vec(&ker[0], &Rational::int(sgn));
                    if red.iter().all(|a| !dot(a, &z).is_negative()) {
                        rays.push(z);
                    }
                }
            }
        }
        let to_ambient = |y: &[Rational]| -> Vec<Rational> {
            let mut x = vec![Rational::zero(); self.dim];
            for (c, row) in y.iter().zip(&b) {
                if !c.is_zero() {
                    x = add_vec(&x, &scale_vec(row, c));
                }
            }
            x
        };
        let mut gens = Vec::new();
        for z in &rays {
            let mut y = vec![Rational::zero(); ud];
            for (c, row) in z.iter().zip(&cb) {
                y = add_vec(&y, &scale_vec(row, c));
            }
            gens.push(to_ambient(&y));
        }
        for l in lin.basis_vectors() {
            gens.push(to_ambient(&l));
            gens.push(to_ambient(&scale_vec(&l, &Rational::int(-1))));
        }
        PolyCone::new(self.dim, &gens)
    }

    /// Primitive integer extreme rays, sorted; None for a non-sharp cone.
    pub fn canonical_rays(&self) -> Option<Vec<Vec<BigInt>>> {
        if !self.is_sharp() {
            return None;
        }
        let mut rays: Vec<Vec<BigInt>> = self
            .face_lattice()
            .faces
            .iter()
            .filter(|f| !f.is_empty() && self.sub_cone(f).rank() == 1)
            .map(|f| primitive_integer(&self.gens[f[0]]))
            .collect();
        rays.sort();
        rays.dedup();
        Some(rays)
    }

    /// The cone with its extreme rays as generators (sharp cones only).
    pub fn canonical(&self) -> Option<PolyCone> {
        self.canonical_rays().map(|r| PolyCone::new(self.dim, &r.iter().map(|v| to_rat(v)).collect::<Vec<_>>()).unwrap())
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn map(&self, f: &QMatrix) -> Result<PolyCone> {
        if f.cols() != self.dim {
            return Err(Error::DimensionMismatch(format!("map from ℚ^{} on cone in ℚ^{}", f.cols(), self.dim)));
        }
        PolyCone::new(f.rows(), &self.gens.iter().map(|g| f.mul_vec(g)).collect::<Vec<_>>())
    }
}

/// All k-subsets of 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::qv;

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 3).len(), 1);
    }

    #[test]
    fn quadrant_faces_and_intersection() {
        let q = PolyCone::new(2, &[qv(&[1, 0]), qv(&[0, 1])]).unwrap();
        assert_eq!(q.face_lattice().faces.len(), 4);
        assert!(q.is_sharp());
        let h = PolyCone::new(2, &[qv(&[1, 1]), qv(&[-1, 1])]).unwrap();
        let m = q.intersect(&h).unwrap();
        assert!(m.same_cone(&PolyCone::new(2, &[qv(&[1, 1]), qv(&[0, 1])]).unwrap()));
        let line = PolyCone::new(2, &[qv(&[1, 0]), qv(&[-1, 0])]).unwrap();
        assert!(!line.is_sharp());
        assert!(q.intersect(&line).unwrap().same_cone(&PolyCone::new(2, &[qv(&[1, 0])]).unwrap()));
    }
}
