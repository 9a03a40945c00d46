//! Cones of commuting nilpotent matrices and marked cones in σ′ ×_{ℊ′} ℊ.

use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::poly::PolyCone;
use crate::error::{Error, Result};
use crate::exactlin::{flatten, unflatten, QMatrix, Rational};
use crate::filtration::{graded_endomorphism, QFiltration};

/// Finitely generated cone Σ ℝ≥0·N_i of commuting nilpotent n×n matrices.
#[derive(Clone, Debug)]
pub struct Cone {
    n: usize,
    generators: Vec<QMatrix>,
    poly: PolyCone,
}

impl Cone {
    /// Validates shapes, nilpotency and pairwise commutation.
    pub fn new(n: usize, generators: Vec<QMatrix>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(Error::DimensionMismatch(format!("generator {i} is {}x{}, expected {n}x{n}", g.rows(), g.cols())));
            }
            if !g.is_nilpotent() {
                return Err(Error::NotNilpotent(format!("cone generator {i}")));
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if !generators[i].commutes(&generators[j]) {
                    return Err(Error::NonCommuting);
                }
            }
        }
        Ok(Self::unchecked(n, generators))
    }

    /// No nilpotency or commutation check (used for images of valid cones).
    pub fn unchecked(n: usize, generators: Vec<QMatrix>) -> Self {
        let flat: Vec<Vec<Rational>> = generators.iter().map(flatten).collect();
        let poly = PolyCone::new(n * n, &flat).expect("generator shapes checked");
        Cone { n, generators, poly }
    }

    pub fn zero(n: usize) -> Self {
        Self::unchecked(n, Vec::new())
    }

    pub fn ray(n: &QMatrix) -> Result<Self> {
        Self::new(n.rows(), vec![n.clone()])
    }

    pub fn from_poly(n: usize, p: &PolyCone) -> Self {
        Self::unchecked(n, p.generators().iter().map(|v| unflatten(n, v)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }
    /// Generators as given (zero matrices included).
    pub fn generators(&self) -> &[QMatrix] {
        &self.generators
    }
    pub fn poly(&self) -> &PolyCone {
        &self.poly
    }
    pub fn rank(&self) -> usize {
        self.poly.rank()
    }
    pub fn interior_point(&self) -> QMatrix {
        unflatten(self.n, &self.poly.interior_point())
    }
    pub fn contains(&self, m: &QMatrix) -> bool {
        m.rows() == self.n && self.poly.contains(&flatten(m))
    }
    pub fn is_sharp(&self) -> bool {
        self.poly.is_sharp()
    }
    pub fn faces(&self) -> Vec<Cone> {
        self.poly.faces().iter().map(|f| Cone::from_poly(self.n, f)).collect()
    }
    pub fn smallest_face(&self, m: &QMatrix) -> Result<Cone> {
        Ok(Cone::from_poly(self.n, &self.poly.smallest_face(&flatten(m))?))
    }
    pub fn intersect(&self, o: &Cone) -> Result<Cone> {
        Ok(Cone::from_poly(self.n, &self.poly.intersect(&o.poly)?))
    }
    pub fn is_face_of(&self, sigma: &Cone) -> Result<bool> {
        self.poly.is_face_of(&sigma.poly)
    }
    pub fn relative_interiors_meet(&self, o: &Cone) -> Result<bool> {
        self.poly.relative_interiors_meet(&o.poly)
    }
    pub fn same_cone(&self, o: &Cone) -> bool {
        self.poly.same_cone(&o.poly)
    }
    /// Generated by its extreme rays (sharp cones only).
    pub fn canonical(&self) -> Option<Cone> {
        self.poly.canonical().map(|p| Cone::from_poly(self.n, &p))
    }
    /// Ad(g)σ = g σ g⁻¹.
    pub fn ad(&self, g: &QMatrix) -> Result<Cone> {
        let gi = g.inverse().ok_or_else(|| Error::Format("Ad by a singular matrix".into()))?;
        Ok(Cone::unchecked(self.n, self.generators.iter().map(|x| g.mul(x).mul(&gi)).collect()))
    }
}

impl PartialEq for Cone {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.same_cone(o)
    }
}

#[derive(Serialize, Deserialize)]
struct RawCone {
    ambient_dim: usize,
    generators: Vec<QMatrix>,
}

impl Serialize for Cone {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawCone { ambient_dim: self.n, generators: self.generators.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cone {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RawCone::deserialize(d)?;
        let gens = r.generators.into_iter().map(|m| m.with_cols(r.ambient_dim)).collect();
        Cone::new(r.ambient_dim, gens).map_err(serde::de::Error::custom)
    }
}

/// Cone in σ′ ×_{ℊ′} ℊ generated by pairs (x, N) with x ∈ ℚ^r≥0.
/// `proj[i]` is the image of the i-th basis vector of σ′_ℝ in ℊ′, written
/// on ⊕_w gr_w in echelon-lift coordinates.
#[derive(Clone, Debug)]
pub struct MarkedCone {
    r: usize,
    n: usize,
    proj: Vec<QMatrix>,
    pairs: Vec<(Vec<Rational>, QMatrix)>,
    poly: PolyCone,
}

impl MarkedCone {
    pub fn new(r: usize, n: usize, proj: Vec<QMatrix>, pairs: Vec<(Vec<Rational>, QMatrix)>) -> Result<Self> {
        if proj.len() != r {
            return Err(Error::DimensionMismatch(format!("{} projection images for r = {r}", proj.len())));
        }
        for (x, m) in &pairs {
            if x.len() != r || m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch("marked cone pair has the wrong shape".into()));
            }
            if x.iter().any(|c| c.is_negative()) {
                return Err(Error::Format("σ′ component must be nonnegative".into()));
            }
            if !m.is_nilpotent() {
                return Err(Error::NotNilpotent("marked cone N-component".into()));
            }
        }
        for i in 0..pairs.len() {
            for j in i + 1..pairs.len() {
                if !pairs[i].1.commutes(&pairs[j].1) {
                    return Err(Error::NonCommuting);
                }
            }
        }
        let vecs: Vec<Vec<Rational>> = pairs.iter().map(|(x, m)| Self::embed(x, m)).collect();
        let poly = PolyCone::new(r + n * n, &vecs)?;
        Ok(MarkedCone { r, n, proj, pairs, poly })
    }

    fn embed(x: &[Rational], m: &QMatrix) -> Vec<Rational> {
        let mut v = x.to_vec();
        v.extend(flatten(m));
        v
    }

    pub fn zero(r: usize, n: usize, proj: Vec<QMatrix>) -> Self {
        Self::new(r, n, proj, Vec::new()).unwrap()
    }
    pub fn r(&self) -> usize {
        self.r
    }
    pub fn ambient_dim(&self) -> usize {
        self.n
    }
    pub fn proj(&self) -> &[QMatrix] {
        &self.proj
    }
    pub fn pairs(&self) -> &[(Vec<Rational>, QMatrix)] {
        &self.pairs
    }
    pub fn poly(&self) -> &PolyCone {
        &self.poly
    }

    /// proj(x) = Σ x_i proj_i.
    pub fn project(&self, x: &[Rational]) -> QMatrix {
        let n = self.proj.first().map_or(0, |p| p.rows());
        x.iter().zip(&self.proj).fold(QMatrix::zeros(n, n), |acc, (c, p)| acc.add(&p.scale(c)))
    }

    /// Fiber condition gr^W(N) = proj(x) for every generator.
    pub fn check_fiber(&self, w: &QFiltration) -> Result<()> {
        for (i, (x, m)) in self.pairs.iter().enumerate() {
            if graded_endomorphism(w, m) != self.project(x) {
                return Err(Error::Format(format!("marked generator {i} violates gr^W(N) = proj(x)")));
            }
        }
        Ok(())
    }

    /// The image cone σ_ℊ of N-components.
    pub fn image_cone(&self) -> Cone {
        Cone::unchecked(self.n, self.pairs.iter().map(|(_, m)| m.clone()).collect())
    }

    /// Ad(g) on the N-components; x is unchanged.
    pub fn ad(&self, g: &QMatrix) -> Result<Self> {
        let gi = g.inverse().ok_or_else(|| Error::Format("Ad by a singular matrix".into()))?;
        let pairs = self.pairs.iter().map(|(x, m)| (x.clone(), g.mul(m).mul(&gi))).collect();
        Self::new(self.r, self.n, self.proj.clone(), pairs)
    }

    pub fn from_poly(&self, p: &PolyCone) -> Self {
        let pairs = p
            .generators()
            .iter()
            .map(|v| (v[..self.r].to_vec(), unflatten(self.n, &v[self.r..])))
            .collect();
        Self::new(self.r, self.n, self.proj.clone(), pairs).expect("sub-cone of a marked cone")
    }

    pub fn faces(&self) -> Vec<MarkedCone> {
        self.poly.faces().iter().map(|f| self.from_poly(f)).collect()
    }

    pub fn same_cone(&self, o: &Self) -> bool {
        self.r == o.r && self.n == o.n && self.poly.same_cone(&o.poly)
    }
}

impl PartialEq for MarkedCone {
    fn eq(&self, o: &Self) -> bool {
        self.same_cone(o)
    }
}

#[derive(Serialize, Deserialize)]
struct RawMarked {
    r: usize,
    ambient_dim: usize,
    /// n² × r: column i is proj_i flattened row-major.
    proj: QMatrix,
    pairs: Vec<(Vec<Rational>, QMatrix)>,
}

impl Serialize for MarkedCone {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let cols: Vec<Vec<Rational>> = self.proj.iter().map(flatten).collect();
        let proj = if cols.is_empty() { QMatrix::zeros(self.n * self.n, 0) } else { QMatrix::from_cols(self.n * self.n, &cols) };
        RawMarked { r: self.r, ambient_dim: self.n, proj, pairs: self.pairs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MarkedCone {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMarked::deserialize(d)?;
        let n = raw.ambient_dim;
        let p = raw.proj.with_cols(raw.r);
        if p.rows() != n * n || p.cols() != raw.r {
            return Err(serde::de::Error::custom("proj must be an n²×r matrix"));
        }
        let proj = (0..raw.r).map(|i| unflatten(n, &p.col(i))).collect();
        let pairs = raw.pairs.into_iter().map(|(x, m)| (x, m.with_cols(n))).collect();
        MarkedCone::new(raw.r, n, proj, pairs).map_err(serde::de::Error::custom)
    }
}
