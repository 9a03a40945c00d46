//! Increasing (weight) and decreasing (Hodge) filtrations, sub-quotients,
//! induced filtrations and the ⊕ / ⊗ / Hom constructions.

mod combine;
mod subquot;

pub use combine::{
    combine, direct_sum_filtration, direct_sum_op, hom_filtration, hom_op, tensor_filtration, tensor_op, CombineOp,
};
pub use subquot::{graded_endomorphism, graded_piece, induced_on_sub_quot, InduceMode, SubQuotient};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, QMatrix, QSubspace, Rational, Subspace};

/// W_k for k in [lo, hi]; W_k = 0 below the window and the whole space from hi on.
#[derive(Clone, Debug)]
pub struct IncFiltration<T: Field = Rational> {
    dim: usize,
    lo: i64,
    steps: Vec<Subspace<T>>,
    zero: Subspace<T>,
    full: Subspace<T>,
}

pub type QFiltration = IncFiltration<Rational>;

impl<T: Field> IncFiltration<T> {
    /// Steps W_lo, W_lo+1, …; the last step must be the whole space.
    pub fn new(dim: usize, lo: i64, steps: Vec<Subspace<T>>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Format("filtration needs at least one step".into()));
        }
        for s in &steps {
            if s.ambient_dim() != dim {
                return Err(Error::DimensionMismatch(format!("step in K^{} for filtration on K^{dim}", s.ambient_dim())));
            }
        }
        for w in steps.windows(2) {
            if !w[1].contains(&w[0]) {
                return Err(Error::Format("increasing filtration is not monotone".into()));
            }
        }
        if !steps.last().unwrap().is_full() {
            return Err(Error::Format("last step of an increasing filtration must be the whole space".into()));
        }
        Ok(IncFiltration { dim, lo, steps, zero: Subspace::zero(dim), full: Subspace::full(dim) })
    }

    /// The filtration concentrated in weight w: W_{w-1} = 0, W_w = V.
    pub fn pure(dim: usize, w: i64) -> Self {
        Self::new(dim, w, vec![Subspace::full(dim)]).unwrap()
    }

    /// Build from a function on a window; the value at `hi` is forced to V.
    pub fn from_fn(dim: usize, lo: i64, hi: i64, f: impl Fn(i64) -> Subspace<T>) -> Result<Self> {
        let mut steps: Vec<Subspace<T>> = (lo..=hi).map(f).collect();
        if let Some(last) = steps.last_mut() {
            if !last.is_full() {
                steps.push(Subspace::full(dim));
            }
        }
        Self::new(dim, lo, steps)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn lo(&self) -> i64 {
        self.lo
    }
    pub fn hi(&self) -> i64 {
        self.lo + self.steps.len() as i64 - 1
    }
    pub fn get(&self, k: i64) -> &Subspace<T> {
        if k < self.lo {
            &self.zero
        } else if k > self.hi() {
            &self.full
        } else {
            &self.steps[(k - self.lo) as usize]
        }
    }
    pub fn steps(&self) -> impl Iterator<Item = (i64, &Subspace<T>)> {
        self.steps.iter().enumerate().map(move |(i, s)| (self.lo + i as i64, s))
    }
    /// Dimension of gr_k = W_k / W_{k-1}.
    pub fn gr_dim(&self, k: i64) -> usize {
        self.get(k).dim() - self.get(k - 1).dim()
    }
    /// Smallest window [lo, hi] with W_{lo-1} = 0 and W_hi = V (lo = hi for V = 0).
    pub fn tight_window(&self) -> (i64, i64) {
        if self.dim == 0 {
            return (self.lo, self.lo);
        }
        let mut lo = self.lo;
        while self.get(lo).is_zero() {
            lo += 1;
        }
        let mut hi = self.hi();
        while hi > lo && self.get(hi - 1).is_full() {
            hi -= 1;
        }
        (lo, hi)
    }
    /// Same filtration on its tight window.
    pub fn normalized(&self) -> Self {
        let (lo, hi) = self.tight_window();
        let steps = (lo..=hi).map(|k| self.get(k).clone()).collect();
        Self::new(self.dim, lo, steps).unwrap()
    }
    /// Weights with nonzero graded piece.
    pub fn weights(&self) -> Vec<i64> {
        (self.lo..=self.hi()).filter(|&k| self.gr_dim(k) > 0).collect()
    }
    /// Shift indices: (W[s])_k = W_{k+s}.
    pub fn shifted(&self, s: i64) -> Self {
        Self::new(self.dim, self.lo - s, self.steps.clone()).unwrap()
    }
    pub fn map_steps<U: Field>(&self, f: impl Fn(&Subspace<T>) -> Subspace<U>) -> IncFiltration<U> {
        IncFiltration::new(self.dim, self.lo, self.steps.iter().map(f).collect()).unwrap()
    }
    /// Union of the two windows.
    pub fn joint_window(&self, o: &Self) -> (i64, i64) {
        (self.lo.min(o.lo), self.hi().max(o.hi()))
    }
}

impl<T: Field> PartialEq for IncFiltration<T> {
    fn eq(&self, o: &Self) -> bool {
        if self.dim != o.dim {
            return false;
        }
        let (lo, hi) = self.joint_window(o);
        (lo - 1..=hi).all(|k| self.get(k) == o.get(k))
    }
}
impl<T: Field> Eq for IncFiltration<T> {}

impl QFiltration {
    pub fn to_complex(&self) -> IncFiltration<crate::exactlin::GaussRational> {
        self.map_steps(|s| s.to_complex())
    }
}

/// F^p for p in [lo, hi]; F^p = V for p ≤ lo and F^p = 0 above hi.
#[derive(Clone, Debug)]
pub struct DecFiltration<T: Field> {
    dim: usize,
    lo: i64,
    steps: Vec<Subspace<T>>,
    zero: Subspace<T>,
    full: Subspace<T>,
}

impl<T: Field> DecFiltration<T> {
    pub fn new(dim: usize, lo: i64, steps: Vec<Subspace<T>>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Format("filtration needs at least one step".into()));
        }
        for s in &steps {
            if s.ambient_dim() != dim {
                return Err(Error::DimensionMismatch(format!("step in K^{} for filtration on K^{dim}", s.ambient_dim())));
            }
        }
        if !steps[0].is_full() {
            return Err(Error::Format("first step of a decreasing filtration must be the whole space".into()));
        }
        for w in steps.windows(2) {
            if !w[0].contains(&w[1]) {
                return Err(Error::Format("decreasing filtration is not antitone".into()));
            }
        }
        Ok(DecFiltration { dim, lo, steps, zero: Subspace::zero(dim), full: Subspace::full(dim) })
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn lo(&self) -> i64 {
        self.lo
    }
    pub fn hi(&self) -> i64 {
        self.lo + self.steps.len() as i64 - 1
    }
    pub fn get(&self, p: i64) -> &Subspace<T> {
        if p <= self.lo {
            &self.full
        } else if p > self.hi() {
            &self.zero
        } else {
            &self.steps[(p - self.lo) as usize]
        }
    }
    pub fn steps(&self) -> impl Iterator<Item = (i64, &Subspace<T>)> {
        self.steps.iter().enumerate().map(move |(i, s)| (self.lo + i as i64, s))
    }
    /// Apply a linear automorphism g: F ↦ gF.
    pub fn transform(&self, g: &Matrix<T>) -> Self {
        DecFiltration::new(self.dim, self.lo, self.steps.iter().map(|s| s.image(g)).collect()).unwrap()
    }
    pub fn conj(&self) -> Self {
        DecFiltration::new(self.dim, self.lo, self.steps.iter().map(|s| s.conj()).collect()).unwrap()
    }
    /// Window [lo, hi] with F^lo = V, F^{lo+1} ≠ V, F^hi ≠ 0 (when V ≠ 0).
    pub fn tight_window(&self) -> (i64, i64) {
        let mut lo = self.lo;
        while lo < self.hi() && self.get(lo + 1).is_full() {
            lo += 1;
        }
        let mut hi = self.hi();
        while hi > lo && self.get(hi).is_zero() {
            hi -= 1;
        }
        (lo, hi)
    }
    pub fn normalized(&self) -> Self {
        let (lo, hi) = self.tight_window();
        Self::new(self.dim, lo, (lo..=hi).map(|p| self.get(p).clone()).collect()).unwrap()
    }
}

impl<T: Field> PartialEq for DecFiltration<T> {
    fn eq(&self, o: &Self) -> bool {
        if self.dim != o.dim {
            return false;
        }
        let lo = self.lo.min(o.lo);
        let hi = self.hi().max(o.hi());
        (lo..=hi + 1).all(|p| self.get(p) == o.get(p))
    }
}
impl<T: Field> Eq for DecFiltration<T> {}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: DeserializeOwned + Clone"))]
struct RawFiltration<T> {
    lo: i64,
    hi: i64,
    steps: Vec<(i64, Matrix<T>)>,
}

fn raw_steps<T: Field + Serialize>(lo: i64, steps: &[Subspace<T>]) -> RawFiltration<T> {
    RawFiltration {
        lo,
        hi: lo + steps.len() as i64 - 1,
        steps: steps.iter().enumerate().map(|(i, s)| (lo + i as i64, s.basis().clone())).collect(),
    }
}

fn parse_steps<T: Field>(raw: RawFiltration<T>, dim: usize) -> Result<(i64, Vec<Subspace<T>>)> {
    if raw.hi < raw.lo {
        return Err(Error::Format("filtration window has hi < lo".into()));
    }
    let expect: Vec<i64> = (raw.lo..=raw.hi).collect();
    let got: Vec<i64> = raw.steps.iter().map(|(w, _)| *w).collect();
    if expect != got {
        return Err(Error::Format("filtration steps must list every index of [lo, hi] in order".into()));
    }
    let steps = raw.steps.into_iter().map(|(_, m)| Subspace::from_basis(dim, m)).collect::<Result<Vec<_>>>()?;
    Ok((raw.lo, steps))
}

impl<T: Field + Serialize> Serialize for IncFiltration<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        raw_steps(self.lo, &self.steps).serialize(s)
    }
}

impl<'de, T: Field + DeserializeOwned> Deserialize<'de> for IncFiltration<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawFiltration::<T>::deserialize(d)?;
        // The top step is the whole space, so its basis fixes the dimension.
        let dim = raw.steps.last().map_or(0, |(_, m)| m.rows());
        let (lo, steps) = parse_steps(raw, dim).map_err(serde::de::Error::custom)?;
        IncFiltration::new(dim, lo, steps).map_err(serde::de::Error::custom)
    }
}

impl<T: Field + Serialize> Serialize for DecFiltration<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        raw_steps(self.lo, &self.steps).serialize(s)
    }
}

impl<'de, T: Field + DeserializeOwned> Deserialize<'de> for DecFiltration<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawFiltration::<T>::deserialize(d)?;
        let dim = raw.steps.first().map_or(0, |(_, m)| m.rows());
        let (lo, steps) = parse_steps(raw, dim).map_err(serde::de::Error::custom)?;
        DecFiltration::new(dim, lo, steps).map_err(serde::de::Error::custom)
    }
}

/// The triple (V, W, N) with N nilpotent and W-preserving.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilteredNilp {
    #[serde(rename = "W")]
    pub w: QFiltration,
    #[serde(rename = "N")]
    pub n: QMatrix,
}

impl FilteredNilp {
    pub fn new(w: QFiltration, n: QMatrix) -> Result<Self> {
        if !n.is_square() || n.rows() != w.dim() {
            return Err(Error::DimensionMismatch(format!(
                "N is {}x{} but W lives on ℚ^{}",
                n.rows(),
                n.cols(),
                w.dim()
            )));
        }
        if !n.is_nilpotent() {
            return Err(Error::NotNilpotent("N".into()));
        }
        for (k, s) in w.steps() {
            if !s.contains(&s.image(&n)) {
                return Err(Error::Format(format!("N does not preserve W_{k}")));
            }
        }
        Ok(FilteredNilp { w, n })
    }
    pub fn dim(&self) -> usize {
        self.w.dim()
    }
}

impl<'de> Deserialize<'de> for FilteredNilp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(rename = "W")]
            w: QFiltration,
            #[serde(rename = "N")]
            n: QMatrix,
        }
        let r = Raw::deserialize(d)?;
        FilteredNilp::new(r.w, r.n).map_err(serde::de::Error::custom)
    }
}

/// Row vectors spanning W_w from a list of jumps given as the first basis
/// index of each weight, for filtrations split along the standard basis.
/// `weights[i]` is the weight of e_i; weights must be nondecreasing in the
/// order they should appear in W.
pub fn standard_filtration(weights: &[i64]) -> QFiltration {
    let n = weights.len();
    if n == 0 {
        return QFiltration::pure(0, 0);
    }
    let lo = *weights.iter().min().unwrap();
    let hi = *weights.iter().max().unwrap();
    QFiltration::from_fn(n, lo, hi, |k| {
        let vecs: Vec<Vec<Rational>> = (0..n)
            .filter(|&i| weights[i] <= k)
            .map(|i| {
                let mut v = vec![Rational::int(0); n];
                v[i] = Rational::int(1);
                v
            })
            .collect();
        QSubspace::span(n, &vecs)
    })
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_equality_ignores_padding() {
        let a = standard_filtration(&[-1, -1, 0]);
        let b = QFiltration::new(3, -3, (-3..=1).map(|k| a.get(k).clone()).collect()).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.tight_window(), (-1, 0));
        assert_eq!(a.gr_dim(-1), 2);
        assert_eq!(a.gr_dim(0), 1);
    }
}
