use std::collections::BTreeMap;

use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{CMatrix, CSubspace, GaussRational, LatticeSubgroup, QMatrix};
use crate::filtration::{graded_piece, DecFiltration, QFiltration, SubQuotient};

/// A point of Ď: a decreasing filtration on ℂⁿ with ℚ(i) coordinates.
pub type PeriodPoint = DecFiltration<GaussRational>;

/// Build F from spanning vectors of F^lo ⊇ F^{lo+1} ⊇ …; F^lo must span ℂⁿ.
pub fn period_point(dim: usize, lo: i64, steps: &[Vec<Vec<GaussRational>>]) -> Result<PeriodPoint> {
    DecFiltration::new(dim, lo, steps.iter().map(|vs| CSubspace::span(dim, vs)).collect())
}

/// (H₀, W, ⟨,⟩_w, h^{p,q}). The pairing on gr_w is written in the echelon
/// lift coordinates of `graded_piece(W, w)`.
#[derive(Clone, Debug)]
pub struct HodgeFrame {
    h0: LatticeSubgroup,
    w: QFiltration,
    pairings: BTreeMap<i64, QMatrix>,
    hodge: BTreeMap<(i64, i64), usize>,
}

fn parity_sign(w: i64) -> i64 {
    if w.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl HodgeFrame {
    pub fn new(w: QFiltration, pairings: BTreeMap<i64, QMatrix>, hodge: BTreeMap<(i64, i64), usize>) -> Result<Self> {
        let n = w.dim();
        let hodge: BTreeMap<(i64, i64), usize> = hodge.into_iter().filter(|(_, h)| *h > 0).collect();
        if hodge.values().sum::<usize>() != n {
            return Err(Error::Format(format!("Hodge numbers sum to {} on a rank-{n} lattice", hodge.values().sum::<usize>())));
        }
        for (&(p, q), &h) in &hodge {
            if hodge.get(&(q, p)).copied().unwrap_or(0) != h {
                return Err(Error::Format(format!("h^{{{p},{q}}} ≠ h^{{{q},{p}}}")));
            }
        }
        let (lo, hi) = w.tight_window();
        for k in lo..=hi {
            let g = w.gr_dim(k);
            let hs: usize = hodge.iter().filter(|((p, q), _)| p + q == k).map(|(_, h)| *h).sum();
            if g != hs {
                return Err(Error::Format(format!("dim gr^W_{k} = {g} but Σ_{{p+q={k}}} h^{{p,q}} = {hs}")));
            }
            if g == 0 {
                continue;
            }
            let s = pairings.get(&k).ok_or_else(|| Error::Format(format!("missing pairing on gr^W_{k}")))?;
            if s.rows() != g || s.cols() != g {
                return Err(Error::DimensionMismatch(format!("pairing on gr^W_{k} is {}x{}, expected {g}x{g}", s.rows(), s.cols())));
            }
            if s.det().signum() == 0 {
                return Err(Error::Format(format!("pairing on gr^W_{k} is degenerate")));
            }
            let sign = crate::exactlin::Rational::int(parity_sign(k));
            if s.transpose() != s.scale(&sign) {
                return Err(Error::Format(format!("pairing on gr^W_{k} is not (−1)^w-symmetric")));
            }
        }
        Ok(HodgeFrame { h0: LatticeSubgroup::standard(n), w, pairings, hodge })
    }

    pub fn rank(&self) -> usize {
        self.w.dim()
    }
    pub fn w(&self) -> &QFiltration {
        &self.w
    }
    pub fn h0(&self) -> &LatticeSubgroup {
        &self.h0
    }
    pub fn pairing(&self, w: i64) -> Option<&QMatrix> {
        self.pairings.get(&w)
    }
    pub fn pairings(&self) -> &BTreeMap<i64, QMatrix> {
        &self.pairings
    }
    pub fn hodge_numbers(&self) -> &BTreeMap<(i64, i64), usize> {
        &self.hodge
    }
    pub fn h(&self, p: i64, q: i64) -> usize {
        self.hodge.get(&(p, q)).copied().unwrap_or(0)
    }
    /// Weights with nonzero graded piece.
    pub fn weights(&self) -> Vec<i64> {
        self.w.weights()
    }
    fn p_range(&self) -> (i64, i64) {
        let lo = self.hodge.keys().map(|k| k.0).min().unwrap_or(0);
        let hi = self.hodge.keys().map(|k| k.0).max().unwrap_or(0);
        (lo, hi)
    }

    /// The pure frame on gr_w.
    pub fn graded_frame(&self, w: i64) -> Result<HodgeFrame> {
        let g = self.w.gr_dim(w);
        let pairings = BTreeMap::from([(w, self.pairings.get(&w).cloned().unwrap_or_else(|| QMatrix::zeros(0, 0)))]);
        let hodge = self.hodge.iter().filter(|((p, q), _)| p + q == w).map(|(k, v)| (*k, *v)).collect();
        HodgeFrame::new(QFiltration::pure(g, w), pairings, hodge)
    }

    pub fn graded_piece(&self, w: i64) -> SubQuotient<crate::exactlin::Rational> {
        graded_piece(&self.w, w)
    }

    /// F(gr_w) in the lift coordinates of gr_w.
    pub fn graded_flag(&self, f: &PeriodPoint, w: i64) -> PeriodPoint {
        let wc = self.w.to_complex();
        let sq = graded_piece(&wc, w);
        let steps = (f.lo()..=f.hi()).map(|p| sq.induced_subspace(f.get(p))).collect();
        DecFiltration::new(sq.dim(), f.lo(), steps).expect("induced flag")
    }

    fn check_dim(&self, f: &PeriodPoint) -> Result<()> {
        if f.dim() != self.rank() {
            return Err(Error::DimensionMismatch(format!("flag on ℂ^{} for a rank-{} frame", f.dim(), self.rank())));
        }
        Ok(())
    }

    /// N preserves W and is an infinitesimal isometry on every gr_w.
    pub fn in_lie_algebra(&self, n: &QMatrix) -> bool {
        if n.rows() != self.rank() || n.cols() != self.rank() {
            return false;
        }
        if (self.w.lo()..=self.w.hi()).any(|k| !self.w.get(k).contains(&self.w.get(k).image(n))) {
            return false;
        }
        self.weights().into_iter().all(|w| {
            let nw = self.graded_piece(w).induced_map(n);
            let s = &self.pairings[&w];
            nw.transpose().mul(s).add(&s.mul(&nw)).is_zero()
        })
    }

    /// γ preserves W and induces isometries on every gr_w.
    pub fn in_group(&self, g: &QMatrix) -> bool {
        if g.rows() != self.rank() || g.cols() != self.rank() || g.det().signum() == 0 {
            return false;
        }
        if (self.w.lo()..=self.w.hi()).any(|k| self.w.get(k).image(g) != *self.w.get(k)) {
            return false;
        }
        self.weights().into_iter().all(|w| {
            let gw = self.graded_piece(w).induced_map(g);
            let s = &self.pairings[&w];
            gw.transpose().mul(s).mul(&gw) == *s
        })
    }

    /// γ ∈ G_ℤ: in the group and an automorphism of H₀ = ℤⁿ.
    pub fn in_integral_group(&self, g: &QMatrix) -> bool {
        self.in_group(g) && g.is_integral() && g.inverse().is_some_and(|gi| gi.is_integral())
    }

    /// γ ∈ G_u: in the group with gr^W(γ) = 1.
    pub fn in_unipotent_group(&self, g: &QMatrix) -> bool {
        self.in_group(g) && self.weights().into_iter().all(|w| self.graded_piece(w).induced_map(g).is_identity())
    }

    /// F ∈ Ď: Hodge-number dimensions on every gr_w and on V, and isotropy
    /// ⟨F^p, F^{w−p+1}⟩_w = 0.
    pub fn in_check_d(&self, f: &PeriodPoint) -> Result<bool> {
        self.check_dim(f)?;
        let (plo, phi) = self.p_range();
        for p in plo - 1..=phi + 1 {
            let expect: usize = self.hodge.iter().filter(|((pp, _), _)| *pp >= p).map(|(_, h)| *h).sum();
            if f.get(p).dim() != expect {
                return Ok(false);
            }
        }
        for w in self.weights() {
            let fg = self.graded_flag(f, w);
            for p in plo - 1..=phi + 1 {
                let d = fg.get(p).dim() - fg.get(p + 1).dim();
                if d != self.h(p, w - p) {
                    return Ok(false);
                }
            }
            let s = self.pairings[&w].to_complex();
            for p in plo..=phi + 1 {
                let a = fg.get(p);
                let b = fg.get(w - p + 1);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                if !a.basis().mul(&s).mul(&b.basis().transpose()).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Hodge decomposition H^{p,q} = F^p ∩ conj F^q on gr_w, if it is direct.
    pub fn hodge_decomposition(&self, f: &PeriodPoint, w: i64) -> Option<BTreeMap<(i64, i64), CSubspace>> {
        let fg = self.graded_flag(f, w);
        let fb = fg.conj();
        let g = fg.dim();
        let (plo, phi) = self.p_range();
        let mut out = BTreeMap::new();
        let mut total = CSubspace::zero(g);
        let mut sum_dims = 0;
        for p in plo..=phi {
            let h = fg.get(p).intersect(fb.get(w - p));
            if h.is_zero() {
                continue;
            }
            sum_dims += h.dim();
            total = total.sum(&h);
            out.insert((p, w - p), h);
        }
        (sum_dims == g && total.is_full()).then_some(out)
    }

    /// F ∈ D: every (gr_w, F(gr_w), ⟨,⟩_w) is a polarized Hodge structure.
    pub fn in_d(&self, f: &PeriodPoint) -> Result<bool> {
        if !self.in_check_d(f)? {
            return Ok(false);
        }
        for w in self.weights() {
            let Some(dec) = self.hodge_decomposition(f, w) else { return Ok(false) };
            let s = self.pairings[&w].to_complex();
            for ((p, q), h) in &dec {
                let c = GaussRational::i_pow(p - q);
                let b = h.basis();
                let gram = b.mul(&s).mul(&b.conj().transpose()).scale(&c);
                if !is_positive_hermitian(&gram) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// W and F form a mixed Hodge structure: F induces a Hodge structure of
    /// weight w on every gr_w (no polarization needed).
    pub fn is_mhs(&self, f: &PeriodPoint) -> Result<bool> {
        self.check_dim(f)?;
        Ok(self.weights().into_iter().all(|w| self.hodge_decomposition(f, w).is_some()))
    }
}

/// Hermitian and positive definite, by leading principal minors.
pub fn is_positive_hermitian(g: &CMatrix) -> bool {
    if g.conj().transpose() != *g {
        return false;
    }
    (1..=g.rows()).all(|k| {
        let idx: Vec<usize> = (0..k).collect();
        let d = g.submatrix(&idx, &idx).det();
        d.is_real() && d.re.is_positive()
    })
}

#[derive(Serialize, Deserialize)]
struct RawFrame {
    rank: usize,
    #[serde(rename = "W")]
    w: QFiltration,
    pairings: BTreeMap<String, QMatrix>,
    hodge: Vec<(i64, i64, usize)>,
}

impl Serialize for HodgeFrame {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawFrame {
            rank: self.rank(),
            w: self.w.clone(),
            pairings: self.pairings.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            hodge: self.hodge.iter().map(|((p, q), h)| (*p, *q, *h)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HodgeFrame {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RawFrame::deserialize(d)?;
        if r.w.dim() != r.rank {
            return Err(serde::de::Error::custom("W does not live on ℚ^rank"));
        }
        let mut pairings = BTreeMap::new();
        for (k, v) in r.pairings {
            let w: i64 = k.parse().map_err(|_| serde::de::Error::custom(format!("pairing key {k:?} is not an integer")))?;
            let g = r.w.gr_dim(w);
            pairings.insert(w, v.with_cols(g));
        }
        let hodge = r.hodge.into_iter().map(|(p, q, h)| ((p, q), h)).collect();
        HodgeFrame::new(r.w, pairings, hodge).map_err(serde::de::Error::custom)
    }
}
