use std::collections::BTreeMap;

use super::frame::PeriodPoint;
use crate::error::{Error, Result};
use crate::exactlin::{CSubspace, GaussRational};
use crate::filtration::{graded_piece, IncFiltration, QFiltration};

pub type Bigrading = BTreeMap<(i64, i64), CSubspace>;

/// F(gr_w) ⊕ conj F^{w−p+1}(gr_w) = gr_w for every weight and every p.
pub fn is_mhs(w: &QFiltration, f: &PeriodPoint) -> Result<bool> {
    if w.dim() != f.dim() {
        return Err(Error::DimensionMismatch(format!("W on ℚ^{} and F on ℂ^{}", w.dim(), f.dim())));
    }
    let wc = w.to_complex();
    let fb = f.conj();
    for k in w.weights() {
        let sq = graded_piece(&wc, k);
        for p in f.lo()..=f.hi() + 1 {
            let a = sq.induced_subspace(f.get(p));
            let b = sq.induced_subspace(fb.get(k - p + 1));
            if a.dim() + b.dim() != sq.dim() || !a.sum(&b).is_full() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Deligne's I^{p,q} = F^p ∩ W_{p+q} ∩ (conj F^q ∩ W_{p+q} + Σ_{j≥1} conj F^{q−j} ∩ W_{p+q−j−1}).
pub fn deligne_bigrading(w: &QFiltration, f: &PeriodPoint) -> Result<Bigrading> {
    if !is_mhs(w, f)? {
        return Err(Error::NotMhs("F does not induce Hodge structures on gr^W".into()));
    }
    let wc = w.to_complex();
    let fb = f.conj();
    let n = w.dim();
    let (plo, phi) = (f.lo(), f.hi());
    let mut out = Bigrading::new();
    for p in plo..=phi {
        for q in plo..=phi {
            let k = p + q;
            if wc.get(k).is_zero() {
                continue;
            }
            let mut inner = fb.get(q).intersect(wc.get(k));
            let mut j = 1;
            while !wc.get(k - j - 1).is_zero() {
                inner = inner.sum(&fb.get(q - j).intersect(wc.get(k - j - 1)));
                j += 1;
            }
            let i = f.get(p).intersect(wc.get(k)).intersect(&inner);
            if !i.is_zero() {
                out.insert((p, q), i);
            }
        }
    }
    let total: usize = out.values().map(|s| s.dim()).sum();
    if total != n {
        return Err(Error::Assertion(format!("Deligne pieces have total dimension {total} on ℂ^{n}")));
    }
    Ok(out)
}

/// Check that the pieces are direct and rebuild W and F.
pub fn bigrading_reconstructs(b: &Bigrading, w: &IncFiltration<GaussRational>, f: &PeriodPoint) -> bool {
    let n = w.dim();
    let span = |pred: &dyn Fn(i64, i64) -> bool| {
        let mut s = CSubspace::zero(n);
        let mut d = 0;
        for ((p, q), v) in b {
            if pred(*p, *q) {
                s = s.sum(v);
                d += v.dim();
            }
        }
        (s, d)
    };
    let (all, d) = span(&|_, _| true);
    if !all.is_full() || d != n {
        return false;
    }
    (w.lo()..=w.hi()).all(|k| span(&|p, q| p + q <= k).0 == *w.get(k))
        && (f.lo()..=f.hi()).all(|p0| span(&|p, _| p >= p0).0 == *f.get(p0))
}

/// conj(I^{p,q}) ⊆ I^{q,p} ⊕ ⊕_{p′<q, q′<p} I^{p′,q′}.
pub fn bigrading_conjugation_ok(b: &Bigrading) -> bool {
    let Some(n) = b.values().next().map(|s| s.ambient_dim()) else { return true };
    b.iter().all(|((p, q), v)| {
        let mut target = b.get(&(*q, *p)).cloned().unwrap_or_else(|| CSubspace::zero(n));
        for ((pp, qq), u) in b {
            if pp < q && qq < p {
                target = target.sum(u);
            }
        }
        target.contains(&v.conj())
    })
}

/// Every piece is conjugation-paired exactly.
pub fn is_r_split(b: &Bigrading) -> bool {
    b.iter().all(|((p, q), v)| b.get(&(*q, *p)).is_some_and(|u| *u == v.conj()))
}
