//! Admissibility of a cone acting on (V, W): a compatible family M(τ, W)
//! over the faces τ.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::relative::{relative_monodromy, RmfResult, RmfVerdict};
use crate::cones::{Cone, PolyCone};
use crate::error::{Error, Result};
use crate::exactlin::{unflatten, QMatrix, Rational};
use crate::filtration::{hom_filtration, hom_op, FilteredNilp, QFiltration};

/// Linear map from the cone's ambient ℚ^d to End(V).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    /// Points are n×n matrices flattened row-major.
    Flattened { n: usize },
    /// e_i ↦ mats[i].
    Linear(Vec<QMatrix>),
    /// ad of the inner action on End(V) ≅ Hom(V, V).
    Adjoint(Box<Action>),
}

impl Action {
    pub fn space_dim(&self) -> usize {
        match self {
            Action::Flattened { n } => *n,
            Action::Linear(m) => m.first().map_or(0, |a| a.rows()),
            Action::Adjoint(inner) => inner.space_dim().pow(2),
        }
    }
    pub fn apply(&self, v: &[Rational]) -> QMatrix {
        match self {
            Action::Flattened { n } => unflatten(*n, v),
            Action::Linear(mats) => {
                let n = self.space_dim();
                v.iter().zip(mats).fold(QMatrix::zeros(n, n), |acc, (c, m)| if c.signum() == 0 { acc } else { acc.add(&m.scale(c)) })
            }
            Action::Adjoint(inner) => {
                let m = inner.apply(v);
                hom_op(&m, &m)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibleVerdict {
    Admissible,
    NotAdmissible,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceFiltration {
    /// Indices into the cone's generator list.
    pub face: Vec<usize>,
    pub filtration: QFiltration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub verdict: AdmissibleVerdict,
    pub face_filtrations: Vec<FaceFiltration>,
    pub failure: Option<String>,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.verdict == AdmissibleVerdict::Admissible
    }
    pub fn filtration_of(&self, face: &[usize]) -> Option<&QFiltration> {
        self.face_filtrations.iter().find(|f| f.face == face).map(|f| &f.filtration)
    }
}

fn sum_of(cone: &PolyCone, face: &[usize]) -> Vec<Rational> {
    let mut v = vec![Rational::int(0); cone.ambient_dim()];
    for &i in face {
        for (x, g) in v.iter_mut().zip(&cone.generators()[i]) {
            *x = x.clone() + g;
        }
    }
    v
}

fn preserves(n: &QMatrix, m: &QFiltration, shift: i64) -> Option<i64> {
    (m.lo() - 1..=m.hi() + 2).find(|&k| !m.get(k - shift).contains(&m.get(k).image(n)))
}

/// Checks the four admissibility conditions on generators, computing
/// M(τ, W) at the sum of τ's generators for every face τ.
pub fn check_admissible(sigma: &PolyCone, act: &Action, w: &QFiltration) -> Result<AdmissibilityReport> {
    let gens: Vec<QMatrix> = sigma.generators().iter().map(|g| act.apply(g)).collect();
    for (i, g) in gens.iter().enumerate() {
        if g.rows() != w.dim() {
            return Err(Error::DimensionMismatch(format!("action lands in {}x{} matrices, W on ℚ^{}", g.rows(), g.cols(), w.dim())));
        }
        if !g.is_nilpotent() {
            return Err(Error::NotNilpotent(format!("image of generator {i}")));
        }
        FilteredNilp::new(w.clone(), g.clone())?;
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if !gens[i].commutes(&gens[j]) {
                return Err(Error::NonCommuting);
            }
        }
    }
    let lattice = sigma.face_lattice();
    let results: Vec<RmfResult> = lattice
        .faces
        .par_iter()
        .map(|f| {
            let n = act.apply(&sum_of(sigma, f));
            relative_monodromy(&FilteredNilp::new(w.clone(), n).expect("sum of valid generators"))
        })
        .collect();

    let bad = |verdict, msg: String, done: Vec<FaceFiltration>| AdmissibilityReport { verdict, face_filtrations: done, failure: Some(msg) };
    let mut ff = Vec::with_capacity(results.len());
    for (f, r) in lattice.faces.iter().zip(&results) {
        match r.verdict {
            RmfVerdict::Exists => ff.push(FaceFiltration { face: f.clone(), filtration: r.filtration.clone().unwrap() }),
            RmfVerdict::NotExists => {
                return Ok(bad(
                    AdmissibleVerdict::NotAdmissible,
                    format!("M(τ, W) does not exist for face {f:?}: {}", r.witness.clone().unwrap_or_default()),
                    ff,
                ))
            }
            RmfVerdict::Undecided => {
                return Ok(bad(AdmissibleVerdict::Undecided, format!("face {f:?}: {}", r.witness.clone().unwrap_or_default()), ff))
            }
        }
    }
    let m_of = |face: &[usize]| -> &QFiltration { &ff.iter().find(|e| e.face == face).unwrap().filtration };

    // (1) the minimal face σ ∩ (−σ) has M = W.
    let minimal = &lattice.faces[0];
    if m_of(minimal) != w {
        return Ok(bad(AdmissibleVerdict::NotAdmissible, "condition (1): M(σ ∩ −σ, W) ≠ W".into(), ff));
    }
    for f in &lattice.faces {
        let m = m_of(f);
        // (2) σ-generators preserve M(τ).
        for (i, g) in gens.iter().enumerate() {
            if let Some(k) = preserves(g, m, 0) {
                return Ok(bad(AdmissibleVerdict::NotAdmissible, format!("condition (2): generator {i} moves M({f:?})_{k}"), ff));
            }
        }
        // (3) τ-generators lower M(τ) by two.
        for &i in f {
            if let Some(k) = preserves(&gens[i], m, 2) {
                return Ok(bad(AdmissibleVerdict::NotAdmissible, format!("condition (3): generator {i} of face {f:?} at M_{k}"), ff));
            }
        }
        // (4) M(τ′) = M(N, M(τ)) for τ′ the smallest face containing τ and N.
        for (i, g) in gens.iter().enumerate() {
            let mut v = sum_of(sigma, f);
            for (x, y) in v.iter_mut().zip(&sigma.generators()[i]) {
                *x = x.clone() + y;
            }
            let tp = sigma.smallest_face_indices(&v)?;
            let rel = relative_monodromy(&FilteredNilp::new(m.clone(), g.clone())?);
            let ok = rel.is_exists() && rel.filtration.as_ref() == Some(m_of(&tp));
            if !ok {
                let msg = format!("condition (4): M(N_{i}, M({f:?})) ≠ M({tp:?})");
                let verdict = if rel.verdict == RmfVerdict::Undecided { AdmissibleVerdict::Undecided } else { AdmissibleVerdict::NotAdmissible };
                return Ok(bad(verdict, msg, ff));
            }
        }
    }
    Ok(AdmissibilityReport { verdict: AdmissibleVerdict::Admissible, face_filtrations: ff, failure: None })
}

/// Admissibility of a cone of matrices acting on itself.
pub fn check_admissible_cone(sigma: &Cone, w: &QFiltration) -> Result<AdmissibilityReport> {
    check_admissible(sigma.poly(), &Action::Flattened { n: sigma.ambient_dim() }, w)
}

/// Admissibility of the adjoint action on End(V) with the Hom filtration.
pub fn check_adjoint_admissible(sigma: &PolyCone, act: &Action, w: &QFiltration) -> Result<AdmissibilityReport> {
    check_admissible(sigma, &Action::Adjoint(Box::new(act.clone())), &hom_filtration(w, w))
}
