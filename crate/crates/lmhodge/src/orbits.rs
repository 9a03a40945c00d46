//! Nilpotent-orbit tests: transversality, pure and mixed generation, marked
//! cones, smallest generating cones and boundary points.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cones::{Cone, MarkedCone};
use crate::error::{Error, Result};
use crate::exactlin::{CMatrix, CSubspace, GaussRational, QMatrix, Rational};
use crate::fans::FanSet;
use crate::filtration::graded_piece;
use crate::hodge::{is_mhs, is_positive_hermitian, HodgeFrame, PeriodPoint};
use crate::monodromy::{check_admissible_cone, weight_filtration, AdmissibilityReport, AdmissibleVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OrbitMode {
    Certified,
    Sampled,
    #[default]
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "snake_case")]
pub enum OrbitVerdict {
    Generates,
    Fails(String),
    Undecided,
}

impl OrbitVerdict {
    pub fn generates(&self) -> bool {
        matches!(self, OrbitVerdict::Generates)
    }
    pub fn fails(&self) -> bool {
        matches!(self, OrbitVerdict::Fails(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub y: Vec<Rational>,
    pub in_d: bool,
}

/// Certificate for one pure weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PureCertificate {
    pub weight: i64,
    pub verdict: OrbitVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified: Option<OrbitVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampled: Option<OrbitVerdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub samples: Vec<Sample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub verdict: OrbitVerdict,
    pub transversality: Vec<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub admissibility: Option<AdmissibilityReport>,
    pub gr_certificates: Vec<PureCertificate>,
    pub samples: Vec<Sample>,
}

fn check_shape(n: &QMatrix, f: &PeriodPoint) -> Result<()> {
    if n.rows() != f.dim() || n.cols() != f.dim() {
        return Err(Error::DimensionMismatch(format!("{}x{} operator on a flag in ℂ^{}", n.rows(), n.cols(), f.dim())));
    }
    Ok(())
}

/// N F^p ⊆ F^{p−1} for every p.
pub fn griffiths_transversal(n: &QMatrix, f: &PeriodPoint) -> Result<bool> {
    check_shape(n, f)?;
    let nc = n.to_complex();
    Ok((f.lo()..=f.hi() + 1).all(|p| f.get(p - 1).contains(&f.get(p).image(&nc))))
}

/// exp(Σ z_j N_j) for complex coefficients.
pub fn exp_combination(ns: &[QMatrix], z: &[GaussRational], dim: usize) -> CMatrix {
    let mut s = CMatrix::zeros(dim, dim);
    for (n, c) in ns.iter().zip(z) {
        s = s.add(&n.to_complex().scale(c));
    }
    s.exp_nilpotent()
}

/// y = (2^k·n, …, 2^k·1) for k = 4..=10.
pub fn sample_schedule(count: usize) -> Vec<Vec<Rational>> {
    (4..=10)
        .map(|k| (0..count).map(|j| Rational::int((1i64 << k) * (count - j) as i64)).collect())
        .collect()
}

fn sampled_verdict(transversal: bool, samples: &[Sample]) -> OrbitVerdict {
    if !transversal {
        return OrbitVerdict::Fails("transversality".into());
    }
    let tail = samples.iter().rev().take_while(|s| s.in_d).count();
    if tail >= 2 {
        OrbitVerdict::Generates
    } else if samples.last().is_some_and(|s| !s.in_d) {
        OrbitVerdict::Fails("sampled orbit points leave D".into())
    } else {
        OrbitVerdict::Undecided
    }
}

/// Evaluate in_D(exp(Σ i y_j N_j) F) along the schedule.
pub fn sample_orbit(frame: &HodgeFrame, ns: &[QMatrix], f: &PeriodPoint) -> Result<Vec<Sample>> {
    sample_schedule(ns.len())
        .into_par_iter()
        .map(|y| {
            let z: Vec<GaussRational> = y.iter().map(|t| GaussRational::new(Rational::int(0), t.clone())).collect();
            let g = exp_combination(ns, &z, frame.rank());
            let in_d = frame.in_d(&f.transform(&g))?;
            Ok(Sample { y, in_d })
        })
        .collect()
}

/// Certified test on a pure frame: (W(N)[−w], F) must be a polarized MHS
/// whose primitive parts are positive for ⟨·, N^ℓ conj ·⟩.
fn certified_pure(frame: &HodgeFrame, w: i64, ns: &[QMatrix], f: &PeriodPoint, transversal: bool) -> Result<OrbitVerdict> {
    if !transversal {
        return Ok(OrbitVerdict::Fails("transversality".into()));
    }
    if !frame.in_check_d(f)? {
        return Ok(OrbitVerdict::Fails("F is not in the compact dual".into()));
    }
    let dim = frame.rank();
    let n = ns.iter().fold(QMatrix::zeros(dim, dim), |a, b| a.add(b));
    let m = weight_filtration(&n, w)?;
    if !is_mhs(&m, f)? {
        return Ok(OrbitVerdict::Fails("(W(N), F) is not a mixed Hodge structure".into()));
    }
    let q = frame.pairing(w).cloned().unwrap_or_else(|| QMatrix::zeros(0, 0)).to_complex();
    let nc = n.to_complex();
    let mc = m.to_complex();
    let fb = f.conj();
    let top = m.tight_window().1;
    for l in 0..=(top - w).max(0) {
        let k = w + l;
        let sq = graded_piece(&mc, k);
        if sq.dim() == 0 {
            continue;
        }
        // P_k = ker(N^{l+1}: gr_k → gr_{k−2l−2}).
        let nl1 = nc.pow(l as usize + 1);
        let below = mc.get(k - 2 * l as i64 - 3);
        let image_cond = below.annihilator().basis().mul(&nl1).mul(&sq.lift_matrix());
        let ker = if image_cond.rows() == 0 {
            CSubspace::full(sq.dim())
        } else {
            CSubspace::span(sq.dim(), &image_cond.kernel())
        };
        let nl = nc.pow(l as usize);
        let (plo, phi) = (f.lo(), f.hi());
        let mut covered = 0;
        for p in plo..=phi {
            let hpq = sq.induced_subspace(f.get(p)).intersect(&sq.induced_subspace(fb.get(k - p))).intersect(&ker);
            if hpq.is_zero() {
                continue;
            }
            covered += hpq.dim();
            let lifts: Vec<Vec<GaussRational>> = hpq.basis_vectors().iter().map(|c| sq.lift(c)).collect();
            let b = CMatrix::from_rows(dim, lifts);
            let c = GaussRational::i_pow(p - (k - p));
            let gram = b.mul(&q).mul(&nl).mul(&b.conj().transpose()).scale(&c);
            if !is_positive_hermitian(&gram) {
                return Ok(OrbitVerdict::Fails(format!("primitive part of gr^M_{k} of type ({p},{}) is not positive", k - p)));
            }
        }
        if covered != ker.dim() {
            return Ok(OrbitVerdict::Fails(format!("primitive part of gr^M_{k} has no Hodge decomposition")));
        }
    }
    Ok(OrbitVerdict::Generates)
}

/// Pure test on a weight-w frame.
pub fn pure_orbit_test(frame: &HodgeFrame, ns: &[QMatrix], f: &PeriodPoint, mode: OrbitMode) -> Result<OrbitReport> {
    let ws = frame.weights();
    if ws.len() > 1 {
        return Err(Error::Format("pure_orbit_test needs a pure frame".into()));
    }
    let w = ws.first().copied().unwrap_or(0);
    for n in ns {
        check_shape(n, f)?;
        if !frame.in_lie_algebra(n) {
            return Err(Error::NotInLieAlgebra("operator is not an infinitesimal isometry of the pairing".into()));
        }
    }
    let transversality = ns.iter().map(|n| griffiths_transversal(n, f)).collect::<Result<Vec<_>>>()?;
    let tr = transversality.iter().all(|&b| b);
    let certified = match mode {
        OrbitMode::Sampled => None,
        _ => Some(certified_pure(frame, w, ns, f, tr)?),
    };
    let samples = match mode {
        OrbitMode::Certified => Vec::new(),
        _ => sample_orbit(frame, ns, f)?,
    };
    let sampled = (mode != OrbitMode::Certified).then(|| sampled_verdict(tr, &samples));
    let verdict = match (&certified, &sampled) {
        (Some(c), Some(s)) => {
            let definite = |v: &OrbitVerdict| !matches!(v, OrbitVerdict::Undecided);
            if definite(c) && definite(s) && c.generates() != s.generates() {
                return Err(Error::OracleDisagreement(format!("weight {w}: certified {c:?} but sampled {s:?}")));
            }
            if definite(c) {
                c.clone()
            } else {
                s.clone()
            }
        }
        (Some(c), None) => c.clone(),
        (None, Some(s)) => s.clone(),
        (None, None) => OrbitVerdict::Undecided,
    };
    let cert = PureCertificate { weight: w, verdict: verdict.clone(), certified, sampled, samples: samples.clone() };
    Ok(OrbitReport { verdict, transversality, admissibility: None, gr_certificates: vec![cert], samples })
}

/// Admissibility, transversality and the pure test on every gr^W_w.
pub fn mixed_orbit_test(frame: &HodgeFrame, sigma: &Cone, f: &PeriodPoint, mode: OrbitMode) -> Result<OrbitReport> {
    if sigma.ambient_dim() != frame.rank() || f.dim() != frame.rank() {
        return Err(Error::DimensionMismatch(format!(
            "cone on ℚ^{}, flag on ℂ^{}, frame of rank {}",
            sigma.ambient_dim(),
            f.dim(),
            frame.rank()
        )));
    }
    let gens = sigma.generators().to_vec();
    for n in &gens {
        if !frame.in_lie_algebra(n) {
            return Err(Error::NotInLieAlgebra("cone generator is not in the Lie algebra of the frame".into()));
        }
    }
    let transversality = gens.iter().map(|n| griffiths_transversal(n, f)).collect::<Result<Vec<_>>>()?;
    let mut report = OrbitReport {
        verdict: OrbitVerdict::Generates,
        transversality: transversality.clone(),
        admissibility: None,
        gr_certificates: Vec::new(),
        samples: Vec::new(),
    };
    if !frame.in_check_d(f)? {
        report.verdict = OrbitVerdict::Fails("F is not in the compact dual".into());
        return Ok(report);
    }
    let adm = check_admissible_cone(sigma, frame.w())?;
    let adm_verdict = adm.verdict;
    report.admissibility = Some(adm);
    match adm_verdict {
        AdmissibleVerdict::NotAdmissible => {
            report.verdict = OrbitVerdict::Fails("admissibility".into());
            return Ok(report);
        }
        AdmissibleVerdict::Undecided => {
            report.verdict = OrbitVerdict::Undecided;
            return Ok(report);
        }
        AdmissibleVerdict::Admissible => {}
    }
    if transversality.iter().any(|b| !b) {
        report.verdict = OrbitVerdict::Fails("transversality".into());
        return Ok(report);
    }
    let certs = frame
        .weights()
        .into_par_iter()
        .map(|w| {
            let sub = frame.graded_frame(w)?;
            let sq = frame.graded_piece(w);
            let ns: Vec<QMatrix> = gens.iter().map(|n| sq.induced_map(n)).collect();
            let fw = frame.graded_flag(f, w);
            let mut r = pure_orbit_test(&sub, &ns, &fw, mode)?;
            let mut c = r.gr_certificates.remove(0);
            c.weight = w;
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    for c in &certs {
        match &c.verdict {
            OrbitVerdict::Fails(why) if report.verdict.generates() => {
                report.verdict = OrbitVerdict::Fails(format!("gr^W_{}: {why}", c.weight));
            }
            OrbitVerdict::Undecided if report.verdict.generates() => report.verdict = OrbitVerdict::Undecided,
            _ => {}
        }
    }
    report.gr_certificates = certs;
    Ok(report)
}

/// Marked-cone version: only the image cone in the Lie algebra matters.
pub fn relative_orbit_test(mk: &MarkedCone, f: &PeriodPoint, frame: &HodgeFrame, mode: OrbitMode) -> Result<OrbitReport> {
    mixed_orbit_test(frame, &mk.image_cone(), f, mode)
}

/// The smallest σ ∈ Σ containing τ with (σ, F) generating; it must be a face
/// of every such σ.
pub fn smallest_generating_cone(fan: &FanSet, tau: &Cone, f: &PeriodPoint, frame: &HodgeFrame) -> Result<Option<Cone>> {
    let mut a = Vec::new();
    for sigma in fan.cones() {
        if !sigma.poly().contains_cone(tau.poly()) {
            continue;
        }
        if mixed_orbit_test(frame, sigma, f, OrbitMode::Certified)?.verdict.generates() {
            a.push(sigma.clone());
        }
    }
    let Some(best) = a.iter().min_by_key(|s| s.rank()).cloned() else { return Ok(None) };
    for s in &a {
        if !best.is_face_of(s)? {
            return Err(Error::WeakFanViolation(format!(
                "the smallest candidate (rank {}) is not a face of a rank-{} member",
                best.rank(),
                s.rank()
            )));
        }
    }
    Ok(Some(best))
}

/// A point exp(a)·F over the boundary stratum of the face τ of σ.
#[derive(Clone, Debug)]
pub struct BoundaryPoint {
    pub sigma: Cone,
    pub tau: Cone,
    /// Coordinates with respect to σ's generators.
    pub a: Vec<GaussRational>,
    pub f: PeriodPoint,
}

pub fn classify_boundary(b: &BoundaryPoint, frame: &HodgeFrame, mode: OrbitMode) -> Result<OrbitReport> {
    if !b.tau.is_face_of(&b.sigma)? {
        return Err(Error::Format("τ is not a face of σ".into()));
    }
    if b.a.len() != b.sigma.generators().len() {
        return Err(Error::DimensionMismatch(format!(
            "{} coordinates for {} generators",
            b.a.len(),
            b.sigma.generators().len()
        )));
    }
    let g = exp_combination(b.sigma.generators(), &b.a, frame.rank());
    mixed_orbit_test(frame, &b.tau, &b.f.transform(&g), mode)
}
