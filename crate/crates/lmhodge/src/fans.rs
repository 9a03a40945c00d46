//! Finite fans and weak fans of nilpotent cones, compatibility with a group Γ,
//! and the monoids Γ(σ).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use rayon::prelude::*;
use serde::de::Deserializer;
use serde::{Deserialize, Serialize};

use crate::cones::{Cone, MarkedCone, PolyCone};
use crate::error::{Error, Result};
use crate::exactlin::{QMatrix, Rational, Ring};
use crate::hodge::{HodgeFrame, PeriodPoint};
use crate::orbits::{mixed_orbit_test, relative_orbit_test, OrbitMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Absolute,
    Marked,
}

/// A finite set of sharp cones, deduplicated up to equality of cones.
/// `window` lists the members on which Γ-compatibility is required; the rest
/// only serve as targets (for Γ-infinite fans cut to a finite window).
#[derive(Clone, Debug)]
pub struct FanSet {
    flavor: Flavor,
    cones: Vec<Cone>,
    marked: Vec<MarkedCone>,
    window: Option<Vec<usize>>,
}

fn dedup_by<T: Clone>(xs: Vec<T>, same: impl Fn(&T, &T) -> bool) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for x in xs {
        if !out.iter().any(|y| same(y, &x)) {
            out.push(x);
        }
    }
    out
}

impl FanSet {
    pub fn absolute(cones: Vec<Cone>) -> Result<Self> {
        if cones.is_empty() {
            return Err(Error::Format("a fan needs at least one cone".into()));
        }
        if let Some(i) = cones.iter().position(|c| !c.is_sharp()) {
            return Err(Error::Format(format!("cone {i} is not sharp")));
        }
        let n = cones[0].ambient_dim();
        if cones.iter().any(|c| c.ambient_dim() != n) {
            return Err(Error::DimensionMismatch("cones live on different spaces".into()));
        }
        Ok(FanSet { flavor: Flavor::Absolute, cones: dedup_by(cones, |a, b| a.same_cone(b)), marked: Vec::new(), window: None })
    }

    pub fn marked(cones: Vec<MarkedCone>) -> Result<Self> {
        if cones.is_empty() {
            return Err(Error::Format("a fan needs at least one cone".into()));
        }
        if let Some(i) = cones.iter().position(|c| !c.poly().is_sharp()) {
            return Err(Error::Format(format!("marked cone {i} is not sharp")));
        }
        Ok(FanSet { flavor: Flavor::Marked, cones: Vec::new(), marked: dedup_by(cones, |a, b| a.same_cone(b)), window: None })
    }

    pub fn with_window(mut self, window: Vec<usize>) -> Result<Self> {
        if let Some(&i) = window.iter().find(|&&i| i >= self.len()) {
            return Err(Error::Format(format!("window index {i} out of range")));
        }
        self.window = Some(window);
        Ok(self)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }
    pub fn marked_cones(&self) -> &[MarkedCone] {
        &self.marked
    }
    pub fn window(&self) -> Vec<usize> {
        self.window.clone().unwrap_or_else(|| (0..self.len()).collect())
    }
    pub fn len(&self) -> usize {
        match self.flavor {
            Flavor::Absolute => self.cones.len(),
            Flavor::Marked => self.marked.len(),
        }
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
    pub fn poly(&self, i: usize) -> &PolyCone {
        match self.flavor {
            Flavor::Absolute => self.cones[i].poly(),
            Flavor::Marked => self.marked[i].poly(),
        }
    }
    fn position(&self, p: &PolyCone) -> Option<usize> {
        (0..self.len()).find(|&i| self.poly(i).same_cone(p))
    }
}

#[derive(Serialize, Deserialize)]
struct RawFan {
    flavor: Flavor,
    cones: Vec<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    window: Option<Vec<usize>>,
}

impl Serialize for FanSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let cones = match self.flavor {
            Flavor::Absolute => self.cones.iter().map(serde_json::to_value).collect::<std::result::Result<Vec<_>, _>>(),
            Flavor::Marked => self.marked.iter().map(serde_json::to_value).collect(),
        }
        .map_err(serde::ser::Error::custom)?;
        RawFan { flavor: self.flavor, cones, window: self.window.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FanSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = RawFan::deserialize(d)?;
        let fan = match r.flavor {
            Flavor::Absolute => {
                let cs = r.cones.into_iter().map(serde_json::from_value).collect::<std::result::Result<Vec<Cone>, _>>();
                FanSet::absolute(cs.map_err(D::Error::custom)?)
            }
            Flavor::Marked => {
                let cs = r.cones.into_iter().map(serde_json::from_value).collect::<std::result::Result<Vec<MarkedCone>, _>>();
                FanSet::marked(cs.map_err(D::Error::custom)?)
            }
        }
        .map_err(D::Error::custom)?;
        match r.window {
            Some(w) => fan.with_window(w).map_err(D::Error::custom),
            None => Ok(fan),
        }
    }
}

/// A face of member `cone` given by its generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MissingFace {
    pub cone: usize,
    pub face: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceClosureReport {
    pub ok: bool,
    pub missing: Vec<MissingFace>,
}

pub fn check_face_closure(fan: &FanSet) -> FaceClosureReport {
    let missing: Vec<MissingFace> = (0..fan.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let p = fan.poly(i);
            let lat = p.face_lattice();
            lat.faces
                .into_iter()
                .filter(|f| fan.position(&p.sub_cone(f)).is_none())
                .map(move |face| MissingFace { cone: i, face })
                .collect::<Vec<_>>()
        })
        .collect();
    FaceClosureReport { ok: missing.is_empty(), missing }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanViolation {
    pub first: usize,
    pub second: usize,
    /// Primitive integral generators of σ ∩ σ′ in the flattened coordinates.
    pub intersection: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanCheck {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<FanViolation>,
}

/// σ ∩ σ′ is a face of both, for every pair.
pub fn check_fan(fan: &FanSet) -> Result<FanCheck> {
    let pairs: Vec<(usize, usize)> = (0..fan.len()).flat_map(|i| (i..fan.len()).map(move |j| (i, j))).collect();
    let bad = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<Option<FanViolation>> {
            let (a, b) = (fan.poly(i), fan.poly(j));
            let meet = a.intersect(b)?;
            if meet.is_face_of(a)? && meet.is_face_of(b)? {
                return Ok(None);
            }
            let rays = meet
                .canonical_rays()
                .unwrap_or_default()
                .into_iter()
                .map(|r| r.into_iter().map(Rational::from_bigint).collect())
                .collect();
            Ok(Some(FanViolation { first: i, second: j, intersection: rays }))
        })
        .collect::<Result<Vec<_>>>()?;
    let violation = bad.into_iter().flatten().next();
    Ok(FanCheck { ok: violation.is_none(), violation })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakFanViolation {
    pub first: usize,
    pub second: usize,
    pub candidate: usize,
}

/// Look for σ ≠ σ′ whose relative interiors meet and a candidate F for which
/// both generate. A `None` is not a proof of the weak-fan property.
pub fn weakfan_falsify(fan: &FanSet, candidates: &[PeriodPoint], frame: &HodgeFrame) -> Result<Option<WeakFanViolation>> {
    let generates = |i: usize, f: &PeriodPoint| -> Result<bool> {
        let r = match fan.flavor {
            Flavor::Absolute => mixed_orbit_test(frame, &fan.cones[i], f, OrbitMode::Certified)?,
            Flavor::Marked => relative_orbit_test(&fan.marked[i], f, frame, OrbitMode::Certified)?,
        };
        Ok(r.verdict.generates())
    };
    for i in 0..fan.len() {
        for j in i + 1..fan.len() {
            let (a, b) = (fan.poly(i), fan.poly(j));
            if a.same_cone(b) || !a.relative_interiors_meet(b)? {
                continue;
            }
            for (k, f) in candidates.iter().enumerate() {
                if generates(i, f)? && generates(j, f)? {
                    return Ok(Some(WeakFanViolation { first: i, second: j, candidate: k }));
                }
            }
        }
    }
    Ok(None)
}

/// How membership in Γ is decided for elements that are not generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "support")]
pub enum Membership {
    /// Integral with integral inverse.
    Integral,
    /// Integral and unipotent.
    IntegralUnipotent,
    /// Integral unipotent with γ − 1 supported on the nonzero entries of the mask.
    Pattern(QMatrix),
}

/// Γ given by generators plus a membership rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupData {
    pub generators: Vec<QMatrix>,
    #[serde(skip)]
    pub unipotent: Vec<bool>,
    pub membership: Membership,
}

#[derive(Deserialize)]
struct RawGroup {
    generators: Vec<QMatrix>,
    #[serde(default)]
    membership: Option<Membership>,
}

impl<'de> Deserialize<'de> for GroupData {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RawGroup::deserialize(d)?;
        GroupData::new(r.generators, r.membership.unwrap_or(Membership::Integral)).map_err(serde::de::Error::custom)
    }
}

fn is_unipotent(g: &QMatrix) -> bool {
    g.is_square() && g.sub(&QMatrix::identity(g.rows())).is_nilpotent()
}

impl GroupData {
    pub fn new(generators: Vec<QMatrix>, membership: Membership) -> Result<Self> {
        let n = generators.first().map_or(0, |g| g.rows());
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(Error::DimensionMismatch(format!("group generator {i} has the wrong shape")));
            }
            if !g.is_integral() || !g.inverse().is_some_and(|x| x.is_integral()) {
                return Err(Error::Format(format!("group generator {i} is not in GL_n(ℤ)")));
            }
        }
        let unipotent = generators.iter().map(is_unipotent).collect();
        let out = GroupData { generators, unipotent, membership };
        if let Some(i) = out.generators.iter().position(|g| !out.contains(g)) {
            return Err(Error::Format(format!("group generator {i} violates the membership rule")));
        }
        Ok(out)
    }

    /// Check that each generator lies in G_ℤ of the frame.
    pub fn validate(&self, frame: &HodgeFrame) -> Result<()> {
        match self.generators.iter().position(|g| !frame.in_integral_group(g)) {
            Some(i) => Err(Error::Format(format!("group generator {i} does not preserve W and the pairings"))),
            None => Ok(()),
        }
    }

    pub fn contains(&self, g: &QMatrix) -> bool {
        if !g.is_integral() || !g.inverse().is_some_and(|x| x.is_integral()) {
            return false;
        }
        match &self.membership {
            Membership::Integral => true,
            Membership::IntegralUnipotent => is_unipotent(g),
            Membership::Pattern(mask) => {
                let d = g.sub(&QMatrix::identity(g.rows()));
                mask.rows() == d.rows()
                    && mask.cols() == d.cols()
                    && d.is_nilpotent()
                    && (0..d.rows()).all(|i| (0..d.cols()).all(|j| d.get(i, j).is_zero() || !mask.get(i, j).is_zero()))
            }
        }
    }
}

const SCAN_LIMIT: u64 = 1 << 20;

fn lcm_upto(n: usize) -> BigInt {
    (1..=n.max(1)).fold(BigInt::from(1), |a, k| a.lcm(&BigInt::from(k)))
}

/// Smallest c > 0 with exp(cN) ∈ Γ. The log of an integral unipotent matrix
/// has denominators dividing lcm(1..n), so c lies on the grid (1/(L·|p|))ℤ
/// where p is the numerator of any nonzero entry of N.
pub fn minimal_exponent(n: &QMatrix, g: &GroupData) -> Result<Rational> {
    let Some(entry) = n.data().iter().find(|x| !x.is_zero()) else {
        return Err(Error::NotIntegralizable("zero generator".into()));
    };
    if !n.is_nilpotent() {
        return Err(Error::NotNilpotent("ray generator".into()));
    }
    let step = Rational::new(1, lcm_upto(n.rows()) * entry.numer().abs());
    let mut c = step.clone();
    for _ in 0..SCAN_LIMIT {
        if g.contains(&n.scale(&c).exp_nilpotent()) {
            return Ok(c);
        }
        c = c + &step;
    }
    Err(Error::NotIntegralizable("no integral exponential on the ray within the scan limit".into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaSigma {
    pub scalars: Vec<Rational>,
    pub generators: Vec<QMatrix>,
}

/// Monoid generators exp(c_i N_i) of Γ ∩ exp(σ) for simplicial σ.
pub fn gamma_sigma(sigma: &Cone, g: &GroupData) -> Result<GammaSigma> {
    let nonzero: Vec<&QMatrix> = sigma.generators().iter().filter(|m| !m.is_zero()).collect();
    if sigma.rank() != nonzero.len() {
        return Err(Error::NotSimplicial);
    }
    let mut scalars = Vec::new();
    let mut out = Vec::new();
    for n in nonzero {
        let c = minimal_exponent(n, g)?;
        out.push(n.scale(&c).exp_nilpotent());
        scalars.push(c);
    }
    Ok(GammaSigma { scalars, generators: out })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdMiss {
    pub cone: usize,
    pub generator: usize,
    pub inverse: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatReport {
    pub compatible: bool,
    pub strong: bool,
    pub missing: Vec<AdMiss>,
    pub non_integral_cones: Vec<usize>,
}

impl CompatReport {
    pub fn ok(&self) -> bool {
        self.compatible && self.strong
    }
}

/// Ad(γ^{±1})σ ∈ Σ for window members and generators; every member is
/// spanned by rays carrying nontrivial Γ-elements.
pub fn check_strong_compat(fan: &FanSet, g: &GroupData) -> Result<CompatReport> {
    let mut missing = Vec::new();
    for i in fan.window() {
        for (k, gamma) in g.generators.iter().enumerate() {
            for inverse in [false, true] {
                let h = if inverse { gamma.inverse().expect("generator in GL_n(ℤ)") } else { gamma.clone() };
                let moved = match fan.flavor {
                    Flavor::Absolute => fan.cones[i].ad(&h)?.poly().clone(),
                    Flavor::Marked => fan.marked[i].ad(&h)?.poly().clone(),
                };
                if fan.position(&moved).is_none() {
                    missing.push(AdMiss { cone: i, generator: k, inverse });
                }
            }
        }
    }
    let mut non_integral = Vec::new();
    for i in 0..fan.len() {
        let rays: Vec<QMatrix> = match fan.flavor {
            Flavor::Absolute => fan.cones[i].generators().to_vec(),
            Flavor::Marked => fan.marked[i].pairs().iter().map(|(_, m)| m.clone()).collect(),
        };
        let ok = rays.iter().filter(|m| !m.is_zero()).all(|m| minimal_exponent(m, g).is_ok());
        if !ok {
            non_integral.push(i);
        }
    }
    Ok(CompatReport { compatible: missing.is_empty(), strong: non_integral.is_empty(), missing, non_integral_cones: non_integral })
}
