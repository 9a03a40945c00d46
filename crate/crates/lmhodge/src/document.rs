//! JSON problem documents and reports, as read and written by the binary.
//!
//! A problem is `{"kind": ..., "payload": ..., "options": ...}`. Every number
//! is an exact string ("3", "-1/2"); JSON number literals are rejected by the
//! scalar parsers. Reports carry a SHA-256 digest of the canonical
//! re-serialization of the problem, so two documents that parse to the same
//! data get the same digest.

use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::cones::{Cone, MarkedCone};
use crate::corpus::{corpus_run_with, Window};
use crate::error::{Error, Result};
use crate::exactlin::{QMatrix, Rational};
use crate::fans::{check_face_closure, check_fan, check_strong_compat, weakfan_falsify, FanSet, GroupData};
use crate::filtration::{FilteredNilp, QFiltration};
use crate::hodge::{HodgeFrame, PeriodPoint};
use crate::monodromy::{check_adjoint_admissible, check_admissible_cone, relative_monodromy, verify_rmf, Action, RmfVerdict};
use crate::neron::{
    build_relcomplete_fan, compute_b1, kummer_type, relative_completeness_probe, sigma_tau_upsilon, NeronContext,
    TwoWeightData,
};
use crate::orbits::{mixed_orbit_test, relative_orbit_test, OrbitMode, OrbitVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Rmf,
    Admissible,
    Orbit,
    Fan,
    Weakfan,
    NeronSigmaUpsilon,
    NeronKummer,
    NeronB1,
    NeronBuildFan,
    NeronProbe,
    Corpus,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Range of n for ℤ-indexed cone families.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<Window>,
}

/// The untyped envelope.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub kind: Kind,
    pub payload: Value,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdmissiblePayload {
    pub cone: Cone,
    #[serde(rename = "W")]
    pub w: QFiltration,
    /// Also check the adjoint action on End(V).
    #[serde(default)]
    pub adjoint: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitCone {
    Cone(Cone),
    MarkedCone(MarkedCone),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitPayload {
    pub frame: HodgeFrame,
    #[serde(flatten)]
    pub cone: OrbitCone,
    #[serde(rename = "F")]
    pub f: PeriodPoint,
    #[serde(default)]
    pub mode: OrbitMode,
}

/// A fan document with its optional group.
#[derive(Clone, Debug)]
pub struct FanPayload {
    pub fan: FanSet,
    pub group: Option<GroupData>,
}

impl Serialize for FanPayload {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut v = serde_json::to_value(&self.fan).map_err(serde::ser::Error::custom)?;
        if let (Some(g), Value::Object(m)) = (&self.group, &mut v) {
            m.insert("group".into(), serde_json::to_value(g).map_err(serde::ser::Error::custom)?);
        }
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FanPayload {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let mut v = Map::<String, Value>::deserialize(d)?;
        let group = v.remove("group").map(serde_json::from_value).transpose().map_err(D::Error::custom)?;
        let fan = serde_json::from_value(Value::Object(v)).map_err(D::Error::custom)?;
        Ok(FanPayload { fan, group })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeakfanPayload {
    pub fan: FanPayload,
    pub frame: HodgeFrame,
    pub candidates: Vec<PeriodPoint>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NeronConePayload {
    pub frame: HodgeFrame,
    pub gamma_prime: Vec<QMatrix>,
    pub face: Vec<usize>,
    pub upsilon: QMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct B1Payload {
    pub gamma: QMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildFanPayload {
    pub data: TwoWeightData,
    /// Section coordinates x; defaults to x = 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xs: Option<Vec<Vec<Rational>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbePayload {
    pub data: TwoWeightData,
    pub probes: Vec<MarkedCone>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusPayload {
    pub name: String,
}

/// A parsed, validated problem.
#[derive(Clone, Debug)]
pub enum Problem {
    Rmf(FilteredNilp),
    Admissible(AdmissiblePayload),
    Orbit(Box<OrbitPayload>),
    Fan(FanPayload),
    Weakfan(Box<WeakfanPayload>),
    NeronSigmaUpsilon(Box<NeronConePayload>),
    NeronKummer(Box<NeronConePayload>),
    NeronB1(B1Payload),
    NeronBuildFan(BuildFanPayload),
    NeronProbe(ProbePayload),
    Corpus(CorpusPayload),
}

fn typed<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Format(e.to_string()))
}

fn untyped<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("documents serialize")
}

impl ProblemDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    /// Accept either a full document or a bare payload of the given kind.
    pub fn parse_as(text: &str, kind: Kind) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let is_envelope = v.as_object().is_some_and(|m| m.contains_key("kind") && m.contains_key("payload"));
        let doc = if is_envelope {
            serde_json::from_value::<ProblemDocument>(v).map_err(|e| Error::Format(e.to_string()))?
        } else {
            ProblemDocument { kind, payload: v, options: Options::default() }
        };
        if doc.kind != kind {
            return Err(Error::Format(format!("document kind {:?} where {:?} was expected", doc.kind, kind)));
        }
        Ok(doc)
    }

    pub fn problem(&self) -> Result<Problem> {
        let p = &self.payload;
        Ok(match self.kind {
            Kind::Rmf => Problem::Rmf(typed(p)?),
            Kind::Admissible => Problem::Admissible(typed(p)?),
            Kind::Orbit => Problem::Orbit(Box::new(typed(p)?)),
            Kind::Fan => Problem::Fan(typed(p)?),
            Kind::Weakfan => Problem::Weakfan(Box::new(typed(p)?)),
            Kind::NeronSigmaUpsilon => Problem::NeronSigmaUpsilon(Box::new(typed(p)?)),
            Kind::NeronKummer => Problem::NeronKummer(Box::new(typed(p)?)),
            Kind::NeronB1 => Problem::NeronB1(typed(p)?),
            Kind::NeronBuildFan => Problem::NeronBuildFan(typed(p)?),
            Kind::NeronProbe => Problem::NeronProbe(typed(p)?),
            Kind::Corpus => Problem::Corpus(typed(p)?),
        })
    }

    /// The document with its payload re-serialized from the parsed data.
    pub fn canonical(&self) -> Result<Self> {
        Ok(Problem::document(&self.problem()?, self.options.clone()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

impl Problem {
    pub fn kind(&self) -> Kind {
        match self {
            Problem::Rmf(_) => Kind::Rmf,
            Problem::Admissible(_) => Kind::Admissible,
            Problem::Orbit(_) => Kind::Orbit,
            Problem::Fan(_) => Kind::Fan,
            Problem::Weakfan(_) => Kind::Weakfan,
            Problem::NeronSigmaUpsilon(_) => Kind::NeronSigmaUpsilon,
            Problem::NeronKummer(_) => Kind::NeronKummer,
            Problem::NeronB1(_) => Kind::NeronB1,
            Problem::NeronBuildFan(_) => Kind::NeronBuildFan,
            Problem::NeronProbe(_) => Kind::NeronProbe,
            Problem::Corpus(_) => Kind::Corpus,
        }
    }

    fn payload(&self) -> Value {
        match self {
            Problem::Rmf(x) => untyped(x),
            Problem::Admissible(x) => untyped(x),
            Problem::Orbit(x) => untyped(x),
            Problem::Fan(x) => untyped(x),
            Problem::Weakfan(x) => untyped(x),
            Problem::NeronSigmaUpsilon(x) | Problem::NeronKummer(x) => untyped(x),
            Problem::NeronB1(x) => untyped(x),
            Problem::NeronBuildFan(x) => untyped(x),
            Problem::NeronProbe(x) => untyped(x),
            Problem::Corpus(x) => untyped(x),
        }
    }

    pub fn document(&self, options: Options) -> ProblemDocument {
        ProblemDocument { kind: self.kind(), payload: self.payload(), options }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Exists,
    NotExists,
    Admissible,
    NotAdmissible,
    Generates,
    Fails,
    Fan,
    NotFan,
    NoViolationFound,
    WeakFanViolation,
    Computed,
    Covered,
    NotCovered,
    Pass,
    Fail,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timings {
    pub parse_ms: u128,
    pub run_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub kind: Kind,
    pub verdict: Verdict,
    pub certificates: Value,
    /// Wall-clock times; omitted unless requested, since they break
    /// byte-for-byte reproducibility.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
    pub input_digest: String,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// 0 definite, 2 undecided, 4 when a corpus claim failed.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Undecided => 2,
            Verdict::Fail => 4,
            _ => 0,
        }
    }
}

/// Exit status for an error: 2 undecided, 3 bad input, 4 internal.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::UndecidedRmf(_) => 2,
        Error::Assertion(_) | Error::OracleDisagreement(_) => 4,
        _ => 3,
    }
}

pub fn digest(doc: &ProblemDocument) -> String {
    let bytes = serde_json::to_vec(doc).expect("documents serialize");
    hex::encode(Sha256::digest(&bytes))
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub timings: bool,
}

/// Validate and run a document, optionally timing the two phases.
pub fn run_timed(doc: &ProblemDocument, opts: RunOptions) -> Result<Report> {
    let t0 = Instant::now();
    let problem = doc.problem()?;
    let canonical = problem.document(doc.options.clone());
    let parse_ms = t0.elapsed().as_millis();
    let t1 = Instant::now();
    let (verdict, certificates) = run_problem(&problem, &doc.options)?;
    let timings = opts.timings.then(|| Timings { parse_ms, run_ms: t1.elapsed().as_millis() });
    Ok(Report { kind: doc.kind, verdict, certificates, timings, input_digest: digest(&canonical) })
}

pub fn run(doc: &ProblemDocument) -> Result<Report> {
    let problem = doc.problem()?;
    let canonical = problem.document(doc.options.clone());
    let (verdict, certificates) = run_problem(&problem, &doc.options)?;
    Ok(Report { kind: doc.kind, verdict, certificates, timings: None, input_digest: digest(&canonical) })
}

fn orbit_verdict(v: &OrbitVerdict) -> Verdict {
    match v {
        OrbitVerdict::Generates => Verdict::Generates,
        OrbitVerdict::Fails(_) => Verdict::Fails,
        OrbitVerdict::Undecided => Verdict::Undecided,
    }
}

fn box_indices(m: usize, w: Window) -> Result<Vec<Vec<BigInt>>> {
    let width = (w.hi - w.lo + 1) as usize;
    if width.checked_pow(m as u32).is_none_or(|c| c > 4096) {
        return Err(Error::Format(format!("window of width {width} in {m} box coordinates is too large")));
    }
    let mut out: Vec<Vec<BigInt>> = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v| {
                (w.lo..=w.hi).map(move |k| {
                    let mut v = v.clone();
                    v.push(BigInt::from(k));
                    v
                })
            })
            .collect();
    }
    Ok(out)
}

fn run_problem(p: &Problem, opts: &Options) -> Result<(Verdict, Value)> {
    let window = opts.window.unwrap_or_default();
    match p {
        Problem::Rmf(x) => {
            let r = relative_monodromy(x);
            let verdict = match r.verdict {
                RmfVerdict::Exists => Verdict::Exists,
                RmfVerdict::NotExists => Verdict::NotExists,
                RmfVerdict::Undecided => Verdict::Undecided,
            };
            let check = r.filtration.as_ref().map(|m| verify_rmf(x, m));
            if check.as_ref().is_some_and(|c| !c.ok) {
                return Err(Error::Assertion("solver output failed independent verification".into()));
            }
            Ok((verdict, json!({ "result": r, "verification": check })))
        }
        Problem::Admissible(a) => {
            let r = check_admissible_cone(&a.cone, &a.w)?;
            let mut ok = r.is_admissible();
            let adj = if a.adjoint && ok {
                let n = a.cone.ambient_dim();
                let adj = check_adjoint_admissible(a.cone.poly(), &Action::Flattened { n }, &a.w)?;
                ok &= adj.is_admissible();
                Some(adj)
            } else {
                None
            };
            let v = if ok { Verdict::Admissible } else { Verdict::NotAdmissible };
            Ok((v, json!({ "cone": r, "adjoint": adj })))
        }
        Problem::Orbit(o) => {
            let r = match &o.cone {
                OrbitCone::Cone(c) => mixed_orbit_test(&o.frame, c, &o.f, o.mode)?,
                OrbitCone::MarkedCone(m) => relative_orbit_test(m, &o.f, &o.frame, o.mode)?,
            };
            Ok((orbit_verdict(&r.verdict), untyped(&r)))
        }
        Problem::Fan(f) => {
            let faces = check_face_closure(&f.fan);
            let pairs = check_fan(&f.fan)?;
            let compat = f.group.as_ref().map(|g| check_strong_compat(&f.fan, g)).transpose()?;
            let ok = faces.ok && pairs.ok && compat.as_ref().is_none_or(|c| c.ok());
            let v = if ok { Verdict::Fan } else { Verdict::NotFan };
            Ok((v, json!({ "face_closure": faces, "intersections": pairs, "strong_compatibility": compat })))
        }
        Problem::Weakfan(w) => {
            let r = weakfan_falsify(&w.fan.fan, &w.candidates, &w.frame)?;
            let v = if r.is_some() { Verdict::WeakFanViolation } else { Verdict::NoViolationFound };
            Ok((v, json!({ "violation": r })))
        }
        Problem::NeronSigmaUpsilon(n) => {
            let ctx = NeronContext::new(n.frame.clone(), n.gamma_prime.clone())?;
            let c = sigma_tau_upsilon(&ctx, &n.face, &n.upsilon)?;
            Ok((Verdict::Computed, json!({ "cone": c })))
        }
        Problem::NeronKummer(n) => {
            let ctx = NeronContext::new(n.frame.clone(), n.gamma_prime.clone())?;
            let c = sigma_tau_upsilon(&ctx, &n.face, &n.upsilon)?;
            let k = kummer_type(&ctx, &c, &n.face)?;
            Ok((Verdict::Computed, json!({ "cone": c, "kummer": k })))
        }
        Problem::NeronB1(b) => Ok((Verdict::Computed, untyped(&compute_b1(&b.gamma)?))),
        Problem::NeronBuildFan(b) => {
            let fan = build_relcomplete_fan(&b.data)?;
            let xs = b.xs.clone().unwrap_or_else(|| vec![vec![Rational::int(0); fan.section().len()]]);
            let ns = box_indices(fan.m(), window)?;
            let mut cones = Vec::new();
            for x in &xs {
                for n in &ns {
                    let n_str: Vec<String> = n.iter().map(|k| k.to_string()).collect();
                    cones.push(json!({ "x": x, "n": n_str, "cone": fan.cone(x, n)? }));
                }
            }
            let members = fan.window(&xs, &ns)?;
            let check = check_fan(&members)?;
            let v = if check.ok { Verdict::Fan } else { Verdict::NotFan };
            Ok((
                v,
                json!({
                    "X": fan.x_space(),
                    "Y": fan.y_space(),
                    "section": fan.section(),
                    "e": fan.e_basis(),
                    "cones": cones,
                    "intersections": check,
                }),
            ))
        }
        Problem::NeronProbe(pr) => {
            let fan = build_relcomplete_fan(&pr.data)?;
            let reps = relative_completeness_probe(&fan, &pr.probes);
            let v = if reps.iter().all(|r| r.covered) { Verdict::Covered } else { Verdict::NotCovered };
            Ok((v, untyped(&reps)))
        }
        Problem::Corpus(c) => {
            let r = corpus_run_with(&c.name, window)?;
            let v = if r.pass { Verdict::Pass } else { Verdict::Fail };
            Ok((v, untyped(&r)))
        }
    }
}
