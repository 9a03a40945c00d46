//! Relative monodromy filtration M(N, W): solver and verifier.

use serde::{Deserialize, Serialize};

use super::weight::weight_filtration;
use crate::error::{Error, Result};
use crate::exactlin::{QMatrix, QSubspace, Rational, Ring};
use crate::filtration::{graded_piece, FilteredNilp, QFiltration, SubQuotient};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RmfVerdict {
    Exists,
    NotExists,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RmfResult {
    pub verdict: RmfVerdict,
    pub filtration: Option<QFiltration>,
    /// Violated containment for NotExists; verifier diagnostics for Undecided.
    pub witness: Option<String>,
    /// "pure", "propagation" or "lift".
    pub decided_by: String,
}

impl RmfResult {
    fn exists(m: QFiltration, by: &str) -> Self {
        RmfResult { verdict: RmfVerdict::Exists, filtration: Some(m.normalized()), witness: None, decided_by: by.into() }
    }
    fn not_exists(w: String, by: &str) -> Self {
        RmfResult { verdict: RmfVerdict::NotExists, filtration: None, witness: Some(w), decided_by: by.into() }
    }
    pub fn is_exists(&self) -> bool {
        self.verdict == RmfVerdict::Exists
    }
    /// The filtration, or an error naming why there is none.
    pub fn into_filtration(self) -> Result<QFiltration> {
        match self.verdict {
            RmfVerdict::Exists => Ok(self.filtration.unwrap()),
            RmfVerdict::NotExists => Err(Error::NoRelativeMonodromy(self.witness.unwrap_or_default())),
            RmfVerdict::Undecided => Err(Error::UndecidedRmf(self.witness.unwrap_or_default())),
        }
    }
}

fn n_pow(e: i64) -> String {
    if e == 1 {
        "N".into()
    } else {
        format!("N^{e}")
    }
}

/// Which rule last changed a bound; used to name the violated containment.
#[derive(Clone, Debug)]
enum Why {
    Forced,
    Restriction,
    TopGraded,
    KernelInW,
    Push(i64),
    Pull(i64),
    Monotone,
}

impl Why {
    fn describe(&self, b: i64) -> String {
        match self {
            Why::Forced => "dimension count forced by the graded pieces".into(),
            Why::Restriction => format!("M ∩ W_{} = M(N, W|W_{})", b - 1, b - 1),
            Why::TopGraded => format!("M induces the weight filtration on gr^W_{b}"),
            Why::KernelInW => "ker N ∩ W_k ⊆ M_k".into(),
            Why::Push(k) => format!("N·M_{} ⊄ M_{}", k + 2, k),
            Why::Pull(k) => format!("N·M_{} ⊄ M_{}", k, k - 2),
            Why::Monotone => "monotonicity".into(),
        }
    }
}

enum Solved {
    Found(QFiltration, &'static str),
    Impossible(String, &'static str),
}

/// M(N, W), certified by `verify_rmf` whenever it is reported to exist.
pub fn relative_monodromy(x: &FilteredNilp) -> RmfResult {
    match solve(x) {
        Solved::Found(m, by) => {
            let check = verify_rmf(x, &m);
            if check.ok {
                RmfResult::exists(m, by)
            } else {
                RmfResult {
                    verdict: RmfVerdict::Undecided,
                    filtration: None,
                    witness: check.failure.map(|f| f.to_string()),
                    decided_by: by.into(),
                }
            }
        }
        Solved::Impossible(w, by) => RmfResult::not_exists(w, by),
    }
}

fn solve(x: &FilteredNilp) -> Solved {
    let dim = x.dim();
    let n = &x.n;
    if dim == 0 {
        return Solved::Found(QFiltration::pure(0, 0), "pure");
    }
    let (a, b) = x.w.tight_window();
    if a == b {
        return Solved::Found(weight_filtration(n, b).expect("N nilpotent"), "pure");
    }

    // Restriction to W_{b-1}, solved recursively in its echelon coordinates.
    let sub = SubQuotient::new(x.w.get(b - 1).clone(), QSubspace::zero(dim));
    let inner = FilteredNilp::new(sub.induced_filtration(&x.w), sub.induced_map(n)).expect("restriction of valid data");
    let mp = match solve(&inner) {
        Solved::Found(m, _) => m,
        Solved::Impossible(w, by) => return Solved::Impossible(format!("on W_{}: {w}", b - 1), by),
    };
    let lower = |k: i64| sub.pull_back(mp.get(k));

    let top = graded_piece(&x.w, b);
    let nb = top.induced_map(n);
    let mb = weight_filtration(&nb, b).expect("induced map is nilpotent");

    let kmin = mp.lo().min(mb.lo());
    let kmax = mp.hi().max(mb.hi());
    let forced = |k: i64| -> usize { mp.get(k).dim() + mb.get(k).dim() };

    match propagate(x, b, kmin, kmax, &lower, &|k| top.pull_back(mb.get(k)), &forced) {
        Propagation::Settled(m) => return Solved::Found(m, "propagation"),
        Propagation::Contradiction(w) => return Solved::Impossible(w, "propagation"),
        Propagation::Stalled => {}
    }
    match lift(x, b, &top, &nb, &lower, kmin, kmax) {
        Ok(m) => Solved::Found(m, "lift"),
        Err(w) => Solved::Impossible(w, "lift"),
    }
}

enum Propagation {
    Settled(QFiltration),
    Contradiction(String),
    Stalled,
}

/// Sound bound saturation low_k ⊆ M_k ⊆ up_k over k ∈ [kmin, kmax + 1].
fn propagate(
    x: &FilteredNilp,
    b: i64,
    kmin: i64,
    kmax: i64,
    lower: &dyn Fn(i64) -> QSubspace,
    top_pre: &dyn Fn(i64) -> QSubspace,
    forced: &dyn Fn(i64) -> usize,
) -> Propagation {
    let dim = x.dim();
    let n = &x.n;
    let hi = kmax + 1;
    let len = (hi - kmin + 1) as usize;
    let idx = |k: i64| (k - kmin) as usize;
    let ker_n = QSubspace::kernel_of(n);

    let mut low = Vec::with_capacity(len);
    let mut up = Vec::with_capacity(len);
    let mut why_low = Vec::with_capacity(len);
    let mut why_up = Vec::with_capacity(len);
    for k in kmin..=hi {
        if k >= kmax {
            low.push(QSubspace::full(dim));
            why_low.push(Why::Forced);
        } else {
            // Restriction import, then ker N ∩ W_k ⊆ M_k.
            let r = lower(k);
            let kw = ker_n.intersect(x.w.get(k));
            if r.contains(&kw) {
                low.push(r);
                why_low.push(Why::Restriction);
            } else {
                low.push(r.sum(&kw));
                why_low.push(Why::KernelInW);
            }
        }
        up.push(top_pre(k));
        why_up.push(Why::TopGraded);
    }
    let get = |v: &Vec<QSubspace>, k: i64, dflt_full: bool| -> QSubspace {
        if k < kmin {
            QSubspace::zero(dim)
        } else if k > hi {
            if dflt_full {
                QSubspace::full(dim)
            } else {
                v[len - 1].clone()
            }
        } else {
            v[idx(k)].clone()
        }
    };

    loop {
        let mut changed = false;
        for k in kmin..=hi {
            let i = idx(k);
            // low_k += N(low_{k+2}) + low_{k-1}
            let pushed = get(&low, k + 2, true).image(n);
            if !low[i].contains(&pushed) {
                low[i] = low[i].sum(&pushed);
                why_low[i] = Why::Push(k);
                changed = true;
            }
            let prev = get(&low, k - 1, true);
            if !low[i].contains(&prev) {
                low[i] = low[i].sum(&prev);
                why_low[i] = Why::Monotone;
                changed = true;
            }
            // up_k ∩= N⁻¹(up_{k-2}) ∩ up_{k+1}
            let pulled = get(&up, k - 2, true).preimage(n);
            if !pulled.contains(&up[i]) {
                up[i] = up[i].intersect(&pulled);
                why_up[i] = Why::Pull(k);
                changed = true;
            }
            let next = get(&up, k + 1, true);
            if !next.contains(&up[i]) {
                up[i] = up[i].intersect(&next);
                why_up[i] = Why::Monotone;
                changed = true;
            }
        }
        for k in kmin..=hi {
            let i = idx(k);
            let target = if k >= kmax { dim } else { forced(k) };
            if up[i].dim() < target || !up[i].contains(&low[i]) {
                return Propagation::Contradiction(why_up[i].describe(b));
            }
            if low[i].dim() > target {
                return Propagation::Contradiction(why_low[i].describe(b));
            }
        }
        if !changed {
            break;
        }
    }
    let settled = (kmin..=hi).all(|k| {
        let i = idx(k);
        low[i].dim() == up[i].dim()
    });
    if settled {
        let m = QFiltration::from_fn(dim, kmin, kmax, |k| low[idx(k)].clone()).expect("bounds are monotone");
        Propagation::Settled(m)
    } else {
        Propagation::Stalled
    }
}

/// Completion on the top graded piece: lift each Jordan chain of gr_b(N)
/// so that its image under N^{ℓ+1} lands in M_{b-ℓ-2} of the restriction.
fn lift(
    x: &FilteredNilp,
    b: i64,
    top: &SubQuotient<Rational>,
    nb: &QMatrix,
    lower: &dyn Fn(i64) -> QSubspace,
    kmin: i64,
    kmax: i64,
) -> std::result::Result<QFiltration, String> {
    let dim = x.dim();
    let n = &x.n;
    let gd = top.dim();
    let wprev = x.w.get(b - 1).basis_vectors();
    let mut chains: Vec<(Vec<Rational>, i64)> = Vec::new();
    let len = nb.nilpotency_index().unwrap_or(1).max(1);
    let mut npow = vec![QMatrix::identity(dim)];
    for _ in 0..len + 1 {
        let next = npow.last().unwrap().mul(n);
        npow.push(next);
    }
    let mut gpow = vec![QMatrix::identity(gd)];
    for _ in 0..len + 2 {
        let next = gpow.last().unwrap().mul(nb);
        gpow.push(next);
    }
    let gker = |e: usize| QSubspace::kernel_of(&gpow[e.min(len)]);
    for l in 0..len {
        let k = gker(l + 1);
        let s = gker(l).sum(&gker(l + 2).image(nb));
        for row in k.complement_rows(&s) {
            let p = k.basis().row(row).to_vec();
            let sp = top.lift(&p);
            let e = l + 1;
            let target = lower(b - l as i64 - 2);
            let ann = target.annihilator();
            let mut xv = vec![Rational::zero(); dim];
            if !ann.is_zero() && !wprev.is_empty() {
                let a_ne = ann.basis().mul(&npow[e]);
                let bt = QMatrix::from_cols(dim, &wprev);
                let sys = a_ne.mul(&bt);
                let rhs: Vec<Rational> = a_ne.mul_vec(&sp).into_iter().map(|v| -v).collect();
                let y = sys.solve(&rhs).ok_or_else(|| {
                    format!("{}·M_{} ⊄ M_{}", n_pow(e as i64), b + l as i64, b - l as i64 - 2)
                })?;
                xv = bt.mul_vec(&y);
            } else if !ann.is_zero() {
                let v = npow[e].mul_vec(&sp);
                if !target.contains_vec(&v) {
                    return Err(format!("{}·M_{} ⊄ M_{}", n_pow(e as i64), b + l as i64, b - l as i64 - 2));
                }
            }
            let pt: Vec<Rational> = sp.iter().zip(&xv).map(|(u, v)| u.clone() + v).collect();
            for j in 0..=l {
                chains.push((npow[j].mul_vec(&pt), b + l as i64 - 2 * j as i64));
            }
        }
    }
    QFiltration::from_fn(dim, kmin, kmax, |k| {
        let extra: Vec<Vec<Rational>> = chains.iter().filter(|(_, w)| *w <= k).map(|(v, _)| v.clone()).collect();
        lower(k).sum(&QSubspace::span(dim, &extra))
    })
    .map_err(|e| e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RmfFailure {
    /// 1: N M_w ⊆ M_{w-2}; 2: N^m iso on gr^M gr^W_w.
    pub condition: u8,
    pub w: i64,
    pub m: Option<i64>,
    pub detail: String,
}

impl std::fmt::Display for RmfFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.m {
            Some(m) => write!(f, "condition ({}) fails at w = {}, m = {}: {}", self.condition, self.w, m, self.detail),
            None => write!(f, "condition ({}) fails at w = {}: {}", self.condition, self.w, self.detail),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RmfCheck {
    pub ok: bool,
    pub failure: Option<RmfFailure>,
}

/// Checks N M_w ⊆ M_{w-2} and that N^m : gr^M_{w+m} gr^W_w → gr^M_{w-m} gr^W_w
/// is an isomorphism for every w and m ≥ 1.
pub fn verify_rmf(x: &FilteredNilp, m: &QFiltration) -> RmfCheck {
    let fail = |condition, w, mm, detail: String| RmfCheck { ok: false, failure: Some(RmfFailure { condition, w, m: mm, detail }) };
    if m.dim() != x.dim() {
        return fail(1, 0, None, format!("M on ℚ^{} but N on ℚ^{}", m.dim(), x.dim()));
    }
    let n = &x.n;
    for k in m.lo() - 1..=m.hi() + 2 {
        if !m.get(k - 2).contains(&m.get(k).image(n)) {
            return fail(1, k, None, format!("N·M_{k} ⊄ M_{}", k - 2));
        }
    }
    let (wl, wh) = x.w.tight_window();
    let reach = (m.hi() - wl).max(wh - m.lo()) + 1;
    for w in wl..=wh {
        if x.w.gr_dim(w) == 0 {
            continue;
        }
        let sq = graded_piece(&x.w, w);
        let mw = sq.induced_filtration(m);
        let nw = sq.induced_map(n);
        let mut p = QMatrix::identity(sq.dim());
        for mm in 1..=reach {
            p = p.mul(&nw);
            let (up, down) = (mw.gr_dim(w + mm), mw.gr_dim(w - mm));
            if up != down {
                return fail(2, w, Some(mm), format!("dim gr^M_{} = {up} but dim gr^M_{} = {down}", w + mm, w - mm));
            }
            let pre = mw.get(w - mm - 1).preimage(&p).intersect(mw.get(w + mm));
            if !mw.get(w + mm - 1).contains(&pre) {
                return fail(2, w, Some(mm), format!("{} is not injective on gr^M_{}", n_pow(mm), w + mm));
            }
        }
    }
    RmfCheck { ok: true, failure: None }
}

/// W^{(j)} = M(N_1 + … + N_j, W) for j = 1..len.
pub fn successive_filtrations(ns: &[QMatrix], w: &QFiltration) -> Result<Vec<RmfResult>> {
    for i in 0..ns.len() {
        for j in i + 1..ns.len() {
            if !ns[i].commutes(&ns[j]) {
                return Err(Error::NonCommuting);
            }
        }
    }
    let mut acc = QMatrix::zeros(w.dim(), w.dim());
    let mut out = Vec::with_capacity(ns.len());
    for n in ns {
        acc = acc.add(n);
        out.push(relative_monodromy(&FilteredNilp::new(w.clone(), acc.clone())?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::qv;
    use crate::filtration::standard_filtration;

    fn nn(k: i64) -> QMatrix {
        QMatrix::from_ints(&[&[0, 1, k], &[0, 0, 0], &[0, 0, 0]])
    }

    #[test]
    fn elliptic_extension() {
        let x = FilteredNilp::new(standard_filtration(&[-1, -1, 0]), nn(3)).unwrap();
        let r = relative_monodromy(&x);
        let m = r.filtration.unwrap();
        let e1 = QSubspace::span(3, &[qv(&[1, 0, 0])]);
        assert!(m.get(-3).is_zero());
        assert_eq!(m.get(-2), &e1);
        assert_eq!(m.get(-1), &e1);
        assert!(m.get(0).is_full());
    }

    #[test]
    fn two_dim_nonexistence() {
        let n = QMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        let x = FilteredNilp::new(standard_filtration(&[0, 1]), n).unwrap();
        let r = relative_monodromy(&x);
        assert_eq!(r.verdict, RmfVerdict::NotExists);
        assert_eq!(r.witness.as_deref(), Some("N·M_1 ⊄ M_-1"));
    }

    #[test]
    fn higher_twist() {
        let x = FilteredNilp::new(standard_filtration(&[-3, -3, 0]), nn(2)).unwrap();
        let m = relative_monodromy(&x).into_filtration().unwrap();
        assert_eq!(m.get(-4), &QSubspace::span(3, &[qv(&[1, 0, 0])]));
        assert_eq!(m.get(-3), m.get(-4));
        assert_eq!(m.get(-2), &QSubspace::span(3, &[qv(&[1, 0, 0]), qv(&[0, 1, 0])]));
        assert_eq!(m.get(-1), m.get(-2));
        assert!(m.get(0).is_full());
        assert!(m.get(-5).is_zero());
    }
}
