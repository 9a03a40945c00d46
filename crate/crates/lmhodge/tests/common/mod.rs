//! Random instance generators shared by the integration tests.
#![allow(dead_code)]

use lmhodge::cones::MarkedCone;
use lmhodge::corpus::EllipticExtension;
use lmhodge::exactlin::{CMatrix, CSubspace, GaussRational, QMatrix, Rational, Ring};
use lmhodge::filtration::{direct_sum_filtration, standard_filtration, DecFiltration, FilteredNilp, QFiltration};
use lmhodge::hodge::PeriodPoint;
use lmhodge::monodromy::weight_filtration;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Rational {
    Rational::int(n)
}

pub fn jordan(k: usize) -> QMatrix {
    let mut j = QMatrix::zeros(k, k);
    for i in 0..k.saturating_sub(1) {
        j.set(i, i + 1, q(1));
    }
    j
}

/// Random integer unipotent g with g − 1 strictly lowering the coordinate
/// weights, so g preserves W = standard_filtration(weights).
pub fn w_unipotent(r: &mut ChaCha8Rng, weights: &[i64]) -> QMatrix {
    let n = weights.len();
    let mut g = QMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            if weights[i] < weights[j] && r.gen_bool(0.6) {
                g.set(i, j, q(r.gen_range(-3..=3)));
            }
        }
    }
    g
}

/// A filtered nilpotent together with its relative monodromy filtration,
/// known by construction.
#[derive(Clone, Debug)]
pub struct KnownInstance {
    pub x: FilteredNilp,
    pub m: QFiltration,
    pub weights: Vec<i64>,
}

struct Split {
    weights: Vec<i64>,
    n0: QMatrix,
    m0: QFiltration,
}

fn split(r: &mut ChaCha8Rng, max_dim: usize) -> Split {
    let mut weights = Vec::new();
    let mut blocks = Vec::new();
    let mut ms: Vec<QFiltration> = Vec::new();
    let mut w = r.gen_range(-2..=0);
    let mut budget = r.gen_range(1..=max_dim);
    while budget > 0 {
        let mut piece = Vec::new();
        let mut size = r.gen_range(1..=budget.min(4));
        budget -= size;
        while size > 0 {
            let k = r.gen_range(1..=size);
            piece.push(jordan(k));
            size -= k;
        }
        let nw = QMatrix::block_diag(&piece);
        ms.push(weight_filtration(&nw, w).expect("nilpotent"));
        weights.extend(std::iter::repeat(w).take(nw.rows()));
        blocks.push(nw);
        w += r.gen_range(1..=2);
    }
    let mut m0 = ms[0].clone();
    for m in &ms[1..] {
        m0 = direct_sum_filtration(&m0, m);
    }
    Split { weights, n0: QMatrix::block_diag(&blocks), m0 }
}

/// Split instance built from Jordan blocks on each graded piece, moved by a
/// random W-preserving unipotent. M is the image of ⊕_w M(N_w)[w].
pub fn known_instance(r: &mut ChaCha8Rng, max_dim: usize) -> KnownInstance {
    let s = split(r, max_dim);
    let g = w_unipotent(r, &s.weights);
    let n = g.mul(&s.n0).mul(&g.inverse().expect("unipotent"));
    let m = s.m0.map_steps(|x| x.image(&g));
    let x = FilteredNilp::new(standard_filtration(&s.weights), n).expect("W-preserving nilpotent");
    KnownInstance { x, m, weights: s.weights }
}

/// Like `known_instance` but with an extra term e_j ↦ c·e_i from a higher to
/// a lower weight before conjugating; M may or may not exist.
pub fn extension_instance(r: &mut ChaCha8Rng, max_dim: usize) -> FilteredNilp {
    let s = split(r, max_dim);
    let dim = s.weights.len();
    let mut n0 = s.n0.clone();
    let pairs: Vec<(usize, usize)> =
        (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).filter(|&(i, j)| s.weights[i] < s.weights[j]).collect();
    for _ in 0..r.gen_range(1..=2) {
        if let Some(&(i, j)) = pairs.get(r.gen_range(0..pairs.len().max(1))) {
            let v = n0.get(i, j).clone() + &q(r.gen_range(1..=2));
            n0.set(i, j, v);
        }
    }
    let g = w_unipotent(r, &s.weights);
    let n = g.mul(&n0).mul(&g.inverse().expect("unipotent"));
    FilteredNilp::new(standard_filtration(&s.weights), n).expect("strictly upper triangular before conjugation")
}

/// Pure Hodge flag on one graded piece: for odd w a sum of rank-2 pieces
/// with F^{(w+1)/2} = ℂ(τ e₁ + e₂); for even w all of type (w/2, w/2).
fn graded_flag(r: &mut ChaCha8Rng, w: i64, size: usize) -> (i64, Vec<Vec<GaussRational>>) {
    if w % 2 == 0 {
        return ((w / 2), Vec::new());
    }
    let mut top = Vec::new();
    for b in 0..size / 2 {
        let tau = GaussRational::new(
            Rational::new(r.gen_range(-4..=4), r.gen_range(1..=3)),
            Rational::new(r.gen_range(1..=4), r.gen_range(1..=3)),
        );
        let mut v = vec![GaussRational::zero(); size];
        v[2 * b] = tau;
        v[2 * b + 1] = GaussRational::one();
        top.push(v);
    }
    ((w + 1) / 2, top)
}

/// A random mixed Hodge structure: split graded pieces moved by
/// exp(X) for a random complex W-lowering X.
pub fn random_mhs(r: &mut ChaCha8Rng) -> (QFiltration, PeriodPoint) {
    let mut weights = Vec::new();
    let mut pieces = Vec::new();
    let mut w = r.gen_range(-3..=-1);
    for _ in 0..r.gen_range(2..=3) {
        let size = if w % 2 == 0 { r.gen_range(1..=2) } else { 2 * r.gen_range(1..=2) };
        pieces.push((w, size, graded_flag(r, w, size)));
        weights.extend(std::iter::repeat(w).take(size));
        w += r.gen_range(1..=2);
    }
    let n = weights.len();
    let mut offset = 0;
    // F^p = Σ over pieces of (piece full if p ≤ its bottom, top vectors if p = its top).
    let lo = pieces.iter().map(|(w, _, (t, _))| if w % 2 == 0 { *t } else { t - 1 }).min().unwrap();
    let hi = pieces.iter().map(|(_, _, (t, _))| *t).max().unwrap();
    let mut steps: Vec<Vec<Vec<GaussRational>>> = vec![Vec::new(); (hi - lo + 1) as usize];
    for (w, size, (top, vecs)) in &pieces {
        let bottom = if w % 2 == 0 { *top } else { top - 1 };
        for p in lo..=hi {
            let slot = &mut steps[(p - lo) as usize];
            let embed = |v: &[GaussRational]| {
                let mut out = vec![GaussRational::zero(); n];
                out[offset..offset + size].clone_from_slice(v);
                out
            };
            if p <= bottom {
                for c in 0..*size {
                    let mut e = vec![GaussRational::zero(); *size];
                    e[c] = GaussRational::one();
                    slot.push(embed(&e));
                }
            } else if p == *top {
                slot.extend(vecs.iter().map(|v| embed(v)));
            }
        }
        offset += size;
    }
    let f = DecFiltration::new(n, lo, steps.iter().map(|vs| CSubspace::span(n, vs)).collect()).expect("flag");
    let mut x = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if weights[i] < weights[j] && r.gen_bool(0.7) {
                x.set(i, j, GaussRational::ints(r.gen_range(-3..=3), r.gen_range(-3..=3)));
            }
        }
    }
    (standard_filtration(&weights), f.transform(&x.exp_nilpotent()))
}

/// A rational marked cone in the fiber over σ′ for the elliptic two-weight
/// data: one or two generators t·N_c with t a positive integer and c rational.
pub fn random_fiber_probe(r: &mut ChaCha8Rng, ex: &EllipticExtension) -> MarkedCone {
    let gens = r.gen_range(1..=2);
    let pairs = (0..gens)
        .map(|_| {
            let t = r.gen_range(1..=4);
            let c = Rational::new(r.gen_range(-12..=12), r.gen_range(1..=4));
            (vec![q(t)], ex.n_rational(&c).scale(&q(t)))
        })
        .collect();
    MarkedCone::new(1, 3, vec![ex.graded_log()], pairs).expect("fiber cone")
}

/// Outcome of a batch of randomized checks.
#[derive(Debug, Default)]
pub struct Tally {
    pub checked: usize,
    pub undecided: usize,
    pub failures: Vec<String>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
    pub fn clean(&self) -> bool {
        self.failures.is_empty() && self.undecided == 0
    }
}

use lmhodge::filtration::{
    hom_filtration, hom_op, induced_on_sub_quot, tensor_filtration, tensor_op, InduceMode, SubQuotient,
};
use lmhodge::monodromy::{relative_monodromy, verify_rmf, RmfVerdict};

fn solve(x: &FilteredNilp, t: &mut Tally) -> Option<QFiltration> {
    let r = relative_monodromy(x);
    match r.verdict {
        RmfVerdict::Exists => r.filtration,
        RmfVerdict::NotExists => None,
        RmfVerdict::Undecided => {
            t.undecided += 1;
            None
        }
    }
}

/// M(A ⊕ B), M(A ⊗ B), M(Hom(A, B)) against the combined filtrations of the
/// known M's, plus M(A) against its construction, for `pairs` random pairs.
pub fn functoriality(seed: u64, pairs: usize) -> Tally {
    let mut r = rng(seed);
    let mut t = Tally::default();
    for case in 0..pairs {
        let a = known_instance(&mut r, 4);
        let b = known_instance(&mut r, 4);
        let (Some(ma), Some(mb)) = (solve(&a.x, &mut t), solve(&b.x, &mut t)) else {
            t.check(false, || format!("case {case}: a split instance has no M"));
            continue;
        };
        t.check(ma == a.m && mb == b.m, || format!("case {case}: M differs from the construction"));
        let sum = lmhodge::filtration::combine(&a.x, &b.x, lmhodge::filtration::CombineOp::DirectSum).expect("sum");
        let want = direct_sum_filtration(&ma, &mb);
        let got = solve(&sum, &mut t);
        t.check(got.as_ref() == Some(&want), || format!("case {case}: ⊕"));
        let ten = FilteredNilp::new(tensor_filtration(&a.x.w, &b.x.w), tensor_op(&a.x.n, &b.x.n)).expect("tensor");
        let want = tensor_filtration(&ma, &mb);
        let got = solve(&ten, &mut t);
        t.check(got.as_ref() == Some(&want), || format!("case {case}: ⊗"));
        let hom = FilteredNilp::new(hom_filtration(&a.x.w, &b.x.w), hom_op(&a.x.n, &b.x.n)).expect("hom");
        let want = hom_filtration(&ma, &mb);
        let got = solve(&hom, &mut t);
        t.check(got.as_ref() == Some(&want), || format!("case {case}: Hom"));
    }
    t
}

/// M of the restriction to W_a and of the quotient V/W_a equals the filtration
/// M induces there.
pub fn restriction(seed: u64, cases: usize) -> Tally {
    let mut r = rng(seed);
    let mut t = Tally::default();
    for case in 0..cases {
        let k = known_instance(&mut r, 8);
        let Some(m) = solve(&k.x, &mut t) else {
            t.check(false, || format!("case {case}: no M"));
            continue;
        };
        let n = k.x.dim();
        let mut ws = k.weights.clone();
        ws.dedup();
        for &a in &ws[..ws.len() - 1] {
            for mode in [InduceMode::RestrictTo(a), InduceMode::QuotientBy(a)] {
                let sq = match mode {
                    InduceMode::RestrictTo(_) => SubQuotient::new(k.x.w.get(a).clone(), lmhodge::exactlin::QSubspace::zero(n)),
                    _ => SubQuotient::new(lmhodge::exactlin::QSubspace::full(n), k.x.w.get(a).clone()),
                };
                let sub = FilteredNilp::new(sq.induced_filtration(&k.x.w), sq.induced_map(&k.x.n)).expect("induced");
                let want = induced_on_sub_quot(&k.x.w, &m, mode).expect("same space");
                let got = solve(&sub, &mut t);
                t.check(got.as_ref() == Some(&want), || format!("case {case}: {mode:?}"));
            }
        }
    }
    t
}

/// ker N ∩ W_w ⊆ M_w whenever M exists, over split and extension instances;
/// every Exists answer also passes the independent verifier.
pub fn inclusion(seed: u64, cases: usize) -> Tally {
    let mut r = rng(seed);
    let mut t = Tally::default();
    for case in 0..cases {
        let x = if case % 2 == 0 { known_instance(&mut r, 8).x } else { extension_instance(&mut r, 8) };
        let Some(m) = solve(&x, &mut t) else { continue };
        t.check(verify_rmf(&x, &m).ok, || format!("case {case}: verifier rejects M"));
        let ker = lmhodge::exactlin::QSubspace::kernel_of(&x.n);
        for w in x.w.lo()..=x.w.hi() {
            t.check(m.get(w).contains(&ker.intersect(x.w.get(w))), || format!("case {case}: ker N ∩ W_{w} ⊄ M_{w}"));
        }
    }
    t
}

use lmhodge::cones::Cone;
use lmhodge::corpus::{l_flag, l_nilp, sample_points, upper_half_samples, ProductExtension, TateExtension, TensorSymSquare};
use lmhodge::hodge::HodgeFrame;
use lmhodge::orbits::{pure_orbit_test, OrbitMode};

pub struct OrbitInstance {
    pub label: String,
    pub frame: HodgeFrame,
    pub cone: Cone,
    pub f: PeriodPoint,
}

/// (frame, cone, F) triples drawn from the worked examples, generating and not.
pub fn orbit_instances() -> Vec<OrbitInstance> {
    let mut out = Vec::new();
    let mut push = |label: String, frame: &HodgeFrame, cone: Cone, f: PeriodPoint| {
        out.push(OrbitInstance { label, frame: frame.clone(), cone, f })
    };
    let i = GaussRational::i();
    let zero = GaussRational::zero();
    let tate = TateExtension::new();
    for z in sample_points() {
        push(format!("tate σ {z:?}"), &tate.frame, tate.sigma(), tate.flag(&z));
        push(format!("tate −σ {z:?}"), &tate.frame, Cone::ray(&tate.n.neg()).unwrap(), tate.flag(&z));
    }
    let ell = EllipticExtension::new(1);
    for z in sample_points() {
        push(format!("elliptic σ₀ {z:?}"), &ell.frame, ell.sigma(0), ell.flag(&i, &z, &zero));
        push(format!("elliptic σ₀,₁ {z:?}"), &ell.frame, ell.sigma_pair(0), ell.flag(&GaussRational::ints(1, 2), &z, &zero));
        push(format!("elliptic −σ₀ {z:?}"), &ell.frame, Cone::ray(&ell.n(0).neg()).unwrap(), ell.flag(&i, &z, &zero));
    }
    let gr = ell.frame.graded_frame(-1).unwrap();
    push("gr N′".into(), &gr, Cone::ray(&l_nilp()).unwrap(), l_flag(0, &i));
    push("gr −N′".into(), &gr, Cone::ray(&l_nilp().neg()).unwrap(), l_flag(0, &i));
    let twist = EllipticExtension::new(2);
    for k in -1..=1 {
        for w in -1..=1 {
            let f = twist.flag(&i, &GaussRational::ints(5, 0), &GaussRational::ints(w, 0));
            push(format!("twist σ_{k} w={w}"), &twist.frame, twist.sigma(k), f);
        }
    }
    let prod = ProductExtension::new();
    let tsym = TensorSymSquare::new();
    for t in upper_half_samples() {
        push(format!("product τ {t:?}"), &prod.frame, prod.tau(), prod.flag(&t, &[zero.clone(), zero.clone(), zero.clone(), zero.clone()]));
        push(format!("tensor-sym τ {t:?}"), &tsym.frame, tsym.tau(), tsym.flag(&t));
    }
    out
}

/// Certified and sampled pure tests on every graded piece of every corpus
/// orbit instance; a failure is a disagreement or an undecided side.
pub fn orbit_agreement() -> Tally {
    let mut t = Tally::default();
    for inst in orbit_instances() {
        for w in inst.frame.weights() {
            let sub = inst.frame.graded_frame(w).unwrap();
            let sq = inst.frame.graded_piece(w);
            let ns: Vec<QMatrix> = inst.cone.generators().iter().map(|n| sq.induced_map(n)).collect();
            let fw = inst.frame.graded_flag(&inst.f, w);
            let c = pure_orbit_test(&sub, &ns, &fw, OrbitMode::Certified).unwrap().verdict;
            let s = pure_orbit_test(&sub, &ns, &fw, OrbitMode::Sampled).unwrap().verdict;
            if matches!(c, lmhodge::orbits::OrbitVerdict::Undecided) || matches!(s, lmhodge::orbits::OrbitVerdict::Undecided) {
                t.undecided += 1;
            }
            t.check(c.generates() == s.generates(), || format!("{} gr_{w}: certified {c:?}, sampled {s:?}", inst.label));
        }
    }
    t
}

use lmhodge::hodge::{delta_splitting, in_l_minus_one, is_mhs};

/// F = s′·exp(iδ)·F(gr) on random mixed Hodge structures, with s′ real and
/// unipotent for W and δ in L^{−1,−1}.
pub fn delta_reconstruction(seed: u64, cases: usize) -> Tally {
    let mut r = rng(seed);
    let mut t = Tally::default();
    for case in 0..cases {
        let (w, f) = random_mhs(&mut r);
        t.check(is_mhs(&w, &f).unwrap(), || format!("case {case}: generator produced a non-MHS"));
        let d = match delta_splitting(&w, &f) {
            Ok(d) => d,
            Err(e) => {
                t.check(false, || format!("case {case}: {e}"));
                continue;
            }
        };
        t.check(d.reconstruct() == f, || format!("case {case}: reconstruction differs"));
        let wg = d.graded_weight_filtration();
        let lowers = (wg.lo()..=wg.hi()).all(|k| wg.get(k - 1).contains(&wg.get(k).image(&d.u)));
        t.check(lowers, || format!("case {case}: u does not lower the graded weights"));
        let carries = (wg.lo()..=wg.hi()).all(|k| wg.get(k).image(&d.splitting) == *w.get(k));
        t.check(carries, || format!("case {case}: s′ does not carry W(gr) onto W"));
        t.check(in_l_minus_one(&d.delta, &d).unwrap(), || format!("case {case}: δ ∉ L^(-1,-1)"));
    }
    t
}

/// δ(exp(zN)F) = δ(F) + Im(z)·(s′)⁻¹Ns′ on the extension of ℤ by ℤ(1).
pub fn shift_law() -> Tally {
    let ex = TateExtension::new();
    let w = ex.frame.w().clone();
    let mut t = Tally::default();
    for z0 in sample_points() {
        let f = ex.flag(&z0);
        let d0 = delta_splitting(&w, &f).unwrap();
        let s = &d0.splitting;
        let shift = s.inverse().unwrap().mul(&ex.n).mul(s);
        for z in sample_points() {
            let g = ex.n.to_complex().scale(&z).exp_nilpotent();
            let d = delta_splitting(&w, &f.transform(&g)).unwrap();
            t.check(d.delta == d0.delta.add(&shift.scale(&z.im)), || format!("F({z0:?}), z = {z:?}"));
        }
    }
    t
}
