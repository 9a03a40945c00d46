//! Frames, operators, flags and groups of the worked examples, assembled from
//! the rank-2 building block L = ℤe₁ ⊕ ℤe₂ with N′e₂ = e₁ and ⟨e₂, e₁⟩ = 1.

use std::collections::BTreeMap;

use crate::cones::{Cone, MarkedCone};
use crate::error::Result;
use crate::exactlin::{CMatrix, CSubspace, GaussRational, QMatrix, Rational, Ring};
use crate::fans::{GroupData, Membership};
use crate::filtration::{standard_filtration, tensor_op, DecFiltration};
use crate::hodge::{HodgeFrame, PeriodPoint};
use crate::neron::{NeronContext, TwoWeightData};

pub fn l_nilp() -> QMatrix {
    QMatrix::from_ints(&[&[0, 1], &[0, 0]])
}

pub fn l_pairing() -> QMatrix {
    QMatrix::from_ints(&[&[0, -1], &[1, 0]])
}

fn zero(n: usize) -> QMatrix {
    QMatrix::zeros(n, n)
}

fn id(n: usize) -> QMatrix {
    QMatrix::identity(n)
}

fn g(re: i64, im: i64) -> GaussRational {
    GaussRational::ints(re, im)
}

/// Hodge flag on L of level `top`: F^top = ℂ(τe₁ + e₂), F^{top−1} = L.
pub fn l_flag(top: i64, tau: &GaussRational) -> PeriodPoint {
    DecFiltration::new(
        2,
        top - 1,
        vec![CSubspace::full(2), CSubspace::span(2, &[vec![tau.clone(), GaussRational::one()]])],
    )
    .expect("flag on L")
}

fn kron_vec(x: &[GaussRational], y: &[GaussRational]) -> Vec<GaussRational> {
    x.iter().flat_map(|a| y.iter().map(move |b| a.clone() * b)).collect()
}

/// (F₁ ⊗ F₂)^p = Σ F₁^a ⊗ F₂^{p−a}.
pub fn tensor_flag(a: &PeriodPoint, b: &PeriodPoint) -> PeriodPoint {
    let n = a.dim() * b.dim();
    let (lo, hi) = (a.lo() + b.lo(), a.hi() + b.hi());
    let steps = (lo..=hi)
        .map(|p| {
            let mut vecs = Vec::new();
            for i in a.lo()..=a.hi() {
                for x in a.get(i).basis_vectors() {
                    for y in b.get(p - i).basis_vectors() {
                        vecs.push(kron_vec(&x, &y));
                    }
                }
            }
            CSubspace::span(n, &vecs)
        })
        .collect();
    DecFiltration::new(n, lo, steps).expect("tensor of flags")
}

fn pad(v: &[GaussRational], before: usize, after: usize) -> Vec<GaussRational> {
    let mut out = vec![GaussRational::zero(); before];
    out.extend(v.iter().cloned());
    out.extend(std::iter::repeat(GaussRational::zero()).take(after));
    out
}

/// F₁ ⊕ F₂ with the first summand first.
pub fn sum_flag(a: &PeriodPoint, b: &PeriodPoint) -> PeriodPoint {
    let (na, nb) = (a.dim(), b.dim());
    let lo = a.lo().min(b.lo());
    let hi = a.hi().max(b.hi());
    let steps = (lo..=hi)
        .map(|p| {
            let mut vecs: Vec<Vec<GaussRational>> = a.get(p).basis_vectors().iter().map(|v| pad(v, 0, nb)).collect();
            vecs.extend(b.get(p).basis_vectors().iter().map(|v| pad(v, na, 0)));
            CSubspace::span(na + nb, &vecs)
        })
        .collect();
    DecFiltration::new(na + nb, lo, steps).expect("sum of flags")
}

/// F on a rank-1 piece of Hodge type (p, p).
pub fn point_flag(p: i64) -> PeriodPoint {
    DecFiltration::new(1, p, vec![CSubspace::full(1)]).expect("rank-1 flag")
}

/// Replace F^p by F^p + span(extra) for p ≤ top.
pub fn extend_flag(f: &PeriodPoint, top: i64, extra: &[Vec<GaussRational>]) -> PeriodPoint {
    let n = f.dim();
    let add = CSubspace::span(n, extra);
    let steps = (f.lo()..=f.hi().max(top)).map(|p| if p <= top { f.get(p).sum(&add) } else { f.get(p).clone() }).collect();
    DecFiltration::new(n, f.lo(), steps).expect("extended flag")
}

/// Sym²L in the basis e₁², e₁e₂, e₂² with e₁e₂ = (e₁⊗e₂ + e₂⊗e₁)/2:
/// the embedding into L⊗L (as rows) and the projection back.
pub fn sym2_embedding() -> QMatrix {
    QMatrix::from_rows(
        4,
        vec![
            vec![Rational::int(1), Rational::int(0), Rational::int(0), Rational::int(0)],
            vec![Rational::int(0), Rational::new(1, 2), Rational::new(1, 2), Rational::int(0)],
            vec![Rational::int(0), Rational::int(0), Rational::int(0), Rational::int(1)],
        ],
    )
}

pub fn sym2_projection() -> QMatrix {
    QMatrix::from_ints(&[&[1, 0, 0, 0], &[0, 1, 1, 0], &[0, 0, 0, 1]])
}

/// Sym² of an endomorphism of L.
pub fn sym2_op(n: &QMatrix) -> QMatrix {
    sym2_projection().mul(&tensor_op(n, n)).mul(&sym2_embedding().transpose())
}

/// Sym² of a pairing on L, restricted from the tensor square.
pub fn sym2_pairing(s: &QMatrix) -> QMatrix {
    let b = sym2_embedding();
    b.mul(&s.kron(s)).mul(&b.transpose())
}

pub fn sym2_flag(f: &PeriodPoint) -> PeriodPoint {
    image_flag(&tensor_flag(f, f), &sym2_projection().to_complex())
}

/// Image of a flag under a surjection p.
pub fn image_flag(f: &PeriodPoint, p: &CMatrix) -> PeriodPoint {
    let steps = f.steps().map(|(_, s)| s.image(p)).collect();
    DecFiltration::new(p.rows(), f.lo(), steps).expect("image flag")
}

fn hodge(entries: &[((i64, i64), usize)]) -> BTreeMap<(i64, i64), usize> {
    entries.iter().cloned().collect()
}

fn unit_add(m: &mut QMatrix, i: usize, j: usize, c: i64) {
    let v = m.get(i, j).clone() + &Rational::int(c);
    m.set(i, j, v);
}

/// Extension of ℤ by ℤ(1): weights −2 and 0 on ℤ².
#[derive(Clone, Debug)]
pub struct TateExtension {
    pub frame: HodgeFrame,
    pub n: QMatrix,
}

impl TateExtension {
    pub fn new() -> Self {
        let frame = HodgeFrame::new(
            standard_filtration(&[-2, 0]),
            [(-2, QMatrix::from_ints(&[&[1]])), (0, QMatrix::from_ints(&[&[1]]))].into_iter().collect(),
            hodge(&[((-1, -1), 1), ((0, 0), 1)]),
        )
        .expect("frame");
        TateExtension { frame, n: l_nilp() }
    }
    /// F^0 = ℂ(ze₁ + e₂).
    pub fn flag(&self, z: &GaussRational) -> PeriodPoint {
        l_flag(0, z)
    }
    pub fn sigma(&self) -> Cone {
        Cone::ray(&self.n).expect("ray")
    }
    pub fn group(&self) -> GroupData {
        GroupData::new(vec![self.n.exp_nilpotent()], Membership::Pattern(self.n.clone())).expect("group")
    }
}

impl Default for TateExtension {
    fn default() -> Self {
        Self::new()
    }
}

/// Extension of ℤ by H¹(E)(b) for a degenerating elliptic curve E on ℤ³:
/// L in weight 1 − 2b, ℤe₃ in weight 0.
#[derive(Clone, Debug)]
pub struct EllipticExtension {
    pub b: i64,
    pub frame: HodgeFrame,
}

impl EllipticExtension {
    pub fn new(b: i64) -> Self {
        assert!(b >= 1, "twist must be positive");
        let w = 1 - 2 * b;
        let frame = HodgeFrame::new(
            standard_filtration(&[w, w, 0]),
            [(w, l_pairing()), (0, QMatrix::from_ints(&[&[1]]))].into_iter().collect(),
            hodge(&[((1 - b, -b), 1), ((-b, 1 - b), 1), ((0, 0), 1)]),
        )
        .expect("frame");
        EllipticExtension { b, frame }
    }
    pub fn weight(&self) -> i64 {
        1 - 2 * self.b
    }
    /// N_k: e₂ ↦ e₁, e₃ ↦ k e₁.
    pub fn n(&self, k: i64) -> QMatrix {
        QMatrix::from_ints(&[&[0, 1, k], &[0, 0, 0], &[0, 0, 0]])
    }
    pub fn n_rational(&self, k: &Rational) -> QMatrix {
        let mut m = self.n(0);
        m.set(0, 2, k.clone());
        m
    }
    /// For b = 1: F^0 = ℂ(τe₁ + e₂) + ℂ(ze₁ + e₃). For b ≥ 2 the extra
    /// coordinate w enters as F^0 = ℂ(ze₁ + we₂ + e₃).
    pub fn flag(&self, tau: &GaussRational, z: &GaussRational, w: &GaussRational) -> PeriodPoint {
        let one = GaussRational::one();
        let zero = GaussRational::zero();
        let line = vec![tau.clone(), one.clone(), zero.clone()];
        if self.b == 1 {
            let ext = vec![z.clone(), zero, one];
            return DecFiltration::new(3, -1, vec![CSubspace::full(3), CSubspace::span(3, &[line, ext])]).expect("flag");
        }
        let ext = vec![z.clone(), w.clone(), one];
        let top = CSubspace::span(3, &[ext]);
        let mid = top.sum(&CSubspace::span(3, &[line]));
        let mut steps = vec![CSubspace::full(3), mid];
        // F^{1−b} = … = F^{−1}; F^{2−b} = … = F^0.
        for _ in (2 - self.b)..=0 {
            steps.push(top.clone());
        }
        DecFiltration::new(3, -self.b, steps).expect("flag")
    }
    pub fn sigma(&self, k: i64) -> Cone {
        Cone::ray(&self.n(k)).expect("ray")
    }
    pub fn sigma_pair(&self, k: i64) -> Cone {
        Cone::new(3, vec![self.n(k), self.n(k + 1)]).expect("cone")
    }
    /// Σ₀ restricted to σ_k for k in the window, plus {0}.
    pub fn sigma0_window(&self, ks: std::ops::RangeInclusive<i64>) -> Vec<Cone> {
        let mut out = vec![Cone::zero(3)];
        out.extend(ks.map(|k| self.sigma(k)));
        out
    }
    /// Σ on the window: σ_{k,k+1} with all faces.
    pub fn sigma_window(&self, ks: std::ops::RangeInclusive<i64>) -> Vec<Cone> {
        let mut out = Vec::new();
        for k in ks {
            out.extend(self.sigma_pair(k).faces());
        }
        out
    }
    /// Γ: integral upper unitriangular matrices.
    pub fn gamma(&self) -> GroupData {
        let mut mask = QMatrix::zeros(3, 3);
        let mut gens = Vec::new();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            mask.set(i, j, Rational::int(1));
            let mut u = id(3);
            u.set(i, j, Rational::int(1));
            gens.push(u);
        }
        GroupData::new(gens, Membership::Pattern(mask)).expect("group")
    }
    /// G_{ℤ,u}: translations e₃ ↦ e₃ + ae₁ + be₂.
    pub fn gamma_u(&self) -> GroupData {
        let mut mask = QMatrix::zeros(3, 3);
        mask.set(0, 2, Rational::int(1));
        mask.set(1, 2, Rational::int(1));
        GroupData::new(vec![self.upsilon(&Rational::int(1), &Rational::int(0)), self.upsilon(&Rational::int(0), &Rational::int(1))], Membership::Pattern(mask))
            .expect("group")
    }
    /// υ: e₃ ↦ e₃ + b₁e₁ + b₂e₂.
    pub fn upsilon(&self, b1: &Rational, b2: &Rational) -> QMatrix {
        let mut u = id(3);
        u.set(0, 2, b1.clone());
        u.set(1, 2, b2.clone());
        u
    }
    /// Monodromy on ⊕gr: N′ on L, zero on ℤe₃.
    pub fn graded_log(&self) -> QMatrix {
        QMatrix::block_diag(&[l_nilp(), zero(1)])
    }
    pub fn neron_context(&self) -> NeronContext {
        NeronContext::new(self.frame.clone(), vec![self.graded_log().exp_nilpotent()]).expect("context")
    }
    /// σ₀ over σ′ as a marked cone.
    pub fn marked_sigma(&self, k: i64) -> MarkedCone {
        MarkedCone::new(1, 3, vec![self.graded_log()], vec![(vec![Rational::int(1)], self.n(k))]).expect("marked")
    }
    pub fn marked_pair(&self, k: i64) -> MarkedCone {
        MarkedCone::new(
            1,
            3,
            vec![self.graded_log()],
            vec![(vec![Rational::int(1)], self.n(k)), (vec![Rational::int(1)], self.n(k + 1))],
        )
        .expect("marked")
    }
    pub fn two_weight_data(&self) -> TwoWeightData {
        TwoWeightData { a: self.weight(), b: 0, n_a: l_nilp(), n_b: zero(1), lattice: None }
    }
}

/// Three degenerating elliptic curves: the weight −1 piece
/// L⊗L⊗L ⊕ L^{⊕2} ⊕ L^{⊕2} ⊕ L^{⊕2} with one monodromy per curve.
pub fn triple_product_ops() -> [QMatrix; 3] {
    let n = l_nilp();
    let z2 = zero(2);
    let twice = |m: &QMatrix| QMatrix::block_diag(&[m.clone(), m.clone()]);
    let t1 = n.kron(&id(2)).kron(&id(2));
    let t2 = id(2).kron(&n).kron(&id(2));
    let t3 = id(2).kron(&id(2)).kron(&n);
    let zz = twice(&z2);
    [
        QMatrix::block_diag(&[t1, twice(&n), zz.clone(), zz.clone()]),
        QMatrix::block_diag(&[t2, zz.clone(), twice(&n), zz.clone()]),
        QMatrix::block_diag(&[t3, zz.clone(), zz, twice(&n)]),
    ]
}

/// Extension of ℤ by L ⊗ L (weight −2), basis e_ij ↦ 2i + j, then e.
#[derive(Clone, Debug)]
pub struct ProductExtension {
    pub frame: HodgeFrame,
    pub n1: QMatrix,
    pub n2: QMatrix,
}

impl ProductExtension {
    pub fn new() -> Self {
        let frame = HodgeFrame::new(
            standard_filtration(&[-2, -2, -2, -2, 0]),
            [(-2, l_pairing().kron(&l_pairing())), (0, QMatrix::from_ints(&[&[1]]))].into_iter().collect(),
            hodge(&[((0, -2), 1), ((-1, -1), 2), ((-2, 0), 1), ((0, 0), 1)]),
        )
        .expect("frame");
        let n = l_nilp();
        ProductExtension {
            frame,
            n1: QMatrix::block_diag(&[n.kron(&id(2)), zero(1)]),
            n2: QMatrix::block_diag(&[id(2).kron(&n), zero(1)]),
        }
    }
    pub fn tau(&self) -> Cone {
        Cone::new(5, vec![self.n1.clone(), self.n2.clone()]).expect("cone")
    }
    /// γ_{m,n}: e ↦ e + m e₁⊗e₂ − n e₂⊗e₁.
    pub fn gamma(&self, m: i64, n: i64) -> QMatrix {
        let mut g = id(5);
        unit_add(&mut g, 1, 4, m);
        unit_add(&mut g, 2, 4, -n);
        g
    }
    /// N₀: e ↦ e₁⊗e₁.
    pub fn n0(&self) -> QMatrix {
        QMatrix::unit(5, 0, 4)
    }
    /// (F ⊗ F) ⊕ ℂ(e + v) with F^0 = ℂ(τe₁ + e₂) on each L.
    pub fn flag(&self, tau: &GaussRational, v: &[GaussRational]) -> PeriodPoint {
        let l = l_flag(0, tau);
        let f = sum_flag(&tensor_flag(&l, &l), &point_flag(0));
        let mut ext = v.to_vec();
        ext.push(GaussRational::one());
        extend_flag(&f, 0, &[ext])
    }
    pub fn gamma_u(&self) -> GroupData {
        let mut mask = QMatrix::zeros(5, 5);
        let mut gens = Vec::new();
        for i in 0..4 {
            mask.set(i, 4, Rational::int(1));
            let mut u = id(5);
            u.set(i, 4, Rational::int(1));
            gens.push(u);
        }
        GroupData::new(gens, Membership::Pattern(mask)).expect("group")
    }
}

impl Default for ProductExtension {
    fn default() -> Self {
        Self::new()
    }
}

/// Extension of ℤ by the weight −1 piece of three elliptic curves (rank 21).
#[derive(Clone, Debug)]
pub struct TripleProductExtension {
    pub frame: HodgeFrame,
    pub ns: [QMatrix; 3],
}

impl TripleProductExtension {
    pub fn new() -> Self {
        let s = l_pairing();
        let s3 = s.kron(&s).kron(&s);
        let pairing = QMatrix::block_diag(&[s3, s.clone(), s.clone(), s.clone(), s.clone(), s.clone(), s]);
        let mut weights = vec![-1; 20];
        weights.push(0);
        let frame = HodgeFrame::new(
            standard_filtration(&weights),
            [(-1, pairing), (0, QMatrix::from_ints(&[&[1]]))].into_iter().collect(),
            hodge(&[((1, -2), 1), ((0, -1), 9), ((-1, 0), 9), ((-2, 1), 1), ((0, 0), 1)]),
        )
        .expect("frame");
        let ns = triple_product_ops().map(|n| QMatrix::block_diag(&[n, zero(1)]));
        TripleProductExtension { frame, ns }
    }
    /// γ: e ↦ e + (m e₁⊗e₂⊗e₁ − n e₂⊗e₁⊗e₁, 0, 0, 0).
    pub fn gamma(&self, m: i64, n: i64) -> QMatrix {
        let mut g = id(21);
        unit_add(&mut g, 2, 20, m);
        unit_add(&mut g, 4, 20, -n);
        g
    }
    /// N₀: e ↦ e₁⊗e₁⊗e₁.
    pub fn n0(&self) -> QMatrix {
        QMatrix::unit(21, 0, 20)
    }
    pub fn combo(&self, a: i64, b: i64, c: i64) -> QMatrix {
        self.ns[0]
            .scale(&Rational::int(a))
            .add(&self.ns[1].scale(&Rational::int(b)))
            .add(&self.ns[2].scale(&Rational::int(c)))
    }
}

impl Default for TripleProductExtension {
    fn default() -> Self {
        Self::new()
    }
}

/// (L⊗L) ⊕ Sym²L of pure weight 2, L of weight 1.
#[derive(Clone, Debug)]
pub struct TensorSymSquare {
    pub frame: HodgeFrame,
    pub ns: [QMatrix; 3],
}

impl TensorSymSquare {
    pub fn new() -> Self {
        let s = l_pairing();
        let pairing = QMatrix::block_diag(&[s.kron(&s), sym2_pairing(&s)]);
        let frame = HodgeFrame::new(
            standard_filtration(&[2; 7]),
            [(2, pairing)].into_iter().collect(),
            hodge(&[((2, 0), 2), ((1, 1), 3), ((0, 2), 2)]),
        )
        .expect("frame");
        let n = l_nilp();
        let ns = [
            QMatrix::block_diag(&[n.kron(&id(2)), zero(3)]),
            QMatrix::block_diag(&[id(2).kron(&n), zero(3)]),
            QMatrix::block_diag(&[zero(4), sym2_op(&n)]),
        ];
        TensorSymSquare { frame, ns }
    }
    pub fn tau(&self) -> Cone {
        Cone::new(7, self.ns.to_vec()).expect("cone")
    }
    /// Basis: e₁₁, e₁₂, e₂₁, e₂₂, then e₁², e₁e₂, e₂².
    pub fn gamma(&self, m: i64, n: i64) -> QMatrix {
        let mut g = id(7);
        unit_add(&mut g, 1, 6, m);
        unit_add(&mut g, 2, 6, -n);
        unit_add(&mut g, 4, 1, -n);
        unit_add(&mut g, 4, 2, m);
        unit_add(&mut g, 4, 6, -m * n);
        g
    }
    /// N₀: (0, e₂²) ↦ (e₁⊗e₁, 0) and (e₂⊗e₂, 0) ↦ −(0, e₁²), the skew-symmetric
    /// element along which Ad(γ) translates.
    pub fn n0(&self) -> QMatrix {
        QMatrix::unit(7, 0, 6).sub(&QMatrix::unit(7, 4, 3))
    }
    pub fn combo(&self, a: i64, b: i64, c: i64) -> QMatrix {
        self.ns[0]
            .scale(&Rational::int(a))
            .add(&self.ns[1].scale(&Rational::int(b)))
            .add(&self.ns[2].scale(&Rational::int(c)))
    }
    /// (F⊗F) ⊕ Sym²F with F¹ = ℂ(τe₁ + e₂).
    pub fn flag(&self, tau: &GaussRational) -> PeriodPoint {
        let l = l_flag(1, tau);
        sum_flag(&tensor_flag(&l, &l), &sym2_flag(&l))
    }
}

impl Default for TensorSymSquare {
    fn default() -> Self {
        Self::new()
    }
}

/// Gaussian rationals used as sample coordinates.
pub fn sample_points() -> Vec<GaussRational> {
    vec![g(0, 0), g(1, 1), g(-2, 3), GaussRational::new(Rational::new(1, 3), Rational::new(-5, 2))]
}

pub fn upper_half_samples() -> Vec<GaussRational> {
    vec![g(0, 1), g(1, 2), GaussRational::new(Rational::new(-1, 2), Rational::new(1, 3))]
}

pub(crate) fn lattice_rank_claims() -> Result<Vec<usize>> {
    let ops = triple_product_ops();
    let mut out = Vec::new();
    for k in 0..=3 {
        let gs: Vec<QMatrix> = ops[..k].iter().map(|n| n.exp_nilpotent()).collect();
        out.push(crate::exactlin::invariants_rank(&gs, 20, true)?);
    }
    Ok(out)
}
