//! Cones σ_{τ′,υ}, the Kummer index of Γ(σ) → Γ′(τ′), the group B₁, and the
//! relatively complete fan for two weights.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::cones::{MarkedCone, PolyCone};
use crate::error::{Error, Result};
use crate::exactlin::{
    common_denominator, flatten, hermite_rows, int_str, integer_left_kernel, integralize_columns, smith_form,
    LatticeSubgroup, QMatrix,
    QSubspace, Rational, Ring, ZMatrix,
};
use crate::fans::FanSet;
use crate::filtration::{graded_piece, hom_filtration, hom_op, standard_filtration, QFiltration};
use crate::hodge::HodgeFrame;
use crate::monodromy::weight_filtration;

fn unipotent(g: &QMatrix) -> bool {
    g.is_square() && g.sub(&QMatrix::identity(g.rows())).is_nilpotent()
}

/// W splits along coordinates: each graded piece is lifted by unit vectors in
/// increasing order.
fn coordinate_split(w: &QFiltration) -> bool {
    let mut next = 0;
    for k in w.weights() {
        let sq = graded_piece(w, k);
        for i in 0..sq.dim() {
            let v = sq.lift_vector(i);
            if v.iter().enumerate().any(|(j, x)| if j == next { *x != Rational::int(1) } else { !x.is_zero() }) {
                return false;
            }
            next += 1;
        }
    }
    true
}

/// Frame with a coordinate splitting, Γ′ ≅ ℤ^r acting on ⊕gr_w, and the
/// projection σ′ → ℊ′ given by the logs of the generators.
#[derive(Clone, Debug)]
pub struct NeronContext {
    frame: HodgeFrame,
    gamma_prime: Vec<QMatrix>,
    proj: Vec<QMatrix>,
}

impl NeronContext {
    pub fn new(frame: HodgeFrame, gamma_prime: Vec<QMatrix>) -> Result<Self> {
        if !coordinate_split(frame.w()) {
            return Err(Error::Format("the weight filtration must split along coordinates".into()));
        }
        let n = frame.rank();
        let mut proj = Vec::new();
        for (i, g) in gamma_prime.iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(Error::DimensionMismatch(format!("Γ′ generator {i} has the wrong shape")));
            }
            if !g.is_integral() || !unipotent(g) {
                return Err(Error::NotUnipotent(format!("Γ′ generator {i} must be integral unipotent")));
            }
            if !frame.in_integral_group(g) {
                return Err(Error::Format(format!("Γ′ generator {i} is not an automorphism of the graded frame")));
            }
            // The action lives on ⊕gr: it must be block diagonal.
            if crate::filtration::graded_endomorphism(frame.w(), g) != *g {
                return Err(Error::Format(format!("Γ′ generator {i} is not block diagonal on ⊕gr")));
            }
            proj.push(g.log_unipotent().expect("unipotent"));
        }
        for i in 0..proj.len() {
            for j in i + 1..proj.len() {
                if !proj[i].commutes(&proj[j]) {
                    return Err(Error::NonCommuting);
                }
            }
        }
        Ok(NeronContext { frame, gamma_prime, proj })
    }
    pub fn frame(&self) -> &HodgeFrame {
        &self.frame
    }
    pub fn r(&self) -> usize {
        self.gamma_prime.len()
    }
    pub fn gamma_prime(&self) -> &[QMatrix] {
        &self.gamma_prime
    }
    pub fn proj(&self) -> &[QMatrix] {
        &self.proj
    }
    fn check_face(&self, face: &[usize]) -> Result<()> {
        match face.iter().find(|&&i| i >= self.r()) {
            Some(i) => Err(Error::Format(format!("face index {i} but σ′ has rank {}", self.r()))),
            None => Ok(()),
        }
    }
}

/// σ_{τ′,υ} = {(x, Ad(υ)x_ℊ) : x ∈ τ′}, for τ′ the face of σ′ = ℝ≥0^r spanned
/// by the listed basis vectors.
pub fn sigma_tau_upsilon(ctx: &NeronContext, face: &[usize], upsilon: &QMatrix) -> Result<MarkedCone> {
    ctx.check_face(face)?;
    if !ctx.frame.in_unipotent_group(upsilon) {
        return Err(Error::NotUnipotent("υ must preserve the pairings and act trivially on gr^W".into()));
    }
    let ui = upsilon.inverse().expect("unipotent");
    let r = ctx.r();
    let pairs = face
        .iter()
        .map(|&i| {
            let mut x = vec![Rational::int(0); r];
            x[i] = Rational::int(1);
            (x, upsilon.mul(&ctx.proj[i]).mul(&ui))
        })
        .collect();
    let mk = MarkedCone::new(r, ctx.frame.rank(), ctx.proj.clone(), pairs)?;
    mk.check_fiber(ctx.frame.w())?;
    Ok(mk)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "index", rename_all = "snake_case")]
pub enum KummerType {
    Iso,
    Kummer(u64),
    NotKummer,
}

const KUMMER_SCAN: u64 = 1 << 12;
const KUMMER_BOX: u64 = 1 << 20;

fn integral_exp(m: &QMatrix) -> bool {
    m.exp_nilpotent().is_integral()
}

/// Index of the image of Γ(σ_{τ′,υ}) in Γ′(τ′) ≅ ℕ^τ′. The exponents x ∈ ℤ^τ′
/// with exp(Σ x_i N_i) integral form a subgroup Λ containing Dℤ^τ′, where D
/// is the lcm of the smallest integral exponents along the axes; the index is
/// read off by counting Λ modulo D.
pub fn kummer_type(ctx: &NeronContext, sigma: &MarkedCone, face: &[usize]) -> Result<KummerType> {
    ctx.check_face(face)?;
    if sigma.pairs().len() != face.len() {
        return Err(Error::Format("marked cone does not match the face".into()));
    }
    let ns: Vec<QMatrix> = sigma.pairs().iter().map(|(_, m)| m.clone()).collect();
    let mut dd = BigInt::from(1);
    for n in &ns {
        let Some(k) = (1..=KUMMER_SCAN).find(|&k| integral_exp(&n.scale(&Rational::int(k as i64)))) else {
            return Ok(KummerType::NotKummer);
        };
        dd = dd.lcm(&BigInt::from(k));
    }
    let d = dd.to_u64().expect("small");
    let total = d.checked_pow(ns.len() as u32).filter(|&t| t <= KUMMER_BOX).ok_or_else(|| {
        Error::Assertion(format!("Kummer search box {d}^{} is too large", ns.len()))
    })?;
    let dim = ctx.frame.rank();
    let mut count = 0u64;
    for idx in 0..total {
        let mut rest = idx;
        let mut m = QMatrix::zeros(dim, dim);
        for n in &ns {
            let c = rest % d;
            rest /= d;
            if c != 0 {
                m = m.add(&n.scale(&Rational::int(c as i64)));
            }
        }
        if integral_exp(&m) {
            count += 1;
        }
    }
    let index = total / count;
    Ok(if index == 1 { KummerType::Iso } else { KummerType::Kummer(index) })
}

pub fn in_sigma1(ctx: &NeronContext, sigma: &MarkedCone, face: &[usize]) -> Result<bool> {
    Ok(kummer_type(ctx, sigma, face)? == KummerType::Iso)
}

/// B₁ = {b ∈ ℚⁿ : γ′b − b ∈ ℤⁿ} modulo ℤⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct B1 {
    /// Generators of the finite part with their orders.
    pub finite: Vec<FiniteGenerator>,
    /// Directions of ker(γ′ − 1); their ℚ-span lies in B₁.
    pub divisible: Vec<Vec<Rational>>,
    /// ℤ-basis (rows) of B₁ ∩ (span of the finite directions + ℤⁿ).
    pub lattice: QMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteGenerator {
    pub b: Vec<Rational>,
    #[serde(serialize_with = "int_str::one")]
    pub order: BigInt,
}

impl B1 {
    pub fn contains(&self, b: &[Rational], gamma: &QMatrix) -> bool {
        let n = gamma.rows();
        let m = gamma.sub(&QMatrix::identity(n));
        m.mul_vec(b).iter().all(|x| x.is_integer())
    }
}

pub fn compute_b1(gamma: &QMatrix) -> Result<B1> {
    if !gamma.is_square() || !gamma.is_integral() {
        return Err(Error::Format("γ′ must be a square integral matrix".into()));
    }
    if !unipotent(gamma) {
        return Err(Error::NotUnipotent("γ′".into()));
    }
    let n = gamma.rows();
    let m = gamma.sub(&QMatrix::identity(n)).to_integer().expect("integral");
    // M = U·D·V, so M b ∈ ℤⁿ iff D(Vb) ∈ ℤⁿ; b = V⁻¹c.
    let s = smith_form(&m);
    let divs = s.divisors();
    let vinv = s.v_inv.to_rational();
    let mut finite = Vec::new();
    let mut divisible = Vec::new();
    let mut lattice_rows = Vec::new();
    for i in 0..n {
        let col = vinv.col(i);
        let d = divs.get(i).cloned().unwrap_or_else(|| BigInt::from(0));
        if d == BigInt::from(0) {
            divisible.push(col.clone());
            lattice_rows.push(col);
        } else {
            let dq = Rational::from_bigint(d.abs());
            let b: Vec<Rational> = col.iter().map(|x| x.clone() / &dq).collect();
            if d.abs() != BigInt::from(1) {
                finite.push(FiniteGenerator { b: b.clone(), order: d.abs() });
            }
            lattice_rows.push(b);
        }
    }
    let lattice = LatticeSubgroup::new(n, QMatrix::from_rows(n, lattice_rows)).basis();
    Ok(B1 { finite, divisible, lattice })
}

/// Data for the two-weight construction: H = H_a ⊕ H_b with a < b, the logs
/// N′_a, N′_b of the Γ′ generator on each piece, and a lattice L in
/// V = Hom(H_b, H_a) (flattened row-major, rows of `lattice`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwoWeightData {
    pub a: i64,
    pub b: i64,
    pub n_a: QMatrix,
    pub n_b: QMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<QMatrix>,
}

impl TwoWeightData {
    pub fn rank_a(&self) -> usize {
        self.n_a.rows()
    }
    pub fn rank_b(&self) -> usize {
        self.n_b.rows()
    }
    pub fn rank(&self) -> usize {
        self.rank_a() + self.rank_b()
    }
    /// W on H_a ⊕ H_b.
    pub fn weight_filtration(&self) -> QFiltration {
        let mut ws = vec![self.a; self.rank_a()];
        ws.extend(vec![self.b; self.rank_b()]);
        standard_filtration(&ws)
    }
    /// N′_a ⊕ N′_b.
    pub fn graded_log(&self) -> QMatrix {
        QMatrix::block_diag(&[self.n_a.clone(), self.n_b.clone()])
    }
    /// The Hom(H_b, H_a) block of an endomorphism of H.
    pub fn hom_component(&self, n: &QMatrix) -> QMatrix {
        let (na, nb) = (self.rank_a(), self.rank_b());
        n.submatrix(&(0..na).collect::<Vec<_>>(), &(na..na + nb).collect::<Vec<_>>())
    }
    /// N′_a ⊕ N′_b with h placed in the Hom(H_b, H_a) block.
    pub fn assemble(&self, h: &QMatrix) -> QMatrix {
        let mut m = self.graded_log();
        m.put_block(0, self.rank_a(), h);
        m
    }
}

/// The schema σ(x, n) with its query and probe operations.
#[derive(Clone, Debug)]
pub struct RelCompleteFan {
    data: TwoWeightData,
    x: QSubspace,
    y: QSubspace,
    /// Section: ℤ-basis vectors of X ∩ L completing (e_j) to a basis.
    section: Vec<Vec<Rational>>,
    /// ℤ-basis of Y ∩ L.
    e: Vec<Vec<Rational>>,
}

/// Place in the schema: N_u = s(x) + (1/d)·Σ c_j e_j with n_j = ⌊c_j⌋.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemaPoint {
    pub x: Vec<Rational>,
    #[serde(serialize_with = "int_str::one")]
    pub d: BigInt,
    pub c: Vec<Rational>,
    #[serde(serialize_with = "int_str::many")]
    pub n: Vec<BigInt>,
}

fn lattice_meet_subspace(basis: &QMatrix, s: &QSubspace) -> QMatrix {
    let dim = basis.cols();
    let ann = s.annihilator();
    if ann.is_zero() {
        return basis.clone();
    }
    let cond = basis.mul(&ann.basis().transpose());
    let z = integralize_columns(&cond);
    let k = integer_left_kernel(&z);
    if k.rows() == 0 {
        return QMatrix::zeros(0, dim);
    }
    k.to_rational().mul(basis)
}

fn zrows(m: &QMatrix) -> ZMatrix {
    m.to_integer().expect("integral coordinates")
}

pub fn build_relcomplete_fan(data: &TwoWeightData) -> Result<RelCompleteFan> {
    if data.a >= data.b {
        return Err(Error::Format("two-weight data needs a < b".into()));
    }
    for (name, n) in [("N′_a", &data.n_a), ("N′_b", &data.n_b)] {
        if !n.is_square() || !n.is_nilpotent() {
            return Err(Error::NotNilpotent(name.into()));
        }
    }
    let (na, nb) = (data.rank_a(), data.rank_b());
    let dv = na * nb;
    let ma = weight_filtration(&data.n_a, data.a)?;
    let mb = weight_filtration(&data.n_b, data.b)?;
    // f ↦ N′_a f − f N′_b on Hom(H_b, H_a).
    let t = hom_op(&data.n_b, &data.n_a);
    let x1 = hom_filtration(&mb, &ma).get(-2).clone();
    let x = x1.sum(&QSubspace::image_of(&t));
    let y = x.intersect(&QSubspace::kernel_of(&t));

    let required = QMatrix::identity(dv).vstack(&t.transpose());
    let lattice = data.lattice.clone().map(|l| l.with_cols(dv)).unwrap_or_else(|| required.clone());
    if lattice.cols() != dv {
        return Err(Error::InvalidL(format!("lattice vectors must have length {dv}")));
    }
    let lsub = LatticeSubgroup::new(dv, lattice);
    if let Some(i) = (0..required.rows()).find(|&i| !lsub.contains(required.row(i))) {
        return Err(Error::InvalidL(format!("L misses required vector {i} (Hom_ℤ or hN′_b − N′_a h)")));
    }
    let lbasis = lsub.basis();
    let ga = data.n_a.exp_nilpotent();
    let gb = data.n_b.exp_nilpotent();
    let acts = [
        ga.kron(&QMatrix::identity(nb)),
        ga.inverse().expect("unipotent").kron(&QMatrix::identity(nb)),
        QMatrix::identity(na).kron(&gb.transpose()),
        QMatrix::identity(na).kron(&gb.inverse().expect("unipotent").transpose()),
    ];
    for g in &acts {
        for v in lbasis.row_vecs() {
            if !lsub.contains(&g.mul_vec(&v)) {
                return Err(Error::InvalidL("L is not stable under γ_a and γ_b".into()));
            }
        }
    }

    let xl = lattice_meet_subspace(&lbasis, &x);
    let yl = lattice_meet_subspace(&lbasis, &y);
    // Coordinates of Y ∩ L in the basis of X ∩ L; Y ∩ L is saturated there.
    let xl = if xl.rows() == 0 { xl } else { hermite_basis(&xl) };
    let k = xl.rows();
    let mut section = Vec::new();
    let mut e = Vec::new();
    if k > 0 {
        let coords: Vec<Vec<Rational>> = yl.row_vecs().iter().map(|v| solve_in_basis(&xl, v)).collect();
        if coords.is_empty() {
            section = xl.row_vecs();
        } else {
            let ec = zrows(&QMatrix::from_rows(k, coords));
            let s = smith_form(&ec);
            let m = s.rank();
            let v = s.v.to_rational().mul(&xl);
            e = (0..m).map(|i| v.row(i).to_vec()).collect();
            section = (m..k).map(|i| v.row(i).to_vec()).collect();
            // The Smith rows span Y ∩ L only if the divisors are units.
            if s.divisors().iter().take(m).any(|d| d.abs() != BigInt::from(1)) {
                return Err(Error::Assertion("Y ∩ L is not saturated in X ∩ L".into()));
            }
            e = hermite_basis(&QMatrix::from_rows(dv, e)).row_vecs();
        }
    }
    Ok(RelCompleteFan { data: data.clone(), x, y, section, e })
}

fn hermite_basis(m: &QMatrix) -> QMatrix {
    let d = common_denominator(m.data());
    let dq = Rational::from_bigint(d.clone());
    let z = m.map(|q| (q.numer() * &d) / q.denom());
    hermite_rows(&z).map(|v| Rational::from_bigint(v.clone()) / &dq)
}

fn solve_in_basis(basis: &QMatrix, v: &[Rational]) -> Vec<Rational> {
    basis.transpose().solve(v).expect("vector lies in the lattice span")
}

impl RelCompleteFan {
    pub fn data(&self) -> &TwoWeightData {
        &self.data
    }
    pub fn x_space(&self) -> &QSubspace {
        &self.x
    }
    pub fn y_space(&self) -> &QSubspace {
        &self.y
    }
    /// Section vectors s(f_i) spanning X/Y.
    pub fn section(&self) -> &[Vec<Rational>] {
        &self.section
    }
    /// ℤ-basis (e_j) of Y ∩ L.
    pub fn e_basis(&self) -> &[Vec<Rational>] {
        &self.e
    }
    pub fn m(&self) -> usize {
        self.e.len()
    }
    fn dv(&self) -> usize {
        self.data.rank_a() * self.data.rank_b()
    }

    /// d(x): order of x in X/((X ∩ L) + Y), for x in section coordinates.
    pub fn order(x: &[Rational]) -> BigInt {
        x.iter().fold(BigInt::from(1), |a, q| a.lcm(q.denom()))
    }

    fn hom_point(&self, x: &[Rational], d: &BigInt, c: &[Rational]) -> QMatrix {
        let dv = self.dv();
        let mut v = vec![Rational::int(0); dv];
        for (xi, s) in x.iter().zip(&self.section) {
            for (vj, sj) in v.iter_mut().zip(s) {
                *vj = vj.clone() + &(xi.clone() * sj);
            }
        }
        let dq = Rational::from_bigint(d.clone());
        for (cj, ej) in c.iter().zip(&self.e) {
            for (vj, ek) in v.iter_mut().zip(ej) {
                *vj = vj.clone() + &(cj.clone() * ek / &dq);
            }
        }
        QMatrix::from_vec(self.data.rank_a(), self.data.rank_b(), v)
    }

    fn proj(&self) -> Vec<QMatrix> {
        vec![self.data.graded_log()]
    }

    /// σ(x, n), generated by the 2^m box corners.
    pub fn cone(&self, x: &[Rational], n: &[BigInt]) -> Result<MarkedCone> {
        if x.len() != self.section.len() || n.len() != self.m() {
            return Err(Error::DimensionMismatch(format!(
                "σ(x, n) needs {} section and {} box coordinates",
                self.section.len(),
                self.m()
            )));
        }
        let d = Self::order(x);
        let m = self.m();
        let mut pairs = Vec::new();
        for corner in 0..(1usize << m) {
            let c: Vec<Rational> = (0..m)
                .map(|j| Rational::from_bigint(n[j].clone() + BigInt::from((corner >> j) & 1)))
                .collect();
            pairs.push((vec![Rational::int(1)], self.data.assemble(&self.hom_point(x, &d, &c))));
        }
        MarkedCone::new(1, self.data.rank(), self.proj(), pairs)
    }

    /// All faces of σ(x, n) for the given x and box indices.
    pub fn window(&self, xs: &[Vec<Rational>], ns: &[Vec<BigInt>]) -> Result<FanSet> {
        let mut cones = Vec::new();
        for x in xs {
            for n in ns {
                cones.extend(self.cone(x, n)?.faces());
            }
        }
        FanSet::marked(cones)
    }

    /// Coordinates of a nilpotent in the fiber over the generator v.
    pub fn query(&self, n: &QMatrix) -> Result<Option<SchemaPoint>> {
        let (na, nb) = (self.data.rank_a(), self.data.rank_b());
        if n.rows() != na + nb || n.cols() != na + nb {
            return Err(Error::DimensionMismatch("query matrix has the wrong shape".into()));
        }
        if crate::filtration::graded_endomorphism(&self.data.weight_filtration(), n) != self.data.graded_log()
            || !n.submatrix(&(na..na + nb).collect::<Vec<_>>(), &(0..na).collect::<Vec<_>>()).is_zero()
        {
            return Ok(None);
        }
        let u = flatten(&self.data.hom_component(n));
        Ok(self.locate(&u))
    }

    fn locate(&self, u: &[Rational]) -> Option<SchemaPoint> {
        if !self.x.contains_vec(u) {
            return None;
        }
        let k = self.section.len() + self.m();
        if k == 0 {
            return Some(SchemaPoint { x: vec![], d: BigInt::from(1), c: vec![], n: vec![] });
        }
        let rows: Vec<Vec<Rational>> = self.section.iter().chain(&self.e).cloned().collect();
        let coef = QMatrix::from_rows(self.dv(), rows).transpose().solve(u)?;
        let x = coef[..self.section.len()].to_vec();
        let d = Self::order(&x);
        let dq = Rational::from_bigint(d.clone());
        let c: Vec<Rational> = coef[self.section.len()..].iter().map(|y| y.clone() * &dq).collect();
        let n = c.iter().map(|q| q.floor()).collect();
        Some(SchemaPoint { x, d, c, n })
    }

    /// Cover a marked probe cone by pieces, each inside one σ(x, n).
    pub fn probe(&self, tau: &MarkedCone) -> ProbeReport {
        let fail = |reason: String| ProbeReport { covered: false, pieces: Vec::new(), reason: Some(reason) };
        if tau.r() != 1 || tau.ambient_dim() != self.data.rank() {
            return fail("probe lives in a different space".into());
        }
        if tau.pairs().is_empty() {
            return ProbeReport { covered: true, pieces: Vec::new(), reason: None };
        }
        let mut pts = Vec::new();
        let mut cls: Option<Vec<Rational>> = None;
        for (i, (x, n)) in tau.pairs().iter().enumerate() {
            let t = &x[0];
            if !t.is_positive() {
                return fail(format!("generator {i} lies over the vertex of σ′"));
            }
            let unit = n.scale(&(Rational::int(1) / t));
            let Ok(Some(p)) = self.query(&unit) else {
                return fail(format!("generator {i} is off the fiber or outside X, so M(N, W) fails"));
            };
            match &cls {
                None => cls = Some(p.x.clone()),
                Some(c) if *c != p.x => return fail(format!("generator {i} does not commute with the others")),
                _ => {}
            }
            pts.push(p);
        }
        let x = cls.expect("nonempty");
        let d = Self::order(&x);
        let m = self.m();
        // Slice coordinates (1, c) ∈ ℚ^{1+m}.
        let lift = |c: &[Rational]| {
            let mut v = vec![Rational::int(1)];
            v.extend(c.iter().cloned());
            v
        };
        let slice = match PolyCone::new(1 + m, &pts.iter().map(|p| lift(&p.c)).collect::<Vec<_>>()) {
            Ok(p) => p,
            Err(e) => return fail(e.to_string()),
        };
        let lo: Vec<BigInt> = (0..m).map(|j| pts.iter().map(|p| p.c[j].floor()).min().expect("nonempty")).collect();
        let hi: Vec<BigInt> = (0..m).map(|j| pts.iter().map(|p| p.c[j].floor()).max().expect("nonempty")).collect();
        let mut boxes: Vec<Vec<BigInt>> = vec![vec![]];
        for j in 0..m {
            let mut next = Vec::new();
            for b in &boxes {
                let mut k: BigInt = lo[j].clone() - 1;
                while k <= hi[j] {
                    let mut nb = b.clone();
                    nb.push(k.clone());
                    next.push(nb);
                    k += 1;
                }
            }
            boxes = next;
        }
        let mut pieces: Vec<ProbePiece> = Vec::new();
        let mut polys: Vec<PolyCone> = Vec::new();
        for n in boxes {
            let corners: Vec<Vec<Rational>> = (0..(1usize << m))
                .map(|corner| {
                    lift(&(0..m).map(|j| Rational::from_bigint(n[j].clone() + BigInt::from((corner >> j) & 1))).collect::<Vec<_>>())
                })
                .collect();
            let bx = PolyCone::new(1 + m, &corners).expect("box");
            let Ok(piece) = slice.intersect(&bx) else { continue };
            if piece.rank() != slice.rank() || polys.iter().any(|p| p.same_cone(&piece)) {
                continue;
            }
            let pairs: Vec<(Vec<Rational>, QMatrix)> = piece
                .generators()
                .iter()
                .map(|g| {
                    let t = g[0].clone();
                    let c: Vec<Rational> = g[1..].iter().map(|ci| ci.clone() / &t).collect();
                    (vec![t.clone()], self.data.assemble(&self.hom_point(&x, &d, &c)).scale(&t))
                })
                .collect();
            let cone = match MarkedCone::new(1, self.data.rank(), self.proj(), pairs) {
                Ok(c) => c,
                Err(e) => return fail(e.to_string()),
            };
            let target = self.cone(&x, &n).expect("shapes");
            if !target.poly().contains_cone(cone.poly()) {
                return fail("piece escapes its schema cone".into());
            }
            polys.push(piece);
            pieces.push(ProbePiece { x: x.clone(), n, cone });
        }
        // Generators and an interior point must each land in a piece.
        let mut checks: Vec<Vec<Rational>> = slice.generators().to_vec();
        checks.push(slice.interior_point());
        if let Some(v) = checks.iter().find(|v| !polys.iter().any(|p| p.contains(v))) {
            return fail(format!("uncovered slice point {:?}", v));
        }
        ProbeReport { covered: true, pieces, reason: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbePiece {
    pub x: Vec<Rational>,
    #[serde(serialize_with = "int_str::many")]
    pub n: Vec<BigInt>,
    pub cone: MarkedCone,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub covered: bool,
    pub pieces: Vec<ProbePiece>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

pub fn relative_completeness_probe(fan: &RelCompleteFan, probes: &[MarkedCone]) -> Vec<ProbeReport> {
    use rayon::prelude::*;
    probes.par_iter().map(|p| fan.probe(p)).collect()
}
