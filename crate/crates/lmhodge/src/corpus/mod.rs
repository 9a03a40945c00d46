//! The worked examples, rebuilt from their constructors and checked claim by
//! claim.

pub mod data;
mod samples;

pub use samples::sample_documents;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cones::{Cone, MarkedCone};
use crate::error::{Error, Result};
use crate::exactlin::{GaussRational, QMatrix, QSubspace, Rational, Ring};
use crate::fans::{check_face_closure, check_fan, check_strong_compat, gamma_sigma, weakfan_falsify, FanSet};
use crate::filtration::{FilteredNilp, QFiltration};
use crate::hodge::{delta_splitting, PeriodPoint};
use crate::monodromy::{check_adjoint_admissible, check_admissible_cone, relative_monodromy, Action};
use crate::neron::{
    build_relcomplete_fan, compute_b1, in_sigma1, kummer_type, relative_completeness_probe, sigma_tau_upsilon, KummerType,
};
use crate::orbits::{classify_boundary, exp_combination, mixed_orbit_test, pure_orbit_test, relative_orbit_test, BoundaryPoint, OrbitMode};

pub use data::*;

/// Names accepted by `corpus run`.
pub const CORPUS: [&str; 9] = ["7.1.1", "7.1.2", "7.1.3", "7.1.5", "7.2.1", "7.2.2", "7.3.3", "7.3.4", "7.3.6"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub claim: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub name: String,
    pub pass: bool,
    pub claims: Vec<Claim>,
}

impl CorpusReport {
    pub fn failures(&self) -> Vec<&Claim> {
        self.claims.iter().filter(|c| !c.pass).collect()
    }
}

#[derive(Default)]
struct Claims(Vec<Claim>);

impl Claims {
    fn eval(&mut self, claim: &str, f: impl FnOnce() -> Result<bool>) {
        self.eval_detail(claim, || f().map(|b| (b, Value::Null)));
    }
    fn eval_detail(&mut self, claim: &str, f: impl FnOnce() -> Result<(bool, Value)>) {
        let (pass, detail) = match f() {
            Ok((b, Value::Null)) => (b, None),
            Ok((b, v)) => (b, Some(v)),
            Err(e) => (false, Some(json!({ "error": e.to_string() }))),
        };
        self.0.push(Claim { claim: claim.into(), pass, detail });
    }
    fn finish(self, name: &str) -> CorpusReport {
        CorpusReport { name: name.into(), pass: self.0.iter().all(|c| c.pass), claims: self.0 }
    }
}

fn span(n: usize, vecs: &[&[i64]]) -> QSubspace {
    QSubspace::span(n, &vecs.iter().map(|v| v.iter().map(|&x| Rational::int(x)).collect()).collect::<Vec<_>>())
}

/// M_k for k in [lo, hi] equals the listed steps, with 0 below and V above.
fn filtration_is(m: &QFiltration, lo: i64, steps: &[QSubspace]) -> bool {
    let n = m.dim();
    (lo - 2..lo + steps.len() as i64 + 2).all(|k| {
        let want = if k < lo {
            QSubspace::zero(n)
        } else if k >= lo + steps.len() as i64 {
            QSubspace::full(n)
        } else {
            steps[(k - lo) as usize].clone()
        };
        *m.get(k) == want
    })
}

fn rmf(w: &QFiltration, n: &QMatrix) -> Result<QFiltration> {
    relative_monodromy(&FilteredNilp::new(w.clone(), n.clone())?).into_filtration()
}

fn adjoint_ok(cone: &Cone, w: &QFiltration) -> Result<bool> {
    if !check_admissible_cone(cone, w)?.is_admissible() {
        return Ok(true);
    }
    Ok(check_adjoint_admissible(cone.poly(), &Action::Flattened { n: cone.ambient_dim() }, w)?.is_admissible())
}

fn generates(frame: &crate::hodge::HodgeFrame, cone: &Cone, f: &PeriodPoint) -> Result<bool> {
    Ok(mixed_orbit_test(frame, cone, f, OrbitMode::Both)?.verdict.generates())
}

fn i() -> GaussRational {
    GaussRational::i()
}

fn q(n: i64) -> Rational {
    Rational::int(n)
}

fn interior(c: &Cone, x: &QMatrix) -> Result<bool> {
    Ok(c.contains(x) && c.smallest_face(x)?.same_cone(c))
}

fn ad_base(g: &QMatrix, k: i64) -> QMatrix {
    if k >= 0 {
        g.pow(k as usize)
    } else {
        g.inverse().expect("invertible").pow((-k) as usize)
    }
}

fn ad_pow(g: &QMatrix, x: &QMatrix, k: i64) -> QMatrix {
    let gk = ad_base(g, k);
    gk.mul(x).mul(&gk.inverse().expect("invertible"))
}

fn positions(fan: &FanSet, cones: &[Cone]) -> Vec<usize> {
    let mut out: Vec<usize> =
        cones.iter().filter_map(|c| fan.cones().iter().position(|d| d.same_cone(c))).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn tate() -> CorpusReport {
    let ex = TateExtension::new();
    let mut c = Claims::default();
    let w = ex.frame.w().clone();
    c.eval("F(z) lies in D for Gaussian-rational z", || {
        sample_points().iter().try_fold(true, |acc, z| Ok(acc && ex.frame.in_d(&ex.flag(z))?))
    });
    c.eval("δ(F(x+iy)) sends e₂ to y·e₁ and s′ shifts e₂ by x·e₁", || {
        for z in sample_points() {
            let d = delta_splitting(&w, &ex.flag(&z))?;
            if d.delta != ex.n.scale(&z.im) || d.splitting != QMatrix::identity(2).add(&ex.n.scale(&z.re)) {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.eval("δ(exp(zN)F) = δ(F) + Im(z)·s′⁻¹Ns′", || {
        for z0 in sample_points() {
            let f = ex.flag(&z0);
            let d0 = delta_splitting(&w, &f)?;
            let s = &d0.splitting;
            let shift = s.inverse().expect("splitting").mul(&ex.n).mul(s);
            for z in sample_points() {
                let g = exp_combination(std::slice::from_ref(&ex.n), std::slice::from_ref(&z), 2);
                let d = delta_splitting(&w, &f.transform(&g))?;
                if d.delta != d0.delta.add(&shift.scale(&z.im)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    c.eval("(σ, F(z)) and (−σ, F(z)) generate nilpotent orbits", || {
        let minus = Cone::ray(&ex.n.neg())?;
        for z in sample_points() {
            let f = ex.flag(&z);
            if !generates(&ex.frame, &ex.sigma(), &f)? || !generates(&ex.frame, &minus, &f)? {
                return Ok(false);
            }
        }
        Ok(true)
    });
    let fan = || FanSet::absolute(vec![ex.sigma(), Cone::ray(&ex.n.neg()).expect("ray"), Cone::zero(2)]);
    c.eval("Σ = {σ, −σ, {0}} is a fan", || {
        let fan = fan()?;
        Ok(check_face_closure(&fan).ok && check_fan(&fan)?.ok)
    });
    c.eval("Σ is strongly compatible with G_{ℤ,u}", || Ok(check_strong_compat(&fan()?, &ex.group())?.ok()));
    c.eval("σ is admissible and so is its adjoint action", || {
        Ok(check_admissible_cone(&ex.sigma(), &w)?.is_admissible() && adjoint_ok(&ex.sigma(), &w)?)
    });
    c.finish("7.1.1")
}

fn elliptic(win: Window) -> CorpusReport {
    let ex = EllipticExtension::new(1);
    let w = ex.frame.w().clone();
    let mut c = Claims::default();
    let e1 = span(3, &[&[1, 0, 0]]);
    c.eval_detail("M(N_n, W): M₋₂ = M₋₁ = ℚe₁, M₀ = V", || {
        let m0 = rmf(&w, &ex.n(0))?;
        let mut ok = true;
        for k in -2..=2 {
            ok &= filtration_is(&rmf(&w, &ex.n(k))?, -2, &[e1.clone(), e1.clone()]);
        }
        Ok((ok, serde_json::to_value(&m0).expect("serializable")))
    });
    c.eval("σ₀ and σ_{0,1} are admissible, with admissible adjoint actions", || {
        let mut ok = true;
        for cone in [ex.sigma(0), ex.sigma_pair(0)] {
            ok &= check_admissible_cone(&cone, &w)?.is_admissible() && adjoint_ok(&cone, &w)?;
        }
        Ok(ok)
    });
    c.eval("F(τ, z) lies in D for τ in the upper half plane", || {
        let mut ok = true;
        for t in upper_half_samples() {
            for z in sample_points() {
                ok &= ex.frame.in_d(&ex.flag(&t, &z, &GaussRational::zero()))?;
            }
        }
        ok &= !ex.frame.in_d(&ex.flag(&(-i()), &GaussRational::zero(), &GaussRational::zero()))?;
        Ok(ok)
    });
    c.eval("(σ₀, F(i, z)) and (σ_{0,1}, F(τ, z)) generate", || {
        let mut ok = true;
        for z in sample_points() {
            ok &= generates(&ex.frame, &ex.sigma(0), &ex.flag(&i(), &z, &GaussRational::zero()))?;
            ok &= generates(&ex.frame, &ex.sigma_pair(0), &ex.flag(&GaussRational::ints(1, 2), &z, &GaussRational::zero()))?;
        }
        Ok(ok)
    });
    c.eval("on gr₋₁, (N′, F(i)) generates and (−N′, F(i)) does not", || {
        let gr = ex.frame.graded_frame(-1)?;
        let f = l_flag(0, &i());
        let yes = pure_orbit_test(&gr, &[l_nilp()], &f, OrbitMode::Both)?.verdict.generates();
        let no = pure_orbit_test(&gr, &[l_nilp().neg()], &f, OrbitMode::Both)?.verdict.fails();
        Ok(yes && no)
    });
    c.eval("σ₀ marked over σ′ generates a relative orbit with F(τ, z)", || {
        let mut ok = true;
        for z in sample_points() {
            ok &= relative_orbit_test(&ex.marked_sigma(0), &ex.flag(&i(), &z, &GaussRational::zero()), &ex.frame, OrbitMode::Both)?
                .verdict
                .generates();
        }
        Ok(ok)
    });
    c.eval("the boundary point 0_{σ₀}·F(i, z) lies in E_{σ₀}", || {
        let mut ok = true;
        for z in sample_points() {
            let b = BoundaryPoint {
                sigma: ex.sigma(0),
                tau: ex.sigma(0),
                a: vec![GaussRational::zero()],
                f: ex.flag(&i(), &z, &GaussRational::zero()),
            };
            ok &= classify_boundary(&b, &ex.frame, OrbitMode::Both)?.verdict.generates();
        }
        Ok(ok)
    });
    c.eval("Ad(I + E₂₃)N_n = N_{n−1}", || {
        let g = ex.upsilon(&q(0), &q(1));
        Ok((-3..=3).all(|k| ad_pow(&g, &ex.n(k), 1) == ex.n(k - 1)))
    });
    c.eval("Σ and Σ₀ are fans on the window", || {
        let s = FanSet::absolute(ex.sigma_window(win.lo - 1..=win.hi + 1))?;
        let s0 = FanSet::absolute(ex.sigma0_window(win.lo - 1..=win.hi + 1))?;
        Ok(check_fan(&s)?.ok && check_fan(&s0)?.ok && check_face_closure(&s).ok && check_face_closure(&s0).ok)
    });
    c.eval("(Σ, Γ) and (Σ₀, Γ) are strongly compatible on the inner window", || {
        let s = FanSet::absolute(ex.sigma_window(win.lo - 1..=win.hi + 1))?;
        let inner: Vec<Cone> = (win.lo..=win.hi - 1).flat_map(|k| ex.sigma_pair(k).faces()).collect();
        let s = s.clone().with_window(positions(&s, &inner))?;
        let s0 = FanSet::absolute(ex.sigma0_window(win.lo - 1..=win.hi + 1))?;
        let inner0: Vec<Cone> = (win.lo..=win.hi).map(|k| ex.sigma(k)).collect();
        let s0 = s0.clone().with_window(positions(&s0, &inner0))?;
        Ok(check_strong_compat(&s, &ex.gamma())?.ok() && check_strong_compat(&s0, &ex.gamma())?.ok())
    });
    c.eval("Γ(σ₀) = exp(ℤ_{≥0}N₀)", || {
        let gs = gamma_sigma(&ex.sigma(0), &ex.gamma())?;
        Ok(gs.scalars == vec![q(1)] && gs.generators == vec![ex.n(0).exp_nilpotent()])
    });
    let ctx = ex.neron_context();
    c.eval("σ_{σ′,1} = σ₀ and σ_{σ′,υ} = σ_n for υ: e₃ ↦ e₃ − n e₂", || {
        let mut ok = sigma_tau_upsilon(&ctx, &[0], &QMatrix::identity(3))?.same_cone(&ex.marked_sigma(0));
        for k in -3..=3 {
            ok &= sigma_tau_upsilon(&ctx, &[0], &ex.upsilon(&q(0), &q(-k)))?.same_cone(&ex.marked_sigma(k));
        }
        ok &= sigma_tau_upsilon(&ctx, &[], &QMatrix::identity(3))?.pairs().is_empty();
        Ok(ok)
    });
    c.eval_detail("Kummer types: b = (0, −n) Iso, (0, 1/2) Kummer(2), (1/2, 0) Iso", || {
        let kt = |b1: Rational, b2: Rational| -> Result<KummerType> {
            let s = sigma_tau_upsilon(&ctx, &[0], &ex.upsilon(&b1, &b2))?;
            kummer_type(&ctx, &s, &[0])
        };
        let a = kt(q(0), q(-2))?;
        let b = kt(q(0), Rational::new(1, 2))?;
        let d = kt(Rational::new(1, 2), q(0))?;
        let ok = a == KummerType::Iso && b == KummerType::Kummer(2) && d == KummerType::Iso;
        Ok((ok, json!([a, b, d])))
    });
    c.eval("Σ₀ ⊆ Σ₁ and the two coincide on a window of υ", || {
        let mut ok = true;
        for d in 1..=3i64 {
            for a in -3 * d..=3 * d {
                for b in [0, 1] {
                    let ups = ex.upsilon(&Rational::new(b, d), &Rational::new(a, d));
                    let s = sigma_tau_upsilon(&ctx, &[0], &ups)?;
                    let in1 = in_sigma1(&ctx, &s, &[0])?;
                    let integral = a % d == 0;
                    ok &= in1 == integral;
                    if in1 {
                        ok &= s.same_cone(&ex.marked_sigma(-a / d));
                    }
                }
            }
        }
        Ok(ok)
    });
    c.eval("no weak-fan violation in Σ(G_{ℤ,u}) on a window", || {
        let mut cones = vec![MarkedCone::zero(1, 3, vec![ex.graded_log()])];
        for k in -2..=2 {
            cones.push(sigma_tau_upsilon(&ctx, &[0], &ex.upsilon(&q(0), &q(-k)))?);
        }
        let fan = FanSet::marked(cones)?;
        let cands: Vec<PeriodPoint> = sample_points().iter().map(|z| ex.flag(&i(), z, &GaussRational::zero())).collect();
        Ok(weakfan_falsify(&fan, &cands, &ex.frame)?.is_none())
    });
    c.eval_detail("B₁ for γ′ = [[1,1],[0,1]]: one divisible direction e₁, no finite part", || {
        let b1 = compute_b1(&QMatrix::from_ints(&[&[1, 1], &[0, 1]]))?;
        let ok = b1.finite.is_empty() && b1.divisible.len() == 1 && QSubspace::span(2, &b1.divisible) == span(2, &[&[1, 0]]);
        Ok((ok, serde_json::to_value(&b1).expect("serializable")))
    });
    c.finish("7.1.2")
}

fn twisted(win: Window) -> CorpusReport {
    let ex = EllipticExtension::new(2);
    let w = ex.frame.w().clone();
    let mut c = Claims::default();
    let z = GaussRational::zero();
    c.eval("M(N_n, W): M₋₄ = ℚe₁ ⊂ M₋₂ = ℚe₁ + ℚe₂ ⊂ M₀ = V", || {
        let e1 = span(3, &[&[1, 0, 0]]);
        let e12 = span(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let mut ok = true;
        for k in -2..=2 {
            ok &= filtration_is(&rmf(&w, &ex.n(k))?, -4, &[e1.clone(), e1.clone(), e12.clone(), e12.clone()]);
        }
        Ok(ok)
    });
    c.eval("F(τ, z, w) lies in D", || {
        let mut ok = true;
        for t in upper_half_samples() {
            for x in sample_points() {
                ok &= ex.frame.in_d(&ex.flag(&t, &x, &GaussRational::ints(2, -1)))?;
            }
        }
        Ok(ok)
    });
    c.eval("(N₀, F(i, 5, 0)) generates; (N₀, F(i, 5, 1)) fails", || {
        let five = GaussRational::ints(5, 0);
        let yes = generates(&ex.frame, &ex.sigma(0), &ex.flag(&i(), &five, &z))?;
        let r = mixed_orbit_test(&ex.frame, &ex.sigma(0), &ex.flag(&i(), &five, &GaussRational::one()), OrbitMode::Both)?;
        Ok(yes && r.verdict.fails() && r.transversality == vec![false])
    });
    c.eval("(σ_n, F(i, z, w)) generates exactly when w = −n", || {
        let mut ok = true;
        for k in -2..=2 {
            for wv in -2..=2 {
                let g = generates(&ex.frame, &ex.sigma(k), &ex.flag(&i(), &GaussRational::ints(1, 1), &GaussRational::ints(wv, 0)))?;
                ok &= g == (wv == -k);
            }
        }
        Ok(ok)
    });
    c.eval("Γ(σ₀) = exp(ℤ_{≥0}N₀) and (Σ₀, Γ) is strongly compatible", || {
        let gs = gamma_sigma(&ex.sigma(0), &ex.gamma())?;
        let s0 = FanSet::absolute(ex.sigma0_window(win.lo - 1..=win.hi + 1))?;
        let inner: Vec<Cone> = (win.lo..=win.hi).map(|k| ex.sigma(k)).collect();
        let s0 = s0.clone().with_window(positions(&s0, &inner))?;
        Ok(gs.generators == vec![ex.n(0).exp_nilpotent()] && check_strong_compat(&s0, &ex.gamma())?.ok())
    });
    c.eval("σ₀ is admissible with admissible adjoint action", || {
        Ok(check_admissible_cone(&ex.sigma(0), &w)?.is_admissible() && adjoint_ok(&ex.sigma(0), &w)?)
    });
    c.eval("Σ₀ = Σ₁ on a window of υ", || {
        let ctx = ex.neron_context();
        let mut ok = true;
        for d in 1..=2i64 {
            for a in -2 * d..=2 * d {
                let s = sigma_tau_upsilon(&ctx, &[0], &ex.upsilon(&q(0), &Rational::new(a, d)))?;
                let in1 = in_sigma1(&ctx, &s, &[0])?;
                ok &= in1 == (a % d == 0);
            }
        }
        Ok(ok)
    });
    c.finish("7.1.3")
}

fn triple_ranks() -> CorpusReport {
    let mut c = Claims::default();
    c.eval_detail("invariant ranks 20 / 14 / 10 / 7", || {
        let r = lattice_rank_claims()?;
        Ok((r == vec![20, 14, 10, 7], json!(r)))
    });
    c.eval("the three operators commute and are nilpotent", || {
        let ops = triple_product_ops();
        Ok(ops.iter().all(|n| n.is_nilpotent()) && ops[0].commutes(&ops[1]) && ops[1].commutes(&ops[2]) && ops[0].commutes(&ops[2]))
    });
    c.finish("7.1.5")
}

fn product() -> CorpusReport {
    let ex = ProductExtension::new();
    let w = ex.frame.w().clone();
    let mut c = Claims::default();
    let tau = ex.tau();
    c.eval("γ_{m,n} ∈ G_{ℤ,u}", || Ok((1..=3).all(|m| (1..=3).all(|n| ex.frame.in_integral_group(&ex.gamma(m, n))))));
    c.eval("τ ∩ Ad(γ_{1,1})τ = ℝ≥0(N₁ + N₂), not a face of τ", || {
        let moved = tau.ad(&ex.gamma(1, 1))?;
        let meet = tau.intersect(&moved)?;
        let ray = Cone::ray(&ex.n1.add(&ex.n2))?;
        Ok(meet.same_cone(&ray) && !meet.is_face_of(&tau)? && tau.relative_interiors_meet(&moved)?)
    });
    c.eval_detail("faces of τ and Ad(γ_{1,1})τ do not form a fan", || {
        let mut cones = tau.faces();
        cones.extend(tau.ad(&ex.gamma(1, 1))?.faces());
        let r = check_fan(&FanSet::absolute(cones)?)?;
        Ok((!r.ok && r.violation.is_some(), serde_json::to_value(&r).expect("serializable")))
    });
    c.eval("Ad(γ_{m,n})(mN₁+nN₂) = mN₁+nN₂ and Ad(γ_{m,n})^k(m′N₁+n′N₂) = m′N₁+n′N₂ + k(m′n−mn′)N₀", || {
        let mut ok = true;
        for m in 1..=3 {
            for n in 1..=3 {
                let g = ex.gamma(m, n);
                let fixed = ex.n1.scale(&q(m)).add(&ex.n2.scale(&q(n)));
                ok &= ad_pow(&g, &fixed, 1) == fixed;
                for (mp, np) in [(1, 2), (2, 1), (3, 1)] {
                    let x = ex.n1.scale(&q(mp)).add(&ex.n2.scale(&q(np)));
                    for k in -2..=2 {
                        ok &= ad_pow(&g, &x, k) == x.add(&ex.n0().scale(&q(k * (mp * n - m * np))));
                    }
                }
            }
        }
        Ok(ok)
    });
    let cands: Vec<PeriodPoint> = upper_half_samples().iter().map(|t| ex.flag(t, &vec![GaussRational::zero(); 4])).collect();
    c.eval("(τ, (F⊗F) ⊕ ℂe) generates", || cands.iter().try_fold(true, |acc, f| Ok(acc && generates(&ex.frame, &tau, f)?)));
    c.eval("τ is admissible with admissible adjoint action", || {
        Ok(check_admissible_cone(&tau, &w)?.is_admissible() && adjoint_ok(&tau, &w)?)
    });
    c.eval("no weak-fan violation in Σ(G_{ℤ,u}) on a window", || {
        let mut cones = Vec::new();
        for (m, n) in [(0, 0), (1, 1), (1, 0), (0, 1), (2, 1)] {
            cones.extend(tau.ad(&ex.gamma(m, n))?.faces());
        }
        let fan = FanSet::absolute(cones)?;
        Ok(weakfan_falsify(&fan, &cands, &ex.frame)?.is_none())
    });
    c.finish("7.2.1")
}

fn triple_product() -> CorpusReport {
    let ex = TripleProductExtension::new();
    let mut c = Claims::default();
    c.eval("γ fixes H₋₁, lies in G_{ℤ,u}", || Ok(ex.frame.in_integral_group(&ex.gamma(1, 2))));
    c.eval("Ad(γ)^k(m′N₁+n′N₂+ℓN₃) = m′N₁+n′N₂+ℓN₃ + k(m′n−mn′)N₀ at (1,2,2,1,1,1)", || {
        let (m, n, mp, np, l, k) = (1, 2, 2, 1, 1, 1);
        let g = ex.gamma(m, n);
        let x = ex.combo(mp, np, l);
        Ok(ad_pow(&g, &ex.combo(m, n, l), 1) == ex.combo(m, n, l)
            && ad_pow(&g, &x, k) == x.add(&ex.n0().scale(&q(k * (mp * n - m * np)))))
    });
    c.eval("the Ad-orbit identity on a grid of (m, n, m′, n′, k)", || {
        let mut ok = true;
        for m in 1..=3 {
            for n in 1..=3 {
                let g = ex.gamma(m, n);
                for (mp, np) in [(1, 2), (2, 1), (3, 1)] {
                    let x = ex.combo(mp, np, 1);
                    for k in [-1, 1, 2] {
                        ok &= ad_pow(&g, &x, k) == x.add(&ex.n0().scale(&q(k * (mp * n - m * np))));
                    }
                }
            }
        }
        Ok(ok)
    });
    c.eval("the three N_j are admissible on H", || {
        Ok(check_admissible_cone(&Cone::new(21, ex.ns.to_vec())?, ex.frame.w())?.is_admissible())
    });
    c.finish("7.2.2")
}

fn tensor_sym() -> CorpusReport {
    let ex = TensorSymSquare::new();
    let mut c = Claims::default();
    let (m, n, l) = (1, 2, 1);
    c.eval("γ lies in G_ℤ", || Ok(ex.frame.in_integral_group(&ex.gamma(m, n))));
    c.eval("Ad(γ)(mN₁+nN₂+ℓN₃) = mN₁+nN₂+ℓN₃", || Ok(ad_pow(&ex.gamma(m, n), &ex.combo(m, n, l), 1) == ex.combo(m, n, l)));
    c.eval("Ad(γ)^k(m′N₁+n′N₂+ℓN₃) = … + k(m′n−mn′)N₀ on a grid", || {
        let mut ok = true;
        for m in 1..=3 {
            for n in 1..=3 {
                let g = ex.gamma(m, n);
                for (mp, np) in [(1, 2), (2, 1), (3, 1)] {
                    let x = ex.combo(mp, np, 1);
                    for k in [-1, 1, 2] {
                        ok &= ad_pow(&g, &x, k) == x.add(&ex.n0().scale(&q(k * (mp * n - m * np))));
                    }
                }
            }
        }
        Ok(ok)
    });
    c.eval_detail("no window cone Ad(γ)^jτ contains the orbit {x + k(m′n−mn′)N₀}", || {
        let (mp, np) = (2, 1);
        let g = ex.gamma(m, n);
        let x = ex.combo(mp, np, l);
        let radius = 3;
        let tau = ex.tau();
        let orbit: Vec<QMatrix> = (-2 * radius - 1..=2 * radius + 1).map(|k| ad_pow(&g, &x, k)).collect();
        let mut worst = 0usize;
        for j in -radius..=radius {
            let cone = tau.ad(&ad_base(&g, j))?;
            if !cone.is_sharp() {
                return Ok((false, json!({ "non_sharp": j })));
            }
            let inside = orbit.iter().filter(|p| cone.contains(p)).count();
            worst = worst.max(inside);
        }
        Ok((worst < orbit.len(), json!({ "orbit_points": orbit.len(), "max_inside_one_cone": worst })))
    });
    c.eval("(τ, (F⊗F) ⊕ Sym²F) generates", || {
        upper_half_samples().iter().try_fold(true, |acc, t| Ok(acc && generates(&ex.frame, &ex.tau(), &ex.flag(t))?))
    });
    c.eval("τ is admissible with admissible adjoint action", || {
        Ok(check_admissible_cone(&ex.tau(), ex.frame.w())?.is_admissible() && adjoint_ok(&ex.tau(), ex.frame.w())?)
    });
    c.finish("7.3.3")
}

/// First k in ±1..=bound with Ad(γ)^k x ∉ σ.
fn escape_exponent(sigma: &Cone, g: &QMatrix, x: &QMatrix, bound: i64) -> Option<i64> {
    (1..=bound).flat_map(|k| [k, -k]).find(|&k| !sigma.contains(&ad_pow(g, x, k)))
}

/// Integer points mN₁+nN₂+ℓN₃ and m′N₁+n′N₂+ℓN₃ in the relative interior of
/// `tau1` with mn′ − m′n ≠ 0, searched over a small box.
fn interior_pair(ex: &TensorSymSquare, tau1: &Cone) -> Result<Option<(i64, i64, i64, i64, i64)>> {
    for l in 1..=8 {
        let pts: Vec<(i64, i64)> = (1..=8)
            .flat_map(|a| (1..=8).map(move |b| (a, b)))
            .filter(|&(a, b)| interior(tau1, &ex.combo(a, b, l)).unwrap_or(false))
            .collect();
        for &(m, n) in &pts {
            if let Some(&(mp, np)) = pts.iter().find(|&&(mp, np)| m * np != mp * n) {
                return Ok(Some((m, n, mp, np, l)));
            }
        }
    }
    Ok(None)
}

fn tensor_sym_cover() -> CorpusReport {
    let ex = TensorSymSquare::new();
    let mut c = Claims::default();
    let tau = ex.tau();
    c.eval("a τ-nilpotent orbit exists", || generates(&ex.frame, &tau, &ex.flag(&i())));
    // Rational stand-in for a point with independent coordinates.
    let p = ex.combo(1, 2, 3);
    let candidates = || -> Result<Vec<Cone>> {
        let n0 = ex.n0();
        Ok(vec![
            tau.clone(),
            Cone::new(7, vec![ex.ns[0].clone(), ex.ns[1].clone(), ex.ns[2].clone(), n0.clone()])?,
            Cone::new(7, vec![ex.ns[0].add(&n0), ex.ns[1].clone(), ex.ns[2].clone(), ex.combo(1, 1, 1).sub(&n0)])?,
        ])
    };
    c.eval_detail("every candidate σ ∋ p meets τ in rank 3 and is moved off itself by Ad(γ)", || {
        let mut ok = true;
        let mut detail = Vec::new();
        for sigma in candidates()? {
            if !sigma.contains(&p) {
                continue;
            }
            let tau1 = tau.intersect(&sigma)?;
            let Some((m, n, mp, np, l)) = interior_pair(&ex, &tau1)? else {
                ok = false;
                detail.push(json!({ "rank": tau1.rank(), "interior_pair": null }));
                continue;
            };
            let g = ex.gamma(m, n);
            let q0 = ex.combo(m, n, l);
            let escape = escape_exponent(&sigma, &g, &ex.combo(mp, np, l), 64);
            ok &= tau1.rank() == 3 && ad_pow(&g, &q0, 1) == q0 && escape.is_some();
            detail.push(json!({ "rank": tau1.rank(), "q0": [m, n, l], "q1": [mp, np, l], "escape": escape }));
        }
        Ok((ok, Value::Array(detail)))
    });
    c.finish("7.3.4")
}

fn relcomplete(win: Window) -> CorpusReport {
    let ex = EllipticExtension::new(1);
    let mut c = Claims::default();
    let fan = match build_relcomplete_fan(&ex.two_weight_data()) {
        Ok(f) => f,
        Err(e) => {
            c.eval("build the schema", || Err(e));
            return c.finish("7.3.6");
        }
    };
    c.eval("X = Y = span(e₃ ↦ e₁) and d ≡ 1", || {
        let x = span(2, &[&[1, 0]]);
        Ok(*fan.x_space() == x && *fan.y_space() == x && fan.section().is_empty() && fan.m() == 1)
    });
    c.eval("σ(0, n) = ℝ≥0N_n + ℝ≥0N_{n+1} on the window", || {
        let mut ok = true;
        for k in win.lo..=win.hi {
            ok &= fan.cone(&[], &[k.into()])?.same_cone(&ex.marked_pair(k));
        }
        Ok(ok)
    });
    c.eval("the schema cones form a fan on the window", || {
        let ns: Vec<Vec<num_bigint::BigInt>> = (win.lo..=win.hi).map(|k| vec![k.into()]).collect();
        let f = fan.window(&[vec![]], &ns)?;
        Ok(check_fan(&f)?.ok && check_face_closure(&f).ok)
    });
    c.eval("query(N_{3/2}) lands in σ(0, 1)", || {
        let p = fan.query(&ex.n_rational(&Rational::new(3, 2)))?;
        Ok(p.is_some_and(|p| p.n == vec![1.into()] && p.d == 1.into()))
    });
    c.eval_detail("probes ℝ≥0(2N₀+N₁) and ℝ≥0N₀+ℝ≥0N₂ are covered", || {
        let gl = vec![ex.graded_log()];
        let one = |t: i64, n: QMatrix| (vec![q(t)], n);
        let a = MarkedCone::new(1, 3, gl.clone(), vec![one(3, ex.n(0).scale(&q(2)).add(&ex.n(1)))])?;
        let b = MarkedCone::new(1, 3, gl, vec![one(1, ex.n(0)), one(1, ex.n(2))])?;
        let reps = relative_completeness_probe(&fan, &[a, b]);
        let ns = |i: usize| -> Vec<i64> {
            let mut v: Vec<i64> = reps[i].pieces.iter().map(|p| i64::try_from(&p.n[0]).expect("small")).collect();
            v.sort_unstable();
            v
        };
        let ok = reps.iter().all(|r| r.covered) && ns(0) == vec![0] && ns(1) == vec![0, 1];
        Ok((ok, serde_json::to_value(&reps).expect("serializable")))
    });
    c.finish("7.3.6")
}

/// Range of n for the ℤ-indexed cone families. Checks that need a margin
/// (fan windows, compatibility) extend it by one on each side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Default for Window {
    fn default() -> Self {
        Window { lo: -3, hi: 3 }
    }
}

impl std::str::FromStr for Window {
    type Err = Error;
    /// "lo:hi", e.g. "-3:3".
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Format(format!("window {s:?} is not of the form lo:hi with lo < hi"));
        let (a, b) = s.split_once(':').ok_or_else(bad)?;
        let (lo, hi) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if lo >= hi {
            return Err(bad());
        }
        Ok(Window { lo, hi })
    }
}

/// Run one corpus item by name on the default window.
pub fn corpus_run(name: &str) -> Result<CorpusReport> {
    corpus_run_with(name, Window::default())
}

pub fn corpus_run_with(name: &str, win: Window) -> Result<CorpusReport> {
    if win.lo >= win.hi {
        return Err(Error::Format("window needs lo < hi".into()));
    }
    let f: fn(Window) -> CorpusReport = match name {
        "7.1.1" => |_| tate(),
        "7.1.2" => elliptic,
        "7.1.3" => twisted,
        "7.1.5" => |_| triple_ranks(),
        "7.2.1" => |_| product(),
        "7.2.2" => |_| triple_product(),
        "7.3.3" => |_| tensor_sym(),
        "7.3.4" => |_| tensor_sym_cover(),
        "7.3.6" => relcomplete,
        _ => return Err(Error::Format(format!("unknown corpus item {name:?}; known: {}", CORPUS.join(", ")))),
    };
    Ok(f(win))
}

/// All items, run concurrently and reported in the fixed order of `CORPUS`.
pub fn corpus_run_all() -> Vec<CorpusReport> {
    CORPUS.par_iter().map(|n| corpus_run(n).expect("known name")).collect()
}
