//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs without the libtest harness so the lines always print.

mod common;

use std::process::Command;
use std::time::Instant;

use common::*;
use lmhodge::cones::{Cone, MarkedCone};
use lmhodge::corpus::{
    sample_documents, sample_points, triple_product_ops, EllipticExtension, ProductExtension, TateExtension, TensorSymSquare,
    TripleProductExtension, CORPUS,
};
use lmhodge::exactlin::{invariants_rank, GaussRational, QMatrix, QSubspace, Rational, Ring};
use lmhodge::filtration::{standard_filtration, FilteredNilp, QFiltration};
use lmhodge::monodromy::{check_adjoint_admissible, check_admissible_cone, relative_monodromy, Action, RmfVerdict};
use lmhodge::neron::{
    build_relcomplete_fan, compute_b1, in_sigma1, kummer_type, relative_completeness_probe, sigma_tau_upsilon, KummerType,
};
use lmhodge::orbits::{mixed_orbit_test, OrbitMode};
use rand::Rng;

// Pinned thresholds. Every comparison below is exact; these only fix how
// much randomized evidence is required.
const FUNCTORIALITY_PAIRS: usize = 110;
const MIN_FUNCTORIALITY_CHECKS: usize = 400;
const RESTRICTION_CASES: usize = 60;
const INCLUSION_CASES: usize = 120;
const MIN_ORBIT_AGREEMENT_CHECKS: usize = 40;
const PROBES: usize = 20;
const MHS_CASES: usize = 50;
const MAX_FAILURES: usize = 0;
const MAX_UNDECIDED: usize = 0;

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass_if(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn tally(t: &Tally, min_checks: usize) -> Outcome {
    let pass = t.failures.len() <= MAX_FAILURES && t.undecided <= MAX_UNDECIDED && t.checked >= min_checks;
    let mut detail = format!("{} checks, {} failures, {} undecided", t.checked, t.failures.len(), t.undecided);
    if let Some(f) = t.failures.first() {
        detail.push_str(&format!("; first: {f}"));
    }
    pass_if(pass, detail)
}

fn span(dim: usize, rows: &[&[i64]]) -> QSubspace {
    QSubspace::span(dim, &rows.iter().map(|r| r.iter().map(|&x| Rational::int(x)).collect()).collect::<Vec<_>>())
}

fn ad_pow(g: &QMatrix, x: &QMatrix, k: i64) -> QMatrix {
    let base = if k >= 0 { g.clone() } else { g.inverse().expect("invertible") };
    let gk = base.pow(k.unsigned_abs() as usize);
    gk.mul(x).mul(&gk.inverse().expect("invertible"))
}

fn rmf_elliptic_values() -> Outcome {
    let ex = EllipticExtension::new(1);
    let x = FilteredNilp::new(ex.frame.w().clone(), ex.n(0)).unwrap();
    let r = relative_monodromy(&x);
    let Some(m) = r.filtration else { return pass_if(false, format!("{:?}", r.verdict)) };
    let e1 = span(3, &[&[1, 0, 0]]);
    let ok = m.get(-3).is_zero() && *m.get(-2) == e1 && *m.get(-1) == e1 && m.get(0).is_full();
    pass_if(ok, "M₋₂ = M₋₁ = ℚe₁, M₀ = V")
}

fn rmf_nonexistence() -> Outcome {
    let x = FilteredNilp::new(standard_filtration(&[0, 1]), jordan(2)).unwrap();
    let r = relative_monodromy(&x);
    let w = r.witness.clone().unwrap_or_default();
    pass_if(r.verdict == RmfVerdict::NotExists && w == "N·M_1 ⊄ M_-1", format!("{:?}: {w}", r.verdict))
}

fn functoriality_oracle() -> Outcome {
    let mut t = functoriality(11, FUNCTORIALITY_PAIRS);
    let r = restriction(12, RESTRICTION_CASES);
    t.checked += r.checked;
    t.undecided += r.undecided;
    t.failures.extend(r.failures);
    tally(&t, MIN_FUNCTORIALITY_CHECKS)
}

fn inclusion_property() -> Outcome {
    tally(&inclusion(13, INCLUSION_CASES), INCLUSION_CASES)
}

/// Corpus cones on the ambient space, with their weight filtrations. The
/// rank-21 example is left out: its adjoint space has dimension 441.
fn corpus_cones() -> Vec<(&'static str, Cone, QFiltration)> {
    let tate = TateExtension::new();
    let ell = EllipticExtension::new(1);
    let tw = EllipticExtension::new(2);
    let prod = ProductExtension::new();
    let ts = TensorSymSquare::new();
    vec![
        ("extension of ℤ by ℤ(1)", tate.sigma(), tate.frame.w().clone()),
        ("elliptic σ₀", ell.sigma(0), ell.frame.w().clone()),
        ("elliptic σ_{0,1}", ell.sigma_pair(0), ell.frame.w().clone()),
        ("twisted σ₀", tw.sigma(0), tw.frame.w().clone()),
        ("product τ", prod.tau(), prod.frame.w().clone()),
        ("tensor-symmetric τ", ts.tau(), ts.frame.w().clone()),
    ]
}

fn adjoint_admissibility() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (label, cone, w) in corpus_cones() {
        if !check_admissible_cone(&cone, &w).unwrap().is_admissible() {
            continue;
        }
        checked += 1;
        let act = Action::Flattened { n: cone.ambient_dim() };
        match check_adjoint_admissible(cone.poly(), &act, &w) {
            Ok(r) if r.is_admissible() => {}
            Ok(_) => bad.push(label.to_string()),
            Err(e) => bad.push(format!("{label}: {e}")),
        }
    }
    pass_if(bad.len() <= MAX_FAILURES && checked > 0, format!("{checked} admissible cones, failures {bad:?}"))
}

fn orbit_values() -> Outcome {
    let ex = EllipticExtension::new(1);
    let zero = GaussRational::zero();
    let i = GaussRational::i();
    let mut ok = true;
    for z in sample_points() {
        ok &= mixed_orbit_test(&ex.frame, &ex.sigma(0), &ex.flag(&i, &z, &zero), OrbitMode::Both).unwrap().verdict.generates();
    }
    let tw = EllipticExtension::new(2);
    let five = GaussRational::ints(5, 0);
    let yes = mixed_orbit_test(&tw.frame, &tw.sigma(0), &tw.flag(&i, &five, &zero), OrbitMode::Both).unwrap();
    let no = mixed_orbit_test(&tw.frame, &tw.sigma(0), &tw.flag(&i, &five, &GaussRational::one()), OrbitMode::Both).unwrap();
    let ok = ok && yes.verdict.generates() && no.verdict.fails();
    pass_if(ok, format!("σ₀ with F(i, z) generates; twist w = 0 {:?}, w = 1 {:?}", yes.verdict, no.verdict))
}

fn orbit_oracles() -> Outcome {
    tally(&orbit_agreement(), MIN_ORBIT_AGREEMENT_CHECKS)
}

fn fan_counterexamples() -> Outcome {
    let p = ProductExtension::new();
    let tau = p.tau();
    let moved = tau.ad(&p.gamma(1, 1)).unwrap();
    let meet = tau.intersect(&moved).unwrap();
    let diagonal = meet.same_cone(&Cone::ray(&p.n1.add(&p.n2)).unwrap()) && !meet.is_face_of(&tau).unwrap();

    let triple = TripleProductExtension::new();
    let ts = TensorSymSquare::new();
    let mut checked = 0;
    let mut bad = 0;
    for m in 1..=3i64 {
        for n in 1..=3i64 {
            for (mp, np) in [(1, 2), (2, 1), (3, 1)] {
                for k in [-1, 1, 2] {
                    let shift = k * (mp * n - m * np);
                    let cases = [
                        (p.gamma(m, n), p.n1.scale(&q(mp)).add(&p.n2.scale(&q(np))), p.n0()),
                        (triple.gamma(m, n), triple.combo(mp, np, 1), triple.n0()),
                        (ts.gamma(m, n), ts.combo(mp, np, 1), ts.n0()),
                    ];
                    for (g, x, n0) in cases {
                        checked += 1;
                        if ad_pow(&g, &x, k) != x.add(&n0.scale(&q(shift))) {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    pass_if(diagonal && bad <= MAX_FAILURES, format!("diagonal meet {diagonal}; Ad-orbit identities {checked} checked, {bad} failures"))
}

fn neron_values() -> Outcome {
    let g = QMatrix::from_ints(&[&[1, 1], &[0, 1]]);
    let b1 = compute_b1(&g).unwrap();
    // (γ′ − 1)b = (b₂, 0): B₁ is ℚe₁ modulo ℤ², with no torsion beyond it.
    let mut r = rng(41);
    let mut members = true;
    for _ in 0..100 {
        let b = vec![Rational::new(r.gen_range(-30..=30), 6), Rational::new(r.gen_range(-30..=30), 6)];
        members &= b1.contains(&b, &g) == b[1].is_integer();
    }
    let b1_ok = b1.finite.is_empty() && QSubspace::span(2, &b1.divisible) == span(2, &[&[1, 0]]) && members;

    let ex = EllipticExtension::new(1);
    let ctx = ex.neron_context();
    let kt = |b1: Rational, b2: Rational| {
        let s = sigma_tau_upsilon(&ctx, &[0], &ex.upsilon(&b1, &b2)).unwrap();
        kummer_type(&ctx, &s, &[0]).unwrap()
    };
    let kummer_ok = kt(q(0), q(-2)) == KummerType::Iso
        && kt(q(0), Rational::new(1, 2)) == KummerType::Kummer(2)
        && kt(Rational::new(1, 2), q(0)) == KummerType::Iso;

    let mut nested = true;
    for k in -3..=3 {
        let s = sigma_tau_upsilon(&ctx, &[0], &ex.upsilon(&q(0), &q(-k))).unwrap();
        nested &= in_sigma1(&ctx, &s, &[0]).unwrap() && s.same_cone(&ex.marked_sigma(k));
    }
    pass_if(b1_ok && kummer_ok && nested, format!("B₁ {b1_ok}, Kummer types {kummer_ok}, Σ₀ ⊆ Σ₁ {nested}"))
}

fn relcomplete_reconstruction() -> Outcome {
    let ex = EllipticExtension::new(1);
    let fan = build_relcomplete_fan(&ex.two_weight_data()).unwrap();
    let mut cones_ok = true;
    for n in -3..=3i64 {
        let c = fan.cone(&[], &[n.into()]).unwrap();
        cones_ok &= c.same_cone(&ex.marked_pair(n)) && c.poly().canonical_rays() == ex.marked_pair(n).poly().canonical_rays();
    }
    let mut r = rng(42);
    let probes: Vec<MarkedCone> = (0..PROBES).map(|_| random_fiber_probe(&mut r, &ex)).collect();
    let uncovered = relative_completeness_probe(&fan, &probes).iter().filter(|p| !p.covered).count();
    pass_if(cones_ok && uncovered <= MAX_FAILURES, format!("σ_(n,n+1) for n in [-3, 3]: {cones_ok}; {uncovered} of {PROBES} probes uncovered"))
}

fn invariant_ranks() -> Outcome {
    let ops = triple_product_ops();
    let ranks: Vec<usize> = (0..=3)
        .map(|k| {
            let gs: Vec<QMatrix> = ops[..k].iter().map(|n| n.exp_nilpotent()).collect();
            invariants_rank(&gs, 20, true).unwrap()
        })
        .collect();
    pass_if(ranks == [20, 14, 10, 7], format!("{ranks:?}"))
}

fn delta_splitting() -> Outcome {
    let mut t = delta_reconstruction(21, MHS_CASES);
    let s = shift_law();
    t.checked += s.checked;
    t.failures.extend(s.failures);
    tally(&t, MHS_CASES)
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_lmhodge");
    let dir = std::env::temp_dir().join(format!("lmhodge-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut jobs: Vec<(String, Vec<String>)> = Vec::new();
    for (name, doc) in sample_documents() {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, doc.to_json()).unwrap();
        let sub: &[&str] = match name.split('-').next().unwrap() {
            "rmf" => &["rmf"],
            "admissible" => &["admissible"],
            "orbit" => &["orbit-check"],
            "fan" => &["fan-check"],
            "weakfan" => &["weakfan-falsify"],
            "corpus" => continue,
            _ => &[],
        };
        let sub: Vec<String> = if sub.is_empty() {
            vec!["neron".into(), name.trim_start_matches("neron-").into()]
        } else {
            sub.iter().map(|s| s.to_string()).collect()
        };
        let mut args = sub;
        args.push(path.to_string_lossy().into_owned());
        jobs.push((name.to_string(), args));
    }
    for name in CORPUS {
        jobs.push((format!("corpus {name}"), vec!["corpus".into(), "run".into(), name.into()]));
    }
    let run = |threads: &str, args: &[String]| {
        let out = Command::new(bin).arg("--threads").arg(threads).args(args).output().expect("spawn");
        (out.status.code(), out.stdout)
    };
    let mismatches: Vec<String> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|(label, args)| {
                s.spawn(move || {
                    let a = run("1", args);
                    let b = run("1", args);
                    let c = run("4", args);
                    (a.0 != Some(0) || a != b || a != c).then(|| label.clone())
                })
            })
            .collect();
        handles.into_iter().filter_map(|h| h.join().unwrap()).collect()
    });
    pass_if(mismatches.is_empty(), format!("{} reports, differing or failing: {mismatches:?}", jobs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("relative monodromy values on the elliptic extension", rmf_elliptic_values),
        ("relative monodromy nonexistence witness", rmf_nonexistence),
        ("functoriality and restriction oracle", functoriality_oracle),
        ("ker N ∩ W_w ⊆ M_w", inclusion_property),
        ("adjoint action admissible on corpus cones", adjoint_admissibility),
        ("orbit verdicts and the transversality boundary", orbit_values),
        ("certified and sampled orbit tests agree", orbit_oracles),
        ("fan counterexamples and Ad-orbit identities", fan_counterexamples),
        ("B₁, Kummer types and Σ₀ ⊆ Σ₁", neron_values),
        ("relatively complete fan reconstruction and probes", relcomplete_reconstruction),
        ("invariant ranks 20 / 14 / 10 / 7", invariant_ranks),
        ("δ-splitting reconstruction and shift law", delta_splitting),
        ("byte-identical CLI reports", determinism),
    ];
    let mut failed = 0;
    for (k, (label, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = std::panic::catch_unwind(f).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            pass_if(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        if !o.pass {
            failed += 1;
        }
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {verdict} {label} ({}) [{:.1}s]", k + 1, o.detail, start.elapsed().as_secs_f64());
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
