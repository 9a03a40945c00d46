use serde::Serialize;

use super::frame::PeriodPoint;
use crate::error::{Error, Result};
use crate::exactlin::{flatten, unflatten, CMatrix, CSubspace, GaussRational, QMatrix, Rational, Ring};
use super::deligne::deligne_bigrading;
use crate::filtration::{graded_piece, standard_filtration, DecFiltration, QFiltration};

/// (s′, δ) with F = s′·exp(iδ)·F(gr^W). Graded coordinates stack the echelon
/// lifts of gr_w by increasing w; `s0` is that basis and s′ = s0·(1+u).
#[derive(Clone, Debug, Serialize)]
pub struct DeltaSplitting {
    pub weights: Vec<i64>,
    #[serde(skip)]
    pub sizes: Vec<usize>,
    #[serde(skip)]
    pub s0: QMatrix,
    #[serde(skip)]
    pub u: QMatrix,
    pub splitting: QMatrix,
    pub delta: QMatrix,
    #[serde(skip)]
    pub graded: PeriodPoint,
}

impl DeltaSplitting {
    /// s′(exp(iδ)·F(gr)).
    pub fn reconstruct(&self) -> PeriodPoint {
        let e = self.delta.to_complex().scale(&GaussRational::i()).exp_nilpotent();
        self.graded.transform(&e).transform(&self.splitting.to_complex())
    }

    /// W in graded coordinates.
    pub fn graded_weight_filtration(&self) -> QFiltration {
        let ws: Vec<i64> = self.weights.iter().zip(&self.sizes).flat_map(|(k, s)| std::iter::repeat(*k).take(*s)).collect();
        standard_filtration(&ws)
    }

    /// (s′)⁻¹ X s′ in graded coordinates.
    pub fn conjugate_into_graded(&self, x: &QMatrix) -> QMatrix {
        self.splitting.inverse().expect("splitting is invertible").mul(x).mul(&self.splitting)
    }
}

struct Graded {
    weights: Vec<i64>,
    offsets: Vec<usize>,
    sizes: Vec<usize>,
    n: usize,
}

impl Graded {
    fn embed(&self, wi: usize, v: &[GaussRational]) -> Vec<GaussRational> {
        let mut out = vec![GaussRational::zero(); self.n];
        out[self.offsets[wi]..self.offsets[wi] + self.sizes[wi]].clone_from_slice(v);
        out
    }
    /// Coordinates of weight ≤ m.
    fn w_upto(&self, m: i64) -> CSubspace {
        let vecs: Vec<Vec<GaussRational>> = self
            .weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w <= m)
            .flat_map(|(i, _)| (0..self.sizes[i]).map(move |j| self.offsets[i] + j))
            .map(|c| {
                let mut v = vec![GaussRational::zero(); self.n];
                v[c] = GaussRational::one();
                v
            })
            .collect();
        CSubspace::span(self.n, &vecs)
    }
}

/// Solve F = s0(1+u)exp(iδ)F(gr) with u real strictly W-lowering and δ real in
/// L^{−1,−1}, one W-depth at a time.
pub fn delta_splitting(w: &QFiltration, f: &PeriodPoint) -> Result<DeltaSplitting> {
    let n = w.dim();
    if f.dim() != n {
        return Err(Error::DimensionMismatch(format!("W on ℚ^{n} and F on ℂ^{}", f.dim())));
    }
    let weights = w.weights();
    let mut offsets = Vec::new();
    let mut sizes = Vec::new();
    let mut lifts = Vec::new();
    let mut off = 0;
    for &k in &weights {
        let sq = graded_piece(w, k);
        offsets.push(off);
        sizes.push(sq.dim());
        off += sq.dim();
        lifts.push(sq.lift_matrix());
    }
    let gr = Graded { weights: weights.clone(), offsets, sizes, n };
    let s0 = lifts.iter().skip(1).fold(lifts[0].clone(), |acc, m| acc.hstack(m));
    let s0inv = s0.inverse().ok_or_else(|| Error::Assertion("graded lift is not a basis".into()))?.to_complex();

    // Hodge pieces of F(gr_w), embedded in graded coordinates.
    let wc = w.to_complex();
    let fb = f.conj();
    let (plo, phi) = (f.lo(), f.hi());
    let mut pieces: Vec<(usize, i64, i64, Vec<Vec<GaussRational>>)> = Vec::new();
    let mut graded_steps = vec![CSubspace::zero(n); (phi - plo + 1) as usize];
    for (wi, &k) in weights.iter().enumerate() {
        let sq = graded_piece(&wc, k);
        let mut covered = 0;
        for p in plo..=phi {
            let fp = sq.induced_subspace(f.get(p));
            let emb: Vec<_> = fp.basis_vectors().iter().map(|v| gr.embed(wi, v)).collect();
            let idx = (p - plo) as usize;
            graded_steps[idx] = graded_steps[idx].sum(&CSubspace::span(n, &emb));
            let h = fp.intersect(&sq.induced_subspace(fb.get(k - p)));
            if h.is_zero() {
                continue;
            }
            covered += h.dim();
            pieces.push((wi, p, k - p, h.basis_vectors().iter().map(|v| gr.embed(wi, v)).collect()));
        }
        if covered != sq.dim() {
            return Err(Error::NotMhs(format!("no Hodge decomposition on gr^W_{k}")));
        }
    }
    let graded = DecFiltration::new(n, plo, graded_steps)?;
    let target = f.transform(&s0inv);

    // Change of basis to Hodge pieces on each gr_w, to write elementary maps.
    let mut dual_rows: Vec<Vec<Vec<GaussRational>>> = vec![Vec::new(); pieces.len()];
    for wi in 0..weights.len() {
        let ids: Vec<usize> = (0..pieces.len()).filter(|&i| pieces[i].0 == wi).collect();
        let cols: Vec<Vec<GaussRational>> = ids
            .iter()
            .flat_map(|&i| pieces[i].3.iter().map(|v| v[gr.offsets[wi]..gr.offsets[wi] + gr.sizes[wi]].to_vec()))
            .collect();
        let b = CMatrix::from_cols(gr.sizes[wi], &cols);
        let binv = b.inverse().expect("Hodge pieces form a basis");
        let mut r = 0;
        for &i in &ids {
            for _ in 0..pieces[i].3.len() {
                dual_rows[i].push(gr.embed(wi, binv.row(r)));
                r += 1;
            }
        }
    }

    let maxdepth = weights.last().unwrap_or(&0) - weights.first().unwrap_or(&0);
    let mut u = QMatrix::zeros(n, n);
    let mut d = QMatrix::zeros(n, n);
    for depth in 1..=maxdepth {
        // Real basis of L^{-1,-1} at this depth.
        let mut lc = Vec::new();
        for (i, (wi, p, q, _)) in pieces.iter().enumerate() {
            for (wj, pp, qq, ys) in pieces.iter().map(|(a, b, c, d)| (a, b, c, d)) {
                if weights[*wi] - weights[*wj] != depth || pp >= p || qq >= q {
                    continue;
                }
                for row in &dual_rows[i] {
                    for y in ys {
                        let e = CMatrix::from_cols(n, &[y.clone()]).mul(&CMatrix::from_rows(n, vec![row.clone()]));
                        lc.push(flatten(&e));
                    }
                }
            }
        }
        let dbasis: Vec<QMatrix> = if lc.is_empty() {
            Vec::new()
        } else {
            CSubspace::span(n * n, &lc).real_points().basis_vectors().iter().map(|v| unflatten(n, v)).collect()
        };
        let mut ubasis = Vec::new();
        for (a, &wa) in weights.iter().enumerate() {
            for (b, &wb) in weights.iter().enumerate() {
                if wb - wa != depth {
                    continue;
                }
                for i in 0..gr.sizes[a] {
                    for j in 0..gr.sizes[b] {
                        ubasis.push(QMatrix::unit(n, gr.offsets[a] + i, gr.offsets[b] + j));
                    }
                }
            }
        }
        if ubasis.is_empty() {
            continue;
        }
        let g_prev = QMatrix::identity(n).add(&u).to_complex().mul(&d.to_complex().scale(&GaussRational::i()).exp_nilpotent());
        let unknowns: Vec<CMatrix> = ubasis
            .iter()
            .map(|m| m.to_complex())
            .chain(dbasis.iter().map(|m| m.to_complex().scale(&GaussRational::i())))
            .collect();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let mut rhs: Vec<Rational> = Vec::new();
        for (wi, p, _, vs) in &pieces {
            let cond = target.get(*p).sum(&gr.w_upto(weights[*wi] - depth - 1)).annihilator();
            for x in vs {
                let gx = g_prev.mul_vec(x);
                let ex: Vec<Vec<GaussRational>> = unknowns.iter().map(|m| m.mul_vec(x)).collect();
                for a in cond.basis_vectors() {
                    let dot = |v: &[GaussRational]| {
                        a.iter().zip(v).fold(GaussRational::zero(), |s, (ai, vi)| s + &(ai.clone() * vi))
                    };
                    let c: Vec<GaussRational> = ex.iter().map(|v| dot(v)).collect();
                    let r = -dot(&gx);
                    rows.push(c.iter().map(|z| z.re.clone()).collect());
                    rhs.push(r.re.clone());
                    rows.push(c.iter().map(|z| z.im.clone()).collect());
                    rhs.push(r.im);
                }
            }
        }
        let sol = if rows.is_empty() {
            vec![Rational::int(0); unknowns.len()]
        } else {
            QMatrix::from_rows(unknowns.len(), rows)
                .solve(&rhs)
                .ok_or_else(|| Error::NotMhs(format!("no splitting at W-depth {depth}")))?
        };
        for (t, c) in sol.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if t < ubasis.len() {
                u = u.add(&ubasis[t].scale(c));
            } else {
                d = d.add(&dbasis[t - ubasis.len()].scale(c));
            }
        }
    }
    let out = DeltaSplitting { weights, sizes: gr.sizes.clone(), splitting: s0.mul(&QMatrix::identity(n).add(&u)), s0, u, delta: d, graded };
    if out.reconstruct() != *f {
        return Err(Error::Assertion("δ-splitting does not reconstruct F".into()));
    }
    Ok(out)
}

/// δ maps each Deligne piece I^{p,q} of (W(gr), F(gr)) into ⊕_{p′<p, q′<q} I^{p′,q′}.
pub fn in_l_minus_one(delta: &QMatrix, s: &DeltaSplitting) -> Result<bool> {
    let n = delta.rows();
    let b = deligne_bigrading(&s.graded_weight_filtration(), &s.graded)?;
    let dc = delta.to_complex();
    Ok(b.iter().all(|((p, q), v)| {
        let mut target = CSubspace::zero(n);
        for ((pp, qq), u) in &b {
            if pp < p && qq < q {
                target = target.sum(u);
            }
        }
        target.contains(&v.image(&dc))
    }))
}
