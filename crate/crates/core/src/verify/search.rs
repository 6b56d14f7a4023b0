//! Randomized residual minimization over horizontal 2-planes.
//!
//! A plane is a pair of coefficient vectors `c1, c2` in an orthonormal
//! horizontal basis. Its residual is the sum, over both factors, of the
//! squared bracket norms of the criterion variables, divided by the Gram
//! determinant `|c1|²|c2|² − (c1·c2)²`; it depends only on the plane.
//!
//! Each restart draws a Gaussian frame, then runs Nelder–Mead in the chart
//! `span{e1 + F z1, e2 + F z2}` of the Grassmannian around it, recentering
//! between rounds.

use argmin::core::{CostFunction, Executor, State};
use argmin::solver::neldermead::NelderMead;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::action::{HorizontalBasis, PointSetup};
use crate::config::TOLERANCES;
use crate::error::{Error, Result};
use crate::lie::ChainSpec;
use crate::matrix::Mat;
use crate::metric::DeformedMetric;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub seed: u64,
    /// Nelder–Mead runs per restart, each recentered on the last optimum.
    pub rounds: usize,
    pub iters_per_round: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { restarts: 1000, seed: 0, rounds: 3, iters_per_round: 600 }
    }
}

impl SearchConfig {
    pub fn with_restarts(restarts: usize, seed: u64) -> Self {
        SearchConfig { restarts, seed, ..Default::default() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchResult {
    pub residual: f64,
    pub best_restart: usize,
    /// Orthonormal coefficient vectors of the best plane.
    pub frame: [Vec<f64>; 2],
    /// Best residual seen after each restart, in restart order.
    pub trace: Vec<f64>,
    pub restarts: usize,
    pub seed: u64,
}

/// Reference residual of the plane spanned by the tangents of `w1`, `w2`.
pub fn product_residual(setup: &PointSetup<f64>, w1: &Mat<f64>, w2: &Mat<f64>) -> Result<f64> {
    let (x1, x2) = setup.criterion(w1);
    let (y1, y2) = setup.criterion(w2);
    let chain = setup.chain();
    let total: f64 = setup
        .left
        .brackets(&x1, &y1)
        .iter()
        .chain(setup.right.brackets(&x2, &y2).iter())
        .map(|b| chain.norm0_sq(b))
        .sum();
    let g11 = setup.product_inner(w1, w1);
    let g12 = setup.product_inner(w1, w2);
    let g22 = setup.product_inner(w2, w2);
    let det = g11 * g22 - g12 * g12;
    if det <= TOLERANCES.identity * g11 * g22 {
        return Err(Error::Degenerate);
    }
    Ok(total / det)
}

/// Criterion components of one factor for every basis vector.
struct Factor {
    two_step: bool,
    /// Per basis vector: p, then k (one step) or m, h (two steps).
    parts: Vec<Vec<Vec<f64>>>,
}

/// Fast evaluation of the residual on coefficient vectors.
pub struct Evaluator {
    size: usize,
    scale: f64,
    factors: [Factor; 2],
}

fn factor(chain: ChainSpec, metric: &DeformedMetric, xs: &[Mat<f64>]) -> Factor {
    let two_step = metric.is_two_step();
    let parts = xs
        .iter()
        .map(|x| {
            let c = chain.split(x);
            if two_step {
                vec![c.p.data().to_vec(), c.m.data().to_vec(), c.h.data().to_vec()]
            } else {
                vec![c.p.data().to_vec(), c.k().data().to_vec()]
            }
        })
        .collect();
    Factor { two_step, parts }
}

fn bracket_norm2(a: &[f64], b: &[f64], s: usize) -> f64 {
    let mut total = 0.0;
    for i in 0..s {
        for j in 0..s {
            let mut v = 0.0;
            for k in 0..s {
                v += a[i * s + k] * b[k * s + j] - b[i * s + k] * a[k * s + j];
            }
            total += v * v;
        }
    }
    total
}

fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl Evaluator {
    pub fn new(basis: &HorizontalBasis) -> Self {
        let setup = &basis.setup;
        let chain = setup.chain();
        let crit: Vec<(Mat<f64>, Mat<f64>)> = basis.w.iter().map(|w| setup.criterion(w)).collect();
        let left: Vec<Mat<f64>> = crit.iter().map(|c| c.0.clone()).collect();
        let right: Vec<Mat<f64>> = crit.iter().map(|c| c.1.clone()).collect();
        // ⟨·,·⟩₀ as a multiple of the Frobenius product.
        let scale = chain.norm0_sq(&Mat::<f64>::identity(1));
        Evaluator {
            size: chain.matrix_size(),
            scale,
            factors: [factor(chain, &setup.left, &left), factor(chain, &setup.right, &right)],
        }
    }

    pub fn dim(&self) -> usize {
        self.factors[0].parts.len()
    }

    fn combine(&self, f: &Factor, c: &[f64]) -> Vec<Vec<f64>> {
        let np = f.parts[0].len();
        let len = self.size * self.size;
        let mut out = vec![vec![0.0; len]; np];
        for (ci, parts) in c.iter().zip(&f.parts) {
            if *ci == 0.0 {
                continue;
            }
            for (o, part) in out.iter_mut().zip(parts) {
                for (a, b) in o.iter_mut().zip(part) {
                    *a += ci * b;
                }
            }
        }
        out
    }

    /// Unnormalized bracket sum.
    fn bracket_sum(&self, c1: &[f64], c2: &[f64]) -> f64 {
        let s = self.size;
        let mut total = 0.0;
        for f in &self.factors {
            let x = self.combine(f, c1);
            let y = self.combine(f, c2);
            if f.two_step {
                let (xk, yk) = (add(&x[1], &x[2]), add(&y[1], &y[2]));
                let (xx, yy) = (add(&x[0], &xk), add(&y[0], &yk));
                total += bracket_norm2(&xx, &yy, s)
                    + bracket_norm2(&xk, &yk, s)
                    + bracket_norm2(&x[0], &y[0], s)
                    + bracket_norm2(&x[1], &y[1], s)
                    + bracket_norm2(&x[2], &y[2], s);
            } else {
                let (xx, yy) = (add(&x[0], &x[1]), add(&y[0], &y[1]));
                total += bracket_norm2(&xx, &yy, s) + bracket_norm2(&x[1], &y[1], s) + bracket_norm2(&x[0], &y[0], s);
            }
        }
        total * self.scale
    }

    pub fn residual(&self, c1: &[f64], c2: &[f64]) -> f64 {
        let (a, b, c) = (dot(c1, c1), dot(c1, c2), dot(c2, c2));
        self.bracket_sum(c1, c2) / (a * c - b * b)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = dot(v, v).sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
    n
}

/// Orthonormal `(e1, e2)` spanning the same plane as `(a, b)`.
fn orthonormal_pair(a: &[f64], b: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut e1 = a.to_vec();
    normalize(&mut e1);
    let c = dot(&e1, b);
    let mut e2: Vec<f64> = b.iter().zip(&e1).map(|(x, y)| x - c * y).collect();
    normalize(&mut e2);
    (e1, e2)
}

/// Orthonormal basis of the complement of `span{e1, e2}`.
fn complement(e1: &[f64], e2: &[f64]) -> Vec<Vec<f64>> {
    let d = e1.len();
    let mut q: Vec<Vec<f64>> = vec![e1.to_vec(), e2.to_vec()];
    for k in 0..d {
        let mut v: Vec<f64> = (0..d).map(|i| if i == k { 1.0 } else { 0.0 }).collect();
        for _ in 0..2 {
            for u in &q {
                let c = dot(u, &v);
                v.iter_mut().zip(u).for_each(|(x, y)| *x -= c * y);
            }
        }
        if normalize(&mut v) > 1e-6 {
            q.push(v);
        }
        if q.len() == d {
            break;
        }
    }
    q.split_off(2)
}

struct Chart<'a> {
    ev: &'a Evaluator,
    e1: Vec<f64>,
    e2: Vec<f64>,
    f: Vec<Vec<f64>>,
}

impl Chart<'_> {
    fn frame(&self, z: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let k = self.f.len();
        let mut a = self.e1.clone();
        let mut b = self.e2.clone();
        for (i, fi) in self.f.iter().enumerate() {
            for (j, v) in fi.iter().enumerate() {
                a[j] += z[i] * v;
                b[j] += z[k + i] * v;
            }
        }
        (a, b)
    }
}

impl CostFunction for Chart<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, z: &Self::Param) -> std::result::Result<f64, argmin::core::Error> {
        let (a, b) = self.frame(z);
        Ok(self.ev.residual(&a, &b))
    }
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// Random orthonormal frame, redrawn while the raw pair is nearly dependent.
fn random_frame(rng: &mut ChaCha8Rng, d: usize) -> (Vec<f64>, Vec<f64>) {
    loop {
        let mut a: Vec<f64> = (0..d).map(|_| StandardNormal.sample(rng)).collect();
        let mut b: Vec<f64> = (0..d).map(|_| StandardNormal.sample(rng)).collect();
        normalize(&mut a);
        normalize(&mut b);
        let c = dot(&a, &b);
        if 1.0 - c * c >= TOLERANCES.min_gram_det {
            return orthonormal_pair(&a, &b);
        }
    }
}

/// Best residual and frame of one restart.
fn run_restart(ev: &Evaluator, cfg: &SearchConfig, restart: usize) -> Result<(f64, Vec<f64>, Vec<f64>)> {
    let d = ev.dim();
    let mut rng = restart_rng(cfg.seed, restart);
    let (mut e1, mut e2) = random_frame(&mut rng, d);
    let mut best = ev.residual(&e1, &e2);
    if d == 2 {
        return Ok((best, e1, e2));
    }
    let nz = 2 * (d - 2);
    let mut step = 0.5;
    for _ in 0..cfg.rounds {
        let f = complement(&e1, &e2);
        let chart = Chart { ev, e1: e1.clone(), e2: e2.clone(), f: f.clone() };
        let lift = Chart { ev, e1: e1.clone(), e2: e2.clone(), f };
        let mut simplex = vec![vec![0.0; nz]];
        for i in 0..nz {
            let mut v = vec![0.0; nz];
            v[i] = step;
            simplex.push(v);
        }
        let n = nz as f64;
        let solver = NelderMead::new(simplex)
            .with_alpha(1.0)
            .and_then(|s| s.with_gamma(1.0 + 2.0 / n))
            .and_then(|s| s.with_rho(0.5))
            .and_then(|s| s.with_sigma(1.0 - 1.0 / n))
            .and_then(|s| s.with_sd_tolerance(1e-16))
            .map_err(|e| Error::Precondition(e.to_string()))?;
        let res = Executor::new(chart, solver)
            .configure(|st| st.max_iters(cfg.iters_per_round))
            .run()
            .map_err(|e| Error::Precondition(e.to_string()))?;
        let state = res.state();
        let z = state.get_best_param().cloned().unwrap_or_else(|| vec![0.0; nz]);
        let cost = state.get_best_cost();
        let (a, b) = lift.frame(&z);
        if cost <= best {
            best = cost;
            (e1, e2) = orthonormal_pair(&a, &b);
        }
        if best < 1e-15 {
            break;
        }
        step *= 0.25;
    }
    // Reported on the orthonormal frame actually returned.
    Ok((ev.residual(&e1, &e2), e1, e2))
}

/// Minimizes the residual over horizontal planes. Deterministic in the
/// seed: each restart owns its random stream, and merging takes the
/// smallest residual with ties going to the lower restart index.
pub fn min_residual_search(basis: &HorizontalBasis, cfg: &SearchConfig) -> Result<SearchResult> {
    if cfg.restarts == 0 {
        return Err(Error::EmptyBudget);
    }
    if basis.dim() < 2 {
        return Err(Error::HorizontalTooSmall(basis.dim()));
    }
    let ev = Evaluator::new(basis);
    let runs: Vec<(f64, Vec<f64>, Vec<f64>)> =
        (0..cfg.restarts).into_par_iter().map(|r| run_restart(&ev, cfg, r)).collect::<Result<_>>()?;
    let mut trace = Vec::with_capacity(runs.len());
    let mut best = 0;
    for (i, r) in runs.iter().enumerate() {
        if r.0 < runs[best].0 {
            best = i;
        }
        trace.push(runs[best].0);
    }
    let (residual, e1, e2) = runs[best].clone();
    Ok(SearchResult { residual, best_restart: best, frame: [e1, e2], trace, restarts: cfg.restarts, seed: cfg.seed })
}

/// The W-pair of a coefficient frame.
pub fn frame_to_w(basis: &HorizontalBasis, frame: &[Vec<f64>; 2]) -> (Mat<f64>, Mat<f64>) {
    let s = basis.setup.chain().matrix_size();
    let build = |c: &[f64]| basis.w.iter().zip(c).fold(Mat::zeros(s, s), |acc, (w, k)| acc.add(&w.scale(k)));
    (build(&frame[0]), build(&frame[1]))
}
