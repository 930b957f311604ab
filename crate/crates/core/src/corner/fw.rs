//! Fully corrective Frank–Wolfe for `min_{a ∈ C} Σ p_i log2(1/a_i)`.
//!
//! Each round re-optimizes the weights of the active extreme points with
//! Newton steps, then asks the linear oracle for `W = max_{s ∈ C} w·s` with
//! `w_i = p_i / a_i`. The Frank–Wolfe gap is `(W - w·a) / ln 2`; for any
//! `b ∈ C`, Jensen gives `f(b) >= f(a) - log2 W`, so the gap bounds the
//! distance to the optimum. The new extreme point enters with an exact line
//! search step.

use std::f64::consts::LN_2;

use nalgebra::{DMatrix, DVector};

use super::{objective, EntropyResult, Method, LOG_FLOOR};
use crate::config::SolverConfig;
use crate::error::{Error, Result};

/// A linear maximization oracle over a convex corner.
pub(crate) trait LinearOracle {
    type Key: PartialEq + Clone;

    /// An extreme point maximizing `w · x` with its identity and value.
    fn maximize(&mut self, w: &[f64]) -> Result<(Self::Key, Vec<f64>, f64)>;
}

pub(crate) struct Atom<K> {
    pub key: K,
    pub x: Vec<f64>,
    pub lambda: f64,
}

pub(crate) struct FwRun<K> {
    pub result: EntropyResult,
    pub atoms: Vec<Atom<K>>,
}

const LINE_SEARCH_TOL: f64 = 1e-12;
const NEWTON_STEPS: usize = 50;
/// Newton decrement (nats) below which the active-set solve is considered done.
const NEWTON_DECREMENT: f64 = 1e-15;

fn combine<K>(atoms: &[Atom<K>], n: usize) -> Vec<f64> {
    let mut a = vec![0.0; n];
    for atom in atoms {
        for (ai, xi) in a.iter_mut().zip(&atom.x) {
            *ai += atom.lambda * xi;
        }
    }
    a
}

fn normalize<K>(atoms: &mut Vec<Atom<K>>) {
    atoms.retain(|at| at.lambda > 0.0);
    let total: f64 = atoms.iter().map(|at| at.lambda).sum();
    for atom in atoms.iter_mut() {
        atom.lambda /= total;
    }
}

/// `-ln2 · φ'(γ)` for `φ(γ) = f(a + γ d)`; `-inf` where the point leaves the domain.
fn slope(p: &[f64], a: &[f64], d: &[f64], gamma: f64) -> f64 {
    let mut h = 0.0;
    for i in 0..p.len() {
        if p[i] > 0.0 {
            let v = a[i] + gamma * d[i];
            if v <= 0.0 {
                return f64::NEG_INFINITY;
            }
            h += p[i] * d[i] / v;
        }
    }
    h
}

/// Exact line search on `[0, gamma_max]` by bisection on the derivative sign.
fn line_search(p: &[f64], a: &[f64], d: &[f64], gamma_max: f64) -> f64 {
    if slope(p, a, d, gamma_max) >= 0.0 {
        return gamma_max;
    }
    let (mut lo, mut hi) = (0.0, gamma_max);
    while hi - lo > LINE_SEARCH_TOL * gamma_max {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if slope(p, a, d, mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Newton steps on the active-set problem `min_{λ ∈ simplex} f(Σ λ_j x_j)`.
///
/// The KKT system is solved in the least-squares sense because the active
/// points are often affinely dependent. Steps are clipped at the simplex
/// boundary, where the blocking atom leaves. Returns the number of steps.
fn newton_polish<K>(p: &[f64], atoms: &mut Vec<Atom<K>>, n: usize, max_steps: usize) -> usize {
    let support: Vec<usize> = (0..n).filter(|&i| p[i] > 0.0).collect();
    let mut steps = 0;
    while steps < max_steps.min(NEWTON_STEPS) && atoms.len() > 1 {
        let k = atoms.len();
        let a = combine(atoms, n);
        let mut kkt = DMatrix::<f64>::zeros(k + 1, k + 1);
        let mut rhs = DVector::<f64>::zeros(k + 1);
        for j in 0..k {
            let xj = &atoms[j].x;
            rhs[j] = support.iter().map(|&i| xj[i] * p[i] / a[i]).sum();
            for l in j..k {
                let xl = &atoms[l].x;
                let h: f64 = support
                    .iter()
                    .filter(|&&i| xj[i] != 0.0 && xl[i] != 0.0)
                    .map(|&i| xj[i] * xl[i] * p[i] / (a[i] * a[i]))
                    .sum();
                kkt[(j, l)] = h;
                kkt[(l, j)] = h;
            }
            kkt[(j, k)] = 1.0;
            kkt[(k, j)] = 1.0;
        }
        let svd = kkt.svd(true, true);
        let eps = 1e-13 * svd.singular_values.max();
        let Ok(sol) = svd.solve(&rhs, eps) else {
            break;
        };
        let delta: Vec<f64> = (0..k).map(|j| sol[j]).collect();
        // -g·Δ with g_j = -Σ_i x_ji p_i / a_i.
        let decrement: f64 = (0..k).map(|j| rhs[j] * delta[j]).sum();
        if !(decrement > NEWTON_DECREMENT) {
            break;
        }
        let mut t_max = 1.0;
        let mut blocking = None;
        for j in 0..k {
            if delta[j] < 0.0 {
                let t = -atoms[j].lambda / delta[j];
                if t < t_max {
                    t_max = t;
                    blocking = Some(j);
                }
            }
        }
        steps += 1;
        if t_max <= 0.0 {
            break;
        }
        let mut d = vec![0.0; n];
        for j in 0..k {
            for (di, xi) in d.iter_mut().zip(&atoms[j].x) {
                *di += delta[j] * xi;
            }
        }
        let t = line_search(p, &a, &d, t_max);
        if t <= 0.0 {
            break;
        }
        for j in 0..k {
            atoms[j].lambda += t * delta[j];
        }
        if t >= t_max {
            if let Some(j) = blocking {
                atoms[j].lambda = 0.0;
            }
        }
        normalize(atoms);
    }
    steps
}

/// Runs until the Frank–Wolfe gap is at most `cfg.tol`. Oracle calls and
/// Newton steps both count against `cfg.budget`.
pub(crate) fn frank_wolfe<O: LinearOracle>(
    p: &[f64],
    oracle: &mut O,
    init: Vec<(O::Key, Vec<f64>)>,
    cfg: &SolverConfig,
) -> Result<FwRun<O::Key>> {
    cfg.validate()?;
    let n = p.len();
    let mut atoms: Vec<Atom<O::Key>> = Vec::new();
    for (key, x) in init {
        if !atoms.iter().any(|at| at.key == key) {
            atoms.push(Atom { key, x, lambda: 1.0 });
        }
    }
    normalize(&mut atoms);
    let mut iterations = 0;
    let mut gap;
    let mut w = vec![0.0; n];

    loop {
        iterations += newton_polish(p, &mut atoms, n, cfg.budget.saturating_sub(iterations));
        let a = combine(&atoms, n);
        for i in 0..n {
            w[i] = if p[i] > 0.0 { p[i] / a[i].max(LOG_FLOOR) } else { 0.0 };
        }
        let (key, s, big_w) = oracle.maximize(&w)?;
        iterations += 1;
        let current: f64 = a.iter().zip(&w).map(|(x, w)| x * w).sum();
        gap = ((big_w - current) / LN_2).max(0.0);
        if gap <= cfg.tol {
            return Ok(finish(p, atoms, iterations, gap, n));
        }
        if iterations >= cfg.budget {
            break;
        }
        let d: Vec<f64> = s.iter().zip(&a).map(|(s, a)| s - a).collect();
        let gamma = line_search(p, &a, &d, 1.0);
        if gamma <= 0.0 {
            // The best direction gives no representable decrease.
            break;
        }
        for atom in atoms.iter_mut() {
            atom.lambda *= 1.0 - gamma;
        }
        match atoms.iter_mut().find(|at| at.key == key) {
            Some(atom) => atom.lambda += gamma,
            None => atoms.push(Atom {
                key,
                x: s,
                lambda: gamma,
            }),
        }
        normalize(&mut atoms);
    }
    let best = finish(p, atoms, iterations, gap, n).result;
    Err(Error::NonConvergence {
        iterations,
        gap,
        best: Box::new(best),
    })
}

fn finish<K>(p: &[f64], mut atoms: Vec<Atom<K>>, iterations: usize, gap: f64, n: usize) -> FwRun<K> {
    normalize(&mut atoms);
    let a = combine(&atoms, n);
    let (value, suspect) = objective(p, &a);
    FwRun {
        result: EntropyResult {
            value,
            minimizer: a,
            iterations,
            gap,
            method: Method::FrankWolfe,
            suspect,
        },
        atoms,
    }
}
