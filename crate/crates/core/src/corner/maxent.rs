//! Mirror ascent for `max_P H_k(G,P)`, certified against `log2 χ_f(G)`.

use serde::{Deserialize, Serialize};

use super::{entropy_fw, EntropyResult};
use crate::config::{SolverConfig, SYMMETRY_TOL};
use crate::error::{Error, Result};
use crate::fractional::{fractional_chromatic_number, Rational};
use crate::graph::Graph;
use crate::prob::Distribution;

/// Iterations without improvement after which the ascent stops.
const PATIENCE: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxEntropy {
    pub distribution: Distribution,
    #[serde(rename = "value_bits")]
    pub value: f64,
    pub chi_f: Rational,
    pub log_chi_f: f64,
    pub iterations: usize,
}

/// Multiplicative-weights ascent with step `1/√t` on the supergradient
/// `log2(1/a_i)` of `P ↦ H_k(G,P)` at the inner minimizer `a`.
///
/// The best value must agree with `log2 χ_f(G)` within `max(tol, 1e-4)`;
/// otherwise the run fails with [`Error::CertificateMismatch`].
pub fn max_entropy_distribution(g: &Graph, cfg: &SolverConfig) -> Result<MaxEntropy> {
    cfg.validate()?;
    let chi_f = fractional_chromatic_number(g, &cfg.caps)?.value;
    let log_chi_f = chi_f.to_f64().log2();
    let n = g.n();
    let mut p = vec![1.0 / n as f64; n];
    let mut best: Option<(f64, Vec<f64>, EntropyResult)> = None;
    let mut stale = 0;

    for t in 1..=cfg.budget {
        let dist = Distribution::normalized(p.clone())?;
        let inner = entropy_fw(g, &dist, cfg)?.result;
        let improved = best.as_ref().is_none_or(|(v, _, _)| inner.value > v + cfg.tol);
        if best.as_ref().is_none_or(|(v, _, _)| inner.value > *v) {
            best = Some((inner.value, p.clone(), inner.clone()));
        }
        if improved {
            stale = 0;
        } else {
            stale += 1;
            if stale >= PATIENCE {
                let (value, p_best, _) = best.expect("set above");
                return certify(value, p_best, chi_f, log_chi_f, t, cfg.tol);
            }
        }
        let eta = 1.0 / (t as f64).sqrt();
        let mut total = 0.0;
        for i in 0..n {
            let grad = -inner.minimizer[i].max(super::LOG_FLOOR).log2();
            p[i] *= (eta * grad).exp();
            total += p[i];
        }
        for x in p.iter_mut() {
            *x /= total;
        }
    }
    let (_, _, inner) = best.expect("budget >= 1");
    Err(Error::NonConvergence {
        iterations: cfg.budget,
        gap: (log_chi_f - inner.value).abs(),
        best: Box::new(inner),
    })
}

fn certify(value: f64, p: Vec<f64>, chi_f: Rational, log_chi_f: f64, iterations: usize, tol: f64) -> Result<MaxEntropy> {
    if (value - log_chi_f).abs() > tol.max(SYMMETRY_TOL) {
        return Err(Error::CertificateMismatch {
            value,
            target: log_chi_f,
        });
    }
    Ok(MaxEntropy {
        distribution: Distribution::normalized(p)?,
        value,
        chi_f,
        log_chi_f,
        iterations,
    })
}
