//! Alternating minimization of `I(X;Y)` over joint distributions of a vertex
//! `X ~ P` and a maximal independent set `Y ∋ X`.
//!
//! With `r` the law of `Y` and `a_i = Σ_{F ∋ i} r(F)`, the optimal channel is
//! `q(F|i) = r(F)/a_i`, and the optimal `r` for that channel is
//! `r'(F) = r(F)·W_F` with `W_F = Σ_{i ∈ F} p_i/a_i`. The mutual information
//! of the channel is `f(a) - Σ_F r'(F) log2 W_F`, and `f(a) - H_k <= log2 max_F W_F`.

use super::{objective, EntropyResult, Method};
use crate::config::SolverConfig;
use crate::error::{Error, Result};
use crate::graph::{maximal_independent_sets, Graph};
use crate::prob::Distribution;

/// `H_k(G,P)` as `min I(X;Y)`.
///
/// Stops once successive mutual-information values differ by at most `tol`
/// and the certified gap `log2 max_F W_F` is at most `tol`. The reported value
/// is `Σ p_i log2(1/a_i)` at the final point `a`, which is within the gap of
/// the optimum.
pub fn entropy_am(g: &Graph, p: &Distribution, cfg: &SolverConfig) -> Result<EntropyResult> {
    cfg.validate()?;
    p.check_len(g.n())?;
    let sets = maximal_independent_sets(g, cfg.caps.mis)?;
    let members: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
    let p = p.probs();
    let n = g.n();
    let mut r = vec![1.0 / sets.len() as f64; sets.len()];
    let mut a = vec![0.0; n];
    let mut weights = vec![0.0; sets.len()];
    let mut prev_info: Option<f64> = None;
    let mut last = None;

    for it in 1..=cfg.budget {
        a.iter_mut().for_each(|x| *x = 0.0);
        for (f, vs) in members.iter().enumerate() {
            for &i in vs {
                a[i] += r[f];
            }
        }
        let mut w_max = 0.0f64;
        for (f, vs) in members.iter().enumerate() {
            weights[f] = vs
                .iter()
                .filter(|&&i| p[i] > 0.0)
                .map(|&i| p[i] / a[i].max(super::LOG_FLOOR))
                .sum();
            w_max = w_max.max(weights[f]);
        }
        let gap = w_max.log2().max(0.0);
        let (value, suspect) = objective(p, &a);

        let mut total = 0.0;
        for f in 0..r.len() {
            r[f] *= weights[f];
            total += r[f];
        }
        let mut penalty = 0.0;
        for f in 0..r.len() {
            r[f] /= total;
            if r[f] > 0.0 {
                penalty += r[f] * weights[f].log2();
            }
        }
        let info = value - penalty;

        let result = EntropyResult {
            value,
            minimizer: a.clone(),
            iterations: it,
            gap,
            method: Method::AlternatingMinimization,
            suspect,
        };
        if let Some(prev) = prev_info {
            if (info - prev).abs() <= cfg.tol && gap <= cfg.tol {
                return Ok(result);
            }
        }
        prev_info = Some(info);
        last = Some(result);
    }
    let best = last.expect("budget >= 1");
    Err(Error::NonConvergence {
        iterations: cfg.budget,
        gap: best.gap,
        best: Box::new(best),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corner::entropy_fw;
    use crate::graph::generate;

    fn gen(s: &str) -> Graph {
        generate(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        let cfg = SolverConfig::default();
        let r = entropy_am(&gen("complete 2"), &Distribution::uniform(2).unwrap(), &cfg).unwrap();
        assert!((r.value - 1.0).abs() < 1e-7);
        let u5 = Distribution::uniform(5).unwrap();
        let am = entropy_am(&gen("cycle 5"), &u5, &cfg).unwrap();
        let fw = entropy_fw(&gen("cycle 5"), &u5, &cfg).unwrap();
        assert!((am.value - fw.result.value).abs() <= 2e-7);
        assert!((am.value - 2.5f64.log2()).abs() <= 1e-7);
        let p = Distribution::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let r = entropy_am(&gen("empty 4"), &p, &cfg).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.minimizer, vec![1.0; 4]);
    }

    #[test]
    fn zero_probability_vertices() {
        let cfg = SolverConfig::default();
        let p = Distribution::new(vec![0.5, 0.0, 0.5, 0.0, 0.0]).unwrap();
        let am = entropy_am(&gen("cycle 5"), &p, &cfg).unwrap();
        // Vertices 0 and 2 are non-adjacent, so one independent set covers the support.
        assert!(am.value.abs() <= 1e-7);
    }
}
