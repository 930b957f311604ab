//! Convex corners and the graph entropy solvers.

mod am;
mod fw;
mod maxent;

use serde::{Deserialize, Serialize};

use crate::config::SolverConfig;
use crate::error::{Error, Result};
use crate::fractional::FvpOracle;
use crate::graph::{complement, max_weight_independent_set, maximal_independent_sets, Graph, VertexSet};
use crate::prob::{entropy, Distribution};

pub use am::entropy_am;
pub use maxent::{max_entropy_distribution, MaxEntropy};

use fw::{frank_wolfe, LinearOracle};

/// Coordinates below this are clamped inside logarithms.
pub const LOG_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Closed form for the unit corner.
    Unit,
    #[serde(rename = "fw")]
    FrankWolfe,
    #[serde(rename = "am")]
    AlternatingMinimization,
}

/// An optimal value with the point attaining it and a convergence certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyResult {
    #[serde(rename = "value_bits")]
    pub value: f64,
    pub minimizer: Vec<f64>,
    pub iterations: usize,
    /// Upper bound on `value - optimum`, in bits.
    #[serde(rename = "gap_bits")]
    pub gap: f64,
    pub method: Method,
    /// Set when a support coordinate of the minimizer hit [`LOG_FLOOR`].
    pub suspect: bool,
}

/// `Σ_{p_i > 0} p_i log2(1/a_i)` and whether the log floor was hit.
pub fn objective(p: &[f64], a: &[f64]) -> (f64, bool) {
    let mut suspect = false;
    let mut total = 0.0;
    for (&pi, &ai) in p.iter().zip(a) {
        if pi > 0.0 {
            if ai < LOG_FLOOR {
                suspect = true;
            }
            total -= pi * ai.max(LOG_FLOOR).log2();
        }
    }
    (total, suspect)
}

/// The corners an entropy can be taken over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConvexCorner {
    /// `{x >= 0 : Σ x_i <= 1}`.
    UnitCorner(usize),
    /// Convex hull of independent-set indicators of the graph, closed downward.
    VertexPacking(Graph),
    /// `{x >= 0 : x(K) <= 1 for every clique K}`.
    FractionalVertexPacking(Graph),
}

impl ConvexCorner {
    pub fn dim(&self) -> usize {
        match self {
            ConvexCorner::UnitCorner(n) => *n,
            ConvexCorner::VertexPacking(g) | ConvexCorner::FractionalVertexPacking(g) => g.n(),
        }
    }

    /// Membership up to `tol` in every coordinate.
    pub fn contains(&self, x: &[f64], tol: f64, cfg: &SolverConfig) -> Result<bool> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: x.len(),
            });
        }
        match self {
            ConvexCorner::UnitCorner(_) => {
                Ok(x.iter().all(|&v| v >= -tol) && x.iter().sum::<f64>() <= 1.0 + tol)
            }
            ConvexCorner::VertexPacking(g) => {
                crate::fractional::vertex_packing_contains(g, x, tol, &cfg.caps)
            }
            ConvexCorner::FractionalVertexPacking(g) => {
                Ok(FvpOracle::new(g, &cfg.caps)?.contains(x, tol))
            }
        }
    }
}

struct VpOracle<'a> {
    g: &'a Graph,
}

impl LinearOracle for VpOracle<'_> {
    type Key = VertexSet;

    fn maximize(&mut self, w: &[f64]) -> Result<(VertexSet, Vec<f64>, f64)> {
        let (s, value) = max_weight_independent_set(self.g, w)?;
        Ok((s, indicator(s, self.g.n()), value))
    }
}

struct FvpLinear {
    inner: FvpOracle,
}

impl LinearOracle for FvpLinear {
    type Key = Vec<u64>;

    fn maximize(&mut self, w: &[f64]) -> Result<(Vec<u64>, Vec<f64>, f64)> {
        let (x, value) = self.inner.maximize(w)?;
        Ok((x.iter().map(|v| v.to_bits()).collect(), x, value))
    }
}

fn indicator(s: VertexSet, n: usize) -> Vec<f64> {
    (0..n).map(|v| if s.contains(v) { 1.0 } else { 0.0 }).collect()
}

/// Greedy maximal independent set containing `v`, adding vertices in index order.
fn greedy_maximal_containing(g: &Graph, v: usize) -> VertexSet {
    let mut s = VertexSet::singleton(v);
    let mut blocked = g.nbr(v) | 1 << v;
    for u in 0..g.n() {
        if blocked >> u & 1 == 0 {
            s.insert(u);
            blocked |= g.nbr(u) | 1 << u;
        }
    }
    s
}

/// Starting atoms: every maximal independent set when the enumeration cap
/// allows it, otherwise one greedy maximal set through each vertex.
fn vp_initial_sets(g: &Graph, cfg: &SolverConfig) -> Result<Vec<VertexSet>> {
    g.require_set_limit("vertex packing")?;
    if g.n() <= cfg.caps.mis {
        maximal_independent_sets(g, cfg.caps.mis)
    } else {
        let mut sets: Vec<VertexSet> = (0..g.n()).map(|v| greedy_maximal_containing(g, v)).collect();
        sets.sort_unstable();
        sets.dedup();
        Ok(sets)
    }
}

/// An independent set with its convex-combination weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedIndependentSet {
    pub set: VertexSet,
    pub weight: f64,
}

/// A Frank–Wolfe solution over VP(G) with its decomposition into independent sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FwResult {
    #[serde(flatten)]
    pub result: EntropyResult,
    /// Active independent sets, sorted by mask.
    pub decomposition: Vec<WeightedIndependentSet>,
}

/// `H_k(G,P)` by Frank–Wolfe over VP(G).
pub fn entropy_fw(g: &Graph, p: &Distribution, cfg: &SolverConfig) -> Result<FwResult> {
    p.check_len(g.n())?;
    let init = vp_initial_sets(g, cfg)?
        .into_iter()
        .map(|s| (s, indicator(s, g.n())))
        .collect();
    let run = frank_wolfe(p.probs(), &mut VpOracle { g }, init, cfg)?;
    let mut decomposition: Vec<WeightedIndependentSet> = run
        .atoms
        .into_iter()
        .map(|at| WeightedIndependentSet {
            set: at.key,
            weight: at.lambda,
        })
        .collect();
    decomposition.sort_by_key(|d| d.set);
    Ok(FwResult {
        result: run.result,
        decomposition,
    })
}

/// `H_{FVP(G)}(P)` by Frank–Wolfe with the exact LP oracle.
pub fn entropy_fvp(g: &Graph, p: &Distribution, cfg: &SolverConfig) -> Result<EntropyResult> {
    p.check_len(g.n())?;
    let mut oracle = FvpLinear {
        inner: FvpOracle::new(g, &cfg.caps)?,
    };
    let mut init = Vec::new();
    for i in 0..g.n() {
        let mut e = vec![0.0; g.n()];
        e[i] = 1.0;
        let (key, x, _) = oracle.maximize(&e)?;
        init.push((key, x));
    }
    Ok(frank_wolfe(p.probs(), &mut oracle, init, cfg)?.result)
}

/// `H_C(P) = min_{a ∈ C} Σ p_i log2(1/a_i)`.
pub fn corner_entropy(c: &ConvexCorner, p: &Distribution, cfg: &SolverConfig) -> Result<EntropyResult> {
    cfg.validate()?;
    p.check_len(c.dim())?;
    match c {
        ConvexCorner::UnitCorner(_) => Ok(EntropyResult {
            value: entropy(p),
            minimizer: p.probs().to_vec(),
            iterations: 0,
            gap: 0.0,
            method: Method::Unit,
            suspect: false,
        }),
        ConvexCorner::VertexPacking(g) => Ok(entropy_fw(g, p, cfg)?.result),
        ConvexCorner::FractionalVertexPacking(g) => entropy_fvp(g, p, cfg),
    }
}

/// `H_k(G,P) + H_k(Ḡ,P) - H(P)`.
pub fn splitting_gap(g: &Graph, p: &Distribution, cfg: &SolverConfig) -> Result<f64> {
    let h = entropy_fw(g, p, cfg)?.result.value;
    let hc = entropy_fw(&complement(g), p, cfg)?.result.value;
    Ok(h + hc - entropy(p))
}

/// The three entropies of the antiblocking pair `(VP(G), FVP(Ḡ))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AntiblockerCheck {
    pub entropy: f64,
    pub vertex_packing: f64,
    pub fractional_packing_complement: f64,
    /// `H(p) - H_VP(G)(p) - H_FVP(Ḡ)(p)`.
    pub residual: f64,
    pub holds: bool,
}

/// Checks `H(p) = H_VP(G)(p) + H_FVP(Ḡ)(p)` within `tol`.
pub fn antiblocker_identity_check(
    g: &Graph,
    p: &Distribution,
    tol: f64,
    cfg: &SolverConfig,
) -> Result<AntiblockerCheck> {
    let h = entropy(p);
    let vp = entropy_fw(g, p, cfg)?.result.value;
    let fvp = entropy_fvp(&complement(g), p, cfg)?.value;
    let residual = h - vp - fvp;
    Ok(AntiblockerCheck {
        entropy: h,
        vertex_packing: vp,
        fractional_packing_complement: fvp,
        residual,
        holds: residual.abs() <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    fn gen(s: &str) -> Graph {
        generate(&s.parse().unwrap()).unwrap()
    }

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    fn d(v: &[f64]) -> Distribution {
        Distribution::new(v.to_vec()).unwrap()
    }

    #[test]
    fn unit_corner_is_shannon() {
        let p = d(&[0.4, 0.4, 0.2]);
        let r = corner_entropy(&ConvexCorner::UnitCorner(3), &p, &cfg()).unwrap();
        assert_eq!(r.minimizer, p.probs());
        assert!((r.value - 1.5219280948873621).abs() < 1e-12);
    }

    #[test]
    fn complete_and_cycle() {
        let u3 = Distribution::uniform(3).unwrap();
        let r = corner_entropy(&ConvexCorner::VertexPacking(gen("complete 3")), &u3, &cfg()).unwrap();
        assert!((r.value - 3f64.log2()).abs() < 1e-7);
        let u5 = Distribution::uniform(5).unwrap();
        let r = entropy_fw(&gen("cycle 5"), &u5, &cfg()).unwrap();
        assert!((r.result.value - 2.5f64.log2()).abs() < 1e-7);
        for &a in &r.result.minimizer {
            assert!((a - 0.4).abs() < 1e-3);
        }
        let total: f64 = r.decomposition.iter().map(|w| w.weight).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn k22_is_one_bit() {
        let r = entropy_fw(&gen("complete_multipartite 2 2"), &Distribution::uniform(4).unwrap(), &cfg()).unwrap();
        assert!((r.result.value - 1.0).abs() < 1e-7);
    }

    #[test]
    fn fvp_entropy_of_c5() {
        // C5 is vertex-transitive and FVP(C5) contains the all-1/2 point.
        let u5 = Distribution::uniform(5).unwrap();
        let r = corner_entropy(&ConvexCorner::FractionalVertexPacking(gen("cycle 5")), &u5, &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-7);
    }

    #[test]
    fn splitting_examples() {
        let c = cfg();
        assert!(splitting_gap(&gen("cycle 4"), &Distribution::uniform(4).unwrap(), &c).unwrap().abs() <= 2e-7);
        let gap = splitting_gap(&gen("cycle 5"), &Distribution::uniform(5).unwrap(), &c).unwrap();
        // Both C5 and its complement have entropy log 2.5 under the uniform law.
        assert!((gap - (2.0 * 2.5f64.log2() - 5f64.log2())).abs() <= 2e-7);
        assert!(splitting_gap(&gen("complete 3"), &d(&[0.2, 0.3, 0.5]), &c).unwrap().abs() <= 2e-7);
    }

    #[test]
    fn antiblocker_examples() {
        let c = cfg();
        for (name, p) in [
            ("cycle 5", Distribution::uniform(5).unwrap()),
            ("complete 4", d(&[0.1, 0.2, 0.3, 0.4])),
            ("fig51", Distribution::uniform(6).unwrap()),
        ] {
            let r = antiblocker_identity_check(&gen(name), &p, 1e-6, &c).unwrap();
            assert!(r.holds, "{name}: {r:?}");
        }
    }

    #[test]
    fn membership() {
        let c = cfg();
        let vp = ConvexCorner::VertexPacking(gen("cycle 5"));
        assert!(vp.contains(&[0.4; 5], 1e-9, &c).unwrap());
        assert!(!vp.contains(&[0.45; 5], 1e-9, &c).unwrap());
        let fvp = ConvexCorner::FractionalVertexPacking(gen("cycle 5"));
        assert!(fvp.contains(&[0.5; 5], 1e-9, &c).unwrap());
        assert!(ConvexCorner::UnitCorner(2).contains(&[0.5, 0.5], 0.0, &c).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        let c = cfg().with_tol(0.0);
        assert!(entropy_fw(&gen("cycle 5"), &Distribution::uniform(5).unwrap(), &c).is_err());
        assert!(entropy_fw(&gen("cycle 5"), &Distribution::uniform(4).unwrap(), &cfg()).is_err());
    }

    #[test]
    fn tiny_budget_reports_best() {
        let c = SolverConfig {
            budget: 1,
            ..cfg()
        };
        let g = gen("fig52");
        let p = Distribution::normalized((1..=10).map(|i| i as f64).collect()).unwrap();
        match entropy_fw(&g, &p, &c) {
            Err(Error::NonConvergence { best, .. }) => assert!(best.value.is_finite()),
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
