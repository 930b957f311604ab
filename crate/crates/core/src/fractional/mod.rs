//! Exact fractional chromatic numbers, Edmonds' edge formula, matching
//! polytope membership and the fractional vertex packing oracle.

mod rational;
mod simplex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::graph::{
    boundary, induced_edges, is_k_regular, maximal_cliques, maximal_independent_sets, Graph,
    VertexSet,
};

pub use rational::Rational;
pub use simplex::{lp_solve, Constraint, Direction, LpProblem, LpSolution, LpStatus, Sense};

fn int(x: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// A set with a rational weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedSet {
    pub set: VertexSet,
    pub weight: Rational,
}

/// Exact χ_f(G) with an optimal fractional coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalColoring {
    pub value: Rational,
    /// Maximal independent sets with positive weight, sorted by mask.
    pub weights: Vec<WeightedSet>,
}

/// Minimum total weight on independent sets covering every vertex at least once.
pub fn fractional_chromatic_number(g: &Graph, caps: &Caps) -> Result<FractionalColoring> {
    let sets = maximal_independent_sets(g, caps.mis)?;
    let mut lp = LpProblem::new(Direction::Minimize, vec![BigRational::one(); sets.len()]);
    for v in 0..g.n() {
        let row = sets
            .iter()
            .map(|s| if s.contains(v) { BigRational::one() } else { BigRational::zero() })
            .collect();
        lp.add(row, Sense::Ge, BigRational::one());
    }
    let sol = lp_solve(&lp, caps.lp_columns)?;
    let (Some(value), Some(x)) = (sol.value, sol.x) else {
        unreachable!("the covering LP is feasible and bounded");
    };
    let weights = sets
        .into_iter()
        .zip(x)
        .filter(|(_, w)| w.is_positive())
        .map(|(set, w)| WeightedSet {
            set,
            weight: w.into(),
        })
        .collect();
    Ok(FractionalColoring {
        value: value.into(),
        weights,
    })
}

/// Converts float weights to integers proportional to them, with the largest
/// weight mapped near 2^32. Non-positive weights become 0.
fn integer_weights(w: &[f64]) -> Vec<BigRational> {
    let max = w.iter().cloned().fold(0.0f64, f64::max);
    if !(max > 0.0) {
        return vec![BigRational::zero(); w.len()];
    }
    let scale = 2f64.powi(32) / max;
    w.iter()
        .map(|&x| {
            let k = if x > 0.0 { (x * scale).round() } else { 0.0 };
            BigRational::from_integer(BigInt::from(k as u64))
        })
        .collect()
}

/// Linear maximization over FVP(G) = {x >= 0 : x(K) <= 1 for every clique K}.
#[derive(Debug, Clone)]
pub struct FvpOracle {
    n: usize,
    cliques: Vec<VertexSet>,
    max_columns: usize,
}

impl FvpOracle {
    pub fn new(g: &Graph, caps: &Caps) -> Result<FvpOracle> {
        Caps::check("LP columns", caps.lp_columns, g.n())?;
        Ok(FvpOracle {
            n: g.n(),
            cliques: maximal_cliques(g, caps.mis)?,
            max_columns: caps.lp_columns,
        })
    }

    /// A vertex of FVP(G) maximizing `w · x`, and the attained value.
    ///
    /// The LP is solved exactly for weights rounded to 32 significant bits.
    pub fn maximize(&self, w: &[f64]) -> Result<(Vec<f64>, f64)> {
        if w.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: w.len(),
            });
        }
        let mut lp = LpProblem::new(Direction::Maximize, integer_weights(w));
        for k in &self.cliques {
            let row = (0..self.n)
                .map(|v| if k.contains(v) { BigRational::one() } else { BigRational::zero() })
                .collect();
            lp.add(row, Sense::Le, BigRational::one());
        }
        let sol = lp_solve(&lp, self.max_columns)?;
        let x: Vec<f64> = sol
            .x
            .expect("packing LP is feasible and bounded")
            .iter()
            .map(|v| v.to_f64().unwrap_or(0.0))
            .collect();
        let value = x.iter().zip(w).map(|(a, b)| a * b).sum();
        Ok((x, value))
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.n
            && x.iter().all(|&v| v >= -tol)
            && self.cliques.iter().all(|k| k.mass(x) <= 1.0 + tol)
    }
}

/// Whether `x` lies in VP(G), the convex hull of independent-set indicators
/// and everything below it, after lowering each coordinate by `tol`.
pub fn vertex_packing_contains(g: &Graph, x: &[f64], tol: f64, caps: &Caps) -> Result<bool> {
    if x.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            actual: x.len(),
        });
    }
    if x.iter().any(|&v| !v.is_finite() || v < -tol) {
        return Ok(false);
    }
    let sets = maximal_independent_sets(g, caps.mis)?;
    let mut lp = LpProblem::new(Direction::Minimize, vec![BigRational::zero(); sets.len()]);
    lp.add(vec![BigRational::one(); sets.len()], Sense::Le, BigRational::one());
    for (v, &xv) in x.iter().enumerate() {
        let target = Rational::from_f64((xv - tol).max(0.0))?.into_inner();
        let row = sets
            .iter()
            .map(|s| if s.contains(v) { BigRational::one() } else { BigRational::zero() })
            .collect();
        lp.add(row, Sense::Ge, target);
    }
    Ok(lp_solve(&lp, caps.lp_columns)?.status == LpStatus::Optimal)
}

/// χ_f'(G) by Edmonds' formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeChromatic {
    pub value: Rational,
    pub max_degree: usize,
    /// The set `U`, `|U| >= 3`, maximizing `|E(U)| / floor(|U|/2)` (smallest mask among ties).
    pub densest_set: Option<VertexSet>,
    pub densest_ratio: Option<Rational>,
}

/// `max{Δ(G), max_{|U|>=3} |E(U)| / floor(|U|/2)}`, by enumeration of all `U`.
pub fn fractional_edge_chromatic(g: &Graph, caps: &Caps) -> Result<EdgeChromatic> {
    Caps::check("odd set enumeration", caps.odd_sets, g.n())?;
    let n = g.n();
    let mut best: Option<(usize, usize, u64)> = None; // (edges, half, mask)
    for mask in 0u64..1 << n {
        let k = mask.count_ones() as usize;
        if k < 3 {
            continue;
        }
        let e = induced_edges(g, VertexSet(mask));
        let half = k / 2;
        let better = match best {
            None => true,
            Some((be, bh, _)) => e * bh > be * half,
        };
        if better {
            best = Some((e, half, mask));
        }
    }
    let delta = g.max_degree();
    let mut value = int(delta);
    let (mut densest_set, mut densest_ratio) = (None, None);
    if let Some((e, half, mask)) = best {
        let ratio = BigRational::new(BigInt::from(e), BigInt::from(half));
        if ratio > value {
            value = ratio.clone();
        }
        densest_set = Some(VertexSet(mask));
        densest_ratio = Some(ratio.into());
    }
    Ok(EdgeChromatic {
        value: value.into(),
        max_degree: delta,
        densest_set,
        densest_ratio,
    })
}

/// A constraint of the matching polytope that a point violates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatchingViolation {
    Negative { edge: (usize, usize), value: Rational },
    Degree { vertex: usize, load: Rational },
    OddSet { set: VertexSet, load: Rational, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingPolytopeCheck {
    pub member: bool,
    pub violation: Option<MatchingViolation>,
}

/// Membership of `x` (indexed by the edges of `g` in lexicographic order) in
/// the matching polytope. Reports the first violated family: nonnegativity,
/// then degrees, then odd sets. Among odd sets the largest excess wins, ties
/// going to the smallest mask.
pub fn matching_polytope_member(g: &Graph, x: &[Rational], caps: &Caps) -> Result<MatchingPolytopeCheck> {
    Caps::check("odd set enumeration", caps.odd_sets, g.n())?;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if x.len() != edges.len() {
        return Err(Error::DimensionMismatch {
            expected: edges.len(),
            actual: x.len(),
        });
    }
    let violated = |v: MatchingViolation| MatchingPolytopeCheck {
        member: false,
        violation: Some(v),
    };
    for (&e, xe) in edges.iter().zip(x) {
        if xe.is_negative() {
            return Ok(violated(MatchingViolation::Negative {
                edge: e,
                value: xe.clone(),
            }));
        }
    }
    let n = g.n();
    let mut load = vec![BigRational::zero(); n];
    for (&(u, v), xe) in edges.iter().zip(x) {
        load[u] += xe.inner();
        load[v] += xe.inner();
    }
    if let Some(v) = (0..n).find(|&v| load[v] > BigRational::one()) {
        return Ok(violated(MatchingViolation::Degree {
            vertex: v,
            load: load[v].clone().into(),
        }));
    }
    let mut best: Option<(BigRational, u64, BigRational)> = None;
    for mask in 0u64..1 << n {
        let k = mask.count_ones() as usize;
        if k < 3 || k.is_multiple_of(2) {
            continue;
        }
        let inside: BigRational = edges
            .iter()
            .zip(x)
            .filter(|(&(u, v), _)| mask >> u & 1 == 1 && mask >> v & 1 == 1)
            .fold(BigRational::zero(), |acc, (_, xe)| acc + xe.inner());
        let excess = &inside - int(k / 2);
        if excess.is_positive() && best.as_ref().is_none_or(|(b, _, _)| excess > *b) {
            best = Some((excess, mask, inside));
        }
    }
    Ok(match best {
        Some((_, mask, inside)) => violated(MatchingViolation::OddSet {
            set: VertexSet(mask),
            load: inside.into(),
            bound: mask.count_ones() as usize / 2,
        }),
        None => MatchingPolytopeCheck {
            member: true,
            violation: None,
        },
    })
}

/// Result of the odd-cut test for a `k`-regular graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGraphCheck {
    pub holds: bool,
    /// An odd set with `|δ(U)| < k`: smallest cut, then smallest mask.
    pub witness: Option<VertexSet>,
    pub witness_cut: Option<usize>,
}

/// Whether every odd `U ⊆ V` (including `V` itself) has `|δ(U)| >= k`.
pub fn is_k_graph(g: &Graph, k: usize, caps: &Caps) -> Result<KGraphCheck> {
    if !is_k_regular(g, k) {
        return Err(Error::NotRegular(k));
    }
    Caps::check("odd set enumeration", caps.odd_sets, g.n())?;
    let mut best: Option<(usize, u64)> = None;
    for mask in 1u64..1 << g.n() {
        if mask.count_ones() % 2 == 0 {
            continue;
        }
        let cut = boundary(g, VertexSet(mask));
        if cut < k && best.is_none_or(|(c, _)| cut < c) {
            best = Some((cut, mask));
        }
    }
    Ok(KGraphCheck {
        holds: best.is_none(),
        witness: best.map(|(_, m)| VertexSet(m)),
        witness_cut: best.map(|(c, _)| c),
    })
}
