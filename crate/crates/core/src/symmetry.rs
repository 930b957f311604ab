//! Structural and numeric tests for whether the uniform distribution
//! maximizes graph entropy.

use serde::{Deserialize, Serialize};

use crate::coloring::chromatic_number;
use crate::config::{Caps, SolverConfig, SYMMETRY_TOL};
use crate::corner::entropy_fw;
use crate::error::{Error, Result};
use crate::fractional::{fractional_chromatic_number, is_k_graph, Rational};
use crate::graph::{
    clique_number, complement, induced_subgraph, line_graph, max_weight_independent_set,
    maximal_cliques, maximum_cliques, maximum_matching_bipartite, Graph, VertexSet,
};
use crate::prob::Distribution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    BipartiteMatching,
    PerfectCliquePartition,
    KGraphLine,
    NumericOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// A perfect matching, as `(a, b)` pairs.
    Matching { pairs: Vec<(usize, usize)> },
    /// `D` inside one part with `|N(D)| < |D|`.
    HallViolator { set: VertexSet, neighborhood: VertexSet },
    /// A partition of `V` into cliques of size ω.
    CliquePartition { cliques: Vec<VertexSet> },
    /// An independent set with `|S| > n/ω` and the entropy bound of the
    /// point giving `t = |S|/n` to `S` and `(1-t)/(ω-1)` to the rest.
    LargeIndependentSet {
        set: VertexSet,
        omega: usize,
        t: f64,
        bound_bits: f64,
        log_omega: f64,
    },
    /// The optimal point `x* = 1/k` on every edge of the k-graph.
    KGraph { k: usize, x_star: f64 },
    /// An odd vertex set with `|δ(U)| < k`.
    OddSet { set: VertexSet, cut: usize, k: usize },
    Numeric { chi_f: Rational, entropy_bits: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryVerdict {
    /// `None` when undecided.
    pub symmetric: Option<bool>,
    pub criterion: Criterion,
    pub certificate: Certificate,
    /// `log χ_f(G) − H_k(G,U)` in bits; absent when over a cap.
    pub numeric_gap: Option<f64>,
    /// Set when maximum cliques cover `V` but cannot partition it.
    #[serde(default)]
    pub ambiguous: bool,
}

/// `(log χ_f(G) − H_k(G,U), χ_f, H_k(G,U))`, with the solver at `tol/4`.
fn uniform_gap(g: &Graph, tol: f64, cfg: &SolverConfig) -> Result<(f64, Rational, f64)> {
    let chi_f = fractional_chromatic_number(g, &cfg.caps)?.value;
    let inner = cfg.clone().with_tol(tol / 4.0);
    let h = entropy_fw(g, &Distribution::uniform(g.n())?, &inner)?.result.value;
    Ok((chi_f.to_f64().log2() - h, chi_f, h))
}

/// The numeric gap, or `None` when a cap rules the computation out.
fn optional_gap(g: &Graph, cfg: &SolverConfig) -> Result<Option<f64>> {
    match uniform_gap(g, SYMMETRY_TOL, cfg) {
        Ok((gap, _, _)) => Ok(Some(gap)),
        Err(Error::CapExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Symmetric iff `log χ_f(G) − H_k(G,U) <= tol`.
pub fn numeric_symmetry_check(g: &Graph, tol: f64, cfg: &SolverConfig) -> Result<SymmetryVerdict> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol must be > 0, got {tol}")));
    }
    let (gap, chi_f, h) = uniform_gap(g, tol, cfg)?;
    Ok(SymmetryVerdict {
        symmetric: Some(gap <= tol),
        criterion: Criterion::NumericOnly,
        certificate: Certificate::Numeric {
            chi_f,
            entropy_bits: h,
        },
        numeric_gap: Some(gap),
        ambiguous: false,
    })
}

/// A bipartite graph without isolated vertices is symmetric iff it has a
/// perfect matching.
pub fn check_bipartite_symmetric(g: &Graph, cfg: &SolverConfig) -> Result<SymmetryVerdict> {
    g.require_set_limit("bipartite symmetry")?;
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let m = maximum_matching_bipartite(g)?;
    let certificate = match m.hall_violator {
        None => Certificate::Matching { pairs: m.pairs },
        Some(d) => Certificate::HallViolator {
            set: d,
            neighborhood: VertexSet(d.iter().fold(0, |acc, v| acc | g.nbr(v))),
        },
    };
    Ok(SymmetryVerdict {
        symmetric: Some(matches!(certificate, Certificate::Matching { .. })),
        criterion: Criterion::BipartiteMatching,
        certificate,
        numeric_gap: optional_gap(g, cfg)?,
        ambiguous: false,
    })
}

/// Whether `G` is perfect.
///
/// Up to `caps.perfect_exact` vertices every induced subgraph is checked for
/// `χ = ω`. Up to `caps.perfect_holes` vertices the graph is searched for an
/// odd hole or odd antihole instead.
pub fn is_perfect(g: &Graph, caps: &Caps) -> Result<bool> {
    let n = g.n();
    if n <= caps.perfect_exact {
        is_perfect_by_definition(g, caps)
    } else {
        Caps::check("perfection check", caps.perfect_holes, n)?;
        Ok(find_odd_hole(g).is_none() && find_odd_hole(&complement(g)).is_none())
    }
}

fn is_perfect_by_definition(g: &Graph, caps: &Caps) -> Result<bool> {
    g.require_set_limit("perfection check")?;
    for mask in 1u64..1 << g.n() {
        let sub = induced_subgraph(g, &VertexSet(mask).to_vec())?;
        if chromatic_number(&sub, caps)?.chi != clique_number(&sub)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An induced cycle of odd length at least 5, if any.
pub fn find_odd_hole(g: &Graph) -> Option<VertexSet> {
    let n = g.n();
    (1u64..1 << n)
        .filter(|m| m.count_ones() >= 5 && m.count_ones() % 2 == 1)
        .map(VertexSet)
        .find(|&s| is_induced_cycle(g, s))
}

fn is_induced_cycle(g: &Graph, s: VertexSet) -> bool {
    if s.iter().any(|v| (g.nbr(v) & s.0).count_ones() != 2) {
        return false;
    }
    // 2-regular: a cycle iff connected.
    let start = s.iter().next().expect("nonempty");
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let next = VertexSet(frontier).iter().fold(0, |acc, v| acc | g.nbr(v)) & s.0 & !seen;
        seen |= next;
        frontier = next;
    }
    seen == s.0
}

/// A partition of `V` into cliques of size ω(G), by exact cover.
pub fn max_clique_partition(g: &Graph, caps: &Caps) -> Result<Option<Vec<VertexSet>>> {
    Caps::check("clique partition", caps.clique_partition, g.n())?;
    let cliques = maximum_cliques(g, caps.clique_partition)?;
    let omega = cliques[0].len();
    if !g.n().is_multiple_of(omega) {
        return Ok(None);
    }
    let mut chosen = Vec::new();
    Ok(exact_cover(&cliques, g.all().0, 0, &mut chosen).then_some(chosen))
}

fn exact_cover(cliques: &[VertexSet], all: u64, covered: u64, chosen: &mut Vec<VertexSet>) -> bool {
    if covered == all {
        return true;
    }
    let v = (!covered & all).trailing_zeros() as usize;
    for &q in cliques {
        if q.contains(v) && q.0 & covered == 0 {
            chosen.push(q);
            if exact_cover(cliques, all, covered | q.0, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// A perfect graph is symmetric iff its vertices split into cliques of
/// maximum size.
pub fn check_perfect_symmetric(g: &Graph, cfg: &SolverConfig) -> Result<SymmetryVerdict> {
    if !is_perfect(g, &cfg.caps)? {
        return Err(Error::NotPerfect);
    }
    let numeric_gap = optional_gap(g, cfg)?;
    if let Some(cliques) = max_clique_partition(g, &cfg.caps)? {
        return Ok(SymmetryVerdict {
            symmetric: Some(true),
            criterion: Criterion::PerfectCliquePartition,
            certificate: Certificate::CliquePartition { cliques },
            numeric_gap,
            ambiguous: false,
        });
    }
    let n = g.n();
    let omega = clique_number(g)?;
    let (set, _) = max_weight_independent_set(g, &vec![1.0; n])?;
    // With no partition the clique cover number, which equals α for a perfect
    // graph, exceeds n/ω.
    debug_assert!(set.len() * omega > n);
    let t = set.len() as f64 / n as f64;
    let bound_bits = -t * t.log2() - (1.0 - t) * ((1.0 - t) / (omega as f64 - 1.0)).log2();
    let covered = maximal_cliques(g, cfg.caps.mis)?
        .iter()
        .filter(|q| q.len() == omega)
        .fold(0u64, |acc, q| acc | q.0);
    Ok(SymmetryVerdict {
        symmetric: Some(false),
        criterion: Criterion::PerfectCliquePartition,
        certificate: Certificate::LargeIndependentSet {
            set,
            omega,
            t,
            bound_bits,
            log_omega: (omega as f64).log2(),
        },
        numeric_gap,
        ambiguous: covered == g.all().0,
    })
}

/// The line graph of a k-regular graph (`k >= 3`) is symmetric when the
/// graph is a k-graph, i.e. every odd vertex set has at least `k` boundary
/// edges. The verdict and gap concern `L(g1)`.
pub fn check_line_graph_symmetric(g1: &Graph, cfg: &SolverConfig) -> Result<SymmetryVerdict> {
    let k = g1.degree(0);
    if (0..g1.n()).any(|v| g1.degree(v) != k) {
        return Err(Error::InvalidParameter("graph is not regular".into()));
    }
    if k < 3 {
        return Err(Error::InvalidParameter(format!("valency {k} is below 3")));
    }
    let check = is_k_graph(g1, k, &cfg.caps)?;
    let certificate = match (check.witness, check.witness_cut) {
        (Some(set), Some(cut)) => Certificate::OddSet { set, cut, k },
        _ => Certificate::KGraph {
            k,
            x_star: 1.0 / k as f64,
        },
    };
    let lg = line_graph(g1)?.graph;
    Ok(SymmetryVerdict {
        symmetric: Some(check.holds),
        criterion: Criterion::KGraphLine,
        certificate,
        numeric_gap: optional_gap(&lg, cfg)?,
        ambiguous: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, generate};

    fn gen(s: &str) -> Graph {
        generate(&s.parse().unwrap()).unwrap()
    }

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn bipartite_examples() {
        let v = check_bipartite_symmetric(&gen("cycle 6"), &cfg()).unwrap();
        assert_eq!(v.symmetric, Some(true));
        match &v.certificate {
            Certificate::Matching { pairs } => assert_eq!(pairs.len(), 3),
            c => panic!("{c:?}"),
        }
        assert!(v.numeric_gap.unwrap().abs() <= SYMMETRY_TOL);

        let v = check_bipartite_symmetric(&gen("star 3"), &cfg()).unwrap();
        assert_eq!(v.symmetric, Some(false));
        match v.certificate {
            Certificate::HallViolator { set, neighborhood } => {
                assert!(set.len() > neighborhood.len());
                assert!(!set.contains(0));
            }
            c => panic!("{c:?}"),
        }
        assert!(v.numeric_gap.unwrap() > SYMMETRY_TOL);

        let g = disjoint_union(&gen("cycle 4"), &gen("cycle 6"));
        let v = check_bipartite_symmetric(&g, &cfg()).unwrap();
        assert_eq!(v.symmetric, Some(true));

        assert!(matches!(
            check_bipartite_symmetric(&gen("cycle 5"), &cfg()),
            Err(Error::NotBipartite)
        ));
        let iso = disjoint_union(&gen("cycle 4"), &gen("empty 1"));
        assert!(matches!(
            check_bipartite_symmetric(&iso, &cfg()),
            Err(Error::IsolatedVertex(4))
        ));
    }

    #[test]
    fn perfection() {
        let caps = Caps::default();
        assert!(!is_perfect(&gen("cycle 5"), &caps).unwrap());
        assert!(is_perfect(&gen("cycle 6"), &caps).unwrap());
        assert!(is_perfect(&gen("petersen"), &caps).is_ok_and(|p| !p));
        assert!(is_perfect(&gen("kneser 5 2"), &caps).is_ok_and(|p| !p));
        // C7 complement is an odd antihole.
        assert!(!is_perfect(&complement(&gen("cycle 7")), &caps).unwrap());
        // Larger graphs take the hole search.
        assert!(is_perfect(&gen("cycle 14"), &caps).unwrap());
        assert!(!is_perfect(&gen("cycle 15"), &caps).unwrap());
        assert!(is_perfect(&gen("cycle 17"), &caps).is_err());
    }

    #[test]
    fn fig51_definitional_scan() {
        // Oracle: scan every induced subgraph for an odd hole or antihole.
        let g = gen("fig51");
        let hole = find_odd_hole(&g).or_else(|| find_odd_hole(&complement(&g)));
        assert_eq!(is_perfect(&g, &Caps::default()).unwrap(), hole.is_none());
    }

    #[test]
    fn clique_partitions() {
        let caps = Caps::default();
        let p = max_clique_partition(&gen("complete_multipartite 2 2"), &caps).unwrap().unwrap();
        assert_eq!(p.len(), 2);
        let two_k3 = disjoint_union(&gen("complete 3"), &gen("complete 3"));
        let p = max_clique_partition(&two_k3, &caps).unwrap().unwrap();
        assert_eq!(p, vec![VertexSet(0b000111), VertexSet(0b111000)]);
        assert!(max_clique_partition(&gen("star 3"), &caps).unwrap().is_none());
    }

    #[test]
    fn perfect_examples() {
        let v = check_perfect_symmetric(&gen("cycle 6"), &cfg()).unwrap();
        assert_eq!(v.symmetric, Some(true));
        let two_k3 = disjoint_union(&gen("complete 3"), &gen("complete 3"));
        assert_eq!(check_perfect_symmetric(&two_k3, &cfg()).unwrap().symmetric, Some(true));

        let v = check_perfect_symmetric(&gen("star 3"), &cfg()).unwrap();
        assert_eq!(v.symmetric, Some(false));
        // Edges cover the star but cannot partition it.
        assert!(v.ambiguous);
        match v.certificate {
            Certificate::LargeIndependentSet {
                set,
                omega,
                bound_bits,
                log_omega,
                ..
            } => {
                assert_eq!(set, VertexSet(0b1110));
                assert!(set.len() * omega > 4);
                assert!(bound_bits < log_omega);
            }
            c => panic!("{c:?}"),
        }
        assert!(matches!(check_perfect_symmetric(&gen("cycle 5"), &cfg()), Err(Error::NotPerfect)));
    }

    #[test]
    fn line_graph_examples() {
        let v = check_line_graph_symmetric(&gen("fig51"), &cfg()).unwrap();
        assert_eq!(v.symmetric, Some(true));
        assert!(v.numeric_gap.unwrap() <= SYMMETRY_TOL);
        let v = check_line_graph_symmetric(&gen("petersen"), &cfg()).unwrap();
        assert_eq!(v.symmetric, Some(true));
        let v = check_line_graph_symmetric(&gen("fig52"), &cfg()).unwrap();
        assert_eq!(v.symmetric, Some(false));
        match v.certificate {
            Certificate::OddSet { set, cut, k } => {
                assert_eq!(set.len(), 5);
                assert!(cut < k);
            }
            c => panic!("{c:?}"),
        }
        assert!((v.numeric_gap.unwrap() - 0.05023).abs() < 1e-3);
        assert!(check_line_graph_symmetric(&gen("cycle 6"), &cfg()).is_err());
        assert!(check_line_graph_symmetric(&gen("star 3"), &cfg()).is_err());
    }

    #[test]
    fn numeric_examples() {
        let c = cfg();
        let v = numeric_symmetry_check(&gen("cycle 5"), SYMMETRY_TOL, &c).unwrap();
        assert_eq!(v.symmetric, Some(true));
        assert!(v.numeric_gap.unwrap().abs() < 1e-6);
        let v = numeric_symmetry_check(&gen("star 3"), SYMMETRY_TOL, &c).unwrap();
        let want = 1.0 - crate::prob::binary_entropy(0.25).unwrap();
        assert!((v.numeric_gap.unwrap() - want).abs() < 1e-6);
        assert_eq!(v.symmetric, Some(false));
    }
}
