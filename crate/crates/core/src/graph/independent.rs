//! Independent sets and cliques on graphs with at most 64 vertices.
//!
//! Both problems share one engine parametrized by a "conflict" mask per
//! vertex: neighbors for independent sets, non-neighbors for cliques.

use super::{Graph, VertexSet};
use crate::config::Caps;
use crate::error::Result;

fn conflicts_independent(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.nbr(v)).collect()
}

fn conflicts_clique(g: &Graph) -> Vec<u64> {
    let all = g.all().0;
    (0..g.n()).map(|v| all & !g.nbr(v) & !(1 << v)).collect()
}

/// Bron–Kerbosch with pivoting over the compatibility relation `!conflict`.
fn bron_kerbosch(conflict: &[u64], within: u64, out: &mut Vec<VertexSet>) {
    fn rec(conflict: &[u64], within: u64, r: u64, mut p: u64, mut x: u64, out: &mut Vec<VertexSet>) {
        if p == 0 {
            if x == 0 {
                out.push(VertexSet(r));
            }
            return;
        }
        let compat = |v: usize| within & !conflict[v] & !(1u64 << v);
        // Pivot maximizing |P ∩ compat(u)|.
        let pivot = VertexSet(p | x)
            .iter()
            .max_by_key(|&u| ((p & compat(u)).count_ones(), std::cmp::Reverse(u)))
            .expect("p nonempty");
        let candidates = p & !compat(pivot);
        for v in VertexSet(candidates).iter() {
            let bit = 1u64 << v;
            rec(conflict, within, r | bit, p & compat(v), x & compat(v), out);
            p &= !bit;
            x |= bit;
        }
    }
    rec(conflict, within, 0, within, 0, out);
}

/// All inclusion-maximal independent sets, sorted by mask.
pub fn maximal_independent_sets(g: &Graph, cap: usize) -> Result<Vec<VertexSet>> {
    Caps::check("maximal independent set enumeration", cap, g.n())?;
    g.require_set_limit("maximal independent set enumeration")?;
    Ok(maximal_independent_sets_in(g, g.all()))
}

/// Maximal independent sets of the induced subgraph `g[within]`, sorted by mask.
///
/// The caller is responsible for keeping `within` small enough to enumerate.
pub fn maximal_independent_sets_in(g: &Graph, within: VertexSet) -> Vec<VertexSet> {
    let mut out = Vec::new();
    if within.is_empty() {
        out.push(VertexSet::EMPTY);
        return out;
    }
    bron_kerbosch(&conflicts_independent(g), within.0, &mut out);
    out.sort_unstable();
    out
}

/// All inclusion-maximal cliques, sorted by mask.
pub fn maximal_cliques(g: &Graph, cap: usize) -> Result<Vec<VertexSet>> {
    Caps::check("maximal clique enumeration", cap, g.n())?;
    g.require_set_limit("maximal clique enumeration")?;
    let mut out = Vec::new();
    bron_kerbosch(&conflicts_clique(g), g.all().0, &mut out);
    out.sort_unstable();
    Ok(out)
}

/// All cliques of size ω(G), sorted by mask.
pub fn maximum_cliques(g: &Graph, cap: usize) -> Result<Vec<VertexSet>> {
    let all = maximal_cliques(g, cap)?;
    let omega = all.iter().map(|c| c.len()).max().unwrap_or(0);
    Ok(all.into_iter().filter(|c| c.len() == omega).collect())
}

/// Branch and bound for a maximum-weight conflict-free set.
///
/// The bound covers the candidate set greedily by mutually conflicting
/// groups; each group contributes at most its heaviest vertex.
struct WeightedSearch<'a> {
    conflict: &'a [u64],
    w: &'a [f64],
    best: f64,
    best_set: u64,
}

impl WeightedSearch<'_> {
    fn bound(&self, mut p: u64) -> f64 {
        let mut total = 0.0;
        while p != 0 {
            let v = p.trailing_zeros() as usize;
            let mut group = 1u64 << v;
            let mut heaviest = self.w[v];
            let mut rest = p & self.conflict[v];
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if self.conflict[u] & group == group {
                    group |= 1 << u;
                    heaviest = heaviest.max(self.w[u]);
                    rest &= self.conflict[u];
                }
            }
            total += heaviest;
            p &= !group;
        }
        total
    }

    fn run(&mut self, current: u64, weight: f64, p: u64) {
        if weight > self.best {
            self.best = weight;
            self.best_set = current;
        }
        if p == 0 || weight + self.bound(p) <= self.best {
            return;
        }
        // Branch on the heaviest candidate.
        let v = VertexSet(p)
            .iter()
            .max_by(|&a, &b| self.w[a].total_cmp(&self.w[b]).then(b.cmp(&a)))
            .expect("p nonempty");
        let bit = 1u64 << v;
        self.run(current | bit, weight + self.w[v], p & !bit & !self.conflict[v]);
        self.run(current, weight, p & !bit);
    }
}

fn max_weight_set(conflict: &[u64], w: &[f64]) -> (VertexSet, f64) {
    let positive: u64 = w
        .iter()
        .enumerate()
        .filter(|&(_, &x)| x > 0.0)
        .fold(0, |m, (i, _)| m | 1 << i);
    let mut search = WeightedSearch {
        conflict,
        w,
        best: 0.0,
        best_set: 0,
    };
    search.run(0, 0.0, positive);
    (VertexSet(search.best_set), search.best)
}

fn check_weights(g: &Graph, w: &[f64]) -> Result<()> {
    if w.len() != g.n() {
        return Err(crate::error::Error::DimensionMismatch {
            expected: g.n(),
            actual: w.len(),
        });
    }
    if let Some(x) = w.iter().find(|x| !x.is_finite()) {
        return Err(crate::error::Error::InvalidParameter(format!("non-finite weight {x}")));
    }
    Ok(())
}

/// An independent set maximizing the total positive-part weight.
///
/// Vertices with non-positive weight are never included.
pub fn max_weight_independent_set(g: &Graph, w: &[f64]) -> Result<(VertexSet, f64)> {
    g.require_set_limit("max-weight independent set")?;
    check_weights(g, w)?;
    Ok(max_weight_set(&conflicts_independent(g), w))
}

/// A clique maximizing the total positive-part weight.
pub fn max_weight_clique(g: &Graph, w: &[f64]) -> Result<(VertexSet, f64)> {
    g.require_set_limit("max-weight clique")?;
    check_weights(g, w)?;
    Ok(max_weight_set(&conflicts_clique(g), w))
}

/// Independence number α(G).
pub fn alpha(g: &Graph) -> Result<usize> {
    Ok(max_weight_independent_set(g, &vec![1.0; g.n()])?.0.len())
}

/// Clique number ω(G).
pub fn clique_number(g: &Graph) -> Result<usize> {
    Ok(max_weight_clique(g, &vec![1.0; g.n()])?.0.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gen(s: &str) -> Graph {
        generate(&s.parse().unwrap()).unwrap()
    }

    fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }

    fn all_independent(g: &Graph) -> Vec<u64> {
        (0..1u64 << g.n()).filter(|&m| g.is_independent(VertexSet(m))).collect()
    }

    #[test]
    fn mis_examples() {
        let c5 = maximal_independent_sets(&gen("cycle 5"), 30).unwrap();
        assert_eq!(c5.len(), 5);
        assert!(c5.iter().all(|s| s.len() == 2));
        let k4 = maximal_independent_sets(&gen("complete 4"), 30).unwrap();
        assert_eq!(k4, (0..4).map(VertexSet::singleton).collect::<Vec<_>>());
        assert_eq!(maximal_independent_sets(&gen("empty 3"), 30).unwrap(), vec![VertexSet(7)]);
        assert!(maximal_independent_sets(&gen("empty 31"), 30).is_err());
    }

    #[test]
    fn mwis_examples() {
        let (_, w) = max_weight_independent_set(&gen("cycle 5"), &[1.0; 5]).unwrap();
        assert_eq!(w, 2.0);
        let (s, w) = max_weight_independent_set(&gen("complete 3"), &[3.0, 1.0, 2.0]).unwrap();
        assert_eq!((s, w), (VertexSet::singleton(0), 3.0));
        let (s, w) = max_weight_independent_set(&gen("cycle 4"), &[1.0, -1.0, 1.0, -1.0]).unwrap();
        assert_eq!((s.to_vec(), w), (vec![0, 2], 2.0));
        assert!(max_weight_independent_set(&gen("cycle 4"), &[1.0; 3]).is_err());
    }

    #[test]
    fn cliques() {
        let p = gen("petersen");
        assert_eq!(clique_number(&p).unwrap(), 2);
        assert_eq!(alpha(&p).unwrap(), 4);
        assert_eq!(maximum_cliques(&p, 30).unwrap().len(), 15);
        assert_eq!(maximum_cliques(&gen("fig51"), 30).unwrap().len(), 2);
        let (c, w) = max_weight_clique(&gen("complete 4"), &[1.0, 2.0, -1.0, 0.5]).unwrap();
        assert_eq!((c.to_vec(), w), (vec![0, 1, 3], 3.5));
    }

    proptest! {
        #[test]
        fn mis_are_maximal_and_complete(seed in any::<u64>(), n in 1usize..=10, dens in 0.0f64..1.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(n, dens, &mut rng);
            let sets = maximal_independent_sets(&g, 30).unwrap();
            for w in sets.windows(2) {
                prop_assert!(w[0] < w[1]);
            }
            for (i, a) in sets.iter().enumerate() {
                prop_assert!(g.is_independent(*a));
                for (j, b) in sets.iter().enumerate() {
                    prop_assert!(i == j || !a.is_subset(*b));
                }
            }
            for s in all_independent(&g) {
                prop_assert!(sets.iter().any(|m| VertexSet(s).is_subset(*m)));
            }
        }

        #[test]
        fn mwis_matches_enumeration(seed in any::<u64>(), n in 1usize..=10, dens in 0.0f64..1.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(n, dens, &mut rng);
            let w: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..2.0)).collect();
            let (s, best) = max_weight_independent_set(&g, &w).unwrap();
            prop_assert!(g.is_independent(s));
            prop_assert!((s.iter().map(|v| w[v]).sum::<f64>() - best).abs() < 1e-12);
            let brute = maximal_independent_sets(&g, 30)
                .unwrap()
                .iter()
                .map(|m| m.iter().map(|v| w[v].max(0.0)).sum::<f64>())
                .fold(0.0, f64::max);
            prop_assert!((brute - best).abs() < 1e-9);
        }
    }
}
