use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{chromatic_number, grundy_number, sequence_entropy, Coloring};
use crate::config::Caps;
use crate::error::Result;
use crate::graph::{generate, maximal_independent_sets_in, Family, Graph, VertexSet};
use crate::prob::{plogp_neg, Distribution};

/// Entropies closer than this are treated as equal when counting colors.
pub const TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinEntropyColoring {
    /// An optimal coloring with `chi_h` classes, heaviest class first.
    pub coloring: Coloring,
    /// Class masses of `coloring`.
    pub sequence: Vec<f64>,
    #[serde(rename = "value_bits")]
    pub value: f64,
    /// Fewest classes among colorings within [`TIE_TOL`] of the optimum.
    pub chi_h: usize,
}

/// Exact chromatic entropy `H_χ(G,P)` with an optimal coloring.
///
/// Classes are built in order, each one a maximal independent set of the
/// vertices still uncolored, so only Grundy colorings are generated; some
/// minimum entropy coloring is always of this form. A partial coloring with
/// class masses `c_1..c_j` and uncolored mass `r` dominates every completion,
/// so it is cut once `H(c_1..c_j, r)` exceeds the best complete entropy.
/// Partial colorings reaching the same uncolored set are compared directly.
pub fn min_entropy_coloring(
    g: &Graph,
    p: &Distribution,
    caps: &Caps,
) -> Result<MinEntropyColoring> {
    Caps::check("minimum entropy coloring", caps.min_entropy_coloring, g.n())?;
    g.require_set_limit("minimum entropy coloring")?;
    p.check_len(g.n())?;
    let mut search = Search {
        g,
        w: p.probs(),
        best: f64::INFINITY,
        found: Vec::new(),
        seen: HashMap::new(),
    };
    let mut classes = Vec::with_capacity(g.n());
    search.run(g.all().0, &mut classes, 0.0);

    let best = search.best;
    let (_, classes) = search
        .found
        .into_iter()
        .filter(|(h, _)| *h <= best + TIE_TOL)
        .min_by(|a, b| a.1.len().cmp(&b.1.len()).then(a.0.total_cmp(&b.0)))
        .expect("every graph has a coloring");
    let coloring = normalize(g, p, classes);
    let sequence = coloring.masses(p);
    Ok(MinEntropyColoring {
        value: sequence_entropy(&sequence),
        chi_h: coloring.num_colors(),
        coloring,
        sequence,
    })
}

/// `χ_H(G,P)`, the fewest colors in a minimum entropy coloring.
pub fn chi_h(g: &Graph, p: &Distribution, caps: &Caps) -> Result<usize> {
    Ok(min_entropy_coloring(g, p, caps)?.chi_h)
}

struct Search<'a> {
    g: &'a Graph,
    w: &'a [f64],
    best: f64,
    /// Complete colorings within the tie tolerance of `best` when found.
    found: Vec<(f64, Vec<VertexSet>)>,
    /// Cheapest prefix (entropy, class count) seen per uncolored set.
    seen: HashMap<u64, (f64, usize)>,
}

impl Search<'_> {
    fn run(&mut self, rest: u64, classes: &mut Vec<VertexSet>, cost: f64) {
        if rest == 0 {
            if cost < self.best {
                self.best = cost;
                let limit = cost + TIE_TOL;
                self.found.retain(|(h, _)| *h <= limit);
            }
            if cost <= self.best + TIE_TOL {
                self.found.push((cost, classes.clone()));
            }
            return;
        }
        if cost + plogp_neg(VertexSet(rest).mass(self.w)) > self.best + TIE_TOL {
            return;
        }
        let k = classes.len();
        match self.seen.get(&rest) {
            Some(&(c0, k0)) if cost > c0 + TIE_TOL || (cost >= c0 - TIE_TOL && k >= k0) => return,
            _ => {
                self.seen.insert(rest, (cost, k));
            }
        }
        let mut options = maximal_independent_sets_in(self.g, VertexSet(rest));
        let masses: Vec<f64> = options.iter().map(|m| m.mass(self.w)).collect();
        let mut order: Vec<usize> = (0..options.len()).collect();
        order.sort_by(|&a, &b| masses[b].total_cmp(&masses[a]).then(options[a].cmp(&options[b])));
        for i in order {
            let m = std::mem::take(&mut options[i]);
            classes.push(m);
            self.run(rest & !m.0, classes, cost + plogp_neg(masses[i]));
            classes.pop();
        }
    }
}

/// Sorts classes by mass and restores the Grundy property in that order.
///
/// Only zero-mass vertices can lack a neighbor in a heavier class of an
/// optimal coloring; they are moved to the first class that admits them.
fn normalize(g: &Graph, p: &Distribution, classes: Vec<VertexSet>) -> Coloring {
    let mut c = Coloring { classes };
    c.sort_by_mass(p);
    'outer: loop {
        for i in 1..c.classes.len() {
            for v in c.classes[i].iter() {
                if let Some(j) = (0..i).find(|&j| g.nbr(v) & c.classes[j].0 == 0) {
                    c.classes[i].0 &= !(1 << v);
                    c.classes[j].insert(v);
                    c.classes.retain(|s| !s.is_empty());
                    continue 'outer;
                }
            }
        }
        break;
    }
    c
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxChiH {
    /// `max_P χ_H(G,P) = Γ(G)`.
    pub value: usize,
    pub grundy_coloring: Coloring,
    /// A distribution attaining `χ_H = Γ`, when one was verified.
    pub witness: Option<Distribution>,
    pub epsilon: Option<f64>,
    pub verified: bool,
}

/// `max_P χ_H(G,P)`, which equals the Grundy number.
///
/// A witness is sought by giving class `t` of a maximum Grundy coloring total
/// mass proportional to `ε^t`, spread evenly, for ε in 1/4, 1/8, 1/16. Each
/// candidate is checked by exact minimum entropy coloring.
pub fn max_chi_h(g: &Graph, caps: &Caps) -> Result<MaxChiH> {
    let grundy = grundy_number(g, caps)?;
    for eps in [0.25, 0.125, 0.0625] {
        let mut w = vec![0.0; g.n()];
        let mut scale = 1.0;
        for class in &grundy.coloring.classes {
            scale *= eps;
            for v in class.iter() {
                w[v] = scale / class.len() as f64;
            }
        }
        let d = Distribution::normalized(w)?;
        if chi_h(g, &d, caps)? == grundy.number {
            return Ok(MaxChiH {
                value: grundy.number,
                grundy_coloring: grundy.coloring,
                witness: Some(d),
                epsilon: Some(eps),
                verified: true,
            });
        }
    }
    Ok(MaxChiH {
        value: grundy.number,
        grundy_coloring: grundy.coloring,
        witness: None,
        epsilon: None,
        verified: false,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KneserCheck {
    pub v: usize,
    pub r: usize,
    pub chi: usize,
    pub chi_h: usize,
    /// `H_χ(K_{v:r}, U)` from exact search.
    #[serde(rename = "value_bits")]
    pub value: f64,
    pub holds: bool,
}

/// Compares `χ_H(K_{v:r}, U)` with `χ(K_{v:r})`.
pub fn kneser_check(v: usize, r: usize, caps: &Caps) -> Result<KneserCheck> {
    let g = generate(&Family::Kneser(v, r))?;
    let chi = chromatic_number(&g, caps)?.chi;
    let m = min_entropy_coloring(&g, &Distribution::uniform(g.n())?, caps)?;
    Ok(KneserCheck {
        v,
        r,
        chi,
        chi_h: m.chi_h,
        value: m.value,
        holds: chi == m.chi_h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::dominates;
    use crate::prob::entropy;
    use proptest::prelude::*;

    fn gen(s: &str) -> Graph {
        generate(&s.parse().unwrap()).unwrap()
    }

    fn dist(v: &[f64]) -> Distribution {
        Distribution::normalized(v.to_vec()).unwrap()
    }

    /// Minimum entropy and fewest tied classes over every proper set
    /// partition, enumerated as restricted growth strings.
    fn exhaustive(g: &Graph, p: &Distribution) -> (f64, usize) {
        let n = g.n();
        let mut labels = vec![0usize; n];
        let mut all = Vec::new();
        fn rec(g: &Graph, p: &Distribution, labels: &mut Vec<usize>, i: usize, k: usize, all: &mut Vec<(f64, usize)>) {
            if i == labels.len() {
                if g.edges().all(|(u, v)| labels[u] != labels[v]) {
                    let c = Coloring::from_labels(labels);
                    all.push((c.entropy(p), c.num_colors()));
                }
                return;
            }
            for c in 0..=k {
                labels[i] = c;
                rec(g, p, labels, i + 1, k.max(c + 1), all);
            }
        }
        rec(g, p, &mut labels, 0, 0, &mut all);
        let best = all.iter().map(|x| x.0).fold(f64::INFINITY, f64::min);
        let k = all.iter().filter(|x| x.0 <= best + TIE_TOL).map(|x| x.1).min().unwrap();
        (best, k)
    }

    #[test]
    fn c5_examples() {
        let caps = Caps::default();
        let g = gen("cycle 5");
        let r = min_entropy_coloring(&g, &Distribution::uniform(5).unwrap(), &caps).unwrap();
        let mut sizes: Vec<usize> = r.coloring.classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 2]);
        assert!((r.value - entropy(&dist(&[0.4, 0.4, 0.2]))).abs() < 1e-12);
        assert!((r.value - 1.52193).abs() < 1e-5);

        let p = dist(&[0.3, 0.2, 0.2, 0.1, 0.2]);
        let r = min_entropy_coloring(&g, &p, &caps).unwrap();
        assert_eq!(
            r.coloring.classes,
            vec![VertexSet(0b00101), VertexSet(0b10010), VertexSet(0b01000)]
        );
        assert!((r.value - 1.36096).abs() < 1e-5);
    }

    #[test]
    fn star_example() {
        let mut w = vec![1.0 / 14.0; 8];
        w[0] = 0.5;
        let r = min_entropy_coloring(&gen("star 7"), &dist(&w), &Caps::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert_eq!(r.chi_h, 2);
    }

    #[test]
    fn chi_h_examples() {
        let caps = Caps::default();
        let p = dist(&[0.4, 0.05, 0.05, 0.4, 0.05, 0.05]);
        assert_eq!(chi_h(&gen("cycle 6"), &p, &caps).unwrap(), 3);
        let p = dist(&[0.1, 0.5, 0.15, 0.25]);
        assert_eq!(chi_h(&gen("complete 4"), &p, &caps).unwrap(), 4);
        let k = kneser_check(5, 2, &caps).unwrap();
        assert_eq!((k.chi, k.chi_h), (3, 3));
        assert!(k.holds);
        assert!(kneser_check(4, 2, &caps).unwrap().holds);
    }

    #[test]
    fn grundy_not_always_optimal() {
        // Two Grundy colorings of C6 with the same class count but different
        // entropies.
        let g = gen("cycle 6");
        let p = dist(&[0.4, 0.05, 0.4, 0.05, 0.05, 0.05]);
        let a = Coloring::new(&g, vec![VertexSet(0b010101), VertexSet(0b101010)]).unwrap();
        let b = Coloring::new(&g, vec![VertexSet(0b001001), VertexSet(0b010010), VertexSet(0b100100)])
            .unwrap();
        assert!(a.is_grundy(&g) && b.is_grundy(&g));
        assert!(a.entropy(&p) < b.entropy(&p));
        let r = min_entropy_coloring(&g, &p, &Caps::default()).unwrap();
        assert!((r.value - a.entropy(&p)).abs() < 1e-12);
    }

    #[test]
    fn max_chi_h_examples() {
        let caps = Caps::default();
        for (s, want) in [("cycle 6", 3), ("complete 3", 3), ("path 4", 3)] {
            let r = max_chi_h(&gen(s), &caps).unwrap();
            assert_eq!(r.value, want, "{s}");
            assert!(r.verified, "{s}");
            let w = r.witness.unwrap();
            assert_eq!(chi_h(&gen(s), &w, &caps).unwrap(), want);
        }
    }

    fn arb_instance() -> impl Strategy<Value = (Graph, Distribution)> {
        (2usize..=8).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                proptest::collection::vec(any::<bool>(), pairs),
                proptest::collection::vec(prop_oneof![1 => Just(0.0), 4 => 0.01f64..1.0], n),
            )
                .prop_filter_map("positive mass", move |(bits, w)| {
                    let mut edges = Vec::new();
                    let mut k = 0;
                    for u in 0..n {
                        for v in u + 1..n {
                            if bits[k] {
                                edges.push((u, v));
                            }
                            k += 1;
                        }
                    }
                    let g = Graph::from_edges(n, edges).ok()?;
                    let p = Distribution::normalized(w).ok()?;
                    Some((g, p))
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]

        #[test]
        fn matches_exhaustive_partitions((g, p) in arb_instance()) {
            let r = min_entropy_coloring(&g, &p, &Caps::default()).unwrap();
            let (h, k) = exhaustive(&g, &p);
            prop_assert!((r.value - h).abs() < 1e-9, "{} vs {}", r.value, h);
            prop_assert_eq!(r.chi_h, k);
            prop_assert!(r.coloring.is_proper(&g));
            prop_assert!(r.coloring.is_grundy(&g));
            let seq = r.coloring.sequence(&p);
            prop_assert!(seq.windows(2).all(|w| w[0] >= w[1] - 1e-15));
            prop_assert!(r.chi_h <= g.max_degree() + 1);
        }

        #[test]
        fn optimum_not_dominated_by_greedy((g, p) in arb_instance()) {
            // The optimal sequence is never strictly dominated by another
            // coloring's sequence: a dominating sequence has lower entropy.
            let r = min_entropy_coloring(&g, &p, &Caps::default()).unwrap();
            let greedy = chromatic_number(&g, &Caps::default()).unwrap().coloring;
            let gs = greedy.sequence(&p);
            if dominates(&gs, &r.sequence, 1e-12) {
                prop_assert!(greedy.entropy(&p) >= r.value - 1e-9);
            }
        }
    }
}
