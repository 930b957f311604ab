//! Proper colorings: chromatic number, Grundy colorings, exact minimum
//! entropy colorings and the entropy bounds around them.

mod chromatic;
mod grundy;
mod min_entropy;

use serde::{Deserialize, Serialize};

use crate::config::SolverConfig;
use crate::corner::entropy_fw;
use crate::error::{Error, Result};
use crate::graph::{alpha, complement, max_weight_independent_set, Graph, VertexSet};
use crate::prob::{entropy, plogp_neg, Distribution};

pub use chromatic::{chromatic_number, ChromaticNumber};
pub use grundy::{grundy_number, GrundyNumber};
pub use min_entropy::{
    chi_h, kneser_check, max_chi_h, min_entropy_coloring, KneserCheck, MaxChiH,
    MinEntropyColoring, TIE_TOL,
};

/// An ordered partition of the vertices into independent classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub classes: Vec<VertexSet>,
}

impl Coloring {
    /// Validates that `classes` are nonempty, independent and partition `V(G)`.
    pub fn new(g: &Graph, classes: Vec<VertexSet>) -> Result<Coloring> {
        g.require_set_limit("coloring")?;
        let mut seen = VertexSet::EMPTY;
        for &c in &classes {
            if c.is_empty() {
                return Err(Error::InvalidParameter("empty color class".into()));
            }
            if !c.intersection(seen).is_empty() {
                return Err(Error::InvalidParameter("color classes overlap".into()));
            }
            if !g.is_independent(c) {
                return Err(Error::InvalidParameter(format!("class {c:?} is not independent")));
            }
            seen = seen.union(c);
        }
        if seen != g.all() {
            return Err(Error::InvalidParameter("color classes do not cover V(G)".into()));
        }
        Ok(Coloring { classes })
    }

    /// Builds a coloring from a color index per vertex.
    pub(crate) fn from_labels(labels: &[usize]) -> Coloring {
        let k = labels.iter().max().map_or(0, |&m| m + 1);
        let mut classes = vec![VertexSet::EMPTY; k];
        for (v, &c) in labels.iter().enumerate() {
            classes[c].insert(v);
        }
        classes.retain(|c| !c.is_empty());
        Coloring { classes }
    }

    pub fn num_colors(&self) -> usize {
        self.classes.len()
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        Coloring::new(g, self.classes.clone()).is_ok()
    }

    /// Whether every vertex of class `i` has a neighbor in each class `j < i`.
    pub fn is_grundy(&self, g: &Graph) -> bool {
        self.classes.iter().enumerate().all(|(i, c)| {
            c.iter()
                .all(|v| self.classes[..i].iter().all(|d| g.nbr(v) & d.0 != 0))
        })
    }

    /// Class masses in class order.
    pub fn masses(&self, p: &Distribution) -> Vec<f64> {
        self.classes.iter().map(|&c| p.mass(c)).collect()
    }

    /// The color sequence: class masses sorted nonincreasingly.
    pub fn sequence(&self, p: &Distribution) -> Vec<f64> {
        let mut c = self.masses(p);
        c.sort_by(|a, b| b.total_cmp(a));
        c
    }

    /// Entropy of the class-mass distribution, in bits.
    pub fn entropy(&self, p: &Distribution) -> f64 {
        sequence_entropy(&self.masses(p))
    }

    /// Reorders classes by nonincreasing mass, ties by mask.
    pub fn sort_by_mass(&mut self, p: &Distribution) {
        self.classes.sort_by(|&a, &b| p.mass(b).total_cmp(&p.mass(a)).then(a.cmp(&b)));
    }
}

/// `Σ -c_i log2 c_i` over a vector of masses.
pub fn sequence_entropy(c: &[f64]) -> f64 {
    c.iter().map(|&x| plogp_neg(x)).sum()
}

/// Dominance `c ⪰ d`: after sorting both nonincreasingly, every prefix sum
/// of `c` is at least the matching prefix sum of `d` (within `eps`).
pub fn dominates(c: &[f64], d: &[f64], eps: f64) -> bool {
    let sorted = |v: &[f64]| {
        let mut s = v.to_vec();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    };
    let (c, d) = (sorted(c), sorted(d));
    let (mut sc, mut sd) = (0.0, 0.0);
    for i in 0..c.len().max(d.len()) {
        sc += c.get(i).copied().unwrap_or(0.0);
        sd += d.get(i).copied().unwrap_or(0.0);
        if sc + eps < sd {
            return false;
        }
    }
    true
}

/// Clique entropy `H_ω(G,P) = H(P) − H_k(Ḡ,P)`.
pub fn clique_entropy(g: &Graph, p: &Distribution, cfg: &SolverConfig) -> Result<f64> {
    p.check_len(g.n())?;
    let hk = entropy_fw(&complement(g), p, cfg)?.result.value;
    Ok(entropy(p) - hk)
}

/// `log2(n / α(G))`, a lower bound on `H_χ(G,U)`.
pub fn chromatic_entropy_lower_bound(g: &Graph) -> Result<f64> {
    Ok((g.n() as f64 / alpha(g)? as f64).log2())
}

/// `−log2 α(G,P)`, where `α(G,P)` is the largest mass of an independent set.
pub fn independence_bound(g: &Graph, p: &Distribution) -> Result<f64> {
    p.check_len(g.n())?;
    let (_, mass) = max_weight_independent_set(g, p.probs())?;
    Ok(-mass.log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    fn gen(s: &str) -> Graph {
        generate(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn coloring_validation() {
        let g = gen("cycle 4");
        assert!(Coloring::new(&g, vec![VertexSet(0b0101), VertexSet(0b1010)]).is_ok());
        assert!(Coloring::new(&g, vec![VertexSet(0b0011), VertexSet(0b1100)]).is_err());
        assert!(Coloring::new(&g, vec![VertexSet(0b0101)]).is_err());
        let c = Coloring::from_labels(&[0, 1, 0, 1]);
        assert!(c.is_grundy(&g));
    }

    #[test]
    fn dominance_order() {
        assert!(dominates(&[0.5, 0.5], &[0.5, 0.25, 0.25], 1e-12));
        assert!(!dominates(&[0.5, 0.25, 0.25], &[0.5, 0.5], 1e-12));
        assert!(dominates(&[0.2, 0.8], &[0.6, 0.4], 1e-12));
    }

    #[test]
    fn clique_entropy_examples() {
        let cfg = SolverConfig::default();
        let u5 = Distribution::uniform(5).unwrap();
        let c5 = clique_entropy(&gen("cycle 5"), &u5, &cfg).unwrap();
        assert!((c5 - 1.0).abs() < 2.0 * cfg.tol, "{c5}");
        let p = Distribution::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let k = clique_entropy(&gen("complete 4"), &p, &cfg).unwrap();
        assert!((k - entropy(&p)).abs() < 2.0 * cfg.tol);
        let e = clique_entropy(&gen("empty 4"), &p, &cfg).unwrap();
        assert!(e.abs() < 2.0 * cfg.tol);
    }

    #[test]
    fn lower_bounds() {
        let lb = chromatic_entropy_lower_bound(&gen("cycle 5")).unwrap();
        assert!((lb - 2.5f64.log2()).abs() < 1e-12);
        let lb = chromatic_entropy_lower_bound(&gen("petersen")).unwrap();
        assert!((lb - 2.5f64.log2()).abs() < 1e-12);
        let lb = chromatic_entropy_lower_bound(&gen("complete 6")).unwrap();
        assert!((lb - 6f64.log2()).abs() < 1e-12);
        let u = Distribution::uniform(5).unwrap();
        let ib = independence_bound(&gen("cycle 5"), &u).unwrap();
        assert!((ib - 2.5f64.log2()).abs() < 1e-12);
    }
}
