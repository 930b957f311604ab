use serde::{Deserialize, Serialize};

use super::Coloring;
use crate::config::Caps;
use crate::error::Result;
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticNumber {
    pub chi: usize,
    pub coloring: Coloring,
}

/// Exact chromatic number by DSATUR-ordered branch and bound.
///
/// The search stops as soon as it matches a greedily found clique.
pub fn chromatic_number(g: &Graph, caps: &Caps) -> Result<ChromaticNumber> {
    Caps::check("chromatic number", caps.chromatic, g.n())?;
    g.require_set_limit("chromatic number")?;
    let n = g.n();
    let mut search = Dsatur {
        g,
        lower: greedy_clique(g),
        best: n + 1,
        best_labels: Vec::new(),
        labels: vec![usize::MAX; n],
        classes: Vec::with_capacity(n),
    };
    search.run(0);
    Ok(ChromaticNumber {
        chi: search.best,
        coloring: Coloring::from_labels(&search.best_labels),
    })
}

/// Largest clique found by growing one from every vertex, always adding the
/// candidate with most neighbors among the remaining candidates.
fn greedy_clique(g: &Graph) -> usize {
    let mut best = 0;
    for start in 0..g.n() {
        let mut size = 1;
        let mut cand = g.nbr(start);
        while cand != 0 {
            let v = VertexSet(cand)
                .iter()
                .max_by_key(|&v| ((g.nbr(v) & cand).count_ones(), std::cmp::Reverse(v)))
                .expect("nonempty");
            size += 1;
            cand &= g.nbr(v);
        }
        best = best.max(size);
    }
    best
}

struct Dsatur<'a> {
    g: &'a Graph,
    lower: usize,
    best: usize,
    best_labels: Vec<usize>,
    labels: Vec<usize>,
    classes: Vec<u64>,
}

impl Dsatur<'_> {
    /// Returns true once an optimal coloring is certified.
    fn run(&mut self, colored: usize) -> bool {
        let n = self.g.n();
        if colored == n {
            if self.classes.len() < self.best {
                self.best = self.classes.len();
                self.best_labels = self.labels.clone();
            }
            return self.best <= self.lower;
        }
        let v = self.pick();
        let nbr = self.g.nbr(v);
        for c in 0..self.classes.len() {
            if self.classes[c] & nbr == 0 {
                self.assign(v, c);
                let done = self.run(colored + 1);
                self.unassign(v, c);
                if done {
                    return true;
                }
            }
        }
        if self.classes.len() + 1 < self.best {
            self.classes.push(0);
            let c = self.classes.len() - 1;
            self.assign(v, c);
            let done = self.run(colored + 1);
            self.unassign(v, c);
            self.classes.pop();
            if done {
                return true;
            }
        }
        false
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.labels[v] = c;
        self.classes[c] |= 1 << v;
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.labels[v] = usize::MAX;
        self.classes[c] &= !(1 << v);
    }

    /// Uncolored vertex of maximum saturation, then maximum uncolored degree.
    fn pick(&self) -> usize {
        let uncolored: u64 = (0..self.g.n())
            .filter(|&v| self.labels[v] == usize::MAX)
            .fold(0, |m, v| m | 1 << v);
        VertexSet(uncolored)
            .iter()
            .max_by_key(|&v| {
                let nbr = self.g.nbr(v);
                let sat = self.classes.iter().filter(|&&c| c & nbr != 0).count();
                (sat, (nbr & uncolored).count_ones(), std::cmp::Reverse(v))
            })
            .expect("an uncolored vertex remains")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, line_graph};

    fn chi(s: &str) -> usize {
        let g = generate(&s.parse().unwrap()).unwrap();
        let r = chromatic_number(&g, &Caps::default()).unwrap();
        assert!(r.coloring.is_proper(&g));
        assert_eq!(r.coloring.num_colors(), r.chi);
        r.chi
    }

    /// Smallest k admitting a proper k-coloring, by trying every labelling.
    fn brute_chi(g: &Graph) -> usize {
        let n = g.n();
        for k in 1..=n {
            let mut labels = vec![0usize; n];
            loop {
                if g.edges().all(|(u, v)| labels[u] != labels[v]) {
                    return k;
                }
                let mut i = 0;
                while i < n && labels[i] == k - 1 {
                    labels[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                labels[i] += 1;
            }
        }
        n
    }

    #[test]
    fn known_values() {
        assert_eq!(chi("cycle 5"), 3);
        assert_eq!(chi("cycle 6"), 2);
        assert_eq!(chi("complete 4"), 4);
        assert_eq!(chi("empty 3"), 1);
        assert_eq!(chi("kneser 5 2"), 3);
        assert_eq!(chi("kneser 6 2"), 4);
        assert_eq!(chi("fig52"), 3);
    }

    #[test]
    fn matches_brute_force() {
        for s in ["petersen", "fig51", "star 4", "path 5", "complete_multipartite 2 3 1"] {
            let g = generate(&s.parse().unwrap()).unwrap();
            assert_eq!(
                chromatic_number(&g, &Caps::default()).unwrap().chi,
                brute_chi(&g),
                "{s}"
            );
        }
        let lg = line_graph(&generate(&"petersen".parse().unwrap()).unwrap()).unwrap().graph;
        // Petersen has chromatic index 4.
        assert_eq!(chromatic_number(&lg, &Caps::default()).unwrap().chi, 4);
    }

    #[test]
    fn cap_enforced() {
        let g = generate(&"cycle 10".parse().unwrap()).unwrap();
        let caps = Caps {
            chromatic: 8,
            ..Caps::default()
        };
        assert!(chromatic_number(&g, &caps).is_err());
    }
}
