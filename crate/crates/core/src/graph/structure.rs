//! Bipartiteness, matchings, cuts, bridges and components.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{Graph, VertexSet};
use crate::error::{Error, Result};

/// The two color classes of a bipartite graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartitionWitness {
    pub part_a: VertexSet,
    pub part_b: VertexSet,
}

/// BFS 2-coloring. Each component's smallest vertex goes to `part_a`.
///
/// Returns `None` when the graph has an odd cycle. Requires `n <= 64`.
pub fn bipartition(g: &Graph) -> Option<BipartitionWitness> {
    assert!(g.n() <= super::SET_LIMIT, "bipartition needs n <= 64");
    let mut side: Vec<Option<bool>> = vec![None; g.n()];
    let mut queue = VecDeque::new();
    for s in 0..g.n() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let su = side[u].expect("colored");
            for v in g.neighbors(u) {
                match side[v] {
                    None => {
                        side[v] = Some(!su);
                        queue.push_back(v);
                    }
                    Some(sv) if sv == su => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let part_b: VertexSet = (0..g.n()).filter(|&v| side[v] == Some(true)).collect();
    Some(BipartitionWitness {
        part_a: g.all().difference(part_b),
        part_b,
    })
}

/// A maximum matching of a bipartite graph, with a Hall violator when it is not perfect.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteMatching {
    /// Matched pairs `(a, b)` with `a` in `part_a`, sorted by `a`.
    pub pairs: Vec<(usize, usize)>,
    /// A set `D` inside one part with `|N(D)| < |D|`, present iff the matching is not perfect.
    pub hall_violator: Option<VertexSet>,
}

impl BipartiteMatching {
    pub fn size(&self) -> usize {
        self.pairs.len()
    }
}

fn try_augment(g: &Graph, u: usize, seen: &mut [bool], mate: &mut [Option<usize>]) -> bool {
    for v in g.neighbors(u) {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if mate[v].is_none() || try_augment(g, mate[v].unwrap(), seen, mate) {
            mate[v] = Some(u);
            mate[u] = Some(v);
            return true;
        }
    }
    false
}

/// Augmenting-path maximum matching. Errors on non-bipartite input.
pub fn maximum_matching_bipartite(g: &Graph) -> Result<BipartiteMatching> {
    g.require_set_limit("bipartite matching")?;
    let w = bipartition(g).ok_or(Error::NotBipartite)?;
    let n = g.n();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    for a in w.part_a.iter() {
        let mut seen = vec![false; n];
        try_augment(g, a, &mut seen, &mut mate);
    }
    let pairs: Vec<(usize, usize)> = w
        .part_a
        .iter()
        .filter_map(|a| mate[a].map(|b| (a, b)))
        .collect();

    let hall_violator = if 2 * pairs.len() == n {
        None
    } else {
        // Alternating search from the unmatched vertices of one side. The
        // reached vertices of that side have fewer neighbors than members.
        let side = if w.part_a.iter().any(|a| mate[a].is_none()) {
            w.part_a
        } else {
            w.part_b
        };
        let mut reached: VertexSet = side.iter().filter(|&v| mate[v].is_none()).collect();
        let mut queue: VecDeque<usize> = reached.iter().collect();
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if let Some(m) = mate[v] {
                    if !reached.contains(m) {
                        reached.insert(m);
                        queue.push_back(m);
                    }
                }
            }
        }
        Some(reached)
    };
    Ok(BipartiteMatching {
        pairs,
        hall_violator,
    })
}

pub fn has_perfect_matching_bipartite(g: &Graph) -> Result<bool> {
    Ok(maximum_matching_bipartite(g)?.hall_violator.is_none())
}

/// Open neighborhood `N(D)`.
pub(crate) fn neighborhood(g: &Graph, d: VertexSet) -> VertexSet {
    VertexSet(d.iter().fold(0, |m, v| m | g.nbr(v)))
}

/// Number of edges with exactly one endpoint in `u`.
pub fn boundary(g: &Graph, u: VertexSet) -> usize {
    u.iter().map(|v| (g.nbr(v) & !u.0).count_ones() as usize).sum()
}

/// Number of edges with both endpoints in `u`.
pub fn induced_edges(g: &Graph, u: VertexSet) -> usize {
    u.iter().map(|v| (g.nbr(v) & u.0).count_ones() as usize).sum::<usize>() / 2
}

pub fn is_k_regular(g: &Graph, k: usize) -> bool {
    (0..g.n()).all(|v| g.degree(v) == k)
}

/// Connected components sorted by mask (equivalently by smallest vertex).
pub fn components(g: &Graph) -> Vec<VertexSet> {
    assert!(g.n() <= super::SET_LIMIT, "components needs n <= 64");
    let mut left = g.all();
    let mut out = Vec::new();
    while !left.is_empty() {
        let start = left.iter().next().expect("nonempty");
        let mut comp = VertexSet::singleton(start);
        loop {
            let grown = comp.union(neighborhood(g, comp));
            if grown == comp {
                break;
            }
            comp = grown;
        }
        left = left.difference(comp);
        out.push(comp);
    }
    out
}

/// Bridges `(u, v)`, `u < v`, in lexicographic order (iterative DFS low-link).
pub fn bridges(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut out = Vec::new();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // Frames: (vertex, parent, next neighbor index).
        let mut stack = vec![(root, usize::MAX, 0usize)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(top) = stack.last_mut() {
            let (u, parent) = (top.0, top.1);
            if top.2 < adj[u].len() {
                let v = adj[u][top.2];
                top.2 += 1;
                if v == parent {
                    continue;
                }
                if disc[v] == usize::MAX {
                    disc[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    stack.push((v, u, 0));
                } else {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] > disc[parent] {
                        out.push((parent.min(u), parent.max(u)));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    fn gen(s: &str) -> Graph {
        generate(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn bipartitions() {
        let w = bipartition(&gen("cycle 4")).unwrap();
        assert_eq!((w.part_a.to_vec(), w.part_b.to_vec()), (vec![0, 2], vec![1, 3]));
        assert!(bipartition(&gen("cycle 5")).is_none());
        let w = bipartition(&gen("empty 3")).unwrap();
        assert_eq!(w.part_a.union(w.part_b), VertexSet(7));
    }

    #[test]
    fn matchings() {
        assert!(has_perfect_matching_bipartite(&gen("cycle 6")).unwrap());
        assert!(has_perfect_matching_bipartite(&gen("complete_multipartite 3 3")).unwrap());
        let star = maximum_matching_bipartite(&gen("star 3")).unwrap();
        assert_eq!(star.size(), 1);
        let d = star.hall_violator.unwrap();
        assert!(neighborhood(&gen("star 3"), d).len() < d.len());
        assert!(matches!(has_perfect_matching_bipartite(&gen("cycle 5")), Err(Error::NotBipartite)));
        // Path on 5 vertices: parts {0,2,4} and {1,3}.
        let p = gen("path 5");
        let m = maximum_matching_bipartite(&p).unwrap();
        assert_eq!(m.size(), 2);
        let d = m.hall_violator.unwrap();
        assert!(neighborhood(&p, d).len() < d.len());
    }

    #[test]
    fn cuts_and_components() {
        assert_eq!(boundary(&gen("cycle 5"), VertexSet(0b111)), 2);
        assert_eq!(induced_edges(&gen("complete 4"), VertexSet(0b1011)), 3);
        let g = crate::graph::disjoint_union(&gen("cycle 3"), &gen("path 2"));
        assert_eq!(components(&g), vec![VertexSet(0b111), VertexSet(0b11000)]);
        assert_eq!(bridges(&g), vec![(3, 4)]);
        assert_eq!(bridges(&gen("path 4")), vec![(0, 1), (1, 2), (2, 3)]);
        assert!(bridges(&gen("petersen")).is_empty());
    }
}
