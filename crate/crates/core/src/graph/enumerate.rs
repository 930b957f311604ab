//! Exhaustive lists of graphs up to isomorphism for small vertex counts.
//!
//! Graphs are grown one vertex at a time from the previous level and
//! deduplicated by a canonical code: the smallest upper-triangle adjacency
//! word over all relabellings that respect a degree-based vertex partition.

use std::collections::BTreeSet;

use super::Graph;
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`nonisomorphic_graphs`].
pub const MAX_ENUMERATION_N: usize = 7;

/// Largest vertex count accepted by [`canonical_code`] (the code must fit in 64 bits).
pub const MAX_CANONICAL_N: usize = 11;

fn pair_bit(i: usize, j: usize, n: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    // Row-major index of (i, j) in the strict upper triangle.
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

fn code_under(g: &Graph, order: &[usize]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(order[i], order[j]) {
                code |= 1 << (n * (n - 1) / 2 - 1 - pair_bit(i, j, n));
            }
        }
    }
    code
}

/// Isomorphism-invariant vertex classes, ordered by their invariant.
fn cells(g: &Graph) -> Vec<Vec<usize>> {
    let deg = g.degrees();
    let mut keyed: Vec<((usize, Vec<usize>), usize)> = (0..g.n())
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).map(|u| deg[u]).collect();
            nd.sort_unstable();
            ((deg[v], nd), v)
        })
        .collect();
    keyed.sort();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..keyed.len() {
        if i > 0 && keyed[i].0 == keyed[i - 1].0 {
            out.last_mut().expect("nonempty").push(keyed[i].1);
        } else {
            out.push(vec![keyed[i].1]);
        }
    }
    out
}

fn for_each_permutation(items: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        for_each_permutation(items, k + 1, f);
        items.swap(k, i);
    }
}

fn search(g: &Graph, cells: &mut [Vec<usize>], idx: usize, prefix: &mut Vec<usize>, best: &mut u64) {
    if idx == cells.len() {
        *best = (*best).min(code_under(g, prefix));
        return;
    }
    let mut cell = cells[idx].clone();
    for_each_permutation(&mut cell, 0, &mut |perm| {
        let len = prefix.len();
        prefix.extend_from_slice(perm);
        search(g, cells, idx + 1, prefix, best);
        prefix.truncate(len);
    });
}

/// A code equal for two graphs iff they are isomorphic. Requires `n <= 11`.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    if g.n() > MAX_CANONICAL_N {
        return Err(Error::CapExceeded {
            what: "canonical code",
            limit: MAX_CANONICAL_N,
            actual: g.n(),
        });
    }
    let mut cells = cells(g);
    let mut best = u64::MAX;
    search(g, &mut cells, 0, &mut Vec::with_capacity(g.n()), &mut best);
    Ok(best)
}

fn from_code(n: usize, code: u64) -> Graph {
    let total = n * (n - 1) / 2;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if code >> (total - 1 - pair_bit(i, j, n)) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid code")
}

/// One representative of every isomorphism class of graphs on `n` vertices,
/// in increasing canonical-code order. Requires `1 <= n <= 7`.
pub fn nonisomorphic_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(Error::InvalidParameter(format!(
            "graph enumeration supports 1..={MAX_ENUMERATION_N} vertices, got {n}"
        )));
    }
    let mut level: Vec<Graph> = vec![Graph::empty(1)?];
    for m in 2..=n {
        let mut codes = BTreeSet::new();
        for g in &level {
            for nbrs in 0..1u64 << (m - 1) {
                let mut edges: Vec<(usize, usize)> = g.edges().collect();
                edges.extend((0..m - 1).filter(|&u| nbrs >> u & 1 == 1).map(|u| (u, m - 1)));
                let h = Graph::from_edges(m, edges)?;
                codes.insert(canonical_code(&h)?);
            }
        }
        level = codes.into_iter().map(|c| from_code(m, c)).collect();
    }
    Ok(level)
}

/// All graphs on `1..=max_n` vertices up to isomorphism, smaller `n` first.
pub fn nonisomorphic_graphs_up_to(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(nonisomorphic_graphs(n)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complement, generate};

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| nonisomorphic_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
        assert!(nonisomorphic_graphs(8).is_err());
    }

    #[test]
    fn canonical_code_is_invariant() {
        let c5 = generate(&"cycle 5".parse().unwrap()).unwrap();
        // C5 is self-complementary.
        assert_eq!(canonical_code(&c5).unwrap(), canonical_code(&complement(&c5)).unwrap());
        let p4 = generate(&"path 4".parse().unwrap()).unwrap();
        let relabelled = Graph::from_edges(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_code(&p4).unwrap(), canonical_code(&relabelled).unwrap());
        let star = generate(&"star 3".parse().unwrap()).unwrap();
        assert_ne!(canonical_code(&p4).unwrap(), canonical_code(&star).unwrap());
    }
}
