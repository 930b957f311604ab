//! Graph constructions: complements, unions, substitution, products, line graphs.

use super::Graph;
use crate::config::Caps;
use crate::error::{Error, Result};

pub fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let mut out = Graph::empty(n).expect("n >= 1");
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                out.set_edge(u, v);
            }
        }
    }
    out
}

pub fn union_graphs(f: &Graph, g: &Graph) -> Result<Graph> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            actual: g.n(),
        });
    }
    let mut out = f.clone();
    for (u, v) in g.edges() {
        out.set_edge(u, v);
    }
    Ok(out)
}

/// `f` on vertices `0..f.n()` followed by `g` shifted by `f.n()`, no edges between.
pub fn disjoint_union(f: &Graph, g: &Graph) -> Graph {
    let off = f.n();
    let edges = f.edges().chain(g.edges().map(|(u, v)| (u + off, v + off)));
    Graph::from_edges(f.n() + g.n(), edges.collect::<Vec<_>>()).expect("valid edges")
}

/// Replaces vertex `v` of `g` by a copy of `f` joined to every former neighbor of `v`.
///
/// The surviving vertices of `g` keep their relative order and come first;
/// the vertices of `f` are appended in their own order.
pub fn substitute(g: &Graph, v: usize, f: &Graph) -> Result<Graph> {
    if v >= g.n() {
        return Err(Error::InvalidParameter(format!(
            "vertex {v} out of range for {} vertices",
            g.n()
        )));
    }
    let kept: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &u) in kept.iter().enumerate() {
        index[u] = i;
    }
    let base = kept.len();
    let mut edges = Vec::new();
    for (a, b) in g.edges() {
        if a != v && b != v {
            edges.push((index[a], index[b]));
        }
    }
    for (a, b) in f.edges() {
        edges.push((base + a, base + b));
    }
    for u in g.neighbors(v) {
        for x in 0..f.n() {
            edges.push((index[u], base + x));
        }
    }
    Graph::from_edges(base + f.n(), edges)
}

fn product_size(sizes: &[usize], max_vertices: usize) -> Result<usize> {
    let mut total: usize = 1;
    for &s in sizes {
        total = total.saturating_mul(s);
    }
    Caps::check("power_vertices", max_vertices, total)?;
    Ok(total)
}

/// Digits of `x` in the mixed radix `sizes`, most significant first.
fn digits(mut x: usize, sizes: &[usize], out: &mut [usize]) {
    for i in (0..sizes.len()).rev() {
        out[i] = x % sizes[i];
        x /= sizes[i];
    }
}

/// Product of `factors` on row-major tuples with adjacency decided by `rule`
/// from the per-coordinate relation: 0 equal, 1 adjacent, 2 non-adjacent distinct.
fn tuple_product<F>(factors: &[&Graph], max_vertices: usize, rule: F) -> Result<Graph>
where
    F: Fn(&[u8]) -> bool,
{
    let sizes: Vec<usize> = factors.iter().map(|g| g.n()).collect();
    let total = product_size(&sizes, max_vertices)?;
    let k = factors.len();
    let tuples: Vec<Vec<usize>> = (0..total)
        .map(|x| {
            let mut d = vec![0; k];
            digits(x, &sizes, &mut d);
            d
        })
        .collect();
    let mut out = Graph::empty(total)?;
    let mut rel = vec![0u8; k];
    for x in 0..total {
        for y in x + 1..total {
            for i in 0..k {
                let (a, b) = (tuples[x][i], tuples[y][i]);
                rel[i] = if a == b {
                    0
                } else if factors[i].has_edge(a, b) {
                    1
                } else {
                    2
                };
            }
            if rule(&rel) {
                out.set_edge(x, y);
            }
        }
    }
    Ok(out)
}

/// `k`-th conormal (co-normal) power: tuples adjacent iff some coordinate pair is an edge.
pub fn conormal_power(g: &Graph, k: usize, max_vertices: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidParameter("power must be at least 1".into()));
    }
    let factors = vec![g; k];
    tuple_product(&factors, max_vertices, |rel| rel.contains(&1))
}

/// `k`-th normal power: distinct tuples adjacent iff every coordinate pair is equal or an edge.
pub fn normal_power(g: &Graph, k: usize, max_vertices: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidParameter("power must be at least 1".into()));
    }
    let factors = vec![g; k];
    tuple_product(&factors, max_vertices, |rel| !rel.contains(&2))
}

/// OR product: `(a1,a2) ~ (b1,b2)` iff `a1 ~ b1` in `g1` or `a2 ~ b2` in `g2`.
pub fn or_product(g1: &Graph, g2: &Graph, max_vertices: usize) -> Result<Graph> {
    tuple_product(&[g1, g2], max_vertices, |rel| rel.contains(&1))
}

/// A line graph together with the edge of the source graph behind each vertex.
#[derive(Debug, Clone)]
pub struct LineGraph {
    pub graph: Graph,
    /// `edges[i]` is the source edge `(u, v)`, `u < v`, represented by vertex `i`.
    pub edges: Vec<(usize, usize)>,
}

pub fn line_graph(g: &Graph) -> Result<LineGraph> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if edges.is_empty() {
        return Err(Error::Edgeless);
    }
    let m = edges.len();
    let mut out = Graph::empty(m)?;
    for i in 0..m {
        let (a, b) = edges[i];
        for j in i + 1..m {
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                out.set_edge(i, j);
            }
        }
    }
    Ok(LineGraph { graph: out, edges })
}

/// Subgraph induced on `vertices`, relabelled `0..len` in the given order.
pub fn induced_subgraph(g: &Graph, vertices: &[usize]) -> Result<Graph> {
    if let Some(&v) = vertices.iter().find(|&&v| v >= g.n()) {
        return Err(Error::InvalidParameter(format!("vertex {v} out of range")));
    }
    let mut out = Graph::empty(vertices.len())?;
    for (i, &u) in vertices.iter().enumerate() {
        for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
            if g.has_edge(u, v) {
                out.set_edge(i, j);
            }
        }
    }
    Ok(out)
}
