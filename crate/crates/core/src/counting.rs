//! Counting bounds proved with entropy: the projection inequality for point
//! sets in three dimensions and Brégman's bound on perfect matchings.

use std::collections::HashSet;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::graph::{bipartition, Graph, VertexSet};

/// Distinct integer points in three dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[i64; 3]>", into = "Vec<[i64; 3]>")]
pub struct PointSet3D(Vec<[i64; 3]>);

impl PointSet3D {
    pub fn new(points: Vec<[i64; 3]>) -> Result<PointSet3D> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("point set is empty".into()));
        }
        let mut seen = HashSet::with_capacity(points.len());
        if let Some(p) = points.iter().find(|p| !seen.insert(**p)) {
            return Err(Error::InvalidParameter(format!("duplicate point {p:?}")));
        }
        Ok(PointSet3D(points))
    }

    pub fn points(&self) -> &[[i64; 3]] {
        &self.0
    }
}

impl TryFrom<Vec<[i64; 3]>> for PointSet3D {
    type Error = Error;

    fn try_from(v: Vec<[i64; 3]>) -> Result<Self> {
        PointSet3D::new(v)
    }
}

impl From<PointSet3D> for Vec<[i64; 3]> {
    fn from(p: PointSet3D) -> Self {
        p.0
    }
}

/// One `x y z` triple per line; blank lines and `#` comments are skipped.
impl FromStr for PointSet3D {
    type Err = Error;

    fn from_str(s: &str) -> Result<PointSet3D> {
        let mut points = Vec::new();
        for (i, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            let coords: Vec<i64> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| parse_err(format!("bad coordinate `{t}`"))))
                .collect::<Result<_>>()?;
            let [x, y, z] = coords[..] else {
                return Err(parse_err(format!("expected 3 coordinates, got {}", coords.len())));
            };
            points.push([x, y, z]);
        }
        PointSet3D::new(points)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShearerCheck {
    pub n: usize,
    /// Distinct projections onto the yz, xz and xy planes.
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    /// `n² <= n1·n2·n3`.
    pub holds: bool,
}

pub fn shearer_check(pts: &PointSet3D) -> ShearerCheck {
    let project = |drop: usize| {
        pts.0
            .iter()
            .map(|p| {
                let mut q = [0i64; 2];
                let mut k = 0;
                for (i, &c) in p.iter().enumerate() {
                    if i != drop {
                        q[k] = c;
                        k += 1;
                    }
                }
                q
            })
            .collect::<HashSet<_>>()
            .len()
    };
    let n = pts.0.len();
    let (n1, n2, n3) = (project(0), project(1), project(2));
    let lhs = (n as u128).pow(2);
    let rhs = n1 as u128 * n2 as u128 * n3 as u128;
    ShearerCheck {
        n,
        n1,
        n2,
        n3,
        holds: lhs <= rhs,
    }
}

/// The parts found by [`bipartition`]; the part holding vertex 0 comes first.
fn parts(g: &Graph) -> Result<(VertexSet, VertexSet)> {
    g.require_set_limit("perfect matching count")?;
    let w = bipartition(g).ok_or(Error::NotBipartite)?;
    Ok((w.part_a, w.part_b))
}

/// Biadjacency rows from `a` to `b`, checking that the parts are balanced
/// and that every edge crosses them.
fn biadjacency(g: &Graph, a: VertexSet, b: VertexSet, caps: &Caps) -> Result<Vec<u64>> {
    g.require_set_limit("perfect matching count")?;
    if a.union(b) != g.all() || !a.intersection(b).is_empty() {
        return Err(Error::InvalidParameter("parts must partition the vertices".into()));
    }
    if !g.is_independent(a) || !g.is_independent(b) {
        return Err(Error::NotBipartite);
    }
    if a.len() != b.len() {
        return Err(Error::Unbalanced(a.len(), b.len()));
    }
    Caps::check("perfect matching count", caps.matching_count, a.len())?;
    let cols = b.to_vec();
    Ok(a.iter()
        .map(|u| {
            cols.iter()
                .enumerate()
                .filter(|&(_, &v)| g.has_edge(u, v))
                .fold(0u64, |m, (j, _)| m | 1 << j)
        })
        .collect())
}

/// Ryser's formula over Gray-code column subsets.
fn permanent(rows: &[u64]) -> u128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    // Row sums restricted to the current column subset.
    let mut sums = vec![0i64; n];
    let mut subset = 0u64;
    let mut total: i128 = 0;
    for k in 1u64..1 << n {
        let gray = k ^ (k >> 1);
        let col = (gray ^ subset).trailing_zeros();
        let delta = if gray & 1 << col != 0 { 1 } else { -1 };
        subset = gray;
        for (s, &r) in sums.iter_mut().zip(rows) {
            if r >> col & 1 == 1 {
                *s += delta;
            }
        }
        let prod: i128 = sums.iter().map(|&s| s as i128).product();
        let sign = if (n - subset.count_ones() as usize).is_multiple_of(2) { 1 } else { -1 };
        total += sign * prod;
    }
    total as u128
}

/// Number of perfect matchings of a balanced bipartite graph.
pub fn count_perfect_matchings(g: &Graph, caps: &Caps) -> Result<u128> {
    let (a, b) = parts(g)?;
    Ok(permanent(&biadjacency(g, a, b, caps)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BregmanCheck {
    pub count: u128,
    /// `∏ (d(v)!)^{1/d(v)}` over the first part.
    pub bound: f64,
    pub holds: bool,
}

/// Brégman's bound on perfect matchings, from the degrees of the part that
/// contains vertex 0.
pub fn bregman_bound(g: &Graph, caps: &Caps) -> Result<BregmanCheck> {
    let (a, b) = parts(g)?;
    bregman_bound_parts(g, a, b, caps)
}

/// [`bregman_bound`] with the bound taken over the given part `a`.
pub fn bregman_bound_parts(
    g: &Graph,
    a: VertexSet,
    b: VertexSet,
    caps: &Caps,
) -> Result<BregmanCheck> {
    let rows = biadjacency(g, a, b, caps)?;
    if let Some(v) = a.iter().find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let bound: f64 = a
        .iter()
        .map(|v| {
            let d = g.degree(v);
            let fact: f64 = (1..=d).map(|i| i as f64).product();
            fact.powf(1.0 / d as f64)
        })
        .product();
    let count = permanent(&rows);
    Ok(BregmanCheck {
        count,
        bound,
        holds: count as f64 <= bound + 1e-9,
    })
}
