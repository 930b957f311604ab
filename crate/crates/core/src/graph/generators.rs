//! Named graph families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// A generator specification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Cycle(usize),
    Complete(usize),
    CompleteMultipartite(Vec<usize>),
    /// Center 0 joined to `k` leaves `1..=k`.
    Star(usize),
    /// Kneser graph on the `r`-subsets of a `v`-set, subsets in lexicographic order.
    Kneser(usize, usize),
    Petersen,
    Path(usize),
    /// The 6-vertex bridgeless cubic graph (triangular prism).
    Fig51,
    /// The 10-vertex cubic graph with a single bridge between vertices 4 and 5.
    Fig52,
    Empty(usize),
}

impl Family {
    /// Builds a family from a name and an integer parameter list.
    pub fn from_parts(name: &str, params: &[usize]) -> Result<Family> {
        let arity = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "`{name}` takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let fam = match name {
            "cycle" => {
                arity(1)?;
                Family::Cycle(params[0])
            }
            "complete" => {
                arity(1)?;
                Family::Complete(params[0])
            }
            "complete_multipartite" | "multipartite" => {
                if params.is_empty() {
                    return Err(Error::InvalidParameter(
                        "`complete_multipartite` needs at least one part size".into(),
                    ));
                }
                Family::CompleteMultipartite(params.to_vec())
            }
            "star" => {
                arity(1)?;
                Family::Star(params[0])
            }
            "kneser" => {
                arity(2)?;
                Family::Kneser(params[0], params[1])
            }
            "petersen" => {
                arity(0)?;
                Family::Petersen
            }
            "path" => {
                arity(1)?;
                Family::Path(params[0])
            }
            "fig51" => {
                arity(0)?;
                Family::Fig51
            }
            "fig52" => {
                arity(0)?;
                Family::Fig52
            }
            "empty" => {
                arity(1)?;
                Family::Empty(params[0])
            }
            other => return Err(Error::UnknownFamily(other.to_string())),
        };
        Ok(fam)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cycle(n) => write!(f, "cycle {n}"),
            Family::Complete(n) => write!(f, "complete {n}"),
            Family::CompleteMultipartite(parts) => {
                write!(f, "complete_multipartite")?;
                for p in parts {
                    write!(f, " {p}")?;
                }
                Ok(())
            }
            Family::Star(k) => write!(f, "star {k}"),
            Family::Kneser(v, r) => write!(f, "kneser {v} {r}"),
            Family::Petersen => write!(f, "petersen"),
            Family::Path(n) => write!(f, "path {n}"),
            Family::Fig51 => write!(f, "fig51"),
            Family::Fig52 => write!(f, "fig52"),
            Family::Empty(n) => write!(f, "empty {n}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let mut words = s.split_whitespace();
        let name = words
            .next()
            .ok_or_else(|| Error::InvalidParameter("empty generator spec".into()))?;
        let params = words
            .map(|w| {
                w.parse::<usize>()
                    .map_err(|_| Error::InvalidParameter(format!("bad parameter `{w}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Family::from_parts(name, &params)
    }
}

fn need(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.into()))
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `r`-subsets of `0..v` as masks, in lexicographic order of their sorted elements.
fn combinations(v: usize, r: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(binomial(v, r));
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        out.push(idx.iter().fold(0u64, |m, &i| m | 1 << i));
        let Some(i) = (0..r).rev().find(|&i| idx[i] < v - r + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn generate(family: &Family) -> Result<Graph> {
    match *family {
        Family::Cycle(n) => {
            need(n >= 3, "cycle needs n >= 3")?;
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        Family::Complete(n) => {
            need(n >= 1, "complete needs n >= 1")?;
            Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        }
        Family::CompleteMultipartite(ref parts) => {
            need(!parts.is_empty() && parts.iter().all(|&m| m >= 1), "part sizes must be >= 1")?;
            let n: usize = parts.iter().sum();
            let mut label = Vec::with_capacity(n);
            for (i, &m) in parts.iter().enumerate() {
                label.extend(std::iter::repeat_n(i, m));
            }
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| label[u] != label[v]);
            Graph::from_edges(n, edges.collect::<Vec<_>>())
        }
        Family::Star(k) => {
            need(k >= 1, "star needs k >= 1")?;
            Graph::from_edges(k + 1, (1..=k).map(|v| (0, v)))
        }
        Family::Kneser(v, r) => {
            need(r >= 1 && v >= 2 * r, "kneser needs r >= 1 and v >= 2r")?;
            need(v <= 64, "kneser ground set must be at most 64")?;
            let sets = combinations(v, r);
            let n = sets.len();
            let edges = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|&(a, b)| sets[a] & sets[b] == 0);
            Graph::from_edges(n, edges.collect::<Vec<_>>())
        }
        Family::Petersen => {
            let mut edges = Vec::with_capacity(15);
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((5 + i, 5 + (i + 2) % 5));
            }
            Graph::from_edges(10, edges)
        }
        Family::Path(n) => {
            need(n >= 1, "path needs n >= 1")?;
            Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
        }
        Family::Fig51 => Graph::from_edges(
            6,
            [(0, 1), (1, 2), (2, 0), (0, 3), (3, 5), (5, 4), (4, 3), (4, 1), (5, 2)],
        ),
        Family::Fig52 => Graph::from_edges(
            10,
            [
                (0, 2),
                (0, 1),
                (0, 3),
                (2, 1),
                (2, 3),
                (1, 4),
                (3, 4),
                (4, 5),
                (5, 6),
                (5, 7),
                (6, 8),
                (7, 8),
                (8, 9),
                (6, 9),
                (7, 9),
            ],
        ),
        Family::Empty(n) => Graph::empty(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bridges, complement, is_k_regular};

    fn gen(s: &str) -> Graph {
        generate(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn kneser_5_2_is_petersen_like() {
        let k = gen("kneser 5 2");
        assert_eq!(k.n(), 10);
        assert_eq!(k.edge_count(), 15);
        assert!(is_k_regular(&k, 3));
        // Petersen has girth 5: no triangles, no 4-cycles.
        for u in 0..10 {
            for v in 0..10 {
                if u != v && !k.has_edge(u, v) {
                    let common = k.nbr(u) & k.nbr(v);
                    assert!(common.count_ones() <= 1);
                }
            }
        }
        let p = gen("petersen");
        assert!(is_k_regular(&p, 3));
        assert_eq!(p.edge_count(), 15);
    }

    #[test]
    fn kneser_sizes() {
        assert_eq!(gen("kneser 4 2").n(), 6);
        assert_eq!(gen("kneser 6 2").n(), 15);
        assert_eq!(gen("kneser 7 3").n(), 35);
        assert!(generate(&Family::Kneser(3, 2)).is_err());
        assert_eq!(combinations(4, 2), vec![0b11, 0b101, 0b1001, 0b110, 0b1010, 0b1100]);
    }

    #[test]
    fn fig52_has_one_bridge() {
        let g = gen("fig52");
        assert_eq!((g.n(), g.edge_count()), (10, 15));
        assert!(is_k_regular(&g, 3));
        assert_eq!(bridges(&g), vec![(4, 5)]);
    }

    #[test]
    fn fig51_is_bridgeless_cubic() {
        let g = gen("fig51");
        assert_eq!((g.n(), g.edge_count()), (6, 9));
        assert!(is_k_regular(&g, 3));
        assert!(bridges(&g).is_empty());
    }

    #[test]
    fn k22_is_c4() {
        assert_eq!(gen("complete_multipartite 2 2").edge_count(), 4);
        let c4 = gen("cycle 4");
        let k22 = gen("complete_multipartite 2 2");
        // K_{2,2} with parts {0,1},{2,3} is the cycle 0-2-1-3.
        let relabel = [0, 2, 1, 3];
        for (u, v) in c4.edges() {
            assert!(k22.has_edge(relabel[u], relabel[v]));
        }
        assert_eq!(complement(&gen("complete 4")), gen("empty 4"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("hypercube 3".parse::<Family>(), Err(Error::UnknownFamily(_))));
        assert!("cycle".parse::<Family>().is_err());
        assert!("cycle x".parse::<Family>().is_err());
        assert!(generate(&Family::Cycle(2)).is_err());
        assert_eq!("kneser 5 2".parse::<Family>().unwrap().to_string(), "kneser 5 2");
    }
}
