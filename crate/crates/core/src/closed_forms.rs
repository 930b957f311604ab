//! Closed-form graph entropies: complete, complete multipartite, bipartite
//! (Körner–Marton) and the decomposition over connected components.

use serde::{Deserialize, Serialize};

use crate::config::{Caps, SolverConfig};
use crate::corner::entropy_fw;
use crate::error::{Error, Result};
use crate::graph::{bipartition, components, induced_subgraph, Graph, VertexSet};
use crate::prob::{binary_entropy, entropy, Distribution};

/// `H_k(K_n, P) = H(P)`.
pub fn entropy_complete(p: &Distribution) -> f64 {
    entropy(p)
}

/// Entropy of the part-mass vector of a complete multipartite graph whose
/// parts are consecutive runs of the given sizes.
pub fn entropy_complete_multipartite(sizes: &[usize], p: &Distribution) -> Result<f64> {
    let n: usize = sizes.iter().sum();
    p.check_len(n)?;
    let mut masses = Vec::with_capacity(sizes.len());
    let mut start = 0;
    for &s in sizes {
        masses.push(p.probs()[start..start + s].iter().sum::<f64>());
        start += s;
    }
    Ok(entropy(&Distribution::normalized(masses)?))
}

/// One block `(D_i, U_i)` of the bipartite decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub d: VertexSet,
    pub u: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BipartiteEntropyReport {
    pub part_a: VertexSet,
    pub part_b: VertexSet,
    /// Whether `P(D)·P(B) <= P(N(D))·P(A)` for every `D ⊆ A`.
    pub condition_holds: bool,
    #[serde(rename = "value_bits")]
    pub value: f64,
    /// The greedy blocks, present when the condition fails.
    pub partition: Option<Vec<Block>>,
}

/// Relative slack for the floating-point subset comparisons.
const CMP_EPS: f64 = 1e-12;

/// `x/y > u/v` by cross-multiplication, with a small relative slack.
fn ratio_greater(x: f64, y: f64, u: f64, v: f64) -> bool {
    let lhs = x * v;
    let rhs = u * y;
    lhs > rhs + CMP_EPS * lhs.abs().max(rhs.abs())
}

fn subset_of(members: &[usize], local: u64) -> VertexSet {
    VertexSet(
        members
            .iter()
            .enumerate()
            .filter(|(k, _)| local >> k & 1 == 1)
            .fold(0u64, |m, (_, &v)| m | 1 << v),
    )
}

fn open_neighborhood(g: &Graph, d: VertexSet) -> VertexSet {
    VertexSet(d.iter().fold(0, |m, v| m | g.nbr(v)))
}

/// The bipartite theorem with `A` the smaller part (ties: the part holding vertex 0's side).
pub fn bipartite_entropy(g: &Graph, p: &Distribution, caps: &Caps) -> Result<BipartiteEntropyReport> {
    g.require_set_limit("bipartite entropy")?;
    let w = bipartition(g).ok_or(Error::NotBipartite)?;
    let (a, b) = if w.part_b.len() < w.part_a.len() {
        (w.part_b, w.part_a)
    } else {
        (w.part_a, w.part_b)
    };
    bipartite_entropy_oriented(g, p, a, b, caps)
}

/// The bipartite theorem with the condition tested on the given part `a`.
pub fn bipartite_entropy_oriented(
    g: &Graph,
    p: &Distribution,
    a: VertexSet,
    b: VertexSet,
    caps: &Caps,
) -> Result<BipartiteEntropyReport> {
    g.require_set_limit("bipartite entropy")?;
    p.check_len(g.n())?;
    if a.union(b) != g.all() || !a.intersection(b).is_empty() || !g.is_independent(a) || !g.is_independent(b) {
        return Err(Error::NotBipartite);
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    Caps::check("bipartite entropy part", caps.bipartite_entropy, a.len())?;
    let pa = p.mass(a);
    let pb = p.mass(b);
    let a_list = a.to_vec();

    let mut condition_holds = true;
    for local in 1u64..1 << a_list.len() {
        let d = subset_of(&a_list, local);
        let pd = p.mass(d);
        let pn = p.mass(open_neighborhood(g, d));
        // P(D)/P(A) <= P(N(D))/P(B)
        if ratio_greater(pd, pa, pn, pb) {
            condition_holds = false;
            break;
        }
    }
    if condition_holds {
        return Ok(BipartiteEntropyReport {
            part_a: a,
            part_b: b,
            condition_holds,
            value: binary_entropy(pa.clamp(0.0, 1.0))?,
            partition: None,
        });
    }

    let mut blocks = Vec::new();
    let mut a_rem = a;
    let mut b_rem = b;
    let mut value = 0.0;
    while !a_rem.is_empty() {
        let rem_list = a_rem.to_vec();
        // Maximize P(D)/P(N(D) ∩ B_rem); ties go to the smallest mask.
        let mut best: Option<(VertexSet, VertexSet, f64, f64)> = None;
        let mut candidates: Vec<VertexSet> =
            (1u64..1 << rem_list.len()).map(|local| subset_of(&rem_list, local)).collect();
        candidates.sort_unstable();
        for d in candidates {
            let u = open_neighborhood(g, d).intersection(b_rem);
            let (pd, pu) = (p.mass(d), p.mass(u));
            let better = match best {
                None => true,
                Some((_, _, bd, bu)) => ratio_greater(pd, pu, bd, bu),
            };
            if better {
                best = Some((d, u, pd, pu));
            }
        }
        let (d, u, pd, pu) = best.expect("A_rem nonempty");
        let mass = pd + pu;
        if mass > 0.0 {
            value += mass * binary_entropy((pd / mass).clamp(0.0, 1.0))?;
        }
        blocks.push(Block { d, u });
        a_rem = a_rem.difference(d);
        b_rem = b_rem.difference(u);
    }
    Ok(BipartiteEntropyReport {
        part_a: a,
        part_b: b,
        condition_holds,
        value,
        partition: Some(blocks),
    })
}

/// `Σ_i P(V_i) H_k(G_i, P_i)` over connected components, each solved by Frank–Wolfe.
/// Components of zero mass contribute 0.
pub fn entropy_by_components(g: &Graph, p: &Distribution, cfg: &SolverConfig) -> Result<f64> {
    p.check_len(g.n())?;
    g.require_set_limit("component decomposition")?;
    let mut total = 0.0;
    for comp in components(g) {
        let mass = p.mass(comp);
        if mass <= 0.0 {
            continue;
        }
        let verts = comp.to_vec();
        let sub = induced_subgraph(g, &verts)?;
        let local = Distribution::normalized(verts.iter().map(|&v| p.probs()[v]).collect())?;
        total += mass * entropy_fw(&sub, &local, cfg)?.result.value;
    }
    Ok(total)
}
