use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::Coloring;
use crate::config::Caps;
use crate::error::Result;
use crate::graph::{maximal_independent_sets_in, Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrundyNumber {
    pub number: usize,
    /// A Grundy coloring with `number` classes, in Grundy order.
    pub coloring: Coloring,
}

/// The Grundy number Γ(G).
///
/// A Grundy coloring is a sequence of classes each maximal independent in
/// the graph left after removing the earlier ones, so
/// `Γ(S) = max over maximal independent M of G[S] of 1 + Γ(S \ M)`,
/// memoized over vertex subsets.
pub fn grundy_number(g: &Graph, caps: &Caps) -> Result<GrundyNumber> {
    Caps::check("grundy number", caps.grundy, g.n())?;
    g.require_set_limit("grundy number")?;
    let mut memo = HashMap::new();
    let number = gamma(g, g.all().0, &mut memo);
    let mut classes = Vec::with_capacity(number);
    let mut rest = g.all().0;
    while rest != 0 {
        let (_, m) = memo[&rest];
        classes.push(VertexSet(m));
        rest &= !m;
    }
    Ok(GrundyNumber {
        number,
        coloring: Coloring { classes },
    })
}

fn gamma(g: &Graph, s: u64, memo: &mut HashMap<u64, (usize, u64)>) -> usize {
    if s == 0 {
        return 0;
    }
    if let Some(&(k, _)) = memo.get(&s) {
        return k;
    }
    // No Grundy coloring of G[S] uses more than Δ(G[S]) + 1 colors.
    let cap = VertexSet(s)
        .iter()
        .map(|v| (g.nbr(v) & s).count_ones() as usize)
        .max()
        .unwrap_or(0)
        + 1;
    let mut best = (0, 0);
    for m in maximal_independent_sets_in(g, VertexSet(s)) {
        let k = 1 + gamma(g, s & !m.0, memo);
        if k > best.0 {
            best = (k, m.0);
            if k == cap {
                break;
            }
        }
    }
    memo.insert(s, best);
    best.0
}
