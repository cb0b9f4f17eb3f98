use serde::Serialize;

use super::deficiency::{max_deficiency, DEFICIENCY_MAX_ORDER};
use super::matching::bipartite_max_matching;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const BRUTE_FORCE_MAX_ORDER: usize = 10;

/// `2μ_f(G)`. Twice the fractional matching number is always an integer,
/// so it is stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FractionalMatchingNumber {
    pub doubled: usize,
}

impl FractionalMatchingNumber {
    pub fn value(self) -> f64 {
        self.doubled as f64 / 2.0
    }

    /// True for a fractional perfect matching of a graph of order `n`.
    pub fn is_perfect(self, n: usize) -> bool {
        self.doubled == n
    }
}

/// `2μ_f(G) = n − max_S (i(G−S) − |S|)` for `n ≤ 24`; above that, the
/// maximum matching of the bipartite double cover.
pub fn fractional_matching_number(g: &Graph) -> Result<FractionalMatchingNumber> {
    let doubled = if g.n() <= DEFICIENCY_MAX_ORDER {
        let d = max_deficiency(g, 1)?;
        (g.n() as i64 - d.value) as usize
    } else {
        double_cover_matching_size(g)?
    };
    Ok(FractionalMatchingNumber { doubled })
}

/// Maximum matching size of the double cover, where every edge `uv`
/// becomes `u'v''` and `v'u''`.
pub fn double_cover_matching_size(g: &Graph) -> Result<usize> {
    let edges: Vec<(usize, usize)> = g.edges().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
    Ok(bipartite_max_matching(g.n(), g.n(), &edges)?.size)
}

/// Maximises `Σ f(e)` over half-integral fractional matchings,
/// `f(e) ∈ {0, ½, 1}`, by depth-first search with a capacity bound.
/// Independent of the deficiency formula.
pub fn brute_force_mu_f(g: &Graph) -> Result<FractionalMatchingNumber> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_ORDER {
        return Err(Error::TooLarge { what: "half-integral brute force", n, max: BRUTE_FORCE_MAX_ORDER });
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    // later[i]: vertices incident to some edge with index >= i.
    let mut later = vec![0u64; edges.len() + 1];
    for i in (0..edges.len()).rev() {
        let (u, v) = edges[i];
        later[i] = later[i + 1] | 1 << u | 1 << v;
    }
    let ceiling = n - g.isolated_count();
    let mut search = HalfIntegralSearch { edges: &edges, later: &later, capacity: vec![2u8; n], best: 0, ceiling };
    search.run(0, 0);
    Ok(FractionalMatchingNumber { doubled: search.best })
}

struct HalfIntegralSearch<'a> {
    edges: &'a [(usize, usize)],
    later: &'a [u64],
    /// Remaining capacity per vertex, in halves.
    capacity: Vec<u8>,
    best: usize,
    ceiling: usize,
}

impl HalfIntegralSearch<'_> {
    /// `load` is the doubled weight assigned so far.
    fn run(&mut self, i: usize, load: usize) {
        if self.best == self.ceiling {
            return;
        }
        if i == self.edges.len() {
            self.best = self.best.max(load);
            return;
        }
        // Each unit of edge weight uses capacity at two vertices.
        let open: usize = crate::graph::VertexSet(self.later[i]).iter().map(|v| self.capacity[v] as usize).sum();
        if load + open / 2 <= self.best {
            return;
        }
        let (u, v) = self.edges[i];
        let max_w = self.capacity[u].min(self.capacity[v]);
        for w in (0..=max_w).rev() {
            self.capacity[u] -= w;
            self.capacity[v] -= w;
            self.run(i + 1, load + w as usize);
            self.capacity[u] += w;
            self.capacity[v] += w;
        }
    }
}
