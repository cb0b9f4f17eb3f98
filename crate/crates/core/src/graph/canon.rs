//! Canonical forms of small graphs by exhaustive permutation search.
//!
//! The canonical form is the lexicographically smallest upper-triangle
//! adjacency bitstring (graph6 bit order: pairs `(i, j)`, `i < j`, sorted by
//! `j` then `i`) over all vertex relabellings. Branch and bound on the
//! bitstring prefix plus twin pruning keep the scan cheap for `n <= 8`.

use serde::Serialize;

use super::{Graph, VertexSet};
use crate::error::{Error, Result};

pub const CANON_MAX_ORDER: usize = 8;

/// Canonical bitstring, first pair in the most significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: u64,
}

impl CanonicalForm {
    pub fn to_graph(self) -> Graph {
        let total = self.n * self.n.saturating_sub(1) / 2;
        let mut g = Graph::empty(self.n);
        let mut k = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.bits >> (total - 1 - k) & 1 == 1 {
                    g.add_edge(i, j).expect("in range");
                }
                k += 1;
            }
        }
        g
    }

    /// The bitstring as `'0'`/`'1'` characters.
    pub fn bitstring(self) -> String {
        let total = self.n * self.n.saturating_sub(1) / 2;
        (0..total).map(|k| if self.bits >> (total - 1 - k) & 1 == 1 { '1' } else { '0' }).collect()
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    let n = g.n();
    if n > CANON_MAX_ORDER {
        return Err(Error::TooLarge { what: "canonical form", n, max: CANON_MAX_ORDER });
    }
    let total = n * n.saturating_sub(1) / 2;
    let mut search = Search { g, total, perm: Vec::with_capacity(n), best: None };
    search.descend(0, VertexSet::full(n), 0);
    Ok(CanonicalForm { n, bits: search.best.unwrap_or(0) })
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

struct Search<'a> {
    g: &'a Graph,
    total: usize,
    perm: Vec<usize>,
    best: Option<u64>,
}

impl Search<'_> {
    fn column(&self, v: usize) -> u64 {
        self.perm.iter().fold(0u64, |acc, &u| acc << 1 | self.g.has_edge(u, v) as u64)
    }

    fn descend(&mut self, depth: usize, unused: VertexSet, prefix: u64) {
        let n = self.g.n();
        if depth == n {
            if self.best.is_none_or(|b| prefix < b) {
                self.best = Some(prefix);
            }
            return;
        }
        let len = depth * depth.saturating_sub(1) / 2 + depth;
        let mut candidates: Vec<(u64, usize)> = Vec::with_capacity(unused.len());
        let mut tried = VertexSet::EMPTY;
        for v in unused.iter() {
            // Twins are interchangeable: swapping them is an automorphism.
            let twin = tried.iter().any(|u| self.are_twins(u, v));
            if twin {
                continue;
            }
            tried.insert(v);
            candidates.push((self.column(v), v));
        }
        candidates.sort_unstable();
        for (col, v) in candidates {
            let next = prefix << depth | col;
            if let Some(best) = self.best {
                let best_prefix = if self.total == 0 { 0 } else { best >> (self.total - len) };
                if next > best_prefix {
                    continue;
                }
            }
            self.perm.push(v);
            let mut rest = unused;
            rest.0 &= !(1 << v);
            self.descend(depth + 1, rest, next);
            self.perm.pop();
        }
    }

    fn are_twins(&self, u: usize, v: usize) -> bool {
        let rows = self.g.rows();
        rows[u] & !(1 << v) == rows[v] & !(1 << u)
    }
}
