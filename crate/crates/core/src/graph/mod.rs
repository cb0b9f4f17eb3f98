//! Undirected simple graphs on at most 64 vertices, stored as bitset rows.

pub mod canon;
pub mod enumerate;
pub mod io;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use canon::{canonical_form, CanonicalForm};
pub use enumerate::{enumerate_graphs, labeled_graph, labeled_graph_count, pair_count};
pub use io::{parse_edge_list, parse_graph, read_graph6, write_edge_list, write_graph6, InputFormat};

/// Largest supported order; one `u64` per adjacency row.
pub const MAX_ORDER: usize = 64;

/// A set of vertices of a graph with at most 64 vertices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_slice(vertices: &[usize]) -> Self {
        vertices.iter().copied().collect()
    }

    pub fn range(start: usize, end: usize) -> Self {
        (start..end).collect()
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Compares two sets first by size, then lexicographically on their
    /// sorted element lists.
    pub fn cmp_size_lex(self, other: VertexSet) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                std::cmp::Ordering::Equal
            } else if self.0 >> diff.trailing_zeros() & 1 == 1 {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Undirected simple graph with vertices `0..n`.
///
/// Row `i` of `adj` has bit `j` set iff `i` and `j` are adjacent. Rows are
/// kept symmetric and loop-free by every constructor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

/// Summary statistics of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub isolated_count: usize,
    pub component_count: usize,
}

/// Result of deleting a vertex set: the remaining graph and the relabelling
/// of surviving vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deletion {
    pub graph: Graph,
    /// `old_to_new[v]` is the new index of `v`, or `None` if `v` was deleted.
    pub old_to_new: Vec<Option<usize>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "graph order {n} exceeds {MAX_ORDER}");
        Graph { n, adj: vec![0; n] }
    }

    pub fn try_empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph::empty(n))
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::try_empty(n)?;
        for &(u, v) in edges {
            if g.has_edge_checked(u, v)? {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, validating symmetry and loops.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        let mask = VertexSet::full(n).0;
        for (i, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                let v = (row & !mask).trailing_zeros() as usize;
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if row >> i & 1 == 1 {
                return Err(Error::SelfLoop(i));
            }
            for j in VertexSet(row).iter() {
                if rows[j] >> i & 1 == 0 {
                    return Err(Error::InvalidArgument(format!("adjacency rows not symmetric at {i},{j}")));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    fn has_edge_checked(&self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.has_edge(u, v))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Adds the edge `uv`. Adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        Ok(())
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            let above = if u + 1 >= 64 { 0 } else { self.adj[u] >> (u + 1) << (u + 1) };
            VertexSet(above).iter().map(move |v| (u, v))
        })
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn isolated_count(&self) -> usize {
        self.adj.iter().filter(|&&r| r == 0).count()
    }

    /// Number of isolated vertices of `G - removed`.
    pub fn isolated_after_removal(&self, removed: VertexSet) -> usize {
        let keep = !removed.0;
        (0..self.n).filter(|&v| keep >> v & 1 == 1 && self.adj[v] & keep == 0).count()
    }

    /// Isolated vertices of `G - removed`, in original labels.
    pub fn isolated_set_after_removal(&self, removed: VertexSet) -> VertexSet {
        let keep = !removed.0;
        (0..self.n).filter(|&v| keep >> v & 1 == 1 && self.adj[v] & keep == 0).collect()
    }

    /// Connected components as vertex sets, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in VertexSet(frontier).iter() {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(VertexSet(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats {
            n: self.n,
            m: self.edge_count(),
            min_degree: self.min_degree(),
            max_degree: self.max_degree(),
            isolated_count: self.isolated_count(),
            component_count: self.components().len(),
        }
    }

    /// True if `self` has the same order as `other` and its edge set is a
    /// subset of `other`'s.
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.adj.iter().zip(&other.adj).all(|(a, b)| a & !b == 0)
    }

    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n).0;
        let adj = (0..self.n).map(|v| !self.adj[v] & full & !(1u64 << v)).collect();
        Graph { n: self.n, adj }
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "permutation length {} for graph of order {}",
                perm.len(),
                self.n
            )));
        }
        let image: VertexSet = perm.iter().copied().collect();
        if image != self.vertices() {
            return Err(Error::InvalidArgument("not a permutation".into()));
        }
        let mut adj = vec![0u64; self.n];
        for (u, v) in self.edges() {
            adj[perm[u]] |= 1 << perm[v];
            adj[perm[v]] |= 1 << perm[u];
        }
        Ok(Graph { n: self.n, adj })
    }

    /// `G - S` together with the old-to-new vertex map.
    pub fn induced_delete(&self, removed: &[usize]) -> Result<Deletion> {
        for &v in removed {
            self.check_vertex(v)?;
        }
        let removed = VertexSet::from_slice(removed);
        let kept: Vec<usize> = (0..self.n).filter(|&v| !removed.contains(v)).collect();
        let mut old_to_new = vec![None; self.n];
        for (new, &old) in kept.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let adj = kept
            .iter()
            .map(|&old| VertexSet(self.adj[old]).iter().filter_map(|w| old_to_new[w]).fold(0u64, |row, w| row | 1 << w))
            .collect();
        Ok(Deletion { graph: Graph { n: kept.len(), adj }, old_to_new })
    }

    /// Debug-only check of the symmetry and loop invariants.
    pub fn check_invariants(&self) -> bool {
        self.adj.len() == self.n
            && (0..self.n).all(|i| {
                self.adj[i] >> i & 1 == 0
                    && self.adj[i] & !VertexSet::full(self.n).0 == 0
                    && VertexSet(self.adj[i]).iter().all(|j| self.adj[j] >> i & 1 == 1)
            })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::TooLarge { what: "graph", n, max: MAX_ORDER })
    } else {
        Ok(())
    }
}

/// `K_n`.
pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    let full = VertexSet::full(n).0;
    for v in 0..n {
        g.adj[v] = full & !(1 << v);
    }
    g
}

/// `C_n`, vertices in cyclic order.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("cycle needs n >= 3, got {n}")));
    }
    check_order(n)?;
    let mut g = Graph::empty(n);
    for v in 0..n {
        g.add_edge(v, (v + 1) % n)?;
    }
    Ok(g)
}

/// `P_n`, vertices in path order.
pub fn path(n: usize) -> Result<Graph> {
    check_order(n)?;
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.add_edge(v - 1, v)?;
    }
    Ok(g)
}

/// `K_{1,n-1}` with center 0.
pub fn star(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("star needs n >= 2, got {n}")));
    }
    check_order(n)?;
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.add_edge(0, v)?;
    }
    Ok(g)
}

pub fn empty(n: usize) -> Graph {
    Graph::empty(n)
}

/// `g1 + g2`; vertices of `g2` are shifted by `g1.n()`.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let n = g1.n + g2.n;
    check_order(n)?;
    let mut adj = g1.adj.clone();
    adj.extend(g2.adj.iter().map(|&row| row << g1.n));
    Ok(Graph { n, adj })
}

/// `g1 ∨ g2`: disjoint union plus every edge between the two parts.
pub fn join(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let mut g = disjoint_union(g1, g2)?;
    let left = VertexSet::full(g1.n).0;
    let right = VertexSet::full(g.n).0 & !left;
    for v in 0..g1.n {
        g.adj[v] |= right;
    }
    for v in g1.n..g.n {
        g.adj[v] |= left;
    }
    Ok(g)
}
