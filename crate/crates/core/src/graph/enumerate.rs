//! Exhaustive enumeration of small graphs.
//!
//! Labeled graphs on `n` vertices are indexed by a code in
//! `0..2^(n(n-1)/2)`; bit `k` of the code (least significant first) is the
//! `k`-th pair in graph6 order. Isomorphism classes are produced by vertex
//! extension of the classes on `n - 1` vertices and deduplicated through
//! [`canonical_form`]; the class lists are cached per order.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rayon::prelude::*;

use super::canon::{canonical_form, CanonicalForm, CANON_MAX_ORDER};
use super::Graph;
use crate::error::{Error, Result};

pub const ENUMERATION_MAX_ORDER: usize = 8;

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Number of labeled graphs on `n` vertices, `2^(n(n-1)/2)`.
pub fn labeled_graph_count(n: usize) -> Result<u64> {
    if n > ENUMERATION_MAX_ORDER {
        return Err(Error::TooLarge { what: "exhaustive enumeration", n, max: ENUMERATION_MAX_ORDER });
    }
    Ok(1u64 << pair_count(n))
}

/// Decodes a labeled-graph code.
pub fn labeled_graph(n: usize, code: u64) -> Result<Graph> {
    let count = labeled_graph_count(n)?;
    if code >= count {
        return Err(Error::InvalidArgument(format!("graph code {code} out of range for n = {n}")));
    }
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> k & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Graph::from_rows(rows)
}

/// Every graph on `n` vertices whose minimum degree equals `min_degree`
/// (any minimum degree when `None`). With `dedup`, one representative per
/// isomorphism class is yielded, in canonical-form order.
pub fn enumerate_graphs(
    n: usize,
    min_degree: Option<usize>,
    dedup: bool,
) -> Result<Box<dyn Iterator<Item = Graph> + Send>> {
    let count = labeled_graph_count(n)?;
    let keep = move |g: &Graph| min_degree.is_none_or(|d| g.min_degree() == d);
    if dedup {
        let classes = isomorphism_classes(n)?;
        Ok(Box::new(classes.iter().map(|cf| cf.to_graph()).filter(move |g| keep(g))))
    } else {
        Ok(Box::new(
            (0..count).map(move |code| labeled_graph(n, code).expect("code in range")).filter(move |g| keep(g)),
        ))
    }
}

/// Canonical forms of all graphs on `n` vertices, sorted.
pub fn isomorphism_classes(n: usize) -> Result<&'static [CanonicalForm]> {
    if n > CANON_MAX_ORDER {
        return Err(Error::TooLarge { what: "isomorphism classes", n, max: CANON_MAX_ORDER });
    }
    static CACHE: [OnceLock<Vec<CanonicalForm>>; CANON_MAX_ORDER + 1] =
        [const { OnceLock::new() }; CANON_MAX_ORDER + 1];
    if let Some(done) = CACHE[n].get() {
        return Ok(done);
    }
    let classes = if n == 0 {
        vec![canonical_form(&Graph::empty(0))?]
    } else {
        let smaller = isomorphism_classes(n - 1)?;
        let found: BTreeSet<CanonicalForm> = smaller
            .par_iter()
            .flat_map_iter(|cf| {
                let base = cf.to_graph();
                (0u64..1 << (n - 1)).map(move |nbrs| {
                    let mut rows = base.rows().to_vec();
                    rows.push(nbrs);
                    for (v, row) in rows.iter_mut().enumerate().take(n - 1) {
                        *row |= (nbrs >> v & 1) << (n - 1);
                    }
                    canonical_form(&Graph::from_rows(rows).expect("symmetric")).expect("n <= 8")
                })
            })
            .collect();
        found.into_iter().collect()
    };
    Ok(CACHE[n].get_or_init(|| classes))
}
