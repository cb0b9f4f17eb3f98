use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// The subset scan visits all `2^n` vertex sets.
pub const DEFICIENCY_MAX_ORDER: usize = 24;

const PARALLEL_FROM: usize = 14;

/// `max_S i(G−S) − c·|S|` with its lexicographically first maximiser.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeficiencyResult {
    pub value: i64,
    pub c: usize,
    /// Smallest maximiser: fewest vertices, then lexicographic.
    pub witness: VertexSet,
    /// Isolated vertices of `G − witness`.
    pub isolated: VertexSet,
}

fn deficiency_of(g: &Graph, c: i64, set: u64) -> i64 {
    g.isolated_after_removal(VertexSet(set)) as i64 - c * set.count_ones() as i64
}

/// Orders candidates so that the preferred one is the maximum.
fn preference(a: (i64, u64), b: (i64, u64)) -> Ordering {
    a.0.cmp(&b.0).then_with(|| VertexSet(b.1).cmp_size_lex(VertexSet(a.1)))
}

pub fn max_deficiency(g: &Graph, c: usize) -> Result<DeficiencyResult> {
    let n = g.n();
    if n > DEFICIENCY_MAX_ORDER {
        return Err(Error::TooLarge { what: "deficiency scan", n, max: DEFICIENCY_MAX_ORDER });
    }
    if c == 0 {
        return Err(Error::InvalidArgument("deficiency weight c must be positive".into()));
    }
    let ci = c as i64;
    let total = 1u64 << n;
    let best_in = |range: std::ops::Range<u64>| {
        range.map(|set| (deficiency_of(g, ci, set), set)).max_by(|&a, &b| preference(a, b)).expect("nonempty range")
    };
    let (value, set) = if n >= PARALLEL_FROM {
        let chunk = 1u64 << (n - 6);
        (0..total / chunk)
            .into_par_iter()
            .map(|i| best_in(i * chunk..(i + 1) * chunk))
            .max_by(|&a, &b| preference(a, b))
            .expect("nonempty")
    } else {
        best_in(0..total)
    };
    let witness = VertexSet(set);
    Ok(DeficiencyResult { value, c, witness, isolated: g.isolated_set_after_removal(witness) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::SplitGraphSpec;
    use crate::graph::{complete, cycle, disjoint_union, star};

    /// Straightforward scan over subsets listed by size then lexicographically.
    fn reference(g: &Graph, c: i64) -> (i64, Vec<usize>) {
        let n = g.n();
        let mut sets: Vec<Vec<usize>> = (0u64..1 << n).map(|m| VertexSet(m).to_vec()).collect();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        let mut best: Option<(i64, Vec<usize>)> = None;
        for s in sets {
            let d = g.induced_delete(&s).unwrap().graph.isolated_count() as i64 - c * s.len() as i64;
            if best.as_ref().is_none_or(|(v, _)| d > *v) {
                best = Some((d, s));
            }
        }
        best.unwrap()
    }

    #[test]
    fn clique_plus_isolated() {
        let g = disjoint_union(&complete(5), &Graph::empty(1)).unwrap();
        let d = max_deficiency(&g, 1).unwrap();
        assert_eq!(d.value, 1);
        assert_eq!(d.witness, VertexSet::EMPTY);
        assert_eq!(d.isolated.to_vec(), vec![5]);
    }

    #[test]
    fn extremal_main1_witness() {
        let g = SplitGraphSpec::new(10, 1, 3).unwrap().realize();
        let d = max_deficiency(&g, 1).unwrap();
        assert_eq!(d.value, 2);
        assert_eq!(d.witness.to_vec(), vec![0]);
        assert_eq!(d.isolated.to_vec(), vec![7, 8, 9]);
    }

    #[test]
    fn extremal_main3_weighted() {
        let g = SplitGraphSpec::new(14, 1, 3).unwrap().realize();
        let d = max_deficiency(&g, 2).unwrap();
        assert_eq!(d.value, 1);
        assert_eq!(d.witness.to_vec(), vec![0]);
    }

    #[test]
    fn matches_reference_scan() {
        for code in (0u64..1 << 15).step_by(211) {
            let g = crate::graph::labeled_graph(6, code).unwrap();
            for c in 1..=3 {
                let d = max_deficiency(&g, c).unwrap();
                let (v, s) = reference(&g, c as i64);
                assert_eq!((d.value, d.witness.to_vec()), (v, s), "{g:?} c={c}");
                assert_eq!(d.isolated.len() as i64 - c as i64 * d.witness.len() as i64, d.value);
            }
        }
    }

    #[test]
    fn parallel_path_agrees() {
        let g = disjoint_union(&star(9).unwrap(), &cycle(7).unwrap()).unwrap();
        let d = max_deficiency(&g, 1).unwrap();
        assert_eq!(d.value, 7);
        assert_eq!(d.witness.to_vec(), vec![0]);
    }

    #[test]
    fn limits() {
        assert!(max_deficiency(&Graph::empty(25), 1).is_err());
        assert!(max_deficiency(&complete(3), 0).is_err());
        assert_eq!(max_deficiency(&Graph::empty(0), 1).unwrap().value, 0);
    }
}
