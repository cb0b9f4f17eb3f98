//! Factor decisions with certificates.
//!
//! The yes/no answer comes from the deficiency criterion; a "yes" is backed
//! by an explicit spanning decomposition found by exhaustive search, a "no"
//! by the witness set `S` with `i(G−S) > c·|S|`.

use std::fmt;

use serde::Serialize;

use super::deficiency::max_deficiency;
use super::matching::bipartite_max_matching;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest order for the constructive search (memo over `2^n` vertex sets).
pub const CONSTRUCT_MAX_ORDER: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FactorKind {
    /// `{K_{1,1}, …, K_{1,k}}`-factor, `k ≥ 2`.
    Star { k: usize },
    /// `{K_2, {C_k}}`-factor: components are edges or cycles. Cycles of
    /// every length `≥ 3` are admitted, which is what the criterion
    /// `i(G−S) ≤ |S|` characterises; `k ≥ 3` is carried for reporting.
    K2ck { k: usize },
}

impl FactorKind {
    pub fn star(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArgument(format!("star factor needs k >= 2, got {k}")));
        }
        Ok(FactorKind::Star { k })
    }

    pub fn k2ck(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidArgument(format!("{{K2, Ck}}-factor needs k >= 3, got {k}")));
        }
        Ok(FactorKind::K2ck { k })
    }

    /// Weight `c` of the matching criterion `i(G−S) ≤ c·|S|`.
    pub fn criterion_weight(self) -> usize {
        match self {
            FactorKind::Star { k } => k,
            FactorKind::K2ck { .. } => 1,
        }
    }
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorKind::Star { k } => write!(f, "star factor (k={k})"),
            FactorKind::K2ck { k } => write!(f, "{{K2, {{Ck}}}}-factor (k={k})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Component {
    Edge {
        vertices: [usize; 2],
    },
    /// Vertices in cyclic order.
    Cycle {
        vertices: Vec<usize>,
    },
    Star {
        center: usize,
        leaves: Vec<usize>,
    },
}

impl Component {
    pub fn vertex_set(&self) -> VertexSet {
        match self {
            Component::Edge { vertices } => VertexSet::from_slice(vertices),
            Component::Cycle { vertices } => VertexSet::from_slice(vertices),
            Component::Star { center, leaves } => {
                let mut set = VertexSet::from_slice(leaves);
                set.insert(*center);
                set
            }
        }
    }

    fn allowed_in(&self, kind: FactorKind, g: &Graph) -> bool {
        match (self, kind) {
            (Component::Edge { vertices: [u, v] }, FactorKind::K2ck { .. }) => u != v && g.has_edge(*u, *v),
            (Component::Cycle { vertices }, FactorKind::K2ck { .. }) => {
                let k = vertices.len();
                k >= 3
                    && VertexSet::from_slice(vertices).len() == k
                    && (0..k).all(|i| g.has_edge(vertices[i], vertices[(i + 1) % k]))
            }
            (Component::Star { center, leaves }, FactorKind::Star { k }) => {
                (1..=k).contains(&leaves.len())
                    && VertexSet::from_slice(leaves).len() == leaves.len()
                    && leaves.iter().all(|&l| g.has_edge(*center, l))
            }
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum FactorOutcome {
    Factor {
        components: Vec<Component>,
    },
    Refuted {
        /// The witness `S`.
        witness: VertexSet,
        /// `i(G−S)`.
        isolated: usize,
        /// `c·|S|`, which `isolated` exceeds.
        bound: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorCertificate {
    #[serde(flatten)]
    pub kind: FactorKind,
    pub exists: bool,
    #[serde(flatten)]
    pub outcome: FactorOutcome,
}

impl FactorCertificate {
    /// Re-checks the certificate against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidArgument(format!("invalid certificate: {msg}")));
        match &self.outcome {
            FactorOutcome::Factor { components } => {
                let mut covered = 0u64;
                for c in components {
                    let set = c.vertex_set();
                    if set.0 & covered != 0 {
                        return fail(format!("component {c:?} overlaps another"));
                    }
                    if !c.allowed_in(self.kind, g) {
                        return fail(format!("component {c:?} not allowed in {}", self.kind));
                    }
                    covered |= set.0;
                }
                if covered != g.vertices().0 {
                    return fail("components do not cover every vertex".into());
                }
            }
            FactorOutcome::Refuted { witness, isolated, bound } => {
                let actual = g.isolated_after_removal(*witness);
                let c = self.kind.criterion_weight();
                if actual != *isolated || *bound != c * witness.len() || actual <= *bound {
                    return fail(format!("witness {witness:?} gives i(G-S) = {actual}, c|S| = {}", c * witness.len()));
                }
            }
        }
        Ok(())
    }
}

pub fn has_k2_ck_factor(g: &Graph, k: usize) -> Result<FactorCertificate> {
    decide(g, FactorKind::k2ck(k)?)
}

pub fn has_star_factor(g: &Graph, k: usize) -> Result<FactorCertificate> {
    decide(g, FactorKind::star(k)?)
}

fn decide(g: &Graph, kind: FactorKind) -> Result<FactorCertificate> {
    let c = kind.criterion_weight();
    let d = max_deficiency(g, c)?;
    if d.value > 0 {
        return Ok(FactorCertificate {
            kind,
            exists: false,
            outcome: FactorOutcome::Refuted {
                witness: d.witness,
                isolated: d.isolated.len(),
                bound: c * d.witness.len(),
            },
        });
    }
    let found = match kind {
        FactorKind::K2ck { .. } => two_matching_factor(g)?,
        FactorKind::Star { .. } => find_factor(g, kind)?,
    };
    match found {
        Some(components) => Ok(FactorCertificate { kind, exists: true, outcome: FactorOutcome::Factor { components } }),
        None => Err(Error::InvalidArgument(format!("criterion admits a {kind} but the exhaustive search found none"))),
    }
}

/// `{K2, {Ck}}`-factor from a perfect matching of the bipartite double
/// cover: the matching is a permutation `σ` with `σ(v) ~ v`, whose
/// 2-cycles are edges and whose longer cycles are cycles of `G`. Works for
/// any order.
pub fn two_matching_factor(g: &Graph) -> Result<Option<Vec<Component>>> {
    let n = g.n();
    let arcs: Vec<(usize, usize)> = g.edges().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
    let matching = bipartite_max_matching(n, n, &arcs)?;
    if matching.size < n {
        return Ok(None);
    }
    let mut successor = vec![0; n];
    for &(l, r) in &matching.pairs {
        successor[l] = r;
    }
    let mut seen = VertexSet::EMPTY;
    let mut components = Vec::new();
    for start in 0..n {
        if seen.contains(start) {
            continue;
        }
        let mut orbit = vec![start];
        seen.insert(start);
        let mut v = successor[start];
        while v != start {
            orbit.push(v);
            seen.insert(v);
            v = successor[v];
        }
        components.push(match orbit[..] {
            [u, v] => Component::Edge { vertices: [u, v] },
            _ => Component::Cycle { vertices: orbit },
        });
    }
    Ok(Some(components))
}

/// Exhaustive search for a factor of the given kind with the fewest
/// components, independent of the deficiency criterion.
pub fn find_factor(g: &Graph, kind: FactorKind) -> Result<Option<Vec<Component>>> {
    let n = g.n();
    if n > CONSTRUCT_MAX_ORDER {
        return Err(Error::TooLarge { what: "constructive factor search", n, max: CONSTRUCT_MAX_ORDER });
    }
    let mut search = FactorSearch { g, kind, memo: vec![UNKNOWN; 1 << n] };
    let full = g.vertices().0;
    if search.min_components(full) == INFEASIBLE {
        return Ok(None);
    }
    let mut components = Vec::new();
    let mut rest = full;
    while rest != 0 {
        let need = search.min_components(rest) - 1;
        let chosen = search
            .candidates(rest)
            .into_iter()
            .find(|c| search.min_components(rest & !c.vertex_set().0) == need)
            .expect("memo is consistent");
        rest &= !chosen.vertex_set().0;
        components.push(chosen);
    }
    Ok(Some(components))
}

const UNKNOWN: u8 = 254;
const INFEASIBLE: u8 = 255;

struct FactorSearch<'a> {
    g: &'a Graph,
    kind: FactorKind,
    memo: Vec<u8>,
}

impl FactorSearch<'_> {
    fn min_components(&mut self, rest: u64) -> u8 {
        if rest == 0 {
            return 0;
        }
        let cached = self.memo[rest as usize];
        if cached != UNKNOWN {
            return cached;
        }
        let mut best = INFEASIBLE;
        for c in self.candidates(rest) {
            let sub = self.min_components(rest & !c.vertex_set().0);
            if sub != INFEASIBLE {
                best = best.min(sub + 1);
            }
        }
        self.memo[rest as usize] = best;
        best
    }

    /// Components inside `rest` that contain its lowest vertex, in a fixed
    /// order: edges and stars before cycles, shorter cycles first.
    fn candidates(&self, rest: u64) -> Vec<Component> {
        let v = rest.trailing_zeros() as usize;
        let nbrs = self.g.neighbors(v).0 & rest;
        let mut out = Vec::new();
        match self.kind {
            FactorKind::K2ck { .. } => {
                for u in VertexSet(nbrs).iter() {
                    out.push(Component::Edge { vertices: [v, u] });
                }
                for len in 3..=rest.count_ones() as usize {
                    let mut path = vec![v];
                    self.cycles_through(rest, len, &mut path, &mut out);
                }
            }
            FactorKind::Star { k } => {
                for leaves in submasks_up_to(nbrs, k) {
                    out.push(Component::Star { center: v, leaves: VertexSet(leaves).to_vec() });
                }
                // v as a leaf of a larger star; single edges are covered above.
                for c in VertexSet(nbrs).iter() {
                    let others = self.g.neighbors(c).0 & rest & !(1 << v);
                    for extra in submasks_up_to(others, k - 1) {
                        let leaves = VertexSet(extra | 1 << v).to_vec();
                        out.push(Component::Star { center: c, leaves });
                    }
                }
            }
        }
        out
    }

    fn cycles_through(&self, rest: u64, k: usize, path: &mut Vec<usize>, out: &mut Vec<Component>) {
        let last = *path.last().unwrap();
        if path.len() == k {
            if self.g.has_edge(last, path[0]) && path[1] < path[k - 1] {
                out.push(Component::Cycle { vertices: path.clone() });
            }
            return;
        }
        let used = VertexSet::from_slice(path).0;
        for u in VertexSet(self.g.neighbors(last).0 & rest & !used).iter() {
            path.push(u);
            self.cycles_through(rest, k, path, out);
            path.pop();
        }
    }
}

/// Nonempty submasks of `mask` with at most `k` bits, in increasing order.
fn submasks_up_to(mask: u64, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut sub = mask;
    while sub != 0 {
        if sub.count_ones() as usize <= k {
            out.push(sub);
        }
        sub = (sub - 1) & mask;
    }
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::SplitGraphSpec;
    use crate::graph::{complete, cycle, disjoint_union, star};

    #[test]
    fn five_cycle_is_its_own_factor() {
        let c5 = cycle(5).unwrap();
        let cert = has_k2_ck_factor(&c5, 5).unwrap();
        assert!(cert.exists);
        match &cert.outcome {
            FactorOutcome::Factor { components } => {
                assert_eq!(components.len(), 1);
                assert!(matches!(&components[0], Component::Cycle { vertices } if vertices.len() == 5));
            }
            other => panic!("{other:?}"),
        }
        cert.validate(&c5).unwrap();
        // The criterion does not depend on k, and neither does the search.
        assert_eq!(has_k2_ck_factor(&c5, 3).unwrap().outcome, cert.outcome);
    }

    #[test]
    fn claw_refuted() {
        let k13 = star(4).unwrap();
        for k in [3, 4, 7] {
            let cert = has_k2_ck_factor(&k13, k).unwrap();
            assert!(!cert.exists);
            assert_eq!(
                cert.outcome,
                FactorOutcome::Refuted { witness: VertexSet::from_slice(&[0]), isolated: 3, bound: 1 }
            );
            cert.validate(&k13).unwrap();
        }
    }

    #[test]
    fn star_factors() {
        let k13 = star(4).unwrap();
        let cert = has_star_factor(&k13, 3).unwrap();
        assert_eq!(
            cert.outcome,
            FactorOutcome::Factor { components: vec![Component::Star { center: 0, leaves: vec![1, 2, 3] }] }
        );
        let k14 = star(5).unwrap();
        let cert = has_star_factor(&k14, 3).unwrap();
        assert_eq!(
            cert.outcome,
            FactorOutcome::Refuted { witness: VertexSet::from_slice(&[0]), isolated: 4, bound: 3 }
        );
        cert.validate(&k14).unwrap();
    }

    #[test]
    fn extremal_graphs_fail() {
        // main2 shape with delta = 2, n = 12.
        let g = SplitGraphSpec::new(12, 2, 3).unwrap().realize();
        for k in 3..=6 {
            assert!(!has_k2_ck_factor(&g, k).unwrap().exists);
        }
        // main3 shape with delta = 1, k = 2, n = 12.
        let g = SplitGraphSpec::new(12, 1, 3).unwrap().realize();
        let cert = has_star_factor(&g, 2).unwrap();
        assert!(!cert.exists);
        cert.validate(&g).unwrap();
    }

    #[test]
    fn validation_catches_bad_certificates() {
        let g = disjoint_union(&complete(2), &complete(2)).unwrap();
        let bad = FactorCertificate {
            kind: FactorKind::K2ck { k: 3 },
            exists: true,
            outcome: FactorOutcome::Factor { components: vec![Component::Edge { vertices: [0, 1] }] },
        };
        assert!(bad.validate(&g).is_err());
        let wrong_edge = FactorCertificate {
            outcome: FactorOutcome::Factor {
                components: vec![Component::Edge { vertices: [0, 2] }, Component::Edge { vertices: [1, 3] }],
            },
            ..bad.clone()
        };
        assert!(wrong_edge.validate(&g).is_err());
        let good = FactorCertificate {
            outcome: FactorOutcome::Factor {
                components: vec![Component::Edge { vertices: [0, 1] }, Component::Edge { vertices: [2, 3] }],
            },
            ..bad
        };
        good.validate(&g).unwrap();
        let fake_refutation = FactorCertificate {
            kind: FactorKind::Star { k: 2 },
            exists: false,
            outcome: FactorOutcome::Refuted { witness: VertexSet::EMPTY, isolated: 0, bound: 0 },
        };
        assert!(fake_refutation.validate(&g).is_err());
    }

    #[test]
    fn argument_checks() {
        assert!(has_k2_ck_factor(&complete(3), 2).is_err());
        assert!(has_star_factor(&complete(3), 1).is_err());
        assert!(find_factor(&complete(13), FactorKind::Star { k: 2 }).is_err());
        assert_eq!(find_factor(&Graph::empty(0), FactorKind::Star { k: 2 }).unwrap(), Some(vec![]));
    }

    #[test]
    fn submask_order() {
        assert_eq!(submasks_up_to(0b1011, 2), vec![0b1, 0b10, 0b11, 0b1000, 0b1001, 0b1010]);
    }
}
