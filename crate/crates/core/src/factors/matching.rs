//! Hopcroft–Karp maximum bipartite matching.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartiteMatching {
    pub size: usize,
    /// Matched `(left, right)` pairs sorted by left vertex.
    pub pairs: Vec<(usize, usize)>,
}

const NIL: usize = usize::MAX;

pub fn bipartite_max_matching(left_n: usize, right_n: usize, edges: &[(usize, usize)]) -> Result<BipartiteMatching> {
    let mut adj = vec![Vec::new(); left_n];
    let mut seen = HashSet::with_capacity(edges.len());
    for &(l, r) in edges {
        if l >= left_n {
            return Err(Error::VertexOutOfRange { vertex: l, n: left_n });
        }
        if r >= right_n {
            return Err(Error::VertexOutOfRange { vertex: r, n: right_n });
        }
        if !seen.insert((l, r)) {
            return Err(Error::DuplicateEdge(l, r));
        }
        adj[l].push(r);
    }

    let mut match_left = vec![NIL; left_n];
    let mut match_right = vec![NIL; right_n];
    let mut dist = vec![0usize; left_n];
    let mut size = 0;
    loop {
        // BFS layers from free left vertices.
        let mut queue = VecDeque::new();
        for l in 0..left_n {
            if match_left[l] == NIL {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let next = match_right[r];
                if next == NIL {
                    found = true;
                } else if dist[next] == usize::MAX {
                    dist[next] = dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        let mut cursor = vec![0usize; left_n];
        for l in 0..left_n {
            if match_left[l] == NIL && augment(l, &adj, &mut match_left, &mut match_right, &mut dist, &mut cursor) {
                size += 1;
            }
        }
    }
    let pairs = (0..left_n).filter(|&l| match_left[l] != NIL).map(|l| (l, match_left[l])).collect();
    Ok(BipartiteMatching { size, pairs })
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    match_left: &mut [usize],
    match_right: &mut [usize],
    dist: &mut [usize],
    cursor: &mut [usize],
) -> bool {
    while cursor[l] < adj[l].len() {
        let r = adj[l][cursor[l]];
        cursor[l] += 1;
        let next = match_right[r];
        let ok =
            next == NIL || (dist[next] == dist[l] + 1 && augment(next, adj, match_left, match_right, dist, cursor));
        if ok {
            match_left[l] = r;
            match_right[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Largest matching by trying every edge subset.
    fn brute(left_n: usize, right_n: usize, edges: &[(usize, usize)]) -> usize {
        let mut best = 0;
        for mask in 0u32..1 << edges.len() {
            let (mut ul, mut ur) = (vec![false; left_n], vec![false; right_n]);
            let mut ok = true;
            for (i, &(l, r)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if ul[l] || ur[r] {
                        ok = false;
                        break;
                    }
                    ul[l] = true;
                    ur[r] = true;
                }
            }
            if ok {
                best = best.max(mask.count_ones() as usize);
            }
        }
        best
    }

    fn double_cover(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
        edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).filter(|_| n > 0).collect()
    }

    #[test]
    fn complete_bipartite() {
        let edges: Vec<_> = (0..3).flat_map(|l| (0..3).map(move |r| (l, r))).collect();
        let m = bipartite_max_matching(3, 3, &edges).unwrap();
        assert_eq!(m.size, 3);
        assert_eq!(m.pairs.len(), 3);
    }

    #[test]
    fn double_covers() {
        let c5: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        assert_eq!(bipartite_max_matching(5, 5, &double_cover(5, &c5)).unwrap().size, 5);
        let k13 = [(0, 1), (0, 2), (0, 3)];
        let dc = double_cover(4, &k13);
        assert_eq!(brute(4, 4, &dc), 2);
        assert_eq!(bipartite_max_matching(4, 4, &dc).unwrap().size, 2);
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut state = 12345u64;
        for _ in 0..200 {
            let mut edges = Vec::new();
            for l in 0..4 {
                for r in 0..5 {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if state >> 62 == 0 {
                        edges.push((l, r));
                    }
                }
            }
            let m = bipartite_max_matching(4, 5, &edges).unwrap();
            assert_eq!(m.size, brute(4, 5, &edges), "{edges:?}");
            let lefts: HashSet<_> = m.pairs.iter().map(|p| p.0).collect();
            let rights: HashSet<_> = m.pairs.iter().map(|p| p.1).collect();
            assert_eq!(lefts.len(), m.size);
            assert_eq!(rights.len(), m.size);
            assert!(m.pairs.iter().all(|p| edges.contains(p)));
        }
    }

    #[test]
    fn malformed_edges() {
        assert!(bipartite_max_matching(2, 2, &[(2, 0)]).is_err());
        assert!(bipartite_max_matching(2, 2, &[(0, 2)]).is_err());
        assert_eq!(bipartite_max_matching(2, 2, &[(0, 1), (0, 1)]), Err(Error::DuplicateEdge(0, 1)));
    }
}
