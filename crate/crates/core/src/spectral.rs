//! Spectral radius, Perron orbit values and quotient matrices.
//!
//! The adjacency spectral radius is computed by power iteration on `A + I`
//! from the all-ones vector. The shift makes the Perron root strictly
//! dominant in modulus even for bipartite graphs, and the iteration stops
//! once the residual `‖A v − ρ v‖₂` is certified below the tolerance.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::SplitGraphSpec;
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;
/// Bound on the spread of Perron entries within one orbit.
pub const ORBIT_SPREAD_BOUND: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PowerOptions {
    fn default() -> Self {
        PowerOptions { tol: DEFAULT_TOL, max_iter: DEFAULT_MAX_ITER }
    }
}

impl PowerOptions {
    pub fn with_tol(tol: f64) -> Self {
        PowerOptions { tol, ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub rho: f64,
    pub perron: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
    /// False when `max_iter` was exhausted; the fields then hold the last
    /// iterate.
    pub converged: bool,
}

impl SpectralResult {
    pub fn into_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::Unconverged { residual: self.residual, iterations: self.iterations })
        }
    }
}

fn adjacency_mul(g: &Graph, x: &[f64], out: &mut [f64]) {
    for (v, slot) in out.iter_mut().enumerate() {
        *slot = g.neighbors(v).iter().map(|u| x[u]).sum();
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|a| a * a).sum::<f64>().sqrt()
}

pub fn spectral_radius(g: &Graph, opts: PowerOptions) -> Result<SpectralResult> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidArgument("spectral radius of the empty graph on 0 vertices".into()));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", opts.tol)));
    }
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut av = vec![0.0; n];
    let mut last = (0.0, f64::INFINITY);
    for iteration in 1..=opts.max_iter.max(1) {
        adjacency_mul(g, &v, &mut av);
        let rho: f64 = v.iter().zip(&av).map(|(a, b)| a * b).sum();
        let residual = v.iter().zip(&av).map(|(x, ax)| (ax - rho * x).powi(2)).sum::<f64>().sqrt();
        last = (rho, residual);
        if residual <= opts.tol {
            return Ok(SpectralResult { rho, perron: v, residual, iterations: iteration, converged: true });
        }
        if iteration == opts.max_iter.max(1) {
            break;
        }
        for (x, ax) in v.iter_mut().zip(&av) {
            *x += ax;
        }
        let scale = norm(&v);
        v.iter_mut().for_each(|x| *x /= scale);
    }
    Ok(SpectralResult { rho: last.0, perron: v, residual: last.1, iterations: opts.max_iter.max(1), converged: false })
}

/// `min(Δ, √(2m))`, an upper bound on the spectral radius.
pub fn spectral_radius_upper_bound(g: &Graph) -> f64 {
    (g.max_degree() as f64).min((2.0 * g.edge_count() as f64).sqrt())
}

/// Common Perron entries on the orbits of a realized split graph:
/// `x1` on the join clique, `x2` on the inner clique, `x3` on the
/// independent vertices. Empty orbits yield `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerronOrbits {
    pub rho: f64,
    pub residual: f64,
    pub x1: Option<f64>,
    pub x2: Option<f64>,
    pub x3: f64,
    pub spread: f64,
}

pub fn perron_vector_orbits(g: &Graph, spec: &SplitGraphSpec, opts: PowerOptions) -> Result<PerronOrbits> {
    if g.n() != spec.n() {
        return Err(Error::InvalidArgument(format!("graph of order {} does not match spec order {}", g.n(), spec.n())));
    }
    let result = spectral_radius(g, opts)?.into_converged()?;
    let [join, clique, indep] = spec.orbits();
    let mut spread = 0.0f64;
    let mut orbit_value = |set: VertexSet| -> Option<f64> {
        if set.is_empty() {
            return None;
        }
        let values: Vec<f64> = set.iter().map(|v| result.perron[v]).collect();
        let max = values.iter().copied().fold(f64::MIN, f64::max);
        let min = values.iter().copied().fold(f64::MAX, f64::min);
        spread = spread.max(max - min);
        Some(values.iter().sum::<f64>() / values.len() as f64)
    };
    let x1 = orbit_value(join);
    let x2 = orbit_value(clique);
    let x3 = orbit_value(indep).expect("spec has t >= 1");
    if spread >= ORBIT_SPREAD_BOUND {
        return Err(Error::OrbitSpread { spread, bound: ORBIT_SPREAD_BOUND });
    }
    Ok(PerronOrbits { rho: result.rho, residual: result.residual, x1, x2, x3, spread })
}

/// Quotient matrix of an equitable partition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuotientMatrix {
    pub entries: Vec<Vec<f64>>,
    pub part_sizes: Vec<usize>,
}

impl QuotientMatrix {
    pub fn order(&self) -> usize {
        self.entries.len()
    }

    /// Coefficients `[1, c1, .., cm]` of `det(xI − Q)`, highest degree
    /// first (Faddeev–LeVerrier).
    pub fn characteristic_polynomial(&self) -> Vec<f64> {
        let m = self.order();
        let mut coeffs = vec![1.0];
        let mut mk = vec![vec![0.0; m]; m];
        for k in 1..=m {
            // M_k = Q M_{k-1} + c_{k-1} I
            let c_prev = coeffs[k - 1];
            let mut next = vec![vec![0.0; m]; m];
            for (i, row) in next.iter_mut().enumerate() {
                for (j, cell) in row.iter_mut().enumerate() {
                    *cell = (0..m).map(|l| self.entries[i][l] * mk[l][j]).sum::<f64>();
                }
                row[i] += c_prev;
            }
            mk = next;
            let trace: f64 = (0..m).map(|i| (0..m).map(|l| self.entries[i][l] * mk[l][i]).sum::<f64>()).sum();
            coeffs.push(-trace / k as f64);
        }
        coeffs
    }
}

/// The quotient of `K_s ∨ (K_{n−s−t} + tK_1)` with respect to its three
/// orbits, `[[s−1, n−s−t, t], [s, n−s−t−1, 0], [s, 0, 0]]`, with empty
/// cells dropped.
pub fn quotient_matrix(spec: &SplitGraphSpec) -> QuotientMatrix {
    let (s, a, t) = (spec.s() as f64, spec.clique_size() as f64, spec.t() as f64);
    let full = [[s - 1.0, a, t], [s, a - 1.0, 0.0], [s, 0.0, 0.0]];
    let sizes = [spec.s(), spec.clique_size(), spec.t()];
    let live: Vec<usize> = (0..3).filter(|&i| sizes[i] > 0).collect();
    QuotientMatrix {
        entries: live.iter().map(|&i| live.iter().map(|&j| full[i][j]).collect()).collect(),
        part_sizes: live.iter().map(|&i| sizes[i]).collect(),
    }
}

/// Quotient matrix of `g` for the given partition, checking that the
/// partition is equitable.
pub fn equitable_quotient(g: &Graph, parts: &[VertexSet]) -> Result<QuotientMatrix> {
    let mut union = 0u64;
    for p in parts {
        if p.is_empty() || union & p.0 != 0 {
            return Err(Error::InvalidArgument("parts must be nonempty and disjoint".into()));
        }
        union |= p.0;
    }
    if union != g.vertices().0 {
        return Err(Error::InvalidArgument("parts do not cover the vertex set".into()));
    }
    let mut entries = vec![vec![0.0; parts.len()]; parts.len()];
    for (i, pi) in parts.iter().enumerate() {
        for (j, pj) in parts.iter().enumerate() {
            let counts: Vec<usize> = pi.iter().map(|v| (g.neighbors(v).0 & pj.0).count_ones() as usize).collect();
            if counts.iter().any(|&c| c != counts[0]) {
                return Err(Error::InvalidArgument(format!(
                    "partition is not equitable: block ({i},{j}) has row sums {counts:?}"
                )));
            }
            entries[i][j] = counts[0] as f64;
        }
    }
    Ok(QuotientMatrix { entries, part_sizes: parts.iter().map(|p| p.len()).collect() })
}

fn eval_poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, c| acc * x + c)
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    let deg = coeffs.len() - 1;
    coeffs[..deg].iter().enumerate().map(|(i, c)| c * (deg - i) as f64).collect()
}

/// Largest real eigenvalue of a nonnegative quotient matrix.
///
/// Newton's method on the characteristic polynomial from `x0 = Σ part
/// sizes`, which lies above the Perron root and gives monotone descent.
/// Falls back to bisection on `[max diagonal, x0]` if Newton leaves that
/// bracket.
pub fn quotient_spectral_radius(q: &QuotientMatrix) -> f64 {
    let coeffs = q.characteristic_polynomial();
    let lo = (0..q.order()).map(|i| q.entries[i][i]).fold(0.0f64, f64::max);
    let max_row: f64 = q.entries.iter().map(|r| r.iter().sum::<f64>()).fold(0.0, f64::max);
    let hi = (q.part_sizes.iter().sum::<usize>() as f64).max(max_row + 1.0);
    newton_from_above(&coeffs, lo, hi).unwrap_or_else(|| bisect_largest_root(&coeffs, lo, hi))
}

fn newton_from_above(coeffs: &[f64], lo: f64, hi: f64) -> Option<f64> {
    let d = derivative(coeffs);
    let mut x = hi;
    for _ in 0..500 {
        let p = eval_poly(coeffs, x);
        let dp = eval_poly(&d, x);
        if dp.is_nan() || dp <= 0.0 {
            return None;
        }
        let step = p / dp;
        if step <= 0.0 {
            return Some(x);
        }
        x -= step;
        if !x.is_finite() || x < lo - 1e-9 {
            return None;
        }
        if step <= 1e-15 * x.abs().max(1.0) {
            return Some(x);
        }
    }
    None
}

/// Bisection for the largest real root of a real-rooted polynomial. A
/// point lies above every root when all derivatives are positive there
/// (Budan–Fourier), which gives a sign-free bracketing test.
pub(crate) fn bisect_largest_root(coeffs: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut derivs = vec![coeffs.to_vec()];
    while derivs.last().unwrap().len() > 1 {
        let next = derivative(derivs.last().unwrap());
        derivs.push(next);
    }
    let above = |x: f64| derivs[..derivs.len() - 1].iter().all(|p| eval_poly(p, x) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if above(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `ρ(sub) ≤ ρ(sup)` up to the combined residuals plus `opts.tol`.
pub fn check_subgraph_monotonicity(sub: &Graph, sup: &Graph, opts: PowerOptions) -> Result<bool> {
    if !sub.is_spanning_subgraph_of(sup) {
        return Err(Error::NotNested(format!(
            "graph is not a spanning subgraph ({} vs {} vertices)",
            sub.n(),
            sup.n()
        )));
    }
    let a = spectral_radius(sub, opts)?.into_converged()?;
    let b = spectral_radius(sup, opts)?.into_converged()?;
    Ok(a.rho <= b.rho + a.residual + b.residual + opts.tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, disjoint_union, path, star};
    use std::f64::consts::PI;

    fn rho(g: &Graph) -> f64 {
        spectral_radius(g, PowerOptions::default()).unwrap().into_converged().unwrap().rho
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    #[test]
    fn known_radii() {
        assert!((rho(&complete(4)) - 3.0).abs() < 1e-10);
        assert!((rho(&star(5).unwrap()) - 2.0).abs() < 1e-10);
        assert!((rho(&disjoint_union(&complete(5), &Graph::empty(1)).unwrap()) - 4.0).abs() < 1e-10);
        assert!((rho(&cycle(6).unwrap()) - 2.0).abs() < 1e-10);
        assert!((rho(&cycle(7).unwrap()) - 2.0).abs() < 1e-10);
        assert!((rho(&petersen()) - 3.0).abs() < 1e-10);
        let p7 = 2.0 * (PI / 8.0).cos();
        assert!((rho(&path(7).unwrap()) - p7).abs() < 1e-10);
    }

    #[test]
    fn edgeless_and_invalid() {
        let r = spectral_radius(&Graph::empty(3), PowerOptions::default()).unwrap();
        assert_eq!(r.rho, 0.0);
        assert!(r.converged);
        assert!(spectral_radius(&Graph::empty(0), PowerOptions::default()).is_err());
        assert!(spectral_radius(&complete(3), PowerOptions::with_tol(0.0)).is_err());
    }

    #[test]
    fn perron_vector_is_unit_nonnegative() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5)]).unwrap();
        let r = spectral_radius(&g, PowerOptions::default()).unwrap();
        assert!(r.residual <= 1e-10);
        assert!(r.perron.iter().all(|&x| x >= 0.0));
        assert!((norm(&r.perron) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unconverged_is_flagged() {
        let r = spectral_radius(&path(9).unwrap(), PowerOptions { tol: 1e-14, max_iter: 3 }).unwrap();
        assert!(!r.converged);
        assert_eq!(r.iterations, 3);
        assert!(r.into_converged().is_err());
    }

    #[test]
    fn monotonicity() {
        let opts = PowerOptions::default();
        assert!(check_subgraph_monotonicity(&cycle(5).unwrap(), &complete(5), opts).unwrap());
        assert!(check_subgraph_monotonicity(&complete(5), &complete(5), opts).unwrap());
        assert!(check_subgraph_monotonicity(&complete(5), &cycle(5).unwrap(), opts).is_err());
        let mut sub = complete(6);
        sub.remove_edge(0, 1).unwrap();
        assert!(rho(&sub) < rho(&complete(6)) - 1e-6);
    }

    #[test]
    fn single_cell_quotient() {
        let q = QuotientMatrix { entries: vec![vec![6.0]], part_sizes: vec![7] };
        assert!((quotient_spectral_radius(&q) - 6.0).abs() < 1e-12);
        let eq = equitable_quotient(&complete(7), &[VertexSet::full(7)]).unwrap();
        assert_eq!(eq, q);
    }

    #[test]
    fn characteristic_polynomial_of_3x3() {
        let q = QuotientMatrix {
            entries: vec![vec![0.0, 8.0, 2.0], vec![1.0, 7.0, 0.0], vec![1.0, 0.0, 0.0]],
            part_sizes: vec![1, 8, 2],
        };
        let c = q.characteristic_polynomial();
        let want = [1.0, -7.0, -10.0, 14.0];
        for (a, b) in c.iter().zip(want) {
            assert!((a - b).abs() < 1e-12, "{c:?}");
        }
    }

    #[test]
    fn bisection_agrees_with_newton() {
        let coeffs = [1.0, -7.0, -10.0, 14.0];
        let newton = newton_from_above(&coeffs, 0.0, 11.0).unwrap();
        let bisect = bisect_largest_root(&coeffs, 0.0, 11.0);
        assert!((newton - bisect).abs() < 1e-12);
        assert!(eval_poly(&coeffs, newton).abs() < 1e-9);
    }

    #[test]
    fn non_equitable_partition_rejected() {
        let p = path(3).unwrap();
        assert!(equitable_quotient(&p, &[VertexSet::from_slice(&[0, 1]), VertexSet::from_slice(&[2])]).is_err());
        assert!(equitable_quotient(&p, &[VertexSet::from_slice(&[0, 2]), VertexSet::from_slice(&[1])]).is_ok());
        assert!(equitable_quotient(&p, &[VertexSet::from_slice(&[0, 2])]).is_err());
    }
}
