//! Split graphs `K_s ∨ (K_{n−s−t} + tK_1)` and the theorem thresholds.
//!
//! All three extremal families share this shape and differ only in `t`:
//!
//! | family  | property                              | `t`       | order bound                          |
//! |---------|---------------------------------------|-----------|--------------------------------------|
//! | `main1` | `2μ_f(G) > n − k`                     | `δ + k`   | `n ≥ max{6δ+5k+1, 5δ+k²+4k+1}`       |
//! | `main2` | `{K2, {Ck}}`-factor                   | `δ + 1`   | `n ≥ 5δ + 6`                         |
//! | `main3` | `{K_{1,1}, …, K_{1,k}}`-factor        | `kδ + 1`  | `n ≥ 3(k+1)δ + 5`                    |
//!
//! Vertex labels are fixed: the join clique is `0..s`, the inner clique
//! `s..n−t`, the independent vertices `n−t..n`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{complete, disjoint_union, join, Graph, VertexSet};
use crate::spectral::{
    perron_vector_orbits, quotient_matrix, quotient_spectral_radius, spectral_radius, PerronOrbits, PowerOptions,
};

/// Agreement required between the direct eigensolve and the quotient root.
pub const THRESHOLD_AGREEMENT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SplitGraphSpec {
    n: usize,
    s: usize,
    t: usize,
}

impl SplitGraphSpec {
    /// Requires `t ≥ 1` and `s + t ≤ n`; the inner clique may be empty.
    pub fn new(n: usize, s: usize, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidArgument("split graph needs t >= 1".into()));
        }
        if s + t > n {
            return Err(Error::InvalidArgument(format!("split graph needs s + t <= n, got s={s} t={t} n={n}")));
        }
        if n > crate::graph::MAX_ORDER {
            return Err(Error::TooLarge { what: "split graph", n, max: crate::graph::MAX_ORDER });
        }
        Ok(SplitGraphSpec { n, s, t })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Order of the inner clique, `n − s − t`.
    pub fn clique_size(&self) -> usize {
        self.n - self.s - self.t
    }

    /// Join clique, inner clique, independent vertices.
    pub fn orbits(&self) -> [VertexSet; 3] {
        let inner_end = self.n - self.t;
        [VertexSet::range(0, self.s), VertexSet::range(self.s, inner_end), VertexSet::range(inner_end, self.n)]
    }

    pub fn realize(&self) -> Graph {
        let inner = disjoint_union(&complete(self.clique_size()), &Graph::empty(self.t)).expect("n <= 64");
        join(&complete(self.s), &inner).expect("n <= 64")
    }

    /// Exact test for `g ≅ K_s ∨ (K_{n−s−t} + tK_1)`.
    ///
    /// The universal vertices of the split graph are exactly the join
    /// clique (unless the whole graph is complete), and removing them must
    /// leave a clique plus isolated vertices of the right sizes.
    pub fn is_realized_by(&self, g: &Graph) -> bool {
        if g.n() != self.n {
            return false;
        }
        let a = self.clique_size();
        if a == 0 && self.t == 1 {
            return g.edge_count() == self.n * (self.n - 1) / 2;
        }
        let universal: VertexSet = (0..g.n()).filter(|&v| g.degree(v) + 1 == g.n()).collect();
        if universal.len() != self.s {
            return false;
        }
        let rest = g.vertices().0 & !universal.0;
        let isolated: VertexSet = VertexSet(rest).iter().filter(|&v| g.rows()[v] & rest == 0).collect();
        let core = VertexSet(rest & !isolated.0);
        let core_is_clique = core.iter().all(|v| g.rows()[v] & core.0 == core.0 & !(1 << v));
        if !core_is_clique {
            return false;
        }
        let shape = (core.len(), isolated.len());
        shape == (a, self.t) || (a == 1 && shape == (0, self.t + 1))
    }
}

impl fmt::Display for SplitGraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{} ∨ (K_{} + {}K_1)", self.s, self.clique_size(), self.t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Main1,
    Main2,
    Main3,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "main1" => Ok(Family::Main1),
            "main2" => Ok(Family::Main2),
            "main3" => Ok(Family::Main3),
            other => Err(Error::Parse(format!("unknown theorem family `{other}`"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Main1 => "main1",
            Family::Main2 => "main2",
            Family::Main3 => "main3",
        })
    }
}

/// A theorem instance: family plus `(n, δ, k)`.
///
/// For `main1`, `k` is the matching deficiency; for `main2`, the cycle
/// length (`k ≥ 3`, which does not enter the threshold); for `main3`, the
/// largest star size (`k ≥ 2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TheoremFamily {
    pub family: Family,
    pub n: usize,
    pub delta: usize,
    pub k: usize,
}

impl TheoremFamily {
    pub fn new(family: Family, n: usize, delta: usize, k: usize) -> Result<Self> {
        let min_k = match family {
            Family::Main1 => 1,
            Family::Main2 => 3,
            Family::Main3 => 2,
        };
        if k < min_k {
            return Err(Error::InvalidArgument(format!("{family} needs k >= {min_k}, got {k}")));
        }
        let tf = TheoremFamily { family, n, delta, k };
        tf.extremal_spec()?;
        Ok(tf)
    }

    /// Size of the independent part of the extremal graph.
    pub fn independent_size(family: Family, s: usize, k: usize) -> usize {
        match family {
            Family::Main1 => s + k,
            Family::Main2 => s + 1,
            Family::Main3 => k * s + 1,
        }
    }

    /// The split graph with join clique of size `s` in this family's shape.
    pub fn spec_with_join(&self, s: usize) -> Result<SplitGraphSpec> {
        SplitGraphSpec::new(self.n, s, Self::independent_size(self.family, s, self.k))
    }

    pub fn extremal_spec(&self) -> Result<SplitGraphSpec> {
        let spec = self.spec_with_join(self.delta)?;
        if spec.clique_size() == 0 {
            return Err(Error::InvalidArgument(format!(
                "order {} too small for {} with delta={} k={}",
                self.n, self.family, self.delta, self.k
            )));
        }
        Ok(spec)
    }

    pub fn order_bound(&self) -> usize {
        let (d, k) = (self.delta, self.k);
        match self.family {
            Family::Main1 => (6 * d + 5 * k + 1).max(5 * d + k * k + 4 * k + 1),
            Family::Main2 => 5 * d + 6,
            Family::Main3 => 3 * (k + 1) * d + 5,
        }
    }

    pub fn order_bound_holds(&self) -> bool {
        self.n >= self.order_bound()
    }

    /// Upper end of the join-size range covered by the comparison claims.
    pub fn claim_s_max(&self) -> usize {
        match self.family {
            Family::Main1 => (self.n - self.k) / 2,
            Family::Main2 => (self.n - 1) / 2,
            Family::Main3 => (self.n - 1) / (self.k + 1),
        }
    }

    /// Does `g` have the property this theorem guarantees above the
    /// threshold? Decided by the deficiency criteria.
    pub fn property_holds(&self, g: &Graph) -> Result<bool> {
        use crate::factors::{fractional_matching_number, max_deficiency};
        Ok(match self.family {
            Family::Main1 => fractional_matching_number(g)?.doubled > g.n().saturating_sub(self.k),
            Family::Main2 => max_deficiency(g, 1)?.value <= 0,
            Family::Main3 => max_deficiency(g, self.k)?.value <= 0,
        })
    }
}

impl fmt::Display for TheoremFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (n={}, delta={}, k={})", self.family, self.n, self.delta, self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Threshold {
    /// Largest root of the quotient characteristic polynomial.
    pub value: f64,
    pub direct: f64,
    pub direct_residual: f64,
    pub order_bound: usize,
    /// False when `n` is below the theorem's order bound; the value is
    /// still computed.
    pub order_bound_holds: bool,
}

pub fn threshold(family: &TheoremFamily) -> Result<Threshold> {
    let spec = family.extremal_spec()?;
    let quotient = quotient_spectral_radius(&quotient_matrix(&spec));
    let direct = spectral_radius(&spec.realize(), PowerOptions::default())?.into_converged()?;
    if (direct.rho - quotient).abs() >= THRESHOLD_AGREEMENT {
        return Err(Error::ThresholdMismatch { direct: direct.rho, quotient });
    }
    Ok(Threshold {
        value: quotient,
        direct: direct.rho,
        direct_residual: direct.residual,
        order_bound: family.order_bound(),
        order_bound_holds: family.order_bound_holds(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClaimEntry {
    pub s: usize,
    pub rho_prime: f64,
    pub rho_prime_quotient: f64,
    pub gap: f64,
    pub margin: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimReport {
    pub family: TheoremFamily,
    pub rho_star: f64,
    pub entries: Vec<ClaimEntry>,
    pub min_gap: Option<f64>,
    pub violations: Vec<usize>,
    pub order_bound_holds: bool,
}

/// Compares `ρ* = ρ(extremal)` with `ρ' = ρ(K_s ∨ …)` for every join size
/// `s` in `δ+1 ..= s_max`; each comparison must clear the summed residuals.
pub fn claim_inequality_sweep(family: &TheoremFamily) -> Result<ClaimReport> {
    let opts = PowerOptions::default();
    let star_spec = family.extremal_spec()?;
    let star = spectral_radius(&star_spec.realize(), opts)?.into_converged()?;
    let mut entries = Vec::new();
    for s in family.delta + 1..=family.claim_s_max() {
        let spec = family.spec_with_join(s)?;
        let prime = spectral_radius(&spec.realize(), opts)?.into_converged()?;
        let gap = star.rho - prime.rho;
        let margin = star.residual + prime.residual;
        entries.push(ClaimEntry {
            s,
            rho_prime: prime.rho,
            rho_prime_quotient: quotient_spectral_radius(&quotient_matrix(&spec)),
            gap,
            margin,
            holds: gap > margin,
        });
    }
    Ok(ClaimReport {
        family: *family,
        rho_star: star.rho,
        min_gap: entries.iter().map(|e| e.gap).reduce(f64::min),
        violations: entries.iter().filter(|e| !e.holds).map(|e| e.s).collect(),
        entries,
        order_bound_holds: family.order_bound_holds(),
    })
}

/// Residuals of the Perron eigen-equations on the three orbits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitRelations {
    /// `x3 − s·x1/ρ`.
    pub independent_from_join: f64,
    /// `ρ·x2 − (s·x1 + (a−1)·x2)`, `a` the inner clique size.
    pub clique_row: f64,
    /// `ρ·x3 − s·x1`.
    pub independent_row: f64,
    /// `x2 − ρ·x3/(ρ − (a−1))`.
    pub clique_from_independent: f64,
    /// `ρ·x1 − ((s−1)·x1 + a·x2 + t·x3)`.
    pub join_row: f64,
}

impl OrbitRelations {
    pub fn max_abs(&self) -> f64 {
        [self.independent_from_join, self.clique_row, self.independent_row, self.clique_from_independent, self.join_row]
            .iter()
            .fold(0.0f64, |m, r| m.max(r.abs()))
    }
}

pub fn orbit_relations(spec: &SplitGraphSpec, orbits: &PerronOrbits) -> OrbitRelations {
    let rho = orbits.rho;
    let (s, a, t) = (spec.s() as f64, spec.clique_size() as f64, spec.t() as f64);
    let x1 = orbits.x1.unwrap_or(0.0);
    let x2 = orbits.x2.unwrap_or(0.0);
    let x3 = orbits.x3;
    // With no join the independent vertices are isolated and the relation
    // reads 0/0.
    let clique_from_independent =
        if spec.clique_size() == 0 || spec.s() == 0 { 0.0 } else { x2 - rho * x3 / (rho - (a - 1.0)) };
    OrbitRelations {
        independent_from_join: x3 - s * x1 / rho,
        clique_row: if spec.clique_size() == 0 { 0.0 } else { rho * x2 - (s * x1 + (a - 1.0) * x2) },
        independent_row: rho * x3 - s * x1,
        clique_from_independent,
        join_row: if spec.s() == 0 { 0.0 } else { rho * x1 - ((s - 1.0) * x1 + a * x2 + t * x3) },
    }
}

/// Perron orbits of the realized spec together with their eigen-equation
/// residuals.
pub fn perron_orbit_check(spec: &SplitGraphSpec) -> Result<(PerronOrbits, OrbitRelations)> {
    let orbits = perron_vector_orbits(&spec.realize(), spec, PowerOptions::with_tol(1e-12))?;
    Ok((orbits, orbit_relations(spec, &orbits)))
}
