//! Exhaustive and sampled checks of the threshold theorems.
//!
//! Every graph `G` with `δ(G) = δ` is classified: below the threshold,
//! above it with the theorem's conclusion holding, above it and isomorphic
//! to the extremal graph, or a counterexample. Comparisons within
//! [`THRESHOLD_EPS`] of the threshold are recomputed at [`TIGHT_TOL`]
//! before a graph is classified.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::{threshold, Family, SplitGraphSpec, TheoremFamily};
use crate::factors::fractional_matching_number;
use crate::graph::canon::{canonical_form, CanonicalForm, CANON_MAX_ORDER};
use crate::graph::{labeled_graph, labeled_graph_count, write_graph6, Graph};
use crate::spectral::{spectral_radius, spectral_radius_upper_bound, PowerOptions};

pub const THRESHOLD_EPS: f64 = 1e-9;
pub const TIGHT_TOL: f64 = 1e-13;
pub const EXHAUSTIVE_MAX_ORDER: usize = 7;
/// Rejection-sampling attempts allowed per requested sample.
pub const ATTEMPTS_PER_SAMPLE: usize = 1000;
pub const EVIDENCE_LABEL: &str = "evidence, not proof";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
    Probe,
}

/// What must hold above the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    /// The theorem's own conclusion for its family.
    Theorem,
    /// `2μ_f(G) = n`; the `k = 1` corollary of `main1`.
    FractionalPerfectMatching,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphClass {
    Below,
    PropertyHolds,
    ExtremalHit,
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphRecord {
    pub graph6: String,
    /// `None` when the cheap upper bound already rules the graph out.
    pub rho: Option<f64>,
    pub property: bool,
    pub class: GraphClass,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremFamily,
    pub conclusion: Conclusion,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub order_bound: usize,
    pub order_bound_holds: bool,
    pub threshold: f64,
    pub epsilon: f64,
    pub graphs_checked: u64,
    pub above_threshold: u64,
    pub property_holders: u64,
    pub extremal_hits: u64,
    pub counterexamples: Vec<String>,
    pub interval_ambiguous: u64,
    pub unconverged: u64,
    /// Set when rejection sampling ran out of attempts.
    pub partial: bool,
    #[serde(skip)]
    pub records: Vec<GraphRecord>,
}

impl TheoremReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn counts_consistent(&self) -> bool {
        self.above_threshold == self.property_holders + self.extremal_hits + self.counterexamples.len() as u64
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Keep one [`GraphRecord`] per graph checked.
    pub record: bool,
}

/// Runs `f` on a dedicated pool when a thread count is given.
pub fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

struct Context {
    theorem: TheoremFamily,
    conclusion: Conclusion,
    threshold: f64,
    extremal: SplitGraphSpec,
    extremal_canon: Option<CanonicalForm>,
}

struct Classified {
    class: GraphClass,
    rho: Option<f64>,
    property: bool,
    ambiguous: bool,
    unconverged: bool,
}

impl Context {
    fn new(theorem: TheoremFamily, conclusion: Conclusion) -> Result<Self> {
        if conclusion == Conclusion::FractionalPerfectMatching && (theorem.family != Family::Main1 || theorem.k != 1) {
            return Err(Error::InvalidArgument("the perfect-matching conclusion is the main1, k = 1 case".into()));
        }
        let extremal = theorem.extremal_spec()?;
        let extremal_canon =
            if theorem.n <= CANON_MAX_ORDER { Some(canonical_form(&extremal.realize())?) } else { None };
        Ok(Context { theorem, conclusion, threshold: threshold(&theorem)?.value, extremal, extremal_canon })
    }

    fn property(&self, g: &Graph) -> Result<bool> {
        match self.conclusion {
            Conclusion::Theorem => self.theorem.property_holds(g),
            Conclusion::FractionalPerfectMatching => Ok(fractional_matching_number(g)?.is_perfect(g.n())),
        }
    }

    fn is_extremal(&self, g: &Graph) -> Result<bool> {
        match self.extremal_canon {
            Some(cf) => Ok(canonical_form(g)? == cf),
            None => Ok(self.extremal.is_realized_by(g)),
        }
    }

    fn classify(&self, g: &Graph) -> Result<Classified> {
        let property = self.property(g)?;
        let mut out =
            Classified { class: GraphClass::Below, rho: None, property, ambiguous: false, unconverged: false };
        if spectral_radius_upper_bound(g) < self.threshold - THRESHOLD_EPS {
            return Ok(out);
        }
        let r = spectral_radius(g, PowerOptions::default())?;
        out.rho = Some(r.rho);
        out.unconverged = !r.converged;
        let above = if !r.converged {
            // Keep anything the residual cannot rule out.
            r.rho + r.residual >= self.threshold - THRESHOLD_EPS
        } else if (r.rho - self.threshold).abs() <= THRESHOLD_EPS {
            if self.is_extremal(g)? {
                true
            } else {
                out.ambiguous = true;
                let tight = spectral_radius(g, PowerOptions::with_tol(TIGHT_TOL))?;
                out.rho = Some(tight.rho);
                tight.rho + tight.residual + 1e-12 >= self.threshold
            }
        } else {
            r.rho >= self.threshold
        };
        if above {
            out.class = if property {
                GraphClass::PropertyHolds
            } else if self.is_extremal(g)? {
                GraphClass::ExtremalHit
            } else {
                GraphClass::Counterexample
            };
        }
        Ok(out)
    }

    fn empty_report(&self, mode: Mode, seed: Option<u64>) -> TheoremReport {
        TheoremReport {
            theorem: self.theorem,
            conclusion: self.conclusion,
            mode,
            label: (mode != Mode::Exhaustive).then_some(EVIDENCE_LABEL),
            seed,
            order_bound: self.theorem.order_bound(),
            order_bound_holds: self.theorem.order_bound_holds(),
            threshold: self.threshold,
            epsilon: THRESHOLD_EPS,
            graphs_checked: 0,
            above_threshold: 0,
            property_holders: 0,
            extremal_hits: 0,
            counterexamples: Vec::new(),
            interval_ambiguous: 0,
            unconverged: 0,
            partial: false,
            records: Vec::new(),
        }
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    holders: u64,
    hits: u64,
    counterexamples: Vec<String>,
    ambiguous: u64,
    unconverged: u64,
    records: Vec<GraphRecord>,
}

impl Tally {
    fn add(mut self, g: &Graph, c: Classified, record: bool) -> Result<Self> {
        self.checked += 1;
        self.ambiguous += c.ambiguous as u64;
        self.unconverged += c.unconverged as u64;
        match c.class {
            GraphClass::Below => {}
            GraphClass::PropertyHolds => self.holders += 1,
            GraphClass::ExtremalHit => self.hits += 1,
            GraphClass::Counterexample => self.counterexamples.push(write_graph6(g)?),
        }
        if record {
            self.records.push(GraphRecord {
                graph6: write_graph6(g)?,
                rho: c.rho,
                property: c.property,
                class: c.class,
            });
        }
        Ok(self)
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.holders += other.holders;
        self.hits += other.hits;
        self.counterexamples.extend(other.counterexamples);
        self.ambiguous += other.ambiguous;
        self.unconverged += other.unconverged;
        self.records.extend(other.records);
        self
    }

    fn into_report(mut self, mut report: TheoremReport) -> TheoremReport {
        self.counterexamples.sort();
        report.graphs_checked = self.checked;
        report.property_holders = self.holders;
        report.extremal_hits = self.hits;
        report.above_threshold = self.holders + self.hits + self.counterexamples.len() as u64;
        report.counterexamples = self.counterexamples;
        report.interval_ambiguous = self.ambiguous;
        report.unconverged = self.unconverged;
        report.records = self.records;
        report
    }
}

/// Classifies `graphs` in parallel; tallies are order-independent and
/// records keep the input order.
fn tally_graphs(ctx: &Context, graphs: &[Graph], record: bool) -> Result<Tally> {
    graphs
        .par_iter()
        .with_min_len(64)
        .try_fold(Tally::default, |t, g| t.add(g, ctx.classify(g)?, record))
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
}

/// Checks every labeled graph on `n ≤ 7` vertices with minimum degree
/// exactly `δ`.
pub fn verify_exhaustive(
    theorem: &TheoremFamily,
    conclusion: Conclusion,
    opts: VerifyOptions,
) -> Result<TheoremReport> {
    let n = theorem.n;
    if n > EXHAUSTIVE_MAX_ORDER {
        return Err(Error::TooLarge { what: "exhaustive verification", n, max: EXHAUSTIVE_MAX_ORDER });
    }
    let ctx = Context::new(*theorem, conclusion)?;
    let count = labeled_graph_count(n)?;
    let delta = theorem.delta;
    let tally = in_pool(opts.threads, || {
        (0..count as usize)
            .into_par_iter()
            .with_min_len(256)
            .try_fold(Tally::default, |t, code| {
                let g = labeled_graph(n, code as u64)?;
                if g.min_degree() != delta {
                    return Ok(t);
                }
                t.add(&g, ctx.classify(&g)?, opts.record)
            })
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
    })??;
    Ok(tally.into_report(ctx.empty_report(Mode::Exhaustive, None)))
}

/// Uniformly random labeled graphs (`G(n, ½)`) conditioned on minimum
/// degree `δ` by rejection.
pub fn verify_sampled(
    theorem: &TheoremFamily,
    samples: usize,
    seed: u64,
    opts: VerifyOptions,
) -> Result<TheoremReport> {
    let ctx = Context::new(*theorem, Conclusion::Theorem)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graphs = Vec::with_capacity(samples);
    let mut attempts = samples * ATTEMPTS_PER_SAMPLE;
    while graphs.len() < samples && attempts > 0 {
        attempts -= 1;
        let g = random_graph(&mut rng, theorem.n, 0.5);
        if g.min_degree() == theorem.delta {
            graphs.push(g);
        }
    }
    let partial = graphs.len() < samples;
    let tally = in_pool(opts.threads, || tally_graphs(&ctx, &graphs, opts.record))??;
    let mut report = tally.into_report(ctx.empty_report(Mode::Sampled, Some(seed)));
    report.partial = partial;
    Ok(report)
}

pub fn verify_theorem(
    theorem: &TheoremFamily,
    mode: Mode,
    sample_budget: usize,
    seed: u64,
    opts: VerifyOptions,
) -> Result<TheoremReport> {
    match mode {
        Mode::Exhaustive => verify_exhaustive(theorem, Conclusion::Theorem, opts),
        Mode::Sampled => verify_sampled(theorem, sample_budget, seed, opts),
        Mode::Probe => perturbation_probe(theorem, sample_budget, seed, opts),
    }
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for j in 1..n {
        for i in 0..j {
            if rng.random_bool(p) {
                g.add_edge(i, j).expect("in range");
            }
        }
    }
    g
}

fn random_relabel(rng: &mut ChaCha8Rng, g: &Graph) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), rng);
    g.permute(&perm).expect("valid permutation")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Perturbation {
    AddEdge,
    DeleteEdge,
    Swap,
    Uniform,
}

fn perturb(rng: &mut ChaCha8Rng, base: &Graph, kind: Perturbation) -> Graph {
    let n = base.n();
    let edges: Vec<(usize, usize)> = base.edges().collect();
    let non_edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !base.has_edge(u, v)).collect();
    let mut g = base.clone();
    let add = |g: &mut Graph, rng: &mut ChaCha8Rng| {
        if let Some(&(u, v)) = non_edges.choose(rng) {
            g.add_edge(u, v).expect("in range");
        }
    };
    let delete = |g: &mut Graph, rng: &mut ChaCha8Rng| {
        if let Some(&(u, v)) = edges.choose(rng) {
            g.remove_edge(u, v).expect("in range");
        }
    };
    match kind {
        Perturbation::AddEdge => add(&mut g, rng),
        Perturbation::DeleteEdge => delete(&mut g, rng),
        Perturbation::Swap => {
            for _ in 0..rng.random_range(1..=3) {
                delete(&mut g, rng);
                add(&mut g, rng);
            }
        }
        Perturbation::Uniform => g = random_graph(rng, n, 0.5),
    }
    g
}

/// Samples around the extremal graph (single-edge additions and deletions,
/// short chains of edge swaps) mixed with uniform random graphs, all with
/// minimum degree exactly `δ` and randomly relabelled. The unmodified
/// extremal graph is always the first sample.
pub fn perturbation_probe(
    theorem: &TheoremFamily,
    samples: usize,
    seed: u64,
    opts: VerifyOptions,
) -> Result<TheoremReport> {
    let ctx = Context::new(*theorem, Conclusion::Theorem)?;
    let base = ctx.extremal.realize();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kinds = [Perturbation::AddEdge, Perturbation::DeleteEdge, Perturbation::Swap, Perturbation::Uniform];
    let mut graphs = Vec::with_capacity(samples);
    if samples > 0 {
        graphs.push(random_relabel(&mut rng, &base));
    }
    let mut attempts = samples * ATTEMPTS_PER_SAMPLE;
    while graphs.len() < samples && attempts > 0 {
        let kind = kinds[graphs.len() % kinds.len()];
        attempts -= 1;
        let g = perturb(&mut rng, &base, kind);
        if g.min_degree() == theorem.delta {
            graphs.push(random_relabel(&mut rng, &g));
        }
    }
    let partial = graphs.len() < samples;
    let tally = in_pool(opts.threads, || tally_graphs(&ctx, &graphs, opts.record))??;
    let mut report = tally.into_report(ctx.empty_report(Mode::Probe, Some(seed)));
    report.partial = partial;
    Ok(report)
}

/// Exhaustive runs for each order in `n_range`.
pub fn sweep(
    family: Family,
    n_range: std::ops::RangeInclusive<usize>,
    delta: usize,
    k: usize,
    opts: VerifyOptions,
) -> Result<Vec<TheoremReport>> {
    n_range.map(|n| verify_exhaustive(&TheoremFamily::new(family, n, delta, k)?, Conclusion::Theorem, opts)).collect()
}

/// The `k = 1`, `δ = 0` corollary: above the threshold every graph has a
/// fractional perfect matching or is `K_{n−1} + K_1`.
pub fn corollary_check(n_range: std::ops::RangeInclusive<usize>, opts: VerifyOptions) -> Result<Vec<TheoremReport>> {
    n_range
        .map(|n| {
            let theorem = TheoremFamily::new(Family::Main1, n, 0, 1)?;
            if n < 6 {
                return Err(Error::InvalidArgument(format!("corollary needs n >= 6, got {n}")));
            }
            verify_exhaustive(&theorem, Conclusion::FractionalPerfectMatching, opts)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn main1_smallest_case() {
        let theorem = TheoremFamily::new(Family::Main1, 6, 0, 1).unwrap();
        let report = verify_exhaustive(&theorem, Conclusion::Theorem, VerifyOptions::default()).unwrap();
        assert!(report.is_clean(), "{:?}", report.counterexamples);
        assert_eq!(report.extremal_hits, 6);
        assert!(report.counts_consistent());
        // Labeled graphs on 6 vertices with an isolated vertex.
        let with_isolated = (0u64..1 << 15).filter(|&c| labeled_graph(6, c).unwrap().min_degree() == 0).count() as u64;
        assert_eq!(report.graphs_checked, with_isolated);
    }

    #[test]
    fn records_follow_graphs() {
        let theorem = TheoremFamily::new(Family::Main3, 5, 0, 2).unwrap();
        let opts = VerifyOptions { threads: Some(2), record: true };
        let report = verify_exhaustive(&theorem, Conclusion::Theorem, opts).unwrap();
        assert_eq!(report.records.len() as u64, report.graphs_checked);
        assert!((report.threshold - 3.0).abs() < 1e-12);
        let above = report.records.iter().filter(|r| r.class != GraphClass::Below).count() as u64;
        assert_eq!(above, report.above_threshold);
    }

    #[test]
    fn sampled_is_deterministic() {
        let theorem = TheoremFamily::new(Family::Main2, 11, 1, 3).unwrap();
        let a = verify_sampled(&theorem, 200, 7, VerifyOptions::default()).unwrap();
        let b = verify_sampled(&theorem, 200, 7, VerifyOptions { threads: Some(3), record: false }).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.label, Some(EVIDENCE_LABEL));
        assert_eq!(a.graphs_checked, 200);
    }

    #[test]
    fn probe_counts_extremal() {
        let theorem = TheoremFamily::new(Family::Main1, 12, 1, 1).unwrap();
        let report = perturbation_probe(&theorem, 100, 3, VerifyOptions::default()).unwrap();
        assert!(report.is_clean());
        assert!(report.extremal_hits >= 1);
        assert!(report.counts_consistent());
        assert!(!report.partial);
    }

    #[test]
    fn exhaustive_rejects_large_orders() {
        let theorem = TheoremFamily::new(Family::Main1, 8, 0, 1).unwrap();
        assert!(verify_exhaustive(&theorem, Conclusion::Theorem, VerifyOptions::default()).is_err());
        assert!(corollary_check(5..=5, VerifyOptions::default()).is_err());
    }
}
