//! The `sfl` command-line front end.
//!
//! Exit codes: 0 success (including "no" factor answers), 1 computation
//! error, 2 usage error, 3 counterexample found.

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::extremal::{claim_inequality_sweep, perron_orbit_check, threshold, Family, SplitGraphSpec, TheoremFamily};
use crate::factors::{
    brute_force_mu_f, double_cover_matching_size, fractional_matching_number, has_k2_ck_factor, has_star_factor,
    max_deficiency,
};
use crate::graph::{parse_graph, write_edge_list, write_graph6, Graph, InputFormat};
use crate::spectral::{
    quotient_matrix, quotient_spectral_radius, spectral_radius, PowerOptions, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
use crate::verifier::{corollary_check, sweep, verify_theorem, Mode, TheoremReport, VerifyOptions};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sfl", version, about = "Spectral thresholds for fractional matchings and graph factors")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Args)]
struct GraphInput {
    /// Graph file (edge list or graph6); `-` reads stdin.
    input: Option<PathBuf>,
    /// Inline graph6 string instead of a file.
    #[arg(long, conflicts_with = "input")]
    graph6: Option<String>,
    #[arg(long, value_enum, default_value_t = InputKind::Auto)]
    input_format: InputKind,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InputKind {
    Auto,
    Graph6,
    Edges,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FactorArg {
    Star,
    K2ck,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Main1,
    Main2,
    Main3,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Main1 => Family::Main1,
            FamilyArg::Main2 => Family::Main2,
            FamilyArg::Main3 => Family::Main3,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MufracMethod {
    Auto,
    Deficiency,
    DoubleCover,
    BruteForce,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Emit {
    Graph6,
    Edges,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
    Probe,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spectral radius, residual and iteration count.
    Rho {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
    },
    /// Fractional matching number (reported doubled).
    Mufrac {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, value_enum, default_value_t = MufracMethod::Auto)]
        method: MufracMethod,
    },
    /// Star-factor or {K2, {Ck}}-factor decision with certificate.
    FactorCheck {
        #[arg(long, value_enum)]
        kind: FactorArg,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        graph: GraphInput,
    },
    /// Build an extremal graph and its threshold.
    Extremal {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        k: usize,
        /// Print the graph itself instead of a JSON summary.
        #[arg(long, value_enum)]
        emit: Option<Emit>,
        #[arg(long)]
        threshold: bool,
        /// Run the ρ* > ρ' comparison over the join sizes.
        #[arg(long)]
        claims: bool,
        /// Report Perron orbit values and their eigen-equation residuals.
        #[arg(long)]
        orbits: bool,
    },
    /// Check a theorem on one order.
    Verify {
        #[arg(long, value_enum)]
        theorem: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Sample count for sampled and probe modes.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "SFL_THREADS")]
        threads: Option<usize>,
        /// One CSV row per graph checked.
        #[arg(long)]
        csv: bool,
    },
    /// Exhaustive checks over a range of orders.
    Sweep {
        #[arg(long, value_enum)]
        theorem: FamilyArg,
        /// Inclusive range `a:b`.
        #[arg(long, value_parser = parse_range)]
        n_range: (usize, usize),
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        k: usize,
        /// Check the fractional-perfect-matching corollary instead (main1, δ = 0, k = 1).
        #[arg(long)]
        corollary: bool,
        #[arg(long, env = "SFL_THREADS")]
        threads: Option<usize>,
    },
    /// Quotient matrix of K_s ∨ (K_{n−s−t} + tK_1) and its largest root.
    Quotient {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
}

fn parse_range(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got `{s}`"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad range start `{a}`"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad range end `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}:{b}"));
    }
    Ok((a, b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                CliOutput { code, stdout: text, stderr: String::new() }
            } else {
                CliOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => CliOutput { code, stdout, stderr: String::new() },
        Err(e) => CliOutput { code: EXIT_ERROR, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn read_input(input: &GraphInput) -> Result<Graph> {
    let format = match input.input_format {
        InputKind::Auto => InputFormat::Auto,
        InputKind::Graph6 => InputFormat::Graph6,
        InputKind::Edges => InputFormat::Edges,
    };
    if let Some(g6) = &input.graph6 {
        return parse_graph(g6, InputFormat::Graph6);
    }
    let text = match &input.input {
        None => return Err(Error::InvalidArgument("no graph given (pass a file, `-`, or --graph6)".into())),
        Some(p) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
            s
        }
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?,
    };
    parse_graph(&text, format)
}

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            let x = round_sig(num.as_f64().expect("f64"));
            if let Some(r) = serde_json::Number::from_f64(x) {
                *num = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn document(command: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    if let Value::Object(fields) = body {
        map.extend(fields);
    }
    let mut doc = Value::Object(map);
    round_floats(&mut doc);
    doc
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(doc).expect("json")),
        Format::Human => {
            let mut out = String::new();
            if let Value::Object(map) = doc {
                for (k, v) in map {
                    out.push_str(&format!("{k}: {}\n", scalar_text(v)));
                }
            }
            out
        }
        Format::Csv => {
            let Value::Object(map) = doc else { return String::new() };
            let scalars: Vec<(&String, &Value)> = map.iter().filter(|(_, v)| !v.is_array() && !v.is_object()).collect();
            let header: Vec<&str> = scalars.iter().map(|(k, _)| k.as_str()).collect();
            let row: Vec<String> = scalars.iter().map(|(_, v)| csv_field(&scalar_text(v))).collect();
            format!("{}\n{}\n", header.join(","), row.join(","))
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn report_csv(reports: &[TheoremReport]) -> String {
    let mut out = String::from("n,graph6,rho,property,class\n");
    for r in reports {
        for rec in &r.records {
            let rho = rec.rho.map(|x| round_sig(x).to_string()).unwrap_or_default();
            let class = to_value(&rec.class);
            out.push_str(&format!(
                "{},{},{rho},{},{}\n",
                r.theorem.n,
                csv_field(&rec.graph6),
                rec.property,
                scalar_text(&class)
            ));
        }
    }
    out
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let format = cli.format;
    let single = |command: &str, body: Value| Ok((EXIT_OK, render(&document(command, body), format)));
    match &cli.command {
        Command::Rho { graph, tol, max_iter } => {
            let g = read_input(graph)?;
            let r = spectral_radius(&g, PowerOptions { tol: *tol, max_iter: *max_iter })?;
            let code = if r.converged { EXIT_OK } else { EXIT_ERROR };
            let body = json!({
                "n": g.n(),
                "m": g.edge_count(),
                "rho": r.rho,
                "residual": r.residual,
                "iterations": r.iterations,
                "converged": r.converged,
            });
            Ok((code, render(&document("rho", body), format)))
        }
        Command::Mufrac { graph, method } => {
            let g = read_input(graph)?;
            let (doubled, name) = match method {
                MufracMethod::Auto => (fractional_matching_number(&g)?.doubled, "auto"),
                MufracMethod::Deficiency => (g.n() - max_deficiency(&g, 1)?.value as usize, "deficiency"),
                MufracMethod::DoubleCover => (double_cover_matching_size(&g)?, "double-cover"),
                MufracMethod::BruteForce => (brute_force_mu_f(&g)?.doubled, "brute-force"),
            };
            single(
                "mufrac",
                json!({
                    "n": g.n(),
                    "method": name,
                    "doubled": doubled,
                    "mu_f": doubled as f64 / 2.0,
                    "fractional_perfect_matching": doubled == g.n(),
                }),
            )
        }
        Command::FactorCheck { kind, k, graph } => {
            let g = read_input(graph)?;
            let cert = match kind {
                FactorArg::Star => has_star_factor(&g, *k)?,
                FactorArg::K2ck => has_k2_ck_factor(&g, *k)?,
            };
            cert.validate(&g)?;
            single("factor-check", to_value(&cert))
        }
        Command::Extremal { family, n, delta, k, emit, threshold: want_threshold, claims, orbits } => {
            let theorem = TheoremFamily::new((*family).into(), *n, *delta, *k)?;
            let spec = theorem.extremal_spec()?;
            let g = spec.realize();
            if let Some(emit) = emit {
                let text = match emit {
                    Emit::Graph6 => format!("{}\n", write_graph6(&g)?),
                    Emit::Edges => write_edge_list(&g),
                };
                return Ok((EXIT_OK, text));
            }
            let mut body = json!({
                "theorem": theorem,
                "spec": spec,
                "description": spec.to_string(),
                "graph6": write_graph6(&g)?,
                "order_bound": theorem.order_bound(),
                "order_bound_holds": theorem.order_bound_holds(),
            });
            let mut code = EXIT_OK;
            if *want_threshold {
                body["threshold"] = to_value(&threshold(&theorem)?);
            }
            if *claims {
                let report = claim_inequality_sweep(&theorem)?;
                // Below the order bound the comparison is allowed to fail.
                if report.order_bound_holds && !report.violations.is_empty() {
                    code = EXIT_COUNTEREXAMPLE;
                }
                body["claims"] = to_value(&report);
            }
            if *orbits {
                let (o, rel) = perron_orbit_check(&spec)?;
                body["orbits"] = to_value(&o);
                body["orbit_relations"] = to_value(&rel);
            }
            Ok((code, render(&document("extremal", body), format)))
        }
        Command::Verify { theorem, n, delta, k, mode, samples, seed, threads, csv } => {
            let tf = TheoremFamily::new((*theorem).into(), *n, *delta, *k)?;
            let mode = match mode {
                ModeArg::Exhaustive => Mode::Exhaustive,
                ModeArg::Sampled => Mode::Sampled,
                ModeArg::Probe => Mode::Probe,
            };
            let want_rows = *csv || format == Format::Csv;
            let opts = VerifyOptions { threads: *threads, record: want_rows };
            let report = verify_theorem(&tf, mode, *samples, *seed, opts)?;
            let code = if report.is_clean() { EXIT_OK } else { EXIT_COUNTEREXAMPLE };
            let text = if want_rows {
                report_csv(std::slice::from_ref(&report))
            } else {
                render(&document("verify", to_value(&report)), format)
            };
            Ok((code, text))
        }
        Command::Sweep { theorem, n_range, delta, k, corollary, threads } => {
            let opts = VerifyOptions { threads: *threads, record: false };
            let range = n_range.0..=n_range.1;
            let reports = if *corollary {
                corollary_check(range, opts)?
            } else {
                sweep((*theorem).into(), range, *delta, *k, opts)?
            };
            let clean = reports.iter().all(TheoremReport::is_clean);
            let body = json!({
                "reports": reports,
                "counterexamples": reports.iter().map(|r| r.counterexamples.len()).sum::<usize>(),
            });
            Ok((if clean { EXIT_OK } else { EXIT_COUNTEREXAMPLE }, render(&document("sweep", body), format)))
        }
        Command::Quotient { n, s, t } => {
            let spec = SplitGraphSpec::new(*n, *s, *t)?;
            let q = quotient_matrix(&spec);
            let root = quotient_spectral_radius(&q);
            let direct = spectral_radius(&spec.realize(), PowerOptions::default())?.into_converged()?;
            single(
                "quotient",
                json!({
                    "spec": spec,
                    "matrix": q.entries,
                    "part_sizes": q.part_sizes,
                    "characteristic_polynomial": q.characteristic_polynomial(),
                    "lambda1": root,
                    "rho_direct": direct.rho,
                    "difference": (root - direct.rho).abs(),
                }),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(round_sig(3.0), 3.0);
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_sig(8.028375560308474), 8.02837556031);
        assert_eq!(round_sig(0.0), 0.0);
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("6:7"), Ok((6, 7)));
        assert!(parse_range("7:6").is_err());
        assert!(parse_range("7").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["sfl", "bogus"]).code, EXIT_USAGE);
        assert_eq!(run(["sfl", "factor-check", "--kind", "star"]).code, EXIT_USAGE);
        assert_eq!(run(["sfl", "--help"]).code, EXIT_OK);
    }

    #[test]
    fn rho_inline() {
        let out = run(["sfl", "rho", "--graph6", "C~"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["rho"], json!(3.0));
        assert_eq!(v["schema_version"], json!(1));
    }
}
