use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use hyperspec::blowup::{verify_claims, BlowupCaps};
use hyperspec::bounds::{verify_bounds, BoundKind, BoundVerification, VIOLATION_SLACK};
use hyperspec::hypergraph::{find_odd_coloring, HypergraphJson, DEFAULT_COLORING_CAP};
use hyperspec::spectral::SolverConfig;
use hyperspec::tensor::DenseCap;
use hyperspec::{Error, UniformHypergraph};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::input::{from_spec, parse_text_or_json};
use crate::output::{emit, fmt_f, to_json, ConfigEcho, RunReport};
use crate::SuiteArgs;

pub const BUILTIN: &[&str] = &[
    "single_edge:3",
    "single_edge:4",
    "loose_path:3,2",
    "loose_path:3,4",
    "loose_path:4,3",
    "complete:4,3",
    "complete:5,3",
    "complete:6,3",
    "complete:5,4",
    "complete:4,2",
    "random:7,3,6,1",
    "random:8,3,10,2",
    "random:9,4,8,3",
    "random:10,3,14,4",
];

/// Blow-up checks are skipped beyond these sizes.
const SUITE_BLOWUP_CAPS: BlowupCaps = BlowupCaps {
    max_vertices: 256,
    max_edges: 20_000,
};

#[derive(Debug, Clone, Deserialize)]
struct RecordedConfig {
    tolerance: f64,
    max_iterations: usize,
    shift: Option<f64>,
    seed: u64,
    #[serde(default)]
    restarts: usize,
}

/// A saved `bound --json` report.
#[derive(Debug, Clone, Deserialize)]
struct RecordedBound {
    command: String,
    config: RecordedConfig,
    hypergraph: HypergraphJson,
    results: BoundVerification,
}

enum Source {
    Graph(UniformHypergraph),
    Recorded(Box<RecordedBound>, UniformHypergraph),
}

struct Instance {
    name: String,
    source: Source,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Cell {
    Pass,
    Fail,
    Skip,
}

impl Cell {
    fn from_bool(b: bool) -> Self {
        if b {
            Cell::Pass
        } else {
            Cell::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Cell::Pass => "ok",
            Cell::Fail => "FAIL",
            Cell::Skip => "-",
        }
    }
}

#[derive(Debug, Serialize)]
struct Witness {
    hypergraph: HypergraphJson,
    failures: Vec<String>,
}

#[derive(Debug, Serialize)]
struct Outcome {
    instance: String,
    n: usize,
    r: usize,
    edges: usize,
    bounds: Cell,
    equality: Cell,
    dominance: Cell,
    blowup: Cell,
    coloring: Cell,
    replay: Cell,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
}

#[derive(Debug, Serialize)]
struct SuiteResult {
    instances: usize,
    passed: usize,
    failed: usize,
    outcomes: Vec<Outcome>,
}

fn load_corpus(dir: &Path) -> CliResult<Vec<Instance>> {
    let mut paths: Vec<_> = fs::read_dir(dir)
        .map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .filter(|p| {
            p.extension()
                .and_then(|e| e.to_str())
                .is_some_and(|e| matches!(e, "hg" | "txt" | "json"))
        })
        .collect();
    paths.sort();
    paths.iter().map(|p| load_entry(p)).collect()
}

fn load_entry(path: &Path) -> CliResult<Instance> {
    let name = path.file_name().map_or_else(
        || path.display().to_string(),
        |n| n.to_string_lossy().into_owned(),
    );
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|e| e == "json");
    if is_json {
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        if value.get("results").is_some() {
            let rec: RecordedBound = serde_json::from_value(value)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            if rec.command != "bound" {
                return Err(CliError::Input(format!(
                    "{}: only `bound` reports can be replayed, found `{}`",
                    path.display(),
                    rec.command
                )));
            }
            let graph = UniformHypergraph::try_from(rec.hypergraph.clone())
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            return Ok(Instance {
                name,
                source: Source::Recorded(Box::new(rec), graph),
            });
        }
    }
    Ok(Instance {
        name,
        source: Source::Graph(parse_text_or_json(path, &text)?),
    })
}

fn builtin() -> CliResult<Vec<Instance>> {
    BUILTIN
        .iter()
        .map(|spec| {
            Ok(Instance {
                name: spec.to_string(),
                source: Source::Graph(from_spec(spec)?),
            })
        })
        .collect()
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

fn replay(rec: &RecordedBound, h: &UniformHypergraph, failures: &mut Vec<String>) -> Cell {
    let cfg = SolverConfig {
        tolerance: rec.config.tolerance,
        max_iterations: rec.config.max_iterations,
        shift: rec.config.shift,
        seed: rec.config.seed,
        restarts: rec.config.restarts,
    };
    if let Err(e) = cfg.validate() {
        failures.push(format!("replay: recorded config invalid: {e}"));
        return Cell::Fail;
    }
    let fresh = match verify_bounds(h, &cfg) {
        Ok(v) => v,
        Err(e) => {
            failures.push(format!("replay: {e}"));
            return Cell::Fail;
        }
    };
    let before = failures.len();
    let old = &rec.results;
    if old.regular != fresh.regular || old.connected != fresh.connected {
        failures
            .push("replay: recorded regular/connected flags disagree with the hypergraph".into());
    }
    for new in &fresh.reports {
        let Some(r) = old.report(new.kind) else {
            failures.push(format!("replay: {} report missing", new.kind));
            continue;
        };
        if r.rho - r.bound < -(cfg.tolerance + VIOLATION_SLACK) {
            failures.push(format!(
                "replay: {} recorded bound {} exceeds recorded rho {}",
                r.kind,
                fmt_f(r.bound),
                fmt_f(r.rho)
            ));
        }
        if !close(r.bound, new.bound, 1e-9) {
            failures.push(format!(
                "replay: {} bound recorded {} recomputed {}",
                r.kind,
                fmt_f(r.bound),
                fmt_f(new.bound)
            ));
        }
        if !close(r.rho, new.rho, 1e-6) {
            failures.push(format!(
                "replay: {} rho recorded {} recomputed {}",
                r.kind,
                fmt_f(r.rho),
                fmt_f(new.rho)
            ));
        }
        if !close(r.gap, r.rho - r.bound, 1e-9) {
            failures.push(format!(
                "replay: {} gap {} is not rho - bound",
                r.kind,
                fmt_f(r.gap)
            ));
        }
        if r.equality != new.equality {
            failures.push(format!(
                "replay: {} equality recorded {} recomputed {}",
                r.kind, r.equality, new.equality
            ));
        }
    }
    Cell::from_bool(failures.len() == before)
}

fn check_graph(
    h: &UniformHypergraph,
    cfg: &SolverConfig,
    trials: usize,
    dense_cap: &DenseCap,
    failures: &mut Vec<String>,
) -> [Cell; 5] {
    let (bounds, equality, dominance) = match verify_bounds(h, cfg) {
        Ok(v) => {
            let converged = v.all_converged();
            if !converged {
                failures.push("bounds: solver did not converge".into());
            }
            let violated: Vec<_> = v
                .reports
                .iter()
                .filter(|r| r.kind != BoundKind::AverageDegree && r.is_violated(cfg.tolerance))
                .collect();
            for r in &violated {
                failures.push(format!(
                    "bounds: {} bound {} exceeds rho {}",
                    r.kind,
                    fmt_f(r.bound),
                    fmt_f(r.rho)
                ));
            }
            let inconsistent: Vec<_> = v
                .reports
                .iter()
                .filter(|r| r.consistent == Some(false))
                .collect();
            for r in &inconsistent {
                failures.push(format!(
                    "equality: {} flag {} but regular {}",
                    r.kind, r.equality, r.regular
                ));
            }
            let avg_ok = v
                .report(BoundKind::AverageDegree)
                .is_none_or(|r| !r.is_violated(cfg.tolerance));
            if !v.power_mean_dominates {
                failures.push("dominance: power mean below average degree".into());
            }
            if !avg_ok {
                failures.push("dominance: rho below average degree".into());
            }
            (
                Cell::from_bool(converged && violated.is_empty()),
                Cell::from_bool(inconsistent.is_empty()),
                Cell::from_bool(v.power_mean_dominates && avg_ok),
            )
        }
        Err(e) => {
            failures.push(format!("bounds: {e}"));
            (Cell::Fail, Cell::Skip, Cell::Skip)
        }
    };

    let blowup = match verify_claims(h, cfg, trials, cfg.seed, &SUITE_BLOWUP_CAPS, dense_cap) {
        Ok(c) if c.passed() => Cell::Pass,
        Ok(c) => {
            failures.push(format!(
                "blowup: claims failed: {}",
                serde_json::to_string(&c).unwrap_or_default()
            ));
            Cell::Fail
        }
        Err(Error::Capacity(_)) => Cell::Skip,
        Err(e) => {
            failures.push(format!("blowup: {e}"));
            Cell::Fail
        }
    };

    let coloring = if !h.r().is_multiple_of(2) {
        match find_odd_coloring(h, DEFAULT_COLORING_CAP) {
            Err(Error::Uniformity { .. }) => Cell::Pass,
            other => {
                failures.push(format!("coloring: odd r accepted: {other:?}"));
                Cell::Fail
            }
        }
    } else if h.n() > DEFAULT_COLORING_CAP {
        Cell::Skip
    } else {
        match find_odd_coloring(h, DEFAULT_COLORING_CAP) {
            Ok(Some(c)) if c.verify(h) => Cell::Pass,
            Ok(Some(c)) => {
                failures.push(format!(
                    "coloring: returned labels {:?} do not verify",
                    c.phi
                ));
                Cell::Fail
            }
            Ok(None) => Cell::Pass,
            Err(e) => {
                failures.push(format!("coloring: {e}"));
                Cell::Fail
            }
        }
    };

    [bounds, equality, dominance, blowup, coloring]
}

fn evaluate(inst: &Instance, cfg: &SolverConfig, trials: usize, dense_cap: &DenseCap) -> Outcome {
    let mut failures = Vec::new();
    let (h, replayed) = match &inst.source {
        Source::Graph(h) => (h, Cell::Skip),
        Source::Recorded(rec, h) => (h, replay(rec, h, &mut failures)),
    };
    let [bounds, equality, dominance, blowup, coloring] =
        check_graph(h, cfg, trials, dense_cap, &mut failures);
    let passed = failures.is_empty();
    Outcome {
        instance: inst.name.clone(),
        n: h.n(),
        r: h.r(),
        edges: h.edge_count(),
        bounds,
        equality,
        dominance,
        blowup,
        coloring,
        replay: replayed,
        passed,
        witness: (!passed).then(|| Witness {
            hypergraph: h.to_json(),
            failures,
        }),
    }
}

fn matrix(outcomes: &[Outcome]) -> String {
    let width = outcomes
        .iter()
        .map(|o| o.instance.len())
        .max()
        .unwrap_or(0)
        .max("instance".len());
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<width$}  {:<6}  {:<8}  {:<9}  {:<6}  {:<8}  {:<6}  result",
        "instance", "bounds", "equality", "dominance", "blowup", "coloring", "replay"
    );
    for o in outcomes {
        let _ = writeln!(
            s,
            "{:<width$}  {:<6}  {:<8}  {:<9}  {:<6}  {:<8}  {:<6}  {}",
            o.instance,
            o.bounds.label(),
            o.equality.label(),
            o.dominance.label(),
            o.blowup.label(),
            o.coloring.label(),
            o.replay.label(),
            if o.passed { "PASS" } else { "FAIL" }
        );
    }
    s
}

pub fn run(a: &SuiteArgs) -> CliResult<()> {
    let start = Instant::now();
    let cfg = a.solver.config()?;
    let dense_cap = DenseCap::from_env()?;
    let (instances, descriptor) = match &a.corpus {
        Some(dir) => (load_corpus(dir)?, dir.display().to_string()),
        None => (builtin()?, "builtin".to_string()),
    };
    if instances.is_empty() {
        eprintln!("warning: corpus contains no instances");
    }

    let outcomes: Vec<Outcome> = instances
        .par_iter()
        .map(|inst| evaluate(inst, &cfg, a.trials, &dense_cap))
        .collect();
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let result = SuiteResult {
        instances: outcomes.len(),
        passed: outcomes.len() - failed,
        failed,
        outcomes,
    };

    let text = if a.output.json {
        to_json(&RunReport {
            command: "verify-suite".into(),
            input: descriptor,
            config: ConfigEcho::new(&cfg, dense_cap, &[]),
            hypergraph: None,
            results: &result,
            elapsed_ms: a.output.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
        })?
    } else {
        let mut s = matrix(&result.outcomes);
        let _ = writeln!(
            s,
            "{} instances, {} passed, {} failed",
            result.instances, result.passed, result.failed
        );
        s
    };
    emit(&text, a.output.out.as_deref())?;
    eprintln!("elapsed: {} ms", fmt_f(start.elapsed().as_secs_f64() * 1e3));

    if failed > 0 {
        for o in result.outcomes.iter().filter(|o| !o.passed) {
            eprintln!("witness {}:", o.instance);
            eprint!("{}", to_json(&o.witness)?);
        }
        return Err(CliError::Check(format!("{failed} instance(s) failed")));
    }
    Ok(())
}
