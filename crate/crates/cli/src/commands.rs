use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use hyperspec::blowup::{blowup as build_blowup, verify_claims, BlowupCaps, ClaimsReport};
use hyperspec::bounds::{verify_bounds, BoundVerification};
use hyperspec::spectral::{spectral_radius, EigenPair, SolverConfig, SpectralKind};
use hyperspec::tensor::DenseCap;
use hyperspec::{Error, UniformHypergraph};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::input::{from_spec, load};
use crate::output::{emit, fmt_f, to_json, ConfigEcho, RunReport};
use crate::{BlowupArgs, BoundArgs, GenerateArgs, SpectrumArgs};

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn both_shifts(cfg: &SolverConfig, h: &UniformHypergraph) -> [(&'static str, f64); 2] {
    let a = SpectralKind::Adjacency;
    let q = SpectralKind::SignlessLaplacian;
    [
        ("adjacency", cfg.effective_shift(a.operator(h).kind())),
        (
            "signless-laplacian",
            cfg.effective_shift(q.operator(h).kind()),
        ),
    ]
}

fn solve_allow_unconverged(
    h: &UniformHypergraph,
    kind: SpectralKind,
    cfg: &SolverConfig,
) -> CliResult<EigenPair> {
    match spectral_radius(h, kind, cfg) {
        Ok(p) => Ok(p),
        Err(Error::NotConverged(p)) => Ok(*p),
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Serialize)]
struct SpectrumResult {
    kind: SpectralKind,
    lambda: f64,
    lower: f64,
    upper: f64,
    residual: f64,
    iterations: usize,
    converged: bool,
    vector: Vec<f64>,
}

pub fn spectrum(a: &SpectrumArgs) -> CliResult<()> {
    let start = Instant::now();
    let loaded = load(&a.input)?;
    let cfg = a.solver.config()?;
    let dense_cap = DenseCap::from_env()?;
    let h = &loaded.graph;
    let pair = solve_allow_unconverged(h, a.kind, &cfg)?;
    let shift = cfg.effective_shift(a.kind.operator(h).kind());
    let kind_name = a.kind.to_string();

    let text = if a.output.json {
        let report = RunReport {
            command: "spectrum".into(),
            input: loaded.descriptor.clone(),
            config: ConfigEcho::new(&cfg, dense_cap, &[(&kind_name, shift)]),
            hypergraph: Some(h.to_json()),
            results: SpectrumResult {
                kind: a.kind,
                lambda: pair.lambda,
                lower: pair.lower,
                upper: pair.upper,
                residual: pair.residual,
                iterations: pair.iterations,
                converged: pair.converged,
                vector: pair.vector.clone(),
            },
            elapsed_ms: a.output.timing.then(|| elapsed_ms(start)),
        };
        to_json(&report)?
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "input       {}", loaded.descriptor);
        let _ = writeln!(s, "n r edges   {} {} {}", h.n(), h.r(), h.edge_count());
        let _ = writeln!(s, "kind        {kind_name}");
        let _ = writeln!(s, "lambda      {}", fmt_f(pair.lambda));
        let _ = writeln!(
            s,
            "bracket     [{}, {}]",
            fmt_f(pair.lower),
            fmt_f(pair.upper)
        );
        let _ = writeln!(s, "residual    {}", fmt_f(pair.residual));
        let _ = writeln!(s, "iterations  {}", pair.iterations);
        let _ = writeln!(s, "converged   {}", pair.converged);
        let _ = writeln!(
            s,
            "tolerance   {}  shift {}  seed {}",
            fmt_f(cfg.tolerance),
            fmt_f(shift),
            cfg.seed
        );
        s
    };
    emit(&text, a.output.out.as_deref())?;
    eprintln!("elapsed: {} ms", fmt_f(elapsed_ms(start)));

    if !pair.converged {
        return Err(CliError::NotConverged(format!(
            "bracket [{}, {}] after {} iterations",
            fmt_f(pair.lower),
            fmt_f(pair.upper),
            pair.iterations
        )));
    }
    Ok(())
}

fn bound_table(descriptor: &str, v: &BoundVerification) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "input      {descriptor}");
    let _ = writeln!(
        s,
        "n {}  r {}  edges {}  connected {}  regular {}",
        v.n, v.r, v.edges, v.connected, v.regular
    );
    let _ = writeln!(
        s,
        "{:<24} {:>16} {:>16} {:>16}  {:<8} {:<10}",
        "kind", "bound", "rho", "gap", "equality", "consistent"
    );
    for r in &v.reports {
        let _ = writeln!(
            s,
            "{:<24} {:>16} {:>16} {:>16}  {:<8} {:<10}",
            r.kind.to_string(),
            fmt_f(r.bound),
            fmt_f(r.rho),
            fmt_f(r.gap),
            r.equality,
            r.consistent.map_or("n/a".to_string(), |c| c.to_string()),
        );
    }
    let _ = writeln!(
        s,
        "power mean >= average degree: {}",
        v.power_mean_dominates
    );
    s
}

pub fn bound_csv(descriptor: &str, v: &BoundVerification) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "input",
        "kind",
        "bound",
        "rho",
        "gap",
        "regular",
        "equality",
        "connected",
        "consistent",
    ])?;
    for r in &v.reports {
        w.write_record([
            descriptor.to_string(),
            r.kind.to_string(),
            fmt_f(r.bound),
            fmt_f(r.rho),
            fmt_f(r.gap),
            r.regular.to_string(),
            r.equality.to_string(),
            r.connected.to_string(),
            r.consistent.map_or(String::new(), |c| c.to_string()),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Input(e.to_string()))
}

pub fn bound(a: &BoundArgs) -> CliResult<()> {
    let start = Instant::now();
    let loaded = load(&a.input)?;
    let cfg = a.solver.config()?;
    let dense_cap = DenseCap::from_env()?;
    let h = &loaded.graph;
    let v = verify_bounds(h, &cfg)?;

    let text = if a.output.json {
        to_json(&RunReport {
            command: "bound".into(),
            input: loaded.descriptor.clone(),
            config: ConfigEcho::new(&cfg, dense_cap, &both_shifts(&cfg, h)),
            hypergraph: Some(h.to_json()),
            results: &v,
            elapsed_ms: a.output.timing.then(|| elapsed_ms(start)),
        })?
    } else if a.csv {
        bound_csv(&loaded.descriptor, &v)?
    } else {
        bound_table(&loaded.descriptor, &v)
    };
    emit(&text, a.output.out.as_deref())?;
    eprintln!("elapsed: {} ms", fmt_f(elapsed_ms(start)));

    if !v.all_converged() {
        return Err(CliError::NotConverged(
            "spectral radius not certified; raise --max-iter or --tol".into(),
        ));
    }
    if let Some(r) = v.reports.iter().find(|r| r.is_violated(cfg.tolerance)) {
        return Err(CliError::Check(format!(
            "{} bound {} exceeds rho {}",
            r.kind,
            fmt_f(r.bound),
            fmt_f(r.rho)
        )));
    }
    if !v.all_consistent() {
        eprintln!("warning: equality flag disagrees with regularity");
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct BlowupResult {
    n: usize,
    r: usize,
    edges: usize,
    tilde_vertices: usize,
    tilde_edges: usize,
    written: Option<String>,
    vertex_map: Option<String>,
    claims: Option<ClaimsReport>,
    passed: Option<bool>,
}

fn verdict(p: bool) -> &'static str {
    if p {
        "ok"
    } else {
        "FAIL"
    }
}

fn claims_table(c: &ClaimsReport) -> String {
    let mut s = String::new();
    let conn = match c.connectivity_passed {
        Some(p) => format!(
            "{}  base {} blow-up {}",
            verdict(p),
            c.base_connected,
            c.tilde_connected
        ),
        None => format!(
            "n/a  base {} blow-up {} (not asserted for r = 2)",
            c.base_connected, c.tilde_connected
        ),
    };
    let _ = writeln!(s, "connectivity  {conn}");
    let _ = writeln!(s, "degree law    {}", verdict(c.degree_law_passed));
    match (c.rho_b, c.rho_b_passed) {
        (Some(rho), Some(p)) => {
            let _ = writeln!(s, "rho(B)        {}  {}", verdict(p), fmt_f(rho));
        }
        _ => {
            let _ = writeln!(s, "rho(B)        n/a  beyond dense cap");
        }
    }
    let _ = writeln!(
        s,
        "product       {}  max rel err {} over {} trials{}",
        verdict(c.product.passed),
        fmt_f(c.product.apply.max_relative_error),
        c.product.apply.trials,
        match c.product.entrywise {
            Some(e) => format!(", entrywise {}", verdict(e)),
            None => String::new(),
        }
    );
    let sc = &c.scaling;
    let _ = writeln!(
        s,
        "scaling       {}  rho(H) {}  rho(H~) {}  diff {}",
        verdict(sc.passed),
        fmt_f(sc.rho_base),
        fmt_f(sc.rho_tilde),
        fmt_f(sc.difference)
    );
    let q = &c.q;
    let _ = writeln!(
        s,
        "signless      {}  max rel err {}  rho(Q) {}  rho(Q~) {}  diff {}",
        verdict(q.passed),
        fmt_f(q.apply.max_relative_error),
        fmt_f(q.scaling.rho_base),
        fmt_f(q.scaling.rho_tilde),
        fmt_f(q.scaling.difference)
    );
    match &c.certificate {
        Some(cert) => {
            let _ = writeln!(
                s,
                "certificate   {}  target {}  A {}  Q {}",
                verdict(cert.passed),
                fmt_f(cert.target),
                fmt_f(cert.adjacency_value),
                fmt_f(cert.signless_value)
            );
        }
        None => {
            let _ = writeln!(s, "certificate   n/a  no edges");
        }
    }
    s
}

pub fn blowup(a: &BlowupArgs) -> CliResult<()> {
    let start = Instant::now();
    let loaded = load(&a.input)?;
    let cfg = a.solver.config()?;
    let dense_cap = DenseCap::from_env()?;
    let caps = BlowupCaps {
        max_vertices: a.cap_vertices,
        max_edges: a.cap_edges,
    };
    let h = &loaded.graph;
    let b = build_blowup(h, &caps)?;

    let mut written = None;
    let mut map_written = None;
    if let Some(out) = &a.out {
        fs::write(out, b.tilde.to_text())?;
        let map_path = a.map.clone().unwrap_or_else(|| {
            let mut p = out.clone().into_os_string();
            p.push(".map.json");
            PathBuf::from(p)
        });
        let mut map = serde_json::to_string(&b.vertex_map())?;
        map.push('\n');
        fs::write(&map_path, map)?;
        written = Some(out.display().to_string());
        map_written = Some(map_path.display().to_string());
    }

    let claims = if a.verify {
        Some(verify_claims(
            h, &cfg, a.trials, cfg.seed, &caps, &dense_cap,
        )?)
    } else {
        None
    };
    let passed = claims.as_ref().map(ClaimsReport::passed);

    let result = BlowupResult {
        n: h.n(),
        r: h.r(),
        edges: h.edge_count(),
        tilde_vertices: b.tilde.n(),
        tilde_edges: b.tilde.edge_count(),
        written,
        vertex_map: map_written,
        claims,
        passed,
    };
    let text = if a.json {
        to_json(&RunReport {
            command: "blowup".into(),
            input: loaded.descriptor.clone(),
            config: ConfigEcho::new(&cfg, dense_cap, &both_shifts(&cfg, h)),
            hypergraph: Some(h.to_json()),
            results: &result,
            elapsed_ms: a.timing.then(|| elapsed_ms(start)),
        })?
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "input         {}", loaded.descriptor);
        let _ = writeln!(
            s,
            "base          n {}  r {}  edges {}",
            result.n, result.r, result.edges
        );
        let _ = writeln!(
            s,
            "blow-up       vertices {}  edges {}",
            result.tilde_vertices, result.tilde_edges
        );
        if let (Some(w), Some(m)) = (&result.written, &result.vertex_map) {
            let _ = writeln!(s, "written       {w}  (vertex map {m})");
        }
        if let Some(c) = &result.claims {
            s.push_str(&claims_table(c));
            let _ = writeln!(
                s,
                "result        {}",
                if c.passed() { "PASS" } else { "FAIL" }
            );
        }
        s
    };
    emit(&text, None)?;
    eprintln!("elapsed: {} ms", fmt_f(elapsed_ms(start)));

    if passed == Some(false) {
        eprintln!("witness:");
        eprint!("{}", to_json(&result.claims)?);
        return Err(CliError::Check("blow-up identities failed".into()));
    }
    Ok(())
}

pub fn generate(a: &GenerateArgs) -> CliResult<()> {
    let h = from_spec(&a.spec)?;
    let text = if a.json {
        to_json(&h.to_json())?
    } else {
        h.to_text()
    };
    emit(&text, a.out.as_deref())
}
