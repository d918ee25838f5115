use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use hyperspec::hypergraph::HypergraphJson;
use hyperspec::spectral::SolverConfig;
use hyperspec::tensor::DenseCap;
use serde::Serialize;
use serde_json::Value;

use crate::error::CliResult;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// `x` rounded to twelve significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .unwrap_or(x)
}

/// Shortest decimal form of `x` after rounding to twelve significant digits.
pub fn fmt_f(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_sig(x);
    if r == 0.0 {
        return "0".into();
    }
    let a = r.abs();
    if (1e-5..1e15).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(num) = n
                .as_f64()
                .and_then(|x| serde_json::Number::from_f64(round_sig(x)))
            {
                *n = num;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with every float rounded to twelve significant digits.
pub fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut v = serde_json::to_value(value)?;
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Shift as requested; `null` means the per-operator default.
    pub shift: Option<f64>,
    /// Shift actually used for each operator the command touched.
    pub effective_shift: BTreeMap<String, f64>,
    pub seed: u64,
    pub restarts: usize,
    pub dense_cap: DenseCap,
}

impl ConfigEcho {
    pub fn new(cfg: &SolverConfig, dense_cap: DenseCap, shifts: &[(&str, f64)]) -> Self {
        Self {
            tolerance: cfg.tolerance,
            max_iterations: cfg.max_iterations,
            shift: cfg.shift,
            effective_shift: shifts.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            seed: cfg.seed,
            restarts: cfg.restarts,
            dense_cap,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport<T> {
    pub command: String,
    pub input: String,
    pub config: ConfigEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypergraph: Option<HypergraphJson>,
    pub results: T,
    /// Wall time, only with `--timing` so default output stays reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn emit(text: &str, path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}
