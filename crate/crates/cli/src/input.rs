use std::fs;
use std::path::Path;

use hyperspec::hypergraph::{generate, parse_hypergraph, Family};
use hyperspec::UniformHypergraph;

use crate::error::{CliError, CliResult};
use crate::InputArgs;

pub struct Loaded {
    pub graph: UniformHypergraph,
    /// `gen:<spec>` or the path as given.
    pub descriptor: String,
}

pub fn load(args: &InputArgs) -> CliResult<Loaded> {
    match (&args.path, &args.spec) {
        (Some(path), _) => Ok(Loaded {
            graph: read_file(path)?,
            descriptor: path.display().to_string(),
        }),
        (None, Some(spec)) => Ok(Loaded {
            graph: from_spec(spec)?,
            descriptor: format!("gen:{spec}"),
        }),
        (None, None) => Err(CliError::Input("one of --in or --gen is required".into())),
    }
}

pub fn from_spec(spec: &str) -> CliResult<UniformHypergraph> {
    let family: Family = spec.parse()?;
    Ok(generate(family)?)
}

pub fn read_file(path: &Path) -> CliResult<UniformHypergraph> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_text_or_json(path, &text)
}

pub fn parse_text_or_json(path: &Path, text: &str) -> CliResult<UniformHypergraph> {
    let located = |e: hyperspec::Error| match CliError::from(e) {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        other => other,
    };
    if path.extension().is_some_and(|e| e == "json") {
        return UniformHypergraph::from_json_str(text).map_err(located);
    }
    let parsed = parse_hypergraph(text).map_err(located)?;
    if parsed.duplicates > 0 {
        eprintln!(
            "warning: {}: dropped {} duplicate edge(s)",
            path.display(),
            parsed.duplicates
        );
    }
    Ok(parsed.graph)
}
