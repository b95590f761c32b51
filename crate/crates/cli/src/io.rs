use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use boxchrom::{build_graph, Arrangement, ConflictGraph};

use crate::error::{CliError, CliResult};

/// An input file: either an arrangement or a bare conflict graph.
pub enum Input {
    Arrangement(Arrangement),
    Graph(ConflictGraph),
}

impl Input {
    pub fn graph(&self) -> CliResult<ConflictGraph> {
        match self {
            Input::Arrangement(a) => Ok(build_graph(a)?),
            Input::Graph(g) => Ok(g.clone()),
        }
    }

    pub fn arrangement(&self) -> CliResult<&Arrangement> {
        match self {
            Input::Arrangement(a) => Ok(a),
            Input::Graph(_) => Err(CliError::Usage(
                "this command needs an arrangement, not a conflict graph".into(),
            )),
        }
    }
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::File {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_input(path: &Path) -> CliResult<Input> {
    let text = read_text(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    if value.get("boxes").is_some() {
        Ok(Input::Arrangement(Arrangement::from_json(&text)?))
    } else {
        Ok(Input::Graph(ConflictGraph::from_edges_json(&text)?))
    }
}

/// Writes `text` to `path`, or to standard output when `path` is `None`.
pub fn emit(path: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::File {
            path: p.display().to_string(),
            source,
        }),
        None => {
            say(text.strip_suffix('\n').unwrap_or(text));
            Ok(())
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::File {
        path: path.display().to_string(),
        source,
    })
}

/// Prints one line to standard output. A closed pipe is not an error.
pub fn say(text: impl std::fmt::Display) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{text}") {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write output: {e}");
        }
    }
}
