//! DIMACS export of k-colorability and an external SAT solver runner.
//!
//! Variable `i * k + c + 1` means "vertex at canonical index `i` gets color
//! `c`". Clause order: one at-least-one clause per vertex, then one binary
//! conflict clause per edge and color (edges in lexicographic order), then
//! unit clauses fixing seed vertices to colors `0, 1, ...`.

use std::fmt::Write as _;
use std::path::Path;
use std::process::Command;

use crate::conflict::ConflictGraph;
use crate::error::{Error, Result};
use crate::limits::SearchLimits;

use super::coloring::Coloring;

pub fn var(i: usize, c: usize, k: usize) -> usize {
    i * k + c + 1
}

/// Encodes `k`-colorability of `g`; `seed` vertices are pre-assigned
/// colors `0..` (at most `k` of them are used).
pub fn export_cnf(g: &ConflictGraph, k: usize, seed: &[usize]) -> Result<String> {
    if k == 0 {
        return Err(Error::PreconditionViolated("k must be at least 1".into()));
    }
    let n = g.len();
    let seeded = &seed[..seed.len().min(k)];
    let clauses = n + g.edge_count() * k + seeded.len();
    let mut out = String::new();
    let _ = writeln!(out, "p cnf {} {}", n * k, clauses);
    for i in 0..n {
        for c in 0..k {
            let _ = write!(out, "{} ", var(i, c, k));
        }
        out.push_str("0\n");
    }
    for (u, v) in g.edges() {
        for c in 0..k {
            let _ = writeln!(out, "-{} -{} 0", var(u, c, k), var(v, c, k));
        }
    }
    for (c, &v) in seeded.iter().enumerate() {
        let _ = writeln!(out, "{} 0", var(v, c, k));
    }
    Ok(out)
}

/// [`export_cnf`] seeded with a maximum clique of `g`.
pub fn export_cnf_seeded(g: &ConflictGraph, k: usize, limits: SearchLimits) -> Result<String> {
    let clique = g.max_clique(limits)?;
    export_cnf(g, k, &clique)
}

/// Reads a coloring back from a satisfying assignment.
pub fn decode_model(g: &ConflictGraph, k: usize, model: &[i64]) -> Result<Coloring> {
    let mut colors = vec![None; g.len()];
    for &lit in model {
        if lit <= 0 {
            continue;
        }
        let idx = (lit - 1) as usize;
        let (i, c) = (idx / k, idx % k);
        if i >= g.len() {
            return Err(Error::Parse(format!("literal {lit} is out of range")));
        }
        if colors[i].is_none() {
            colors[i] = Some(c);
        }
    }
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| Error::MissingVertex(g.id(i).0.clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Coloring::from_indices(g, &colors))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatOutcome {
    Sat(Vec<i64>),
    Unsat,
}

/// Parses SAT-competition output (`s ...` verdict line, `v ...` model lines).
pub fn parse_solver_output(text: &str) -> Result<Option<SatOutcome>> {
    let mut verdict = None;
    let mut model = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            verdict = Some(match rest.trim() {
                "SATISFIABLE" => true,
                "UNSATISFIABLE" => false,
                other => return Err(Error::Parse(format!("unknown verdict `{other}`"))),
            });
        } else if let Some(rest) = line.strip_prefix("v ") {
            for tok in rest.split_whitespace() {
                let lit: i64 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad literal `{tok}`")))?;
                if lit != 0 {
                    model.push(lit);
                }
            }
        }
    }
    Ok(verdict.map(|sat| if sat { SatOutcome::Sat(model) } else { SatOutcome::Unsat }))
}

/// Runs `command` (whitespace-separated program and arguments) with the
/// CNF path appended as the final argument.
pub fn run_external_sat(cnf_path: &Path, command: &str) -> Result<SatOutcome> {
    let mut parts = command.split_whitespace();
    let program = parts
        .next()
        .ok_or_else(|| Error::PreconditionViolated("empty solver command".into()))?;
    let output = Command::new(program)
        .args(parts)
        .arg(cnf_path)
        .output()
        .map_err(|e| Error::SolverCrash(format!("cannot launch `{program}`: {e}")))?;
    let stdout = String::from_utf8_lossy(&output.stdout);
    match parse_solver_output(&stdout)? {
        Some(outcome) => Ok(outcome),
        None if !output.status.success() => Err(Error::SolverCrash(format!(
            "`{program}` exited with {} and no verdict: {}",
            output.status,
            String::from_utf8_lossy(&output.stderr).trim()
        ))),
        None => Err(Error::Parse("solver printed no `s` line".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::BoxId;

    fn edge() -> ConflictGraph {
        ConflictGraph::from_edges(
            vec![BoxId::from("a"), BoxId::from("b")],
            vec![(BoxId::from("a"), BoxId::from("b"))],
            None,
        )
        .unwrap()
    }

    #[test]
    fn single_edge_encoding_is_exact() {
        let g = edge();
        assert_eq!(
            export_cnf(&g, 2, &[]).unwrap(),
            "p cnf 4 4\n1 2 0\n3 4 0\n-1 -3 0\n-2 -4 0\n"
        );
        assert_eq!(
            export_cnf(&g, 2, &[0, 1]).unwrap(),
            "p cnf 4 6\n1 2 0\n3 4 0\n-1 -3 0\n-2 -4 0\n1 0\n4 0\n"
        );
    }

    #[test]
    fn parses_competition_output() {
        let out = "c comment\ns SATISFIABLE\nv 1 -2 -3\nv 4 0\n";
        assert_eq!(
            parse_solver_output(out).unwrap(),
            Some(SatOutcome::Sat(vec![1, -2, -3, 4]))
        );
        assert_eq!(
            parse_solver_output("s UNSATISFIABLE\n").unwrap(),
            Some(SatOutcome::Unsat)
        );
        assert_eq!(parse_solver_output("c nothing\n").unwrap(), None);
        assert!(parse_solver_output("s MAYBE\n").is_err());
    }

    #[test]
    fn model_decodes_to_coloring() {
        let g = edge();
        let c = decode_model(&g, 2, &[1, -2, -3, 4]).unwrap();
        assert_eq!(c.get(&"a".into()), Some(0));
        assert_eq!(c.get(&"b".into()), Some(1));
        assert!(matches!(decode_model(&g, 2, &[1]), Err(Error::MissingVertex(_))));
    }

    #[test]
    fn missing_solver_is_a_crash() {
        let err = run_external_sat(Path::new("/nonexistent.cnf"), "/definitely/not/a/solver").unwrap_err();
        assert!(matches!(err, Error::SolverCrash(_)));
    }

    #[test]
    fn silent_failing_solver_is_a_crash() {
        let err = run_external_sat(Path::new("/nonexistent.cnf"), "false").unwrap_err();
        assert!(matches!(err, Error::SolverCrash(_)));
        let err = run_external_sat(Path::new("/nonexistent.cnf"), "true").unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }
}
