//! DIMACS-like graph format: a `p edge <n> <m>` header followed by `m` lines
//! `e <i> <j>` with 1-based vertex ids. Lines starting with `c` are comments.

use crate::graph::{Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("missing 'p edge n m' header")]
    MissingHeader,
    #[error("malformed line {line}: {text:?}")]
    MalformedLine { line: usize, text: String },
    #[error("line {line}: vertex id {id} out of range 1..={n}")]
    VertexOutOfRange { line: usize, id: usize, n: usize },
    #[error("line {line}: self-loop at vertex {id}")]
    SelfLoop { line: usize, id: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
}

pub fn read_dimacs(text: &str) -> Result<Graph, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let malformed = || DimacsError::MalformedLine { line, text: raw.to_string() };
        let mut parts = trimmed.split_whitespace();
        match parts.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(malformed());
                }
                let fmt = parts.next().ok_or_else(malformed)?;
                let n = parts.next().and_then(|s| s.parse().ok()).ok_or_else(malformed)?;
                let m = parts.next().and_then(|s| s.parse().ok()).ok_or_else(malformed)?;
                if fmt != "edge" || parts.next().is_some() {
                    return Err(malformed());
                }
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or(DimacsError::MissingHeader)?;
                let i: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(malformed)?;
                let j: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(malformed)?;
                if parts.next().is_some() {
                    return Err(malformed());
                }
                for id in [i, j] {
                    if id < 1 || id > n {
                        return Err(DimacsError::VertexOutOfRange { line, id, n });
                    }
                }
                if i == j {
                    return Err(DimacsError::SelfLoop { line, id: i });
                }
                edges.push((i - 1, j - 1));
            }
            _ => return Err(malformed()),
        }
    }
    let (n, m) = header.ok_or(DimacsError::MissingHeader)?;
    if edges.len() != m {
        return Err(DimacsError::EdgeCountMismatch { declared: m, found: edges.len() });
    }
    Graph::new(n, edges).map_err(|e| match e {
        GraphError::DuplicateEdge(u, v) => DimacsError::DuplicateEdge { line: 0, u: u + 1, v: v + 1 },
        // Self-loops and range errors are caught above; anything else is unreachable.
        other => panic!("unexpected graph error from dimacs input: {other}"),
    })
}

/// Canonical form: edges sorted as `(min, max)`, 1-based.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_k2() {
        let g = read_dimacs("p edge 2 1\ne 1 2\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn round_trip_is_canonical() {
        let text = "c a comment\np edge 4 3\ne 2 1\ne 3 4\ne 2 3\n";
        let g = read_dimacs(text).unwrap();
        let canon = write_dimacs(&g);
        assert_eq!(canon, "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n");
        assert_eq!(read_dimacs(&canon).unwrap(), g);
    }

    #[test]
    fn distinct_parse_errors() {
        assert!(matches!(
            read_dimacs("p edge 2 1\ne 1 1\n"),
            Err(DimacsError::SelfLoop { id: 1, .. })
        ));
        assert!(matches!(
            read_dimacs("p edge 2 1\ne 1 3\n"),
            Err(DimacsError::VertexOutOfRange { id: 3, .. })
        ));
        assert!(matches!(
            read_dimacs("p edge 2 2\ne 1 2\ne 2 1\n"),
            Err(DimacsError::DuplicateEdge { .. })
        ));
        assert!(matches!(
            read_dimacs("p edge 2 1\ne one 2\n"),
            Err(DimacsError::MalformedLine { line: 2, .. })
        ));
        assert!(matches!(read_dimacs("e 1 2\n"), Err(DimacsError::MissingHeader)));
        assert!(matches!(
            read_dimacs("p edge 3 2\ne 1 2\n"),
            Err(DimacsError::EdgeCountMismatch { declared: 2, found: 1 })
        ));
    }
}
