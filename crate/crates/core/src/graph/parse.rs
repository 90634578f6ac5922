use std::collections::BTreeSet;

use super::{Digraph, Graph};
use crate::error::{Error, ParseIssue, Result};

/// Significant lines of an edge-list document with their 1-based line
/// numbers. Comment lines (`#`) and blank lines are skipped.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

/// Reads the header and the `u v` pairs, checking ranges, loops and
/// duplicates of the underlying unordered pairs.
fn parse_pairs(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let err = |line, issue| Error::Parse { line, issue };
    let mut lines = significant_lines(text);
    let (header_line, header) = lines.next().ok_or(err(1, ParseIssue::MalformedHeader))?;
    let (n, m) = parse_pair(header).ok_or(err(header_line, ParseIssue::MalformedHeader))?;

    let mut seen = BTreeSet::new();
    let mut pairs = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, body) in lines {
        last_line = line;
        if pairs.len() == m {
            return Err(err(
                line,
                ParseIssue::EdgeCount {
                    expected: m,
                    found: m + 1,
                },
            ));
        }
        let (u, v) = parse_pair(body).ok_or(err(line, ParseIssue::MalformedEdge))?;
        for w in [u, v] {
            if w >= n {
                return Err(err(line, ParseIssue::VertexOutOfRange { vertex: w, n }));
            }
        }
        if u == v {
            return Err(err(line, ParseIssue::SelfLoop { vertex: u }));
        }
        let (a, b) = (u.min(v), u.max(v));
        if !seen.insert((a, b)) {
            return Err(err(line, ParseIssue::DuplicateEdge { u: a, v: b }));
        }
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(err(
            last_line,
            ParseIssue::EdgeCount {
                expected: m,
                found: pairs.len(),
            },
        ));
    }
    Ok((n, pairs))
}

/// Parses an undirected edge-list document (`n m` header, then `m` lines
/// `u v`). Connectivity is not checked here; see [`super::validate`].
pub fn parse_graph(text: &str) -> Result<Graph> {
    let (n, pairs) = parse_pairs(text)?;
    Graph::new(n, pairs)
}

/// Parses a digraph document; each line `u v` is the arc `u -> v`.
/// Antiparallel arcs count as duplicate edges of the underlying graph.
pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let (n, pairs) = parse_pairs(text)?;
    Digraph::new(n, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let k2 = parse_graph("2 1\n0 1").unwrap();
        assert_eq!((k2.n(), k2.edges()), (2, &[(0, 1)][..]));
        let c3 = parse_graph("3 3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!(c3, Graph::cycle(3));
        let c4 = parse_graph("4 4\n0 1\n1 2\n2 3\n0 3\n").unwrap();
        assert_eq!(c4, Graph::cycle(4));
    }

    #[test]
    fn skips_comments() {
        let g = parse_graph("# triangle\n3 3\n0 1\n# middle\n1 2\n0 2\n").unwrap();
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let issue = |text| match parse_graph(text) {
            Err(Error::Parse { line, issue }) => (line, issue),
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(issue("x 1\n0 1"), (1, ParseIssue::MalformedHeader));
        assert_eq!(issue(""), (1, ParseIssue::MalformedHeader));
        assert_eq!(issue("2 1\n0"), (2, ParseIssue::MalformedEdge));
        assert_eq!(
            issue("2 1\n0 2"),
            (2, ParseIssue::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(
            issue("3 2\n0 1\n1 0"),
            (3, ParseIssue::DuplicateEdge { u: 0, v: 1 })
        );
        assert_eq!(issue("2 1\n1 1"), (2, ParseIssue::SelfLoop { vertex: 1 }));
        assert_eq!(
            issue("3 2\n0 1"),
            (2, ParseIssue::EdgeCount {
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            issue("3 1\n0 1\n1 2"),
            (3, ParseIssue::EdgeCount {
                expected: 1,
                found: 2
            })
        );
    }

    #[test]
    fn digraph_keeps_arc_direction() {
        let d = parse_digraph("3 3\n0 1\n1 2\n2 0\n").unwrap();
        assert!(d.has_arc(2, 0));
        assert!(!d.has_arc(0, 2));
        assert!(matches!(
            parse_digraph("2 2\n0 1\n1 0"),
            Err(Error::Parse {
                line: 3,
                issue: ParseIssue::DuplicateEdge { u: 0, v: 1 }
            })
        ));
    }
}
