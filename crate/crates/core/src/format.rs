//! Line-oriented text formats for graphs and biclique systems.
//!
//! Graph:
//! ```text
//! n 4
//! e 1 2
//! e 3 4
//! ```
//! Biclique system (one biclique per `b` line, sides split by `|`):
//! ```text
//! n 4
//! b 1 2 | 3 4
//! ```
//! `#` starts a comment; blank lines are ignored. Writers emit vertices
//! ascending, edges in lexicographic order and bicliques in list order.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Biclique, BicliqueSystem, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Non-empty, comment-stripped lines with their 1-based numbers.
fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then_some((i + 1, content))
    })
}

fn parse_vertex(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .map_err(|_| err(line, format!("expected a vertex id, found `{tok}`")))
}

fn parse_header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<usize, ParseError> {
    let (line, content) = lines.next().ok_or_else(|| err(1, "missing `n <count>` header"))?;
    let mut toks = content.split_whitespace();
    if toks.next() != Some("n") {
        return Err(err(line, "expected `n <count>` header before any other line"));
    }
    let count = toks
        .next()
        .ok_or_else(|| err(line, "missing vertex count"))?
        .parse::<usize>()
        .map_err(|_| err(line, "vertex count is not a nonnegative integer"))?;
    if toks.next().is_some() {
        return Err(err(line, "trailing tokens after vertex count"));
    }
    Ok(count)
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = meaningful_lines(text);
    let n = parse_header(&mut lines)?;
    let mut g = Graph::empty(n);
    for (line, content) in lines {
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks.as_slice() {
            ["e", u, v] => {
                let u = parse_vertex(u, line)?;
                let v = parse_vertex(v, line)?;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(err(line, GraphError::VertexOutOfRange { vertex: x, n }.to_string()));
                    }
                }
                if u == v {
                    return Err(err(line, GraphError::SelfLoop(u).to_string()));
                }
                if !g.insert_edge(u, v) {
                    return Err(err(line, GraphError::DuplicateEdge(u.min(v), u.max(v)).to_string()));
                }
            }
            ["e", ..] => return Err(err(line, "edge line needs exactly two vertices: `e <u> <v>`")),
            ["n", ..] => return Err(err(line, "repeated `n` header")),
            [other, ..] => return Err(err(line, format!("unknown directive `{other}`"))),
            [] => unreachable!("blank lines are filtered"),
        }
    }
    Ok(g)
}

pub fn parse_system(text: &str) -> Result<BicliqueSystem, ParseError> {
    let mut lines = meaningful_lines(text);
    let n = parse_header(&mut lines)?;
    let mut bicliques = Vec::new();
    for (line, content) in lines {
        let mut toks = content.split_whitespace();
        match toks.next() {
            Some("b") => {}
            Some("n") => return Err(err(line, "repeated `n` header")),
            Some(other) => return Err(err(line, format!("unknown directive `{other}`"))),
            None => unreachable!("blank lines are filtered"),
        }
        let rest: Vec<&str> = toks.collect();
        let bar = rest
            .iter()
            .position(|&t| t == "|")
            .ok_or_else(|| err(line, "biclique line needs `|` between its sides"))?;
        if rest[bar + 1..].contains(&"|") {
            return Err(err(line, "more than one `|` on biclique line"));
        }
        let left = rest[..bar]
            .iter()
            .map(|t| parse_vertex(t, line))
            .collect::<Result<Vec<_>, _>>()?;
        let right = rest[bar + 1..]
            .iter()
            .map(|t| parse_vertex(t, line))
            .collect::<Result<Vec<_>, _>>()?;
        let index = bicliques.len();
        let b = Biclique::from_sides(n, left, right)
            .map_err(|defect| err(line, GraphError::InvalidBiclique { index, defect }.to_string()))?;
        bicliques.push(b);
    }
    Ok(BicliqueSystem::new(n, bicliques).expect("bicliques built over the declared universe"))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

pub fn write_system(system: &BicliqueSystem) -> String {
    let mut out = format!("n {}\n", system.universe_n());
    for b in system.bicliques() {
        out.push('b');
        for v in b.left() {
            write!(out, " {v}").unwrap();
        }
        out.push_str(" |");
        for v in b.right() {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_parse_with_comments() {
        let g = parse_graph("# triangle\n\nn 3\ne 1 2 # first\ne 3 2\n  e 1 3\n").unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(write_graph(&g), "n 3\ne 1 2\ne 1 3\ne 2 3\n");
    }

    #[test]
    fn system_parse_and_write() {
        let s = parse_system("n 4\nb 2 1 | 4 3\nb 1 3|2 4\n").unwrap_err();
        // `3|2` is one token, so the second line lacks a separator.
        assert_eq!(s.line, 3);

        let s = parse_system("n 4\nb 2 1 | 4 3\nb 1 3 | 2 4\n").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(write_system(&s), "n 4\nb 1 2 | 3 4\nb 1 3 | 2 4\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse_graph("").unwrap_err().message, "missing `n <count>` header");
        assert_eq!(parse_graph("e 1 2\n").unwrap_err().line, 1);
        assert_eq!(parse_graph("n 3\ne 1 2\ne 2 1\n").unwrap_err().line, 3);
        assert_eq!(parse_graph("n 3\n\ne 1 4\n").unwrap_err().line, 3);
        assert_eq!(parse_graph("n 3\ne 1 x\n").unwrap_err().line, 2);
        assert_eq!(parse_graph("n 3\nq 1 2\n").unwrap_err().line, 2);
        assert_eq!(
            parse_graph("n 3\ne 2 2\n").unwrap_err().message,
            "self-loop at vertex 2"
        );

        let e = parse_system("n 3\nb 1 | 2\nb 1 2 | 2\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert_eq!(e.message, "biclique 2: vertex 2 lies on both sides");
        assert_eq!(
            parse_system("n 3\nb | 2\n").unwrap_err().message,
            "biclique 1: left side is empty"
        );
        assert_eq!(parse_system("n 3\nb 1 | 2 | 3\n").unwrap_err().line, 2);
        assert_eq!(parse_system("n 3\nn 3\n").unwrap_err().line, 2);
    }

    #[test]
    fn empty_system_round_trip() {
        let s = parse_system("n 5\n").unwrap();
        assert!(s.is_empty());
        assert_eq!(write_system(&s), "n 5\n");
    }
}
