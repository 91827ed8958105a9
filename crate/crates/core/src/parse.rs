//! Text format for perfect matching drawings.
//!
//! ```text
//! # theta graph
//! vertex u: e1.0 e2.0 e3.0
//! vertex v: e1.1 e3.1 e2.1
//! matching: e1
//! ```
//!
//! Darts are listed counterclockwise. Edge ids follow the order in which
//! edge names first appear on vertex lines.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::planar::{DiagramError, EdgeId, PlanarDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("line {line}: edge {name:?} is not used by any vertex")]
    UndeclaredEdge { line: usize, name: String },
    #[error("line {line}: vertex {name:?} declared twice")]
    DuplicateVertex { line: usize, name: String },
    #[error("line {line}: dart {name}.{side} listed twice")]
    DuplicateDart { line: usize, name: String, side: u8 },
    #[error("edge {name:?} is missing dart .{side}")]
    MissingDart { name: String, side: u8 },
    #[error("line {line}: vertex {vertex:?} has {degree} darts, expected 3")]
    NonTrivalent { line: usize, vertex: String, degree: usize },
    #[error(transparent)]
    Validation(#[from] DiagramError),
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, col, message: message.into() }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| !c.is_whitespace() && !matches!(c, ':' | '.' | '#' | ','))
}

/// Tokens of one line paired with their 1-based character column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let mut col = 0;
    let mut start_col = 0;
    for (byte, ch) in line.char_indices() {
        col += 1;
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((start_col, &line[s..byte]));
            }
        } else if start.is_none() {
            start = Some(byte);
            start_col = col;
        }
    }
    if let Some(s) = start {
        out.push((start_col, &line[s..]));
    }
    out
}

/// Named description of a map, shared by the parser and the family generators.
pub(crate) struct NamedMap<'a> {
    pub vertices: Vec<(&'a str, Vec<(&'a str, u8)>)>,
    pub matching: Vec<&'a str>,
}

impl NamedMap<'_> {
    /// Assigns edge ids by first appearance and builds a validated diagram.
    pub fn build(&self) -> Result<PlanarDiagram, ParseError> {
        let (d, _) = self.build_with_lines(None)?;
        d.check()?;
        Ok(d)
    }

    fn build_with_lines(&self, lines: Option<&[usize]>) -> Result<(PlanarDiagram, HashMap<String, EdgeId>), ParseError> {
        let line_of = |i: usize| lines.map_or(0, |l| l[i]);
        let mut ids: HashMap<String, EdgeId> = HashMap::new();
        let mut edge_names: Vec<String> = Vec::new();
        let mut seen: HashMap<(EdgeId, u8), ()> = HashMap::new();
        let mut vnames: HashMap<&str, ()> = HashMap::new();
        let mut rotations = Vec::new();
        for (vi, (vname, darts)) in self.vertices.iter().enumerate() {
            if vnames.insert(vname, ()).is_some() {
                return Err(ParseError::DuplicateVertex { line: line_of(vi), name: vname.to_string() });
            }
            if darts.len() != 3 {
                return Err(ParseError::NonTrivalent {
                    line: line_of(vi),
                    vertex: vname.to_string(),
                    degree: darts.len(),
                });
            }
            let mut rot = [0usize; 3];
            for (slot, (ename, side)) in darts.iter().enumerate() {
                let e = *ids.entry(ename.to_string()).or_insert_with(|| {
                    edge_names.push(ename.to_string());
                    edge_names.len() - 1
                });
                if seen.insert((e, *side), ()).is_some() {
                    return Err(ParseError::DuplicateDart { line: line_of(vi), name: ename.to_string(), side: *side });
                }
                rot[slot] = 2 * e + *side as usize;
            }
            rotations.push(rot);
        }
        for (e, name) in edge_names.iter().enumerate() {
            for side in 0..2u8 {
                if !seen.contains_key(&(e, side)) {
                    return Err(ParseError::MissingDart { name: name.clone(), side });
                }
            }
        }
        let mut matching = Vec::new();
        for name in &self.matching {
            match ids.get(*name) {
                Some(&e) => matching.push(e),
                None => {
                    return Err(ParseError::UndeclaredEdge {
                        line: lines.map_or(0, |l| l[self.vertices.len()]),
                        name: name.to_string(),
                    })
                }
            }
        }
        let vertex_names = self.vertices.iter().map(|(n, _)| n.to_string()).collect();
        let d = PlanarDiagram::structural(rotations, &matching, vertex_names, edge_names)?;
        Ok((d, ids))
    }
}

/// Parses and validates a graph file.
pub fn parse_diagram(text: &str) -> Result<PlanarDiagram, ParseError> {
    let mut vertices = Vec::new();
    let mut vertex_lines = Vec::new();
    let mut matching = Vec::new();
    let mut matching_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(&(col0, head)) = toks.first() else { continue };
        if head == "vertex" {
            let Some(&(ncol, name_tok)) = toks.get(1) else {
                return Err(syntax(lineno, col0 + head.len(), "expected vertex name"));
            };
            let (name, mut rest) = match name_tok.strip_suffix(':') {
                Some(n) => (n, &toks[2..]),
                None => match toks.get(2) {
                    Some(&(_, ":")) => (name_tok, &toks[3..]),
                    _ => return Err(syntax(lineno, ncol + name_tok.chars().count(), "expected ':' after vertex name")),
                },
            };
            if !valid_name(name) {
                return Err(syntax(lineno, ncol, format!("invalid vertex name {name:?}")));
            }
            let mut darts = Vec::new();
            while let Some((&(col, tok), tail)) = rest.split_first() {
                rest = tail;
                let Some((ename, side)) = tok.rsplit_once('.') else {
                    return Err(syntax(lineno, col, format!("expected <edge>.<0|1>, found {tok:?}")));
                };
                if !valid_name(ename) {
                    return Err(syntax(lineno, col, format!("invalid edge name {ename:?}")));
                }
                let side = match side {
                    "0" => 0u8,
                    "1" => 1u8,
                    _ => {
                        let c = col + ename.chars().count() + 1;
                        return Err(syntax(lineno, c, format!("dart side must be 0 or 1, found {side:?}")));
                    }
                };
                darts.push((ename, side));
            }
            vertices.push((name, darts));
            vertex_lines.push(lineno);
        } else if let Some(after) = head.strip_prefix("matching") {
            let rest: &[(usize, &str)] = if after == ":" {
                &toks[1..]
            } else if after.is_empty() && toks.get(1).map(|t| t.1) == Some(":") {
                &toks[2..]
            } else {
                return Err(syntax(lineno, col0 + "matching".len(), "expected ':' after 'matching'"));
            };
            for &(col, tok) in rest {
                if !valid_name(tok) {
                    return Err(syntax(lineno, col, format!("invalid edge name {tok:?}")));
                }
                matching.push(tok);
            }
            matching_line = lineno;
        } else {
            return Err(syntax(lineno, col0, format!("expected 'vertex' or 'matching', found {head:?}")));
        }
    }
    let named = NamedMap { vertices, matching };
    vertex_lines.push(matching_line);
    let (d, _) = named.build_with_lines(Some(&vertex_lines))?;
    d.check()?;
    Ok(d)
}

/// Writes a diagram in graph-file syntax; `parse_diagram` reads it back.
pub fn to_graph_file(d: &PlanarDiagram) -> String {
    let mut out = String::new();
    for v in 0..d.num_vertices() {
        let _ = write!(out, "vertex {}:", d.vertex_name(v));
        for dart in d.rotation(v) {
            let _ = write!(out, " {}.{}", d.edge_name(dart / 2), dart % 2);
        }
        out.push('\n');
    }
    out.push_str("matching:");
    for e in d.matching_edges() {
        out.push(' ');
        out.push_str(d.edge_name(e));
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const THETA: &str = "# theta\nvertex u: e1.0 e2.0 e3.0\nvertex v: e1.1 e3.1 e2.1\nmatching: e1\n";

    #[test]
    fn theta_file() {
        let d = parse_diagram(THETA).unwrap();
        assert_eq!((d.num_vertices(), d.num_edges(), d.matching_edges().len()), (2, 3, 1));
        assert_eq!(d.edge_name(0), "e1");
        assert_eq!(parse_diagram(&to_graph_file(&d)).unwrap(), d);
    }

    #[test]
    fn error_kinds() {
        let missing_match = "vertex u: e1.0 e2.0 e3.0\nvertex v: e1.1 e3.1 e2.1\nmatching:\n";
        assert!(matches!(
            parse_diagram(missing_match),
            Err(ParseError::Validation(DiagramError::MatchingNotPerfect { .. }))
        ));
        let bad_side = "vertex u: e1.0 e2.2 e3.0\n";
        assert_eq!(
            parse_diagram(bad_side),
            Err(ParseError::Syntax { line: 1, col: 19, message: "dart side must be 0 or 1, found \"2\"".into() })
        );
        let undeclared = "vertex u: e1.0 e2.0 e3.0\nvertex v: e1.1 e3.1 e2.1\nmatching: e9\n";
        assert!(matches!(parse_diagram(undeclared), Err(ParseError::UndeclaredEdge { line: 3, .. })));
        let degree = "vertex u: e1.0 e2.0\n";
        assert!(matches!(parse_diagram(degree), Err(ParseError::NonTrivalent { degree: 2, .. })));
        let half = "vertex u: e1.0 e2.0 e3.0\nvertex v: e1.1 e3.1 e4.1\nmatching: e1\n";
        assert!(matches!(parse_diagram(half), Err(ParseError::MissingDart { .. })));
        let twice = "vertex u: e1.0 e1.0 e3.0\n";
        assert!(matches!(parse_diagram(twice), Err(ParseError::DuplicateDart { .. })));
        assert!(matches!(parse_diagram("edge x\n"), Err(ParseError::Syntax { line: 1, col: 1, .. })));
        let twisted = "vertex u: e1.0 e2.0 e3.0\nvertex v: e1.1 e2.1 e3.1\nmatching: e1\n";
        assert!(matches!(parse_diagram(twisted), Err(ParseError::Validation(DiagramError::NonPlanar { .. }))));
    }

    #[test]
    fn spacing_variants() {
        let text = "vertex u : e1.0 e2.0 e3.0   # trailing\n\n  vertex v: e1.1 e3.1 e2.1\nmatching : e1";
        assert_eq!(parse_diagram(text).unwrap(), parse_diagram(THETA).unwrap());
    }
}
