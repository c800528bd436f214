//! Plain-text formats. Every writer emits a canonical, sorted serialization.
//!
//! | extension | content |
//! |-----------|---------|
//! | `.smax`   | one maximal simplex per line, whitespace-separated vertex tokens |
//! | `.dgr`    | one edge `u v` per line; a lone token is an isolated vertex |
//! | `.grad`   | `{..} -> {..}` pairs, then a `critical:` section |
//! | atlas     | `edge role {..}` |
//! | audit     | `key=value` |

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::graph::{DirectedGraph, Edge};
use crate::morse::{DiscreteGradient, GradientPair};
use crate::reductions::{AuditReport, GadgetAtlas, Role};

/// A parse failure. `line` is 1-based; 0 means the file as a whole.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl FormatError {
    fn at(line: usize, message: impl fmt::Display) -> Self {
        FormatError {
            line,
            message: message.to_string(),
        }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

/// Non-blank, non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn read_smax(text: &str) -> Result<SimplicialComplex, FormatError> {
    let mut generators = Vec::new();
    for (n, line) in content_lines(text) {
        let s = Simplex::from_tokens(line.split_whitespace()).map_err(|e| FormatError::at(n, e))?;
        generators.push(s);
    }
    Ok(SimplicialComplex::from_simplices(generators))
}

pub fn write_smax(k: &SimplicialComplex) -> String {
    let mut lines: Vec<String> = k
        .maximal_simplices()
        .iter()
        .map(|s| s.vertices().iter().map(VertexId::as_str).collect::<Vec<_>>().join(" "))
        .collect();
    lines.sort();
    lines.into_iter().map(|l| l + "\n").collect()
}

pub fn read_dgr(text: &str) -> Result<DirectedGraph, FormatError> {
    let mut g = DirectedGraph::new();
    for (n, line) in content_lines(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[..] {
            [v] => g.add_vertex(VertexId::new(v).map_err(|e| FormatError::at(n, e))?),
            [u, v] => {
                let e = Edge::from_tokens(u, v).map_err(|e| FormatError::at(n, e))?;
                if !g.add_edge(e.clone()) {
                    return Err(FormatError::at(n, format!("duplicate edge {e}")));
                }
            }
            _ => return Err(FormatError::at(n, "expected 'source target' or a single vertex")),
        }
    }
    Ok(g)
}

pub fn write_dgr(g: &DirectedGraph) -> String {
    let mut out = String::new();
    let touched: BTreeSet<&VertexId> = g.edges().iter().flat_map(|e| [&e.source, &e.target]).collect();
    for v in g.vertices().iter().filter(|v| !touched.contains(v)) {
        out.push_str(&format!("{v}\n"));
    }
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.source, e.target));
    }
    out
}

/// Contents of a `.grad` file before validation against a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradientFile {
    pub pairs: Vec<(usize, GradientPair)>,
    /// Listed critical simplices, if the file has a `critical:` section.
    pub critical: Option<(usize, Vec<(usize, Simplex)>)>,
}

fn parse_simplex(n: usize, s: &str) -> Result<Simplex, FormatError> {
    s.trim().parse().map_err(|e| FormatError::at(n, e))
}

pub fn parse_grad(text: &str) -> Result<GradientFile, FormatError> {
    let mut pairs = Vec::new();
    let mut critical: Option<(usize, Vec<(usize, Simplex)>)> = None;
    for (n, line) in content_lines(text) {
        if line == "critical:" {
            if critical.is_some() {
                return Err(FormatError::at(n, "second critical: section"));
            }
            critical = Some((n, Vec::new()));
            continue;
        }
        if let Some((_, list)) = critical.as_mut() {
            list.push((n, parse_simplex(n, line)?));
            continue;
        }
        // vertex tokens may themselves contain "->", so split after the face's brace
        let (face, coface) = line
            .find('}')
            .and_then(|i| Some((&line[..=i], line[i + 1..].trim_start().strip_prefix("->")?)))
            .ok_or_else(|| FormatError::at(n, "expected '{face} -> {coface}'"))?;
        pairs.push((n, GradientPair::new(parse_simplex(n, face)?, parse_simplex(n, coface)?)));
    }
    Ok(GradientFile { pairs, critical })
}

/// Checks a parsed gradient against `k`, pointing at the offending line.
pub fn check_grad(k: &SimplicialComplex, file: &GradientFile) -> Result<DiscreteGradient, FormatError> {
    let mut used: BTreeMap<&Simplex, usize> = BTreeMap::new();
    for (n, p) in &file.pairs {
        for s in [&p.face, &p.coface] {
            if !k.contains(s) {
                return Err(FormatError::at(*n, format!("simplex {s} is not in the complex")));
            }
            if let Some(prev) = used.insert(s, *n) {
                return Err(FormatError::at(*n, format!("{s} already matched on line {prev}")));
            }
        }
        if !p.face.is_facet_of(&p.coface) {
            return Err(FormatError::at(*n, format!("{} is not a facet of {}", p.face, p.coface)));
        }
    }
    let pairs: Vec<GradientPair> = file.pairs.iter().map(|(_, p)| p.clone()).collect();
    let v = crate::morse::validate(k, &pairs).map_err(|e| {
        let line = match &e {
            crate::morse::GradientError::Cycle(c) => c.first().and_then(|s| used.get(s)).copied().unwrap_or(0),
            _ => 0,
        };
        FormatError::at(line, e)
    })?;
    if let Some((header, listed)) = &file.critical {
        for (n, s) in listed {
            if !k.contains(s) || v.is_matched(s) {
                return Err(FormatError::at(*n, format!("{s} is listed critical but is not")));
            }
        }
        let listed: BTreeSet<&Simplex> = listed.iter().map(|(_, s)| s).collect();
        if let Some(missing) = v.critical(k).iter().find(|s| !listed.contains(s)) {
            return Err(FormatError::at(*header, format!("critical simplex {missing} is not listed")));
        }
    }
    Ok(v)
}

pub fn read_grad(k: &SimplicialComplex, text: &str) -> Result<DiscreteGradient, FormatError> {
    check_grad(k, &parse_grad(text)?)
}

pub fn write_grad(k: &SimplicialComplex, v: &DiscreteGradient) -> String {
    // simplex order, so {b} precedes {b,c}
    let mut pairs: Vec<GradientPair> = v.pairs().collect();
    pairs.sort();
    let mut crit = v.critical(k);
    crit.sort();
    let mut out = String::new();
    for p in pairs {
        out.push_str(&format!("{} -> {}\n", p.face, p.coface));
    }
    out.push_str("critical:\n");
    for s in crit {
        out.push_str(&format!("{s}\n"));
    }
    out
}

pub fn write_atlas(atlas: &GadgetAtlas) -> String {
    let mut lines = atlas.lines();
    lines.sort();
    lines.into_iter().map(|l| l + "\n").collect()
}

/// Reads an atlas back. Vertex roles define each gadget copy; the edge and
/// triangle roles must agree with them.
pub fn read_atlas(text: &str) -> Result<GadgetAtlas, FormatError> {
    let mut vertices: BTreeMap<Edge, BTreeMap<&'static str, VertexId>> = BTreeMap::new();
    let mut derived = Vec::new();
    for (n, line) in content_lines(text) {
        let mut parts = line.splitn(3, ' ');
        let (Some(e), Some(r), Some(s)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(FormatError::at(n, "expected 'edge role simplex'"));
        };
        let (src, dst) = e
            .split_once("->")
            .ok_or_else(|| FormatError::at(n, format!("bad edge '{e}'")))?;
        let edge = Edge::from_tokens(src, dst).map_err(|err| FormatError::at(n, err))?;
        let role: Role = r.parse().map_err(|err: String| FormatError::at(n, err))?;
        let simplex = parse_simplex(n, s)?;
        if let [letter] = role.letters() {
            let [v] = simplex.vertices() else {
                return Err(FormatError::at(n, format!("role {role} needs a vertex")));
            };
            vertices.entry(edge).or_default().insert(letter, v.clone());
        } else {
            derived.push((n, edge, role, simplex));
        }
    }
    let atlas = GadgetAtlas::from_vertex_maps(vertices).map_err(|e| FormatError::at(0, e))?;
    for (n, edge, role, simplex) in derived {
        if atlas.role(&edge, role).as_ref() != Some(&simplex) {
            return Err(FormatError::at(n, format!("{role} of {edge} disagrees with its vertices")));
        }
    }
    Ok(atlas)
}

pub fn write_audit(report: &AuditReport) -> String {
    report.to_key_value()
}

pub fn read_audit(text: &str) -> Result<BTreeMap<String, String>, FormatError> {
    let mut out = BTreeMap::new();
    for (n, line) in content_lines(text) {
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| FormatError::at(n, "expected key=value"))?;
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(FormatError::at(n, format!("duplicate key {k}")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smax_round_trip() {
        let text = "# a disk and a stick\nb c a\n\nc d\n";
        let k = read_smax(text).unwrap();
        assert_eq!(write_smax(&k), "a b c\nc d\n");
        assert_eq!(read_smax(&write_smax(&k)).unwrap(), k);
    }

    #[test]
    fn smax_errors_carry_lines() {
        let e = read_smax("a b\na a\n").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn dgr_round_trip_and_duplicates() {
        let g = read_dgr("a b\nb c\nz\n").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(read_dgr(&write_dgr(&g)).unwrap(), g);
        assert_eq!(read_dgr("a b\n# x\na b\n").unwrap_err().line, 3);
        assert_eq!(read_dgr("a b c\n").unwrap_err().line, 1);
    }

    #[test]
    fn grad_round_trip_and_errors() {
        let k = read_smax("a b c\n").unwrap();
        let text = "{a,b} -> {a,b,c}\n{c} -> {a,c}\ncritical:\n{a}\n{b}\n{b,c}\n";
        let v = read_grad(&k, text).unwrap();
        assert_eq!(write_grad(&k, &v), "{a,b} -> {a,b,c}\n{c} -> {a,c}\ncritical:\n{a}\n{b}\n{b,c}\n");
        assert_eq!(read_grad(&k, "{a} -> {b,c}\n").unwrap_err().line, 1);
        let arrows = SimplicialComplex::from_maximal([["u->v/s", "u->v/t"]]).unwrap();
        let v = read_grad(&arrows, "{u->v/s}->{u->v/s,u->v/t}\n").unwrap();
        assert_eq!(read_grad(&arrows, &write_grad(&arrows, &v)).unwrap(), v);
        assert_eq!(read_grad(&k, "{a} -> {a,b}\n{a} -> {a,c}\n").unwrap_err().line, 2);
        assert_eq!(read_grad(&k, "{a,b} -> {a,b,c}\ncritical:\n{a}\n").unwrap_err().line, 2);
        assert_eq!(read_grad(&k, "{a,b} {a,b,c}\n").unwrap_err().line, 1);
    }

    #[test]
    fn grad_cycle_points_at_a_pair() {
        let k = read_smax("a b\nb c\na c\n").unwrap();
        let e = read_grad(&k, "{a} -> {a,b}\n{b} -> {b,c}\n{c} -> {a,c}\n").unwrap_err();
        assert!(e.line >= 1 && e.message.contains("cycle"));
    }

    #[test]
    fn audit_lines() {
        let m = read_audit("a=1\nb=x\n").unwrap();
        assert_eq!(m["b"], "x");
        assert_eq!(read_audit("a=1\na=2\n").unwrap_err().line, 2);
    }
}
