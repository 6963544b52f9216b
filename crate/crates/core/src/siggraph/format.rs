//! Line-oriented text format.
//!
//! ```text
//! v <id> interior|peripheral|puncture
//! e <id> <v1> <v2> <label> [transverse +|-]
//! rot <v> <e>:<end> ...
//! at <v> <e>:<end>
//! ```
//!
//! Ids are the graph's own ids; `<end>` is 0 or 1. `rot` places a vertex in P.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{Dart, GraphBuilder, GraphError, LabeledGraph, Side, VertexKind};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn dump(g: &LabeledGraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        writeln!(out, "v {} {}", v.id, v.kind.keyword()).unwrap();
    }
    let vid = |v: usize| g.vertices()[v].id;
    let dart = |d: Dart| format!("{}:{}", g.edges()[d.edge].id, d.end);
    for e in g.edges() {
        write!(out, "e {} {} {} {}", e.id, vid(e.ends[0]), vid(e.ends[1]), e.label).unwrap();
        if let Some(s) = e.transverse {
            write!(out, " transverse {}", s.symbol()).unwrap();
        }
        out.push('\n');
    }
    for v in 0..g.vertex_count() {
        if let Some(rot) = g.rotation(v) {
            write!(out, "rot {}", vid(v)).unwrap();
            for &d in rot {
                write!(out, " {}", dart(d)).unwrap();
            }
            out.push('\n');
        }
    }
    for &(m, d) in g.anchors() {
        writeln!(out, "at {} {}", vid(m), dart(d)).unwrap();
    }
    out
}

/// Parses the text format. Blank lines and lines starting with `#` are skipped.
/// Connectivity is not required, so every dumped graph reloads.
pub fn load(text: &str) -> Result<LabeledGraph, FormatError> {
    let mut b = GraphBuilder::new();
    let mut vertex_of: HashMap<u32, usize> = HashMap::new();
    let mut edge_of: HashMap<u32, usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: &str| FormatError::Syntax {
            line,
            message: message.to_string(),
        };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let num = |s: &str| s.parse::<u32>().map_err(|_| err(&format!("expected integer, got {s:?}")));
        let vertex = |s: &str, map: &HashMap<u32, usize>| -> Result<usize, FormatError> {
            let id = num(s)?;
            map.get(&id).copied().ok_or_else(|| err(&format!("unknown vertex {id}")))
        };
        let dart = |s: &str, map: &HashMap<u32, usize>| -> Result<Dart, FormatError> {
            let (e, end) = s.split_once(':').ok_or_else(|| err("edge-end must be <edge>:<end>"))?;
            let e = num(e)?;
            let idx = *map.get(&e).ok_or_else(|| err(&format!("unknown edge {e}")))?;
            match end {
                "0" => Ok(Dart::new(idx, 0)),
                "1" => Ok(Dart::new(idx, 1)),
                _ => Err(err("edge end must be 0 or 1")),
            }
        };
        match tokens[0] {
            "v" => {
                if tokens.len() != 3 {
                    return Err(err("expected: v <id> <kind>"));
                }
                let id = num(tokens[1])?;
                let kind = match tokens[2] {
                    "interior" => VertexKind::Interior,
                    "peripheral" => VertexKind::PeripheralEnd,
                    "puncture" => VertexKind::PunctureMark,
                    k => return Err(err(&format!("unknown vertex kind {k:?}"))),
                };
                if vertex_of.insert(id, b.vertex_with_id(id, kind)).is_some() {
                    return Err(err(&format!("duplicate vertex {id}")));
                }
            }
            "e" => {
                let transverse = match tokens.len() {
                    5 => None,
                    7 if tokens[5] == "transverse" => match tokens[6] {
                        "+" => Some(Side::Plus),
                        "-" => Some(Side::Minus),
                        _ => return Err(err("transverse side must be + or -")),
                    },
                    _ => return Err(err("expected: e <id> <v1> <v2> <label> [transverse +|-]")),
                };
                let id = num(tokens[1])?;
                let a = vertex(tokens[2], &vertex_of)?;
                let c = vertex(tokens[3], &vertex_of)?;
                let label = num(tokens[4])?;
                if edge_of.insert(id, b.edge_with_id(id, a, c, label, transverse)).is_some() {
                    return Err(err(&format!("duplicate edge {id}")));
                }
            }
            "rot" => {
                if tokens.len() < 2 {
                    return Err(err("expected: rot <v> <edge-end>..."));
                }
                let v = vertex(tokens[1], &vertex_of)?;
                let darts = tokens[2..]
                    .iter()
                    .map(|t| dart(t, &edge_of))
                    .collect::<Result<Vec<_>, _>>()?;
                b.rotation(v, darts);
            }
            "at" => {
                if tokens.len() != 3 {
                    return Err(err("expected: at <v> <edge-end>"));
                }
                let v = vertex(tokens[1], &vertex_of)?;
                b.anchor(v, dart(tokens[2], &edge_of)?);
            }
            t => return Err(err(&format!("unknown record {t:?}"))),
        }
    }
    Ok(b.build_unchecked_connectivity()?)
}
