//! The line-oriented map file format.
//!
//! ```text
//! # comment
//! graph tribonacci
//! vertex v
//! edge a v v
//! map
//! a -> b c~
//! assert iwip
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use traintrack::{Error, GraphSelfMap, Result};
use traintrack::{EdgePath, Graph};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assertions {
    pub iwip: bool,
    pub atoroidal: bool,
    pub inverse_of: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapFile {
    pub name: String,
    pub map: GraphSelfMap,
    pub assertions: Assertions,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_map_file(text: &str) -> Result<MapFile> {
    let mut name: Option<String> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<(String, usize, usize)> = Vec::new();
    let mut images: BTreeMap<usize, (usize, String)> = BTreeMap::new();
    let mut assertions = Assertions::default();
    let mut in_map = false;
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "graph" => {
                if tokens.len() != 2 {
                    return Err(err(line, "expected `graph <name>`"));
                }
                if name.is_some() {
                    return Err(err(line, "duplicate `graph` line"));
                }
                name = Some(tokens[1].to_string());
            }
            "vertex" => {
                if in_map {
                    return Err(err(line, "`vertex` after `map`"));
                }
                if tokens.len() != 2 {
                    return Err(err(line, "expected `vertex <id>`"));
                }
                if vertices.iter().any(|v| v == tokens[1]) {
                    return Err(err(line, format!("duplicate vertex `{}`", tokens[1])));
                }
                vertices.push(tokens[1].to_string());
            }
            "edge" => {
                if in_map {
                    return Err(err(line, "`edge` after `map`"));
                }
                if tokens.len() != 4 {
                    return Err(err(line, "expected `edge <name> <origin> <terminus>`"));
                }
                let ename = tokens[1];
                if ename.ends_with('~') || ename.contains(['.', ':']) {
                    return Err(err(line, format!("invalid edge name `{ename}`")));
                }
                if edges.iter().any(|(n, _, _)| n == ename) {
                    return Err(err(line, format!("duplicate edge `{ename}`")));
                }
                let find = |v: &str| {
                    vertices
                        .iter()
                        .position(|w| w == v)
                        .ok_or_else(|| err(line, format!("unknown vertex `{v}`")))
                };
                edges.push((ename.to_string(), find(tokens[2])?, find(tokens[3])?));
            }
            "map" => {
                if tokens.len() != 1 {
                    return Err(err(line, "expected `map`"));
                }
                in_map = true;
            }
            "assert" => match tokens.get(1..) {
                Some(["iwip"]) => assertions.iwip = true,
                Some(["atoroidal"]) => assertions.atoroidal = true,
                Some(["inverse-of", other]) => assertions.inverse_of = Some(other.to_string()),
                _ => return Err(err(line, format!("unknown assertion `{content}`"))),
            },
            _ if tokens.get(1) == Some(&"->") => {
                if !in_map {
                    return Err(err(line, "edge image before `map`"));
                }
                let src = tokens[0];
                let e = match edges.iter().position(|(n, _, _)| n == src) {
                    Some(e) => e,
                    None if src.ends_with('~') => {
                        return Err(err(
                            line,
                            format!("image of reversed dart `{src}`: give images of edges only"),
                        ))
                    }
                    None => return Err(err(line, format!("unknown token `{src}`"))),
                };
                if images.contains_key(&e) {
                    return Err(err(line, format!("second image for edge `{src}`")));
                }
                images.insert(e, (line, tokens[2..].join(" ")));
            }
            other => return Err(err(line, format!("unknown token `{other}`"))),
        }
    }

    let name = name.ok_or_else(|| err(1, "missing `graph <name>` line"))?;
    if vertices.is_empty() {
        return Err(err(last_line, "no vertices"));
    }
    let graph = Graph::new(vertices, edges).map_err(|e| err(last_line, e.to_string()))?;
    let mut paths = Vec::with_capacity(graph.edge_count());
    for e in 0..graph.edge_count() {
        let Some((line, text)) = images.get(&e) else {
            return Err(err(
                last_line,
                format!("no image given for edge `{}`", graph.edge_name(e)),
            ));
        };
        let p = graph.parse_path(text).map_err(|x| err(*line, x.to_string()))?;
        if p.is_empty() {
            return Err(err(*line, format!("image of edge `{}` is empty", graph.edge_name(e))));
        }
        paths.push(p);
    }
    let map = GraphSelfMap::new(graph.clone(), paths).map_err(|x| {
        let line = match &x {
            Error::Incoherent { edge, .. } | Error::EmptyImage { edge } => graph
                .edge_by_name(edge)
                .and_then(|e| images.get(&e))
                .map(|(l, _)| *l)
                .unwrap_or(last_line),
            _ => last_line,
        };
        err(line, x.to_string())
    })?;
    Ok(MapFile {
        name,
        map,
        assertions,
    })
}

pub fn serialize_map_file(mf: &MapFile) -> String {
    let g = mf.map.graph();
    let mut out = String::new();
    writeln!(out, "graph {}", mf.name).unwrap();
    for v in g.vertex_names() {
        writeln!(out, "vertex {v}").unwrap();
    }
    for e in g.edges() {
        writeln!(
            out,
            "edge {} {} {}",
            g.edge_name(e.edge()),
            g.vertex_name(g.origin(e)),
            g.vertex_name(g.terminus(e))
        )
        .unwrap();
    }
    writeln!(out, "map").unwrap();
    for e in g.edges() {
        writeln!(out, "{} -> {}", g.edge_name(e.edge()), g.format_path(mf.map.image(e))).unwrap();
    }
    if mf.assertions.iwip {
        writeln!(out, "assert iwip").unwrap();
    }
    if mf.assertions.atoroidal {
        writeln!(out, "assert atoroidal").unwrap();
    }
    if let Some(other) = &mf.assertions.inverse_of {
        writeln!(out, "assert inverse-of {other}").unwrap();
    }
    out
}

/// Parses a word given on the command line against the graph of `mf`.
pub fn parse_word(mf: &MapFile, text: &str) -> Result<EdgePath> {
    mf.map.graph().parse_path(text)
}
