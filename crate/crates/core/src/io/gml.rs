//! The small part of GML that graph corpora and drawing tools emit:
//! `node [ id .. graphics [ x .. y .. ] ]` and
//! `edge [ source .. target .. graphics [ Line [ point [ x .. y .. ] ... ] ] ]`.
//! Unknown keys are skipped.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::metrics::{ExternalDrawing, ExternalEdge, ExternalVertex};

#[derive(Debug, Clone, PartialEq)]
enum Value {
    Num(f64),
    Str(String),
    List(Vec<(String, Value)>),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Key(String),
    Num(f64),
    Str(String),
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut rest = raw;
        loop {
            rest = rest.trim_start();
            if rest.is_empty() || rest.starts_with('#') {
                break;
            }
            if let Some(r) = rest.strip_prefix('[') {
                out.push((line, Token::Open));
                rest = r;
            } else if let Some(r) = rest.strip_prefix(']') {
                out.push((line, Token::Close));
                rest = r;
            } else if let Some(r) = rest.strip_prefix('"') {
                let end = r.find('"').ok_or(Error::Parse {
                    line,
                    message: "unterminated string".into(),
                })?;
                out.push((line, Token::Str(r[..end].to_string())));
                rest = &r[end + 1..];
            } else {
                let end = rest
                    .find(|c: char| c.is_whitespace() || c == '[' || c == ']')
                    .unwrap_or(rest.len());
                let word = &rest[..end];
                rest = &rest[end..];
                match word.parse::<f64>() {
                    Ok(v) => out.push((line, Token::Num(v))),
                    Err(_) => out.push((line, Token::Key(word.to_string()))),
                }
            }
        }
    }
    Ok(out)
}

fn parse_list(
    tokens: &[(usize, Token)],
    pos: &mut usize,
    nested: bool,
) -> Result<Vec<(String, Value)>> {
    let mut items = Vec::new();
    loop {
        let Some((line, tok)) = tokens.get(*pos) else {
            if nested {
                let line = tokens.last().map_or(1, |t| t.0);
                return Err(Error::Parse {
                    line,
                    message: "missing `]`".into(),
                });
            }
            return Ok(items);
        };
        *pos += 1;
        let key = match tok {
            Token::Close if nested => return Ok(items),
            Token::Key(k) => k.clone(),
            other => {
                return Err(Error::Parse {
                    line: *line,
                    message: format!("expected a key, found {other:?}"),
                })
            }
        };
        let (vline, v) = tokens.get(*pos).ok_or(Error::Parse {
            line: *line,
            message: format!("key `{key}` has no value"),
        })?;
        *pos += 1;
        let value = match v {
            Token::Num(x) => Value::Num(*x),
            Token::Str(s) => Value::Str(s.clone()),
            Token::Open => Value::List(parse_list(tokens, pos, true)?),
            other => {
                return Err(Error::Parse {
                    line: *vline,
                    message: format!("bad value for `{key}`: {other:?}"),
                })
            }
        };
        items.push((key, value));
    }
}

fn get<'a>(list: &'a [(String, Value)], key: &str) -> Option<&'a Value> {
    list.iter().find(|(k, _)| k == key).map(|(_, v)| v)
}

fn num(list: &[(String, Value)], key: &str) -> Option<f64> {
    match get(list, key)? {
        Value::Num(x) => Some(*x),
        Value::Str(s) => s.parse().ok(),
        Value::List(_) => None,
    }
}

fn xy(list: &[(String, Value)]) -> Option<(f64, f64)> {
    Some((num(list, "x")?, num(list, "y")?))
}

/// Graph as read from GML, ids kept as given.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GmlGraph {
    /// `(id, position)` in file order.
    pub nodes: Vec<(u32, Option<(f64, f64)>)>,
    /// `(source, target, line points)`; the points may repeat the endpoints.
    pub edges: Vec<(u32, u32, Vec<(f64, f64)>)>,
}

pub fn parse_gml(text: &str) -> Result<GmlGraph> {
    let tokens = tokenize(text)?;
    let mut pos = 0;
    let top = parse_list(&tokens, &mut pos, false)?;
    let Some(Value::List(graph)) = get(&top, "graph") else {
        return Err(Error::Parse {
            line: 1,
            message: "no `graph [ ... ]` block".into(),
        });
    };
    let bad = |message: String| Error::Parse { line: 0, message };
    let mut out = GmlGraph::default();
    for (key, value) in graph {
        let Value::List(items) = value else { continue };
        let graphics = match get(items, "graphics") {
            Some(Value::List(g)) => Some(g.as_slice()),
            _ => None,
        };
        match key.as_str() {
            "node" => {
                let id = num(items, "id").ok_or_else(|| bad("node without id".into()))?;
                out.nodes.push((id as u32, graphics.and_then(xy)));
            }
            "edge" => {
                let s = num(items, "source").ok_or_else(|| bad("edge without source".into()))?;
                let t = num(items, "target").ok_or_else(|| bad("edge without target".into()))?;
                let mut points = Vec::new();
                if let Some(Value::List(line)) = graphics.and_then(|g| get(g, "Line")) {
                    for (k, p) in line {
                        if let (true, Value::List(p)) = (k == "point", p) {
                            points.extend(xy(p));
                        }
                    }
                }
                out.edges.push((s as u32, t as u32, points));
            }
            _ => {}
        }
    }
    Ok(out)
}

impl GmlGraph {
    /// Vertices numbered by file order.
    pub fn to_graph(&self) -> Result<Graph> {
        let index = self.index()?;
        let mut g = Graph::new(self.nodes.len());
        for &(s, t, _) in &self.edges {
            g.add_edge(VertexId(index(s)?), VertexId(index(t)?))?;
        }
        Ok(g)
    }

    /// Positions and bends; line points equal to an endpoint are dropped.
    pub fn to_external(&self) -> Result<ExternalDrawing> {
        let mut pos = HashMap::new();
        let mut vertices = Vec::new();
        for &(id, p) in &self.nodes {
            let (x, y) = p.ok_or_else(|| Error::NonFinite(format!("node {id} has no position")))?;
            pos.insert(id, (x, y));
            vertices.push(ExternalVertex { id, x, y });
        }
        let edges = self
            .edges
            .iter()
            .map(|(s, t, pts)| {
                let ends = [pos.get(s).copied(), pos.get(t).copied()];
                let mut bends = pts.clone();
                if bends.first().copied() == ends[0] {
                    bends.remove(0);
                }
                if !bends.is_empty() && bends.last().copied() == ends[1] {
                    bends.pop();
                }
                ExternalEdge {
                    source: *s,
                    target: *t,
                    bends,
                }
            })
            .collect();
        Ok(ExternalDrawing { vertices, edges })
    }

    fn index(&self) -> Result<impl Fn(u32) -> Result<u32> + '_> {
        let map: HashMap<u32, u32> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, &(id, _))| (id, i as u32))
            .collect();
        if map.len() != self.nodes.len() {
            return Err(Error::Parse {
                line: 0,
                message: "duplicate node id".into(),
            });
        }
        Ok(move |id| {
            map.get(&id).copied().ok_or(Error::Parse {
                line: 0,
                message: format!("edge refers to unknown node {id}"),
            })
        })
    }
}
