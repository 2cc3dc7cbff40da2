//! Reading graphs and writing drawings, metrics and plots.

mod gml;
mod plot;
mod svg;

use std::fmt::Write as _;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layout::{Drawing, PointKind};
use crate::metrics::{MetricsReport, METRIC_NAMES};

pub use gml::{parse_gml, GmlGraph};
pub use plot::{cdf_svg, scatter_svg};
pub use svg::{drawing_svg, SvgOptions};

/// Parses the `n m` header followed by `m` lines of `tail head`. Blank lines
/// and lines starting with `#` are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let err = |line: usize, message: String| Error::Parse { line, message };
    let two = |line: usize, l: &str| -> Result<(u64, u64)> {
        let mut it = l.split_whitespace().map(|t| {
            t.parse::<u64>()
                .map_err(|_| err(line, format!("expected a non-negative integer, got {t:?}")))
        });
        match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => Ok((a?, b?)),
            _ => Err(err(line, format!("expected two integers, got {l:?}"))),
        }
    };
    let (hl, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing `n m` header".into()))?;
    let (n, m) = two(hl, header)?;
    let mut g = Graph::new(n as usize);
    for k in 0..m {
        let (line, l) = lines
            .next()
            .ok_or_else(|| err(hl, format!("header promises {m} edges, found {k}")))?;
        let (a, b) = two(line, l)?;
        if a >= n || b >= n {
            return Err(err(line, format!("vertex out of range 0..{n}")));
        }
        g.add_edge(
            crate::graph::VertexId(a as u32),
            crate::graph::VertexId(b as u32),
        )
        .map_err(|e| err(line, e.to_string()))?;
    }
    if let Some((line, l)) = lines.next() {
        return Err(err(line, format!("unexpected trailing line {l:?}")));
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (_, a, b) in g.edges() {
        let _ = writeln!(s, "{a} {b}");
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JsonVertex {
    pub id: u32,
    pub x: i64,
    pub y: i64,
    pub kind: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JsonEdge {
    pub edge: u32,
    pub source: u32,
    pub target: u32,
    pub polyline: Vec<[i64; 2]>,
    pub bends: usize,
    pub length: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JsonDrawing {
    pub vertices: Vec<JsonVertex>,
    pub edges: Vec<JsonEdge>,
}

impl JsonDrawing {
    /// Vertices are the points of real and dummy vertices; bends of
    /// imported drawings and expansion points only show up in polylines.
    pub fn new(d: &Drawing) -> JsonDrawing {
        let vertices = d
            .kinds
            .iter()
            .enumerate()
            .filter_map(|(p, k)| {
                let (id, kind) = match *k {
                    PointKind::Vertex { vertex } => (vertex.0, "vertex"),
                    PointKind::Dummy { vertex, .. } => (vertex.0, "dummy"),
                    _ => return None,
                };
                let pt = d.points[p];
                Some(JsonVertex {
                    id,
                    x: pt.x,
                    y: pt.y,
                    kind,
                })
            })
            .collect();
        let edges = d
            .routes
            .iter()
            .enumerate()
            .map(|(r, route)| {
                let end = |p: usize| match d.kinds[p] {
                    PointKind::Vertex { vertex } | PointKind::Dummy { vertex, .. } => vertex.0,
                    _ => p as u32,
                };
                JsonEdge {
                    edge: route.edge.0,
                    source: end(route.points[0]),
                    target: end(*route.points.last().unwrap()),
                    polyline: d.corners(r).iter().map(|p| [p.x, p.y]).collect(),
                    bends: d.route_bends(r),
                    length: d.route_length(r),
                }
            })
            .collect();
        JsonDrawing { vertices, edges }
    }
}

pub fn drawing_json(d: &Drawing) -> Result<String> {
    Ok(serde_json::to_string_pretty(&JsonDrawing::new(d))?)
}

/// One row per instance, metrics in their usual order.
pub fn write_metrics_csv<W: Write>(rows: &[(String, MetricsReport)], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["instance"];
    header.extend(METRIC_NAMES);
    w.write_record(&header)?;
    for (name, m) in rows {
        let mut rec = vec![name.clone()];
        rec.extend(m.values().iter().map(|v| v.to_string()));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads what [`write_metrics_csv`] writes. Columns are found by name, so
/// extra columns and a different order are fine.
pub fn read_metrics_csv<R: std::io::Read>(input: R) -> Result<Vec<(String, MetricsReport)>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    let col = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("missing column `{name}`"),
            })
    };
    let name_col = col("instance")?;
    let cols = METRIC_NAMES.map(col);
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let mut v = [0.0; 9];
        for (k, c) in cols.iter().enumerate() {
            let c = *c.as_ref().map_err(|e| Error::Parse {
                line: 1,
                message: e.to_string(),
            })?;
            v[k] = rec
                .get(c)
                .and_then(|x| x.parse().ok())
                .ok_or(Error::Parse {
                    line,
                    message: format!("bad `{}` value", METRIC_NAMES[k]),
                })?;
        }
        rows.push((
            rec.get(name_col).unwrap_or_default().to_string(),
            MetricsReport::from_values(v),
        ));
    }
    Ok(rows)
}
