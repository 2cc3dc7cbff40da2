//! Snapping drawings from other tools onto the unit grid.
//!
//! Such drawings place columns a fixed large distance apart and let points
//! meant for the same column drift by a few units. Along each axis, sorted
//! coordinates closer than `small` join one line and gaps of at least
//! `column` start the next line; anything in between is refused.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId};
use crate::layout::{Drawing, Link, Point, PointKind, Route};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapThresholds {
    pub small: f64,
    pub column: f64,
}

impl Default for GapThresholds {
    fn default() -> Self {
        GapThresholds {
            small: 8.0,
            column: 15.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExternalVertex {
    pub id: u32,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExternalEdge {
    pub source: u32,
    pub target: u32,
    #[serde(default)]
    pub bends: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ExternalDrawing {
    pub vertices: Vec<ExternalVertex>,
    pub edges: Vec<ExternalEdge>,
}

/// Grid line of every value, or the offending gap.
fn snap_axis(values: &[f64], axis: char, th: GapThresholds) -> Result<Vec<i64>> {
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    sorted.dedup();

    // a unit grid is kept as is
    let integral = sorted.iter().all(|v| v.fract() == 0.0);
    if integral && sorted.windows(2).all(|w| w[1] - w[0] == 1.0) {
        let base = sorted.first().copied().unwrap_or(0.0);
        return Ok(values.iter().map(|v| (v - base) as i64).collect());
    }

    // line index of each distinct value
    let mut line = Vec::with_capacity(sorted.len());
    let mut current = 0i64;
    let mut line_start = sorted.first().copied().unwrap_or(0.0);
    for (i, &v) in sorted.iter().enumerate() {
        if i > 0 {
            let gap = v - sorted[i - 1];
            if gap >= th.column {
                current += 1;
                line_start = v;
            } else if gap > th.small || v - line_start > th.small {
                return Err(Error::AmbiguousGap {
                    axis,
                    gap: gap.max(v - line_start),
                    small: th.small,
                    column: th.column,
                });
            }
        }
        line.push(current);
    }
    Ok(values
        .iter()
        .map(|v| {
            let i = sorted.partition_point(|s| s < v);
            line[i]
        })
        .collect())
}

/// Maps an external drawing to grid coordinates. Vertices come first, in
/// input order, then bends edge by edge.
pub fn normalize_external(raw: &ExternalDrawing, th: GapThresholds) -> Result<Drawing> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut kinds = Vec::new();
    let mut index_of = std::collections::HashMap::new();
    for (i, v) in raw.vertices.iter().enumerate() {
        if !v.x.is_finite() || !v.y.is_finite() {
            return Err(Error::NonFinite(format!("vertex {}", v.id)));
        }
        index_of.insert(v.id, i);
        xs.push(v.x);
        ys.push(v.y);
        kinds.push(PointKind::Vertex {
            vertex: VertexId(v.id),
        });
    }
    let mut routes = Vec::new();
    for (ei, e) in raw.edges.iter().enumerate() {
        let lookup = |id: u32| {
            index_of.get(&id).copied().ok_or(Error::Parse {
                line: 0,
                message: format!("edge {ei} references unknown vertex {id}"),
            })
        };
        let mut pts = vec![lookup(e.source)?];
        for &(x, y) in &e.bends {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::NonFinite(format!("bend of edge {ei}")));
            }
            pts.push(xs.len());
            xs.push(x);
            ys.push(y);
            kinds.push(PointKind::Bend);
        }
        pts.push(lookup(e.target)?);
        routes.push(Route {
            edge: EdgeId(ei as u32),
            points: pts,
        });
    }

    let gx = snap_axis(&xs, 'x', th)?;
    let gy = snap_axis(&ys, 'y', th)?;
    let points: Vec<Point> = gx
        .iter()
        .zip(&gy)
        .map(|(&x, &y)| Point::new(x, y))
        .collect();

    let mut links = Vec::new();
    for r in &mut routes {
        // a bend that snapped onto its neighbor disappears
        r.points.dedup_by(|b, a| points[*a] == points[*b]);
        for w in r.points.windows(2) {
            links.push(Link {
                a: w[0],
                b: w[1],
                dir: None,
            });
        }
    }
    Ok(Drawing {
        points,
        kinds,
        links,
        routes,
        vertex_point: (0..raw.vertices.len()).map(Some).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snaps_close_values_together() {
        let th = GapThresholds::default();
        assert_eq!(
            snap_axis(&[100.0, 130.0, 134.0, 160.0], 'x', th).unwrap(),
            vec![0, 1, 1, 2]
        );
        assert!(matches!(
            snap_axis(&[0.0, 10.0], 'x', th),
            Err(Error::AmbiguousGap { gap, .. }) if gap == 10.0
        ));
        // drifting within a line is limited to `small` overall
        assert!(snap_axis(&[0.0, 5.0, 10.0], 'y', th).is_err());
    }

    #[test]
    fn unit_grid_is_translated_only() {
        let th = GapThresholds::default();
        assert_eq!(
            snap_axis(&[3.0, 5.0, 4.0, 3.0], 'x', th).unwrap(),
            vec![0, 2, 1, 0]
        );
    }

    #[test]
    fn columns_thirty_apart_become_neighbors() {
        let raw = ExternalDrawing {
            vertices: vec![
                ExternalVertex {
                    id: 0,
                    x: 0.0,
                    y: 0.0,
                },
                ExternalVertex {
                    id: 1,
                    x: 30.0,
                    y: 0.0,
                },
            ],
            edges: vec![ExternalEdge {
                source: 0,
                target: 1,
                bends: vec![],
            }],
        };
        let d = normalize_external(&raw, GapThresholds::default()).unwrap();
        assert_eq!(d.points, vec![Point::new(0, 0), Point::new(1, 0)]);
    }
}
