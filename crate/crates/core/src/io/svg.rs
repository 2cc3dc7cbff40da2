use std::collections::HashMap;
use std::fmt::Write as _;

use crate::layout::{Drawing, ExpansionPlan, Point, PointKind};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    /// Pixels per grid unit.
    pub unit: f64,
    pub margin: f64,
    pub vertex_size: f64,
    /// Gap between edges leaving one side of a high-degree vertex, as a
    /// fraction of `unit`.
    pub stub_offset: f64,
    pub labels: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            unit: 40.0,
            margin: 20.0,
            vertex_size: 10.0,
            stub_offset: 0.08,
            labels: true,
        }
    }
}

/// Shift in grid units for the leading points of routes that share a stub:
/// `(route, point position in the route) -> (dx, dy)`.
fn stub_shifts(
    d: &Drawing,
    plan: &ExpansionPlan,
    offset: f64,
) -> HashMap<(usize, usize), (f64, f64)> {
    let mut shifts = HashMap::new();
    let route_of: HashMap<u32, usize> = d
        .routes
        .iter()
        .enumerate()
        .map(|(i, r)| (r.edge.0, i))
        .collect();
    for group in &plan.groups {
        let Some(vp) = d.vertex_point.get(group.vertex.index()).copied().flatten() else {
            continue;
        };
        for (j, e) in group.edges.iter().enumerate().skip(1) {
            let Some(&r) = route_of.get(&e.0) else {
                continue;
            };
            let corner = d.points[group.corners[j - 1]];
            let sep = d.points[group.separators[j - 1]];
            let (dx, dy) = (
                (corner.x - sep.x).signum() as f64,
                (corner.y - sep.y).signum() as f64,
            );
            let shift = (dx * offset * j as f64, dy * offset * j as f64);
            let stub: Vec<usize> = std::iter::once(vp)
                .chain(group.separators[..j].iter().copied())
                .collect();
            for (k, p) in d.routes[r].points.iter().enumerate() {
                if stub.contains(p) {
                    shifts.insert((r, k), shift);
                }
            }
        }
    }
    shifts
}

/// SVG of a drawing with y growing upwards. Routes are polylines in grid
/// units scaled by `unit`; vertices are squares.
pub fn drawing_svg(d: &Drawing, plan: &ExpansionPlan, opt: &SvgOptions) -> String {
    let (lo, hi) = d.bounds().unwrap_or((Point::new(0, 0), Point::new(0, 0)));
    let width = (hi.x - lo.x) as f64 * opt.unit + 2.0 * opt.margin;
    let height = (hi.y - lo.y) as f64 * opt.unit + 2.0 * opt.margin;
    let sx = |x: f64| opt.margin + (x - lo.x as f64) * opt.unit;
    let sy = |y: f64| height - opt.margin - (y - lo.y as f64) * opt.unit;
    let shifts = stub_shifts(d, plan, opt.stub_offset);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    );
    let _ = writeln!(s, r#"<g fill="none" stroke="black" stroke-width="1.5">"#);
    for (r, route) in d.routes.iter().enumerate() {
        let mut pts = String::new();
        let mut last: Option<(f64, f64)> = None;
        for (k, &p) in route.points.iter().enumerate() {
            let (dx, dy) = shifts.get(&(r, k)).copied().unwrap_or((0.0, 0.0));
            let q = (sx(d.points[p].x as f64 + dx), sy(d.points[p].y as f64 + dy));
            if last != Some(q) {
                let _ = write!(pts, "{:.2},{:.2} ", q.0, q.1);
                last = Some(q);
            }
        }
        let _ = writeln!(
            s,
            r#"<polyline data-edge="{}" points="{}"/>"#,
            route.edge.0,
            pts.trim_end()
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<g fill="white" stroke="black" font-size="9" font-family="sans-serif">"#
    );
    let half = opt.vertex_size / 2.0;
    for (p, k) in d.kinds.iter().enumerate() {
        let PointKind::Vertex { vertex } = k else {
            continue;
        };
        let (x, y) = (sx(d.points[p].x as f64), sy(d.points[p].y as f64));
        let _ = writeln!(
            s,
            r#"<rect data-vertex="{}" x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/>"#,
            vertex.0,
            x - half,
            y - half,
            opt.vertex_size,
            opt.vertex_size
        );
        if opt.labels {
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" fill="black" stroke="none">{}</text>"#,
                x + half + 1.0,
                y - half - 1.0,
                vertex.0
            );
        }
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{star_graph, unit_square};
    use crate::layout::draw;
    use crate::shape::{Direction::*, Shape};

    #[test]
    fn square_polylines() {
        let (g, s) = unit_square();
        let (d, plan) = draw(&g, &s).unwrap();
        let svg = drawing_svg(
            &d,
            &plan,
            &SvgOptions {
                unit: 10.0,
                margin: 5.0,
                ..Default::default()
            },
        );
        assert!(svg.starts_with("<svg"));
        // edge 0 runs right along the bottom row, which is y = 15 on screen
        assert!(
            svg.contains(r#"<polyline data-edge="0" points="5.00,15.00 15.00,15.00"/>"#),
            "{svg}"
        );
        assert_eq!(svg.matches("<rect").count(), 4);
    }

    #[test]
    fn shared_stubs_are_pulled_apart() {
        let g = star_graph(6);
        let s = Shape::new(vec![L, R, D, U, U, U]);
        let (d, plan) = draw(&g, &s).unwrap();
        let opt = SvgOptions::default();
        let shifts = stub_shifts(&d, &plan, opt.stub_offset);
        // two branching edges, each shifted sideways only
        let mut moved: Vec<usize> = shifts.keys().map(|k| k.0).collect();
        moved.sort_unstable();
        moved.dedup();
        assert_eq!(moved.len(), 2);
        assert!(shifts.values().all(|&(dx, dy)| dy == 0.0 && dx.abs() > 0.0));
    }
}
