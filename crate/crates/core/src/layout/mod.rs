//! Grid drawings of shaped graphs.
//!
//! A [`Drawing`] is a set of grid points joined by axis-parallel links; each
//! input edge is a route through those points. Real vertices, bending dummy
//! vertices and the extra points placed around high-degree vertices are
//! points. Dummies that go straight through are dropped, so every point is
//! either a vertex or a bend of some route.

mod compact;
mod expand;

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::drawability::{test_drawable, Drawability, TopologicalOrders};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId, VertexKind};
use crate::shape::{Direction, Shape};

pub use expand::{expand_high_degree, needs_expansion, ExpansionPlan, SideGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub fn new(x: i64, y: i64) -> Point {
        Point { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointKind {
    Vertex {
        vertex: VertexId,
    },
    Dummy {
        vertex: VertexId,
        origin: EdgeId,
    },
    /// Placed next to a high-degree vertex to split edges leaving one side.
    Expansion {
        vertex: VertexId,
        side: Direction,
    },
    /// Bend of an imported drawing.
    Bend,
}

/// Axis-parallel segment between two points. `dir` is the direction from
/// `a` to `b` the shape asks for, when there is a shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    pub a: usize,
    pub b: usize,
    pub dir: Option<Direction>,
}

/// Points an input edge passes through, tail first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Route {
    pub edge: EdgeId,
    pub points: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Drawing {
    pub points: Vec<Point>,
    pub kinds: Vec<PointKind>,
    pub links: Vec<Link>,
    pub routes: Vec<Route>,
    /// Point of each vertex of the drawn graph; `None` for dummies that
    /// were straightened away.
    pub vertex_point: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    SharedPoint { a: usize, b: usize },
    Degenerate { link: usize },
    NotAxisParallel { link: usize },
    WrongDirection { link: usize, expected: Direction },
    PointOnSegment { point: usize, link: usize },
    EmptyColumn(i64),
    EmptyRow(i64),
    BrokenRoute { route: usize },
}

/// Dummies split by whether they turned into bends.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DummyReport {
    pub bends: Vec<VertexId>,
    pub straight: Vec<VertexId>,
}

impl DummyReport {
    pub fn bend_ratio(&self) -> f64 {
        let total = self.bends.len() + self.straight.len();
        if total == 0 {
            1.0
        } else {
            self.bends.len() as f64 / total as f64
        }
    }
}

impl Drawing {
    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn vertex_position(&self, v: VertexId) -> Option<Point> {
        self.vertex_point
            .get(v.index())
            .copied()
            .flatten()
            .map(|p| self.points[p])
    }

    pub fn polyline(&self, route: usize) -> Vec<Point> {
        self.routes[route]
            .points
            .iter()
            .map(|&p| self.points[p])
            .collect()
    }

    /// Route polyline without repeated or collinear interior points.
    pub fn corners(&self, route: usize) -> Vec<Point> {
        simplify(&self.polyline(route))
    }

    pub fn route_bends(&self, route: usize) -> usize {
        self.corners(route).len().saturating_sub(2)
    }

    pub fn route_length(&self, route: usize) -> i64 {
        self.polyline(route)
            .windows(2)
            .map(|w| (w[1].x - w[0].x).abs() + (w[1].y - w[0].y).abs())
            .sum()
    }

    /// `(min, max)` corners of the bounding box.
    pub fn bounds(&self) -> Option<(Point, Point)> {
        let first = *self.points.first()?;
        let mut lo = first;
        let mut hi = first;
        for p in &self.points {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        Some((lo, hi))
    }

    pub fn translate(&mut self, dx: i64, dy: i64) {
        for p in &mut self.points {
            p.x += dx;
            p.y += dy;
        }
    }

    /// Every invariant a finished grid drawing must meet.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut at: HashMap<Point, usize> = HashMap::new();
        for (i, &p) in self.points.iter().enumerate() {
            if let Some(&j) = at.get(&p) {
                out.push(Violation::SharedPoint { a: j, b: i });
            } else {
                at.insert(p, i);
            }
        }

        let mut rows: HashMap<i64, BTreeSet<i64>> = HashMap::new();
        let mut cols: HashMap<i64, BTreeSet<i64>> = HashMap::new();
        for p in &self.points {
            rows.entry(p.y).or_default().insert(p.x);
            cols.entry(p.x).or_default().insert(p.y);
        }
        for (li, l) in self.links.iter().enumerate() {
            let (p, q) = (self.points[l.a], self.points[l.b]);
            let Some(found) = Direction::between(p.x, p.y, q.x, q.y) else {
                out.push(if p == q {
                    Violation::Degenerate { link: li }
                } else {
                    Violation::NotAxisParallel { link: li }
                });
                continue;
            };
            if let Some(expected) = l.dir {
                if expected != found {
                    out.push(Violation::WrongDirection { link: li, expected });
                }
            }
            let inside: Vec<Point> = if p.y == q.y {
                let (lo, hi) = (p.x.min(q.x), p.x.max(q.x));
                rows[&p.y]
                    .range(lo + 1..hi)
                    .map(|&x| Point::new(x, p.y))
                    .collect()
            } else {
                let (lo, hi) = (p.y.min(q.y), p.y.max(q.y));
                cols[&p.x]
                    .range(lo + 1..hi)
                    .map(|&y| Point::new(p.x, y))
                    .collect()
            };
            for r in inside {
                out.push(Violation::PointOnSegment {
                    point: at[&r],
                    link: li,
                });
            }
        }

        if let Some((lo, hi)) = self.bounds() {
            for x in lo.x..=hi.x {
                if !cols.contains_key(&x) {
                    out.push(Violation::EmptyColumn(x));
                }
            }
            for y in lo.y..=hi.y {
                if !rows.contains_key(&y) {
                    out.push(Violation::EmptyRow(y));
                }
            }
        }

        let linked: HashSet<(usize, usize)> = self
            .links
            .iter()
            .flat_map(|l| [(l.a, l.b), (l.b, l.a)])
            .collect();
        for (ri, r) in self.routes.iter().enumerate() {
            if r.points.len() < 2 || r.points.windows(2).any(|w| !linked.contains(&(w[0], w[1]))) {
                out.push(Violation::BrokenRoute { route: ri });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    /// Classifies every dummy vertex of `g`, the graph this drawing was
    /// made from. A dummy is a bend when it kept its point and meets one
    /// horizontal and one vertical link there.
    pub fn straighten_report(&self, g: &Graph) -> DummyReport {
        let mut report = DummyReport::default();
        for w in g.vertices() {
            if !matches!(g.kind(w), VertexKind::Dummy { .. }) {
                continue;
            }
            let turns = self.vertex_point[w.index()].is_some_and(|p| {
                let horizontal: Vec<bool> = self
                    .links
                    .iter()
                    .filter(|l| l.a == p || l.b == p)
                    .map(|l| self.points[l.a].y == self.points[l.b].y)
                    .collect();
                horizontal.len() == 2 && horizontal[0] != horizontal[1]
            });
            if turns {
                report.bends.push(w);
            } else {
                report.straight.push(w);
            }
        }
        report
    }

    /// Merges links through points of the given kinds that go straight
    /// through, then drops those points.
    fn drop_straight(&mut self, removable: impl Fn(&PointKind) -> bool) {
        let n = self.points.len();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, l) in self.links.iter().enumerate() {
            incident[l.a].push(i);
            incident[l.b].push(i);
        }
        let mut dead_link = vec![false; self.links.len()];
        let mut dead_point = vec![false; n];
        for p in 0..n {
            if !removable(&self.kinds[p]) || incident[p].len() != 2 {
                continue;
            }
            let (l1, l2) = (incident[p][0], incident[p][1]);
            let a = other(&self.links[l1], p);
            let b = other(&self.links[l2], p);
            let (pa, pp, pb) = (self.points[a], self.points[p], self.points[b]);
            let collinear = (pa.x == pp.x && pp.x == pb.x) || (pa.y == pp.y && pp.y == pb.y);
            let between = (pa.x - pp.x) * (pb.x - pp.x) + (pa.y - pp.y) * (pb.y - pp.y) < 0;
            if !(collinear && between) {
                continue;
            }
            let first = self.links[l1];
            let dir = match first.dir {
                Some(d) if first.a == a => Some(d),
                Some(d) => Some(d.opposite()),
                None => Direction::between(pa.x, pa.y, pb.x, pb.y),
            };
            let merged = self.links.len();
            self.links.push(Link { a, b, dir });
            dead_link.push(false);
            dead_link[l1] = true;
            dead_link[l2] = true;
            dead_point[p] = true;
            for (end, old) in [(a, l1), (b, l2)] {
                for slot in incident[end].iter_mut() {
                    if *slot == old {
                        *slot = merged;
                    }
                }
            }
            incident[p].clear();
        }
        self.retain(&dead_point, &dead_link);
    }

    fn retain(&mut self, dead_point: &[bool], dead_link: &[bool]) {
        let mut remap = vec![usize::MAX; self.points.len()];
        let mut next = 0;
        for (i, &dead) in dead_point.iter().enumerate() {
            if !dead {
                remap[i] = next;
                next += 1;
            }
        }
        let keep = |i: usize| !dead_point[i];
        self.points = (0..self.points.len())
            .filter(|&i| keep(i))
            .map(|i| self.points[i])
            .collect();
        self.kinds = (0..self.kinds.len())
            .filter(|&i| keep(i))
            .map(|i| self.kinds[i])
            .collect();
        self.links = self
            .links
            .iter()
            .zip(dead_link)
            .filter(|(_, &d)| !d)
            .map(|(l, _)| Link {
                a: remap[l.a],
                b: remap[l.b],
                dir: l.dir,
            })
            .collect();
        for r in &mut self.routes {
            r.points = r
                .points
                .iter()
                .filter(|&&p| keep(p))
                .map(|&p| remap[p])
                .collect();
        }
        for vp in &mut self.vertex_point {
            *vp = vp.and_then(|p| (remap[p] != usize::MAX).then_some(remap[p]));
        }
    }

    /// Renumbers rows and columns to consecutive integers from 0, which
    /// removes empty grid lines without changing any order relation.
    pub fn compress(&mut self) {
        let xs: BTreeSet<i64> = self.points.iter().map(|p| p.x).collect();
        let ys: BTreeSet<i64> = self.points.iter().map(|p| p.y).collect();
        let xr: HashMap<i64, i64> = xs.into_iter().zip(0..).collect();
        let yr: HashMap<i64, i64> = ys.into_iter().zip(0..).collect();
        for p in &mut self.points {
            p.x = xr[&p.x];
            p.y = yr[&p.y];
        }
    }
}

fn other(l: &Link, p: usize) -> usize {
    if l.a == p {
        l.b
    } else {
        l.a
    }
}

/// Drops repeated points and interior points where the polyline keeps its
/// direction.
pub fn simplify(poly: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(poly.len());
    for &p in poly {
        if out.last() == Some(&p) {
            continue;
        }
        if out.len() >= 2 {
            let a = out[out.len() - 2];
            let b = out[out.len() - 1];
            let collinear = (b.x - a.x) * (p.y - b.y) == (b.y - a.y) * (p.x - b.x);
            let same_way = (b.x - a.x) * (p.x - b.x) + (b.y - a.y) * (p.y - b.y) > 0;
            if collinear && same_way {
                out.pop();
            }
        }
        out.push(p);
    }
    out
}

/// A graph with a shape to be placed on the grid, with routes already
/// expressed in its own vertices.
pub(crate) struct Plan {
    pub graph: Graph,
    pub shape: Shape,
    pub kinds: Vec<PointKind>,
    pub routes: Vec<Route>,
    /// Vertices of the original graph occupy `0..original_vertices`.
    pub original_vertices: usize,
}

fn point_kinds(g: &Graph) -> Vec<PointKind> {
    g.vertices()
        .map(|v| match g.kind(v) {
            VertexKind::Real => PointKind::Vertex { vertex: v },
            VertexKind::Dummy { origin } => PointKind::Dummy { vertex: v, origin },
        })
        .collect()
}

fn plain_routes(g: &Graph) -> Vec<Route> {
    (0..g.original_edge_count() as u32)
        .map(|o| {
            let (vs, _) = g.replacement_chain(EdgeId(o));
            Route {
                edge: EdgeId(o),
                points: vs.iter().map(|v| v.index()).collect(),
            }
        })
        .collect()
}

pub(crate) fn realize(plan: Plan, orders: &TopologicalOrders) -> Drawing {
    let coords = compact::compact(&plan.graph, orders);
    let mut d = Drawing {
        points: coords.iter().map(|&(x, y)| Point::new(x, y)).collect(),
        kinds: plan.kinds,
        links: plan
            .graph
            .edges()
            .map(|(e, a, b)| Link {
                a: a.index(),
                b: b.index(),
                dir: Some(plan.shape.label(e)),
            })
            .collect(),
        routes: plan.routes,
        vertex_point: (0..plan.original_vertices).map(Some).collect(),
    };
    d.drop_straight(|k| matches!(k, PointKind::Dummy { .. }));
    d.compress();
    d
}

/// Places a graph whose shape never repeats a direction at a vertex.
pub fn assign_coordinates(g: &Graph, s: &Shape, orders: &TopologicalOrders) -> Result<Drawing> {
    if orders.gx.topological_order().is_none() {
        return Err(Error::CyclicOrder(crate::drawability::Axis::X));
    }
    if orders.gy.topological_order().is_none() {
        return Err(Error::CyclicOrder(crate::drawability::Axis::Y));
    }
    if needs_expansion(g, s) {
        return Err(Error::InvalidShape {
            vertex: VertexId(0),
            reason: "shape repeats a direction; use `draw`".into(),
        });
    }
    let plan = Plan {
        graph: g.clone(),
        shape: s.clone(),
        kinds: point_kinds(g),
        routes: plain_routes(g),
        original_vertices: g.vertex_count(),
    };
    Ok(realize(plan, orders))
}

pub(crate) fn orders_of(g: &Graph, s: &Shape) -> Result<TopologicalOrders> {
    match test_drawable(g, s)? {
        Drawability::Drawable(o) => Ok(*o),
        Drawability::NotDrawable(w) => Err(Error::CyclicOrder(w.axis)),
    }
}

/// Draws a shaped graph whose order graphs are acyclic, expanding
/// high-degree vertices when their shape sends several edges one way.
pub fn draw(g: &Graph, s: &Shape) -> Result<(Drawing, ExpansionPlan)> {
    if !needs_expansion(g, s) {
        let orders = orders_of(g, s)?;
        return Ok((assign_coordinates(g, s, &orders)?, ExpansionPlan::default()));
    }
    let (first, _) = expand::expand_with(g, s, None)?;
    expand_high_degree(g, s, &first)
}
