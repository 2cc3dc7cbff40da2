//! Vertices that send several edges out of one side.
//!
//! For a side with `k` edges, a stub of `k - 1` points leaves the vertex in
//! that direction. One edge runs straight along the whole stub; each other
//! edge leaves the stub at its own point, turns to a corner and then resumes
//! the side's direction. The result has at most one edge per side at every
//! point, so the ordinary layout applies.

use std::collections::HashMap;

use serde::Serialize;

use super::{orders_of, point_kinds, realize, Drawing, Plan, Point, PointKind, Route};
use crate::error::Result;
use crate::graph::{EdgeId, Graph, VertexId};
use crate::shape::{Direction, Shape};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ExpansionPlan {
    pub groups: Vec<SideGroup>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideGroup {
    pub vertex: VertexId,
    pub side: Direction,
    /// The straight edge first, then the branching edges nearest first.
    pub edges: Vec<EdgeId>,
    /// Points where branching edges leave the stub, nearest first.
    pub separators: Vec<usize>,
    /// Where each branching edge turns back to the side's direction.
    pub corners: Vec<usize>,
}

pub fn needs_expansion(g: &Graph, s: &Shape) -> bool {
    g.vertices().any(|v| s.directions_at(g, v).1)
}

fn orthogonal(side: Direction, p: Point) -> i64 {
    if side.is_horizontal() {
        p.y
    } else {
        p.x
    }
}

/// Position of the far end of `e` seen from `v`, skipping dummies that were
/// straightened away.
fn far_position(g: &Graph, d: &Drawing, v: VertexId, e: EdgeId) -> Option<Point> {
    let (mut prev, mut at) = (v, g.other_end(e, v));
    for _ in 0..g.vertex_count() {
        if let Some(p) = d.vertex_position(at) {
            return Some(p);
        }
        let &(next, _) = g.neighbors(at).iter().find(|&&(w, _)| w != prev)?;
        prev = at;
        at = next;
    }
    None
}

struct Grouping {
    straight: EdgeId,
    /// `(edge, direction it turns to)`, nearest first.
    branches: Vec<(EdgeId, Direction)>,
}

fn group_order(
    g: &Graph,
    side: Direction,
    v: VertexId,
    mut edges: Vec<EdgeId>,
    hint: Option<&Drawing>,
) -> Grouping {
    let (up, down) = if side.is_horizontal() {
        (Direction::U, Direction::D)
    } else {
        (Direction::R, Direction::L)
    };
    let keyed = hint.and_then(|d| {
        let own = orthogonal(side, d.vertex_position(v)?);
        let keys: Option<Vec<(EdgeId, i64)>> = edges
            .iter()
            .map(|&e| far_position(g, d, v, e).map(|p| (e, orthogonal(side, p) - own)))
            .collect();
        keys
    });
    let (straight, mut pos, mut neg) = match keyed {
        Some(mut keys) => {
            keys.sort_by_key(|&(e, k)| (k.abs(), e));
            let straight = keys.remove(0).0;
            let mut pos: Vec<(EdgeId, i64)> =
                keys.iter().copied().filter(|&(_, k)| k >= 0).collect();
            let mut neg: Vec<(EdgeId, i64)> =
                keys.iter().copied().filter(|&(_, k)| k < 0).collect();
            // farthest first on each side keeps the branches from crossing
            pos.sort_by_key(|&(e, k)| (-k, e));
            neg.sort_by_key(|&(e, k)| (k, e));
            (
                straight,
                pos.into_iter().map(|(e, _)| e).collect::<Vec<_>>(),
                neg.into_iter().map(|(e, _)| e).collect::<Vec<_>>(),
            )
        }
        None => {
            edges.sort_unstable();
            let straight = edges.remove(0);
            let pos: Vec<EdgeId> = edges.iter().copied().step_by(2).collect();
            let neg: Vec<EdgeId> = edges.iter().copied().skip(1).step_by(2).collect();
            (straight, pos, neg)
        }
    };
    let mut branches = Vec::new();
    pos.reverse();
    neg.reverse();
    while !pos.is_empty() || !neg.is_empty() {
        if let Some(e) = pos.pop() {
            branches.push((e, up));
        }
        if let Some(e) = neg.pop() {
            branches.push((e, down));
        }
    }
    Grouping { straight, branches }
}

/// Draws `g` with every repeated side expanded, ordering each side's edges
/// by where their far ends sit in `hint`.
pub(crate) fn expand_with(
    g: &Graph,
    s: &Shape,
    hint: Option<&Drawing>,
) -> Result<(Drawing, ExpansionPlan)> {
    let n = g.vertex_count();
    let mut h = Graph::new(n);
    let mut kinds = point_kinds(g);
    let mut labels = Vec::new();
    let mut attach: HashMap<(EdgeId, VertexId), Vec<VertexId>> = HashMap::new();
    let mut groups = Vec::new();

    let add = |h: &mut Graph, kinds: &mut Vec<PointKind>, v: VertexId, side: Direction| {
        kinds.push(PointKind::Expansion { vertex: v, side });
        h.add_vertex()
    };

    for v in g.vertices() {
        if !s.directions_at(g, v).1 {
            continue;
        }
        for side in Direction::ALL {
            let edges: Vec<EdgeId> = g
                .neighbors(v)
                .iter()
                .map(|&(_, e)| e)
                .filter(|&e| s.leaving(g, e, v) == side)
                .collect();
            if edges.len() < 2 {
                continue;
            }
            let grouping = group_order(g, side, v, edges, hint);
            let k = grouping.branches.len() + 1;
            let mut stub = Vec::with_capacity(k - 1);
            let mut at = v;
            for _ in 0..k - 1 {
                let t = add(&mut h, &mut kinds, v, side);
                h.add_edge(at, t)?;
                labels.push(side);
                stub.push(t);
                at = t;
            }
            attach.insert((grouping.straight, v), stub.clone());
            let mut corners = Vec::new();
            for (j, &(e, turn)) in grouping.branches.iter().enumerate() {
                let c = add(&mut h, &mut kinds, v, side);
                h.add_edge(stub[j], c)?;
                labels.push(turn);
                let mut path = stub[..=j].to_vec();
                path.push(c);
                attach.insert((e, v), path);
                corners.push(c);
            }
            let mut edges = vec![grouping.straight];
            edges.extend(grouping.branches.iter().map(|&(e, _)| e));
            groups.push((v, side, edges, stub, corners));
        }
    }

    let end = |e: EdgeId, v: VertexId| attach.get(&(e, v)).map_or(v, |p| *p.last().unwrap());
    for (e, a, b) in g.edges() {
        h.add_edge(end(e, a), end(e, b))?;
        labels.push(s.label(e));
    }

    let routes = (0..g.original_edge_count() as u32)
        .map(|o| {
            let (vs, es) = g.replacement_chain(EdgeId(o));
            let mut pts = vec![vs[0].index()];
            for (i, &e) in es.iter().enumerate() {
                let (from, to) = (vs[i], vs[i + 1]);
                if let Some(p) = attach.get(&(e, from)) {
                    pts.extend(p.iter().map(|v| v.index()));
                }
                if let Some(p) = attach.get(&(e, to)) {
                    pts.extend(p.iter().rev().map(|v| v.index()));
                }
                pts.push(to.index());
            }
            Route {
                edge: EdgeId(o),
                points: pts,
            }
        })
        .collect();

    let shape = Shape::new(labels);
    let orders = orders_of(&h, &shape)?;
    let total = h.vertex_count();
    let mut d = realize(
        Plan {
            graph: h,
            shape,
            kinds,
            routes,
            original_vertices: total,
        },
        &orders,
    );
    let point_of = |v: &VertexId| d.vertex_point[v.index()].expect("stub points are kept");
    let groups = groups
        .into_iter()
        .map(|(vertex, side, edges, stub, corners)| SideGroup {
            vertex,
            side,
            edges,
            separators: stub.iter().map(point_of).collect(),
            corners: corners.iter().map(point_of).collect(),
        })
        .collect();
    d.vertex_point.truncate(n);
    Ok((d, ExpansionPlan { groups }))
}

/// Re-draws `g` with high-degree sides expanded, ordering each side's edges
/// by the position of their far ends in `d`. Identity when no vertex sends
/// two edges the same way.
pub fn expand_high_degree(g: &Graph, s: &Shape, d: &Drawing) -> Result<(Drawing, ExpansionPlan)> {
    if !needs_expansion(g, s) {
        return Ok((d.clone(), ExpansionPlan::default()));
    }
    expand_with(g, s, Some(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::star_graph;
    use crate::layout::draw;
    use Direction::*;

    #[test]
    fn three_up_edges_need_two_separators() {
        // center 0 with leaves 1..6: L, R, D, U, U, U
        let g = star_graph(6);
        let s = Shape::new(vec![L, R, D, U, U, U]);
        let (d, plan) = draw(&g, &s).unwrap();
        assert!(d.is_valid(), "{:?}", d.violations());
        assert_eq!(plan.groups.len(), 1);
        let grp = &plan.groups[0];
        assert_eq!(grp.side, U);
        assert_eq!(grp.edges.len(), 3);
        assert_eq!(grp.separators.len(), 2);
        // one route runs straight, the others jog once each
        let bends: Vec<usize> = grp.edges.iter().map(|e| d.route_bends(e.index())).collect();
        assert_eq!(bends.iter().filter(|&&b| b == 0).count(), 1);
        assert_eq!(bends.iter().filter(|&&b| b == 2).count(), 2);
    }

    #[test]
    fn identity_without_repeats() {
        let (g, s) = crate::fixtures::unit_square();
        let (d, _) = draw(&g, &s).unwrap();
        let (same, plan) = expand_high_degree(&g, &s, &d).unwrap();
        assert_eq!(same, d);
        assert!(plan.groups.is_empty());
    }

    #[test]
    fn double_sided_vertex() {
        // degree 8: two edges per side
        let g = star_graph(8);
        let s = Shape::new(vec![L, R, D, U, L, R, D, U]);
        let (d, plan) = draw(&g, &s).unwrap();
        assert!(d.is_valid(), "{:?}", d.violations());
        assert_eq!(plan.groups.len(), 4);
        assert!(plan.groups.iter().all(|grp| grp.separators.len() == 1));
    }
}
