//! Coordinates from the two order graphs.
//!
//! Start from topological ranks, which already give a valid drawing, then
//! alternately re-layer rows and columns by longest path. Besides the order
//! arcs, two classes whose extents overlap on the other axis keep their
//! current relative order, so points never collide and no point lands on a
//! segment. Every layer of a longest-path layering is occupied.

use crate::drawability::{AuxiliaryGraph, TopologicalOrders};
use crate::graph::Graph;

const ROUNDS: usize = 4;

pub(crate) fn compact(g: &Graph, orders: &TopologicalOrders) -> Vec<(i64, i64)> {
    let mut x_node = ranks(&orders.x_order);
    let mut y_node = ranks(&orders.y_order);
    for _ in 0..ROUNDS {
        let xs = per_vertex(&orders.gx, &x_node);
        let new_y = relayer(&orders.gy, &y_node, &xs);
        let ys = per_vertex(&orders.gy, &new_y);
        let new_x = relayer(&orders.gx, &x_node, &ys);
        let settled = new_x == x_node && new_y == y_node;
        x_node = new_x;
        y_node = new_y;
        if settled {
            break;
        }
    }
    let xs = per_vertex(&orders.gx, &x_node);
    let ys = per_vertex(&orders.gy, &y_node);
    (0..g.vertex_count()).map(|v| (xs[v], ys[v])).collect()
}

fn ranks(order: &[usize]) -> Vec<i64> {
    let mut r = vec![0; order.len()];
    for (i, &node) in order.iter().enumerate() {
        r[node] = i as i64;
    }
    r
}

fn per_vertex(aux: &AuxiliaryGraph, node_coord: &[i64]) -> Vec<i64> {
    aux.node_of.iter().map(|&n| node_coord[n]).collect()
}

/// Longest-path layers of `aux` under its arcs plus separation between
/// classes whose spans on the other axis overlap.
fn relayer(aux: &AuxiliaryGraph, current: &[i64], other: &[i64]) -> Vec<i64> {
    let k = aux.nodes.len();
    let span: Vec<(i64, i64)> = aux
        .nodes
        .iter()
        .map(|vs| {
            vs.iter().fold((i64::MAX, i64::MIN), |(lo, hi), v| {
                (lo.min(other[v.index()]), hi.max(other[v.index()]))
            })
        })
        .collect();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); k];
    for a in &aux.arcs {
        debug_assert!(current[a.from] < current[a.to]);
        preds[a.to].push(a.from);
    }
    let mut by_coord: Vec<usize> = (0..k).collect();
    by_coord.sort_by_key(|&n| (current[n], n));
    for (i, &b) in by_coord.iter().enumerate() {
        for &a in &by_coord[..i] {
            if span[a].0 <= span[b].1 && span[b].0 <= span[a].1 {
                debug_assert!(current[a] < current[b], "overlapping classes share a line");
                preds[b].push(a);
            }
        }
    }
    let mut layer = vec![0i64; k];
    for &b in &by_coord {
        layer[b] = preds[b].iter().map(|&a| layer[a] + 1).max().unwrap_or(0);
    }
    layer
}
