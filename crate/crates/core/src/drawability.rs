//! Drawability of a shaped graph through its two order graphs.
//!
//! Vertices joined by vertical edges must share an x coordinate, so they
//! collapse into one node of the X graph; a rightward edge forces its tail
//! class strictly left of its head class. The shape is drawable without
//! bends exactly when both order graphs are acyclic. A directed cycle in
//! either one yields a simple cycle of the graph that misses a direction.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Cycle, EdgeId, Graph, VertexId};
use crate::shape::{Direction, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    /// Labels that keep a vertex in the same class on this axis.
    fn aligning(self, d: Direction) -> bool {
        match self {
            Axis::X => !d.is_horizontal(),
            Axis::Y => d.is_horizontal(),
        }
    }

    /// Label that points from a smaller to a larger coordinate.
    pub fn forward(self) -> Direction {
        match self {
            Axis::X => Direction::R,
            Axis::Y => Direction::U,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub edge: EdgeId,
    /// Endpoint of `edge` inside `from`.
    pub tail: VertexId,
    /// Endpoint of `edge` inside `to`.
    pub head: VertexId,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuxiliaryGraph {
    pub axis: Axis,
    /// Sorted vertex sets, ordered by their smallest vertex.
    pub nodes: Vec<Vec<VertexId>>,
    pub node_of: Vec<usize>,
    /// In edge-id order.
    pub arcs: Vec<Arc>,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

pub fn build_auxiliary(g: &Graph, s: &Shape, axis: Axis) -> Result<AuxiliaryGraph> {
    s.validate(g)?;
    Ok(build_unchecked(g, s, axis))
}

fn build_unchecked(g: &Graph, s: &Shape, axis: Axis) -> AuxiliaryGraph {
    let n = g.vertex_count();
    let mut dsu = Dsu((0..n).collect());
    for (e, a, b) in g.edges() {
        if axis.aligning(s.label(e)) {
            dsu.union(a.index(), b.index());
        }
    }
    let mut node_of = vec![usize::MAX; n];
    let mut nodes: Vec<Vec<VertexId>> = Vec::new();
    let mut node_of_root = vec![usize::MAX; n];
    for v in 0..n {
        let r = dsu.find(v);
        if node_of_root[r] == usize::MAX {
            node_of_root[r] = nodes.len();
            nodes.push(Vec::new());
        }
        node_of[v] = node_of_root[r];
        nodes[node_of[v]].push(VertexId(v as u32));
    }
    let mut arcs = Vec::new();
    for (e, a, b) in g.edges() {
        let d = s.label(e);
        if axis.aligning(d) {
            continue;
        }
        let (tail, head) = if d == axis.forward() { (a, b) } else { (b, a) };
        arcs.push(Arc {
            from: node_of[tail.index()],
            to: node_of[head.index()],
            edge: e,
            tail,
            head,
        });
    }
    AuxiliaryGraph {
        axis,
        nodes,
        node_of,
        arcs,
    }
}

impl AuxiliaryGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    fn out_arcs(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for (i, a) in self.arcs.iter().enumerate() {
            out[a.from].push(i);
        }
        out
    }

    /// First directed cycle met by a DFS over nodes in index order, as arc
    /// indices in cycle order.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            White,
            Grey,
            Black,
        }
        let out = self.out_arcs();
        let mut color = vec![Color::White; self.nodes.len()];
        for root in 0..self.nodes.len() {
            if color[root] != Color::White {
                continue;
            }
            // (node, next out-arc position); arcs_taken[i] entered stack[i + 1]
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            let mut arcs_taken: Vec<usize> = Vec::new();
            color[root] = Color::Grey;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next == out[v].len() {
                    color[v] = Color::Black;
                    stack.pop();
                    arcs_taken.pop();
                    continue;
                }
                let ai = out[v][*next];
                *next += 1;
                let w = self.arcs[ai].to;
                match color[w] {
                    Color::White => {
                        color[w] = Color::Grey;
                        stack.push((w, 0));
                        arcs_taken.push(ai);
                    }
                    Color::Grey => {
                        let start = stack.iter().position(|&(x, _)| x == w).unwrap();
                        let mut cycle: Vec<usize> = arcs_taken[start..].to_vec();
                        cycle.push(ai);
                        return Some(cycle);
                    }
                    Color::Black => {}
                }
            }
        }
        None
    }

    /// A directed cycle with the fewest arcs, as arc indices in cycle order.
    /// Ties go to the cycle through the smallest node, then to BFS order.
    pub fn shortest_cycle(&self) -> Option<Vec<usize>> {
        let out = self.out_arcs();
        let k = self.nodes.len();
        let mut best: Option<Vec<usize>> = None;
        let mut via = vec![usize::MAX; k];
        let mut queue = VecDeque::new();
        for root in 0..k {
            via.iter_mut().for_each(|x| *x = usize::MAX);
            queue.clear();
            queue.push_back((root, 0usize));
            let mut closing = None;
            'bfs: while let Some((v, depth)) = queue.pop_front() {
                if best.as_ref().is_some_and(|b| depth + 1 >= b.len()) {
                    break;
                }
                for &ai in &out[v] {
                    let w = self.arcs[ai].to;
                    if w == root {
                        closing = Some(ai);
                        break 'bfs;
                    }
                    if via[w] == usize::MAX {
                        via[w] = ai;
                        queue.push_back((w, depth + 1));
                    }
                }
            }
            if let Some(last) = closing {
                let mut cycle = vec![last];
                let mut at = self.arcs[last].from;
                while at != root {
                    let ai = via[at];
                    cycle.push(ai);
                    at = self.arcs[ai].from;
                }
                cycle.reverse();
                best = Some(cycle);
            }
        }
        best
    }

    /// Kahn's algorithm, smallest ready node first.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let k = self.nodes.len();
        let mut indeg = vec![0usize; k];
        for a in &self.arcs {
            indeg[a.to] += 1;
        }
        let out = self.out_arcs();
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..k).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(k);
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for &ai in &out[v] {
                let w = self.arcs[ai].to;
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(Reverse(w));
                }
            }
        }
        (order.len() == k).then_some(order)
    }

    /// DOT text; each node is labeled with its brace-listed vertices.
    pub fn to_dot(&self) -> String {
        let name = match self.axis {
            Axis::X => "Gx",
            Axis::Y => "Gy",
        };
        let mut s = format!("digraph {name} {{\n");
        for (i, vs) in self.nodes.iter().enumerate() {
            let ids: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "  n{i} [label=\"{{{}}}\"];", ids.join(","));
        }
        for a in &self.arcs {
            let _ = writeln!(s, "  n{} -> n{} [label=\"e{}\"];", a.from, a.to, a.edge);
        }
        s.push_str("}\n");
        s
    }
}

/// Both order graphs of a drawable shape with a topological order of each.
#[derive(Debug, Clone, Serialize)]
pub struct TopologicalOrders {
    pub gx: AuxiliaryGraph,
    pub gy: AuxiliaryGraph,
    pub x_order: Vec<usize>,
    pub y_order: Vec<usize>,
}

/// A directed cycle of one order graph, stored by its arcs so it can be
/// checked against the shape it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub axis: Axis,
    pub arcs: Vec<Arc>,
}

#[derive(Debug, Clone)]
pub enum Drawability {
    Drawable(Box<TopologicalOrders>),
    NotDrawable(Witness),
}

impl Drawability {
    pub fn is_drawable(&self) -> bool {
        matches!(self, Drawability::Drawable(_))
    }
}

/// A shortest cycle of each cyclic order graph, X first.
pub fn witnesses(g: &Graph, s: &Shape) -> Result<Vec<Witness>> {
    s.validate(g)?;
    let mut out = Vec::new();
    for axis in [Axis::X, Axis::Y] {
        let aux = build_unchecked(g, s, axis);
        if let Some(c) = aux.shortest_cycle() {
            out.push(Witness {
                axis,
                arcs: c.iter().map(|&i| aux.arcs[i]).collect(),
            });
        }
    }
    Ok(out)
}

/// Checks X before Y and reports a shortest cycle of the first cyclic one.
pub fn test_drawable(g: &Graph, s: &Shape) -> Result<Drawability> {
    s.validate(g)?;
    let gx = build_unchecked(g, s, Axis::X);
    if let Some(c) = gx.shortest_cycle() {
        return Ok(Drawability::NotDrawable(Witness {
            axis: Axis::X,
            arcs: c.iter().map(|&i| gx.arcs[i]).collect(),
        }));
    }
    let gy = build_unchecked(g, s, Axis::Y);
    if let Some(c) = gy.shortest_cycle() {
        return Ok(Drawability::NotDrawable(Witness {
            axis: Axis::Y,
            arcs: c.iter().map(|&i| gy.arcs[i]).collect(),
        }));
    }
    let x_order = gx.topological_order().expect("acyclic");
    let y_order = gy.topological_order().expect("acyclic");
    Ok(Drawability::Drawable(Box::new(TopologicalOrders {
        gx,
        gy,
        x_order,
        y_order,
    })))
}

/// Shortest path from `from` to `to` over edges aligned on `axis`.
fn aligned_path(
    g: &Graph,
    s: &Shape,
    axis: Axis,
    from: VertexId,
    to: VertexId,
) -> Option<(Vec<VertexId>, Vec<EdgeId>)> {
    let mut prev: Vec<Option<(VertexId, EdgeId)>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::from([from]);
    seen[from.index()] = true;
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &(w, e) in g.neighbors(v) {
            if !seen[w.index()] && axis.aligning(s.label(e)) {
                seen[w.index()] = true;
                prev[w.index()] = Some((v, e));
                queue.push_back(w);
            }
        }
    }
    if !seen[to.index()] {
        return None;
    }
    let mut vertices = vec![to];
    let mut edges = Vec::new();
    let mut at = to;
    while at != from {
        let (p, e) = prev[at.index()].unwrap();
        vertices.push(p);
        edges.push(e);
        at = p;
    }
    vertices.reverse();
    edges.reverse();
    Some((vertices, edges))
}

/// Turns a witness into a simple cycle of `g`: inside each class walk an
/// aligned path from where the previous arc entered to where the next arc
/// leaves, then take the arc's edge.
pub fn extract_incomplete_cycle(g: &Graph, s: &Shape, w: &Witness) -> Result<Cycle> {
    if w.arcs.is_empty() {
        return Err(Error::StaleWitness("empty witness".into()));
    }
    let p = w.arcs.len();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for i in 0..p {
        let arc = w.arcs[i];
        if arc.edge.index() >= g.edge_count() || !joins(g, arc) {
            return Err(Error::StaleWitness(format!("edge {} changed", arc.edge)));
        }
        let d = s.label(arc.edge);
        let (tail, _) = g.endpoints(arc.edge);
        let expected = if tail == arc.tail {
            w.axis.forward()
        } else {
            w.axis.forward().opposite()
        };
        if d != expected {
            return Err(Error::StaleWitness(format!(
                "edge {} is labeled {d}, witness needs {expected}",
                arc.edge
            )));
        }
        // enter at the head of the previous arc, leave at this arc's tail
        let enter = w.arcs[(i + p - 1) % p].head;
        let (pv, pe) = aligned_path(g, s, w.axis, enter, arc.tail).ok_or_else(|| {
            Error::StaleWitness(format!("{enter} and {} are not aligned", arc.tail))
        })?;
        vertices.extend_from_slice(&pv);
        edges.extend_from_slice(&pe);
        edges.push(arc.edge);
    }
    let c = Cycle::from_parts_unchecked(vertices, edges);
    c.validate(g)?;
    Ok(c)
}

fn joins(g: &Graph, arc: Arc) -> bool {
    let (a, b) = g.endpoints(arc.edge);
    (a, b) == (arc.tail, arc.head) || (b, a) == (arc.tail, arc.head)
}

/// Directions present along a cycle, read in traversal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub mask: u8,
}

impl CompletenessReport {
    pub fn is_complete(self) -> bool {
        self.mask == 0b1111
    }

    pub fn has(self, d: Direction) -> bool {
        self.mask & d.bit() != 0
    }

    pub fn missing(self) -> Vec<Direction> {
        Direction::ALL
            .into_iter()
            .filter(|&d| !self.has(d))
            .collect()
    }
}

pub fn is_cycle_complete(g: &Graph, s: &Shape, c: &Cycle) -> Result<CompletenessReport> {
    c.validate(g)?;
    if s.len() != g.edge_count() {
        return Err(Error::ShapeSize {
            labels: s.len(),
            edges: g.edge_count(),
        });
    }
    let mut mask = 0;
    for (from, _, e) in c.steps() {
        mask |= s.leaving(g, e, from).bit();
    }
    Ok(CompletenessReport { mask })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{crossed_columns, cycle_graph, path_graph, unit_square};
    use Direction::*;

    #[test]
    fn single_edge_order_graphs() {
        let g = path_graph(2);
        let gx = build_auxiliary(&g, &Shape::new(vec![R]), Axis::X).unwrap();
        assert_eq!(gx.nodes.len(), 2);
        assert_eq!(gx.arcs.len(), 1);
        let gx = build_auxiliary(&g, &Shape::new(vec![U]), Axis::X).unwrap();
        assert_eq!(gx.nodes, vec![vec![VertexId(0), VertexId(1)]]);
        assert!(gx.arcs.is_empty());
        for d in Direction::ALL {
            assert!(test_drawable(&g, &Shape::new(vec![d]))
                .unwrap()
                .is_drawable());
        }
    }

    #[test]
    fn square_is_complete_and_drawable() {
        let (g, s) = unit_square();
        let c = Cycle::from_vertices(&g, &g.vertices().collect::<Vec<_>>()).unwrap();
        assert!(is_cycle_complete(&g, &s, &c).unwrap().is_complete());
        assert!(test_drawable(&g, &s).unwrap().is_drawable());
    }

    #[test]
    fn staircase_cycle_is_incomplete() {
        let g = cycle_graph(4);
        let s = Shape::new(vec![R, U, R, U]);
        s.validate(&g).unwrap();
        let c = Cycle::from_vertices(&g, &g.vertices().collect::<Vec<_>>()).unwrap();
        let r = is_cycle_complete(&g, &s, &c).unwrap();
        assert!(!r.is_complete());
        assert_eq!(r.missing(), vec![L, D]);
    }

    #[test]
    fn crossed_columns_cycle_and_witness() {
        let (g, s) = crossed_columns();
        let small = Cycle::from_vertices(&g, &[4, 2, 3, 10].map(VertexId)).unwrap();
        assert!(is_cycle_complete(&g, &s, &small).unwrap().is_complete());

        let gx = build_auxiliary(&g, &s, Axis::X).unwrap();
        assert_eq!(gx.nodes.len(), 2);
        assert_eq!(gx.arcs.len(), 3);
        assert!(gx.find_cycle().is_some());
        assert!(gx.topological_order().is_none());
        let gy = build_auxiliary(&g, &s, Axis::Y).unwrap();
        assert!(gy.topological_order().is_some());

        let Drawability::NotDrawable(w) = test_drawable(&g, &s).unwrap() else {
            panic!("columns cross");
        };
        assert_eq!(w.axis, Axis::X);
        let c = extract_incomplete_cycle(&g, &s, &w).unwrap();
        let mut got: Vec<u32> = c.vertices().iter().map(|v| v.0).collect();
        got.sort_unstable();
        assert_eq!(got, vec![0, 1, 4, 5, 6, 7, 8, 9, 10, 11]);
        let r = is_cycle_complete(&g, &s, &c).unwrap();
        assert!(!r.is_complete());
        // canonical walk starts 0 -> 1, downward; both cross links then point left
        assert!(!r.has(R) && r.has(L) && r.has(U) && r.has(D));
    }

    #[test]
    fn self_loop_witness() {
        // one column 0-1-2 closed by a rightward edge 2 -> 0
        let g = cycle_graph(3);
        let s = Shape::new(vec![U, U, R]);
        let Drawability::NotDrawable(w) = test_drawable(&g, &s).unwrap() else {
            panic!("a column cannot point right into itself");
        };
        assert_eq!(w.arcs.len(), 1);
        assert_eq!(w.arcs[0].from, w.arcs[0].to);
        let c = extract_incomplete_cycle(&g, &s, &w).unwrap();
        assert_eq!(c.len(), 3);
        assert!(!is_cycle_complete(&g, &s, &c).unwrap().is_complete());
    }

    #[test]
    fn stale_witness_is_rejected() {
        let (g, s) = crossed_columns();
        let Drawability::NotDrawable(w) = test_drawable(&g, &s).unwrap() else {
            panic!()
        };
        let mut changed = s.clone();
        changed.set(w.arcs[0].edge, L);
        assert!(matches!(
            extract_incomplete_cycle(&g, &changed, &w),
            Err(Error::StaleWitness(_))
        ));
    }

    #[test]
    fn dot_dump_lists_classes() {
        let (g, s) = crossed_columns();
        let dot = build_auxiliary(&g, &s, Axis::X).unwrap().to_dot();
        assert!(dot.contains("n0 [label=\"{0,1,3,5,6,9,10}\"]"));
        assert!(dot.contains("n1 [label=\"{2,4,7,8,11}\"]"));
        assert!(dot.contains("n1 -> n0 [label=\"e0\"]"));
    }
}
