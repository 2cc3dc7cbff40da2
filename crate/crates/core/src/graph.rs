//! Simple undirected graphs with a fixed reference orientation per edge,
//! plus the structural routines the drawing loop needs.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Real,
    /// Inserted by subdividing the given edge of the input graph.
    Dummy {
        origin: EdgeId,
    },
}

/// Undirected simple graph. Each edge is stored as `(tail, head)`, which is
/// the orientation its shape label is read in.
///
/// Subdivision keeps the id of the split edge for the half next to the tail,
/// so edge ids below `original_edge_count()` stay meaningful for the
/// lifetime of the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    // sorted by neighbor id
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    edges: Vec<(VertexId, VertexId)>,
    kinds: Vec<VertexKind>,
    origin: Vec<EdgeId>,
    originals: Vec<(VertexId, VertexId)>,
}

/// Result of one edge subdivision: `split = (u, v)` became
/// `tail_half = (u, dummy)` and `head_half = (dummy, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionRecord {
    pub split: EdgeId,
    pub dummy: VertexId,
    pub tail_half: EdgeId,
    pub head_half: EdgeId,
    pub original: EdgeId,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph {
            adjacency: vec![Vec::new(); n],
            edges: Vec::new(),
            kinds: vec![VertexKind::Real; n],
            origin: Vec::new(),
            originals: Vec::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Graph> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.adjacency.push(Vec::new());
        self.kinds.push(VertexKind::Real);
        VertexId(self.adjacency.len() as u32 - 1)
    }

    /// Adds the edge `tail -> head` as a new original edge.
    pub fn add_edge(&mut self, tail: VertexId, head: VertexId) -> Result<EdgeId> {
        self.check_vertex(tail)?;
        self.check_vertex(head)?;
        if tail == head {
            return Err(Error::SelfLoop(tail));
        }
        if self.edge_between(tail, head).is_some() {
            return Err(Error::ParallelEdge(tail, head));
        }
        let e = self.push_edge(tail, head);
        self.origin.push(EdgeId(self.originals.len() as u32));
        self.originals.push((tail, head));
        Ok(e)
    }

    fn push_edge(&mut self, tail: VertexId, head: VertexId) -> EdgeId {
        let e = EdgeId(self.edges.len() as u32);
        self.edges.push((tail, head));
        self.link(tail, head, e);
        self.link(head, tail, e);
        e
    }

    fn link(&mut self, from: VertexId, to: VertexId, e: EdgeId) {
        let list = &mut self.adjacency[from.index()];
        let at = list.partition_point(|&(w, _)| w < to);
        list.insert(at, (to, e));
    }

    fn unlink(&mut self, from: VertexId, to: VertexId) {
        let list = &mut self.adjacency[from.index()];
        if let Ok(at) = list.binary_search_by_key(&to, |&(w, _)| w) {
            list.remove(at);
        }
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.index() < self.adjacency.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e.index() < self.edges.len() {
            Ok(())
        } else {
            Err(Error::UnknownEdge(e))
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.adjacency.len() as u32).map(VertexId)
    }

    /// `(id, tail, head)` in id order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| (EdgeId(i as u32), u, v))
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.index()]
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e.index()];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// Neighbors of `v` with the connecting edge, sorted by neighbor id.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.index()].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        self.kinds[v.index()]
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let list = self.adjacency.get(u.index())?;
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    /// The input edge that `e` is a piece of.
    pub fn origin(&self, e: EdgeId) -> EdgeId {
        self.origin[e.index()]
    }

    pub fn original_edge_count(&self) -> usize {
        self.originals.len()
    }

    pub fn original_endpoints(&self, o: EdgeId) -> (VertexId, VertexId) {
        self.originals[o.index()]
    }

    pub fn real_vertex_count(&self) -> usize {
        self.kinds
            .iter()
            .filter(|k| **k == VertexKind::Real)
            .count()
    }

    pub fn dummy_count(&self) -> usize {
        self.vertex_count() - self.real_vertex_count()
    }

    /// The path replacing input edge `o`, from its tail to its head, as
    /// `(vertices, edges)` with `vertices.len() == edges.len() + 1`.
    pub fn replacement_chain(&self, o: EdgeId) -> (Vec<VertexId>, Vec<EdgeId>) {
        let (tail, head) = self.originals[o.index()];
        let mut vertices = vec![tail];
        let mut edges = Vec::new();
        let mut prev_edge: Option<EdgeId> = None;
        let mut at = tail;
        while at != head {
            let &(next, e) = self.adjacency[at.index()]
                .iter()
                .find(|&&(w, e)| {
                    Some(e) != prev_edge
                        && self.origin[e.index()] == o
                        && (w == head || self.kinds[w.index()] != VertexKind::Real)
                })
                .expect("replacement chain is intact");
            vertices.push(next);
            edges.push(e);
            prev_edge = Some(e);
            at = next;
        }
        (vertices, edges)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adjacency[v] {
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    count += 1;
                    stack.push(w.index());
                }
            }
        }
        count == n
    }

    /// Replaces `e = (u, v)` by `(u, w)` and `(w, v)` for a fresh dummy `w`.
    /// The half next to `u` keeps the id `e`.
    pub fn subdivide_in_place(&mut self, e: EdgeId) -> Result<SubdivisionRecord> {
        self.check_edge(e)?;
        let (u, v) = self.edges[e.index()];
        let original = self.origin[e.index()];
        let w = VertexId(self.adjacency.len() as u32);
        self.adjacency.push(Vec::new());
        self.kinds.push(VertexKind::Dummy { origin: original });

        self.unlink(u, v);
        self.unlink(v, u);
        self.edges[e.index()] = (u, w);
        self.link(u, w, e);
        self.link(w, u, e);
        let m = self.push_edge(w, v);
        self.origin.push(original);
        Ok(SubdivisionRecord {
            split: e,
            dummy: w,
            tail_half: e,
            head_half: m,
            original,
        })
    }

    pub fn subdivide_edge(&self, e: EdgeId) -> Result<(Graph, SubdivisionRecord)> {
        let mut g = self.clone();
        let rec = g.subdivide_in_place(e)?;
        Ok((g, rec))
    }
}

/// A simple cycle: `edges[i]` joins `vertices[i]` and `vertices[i + 1]`
/// (indices mod length). Kept in canonical form: smallest vertex first, and
/// the smaller of its two cycle neighbors second.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cycle {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

pub type CycleSet = Vec<Cycle>;

impl Cycle {
    /// Builds a cycle from its vertex sequence, looking up the edges.
    pub fn from_vertices(g: &Graph, vertices: &[VertexId]) -> Result<Cycle> {
        if vertices.len() < 3 {
            return Err(Error::NotACycle(format!(
                "{} vertices, need at least 3",
                vertices.len()
            )));
        }
        let k = vertices.len();
        let mut edges = Vec::with_capacity(k);
        for i in 0..k {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            g.check_vertex(a)?;
            let e = g
                .edge_between(a, b)
                .ok_or_else(|| Error::NotACycle(format!("no edge between {a} and {b}")))?;
            edges.push(e);
        }
        let c = Cycle::from_parts_unchecked(vertices.to_vec(), edges);
        c.validate(g)?;
        Ok(c)
    }

    pub(crate) fn from_parts_unchecked(vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Cycle {
        let mut c = Cycle { vertices, edges };
        c.canonicalize();
        c
    }

    /// Checks simplicity and that every listed edge joins its two vertices.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let k = self.vertices.len();
        if k < 3 || self.edges.len() != k {
            return Err(Error::NotACycle(format!(
                "{} vertices and {} edges",
                k,
                self.edges.len()
            )));
        }
        let mut seen = std::collections::HashSet::with_capacity(k);
        for i in 0..k {
            let v = self.vertices[i];
            g.check_vertex(v)?;
            if !seen.insert(v) {
                return Err(Error::NotACycle(format!("vertex {v} repeats")));
            }
            let e = self.edges[i];
            g.check_edge(e)?;
            let (a, b) = g.endpoints(e);
            let w = self.vertices[(i + 1) % k];
            if !((a == v && b == w) || (a == w && b == v)) {
                return Err(Error::NotACycle(format!(
                    "edge {e} does not join {v} and {w}"
                )));
            }
        }
        Ok(())
    }

    fn canonicalize(&mut self) {
        let k = self.vertices.len();
        if k == 0 {
            return;
        }
        let start = (0..k).min_by_key(|&i| self.vertices[i]).unwrap();
        self.vertices.rotate_left(start);
        self.edges.rotate_left(start);
        if self.vertices[1] > self.vertices[k - 1] {
            // walk the other way: v0, v_{k-1}, ..., v1
            self.vertices[1..].reverse();
            self.edges.reverse();
        }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    /// `(from, to, edge)` triples in traversal order.
    pub fn steps(&self) -> impl Iterator<Item = (VertexId, VertexId, EdgeId)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k], self.edges[i]))
    }

    /// The cycle after `rec` was applied to the graph it lives in.
    pub fn rewrite(&self, g_after: &Graph, rec: &SubdivisionRecord) -> Cycle {
        let Some(i) = self.edges.iter().position(|&e| e == rec.split) else {
            return self.clone();
        };
        let k = self.vertices.len();
        let from = self.vertices[i];
        let tail_side = g_after.other_end(rec.tail_half, rec.dummy);
        let (first, second) = if from == tail_side {
            (rec.tail_half, rec.head_half)
        } else {
            (rec.head_half, rec.tail_half)
        };
        let mut vertices = Vec::with_capacity(k + 1);
        let mut edges = Vec::with_capacity(k + 1);
        for j in 0..k {
            vertices.push(self.vertices[j]);
            if j == i {
                edges.push(first);
                vertices.push(rec.dummy);
                edges.push(second);
            } else {
                edges.push(self.edges[j]);
            }
        }
        Cycle::from_parts_unchecked(vertices, edges)
    }
}

/// Rewrites every cycle through the split edge so it passes the new dummy.
pub fn rewrite_cycles(cs: &[Cycle], g_after: &Graph, rec: &SubdivisionRecord) -> CycleSet {
    cs.iter().map(|c| c.rewrite(g_after, rec)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiconnectedComponent {
    /// Sorted edge ids.
    pub edges: Vec<EdgeId>,
}

impl BiconnectedComponent {
    pub fn is_trivial(&self) -> bool {
        self.edges.len() == 1
    }
}

/// Edge partition into biconnected components (iterative Hopcroft-Tarjan).
/// Components are listed in the order the DFS from vertex 0 closes them.
pub fn biconnected_components(g: &Graph) -> Result<Vec<BiconnectedComponent>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    // (vertex, edge used to enter it, next neighbor index)
    let mut stack: Vec<(usize, Option<EdgeId>, usize)> = vec![(0, None, 0)];
    let mut time = 0;
    disc[0] = 0;
    low[0] = 0;

    while let Some(&mut (v, parent_edge, ref mut next)) = stack.last_mut() {
        let adj = g.neighbors(VertexId(v as u32));
        if *next < adj.len() {
            let (w, e) = adj[*next];
            *next += 1;
            if Some(e) == parent_edge {
                continue;
            }
            let w = w.index();
            if disc[w] == UNSEEN {
                time += 1;
                disc[w] = time;
                low[w] = time;
                edge_stack.push(e);
                stack.push((w, Some(e), 0));
            } else if disc[w] < disc[v] {
                low[v] = low[v].min(disc[w]);
                edge_stack.push(e);
            }
        } else {
            stack.pop();
            if let Some(&(u, _, _)) = stack.last() {
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    let pe = parent_edge.expect("non-root has a parent edge");
                    let mut edges = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        edges.push(e);
                        if e == pe {
                            break;
                        }
                    }
                    edges.sort_unstable();
                    out.push(BiconnectedComponent { edges });
                }
            }
        }
    }
    Ok(out)
}

/// Fundamental cycles of a BFS tree rooted at vertex 0, one per non-tree
/// edge in edge-id order.
pub fn cycle_basis(g: &Graph) -> Result<CycleSet> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree_edge = vec![false; g.edge_count()];
    let mut queue = VecDeque::new();
    depth[0] = 0;
    queue.push_back(VertexId(0));
    while let Some(v) = queue.pop_front() {
        for &(w, e) in g.neighbors(v) {
            if depth[w.index()] == usize::MAX {
                depth[w.index()] = depth[v.index()] + 1;
                parent[w.index()] = Some((v, e));
                tree_edge[e.index()] = true;
                queue.push_back(w);
            }
        }
    }

    let mut cycles = Vec::with_capacity(g.edge_count() + 1 - n);
    for (e, u, v) in g.edges() {
        if tree_edge[e.index()] {
            continue;
        }
        // climb both ends to the lowest common ancestor
        let (mut a, mut b) = (u, v);
        let mut up_a: Vec<(VertexId, EdgeId)> = Vec::new();
        let mut up_b: Vec<(VertexId, EdgeId)> = Vec::new();
        while depth[a.index()] > depth[b.index()] {
            let (p, pe) = parent[a.index()].unwrap();
            up_a.push((a, pe));
            a = p;
        }
        while depth[b.index()] > depth[a.index()] {
            let (p, pe) = parent[b.index()].unwrap();
            up_b.push((b, pe));
            b = p;
        }
        while a != b {
            let (pa, ea) = parent[a.index()].unwrap();
            let (pb, eb) = parent[b.index()].unwrap();
            up_a.push((a, ea));
            up_b.push((b, eb));
            a = pa;
            b = pb;
        }
        let lca = a;
        // u .. lca .. v, then back to u over e
        let mut vertices = Vec::with_capacity(up_a.len() + up_b.len() + 1);
        let mut edges = Vec::with_capacity(vertices.capacity());
        for &(x, pe) in &up_a {
            vertices.push(x);
            edges.push(pe);
        }
        vertices.push(lca);
        for &(x, pe) in up_b.iter().rev() {
            edges.push(pe);
            vertices.push(x);
        }
        edges.push(e);
        cycles.push(Cycle::from_parts_unchecked(vertices, edges));
    }
    Ok(cycles)
}

/// Every simple cycle of `g`, each once, in canonical form. Exponential;
/// meant for small graphs and checks.
pub fn all_simple_cycles(g: &Graph) -> CycleSet {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    for s in 0..n {
        let start = VertexId(s as u32);
        let mut path_v = vec![start];
        let mut path_e: Vec<EdgeId> = Vec::new();
        on_path[s] = true;
        // (vertex, next neighbor index)
        let mut stack: Vec<usize> = vec![0];
        while let Some(next) = stack.last_mut() {
            let v = *path_v.last().unwrap();
            let adj = g.neighbors(v);
            if *next >= adj.len() {
                stack.pop();
                on_path[v.index()] = false;
                path_v.pop();
                path_e.pop();
                continue;
            }
            let (w, e) = adj[*next];
            *next += 1;
            if w == start {
                // each cycle is met in both directions; keep one
                if path_v.len() >= 3 && path_v[1] < v {
                    let mut edges = path_e.clone();
                    edges.push(e);
                    out.push(Cycle::from_parts_unchecked(path_v.clone(), edges));
                }
            } else if w > start && !on_path[w.index()] {
                on_path[w.index()] = true;
                path_v.push(w);
                path_e.push(e);
                stack.push(0);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_graph(n: u32) -> Graph {
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n as usize, &edges).unwrap()
    }

    fn complete(n: u32) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::from_edges(n as usize, &edges).unwrap()
    }

    #[test]
    fn rejects_loops_and_parallels() {
        let mut g = Graph::new(3);
        g.add_edge(VertexId(0), VertexId(1)).unwrap();
        assert!(matches!(
            g.add_edge(VertexId(1), VertexId(0)),
            Err(Error::ParallelEdge(..))
        ));
        assert!(matches!(
            g.add_edge(VertexId(2), VertexId(2)),
            Err(Error::SelfLoop(_))
        ));
        assert!(g.add_edge(VertexId(0), VertexId(7)).is_err());
    }

    #[test]
    fn bridge_and_triangle_components() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let bcc = biconnected_components(&k2).unwrap();
        assert_eq!(bcc.len(), 1);
        assert!(bcc[0].is_trivial());

        let bcc = biconnected_components(&cycle_graph(3)).unwrap();
        assert_eq!(bcc.len(), 1);
        assert_eq!(bcc[0].edges.len(), 3);
    }

    #[test]
    fn bowtie_splits_at_the_shared_vertex() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let mut bcc = biconnected_components(&g).unwrap();
        bcc.sort_by_key(|c| c.edges[0]);
        let sets: Vec<Vec<u32>> = bcc
            .iter()
            .map(|c| c.edges.iter().map(|e| e.0).collect())
            .collect();
        assert_eq!(sets, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn disconnected_input_is_an_error() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            biconnected_components(&g).unwrap_err().to_string(),
            "graph must be connected"
        );
        assert!(cycle_basis(&g).is_err());
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(cycle_basis(&cycle_graph(6)).unwrap().len(), 1);
        assert_eq!(cycle_basis(&cycle_graph(6)).unwrap()[0].len(), 6);
        assert_eq!(cycle_basis(&complete(4)).unwrap().len(), 3);
        let tree = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert!(cycle_basis(&tree).unwrap().is_empty());
    }

    #[test]
    fn canonical_form_is_rotation_and_reflection_invariant() {
        let g = cycle_graph(5);
        let seq: Vec<VertexId> = [3, 4, 0, 1, 2].into_iter().map(VertexId).collect();
        let mut rev = seq.clone();
        rev.reverse();
        let a = Cycle::from_vertices(&g, &seq).unwrap();
        let b = Cycle::from_vertices(&g, &rev).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.vertices()[0], VertexId(0));
        assert_eq!(a.vertices()[1], VertexId(1));
        a.validate(&g).unwrap();
    }

    #[test]
    fn subdividing_k2_and_c3() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let (p, rec) = k2.subdivide_edge(EdgeId(0)).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (3, 2));
        assert_eq!(p.kind(rec.dummy), VertexKind::Dummy { origin: EdgeId(0) });
        assert_eq!(p.endpoints(rec.tail_half), (VertexId(0), rec.dummy));
        assert_eq!(p.endpoints(rec.head_half), (rec.dummy, VertexId(1)));

        let c3 = cycle_graph(3);
        let basis = cycle_basis(&c3).unwrap();
        let (c4, rec) = c3.subdivide_edge(EdgeId(1)).unwrap();
        let rewritten = rewrite_cycles(&basis, &c4, &rec);
        assert_eq!(rewritten[0].len(), 4);
        rewritten[0].validate(&c4).unwrap();
        assert_eq!(cycle_basis(&c4).unwrap()[0], rewritten[0]);
        assert!(k2.subdivide_edge(EdgeId(5)).is_err());
    }

    #[test]
    fn chord_subdivision_lengthens_exactly_the_cycles_through_it() {
        // C4 plus chord 0-2 (edge 4)
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let basis = cycle_basis(&g).unwrap();
        let (h, rec) = g.subdivide_edge(EdgeId(4)).unwrap();
        let after = rewrite_cycles(&basis, &h, &rec);
        for (b, a) in basis.iter().zip(&after) {
            a.validate(&h).unwrap();
            let expected = b.len() + b.contains_edge(EdgeId(4)) as usize;
            assert_eq!(a.len(), expected);
        }
    }

    #[test]
    fn replacement_chain_follows_repeated_splits() {
        let mut g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let r1 = g.subdivide_in_place(EdgeId(2)).unwrap();
        let r2 = g.subdivide_in_place(r1.head_half).unwrap();
        let _ = g.subdivide_in_place(EdgeId(2)).unwrap();
        let (vs, es) = g.replacement_chain(EdgeId(2));
        assert_eq!(vs.first(), Some(&VertexId(2)));
        assert_eq!(vs.last(), Some(&VertexId(0)));
        assert_eq!(es.len(), 4);
        assert!(vs.contains(&r2.dummy));
        assert_eq!(g.dummy_count(), 3);
        assert!(es.iter().all(|&e| g.origin(e) == EdgeId(2)));
    }

    #[test]
    fn simple_cycle_counts() {
        assert_eq!(all_simple_cycles(&cycle_graph(5)).len(), 1);
        assert_eq!(all_simple_cycles(&complete(4)).len(), 7);
        assert_eq!(all_simple_cycles(&complete(5)).len(), 37);
    }
}
