//! Hand-built graphs and shapes used by tests, examples and the CLI.

use crate::graph::{EdgeId, Graph, VertexId};
use crate::shape::{Direction, Shape};

use Direction::{D, L, R, U};

pub fn cycle_graph(n: usize) -> Graph {
    let edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
    Graph::from_edges(n, &edges).expect("valid cycle")
}

pub fn path_graph(n: usize) -> Graph {
    let edges: Vec<(u32, u32)> = (1..n as u32).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("valid path")
}

pub fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            edges.push((i, j));
        }
    }
    Graph::from_edges(n, &edges).expect("valid clique")
}

/// Center 0 joined to leaves `1..=k`.
pub fn star_graph(k: usize) -> Graph {
    let edges: Vec<(u32, u32)> = (1..=k as u32).map(|i| (0, i)).collect();
    Graph::from_edges(k + 1, &edges).expect("valid star")
}

struct Builder {
    g: Graph,
    labels: Vec<Direction>,
}

impl Builder {
    fn edge(&mut self, a: VertexId, b: VertexId, d: Direction) {
        self.g.add_edge(a, b).expect("fixture edges are simple");
        self.labels.push(d);
    }

    /// Path `a -> b` through fresh internal vertices, one label per edge.
    fn chord(&mut self, a: VertexId, b: VertexId, labels: [Direction; 5]) {
        let mut at = a;
        for (i, &d) in labels.iter().enumerate() {
            let next = if i + 1 == labels.len() {
                b
            } else {
                self.g.add_vertex()
            };
            self.edge(at, next, d);
            at = next;
        }
    }
}

/// Degree-3 family with `30 + 6i` vertices and `35 + 7i` edges: an outer
/// cycle `c` plus `5 + i` chordal paths of five edges. Under the returned
/// shape every simple cycle except `c` is complete; `c` never points up.
///
/// Vertex ids: `c` comes first in the order `v1..v5, y1..yi, u5..u1,
/// xi..x1`, followed by the chord interiors. The edges of `c` are
/// `0..10 + 2i`.
pub fn adversarial_family(i: usize) -> (Graph, Shape) {
    assert!(i >= 1, "family index starts at 1");
    let outer = 10 + 2 * i;
    let mut b = Builder {
        g: Graph::new(outer),
        labels: Vec::new(),
    };
    let vid = |k: usize| VertexId(k as u32);
    let v = |k: usize| vid(k - 1);
    let y = |j: usize| vid(4 + j);
    let u = |k: usize| vid(5 + i + (5 - k));
    let x = |j: usize| vid(10 + i + (i - j));

    // the outer cycle, walked v1 .. v5, y1 .. yi, u5 .. u1, xi .. x1
    let mut walk = vec![x(1)];
    walk.extend((1..=5).map(v));
    walk.extend((1..=i).map(y));
    walk.extend((1..=5).rev().map(u));
    walk.extend((1..=i).rev().map(x));
    let mut labels = vec![R, D, L, L, D, R];
    labels.extend(std::iter::repeat(R).take(i - 1));
    labels.extend([R, D, L, L, D, R]);
    labels.extend(std::iter::repeat(R).take(i - 1));
    debug_assert_eq!(labels.len(), outer);
    for k in 0..outer {
        b.edge(walk[k], walk[k + 1], labels[k]);
    }

    b.chord(v(1), v(5), [R, U, L, D, R]);
    b.chord(u(1), u(5), [D, R, U, L, D]);
    b.chord(v(2), u(2), [D, R, U, L, D]);
    b.chord(v(3), u(3), [U, R, D, L, U]);
    b.chord(v(4), u(4), [U, R, D, L, U]);
    for j in 1..=i {
        b.chord(x(j), y(j), [U, R, D, L, U]);
    }
    (b.g, Shape::new(b.labels))
}

/// Twelve-vertex shaped graph whose horizontal-order graph is cyclic: a
/// downward column `7, 8, 11, 4, 2` and an upward column `3, 10, 5, 1, 0, 6,
/// 9` joined by rightward edges `4 -> 10`, `9 -> 7` and `2 -> 3`.
///
/// `4, 2, 3, 10` is a complete cycle; the longest cycle
/// `8, 11, 4, 10, 5, 1, 0, 6, 9, 7` never points left.
pub fn crossed_columns() -> (Graph, Shape) {
    let edges: [(u32, u32, Direction); 13] = [
        (4, 10, R),
        (9, 7, R),
        (2, 3, R),
        (7, 8, D),
        (8, 11, D),
        (11, 4, D),
        (4, 2, D),
        (3, 10, U),
        (10, 5, U),
        (5, 1, U),
        (1, 0, U),
        (0, 6, U),
        (6, 9, U),
    ];
    let mut b = Builder {
        g: Graph::new(12),
        labels: Vec::new(),
    };
    for (a, c, d) in edges {
        b.edge(VertexId(a), VertexId(c), d);
    }
    (b.g, Shape::new(b.labels))
}

/// C4 labeled so that walking `0 -> 1 -> 2 -> 3` reads `R, U, L, D`.
pub fn unit_square() -> (Graph, Shape) {
    (cycle_graph(4), Shape::new(vec![R, U, L, D]))
}

/// Edges of `g` as a plain list, handy for round trips.
pub fn edge_list(g: &Graph) -> Vec<(EdgeId, u32, u32)> {
    g.edges().map(|(e, a, b)| (e, a.0, b.0)).collect()
}
