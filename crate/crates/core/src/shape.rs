use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    L,
    R,
    D,
    U,
}

impl Direction {
    /// Also the variable order within an edge.
    pub const ALL: [Direction; 4] = [Direction::L, Direction::R, Direction::D, Direction::U];

    pub fn opposite(self) -> Direction {
        match self {
            Direction::L => Direction::R,
            Direction::R => Direction::L,
            Direction::D => Direction::U,
            Direction::U => Direction::D,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn bit(self) -> u8 {
        1 << self.index()
    }

    pub fn is_horizontal(self) -> bool {
        matches!(self, Direction::L | Direction::R)
    }

    /// Unit step in y-up coordinates.
    pub fn delta(self) -> (i64, i64) {
        match self {
            Direction::L => (-1, 0),
            Direction::R => (1, 0),
            Direction::D => (0, -1),
            Direction::U => (0, 1),
        }
    }

    /// Direction of the axis-parallel step from `(x0, y0)` to `(x1, y1)`.
    pub fn between(x0: i64, y0: i64, x1: i64, y1: i64) -> Option<Direction> {
        match (x1.cmp(&x0), y1.cmp(&y0)) {
            (std::cmp::Ordering::Greater, std::cmp::Ordering::Equal) => Some(Direction::R),
            (std::cmp::Ordering::Less, std::cmp::Ordering::Equal) => Some(Direction::L),
            (std::cmp::Ordering::Equal, std::cmp::Ordering::Greater) => Some(Direction::U),
            (std::cmp::Ordering::Equal, std::cmp::Ordering::Less) => Some(Direction::D),
            _ => None,
        }
    }

    pub fn from_char(c: char) -> Option<Direction> {
        match c.to_ascii_uppercase() {
            'L' => Some(Direction::L),
            'R' => Some(Direction::R),
            'D' => Some(Direction::D),
            'U' => Some(Direction::U),
            _ => None,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Direction label per edge, read in the edge's `(tail, head)` orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Shape {
    labels: Vec<Direction>,
}

impl Shape {
    pub fn new(labels: Vec<Direction>) -> Shape {
        Shape { labels }
    }

    pub fn labels(&self) -> &[Direction] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, e: EdgeId) -> Direction {
        self.labels[e.index()]
    }

    pub fn set(&mut self, e: EdgeId, d: Direction) {
        self.labels[e.index()] = d;
    }

    /// Label of `e` when walked away from `from`.
    pub fn leaving(&self, g: &Graph, e: EdgeId, from: VertexId) -> Direction {
        let d = self.labels[e.index()];
        if g.endpoints(e).0 == from {
            d
        } else {
            d.opposite()
        }
    }

    /// Bitmask of the directions leaving `v`, with a flag for repeats.
    pub fn directions_at(&self, g: &Graph, v: VertexId) -> (u8, bool) {
        let mut mask = 0u8;
        let mut repeated = false;
        for &(_, e) in g.neighbors(v) {
            let b = self.leaving(g, e, v).bit();
            repeated |= mask & b != 0;
            mask |= b;
        }
        (mask, repeated)
    }

    /// Checks totality and the per-vertex rules: distinct directions at
    /// degree up to 4, all four directions present above that.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.labels.len() != g.edge_count() {
            return Err(Error::ShapeSize {
                labels: self.labels.len(),
                edges: g.edge_count(),
            });
        }
        for v in g.vertices() {
            let (mask, repeated) = self.directions_at(g, v);
            if g.degree(v) <= 4 {
                if repeated {
                    return Err(Error::InvalidShape {
                        vertex: v,
                        reason: "two edges leave in the same direction".into(),
                    });
                }
            } else if mask != 0b1111 {
                return Err(Error::InvalidShape {
                    vertex: v,
                    reason: format!("degree {} but some direction is unused", g.degree(v)),
                });
            }
        }
        Ok(())
    }

    /// The shape of a straight-line drawing, if every edge is axis-parallel.
    pub fn from_coordinates(g: &Graph, coords: &[(i64, i64)]) -> Option<Shape> {
        g.edges()
            .map(|(_, u, v)| {
                let (a, b) = (coords[u.index()], coords[v.index()]);
                Direction::between(a.0, a.1, b.0, b.1)
            })
            .collect::<Option<Vec<_>>>()
            .map(Shape::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn opposite_is_an_involution() {
        for d in Direction::ALL {
            assert_ne!(d.opposite(), d);
            assert_eq!(d.opposite().opposite(), d);
            let (dx, dy) = d.delta();
            assert_eq!(Direction::between(0, 0, dx, dy), Some(d));
        }
    }

    #[test]
    fn reversed_traversal_reads_the_opposite_label() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let s = Shape::new(vec![Direction::R]);
        assert_eq!(s.leaving(&g, EdgeId(0), VertexId(0)), Direction::R);
        assert_eq!(s.leaving(&g, EdgeId(0), VertexId(1)), Direction::L);
    }

    #[test]
    fn collisions_are_rejected() {
        // path 0-1-2 where both edges leave 1 to the right
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(Shape::new(vec![Direction::L, Direction::R])
            .validate(&g)
            .is_err());
        Shape::new(vec![Direction::R, Direction::R])
            .validate(&g)
            .unwrap();
        assert!(Shape::new(vec![Direction::R]).validate(&g).is_err());
    }

    #[test]
    fn high_degree_needs_every_direction() {
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        use Direction::*;
        Shape::new(vec![L, R, D, U, R]).validate(&g).unwrap();
        assert!(Shape::new(vec![L, R, R, U, R]).validate(&g).is_err());
    }
}
