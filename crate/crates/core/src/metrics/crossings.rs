//! Proper crossings between horizontal and vertical segments of different
//! routes, by a left-to-right sweep with a Fenwick tree over row indices.
//! Touching at an endpoint or running along each other does not count.

use serde::Serialize;

use crate::layout::{Drawing, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub route: usize,
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn is_horizontal(&self) -> bool {
        self.a.y == self.b.y && self.a.x != self.b.x
    }

    pub fn is_vertical(&self) -> bool {
        self.a.x == self.b.x && self.a.y != self.b.y
    }
}

/// Maximal straight pieces of every route.
pub fn route_segments(d: &Drawing) -> Vec<Segment> {
    let mut out = Vec::new();
    for r in 0..d.routes.len() {
        for w in d.corners(r).windows(2) {
            out.push(Segment {
                route: r,
                a: w[0],
                b: w[1],
            });
        }
    }
    out
}

struct Fenwick(Vec<i64>);

impl Fenwick {
    fn add(&mut self, mut i: usize, delta: i64) {
        i += 1;
        while i < self.0.len() {
            self.0[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    /// Sum over `[0, i)`.
    fn prefix(&self, mut i: usize) -> i64 {
        let mut s = 0;
        while i > 0 {
            s += self.0[i];
            i -= i & i.wrapping_neg();
        }
        s
    }
}

fn sweep(segments: &[Segment]) -> u64 {
    // (x_lo, x_hi, y)
    let mut hs: Vec<(i64, i64, i64)> = Vec::new();
    // (x, y_lo, y_hi)
    let mut vs: Vec<(i64, i64, i64)> = Vec::new();
    for s in segments {
        if s.is_horizontal() {
            hs.push((s.a.x.min(s.b.x), s.a.x.max(s.b.x), s.a.y));
        } else if s.is_vertical() {
            vs.push((s.a.x, s.a.y.min(s.b.y), s.a.y.max(s.b.y)));
        }
    }
    if hs.is_empty() || vs.is_empty() {
        return 0;
    }
    let mut rows: Vec<i64> = hs.iter().map(|h| h.2).collect();
    rows.sort_unstable();
    rows.dedup();
    let row = |y: i64| rows.partition_point(|&r| r < y);

    let mut starts = hs.clone();
    starts.sort_unstable_by_key(|h| h.0);
    let mut ends = hs;
    ends.sort_unstable_by_key(|h| h.1);
    vs.sort_unstable_by_key(|v| v.0);

    let mut tree = Fenwick(vec![0; rows.len() + 1]);
    let (mut si, mut ei) = (0, 0);
    let mut total = 0i64;
    for &(x, y_lo, y_hi) in &vs {
        // active means x_lo < x < x_hi
        while si < starts.len() && starts[si].0 < x {
            tree.add(row(starts[si].2), 1);
            si += 1;
        }
        while ei < ends.len() && ends[ei].1 <= x {
            // only segments already started can end here
            if ends[ei].0 < x {
                tree.add(row(ends[ei].2), -1);
            }
            ei += 1;
        }
        // rows strictly between y_lo and y_hi
        let lo = rows.partition_point(|&r| r <= y_lo);
        let hi = rows.partition_point(|&r| r < y_hi);
        if hi > lo {
            total += tree.prefix(hi) - tree.prefix(lo);
        }
    }
    total as u64
}

/// Crossing pairs between segments of distinct routes.
pub fn count_crossings(d: &Drawing) -> u64 {
    let segments = route_segments(d);
    let all = sweep(&segments);
    // a route crossing itself is not a crossing between edges
    let mut own = 0;
    let mut start = 0;
    while start < segments.len() {
        let r = segments[start].route;
        let end = start
            + segments[start..]
                .iter()
                .take_while(|s| s.route == r)
                .count();
        own += sweep(&segments[start..end]);
        start = end;
    }
    all - own
}
