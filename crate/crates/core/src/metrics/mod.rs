//! Quality measures of finished drawings.

mod compare;
mod crossings;
mod normalize;

use serde::{Deserialize, Serialize};

use crate::layout::Drawing;

pub use compare::{batch_compare, least_squares, ComparisonTable, Fit, MetricComparison};
pub use crossings::{count_crossings, route_segments, Segment};
pub use normalize::{
    normalize_external, ExternalDrawing, ExternalEdge, ExternalVertex, GapThresholds,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub bends: u64,
    pub crossings: u64,
    pub bends_deviation: f64,
    pub max_bends: u64,
    pub area: u64,
    pub total_edge_length: u64,
    pub max_edge_length: u64,
    pub edge_length_deviation: f64,
    pub time_seconds: f64,
}

pub const METRIC_NAMES: [&str; 9] = [
    "bends",
    "crossings",
    "bends_deviation",
    "max_bends",
    "area",
    "total_edge_length",
    "max_edge_length",
    "edge_length_deviation",
    "time_seconds",
];

impl MetricsReport {
    /// Values in the order of [`METRIC_NAMES`].
    pub fn values(&self) -> [f64; 9] {
        [
            self.bends as f64,
            self.crossings as f64,
            self.bends_deviation,
            self.max_bends as f64,
            self.area as f64,
            self.total_edge_length as f64,
            self.max_edge_length as f64,
            self.edge_length_deviation,
            self.time_seconds,
        ]
    }

    /// Inverse of [`MetricsReport::values`]; counts are rounded.
    pub fn from_values(v: [f64; 9]) -> MetricsReport {
        let count = |x: f64| x.round().max(0.0) as u64;
        MetricsReport {
            bends: count(v[0]),
            crossings: count(v[1]),
            bends_deviation: v[2],
            max_bends: count(v[3]),
            area: count(v[4]),
            total_edge_length: count(v[5]),
            max_edge_length: count(v[6]),
            edge_length_deviation: v[7],
            time_seconds: v[8],
        }
    }
}

/// Population standard deviation.
pub fn std_dev(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    var.sqrt()
}

/// Area of the bounding box counted in grid points, `(w + 1) * (h + 1)`.
pub fn grid_area(d: &Drawing) -> u64 {
    match d.bounds() {
        Some((lo, hi)) => ((hi.x - lo.x + 1) * (hi.y - lo.y + 1)) as u64,
        None => 0,
    }
}

pub fn compute_metrics(d: &Drawing, elapsed_seconds: f64) -> MetricsReport {
    let bends: Vec<u64> = (0..d.routes.len())
        .map(|r| d.route_bends(r) as u64)
        .collect();
    let lengths: Vec<u64> = (0..d.routes.len())
        .map(|r| d.route_length(r) as u64)
        .collect();
    let as_f = |v: &[u64]| v.iter().map(|&x| x as f64).collect::<Vec<_>>();
    MetricsReport {
        bends: bends.iter().sum(),
        crossings: count_crossings(d),
        bends_deviation: std_dev(&as_f(&bends)),
        max_bends: bends.iter().copied().max().unwrap_or(0),
        area: grid_area(d),
        total_edge_length: lengths.iter().sum(),
        max_edge_length: lengths.iter().copied().max().unwrap_or(0),
        edge_length_deviation: std_dev(&as_f(&lengths)),
        time_seconds: elapsed_seconds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::unit_square;
    use crate::layout::draw;

    #[test]
    fn unit_square_numbers() {
        let (g, s) = unit_square();
        let (d, _) = draw(&g, &s).unwrap();
        let m = compute_metrics(&d, 0.0);
        assert_eq!(m.bends, 0);
        assert_eq!(m.crossings, 0);
        assert_eq!(m.area, 4);
        assert_eq!(m.total_edge_length, 4);
        assert_eq!(m.max_edge_length, 1);
        assert_eq!(m.bends_deviation, 0.0);
        assert_eq!(m.edge_length_deviation, 0.0);
    }

    #[test]
    fn population_deviation() {
        assert_eq!(std_dev(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]), 2.0);
        assert_eq!(std_dev(&[3.0; 5]), 0.0);
    }
}
