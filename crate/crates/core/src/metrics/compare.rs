//! Pairing two tools' metrics on the same instances.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::{MetricsReport, METRIC_NAMES};
use crate::error::{Error, Result};

/// Polynomial `y = c[0] + c[1] x + c[2] x^2 + ...`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fit {
    pub coefficients: Vec<f64>,
    pub r_squared: f64,
}

impl Fit {
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c)
    }
}

pub fn least_squares(xs: &[f64], ys: &[f64], degree: usize) -> Fit {
    let n = xs.len();
    if n == 0 {
        return Fit {
            coefficients: vec![0.0; degree + 1],
            r_squared: 0.0,
        };
    }
    let a = DMatrix::from_fn(n, degree + 1, |i, j| xs[i].powi(j as i32));
    let b = DVector::from_column_slice(ys);
    let coefficients: Vec<f64> = a
        .clone()
        .svd(true, true)
        .solve(&b, 1e-12)
        .map(|c| c.iter().copied().collect())
        .unwrap_or_else(|_| vec![0.0; degree + 1]);
    let fit = Fit {
        coefficients,
        r_squared: 0.0,
    };
    let mean = ys.iter().sum::<f64>() / n as f64;
    let ss_tot: f64 = ys.iter().map(|y| (y - mean).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| (y - fit.eval(x)).powi(2))
        .sum();
    let r_squared = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else if ss_res <= 1e-18 {
        1.0
    } else {
        0.0
    };
    Fit { r_squared, ..fit }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricComparison {
    pub metric: String,
    /// `(instance, a, b)`
    pub rows: Vec<(String, f64, f64)>,
    pub linear: Fit,
    pub quadratic: Fit,
    /// Percentages; B wins when its value is lower.
    pub wins_b: f64,
    pub ties: f64,
    pub wins_a: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonTable {
    pub metrics: Vec<MetricComparison>,
}

/// Compares the reports of two tools keyed by instance name.
pub fn batch_compare(
    a: &BTreeMap<String, MetricsReport>,
    b: &BTreeMap<String, MetricsReport>,
) -> Result<ComparisonTable> {
    if a.len() != b.len() || a.keys().zip(b.keys()).any(|(x, y)| x != y) {
        let only: Vec<&String> = a
            .keys()
            .filter(|k| !b.contains_key(*k))
            .chain(b.keys().filter(|k| !a.contains_key(*k)))
            .collect();
        return Err(Error::MismatchedInstances(format!("{only:?}")));
    }
    let metrics = METRIC_NAMES
        .iter()
        .enumerate()
        .map(|(m, name)| {
            let rows: Vec<(String, f64, f64)> = a
                .iter()
                .map(|(k, ra)| (k.clone(), ra.values()[m], b[k].values()[m]))
                .collect();
            let xs: Vec<f64> = rows.iter().map(|r| r.1).collect();
            let ys: Vec<f64> = rows.iter().map(|r| r.2).collect();
            let n = rows.len().max(1) as f64;
            let pct = |f: &dyn Fn(f64, f64) -> bool| {
                100.0 * rows.iter().filter(|r| f(r.1, r.2)).count() as f64 / n
            };
            MetricComparison {
                metric: name.to_string(),
                linear: least_squares(&xs, &ys, 1),
                quadratic: least_squares(&xs, &ys, 2),
                wins_b: pct(&|x, y| y < x),
                ties: pct(&|x, y| y == x),
                wins_a: pct(&|x, y| y > x),
                rows,
            }
        })
        .collect();
    Ok(ComparisonTable { metrics })
}
