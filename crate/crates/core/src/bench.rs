//! Batch runs over a grid of random instances.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generate::generate_random_deg4;
use crate::graph::Graph;
use crate::io::{cdf_svg, write_metrics_csv};
use crate::metrics::MetricsReport;
use crate::pipeline::{run_and_draw, PipelineConfig, Rendered};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchSpec {
    pub ns: Vec<usize>,
    pub densities: Vec<f64>,
    /// Instances per `(n, density)` cell.
    pub repeats: usize,
    pub seed: u64,
    pub jobs: usize,
    pub pipeline: PipelineConfig,
    /// Writes zero for every time so that reruns are byte-identical.
    pub omit_timing: bool,
}

impl BenchSpec {
    pub fn new(ns: Vec<usize>, densities: Vec<f64>, seed: u64) -> BenchSpec {
        BenchSpec {
            ns,
            densities,
            repeats: 1,
            seed,
            jobs: 1,
            pipeline: PipelineConfig::default(),
            omit_timing: false,
        }
    }
}

/// `count` evenly spaced values from `lo` to `hi`, both included.
pub fn density_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Instance {
    pub name: String,
    pub n: usize,
    pub density: f64,
    pub seed: u64,
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Every instance of the grid, `n` outermost. Each gets its own seed
/// derived from the grid seed and its cell.
pub fn instances(spec: &BenchSpec) -> Vec<Instance> {
    let mut out = Vec::new();
    for &n in &spec.ns {
        for (di, &density) in spec.densities.iter().enumerate() {
            for rep in 0..spec.repeats {
                let cell = ((n as u64) << 40) ^ ((di as u64) << 20) ^ rep as u64;
                out.push(Instance {
                    name: format!("n{n}_d{density:.3}_r{rep}"),
                    n,
                    density,
                    seed: mix(spec.seed ^ mix(cell)),
                });
            }
        }
    }
    out
}

/// Fresh seeds tried when the generator cannot find a connected graph.
pub const RESEEDS: usize = 20;

/// The instance's graph. Sparse cells are often disconnected, so when the
/// generator gives up the seed is mixed again, up to [`RESEEDS`] times.
pub fn instance_graph(inst: &Instance) -> Result<Graph> {
    let mut seed = inst.seed;
    let mut last = None;
    for _ in 0..=RESEEDS {
        match generate_random_deg4(inst.n, inst.density, seed) {
            Err(e @ Error::GeneratorBudget { .. }) => last = Some(e),
            other => return other,
        }
        seed = mix(seed);
    }
    Err(last.expect("at least one attempt"))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InternalsRow {
    pub instance: String,
    pub cycles_added: usize,
    pub dummies: usize,
    pub dummies_as_bends: usize,
    pub sat_invocations: usize,
    pub seconds: f64,
}

impl InternalsRow {
    pub fn new(instance: &str, r: &Rendered) -> InternalsRow {
        InternalsRow {
            instance: instance.to_string(),
            cycles_added: r.report.counters.cycles_added,
            dummies: r.report.counters.dummies_added,
            dummies_as_bends: r.dummies.bends.len(),
            sat_invocations: r.report.counters.sat_invocations,
            seconds: r.metrics.time_seconds,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct BenchResult {
    pub internals: Vec<InternalsRow>,
    pub metrics: Vec<(String, MetricsReport)>,
    /// `(instance, error)` for runs that did not finish.
    pub failures: Vec<(String, String)>,
}

fn run_one(
    inst: &Instance,
    cfg: &PipelineConfig,
    omit_timing: bool,
) -> std::result::Result<(InternalsRow, MetricsReport), String> {
    let g = instance_graph(inst).map_err(|e| e.to_string())?;
    let mut r = run_and_draw(&g, cfg).map_err(|e| e.to_string())?;
    if omit_timing {
        r.metrics.time_seconds = 0.0;
    }
    Ok((InternalsRow::new(&inst.name, &r), r.metrics))
}

/// Runs the grid on `spec.jobs` threads. Results come back in grid order
/// whatever the thread count.
pub fn run_bench(spec: &BenchSpec) -> Result<BenchResult> {
    let list = instances(spec);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.jobs.max(1))
        .build()
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    let outcomes: Vec<_> = pool.install(|| {
        list.par_iter()
            .map(|inst| run_one(inst, &spec.pipeline, spec.omit_timing))
            .collect()
    });
    let mut result = BenchResult::default();
    for (inst, outcome) in list.iter().zip(outcomes) {
        match outcome {
            Ok((row, m)) => {
                result.internals.push(row);
                result.metrics.push((inst.name.clone(), m));
            }
            Err(e) => result.failures.push((inst.name.clone(), e)),
        }
    }
    Ok(result)
}

pub fn write_internals_csv<W: std::io::Write>(rows: &[InternalsRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `metrics.csv`, `internals.csv`, one CDF chart per internal
/// quantity and, when some runs failed, `failures.csv`.
pub fn write_bench(dir: &Path, result: &BenchResult, omit_timing: bool) -> Result<()> {
    fs::create_dir_all(dir)?;
    write_metrics_csv(&result.metrics, fs::File::create(dir.join("metrics.csv"))?)?;
    write_internals_csv(
        &result.internals,
        fs::File::create(dir.join("internals.csv"))?,
    )?;
    let rows = &result.internals;
    let mut charts: Vec<(&str, Vec<f64>)> = vec![
        (
            "cycles_added",
            rows.iter().map(|r| r.cycles_added as f64).collect(),
        ),
        ("dummies", rows.iter().map(|r| r.dummies as f64).collect()),
        (
            "dummies_as_bends",
            rows.iter().map(|r| r.dummies_as_bends as f64).collect(),
        ),
        (
            "sat_invocations",
            rows.iter().map(|r| r.sat_invocations as f64).collect(),
        ),
    ];
    if !omit_timing {
        charts.push(("seconds", rows.iter().map(|r| r.seconds).collect()));
    }
    for (name, values) in charts {
        fs::write(
            dir.join(format!("cdf_{name}.svg")),
            cdf_svg(name, name, &[(name, values)]),
        )?;
    }
    if !result.failures.is_empty() {
        let mut w = csv::Writer::from_path(dir.join("failures.csv"))?;
        w.write_record(["instance", "error"])?;
        for (name, e) in &result.failures {
            w.write_record([name, e])?;
        }
        w.flush()?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_arithmetic() {
        let spec = BenchSpec::new(vec![20, 21, 22], density_grid(1.25, 1.75, 5), 7);
        let list = instances(&spec);
        assert_eq!(list.len(), 15);
        assert_eq!(list[0].name, "n20_d1.250_r0");
        assert_eq!(list[4].name, "n20_d1.750_r0");
        let mut seeds: Vec<u64> = list.iter().map(|i| i.seed).collect();
        seeds.sort_unstable();
        seeds.dedup();
        assert_eq!(seeds.len(), 15);
    }

    #[test]
    fn sparse_cells_still_get_a_graph() {
        let spec = BenchSpec::new(vec![60], vec![1.25], 5);
        for inst in instances(&spec) {
            let g = instance_graph(&inst).unwrap();
            assert!(g.is_connected());
            assert_eq!(g.edge_count(), 75);
        }
    }

    #[test]
    fn density_endpoints() {
        assert_eq!(density_grid(1.0, 2.0, 3), vec![1.0, 1.5, 2.0]);
        assert_eq!(density_grid(1.5, 2.0, 1), vec![1.5]);
        assert!(density_grid(1.0, 2.0, 0).is_empty());
    }

    #[test]
    fn small_grid_runs_in_order() {
        let mut spec = BenchSpec::new(vec![8, 9], vec![1.25, 1.5], 3);
        spec.jobs = 2;
        spec.omit_timing = true;
        let r = run_bench(&spec).unwrap();
        assert!(r.failures.is_empty(), "{:?}", r.failures);
        let names: Vec<&str> = r.internals.iter().map(|r| r.instance.as_str()).collect();
        assert_eq!(
            names,
            [
                "n8_d1.250_r0",
                "n8_d1.500_r0",
                "n9_d1.250_r0",
                "n9_d1.500_r0"
            ]
        );
        for row in &r.internals {
            assert!(row.dummies_as_bends <= row.dummies);
            assert_eq!(row.seconds, 0.0);
        }
        let mut buf = Vec::new();
        write_internals_csv(&r.internals, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(
            "instance,cycles_added,dummies,dummies_as_bends,sat_invocations,seconds\n"
        ));
    }
}
