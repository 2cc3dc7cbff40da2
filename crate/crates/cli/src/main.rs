//! `orthodraw` command line.
//!
//! Exit codes: 0 success, 2 unreadable or malformed input (and usage
//! errors), 3 iteration cap or time limit reached, 1 anything else. Every flag can also be
//! set through an `ORTHODRAW_`-prefixed environment variable, for example
//! `ORTHODRAW_SEED` or `ORTHODRAW_MAX_SUBDIVISIONS`.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use orthodraw::bench::{density_grid, run_bench, write_bench, BenchSpec};
use orthodraw::fixtures;
use orthodraw::generate::generate_random_deg4;
use orthodraw::graph::Graph;
use orthodraw::io::{
    drawing_json, drawing_svg, parse_edge_list, parse_gml, read_metrics_csv, scatter_svg,
    write_edge_list, write_metrics_csv, SvgOptions,
};
use orthodraw::metrics::{
    batch_compare, compute_metrics, normalize_external, ExternalDrawing, GapThresholds,
    MetricsReport,
};
use orthodraw::pipeline::{run_and_draw, PipelineConfig};
use orthodraw::shape::Shape;
use orthodraw::Error;

#[derive(Parser, Debug)]
#[command(
    name = "orthodraw",
    version,
    about = "Orthogonal graph drawings with few bends"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw a graph given as an edge list or GML file.
    Draw(DrawArgs),
    /// Write a random connected graph of maximum degree 4 as an edge list.
    Gen(GenArgs),
    /// Run a grid of random instances and write metrics and internals.
    Bench(BenchArgs),
    /// Metrics of existing drawings, or a comparison of two metrics tables.
    Metrics(MetricsArgs),
    /// Write the built-in example graphs and shapes.
    Fixtures(FixturesArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Svg,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Subdivisions allowed before giving up [default: 10 per edge].
    #[arg(long, env = "ORTHODRAW_MAX_SUBDIVISIONS")]
    max_subdivisions: Option<usize>,
    /// Added cycles allowed before giving up [default: 50 per edge].
    #[arg(long, env = "ORTHODRAW_MAX_CYCLE_ADDITIONS")]
    max_cycle_additions: Option<usize>,
    /// Perturbs the solver's initial variable order.
    #[arg(long, env = "ORTHODRAW_SOLVER_SEED", default_value_t = 0)]
    solver_seed: u64,
    /// Conflicts per restart unit.
    #[arg(long, env = "ORTHODRAW_RESTART_BASE", default_value_t = 100)]
    restart_base: u64,
    /// Leave the labeling's rotation and reflection free.
    #[arg(long, env = "ORTHODRAW_NO_SYMMETRY_BREAKING")]
    no_symmetry_breaking: bool,
    /// Give up on a graph after this many seconds.
    #[arg(long, env = "ORTHODRAW_TIME_LIMIT")]
    time_limit: Option<f64>,
}

impl SolveArgs {
    fn config(&self) -> PipelineConfig {
        let mut cfg = PipelineConfig {
            max_subdivisions: self.max_subdivisions,
            max_cycle_additions: self.max_cycle_additions,
            break_symmetry: !self.no_symmetry_breaking,
            time_limit: self.time_limit.map(Duration::from_secs_f64),
            ..Default::default()
        };
        cfg.solver.seed = self.solver_seed;
        cfg.solver.restart_base = self.restart_base;
        cfg
    }
}

#[derive(Args, Debug)]
struct DrawArgs {
    /// Edge list (`n m` then `tail head` lines) or a `.gml` file.
    input: PathBuf,
    /// Directory for drawing.svg, drawing.json, metrics.json and run.log.
    /// Without it one format goes to stdout.
    #[arg(long, env = "ORTHODRAW_OUT")]
    out: Option<PathBuf>,
    #[arg(long, env = "ORTHODRAW_FORMAT", value_enum, default_value_t = Format::Svg)]
    format: Format,
    /// Pixels per grid unit in SVG output.
    #[arg(long, env = "ORTHODRAW_UNIT", default_value_t = 40.0)]
    unit: f64,
    /// Print the run log to stderr.
    #[arg(long)]
    log: bool,
    #[command(flatten)]
    solve: SolveArgs,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, env = "ORTHODRAW_N")]
    n: usize,
    /// Edges per vertex, between 1 and 2.
    #[arg(long, env = "ORTHODRAW_DENSITY")]
    density: f64,
    #[arg(long, env = "ORTHODRAW_SEED")]
    seed: u64,
    /// File to write; stdout when absent.
    #[arg(long, env = "ORTHODRAW_OUT")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Vertex counts, `20..60` (inclusive) or a single value.
    #[arg(long, env = "ORTHODRAW_N", value_parser = parse_usize_range)]
    n: (usize, usize),
    /// Density range `lo..hi`, or a single value.
    #[arg(long, env = "ORTHODRAW_DENSITY", value_parser = parse_f64_range)]
    density: (f64, f64),
    /// Evenly spaced densities taken from the range.
    #[arg(long, env = "ORTHODRAW_DENSITY_STEPS", default_value_t = 5)]
    density_steps: usize,
    /// Instances per (n, density) cell.
    #[arg(long, env = "ORTHODRAW_REPEATS", default_value_t = 1)]
    repeats: usize,
    #[arg(long, env = "ORTHODRAW_SEED")]
    seed: u64,
    #[arg(long, env = "ORTHODRAW_OUT")]
    out: PathBuf,
    /// Worker threads. Times are only comparable with one.
    #[arg(long, env = "ORTHODRAW_JOBS", default_value_t = 1)]
    jobs: usize,
    /// Write zero for all times so reruns are byte-identical.
    #[arg(long, env = "ORTHODRAW_OMIT_TIMING")]
    omit_timing: bool,
    #[command(flatten)]
    solve: SolveArgs,
}

#[derive(Args, Debug)]
struct MetricsArgs {
    /// Drawings as GML with coordinates, or JSON with `vertices` and `edges`.
    #[arg(required_unless_present = "compare")]
    inputs: Vec<PathBuf>,
    /// Compare two metrics CSV files instead: `--compare A.csv B.csv`.
    #[arg(long, num_args = 2, value_names = ["A", "B"], conflicts_with = "inputs")]
    compare: Option<Vec<PathBuf>>,
    /// Output file for metrics, or directory for a comparison.
    #[arg(long, env = "ORTHODRAW_OUT")]
    out: Option<PathBuf>,
    #[arg(long, env = "ORTHODRAW_FORMAT", value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Coordinate gaps up to this size stay within one grid line.
    #[arg(long, env = "ORTHODRAW_GAP_SMALL", default_value_t = 8.0)]
    gap_small: f64,
    /// Coordinate gaps from this size on start a new grid line.
    #[arg(long, env = "ORTHODRAW_GAP_COLUMN", default_value_t = 15.0)]
    gap_column: f64,
}

#[derive(Args, Debug)]
struct FixturesArgs {
    #[arg(long, env = "ORTHODRAW_OUT")]
    out: PathBuf,
}

fn parse_range<T: std::str::FromStr + PartialOrd + Copy>(s: &str) -> Result<(T, T), String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<T>()
            .map_err(|_| format!("bad number `{t}`"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok((lo, hi))
}

fn parse_usize_range(s: &str) -> Result<(usize, usize), String> {
    parse_range(s)
}

fn parse_f64_range(s: &str) -> Result<(f64, f64), String> {
    parse_range(s)
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).map_err(|e| {
        anyhow::Error::new(Error::Parse {
            line: 0,
            message: format!("cannot read {}: {e}", path.display()),
        })
    })
}

fn is_gml(path: &Path) -> bool {
    path.extension()
        .is_some_and(|x| x.eq_ignore_ascii_case("gml"))
}

fn load_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = read(path)?;
    let g = if is_gml(path) {
        parse_gml(&text)?.to_graph()?
    } else {
        parse_edge_list(&text)?
    };
    Ok(g)
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(std::io::stdout().write_all(text.as_bytes())?),
    }
}

fn metrics_csv(rows: &[(String, MetricsReport)]) -> anyhow::Result<String> {
    let mut buf = Vec::new();
    write_metrics_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf)?)
}

fn cmd_draw(a: &DrawArgs) -> anyhow::Result<()> {
    let g = load_graph(&a.input)?;
    let r = run_and_draw(&g, &a.solve.config())?;
    let log: String = r.report.log.iter().map(|e| format!("{e}\n")).collect();
    if a.log {
        eprint!("{log}");
    }
    let opt = SvgOptions {
        unit: a.unit,
        ..Default::default()
    };
    let svg = drawing_svg(&r.drawing, &r.plan, &opt);
    let name = a
        .input
        .file_stem()
        .map_or("graph".into(), |s| s.to_string_lossy().into_owned());
    match &a.out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            fs::write(dir.join("drawing.svg"), svg)?;
            fs::write(dir.join("drawing.json"), drawing_json(&r.drawing)?)?;
            fs::write(
                dir.join("metrics.json"),
                serde_json::to_string_pretty(&r.metrics)?,
            )?;
            fs::write(dir.join("run.log"), log)?;
        }
        None => match a.format {
            Format::Svg => emit(None, &svg)?,
            Format::Json => emit(None, &(drawing_json(&r.drawing)? + "\n"))?,
            Format::Csv => emit(None, &metrics_csv(&[(name, r.metrics)])?)?,
        },
    }
    Ok(())
}

fn cmd_gen(a: &GenArgs) -> anyhow::Result<()> {
    let g = generate_random_deg4(a.n, a.density, a.seed)?;
    emit(a.out.as_deref(), &write_edge_list(&g))
}

fn cmd_bench(a: &BenchArgs) -> anyhow::Result<()> {
    let ns: Vec<usize> = (a.n.0..=a.n.1).collect();
    let steps = if a.density.0 == a.density.1 {
        1
    } else {
        a.density_steps
    };
    let mut spec = BenchSpec::new(ns, density_grid(a.density.0, a.density.1, steps), a.seed);
    spec.repeats = a.repeats;
    spec.jobs = a.jobs;
    spec.omit_timing = a.omit_timing;
    spec.pipeline = a.solve.config();
    let result = run_bench(&spec)?;
    write_bench(&a.out, &result, a.omit_timing)
        .with_context(|| format!("writing results to {}", a.out.display()))?;
    eprintln!(
        "{} instances, {} finished, {} failed",
        result.internals.len() + result.failures.len(),
        result.internals.len(),
        result.failures.len()
    );
    Ok(())
}

fn load_external(path: &Path) -> anyhow::Result<ExternalDrawing> {
    let text = read(path)?;
    if is_gml(path) {
        Ok(parse_gml(&text)?.to_external()?)
    } else {
        serde_json::from_str(&text).map_err(|e| {
            anyhow::Error::new(Error::Parse {
                line: e.line(),
                message: e.to_string(),
            })
        })
    }
}

fn cmd_metrics(a: &MetricsArgs) -> anyhow::Result<()> {
    if let Some(pair) = &a.compare {
        let load = |p: &PathBuf| -> anyhow::Result<BTreeMap<String, MetricsReport>> {
            let file = fs::File::open(p).map_err(|e| {
                anyhow::Error::new(Error::Parse {
                    line: 0,
                    message: format!("cannot read {}: {e}", p.display()),
                })
            })?;
            Ok(read_metrics_csv(file)?.into_iter().collect())
        };
        let table = batch_compare(&load(&pair[0])?, &load(&pair[1])?)?;
        let json = serde_json::to_string_pretty(&table)? + "\n";
        match &a.out {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                fs::write(dir.join("comparison.json"), json)?;
                for m in &table.metrics {
                    let pts: Vec<(f64, f64)> = m.rows.iter().map(|r| (r.1, r.2)).collect();
                    let svg = scatter_svg(&m.metric, "A", "B", &pts, Some(&m.quadratic));
                    fs::write(dir.join(format!("scatter_{}.svg", m.metric)), svg)?;
                }
            }
            None => emit(None, &json)?,
        }
        return Ok(());
    }
    let th = GapThresholds {
        small: a.gap_small,
        column: a.gap_column,
    };
    let mut rows = Vec::new();
    for p in &a.inputs {
        let d = normalize_external(&load_external(p)?, th)?;
        let name = p
            .file_stem()
            .map_or(String::new(), |s| s.to_string_lossy().into_owned());
        rows.push((name, compute_metrics(&d, 0.0)));
    }
    let text = match a.format {
        Format::Json => {
            let map: BTreeMap<&str, &MetricsReport> =
                rows.iter().map(|(k, v)| (k.as_str(), v)).collect();
            serde_json::to_string_pretty(&map)? + "\n"
        }
        Format::Csv => metrics_csv(&rows)?,
        Format::Svg => bail!("metrics are written as csv or json"),
    };
    emit(a.out.as_deref(), &text)
}

fn shape_line(s: &Shape) -> String {
    s.labels().iter().map(|d| d.to_string()).collect::<String>() + "\n"
}

fn cmd_fixtures(a: &FixturesArgs) -> anyhow::Result<()> {
    fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    let mut shaped: Vec<(String, Graph, Option<Shape>)> = vec![
        ("triangle".into(), fixtures::cycle_graph(3), None),
        ("k4".into(), fixtures::complete_graph(4), None),
        ("k5".into(), fixtures::complete_graph(5), None),
        ("star6".into(), fixtures::star_graph(6), None),
    ];
    let (g, s) = fixtures::unit_square();
    shaped.push(("square".into(), g, Some(s)));
    let (g, s) = fixtures::crossed_columns();
    shaped.push(("crossed_columns".into(), g, Some(s)));
    for i in 1..=2 {
        let (g, s) = fixtures::adversarial_family(i);
        shaped.push((format!("adversarial_{i}"), g, Some(s)));
    }
    for (name, g, s) in shaped {
        fs::write(a.out.join(format!("{name}.edges")), write_edge_list(&g))?;
        if let Some(s) = s {
            fs::write(a.out.join(format!("{name}.shape")), shape_line(&s))?;
        }
    }
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::Json(_) | Error::Csv(_)) => 2,
        Some(Error::IterationCap { .. } | Error::TimeLimit { .. }) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Draw(a) => cmd_draw(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Metrics(a) => cmd_metrics(a),
        Command::Fixtures(a) => cmd_fixtures(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_usize_range("20..60"), Ok((20, 60)));
        assert_eq!(parse_usize_range("20..=22"), Ok((20, 22)));
        assert_eq!(parse_usize_range("7"), Ok((7, 7)));
        assert_eq!(parse_f64_range("1.25..1.75"), Ok((1.25, 1.75)));
        assert!(parse_usize_range("9..3").is_err());
        assert!(parse_usize_range("a..3").is_err());
    }

    #[test]
    fn exit_codes() {
        let parse = anyhow::Error::new(Error::Parse {
            line: 3,
            message: "x".into(),
        });
        assert_eq!(exit_code(&parse), 2);
        let cap = anyhow::Error::new(Error::IterationCap {
            subdivisions: 1,
            cycles_added: 0,
            vertices: 4,
            cycles: 1,
        });
        assert_eq!(exit_code(&cap), 3);
        let late = anyhow::Error::new(Error::TimeLimit {
            seconds: 1.0,
            subdivisions: 0,
            cycles_added: 0,
        });
        assert_eq!(exit_code(&late), 3);
        assert_eq!(exit_code(&anyhow::anyhow!("other")), 1);
    }
}
