//! The shape search loop.
//!
//! Starting from a cycle basis, ask the solver for a labeling that makes
//! every known cycle complete. An unsatisfiable formula means the graph
//! needs another bend point: the edge the refutation leans on most is
//! subdivided and the cycles through it are lengthened. A labeling whose
//! order graphs still contain a cycle yields one incomplete cycle per cyclic
//! order graph, and these join the set for the next round.

use std::fmt;
use std::time::{Duration, Instant};

use orthodraw_sat::{ClauseId, Lit, Outcome, Refutation, Solver, SolverConfig};
use serde::Serialize;

use crate::drawability::{
    extract_incomplete_cycle, test_drawable, witnesses, Drawability, TopologicalOrders,
};
use crate::encode::{decode_model, encode, select_split_edge, var_of, ClauseOrigin, ShapeFormula};
use crate::error::{Error, Result};
use crate::graph::{cycle_basis, Cycle, CycleSet, EdgeId, Graph, SubdivisionRecord};
use crate::layout::{draw, Drawing, DummyReport, ExpansionPlan};
use crate::metrics::{compute_metrics, MetricsReport};
use crate::shape::{Direction, Shape};

pub use crate::graph::rewrite_cycles;

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub solver: SolverConfig,
    /// Defaults to ten per input edge.
    pub max_subdivisions: Option<usize>,
    /// Defaults to fifty per input edge.
    pub max_cycle_additions: Option<usize>,
    /// Hands the solver two extra unit clauses that fix the rotation and
    /// reflection of the labeling. They never change satisfiability and are
    /// left out of the recorded formula and of the split choice.
    pub break_symmetry: bool,
    /// Wall-clock budget for the whole search. `None` means no limit.
    pub time_limit: Option<Duration>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            solver: SolverConfig::default(),
            max_subdivisions: None,
            max_cycle_additions: None,
            break_symmetry: true,
            time_limit: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LogEvent {
    Sat,
    Split { edge: u32 },
    AddCycle { len: usize },
}

impl fmt::Display for LogEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogEvent::Sat => write!(f, "SAT"),
            LogEvent::Split { edge } => write!(f, "UNSAT split e={edge}"),
            LogEvent::AddCycle { len } => write!(f, "ADD_CYCLE len={len}"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    pub cycles_added: usize,
    pub dummies_added: usize,
    pub sat_invocations: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct PhaseTimes {
    pub encode: Duration,
    pub solve: Duration,
    pub drawability: Duration,
    pub total: Duration,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub graph: Graph,
    pub shape: Shape,
    pub cycles: CycleSet,
    /// Cycles added after failed drawability tests, in order.
    pub added: Vec<Cycle>,
    pub counters: Counters,
    /// `(variables, clauses)` handed to each solver call.
    pub formula_sizes: Vec<(usize, usize)>,
    pub log: Vec<LogEvent>,
    pub subdivisions: Vec<SubdivisionRecord>,
    pub times: PhaseTimes,
    pub orders: TopologicalOrders,
}

/// Every clause of the formula is invariant under turning all labels by a
/// quarter turn and under swapping `U` with `D`. So edge 0 may be fixed to
/// `R`, and an edge next to it may be kept off `D`.
fn symmetry_units(g: &Graph) -> Vec<Lit> {
    let mut units = Vec::new();
    if g.edge_count() == 0 {
        return units;
    }
    let first = EdgeId(0);
    units.push(var_of(first, Direction::R).positive());
    let (a, b) = g.endpoints(first);
    let second = g
        .neighbors(a)
        .iter()
        .chain(g.neighbors(b))
        .map(|&(_, e)| e)
        .find(|&e| e != first)
        .or_else(|| (g.edge_count() > 1).then_some(EdgeId(1)));
    if let Some(e) = second {
        units.push(var_of(e, Direction::D).negative());
    }
    units
}

/// Refutation counts without the symmetry clauses. A pinned edge soaks up
/// counts through propagation, so it is only blamed when nothing else is.
fn without_units(mut r: Refutation, ids: &[(ClauseId, Lit)]) -> Refutation {
    for &(id, lit) in ids {
        if r.core.binary_search(&id).is_ok() {
            r.var_counts[lit.var().index()] -= 1;
        }
    }
    let edge_of = |lit: &Lit| lit.var().index() / 4;
    let pinned = |v: usize| ids.iter().any(|(_, l)| edge_of(l) == v / 4);
    let others = r
        .var_counts
        .iter()
        .enumerate()
        .any(|(v, &c)| c > 0 && !pinned(v));
    if others {
        for (v, c) in r.var_counts.iter_mut().enumerate() {
            if pinned(v) {
                *c = 0;
            }
        }
    }
    r
}

/// Keeps only the counts of edges on cycles whose completeness clauses are
/// in the refutation, when any of them is counted at all. Subdividing any
/// other edge leaves those clauses, and so the conflict, as they were.
fn on_core_cycles(
    mut r: Refutation,
    formula: &ShapeFormula,
    cycles: &[Cycle],
    units: &[(ClauseId, Lit)],
) -> Refutation {
    let base = units.first().map_or(usize::MAX, |u| u.0);
    let mut keep = vec![false; formula.edge_count()];
    for &id in &r.core {
        let fid = match id {
            id if id < base => id,
            id if id < base + units.len() => continue,
            id => id - units.len(),
        };
        if let Some(ClauseOrigin::CycleComplete { cycle, .. }) = formula.origins().get(fid) {
            for e in cycles[*cycle].edges() {
                keep[e.index()] = true;
            }
        }
    }
    let counted = |v: usize| r.var_counts[v] > 0;
    if (0..r.var_counts.len()).any(|v| counted(v) && keep[v / 4]) {
        for (v, c) in r.var_counts.iter_mut().enumerate() {
            if !keep[v / 4] {
                *c = 0;
            }
        }
    }
    r
}

pub fn run_sm(g: &Graph, cfg: &PipelineConfig) -> Result<RunReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let start = Instant::now();
    let m = g.edge_count();
    let max_splits = cfg.max_subdivisions.unwrap_or(10 * m);
    let max_added = cfg.max_cycle_additions.unwrap_or(50 * m);
    let deadline = cfg.time_limit.map(|d| start + d);

    let mut graph = g.clone();
    let mut cycles = cycle_basis(&graph)?;
    let mut added = Vec::new();
    let mut counters = Counters::default();
    let mut sizes = Vec::new();
    let mut log = Vec::new();
    let mut subdivisions = Vec::new();
    let mut times = PhaseTimes::default();

    let cap = |graph: &Graph, cycles: &CycleSet, counters: &Counters| Error::IterationCap {
        subdivisions: counters.dummies_added,
        cycles_added: counters.cycles_added,
        vertices: graph.vertex_count(),
        cycles: cycles.len(),
    };

    'encode: loop {
        let t = Instant::now();
        let mut formula = encode(&graph, &cycles)?;
        let mut solver = Solver::from_cnf(formula.cnf(), cfg.solver.clone())?;
        let mut units = Vec::new();
        if cfg.break_symmetry {
            for lit in symmetry_units(&graph) {
                units.push((solver.add_clause(&[lit])?, lit));
            }
        }
        times.encode += t.elapsed();
        loop {
            sizes.push((formula.num_vars(), formula.num_clauses()));
            counters.sat_invocations += 1;
            let t = Instant::now();
            let expired = deadline.is_some_and(|d| t >= d);
            let outcome = if expired {
                None
            } else {
                solver.solve_until(deadline)
            };
            times.solve += t.elapsed();
            let Some(outcome) = outcome else {
                return Err(Error::TimeLimit {
                    seconds: start.elapsed().as_secs_f64(),
                    subdivisions: counters.dummies_added,
                    cycles_added: counters.cycles_added,
                });
            };
            match outcome {
                Outcome::Unsat(r) => {
                    if counters.dummies_added >= max_splits {
                        return Err(cap(&graph, &cycles, &counters));
                    }
                    let r = on_core_cycles(without_units(r, &units), &formula, &cycles, &units);
                    let e = select_split_edge(&formula, &r)?;
                    log.push(LogEvent::Split { edge: e.0 });
                    let rec = graph.subdivide_in_place(e)?;
                    cycles = rewrite_cycles(&cycles, &graph, &rec);
                    added = rewrite_cycles(&added, &graph, &rec);
                    subdivisions.push(rec);
                    counters.dummies_added += 1;
                    continue 'encode;
                }
                Outcome::Sat(model) => {
                    log.push(LogEvent::Sat);
                    let shape = decode_model(&formula, &model)?;
                    let t = Instant::now();
                    let verdict = test_drawable(&graph, &shape)?;
                    times.drawability += t.elapsed();
                    match verdict {
                        Drawability::Drawable(orders) => {
                            times.total = start.elapsed();
                            return Ok(RunReport {
                                graph,
                                shape,
                                cycles,
                                added,
                                counters,
                                formula_sizes: sizes,
                                log,
                                subdivisions,
                                times,
                                orders: *orders,
                            });
                        }
                        Drawability::NotDrawable(_) => {
                            if counters.cycles_added >= max_added {
                                return Err(cap(&graph, &cycles, &counters));
                            }
                            // one cycle from each cyclic order graph
                            for w in witnesses(&graph, &shape)? {
                                let c = extract_incomplete_cycle(&graph, &shape, &w)?;
                                if cycles.contains(&c) {
                                    continue;
                                }
                                log.push(LogEvent::AddCycle { len: c.len() });
                                let t = Instant::now();
                                for clause in formula.add_cycle(&graph, &c)? {
                                    solver.add_clause(&clause)?;
                                }
                                times.encode += t.elapsed();
                                cycles.push(c.clone());
                                added.push(c);
                                counters.cycles_added += 1;
                            }
                        }
                    }
                }
            }
        }
    }
}

/// A finished run together with its drawing.
#[derive(Debug, Clone)]
pub struct Rendered {
    pub report: RunReport,
    pub drawing: Drawing,
    pub plan: ExpansionPlan,
    pub dummies: DummyReport,
    pub metrics: MetricsReport,
}

/// Shape search, coordinates and metrics in one call. The metrics time is
/// the wall time of the whole call.
pub fn run_and_draw(g: &Graph, cfg: &PipelineConfig) -> Result<Rendered> {
    let start = Instant::now();
    let report = run_sm(g, cfg)?;
    let (drawing, plan) = draw(&report.graph, &report.shape)?;
    let dummies = drawing.straighten_report(&report.graph);
    let metrics = compute_metrics(&drawing, start.elapsed().as_secs_f64());
    Ok(Rendered {
        report,
        drawing,
        plan,
        dummies,
        metrics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawability::is_cycle_complete;
    use crate::fixtures::{complete_graph, cycle_graph, path_graph};
    use crate::graph::all_simple_cycles;

    #[test]
    fn square_needs_one_call() {
        let r = run_sm(&cycle_graph(4), &PipelineConfig::default()).unwrap();
        assert_eq!(
            r.counters,
            Counters {
                cycles_added: 0,
                dummies_added: 0,
                sat_invocations: 1
            }
        );
        assert_eq!(r.log, vec![LogEvent::Sat]);
    }

    #[test]
    fn tree_is_immediate() {
        let r = run_sm(&path_graph(5), &PipelineConfig::default()).unwrap();
        assert!(r.cycles.is_empty());
        assert_eq!(r.counters.sat_invocations, 1);
    }

    #[test]
    fn triangle_gets_a_dummy() {
        let r = run_sm(&cycle_graph(3), &PipelineConfig::default()).unwrap();
        assert_eq!(r.counters.dummies_added, 1);
        assert_eq!(r.graph.vertex_count(), 4);
        assert_eq!(
            r.log.first(),
            Some(&LogEvent::Split {
                edge: r.subdivisions[0].split.0
            })
        );
    }

    #[test]
    fn k4_every_cycle_complete() {
        let g = complete_graph(4);
        let r = run_sm(&g, &PipelineConfig::default()).unwrap();
        assert_eq!(r.counters.dummies_added, r.graph.vertex_count() - 4);
        for c in all_simple_cycles(&r.graph) {
            assert!(is_cycle_complete(&r.graph, &r.shape, &c)
                .unwrap()
                .is_complete());
        }
        let events = r.log.iter().filter(|e| **e == LogEvent::Sat).count();
        assert_eq!(events, r.counters.cycles_added + 1);
    }

    #[test]
    fn disconnected_is_refused() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            run_sm(&g, &PipelineConfig::default()),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn cap_is_reported() {
        let cfg = PipelineConfig {
            max_subdivisions: Some(0),
            ..Default::default()
        };
        assert!(matches!(
            run_sm(&cycle_graph(3), &cfg),
            Err(Error::IterationCap { .. })
        ));
    }

    #[test]
    fn time_limit_is_reported() {
        let cfg = PipelineConfig {
            time_limit: Some(Duration::ZERO),
            ..Default::default()
        };
        assert!(matches!(
            run_sm(&complete_graph(4), &cfg),
            Err(Error::TimeLimit { .. })
        ));
    }

    #[test]
    fn log_lines() {
        assert_eq!(LogEvent::Split { edge: 7 }.to_string(), "UNSAT split e=7");
        assert_eq!(LogEvent::AddCycle { len: 5 }.to_string(), "ADD_CYCLE len=5");
    }
}
