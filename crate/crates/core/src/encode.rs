//! CNF encoding of "every cycle in the set is complete" over edge labels.
//!
//! Variable `4e + k` (0-based) means edge `e` carries label
//! `Direction::ALL[k]` in its reference orientation, so DIMACS ids are
//! `4e + k + 1`.

use std::io::Write;

use orthodraw_sat::{write_dimacs, Cnf, Lit, Model, Refutation, Var};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Cycle, EdgeId, Graph, VertexId};
use crate::shape::{Direction, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClauseOrigin {
    ExactlyOne { edge: EdgeId },
    VertexDirections { vertex: VertexId },
    CycleComplete { cycle: usize, label: Direction },
}

#[derive(Debug, Clone)]
pub struct ShapeFormula {
    cnf: Cnf,
    edge_count: usize,
    cycle_count: usize,
    origins: Vec<ClauseOrigin>,
}

pub fn var_of(e: EdgeId, d: Direction) -> Var {
    Var(4 * e.0 + d.index() as u32)
}

/// Literal for "walking `e` away from `from` reads `d`".
pub fn leaving_lit(g: &Graph, e: EdgeId, from: VertexId, d: Direction) -> Lit {
    let d = if g.endpoints(e).0 == from {
        d
    } else {
        d.opposite()
    };
    var_of(e, d).positive()
}

pub fn decode_var(v: Var) -> (EdgeId, Direction) {
    (EdgeId(v.0 / 4), Direction::ALL[(v.0 % 4) as usize])
}

/// The four completeness clauses of `c`, in label order L, R, D, U.
pub fn cycle_clauses(g: &Graph, c: &Cycle) -> Result<[Vec<Lit>; 4]> {
    c.validate(g)?;
    Ok(Direction::ALL.map(|d| {
        c.steps()
            .map(|(from, _, e)| leaving_lit(g, e, from, d))
            .collect()
    }))
}

/// Clauses contributed by a vertex of the given degree.
pub fn vertex_clause_count(degree: usize) -> usize {
    match degree {
        0 | 1 => 0,
        2 | 3 => 4 * degree * (degree - 1) / 2,
        _ => 4,
    }
}

/// Closed-form size of `encode(g, cycles)` as `(variables, clauses)`.
pub fn expected_size(g: &Graph, cycles: usize) -> (usize, usize) {
    let vertex: usize = g.vertices().map(|v| vertex_clause_count(g.degree(v))).sum();
    (4 * g.edge_count(), 7 * g.edge_count() + vertex + 4 * cycles)
}

pub fn encode(g: &Graph, cycles: &[Cycle]) -> Result<ShapeFormula> {
    let mut f = ShapeFormula {
        cnf: Cnf::new(4 * g.edge_count()),
        edge_count: g.edge_count(),
        cycle_count: 0,
        origins: Vec::new(),
    };
    use Direction::{D, L, R, U};
    for (e, _, _) in g.edges() {
        let p = |d| var_of(e, d).positive();
        let n = |d| var_of(e, d).negative();
        let origin = ClauseOrigin::ExactlyOne { edge: e };
        f.push(vec![p(L), p(R), p(D), p(U)], origin);
        for (a, b) in [(L, R), (D, L), (D, R), (U, L), (U, R), (U, D)] {
            f.push(vec![n(a), n(b)], origin);
        }
    }
    for v in g.vertices() {
        let incident = g.neighbors(v);
        let origin = ClauseOrigin::VertexDirections { vertex: v };
        match incident.len() {
            0 | 1 => {}
            2 | 3 => {
                for i in 0..incident.len() {
                    for j in i + 1..incident.len() {
                        let (ei, ej) = (incident[i].1, incident[j].1);
                        for d in Direction::ALL {
                            f.push(
                                vec![!leaving_lit(g, ei, v, d), !leaving_lit(g, ej, v, d)],
                                origin,
                            );
                        }
                    }
                }
            }
            _ => {
                // every direction used at least once; at degree 4 that forces
                // a bijection, above it edges may share a side
                for d in Direction::ALL {
                    let clause = incident
                        .iter()
                        .map(|&(_, e)| leaving_lit(g, e, v, d))
                        .collect();
                    f.push(clause, origin);
                }
            }
        }
    }
    for c in cycles {
        f.add_cycle(g, c)?;
    }
    Ok(f)
}

impl ShapeFormula {
    fn push(&mut self, clause: Vec<Lit>, origin: ClauseOrigin) {
        self.cnf.add_clause(clause);
        self.origins.push(origin);
    }

    /// Appends the completeness clauses of `c` and returns them so a live
    /// solver can be fed the same clauses in the same order.
    pub fn add_cycle(&mut self, g: &Graph, c: &Cycle) -> Result<Vec<Vec<Lit>>> {
        let clauses = cycle_clauses(g, c)?;
        let index = self.cycle_count;
        self.cycle_count += 1;
        for (d, clause) in Direction::ALL.into_iter().zip(&clauses) {
            self.push(
                clause.clone(),
                ClauseOrigin::CycleComplete {
                    cycle: index,
                    label: d,
                },
            );
        }
        Ok(clauses.to_vec())
    }

    pub fn cnf(&self) -> &Cnf {
        &self.cnf
    }

    pub fn num_vars(&self) -> usize {
        self.cnf.num_vars()
    }

    pub fn num_clauses(&self) -> usize {
        self.cnf.num_clauses()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_count
    }

    pub fn origins(&self) -> &[ClauseOrigin] {
        &self.origins
    }

    /// Comment lines mapping DIMACS variables to `(edge, label)`.
    pub fn variable_map_comments(&self) -> Vec<String> {
        let mut out = vec![format!(
            "edges {} cycles {} vars {} clauses {}",
            self.edge_count,
            self.cycle_count,
            self.num_vars(),
            self.num_clauses()
        )];
        for e in 0..self.edge_count as u32 {
            let names: Vec<String> = Direction::ALL
                .iter()
                .map(|&d| format!("{}={}", var_of(EdgeId(e), d).to_dimacs(), d))
                .collect();
            out.push(format!("edge {e}: {}", names.join(" ")));
        }
        out
    }

    pub fn write_dimacs<W: Write>(&self, out: W) -> std::io::Result<()> {
        write_dimacs(&self.cnf, &self.variable_map_comments(), out)
    }

    /// Literals of the shape, one positive and three negative per edge.
    pub fn shape_assignment(&self, s: &Shape) -> Vec<bool> {
        let mut a = vec![false; self.num_vars()];
        for (e, &d) in s.labels().iter().enumerate() {
            a[var_of(EdgeId(e as u32), d).index()] = true;
        }
        a
    }
}

/// Reads the label of every edge off a model.
pub fn decode_model(f: &ShapeFormula, m: &Model) -> Result<Shape> {
    let mut labels = Vec::with_capacity(f.edge_count);
    for e in 0..f.edge_count as u32 {
        let e = EdgeId(e);
        let mut chosen = None;
        for d in Direction::ALL {
            if m.value(var_of(e, d)) {
                if chosen.is_some() {
                    return Err(Error::ModelViolation { edge: e });
                }
                chosen = Some(d);
            }
        }
        labels.push(chosen.ok_or(Error::ModelViolation { edge: e })?);
    }
    Ok(Shape::new(labels))
}

/// Edge whose four variables occur most often in the refutation, ties to
/// the smaller id.
pub fn select_split_edge(f: &ShapeFormula, r: &Refutation) -> Result<EdgeId> {
    let mut best: Option<(u64, EdgeId)> = None;
    for e in 0..f.edge_count as u32 {
        let e = EdgeId(e);
        let score: u64 = Direction::ALL
            .iter()
            .map(|&d| r.var_counts.get(var_of(e, d).index()).copied().unwrap_or(0) as u64)
            .sum();
        if score > 0 && best.is_none_or(|(b, _)| score > b) {
            best = Some((score, e));
        }
    }
    best.map(|(_, e)| e).ok_or(Error::EmptyRefutation)
}
