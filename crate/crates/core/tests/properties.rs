use std::collections::HashSet;

use orthodraw::drawability::{
    build_auxiliary, extract_incomplete_cycle, is_cycle_complete, test_drawable, Axis, Drawability,
};
use orthodraw::encode::{decode_model, encode, expected_size};
use orthodraw::generate::generate_random_deg4;
use orthodraw::graph::{
    all_simple_cycles, biconnected_components, cycle_basis, Cycle, EdgeId, Graph, VertexId,
};
use orthodraw::io::{drawing_svg, parse_edge_list, write_edge_list, SvgOptions};
use orthodraw::layout::{Drawing, PointKind};
use orthodraw::metrics::{
    compute_metrics, count_crossings, normalize_external, std_dev, ExternalDrawing, ExternalEdge,
    ExternalVertex, GapThresholds,
};
use orthodraw::pipeline::{run_and_draw, run_sm, PipelineConfig};
use orthodraw::shape::{Direction, Shape};
use orthodraw_sat::{solve, Outcome, SolverConfig};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ALL: [Direction; 4] = [Direction::L, Direction::R, Direction::D, Direction::U];

fn graph(n: usize, density: f64, seed: u64) -> Option<Graph> {
    generate_random_deg4(n, density, seed).ok()
}

/// A valid shape built edge by edge, or `None` when the greedy choice gets
/// stuck every time.
fn random_shape(g: &Graph, seed: u64) -> Option<Shape> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'retry: for _ in 0..50 {
        let mut used = vec![0u8; g.vertex_count()];
        let mut labels = Vec::with_capacity(g.edge_count());
        for (_, a, b) in g.edges() {
            let mut options = ALL;
            options.shuffle(&mut rng);
            let pick = options.into_iter().find(|d| {
                used[a.index()] & d.bit() == 0 && used[b.index()] & d.opposite().bit() == 0
            });
            let Some(d) = pick else { continue 'retry };
            used[a.index()] |= d.bit();
            used[b.index()] |= d.opposite().bit();
            labels.push(d);
        }
        return Some(Shape::new(labels));
    }
    None
}

fn complete(g: &Graph, s: &Shape, c: &Cycle) -> bool {
    is_cycle_complete(g, s, c).unwrap().is_complete()
}

fn satisfiable(g: &Graph, cycles: &[Cycle]) -> bool {
    let f = encode(g, cycles).unwrap();
    solve(f.cnf(), &SolverConfig::default()).unwrap().is_sat()
}

fn brute_crossings(d: &Drawing) -> u64 {
    let mut segs = Vec::new();
    for r in 0..d.routes.len() {
        for w in d.corners(r).windows(2) {
            segs.push((r, w[0], w[1]));
        }
    }
    let mut count = 0;
    for (i, &(ra, a0, a1)) in segs.iter().enumerate() {
        for &(rb, b0, b1) in &segs[i + 1..] {
            let (h, v) = match (a0.y == a1.y, b0.y == b1.y) {
                _ if ra == rb => continue,
                (true, false) => ((a0, a1), (b0, b1)),
                (false, true) => ((b0, b1), (a0, a1)),
                _ => continue,
            };
            let (x, y) = (v.0.x, h.0.y);
            if x > h.0.x.min(h.1.x)
                && x < h.0.x.max(h.1.x)
                && y > v.0.y.min(v.1.y)
                && y < v.0.y.max(v.1.y)
            {
                count += 1;
            }
        }
    }
    count
}

fn to_external(d: &Drawing) -> ExternalDrawing {
    let id = |p: usize| match d.kinds[p] {
        PointKind::Vertex { vertex } => vertex.0,
        _ => unreachable!("routes end at vertices"),
    };
    ExternalDrawing {
        vertices: d
            .kinds
            .iter()
            .enumerate()
            .filter_map(|(i, k)| match k {
                PointKind::Vertex { vertex } => Some(ExternalVertex {
                    id: vertex.0,
                    x: d.points[i].x as f64,
                    y: d.points[i].y as f64,
                }),
                _ => None,
            })
            .collect(),
        edges: d
            .routes
            .iter()
            .map(|r| ExternalEdge {
                source: id(r.points[0]),
                target: id(*r.points.last().unwrap()),
                bends: r.points[1..r.points.len() - 1]
                    .iter()
                    .map(|&p| (d.points[p].x as f64, d.points[p].y as f64))
                    .collect(),
            })
            .collect(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn basis_size_and_coverage(n in 4usize..30, d in 1.0f64..2.0, seed: u64) {
        let Some(g) = graph(n, d, seed) else { return Ok(()) };
        let basis = cycle_basis(&g).unwrap();
        prop_assert_eq!(basis.len(), g.edge_count() - g.vertex_count() + 1);
        let covered: HashSet<EdgeId> = basis.iter().flat_map(|c| c.edges().to_vec()).collect();
        for comp in biconnected_components(&g).unwrap() {
            for e in &comp.edges {
                prop_assert_eq!(covered.contains(e), !comp.is_trivial(), "edge {}", e);
            }
        }
        for c in &basis {
            c.validate(&g).unwrap();
        }
    }

    #[test]
    fn generator_output_is_simple_and_repeatable(n in 2usize..40, d in 1.0f64..2.0, seed: u64) {
        let Some(g) = graph(n, d, seed) else { return Ok(()) };
        prop_assert!(g.max_degree() <= 4);
        prop_assert!(g.is_connected());
        let mut pairs = HashSet::new();
        for (_, a, b) in g.edges() {
            prop_assert_ne!(a, b);
            prop_assert!(pairs.insert((a.min(b), a.max(b))));
        }
        prop_assert_eq!(write_edge_list(&g), write_edge_list(&graph(n, d, seed).unwrap()));
    }

    #[test]
    fn edge_list_round_trip(n in 2usize..30, d in 1.0f64..2.0, seed: u64) {
        let Some(g) = graph(n, d, seed) else { return Ok(()) };
        let back = parse_edge_list(&write_edge_list(&g)).unwrap();
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn formula_sizes_follow_the_closed_form(n in 3usize..25, d in 1.0f64..2.0, seed: u64) {
        let Some(g) = graph(n, d, seed) else { return Ok(()) };
        let basis = cycle_basis(&g).unwrap();
        let f = encode(&g, &basis).unwrap();
        prop_assert_eq!((f.num_vars(), f.num_clauses()), expected_size(&g, basis.len()));
    }

    #[test]
    fn decoded_models_are_shapes_completing_every_cycle(n in 3usize..12, d in 1.0f64..1.6, seed: u64) {
        let Some(g) = graph(n, d, seed) else { return Ok(()) };
        let basis = cycle_basis(&g).unwrap();
        let f = encode(&g, &basis).unwrap();
        if let Outcome::Sat(m) = solve(f.cnf(), &SolverConfig::default()).unwrap() {
            let s = decode_model(&f, &m).unwrap();
            s.validate(&g).unwrap();
            for c in &basis {
                prop_assert!(complete(&g, &s, c));
            }
        }
    }

    #[test]
    fn more_cycles_never_restore_satisfiability(n in 3usize..7, d in 1.0f64..1.8, seed: u64, mask: u64, extra: u64) {
        let Some(g) = graph(n, d, seed) else { return Ok(()) };
        let all = all_simple_cycles(&g);
        let small: Vec<Cycle> = all.iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, c)| c.clone()).collect();
        let large: Vec<Cycle> = all.iter().enumerate().filter(|(i, _)| (mask | extra) >> (i % 64) & 1 == 1).map(|(_, c)| c.clone()).collect();
        prop_assert!(satisfiable(&g, &small) || !satisfiable(&g, &large));
    }

    #[test]
    fn witnesses_are_simple_incomplete_cycles(n in 3usize..12, d in 1.0f64..1.8, seed: u64) {
        let Some(g) = graph(n, d, seed) else { return Ok(()) };
        let Some(s) = random_shape(&g, seed) else { return Ok(()) };
        if let Drawability::NotDrawable(w) = test_drawable(&g, &s).unwrap() {
            let c = extract_incomplete_cycle(&g, &s, &w).unwrap();
            c.validate(&g).unwrap();
            prop_assert!(!complete(&g, &s, &c));
        }
    }

    #[test]
    fn aligned_classes_partition_the_vertices(n in 3usize..20, d in 1.0f64..1.8, seed: u64) {
        let Some(g) = graph(n, d, seed) else { return Ok(()) };
        let Some(s) = random_shape(&g, seed) else { return Ok(()) };
        for axis in [Axis::X, Axis::Y] {
            let aux = build_auxiliary(&g, &s, axis).unwrap();
            let mut seen = vec![false; g.vertex_count()];
            for (i, node) in aux.nodes.iter().enumerate() {
                for v in node {
                    prop_assert!(!std::mem::replace(&mut seen[v.index()], true));
                    prop_assert_eq!(aux.node_of[v.index()], i);
                }
            }
            prop_assert!(seen.iter().all(|&b| b));
            // an edge along the class keeps its ends together
            for (e, a, b) in g.edges() {
                let along = match axis {
                    Axis::X => !s.label(e).is_horizontal(),
                    Axis::Y => s.label(e).is_horizontal(),
                };
                if along {
                    prop_assert_eq!(aux.node_of[a.index()], aux.node_of[b.index()]);
                }
            }
            // and every class is connected through such edges
            for node in &aux.nodes {
                let mut reached = vec![node[0]];
                let mut i = 0;
                while i < reached.len() {
                    for &(w, e) in g.neighbors(reached[i]) {
                        let along = s.label(e).is_horizontal() == (axis == Axis::Y);
                        if along && !reached.contains(&w) {
                            reached.push(w);
                        }
                    }
                    i += 1;
                }
                prop_assert_eq!(reached.len(), node.len());
            }
        }
    }

    #[test]
    fn std_dev_vanishes_only_on_constant_input(v in prop::collection::vec(0u8..4, 1..12)) {
        let xs: Vec<f64> = v.iter().map(|&x| x as f64).collect();
        prop_assert_eq!(std_dev(&xs) == 0.0, v.iter().all(|&x| x == v[0]));
    }

    #[test]
    fn snapping_recovers_columns_and_is_idempotent(
        cells in prop::collection::btree_set((0i64..6, 0i64..6), 2..12),
        scale in 20i64..40,
        jitter in prop::collection::vec((-2i64..=2, -2i64..=2), 12),
    ) {
        let cells: Vec<(i64, i64)> = cells.into_iter().collect();
        // a single jittered line reads as a drawing already on the unit grid
        let distinct = |f: fn(&(i64, i64)) -> i64| cells.iter().map(f).collect::<HashSet<_>>().len();
        prop_assume!(distinct(|c| c.0) > 1 && distinct(|c| c.1) > 1);
        let raw = ExternalDrawing {
            vertices: cells
                .iter()
                .zip(&jitter)
                .enumerate()
                .map(|(i, (&(c, r), &(dx, dy)))| ExternalVertex {
                    id: i as u32,
                    x: (c * scale + dx) as f64,
                    y: (r * scale + dy) as f64,
                })
                .collect(),
            edges: Vec::new(),
        };
        let once = normalize_external(&raw, GapThresholds::default()).unwrap();
        let rank = |vals: Vec<i64>, v: i64| {
            let mut u = vals;
            u.sort_unstable();
            u.dedup();
            u.binary_search(&v).unwrap() as i64
        };
        for (i, &(c, r)) in cells.iter().enumerate() {
            let p = once.vertex_position(VertexId(i as u32)).unwrap();
            prop_assert_eq!(p.x, rank(cells.iter().map(|t| t.0).collect(), c));
            prop_assert_eq!(p.y, rank(cells.iter().map(|t| t.1).collect(), r));
        }
        let twice = normalize_external(&to_external(&once), GapThresholds::default()).unwrap();
        prop_assert_eq!(twice.points, once.points);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn pipeline_runs_are_sound_and_repeatable(n in 4usize..12, d in 1.0f64..1.75, seed: u64) {
        let Some(g) = graph(n, d, seed) else { return Ok(()) };
        let cfg = PipelineConfig::default();
        let r = run_sm(&g, &cfg).unwrap();
        prop_assert_eq!(r.counters.dummies_added, r.graph.vertex_count() - g.vertex_count());
        prop_assert_eq!(r.added.len(), r.counters.cycles_added);
        for c in &r.added {
            prop_assert!(complete(&r.graph, &r.shape, c));
        }
        let again = run_sm(&g, &cfg).unwrap();
        prop_assert_eq!(&again.log, &r.log);
        prop_assert_eq!(&again.shape, &r.shape);
        prop_assert_eq!(&again.formula_sizes, &r.formula_sizes);
    }

    #[test]
    fn drawings_meet_every_invariant(n in 4usize..12, d in 1.0f64..1.75, seed: u64) {
        let Some(g) = graph(n, d, seed) else { return Ok(()) };
        let out = run_and_draw(&g, &PipelineConfig::default()).unwrap();
        let dr = &out.drawing;
        prop_assert!(dr.violations().is_empty(), "{:?}", dr.violations());
        for v in 0..g.vertex_count() {
            prop_assert!(dr.vertex_position(VertexId(v as u32)).is_some());
        }

        // every order arc points left to right, or bottom to top
        let orders = &out.report.orders;
        for (aux, pick) in [(&orders.gx, 0), (&orders.gy, 1)] {
            let coord = |v: &VertexId| {
                dr.vertex_position(*v).map(|p| if pick == 0 { p.x } else { p.y })
            };
            for a in &aux.arcs {
                let hi = aux.nodes[a.from].iter().filter_map(coord).max();
                let lo = aux.nodes[a.to].iter().filter_map(coord).min();
                if let (Some(hi), Some(lo)) = (hi, lo) {
                    prop_assert!(hi < lo);
                }
            }
        }

        prop_assert_eq!(count_crossings(dr), brute_crossings(dr));
        let mut moved = dr.clone();
        moved.translate(7, -3);
        prop_assert_eq!(compute_metrics(&moved, 0.0), compute_metrics(dr, 0.0));

        let svg = drawing_svg(dr, &out.plan, &SvgOptions::default());
        prop_assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        prop_assert_eq!(svg.matches("<polyline").count(), dr.routes.len());
    }
}
