//! Random connected graphs of maximum degree 4.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64`, which produces the
//! same stream on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub const DRAWS_PER_EDGE: usize = 100;
pub const CONNECTIVITY_ATTEMPTS: usize = 50;

/// Number of edges for `n` vertices at the given density, `floor(n * d)`.
pub fn edge_target(n: usize, density: f64) -> usize {
    // the epsilon keeps 20 * 1.15 from landing on 22.999...
    (n as f64 * density + 1e-9).floor() as usize
}

/// Draws vertex pairs uniformly, dropping self-loops, repeats and pairs that
/// would push a degree past 4, until `floor(n * density)` edges exist. Each
/// edge is oriented as drawn. Disconnected results are thrown away and the
/// whole instance is drawn again.
pub fn generate_random_deg4(n: usize, density: f64, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    if !(1.0..=2.0).contains(&density) {
        return Err(Error::InvalidDensity(density));
    }
    let m = edge_target(n, density);
    let budget = DRAWS_PER_EDGE * m;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..CONNECTIVITY_ATTEMPTS {
        if let Some(g) = attempt(&mut rng, n, m, budget) {
            if g.is_connected() {
                return Ok(g);
            }
        }
    }
    Err(Error::GeneratorBudget {
        n,
        m,
        attempts: CONNECTIVITY_ATTEMPTS,
        draws_per_attempt: budget,
    })
}

fn attempt(rng: &mut ChaCha8Rng, n: usize, m: usize, budget: usize) -> Option<Graph> {
    let mut g = Graph::new(n);
    let mut draws = 0;
    while g.edge_count() < m {
        if draws == budget {
            return None;
        }
        draws += 1;
        let u = VertexId(rng.gen_range(0..n as u32));
        let v = VertexId(rng.gen_range(0..n as u32));
        if u == v || g.degree(u) >= 4 || g.degree(v) >= 4 || g.edge_between(u, v).is_some() {
            continue;
        }
        g.add_edge(u, v).expect("checked above");
    }
    Some(g)
}
