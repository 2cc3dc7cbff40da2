use crate::graph::{EdgeId, VertexId};
use crate::shape::Direction;
use orthodraw_sat::SatError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("graph must be connected")]
    Disconnected,
    #[error("vertex {0} does not exist")]
    UnknownVertex(VertexId),
    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(VertexId, VertexId),
    #[error("not a simple cycle of the graph: {0}")]
    NotACycle(String),
    #[error("shape has {labels} labels for {edges} edges")]
    ShapeSize { labels: usize, edges: usize },
    #[error("invalid shape at vertex {vertex}: {reason}")]
    InvalidShape { vertex: VertexId, reason: String },
    #[error("density {0} outside [1, 2]")]
    InvalidDensity(f64),
    #[error("need at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error(
        "no connected graph with {n} vertices and {m} edges after {attempts} attempts \
         of {draws_per_attempt} pair draws each"
    )]
    GeneratorBudget {
        n: usize,
        m: usize,
        attempts: usize,
        draws_per_attempt: usize,
    },
    #[error("model violates the exactly-one constraint of edge {edge}")]
    ModelViolation { edge: EdgeId },
    #[error("refutation mentions no edge variable")]
    EmptyRefutation,
    #[error("witness no longer matches the shape: {0}")]
    StaleWitness(String),
    #[error("auxiliary graph for {0:?} is cyclic")]
    CyclicOrder(crate::drawability::Axis),
    #[error(
        "iteration cap hit after {subdivisions} subdivisions and {cycles_added} added cycles \
         ({vertices} vertices, {cycles} cycles)"
    )]
    IterationCap {
        subdivisions: usize,
        cycles_added: usize,
        vertices: usize,
        cycles: usize,
    },
    #[error(
        "time limit hit after {seconds:.1} s, {subdivisions} subdivisions and {cycles_added} added cycles"
    )]
    TimeLimit {
        seconds: f64,
        subdivisions: usize,
        cycles_added: usize,
    },
    #[error("expansion produced an undrawable shape at vertex {vertex} side {side:?}")]
    Expansion { vertex: VertexId, side: Direction },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("ambiguous gap {gap} on the {axis} axis (between thresholds {small} and {column})")]
    AmbiguousGap {
        axis: char,
        gap: f64,
        small: f64,
        column: f64,
    },
    #[error("non-finite coordinate for {0}")]
    NonFinite(String),
    #[error("instance sets differ: {0}")]
    MismatchedInstances(String),
    #[error(transparent)]
    Sat(#[from] SatError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
