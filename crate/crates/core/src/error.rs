use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge ({0}, {1}) already present")]
    EdgeExists(usize, usize),
    #[error("no {k}-regular graph on {n} vertices: n*k is odd")]
    ParityViolation { n: usize, k: usize },
    #[error("degree {k} out of range for {n} vertices")]
    DegreeOutOfRange { n: usize, k: usize },
    #[error("a connected {k}-regular graph on {n} vertices does not exist")]
    DisconnectedRequest { n: usize, k: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not regular")]
    NotRegular,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("complement of the graph has no perfect matching")]
    NoComplementMatching,
    #[error("edge count {m} out of range for {n} vertices")]
    EdgeCountOutOfRange { n: usize, m: usize },
    #[error("degree sequence is not graphical")]
    NotGraphical,
    #[error("degree sequence has no connected realization")]
    NoConnectedRealization,
    #[error("connectivity repair exceeded {0} swaps")]
    SwapBudgetExceeded(usize),
    #[error("power iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("{n} agents exceeds the enumeration cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("rationality must be a finite nonnegative number, got {0}")]
    InvalidBeta(f64),
    #[error("miscoordination tolerance must lie in (0, 1), got {0}")]
    InvalidDelta(f64),
    #[error("theta = 1/2 makes the coordinated profile ambiguous")]
    ThetaHalf,
    #[error("bisection bracket did not reach the target after {0} doublings")]
    BracketExhausted(usize),
    #[error("agent index {index} out of range for {n} agents")]
    AgentOutOfRange { index: usize, n: usize },
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("potential variance is zero")]
    ZeroVariance,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
