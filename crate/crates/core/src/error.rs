use core::fmt;

/// Errors reported by the core algorithms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A decimal literal could not be read as a ratio in `(0, 1]`.
    InvalidGamma,
    /// γ is valid but outside the range the solver supports.
    GammaOutOfRange,
    EmptyVertexSet,
    VertexNotInSet(usize),
    VertexOutOfRange { vertex: usize, n: usize },
    /// `k` must be at least 1.
    InvalidK,
    /// Operation requires at least one vertex.
    EmptyGraph,
    /// The brute-force oracles refuse graphs above their enumeration cap.
    TooLarge { n: usize, max: usize },
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGamma => write!(f, "gamma must be a decimal or ratio in (0, 1]"),
            Error::GammaOutOfRange => write!(f, "gamma must lie in [0.5, 1]"),
            Error::EmptyVertexSet => write!(f, "vertex set is empty"),
            Error::VertexNotInSet(v) => write!(f, "vertex {v} is not in the set"),
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for graph with {n} vertices")
            }
            Error::InvalidK => write!(f, "k must be at least 1"),
            Error::EmptyGraph => write!(f, "graph has no vertices"),
            Error::TooLarge { n, max } => {
                write!(f, "graph has {n} vertices, oracle limit is {max}")
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl core::error::Error for Error {}
