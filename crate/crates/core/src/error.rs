use thiserror::Error;

use crate::ids::{EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters for family `{family}`: {reason}")]
    InvalidParams { family: String, reason: String },
    #[error("family `{family}` is not locally finite at radius {radius}: {reason}")]
    LocalFiniteness { family: String, radius: usize, reason: String },
    #[error("radius {radius} is beyond the generated region of family `{family}` (max {max})")]
    OutsideGeneratedRegion { family: String, radius: usize, max: usize },
    #[error("horizon {horizon} must exceed the radius {radius}")]
    HorizonTooSmall { radius: usize, horizon: usize },
    #[error("level must be at least {min}, got {level}")]
    LevelTooSmall { level: usize, min: usize },
    #[error("levels out of order: {m} < {n}")]
    LevelOrder { m: usize, n: usize },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),
    #[error("unknown edge `{0}`")]
    UnknownEdge(EdgeId),
    #[error("unknown ray family `{0}`")]
    UnknownRay(String),
    #[error("unknown loop `{0}`")]
    UnknownLoop(String),
    #[error("invalid loop: {0}")]
    InvalidLoop(String),
    #[error("ray segments {first} and {second} reach different complement components at level {level}")]
    SplitAtInfinity { first: usize, second: usize, level: usize },
    #[error("edge path is not closed at `{0}`")]
    PathNotClosed(VertexId),
    #[error("edge path breaks at step {step}: `{edge}` does not start at `{at}`")]
    PathBroken { step: usize, edge: EdgeId, at: VertexId },
    #[error("graph is not connected")]
    Disconnected,
    #[error("subgraph is not contained in the host graph: {0}")]
    NotContained(String),
    #[error("alphabet mismatch: expected rank {expected}, found {found}")]
    AlphabetMismatch { expected: usize, found: usize },
    #[error("generator {generator} is outside the alphabet of rank {rank}")]
    GeneratorOutOfRange { generator: usize, rank: usize },
    #[error("exponent sum of generator {generator} is {sum}, not zero")]
    NonzeroExponentSum { generator: usize, sum: i64 },
    #[error("{count} pairings exceed the configured cap of {cap}")]
    PairingCapExceeded { count: String, cap: u64 },
    #[error("integer overflow while computing a determinant")]
    DeterminantOverflow,
    #[error("matrix is not square")]
    NotSquare,
    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    /// Stable snake_case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnknownFamily(_) => "unknown_family",
            Error::InvalidParams { .. } => "invalid_params",
            Error::LocalFiniteness { .. } => "local_finiteness",
            Error::OutsideGeneratedRegion { .. } => "outside_generated_region",
            Error::HorizonTooSmall { .. } => "horizon_too_small",
            Error::LevelTooSmall { .. } => "level_too_small",
            Error::LevelOrder { .. } => "level_order",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::UnknownEdge(_) => "unknown_edge",
            Error::UnknownRay(_) => "unknown_ray",
            Error::UnknownLoop(_) => "unknown_loop",
            Error::InvalidLoop(_) => "invalid_loop",
            Error::SplitAtInfinity { .. } => "split_at_infinity",
            Error::PathNotClosed(_) => "path_not_closed",
            Error::PathBroken { .. } => "path_broken",
            Error::Disconnected => "disconnected",
            Error::NotContained(_) => "not_contained",
            Error::AlphabetMismatch { .. } => "alphabet_mismatch",
            Error::GeneratorOutOfRange { .. } => "generator_out_of_range",
            Error::NonzeroExponentSum { .. } => "nonzero_exponent_sum",
            Error::PairingCapExceeded { .. } => "pairing_cap_exceeded",
            Error::DeterminantOverflow => "determinant_overflow",
            Error::NotSquare => "not_square",
            Error::Inconsistent(_) => "inconsistent",
            Error::Malformed(_) => "malformed",
        }
    }
}
