//! Finite-level computations for loops in infinite graphs: truncated
//! quotients `Γ_n`, reduced words in their free fundamental groups, coherent
//! families across levels, and exact commutator lengths.

pub mod error;
pub mod freegroup;
pub mod graph;
pub mod homology;
pub mod ids;
pub mod invlimit;
pub mod linalg;
pub mod truncation;

pub use error::{Error, Result};
pub use freegroup::{GroupHom, Letter, ReducedWord, SpanningTree, Word};
pub use graph::{Edge, EdgePath, FiniteGraph, GraphFamily, Params, Step};
pub use homology::{CommLengthResult, Pairing, PairingMatrix};
pub use ids::{EdgeId, VertexId};
pub use invlimit::{CoherenceReport, CoherentFamily};
pub use linalg::{Gf2Matrix, IntMatrix};
pub use truncation::{GraphMap, LoopSpec, QuotientGraph, Segment};
