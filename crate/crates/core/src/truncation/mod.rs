//! Finite quotients `Γ_n` of an infinite graph, loops traced into them and
//! the projections `Γ_m -> Γ_n` between levels.
//!
//! `Γ_n` keeps every vertex at distance `<= n - 1` from the basepoint and
//! collapses each connected component of the subgraph induced on distance
//! `>= n` to a single vertex `C:n:i`. Edges inside a component disappear;
//! edges from distance `n - 1` into a component become edges to its
//! collapsed vertex. Every surviving edge keeps its original id.

mod loops;
mod quotient;
mod rho;

pub use loops::{builtin_loop, builtin_loop_names, theta_trace, validate_loop, LoopSpec, Segment};
pub use quotient::{truncate, QuotientGraph};
pub use rho::{rho_map, EdgeImage, GraphMap};
pub(crate) use loops::trace_in;
pub(crate) use rho::rho_between;
