//! Free groups on the chords of a spanning tree.

mod hom;
mod tree;
mod word;

pub use hom::{apply_hom, induced_hom, GroupHom};
pub use tree::{extend_spanning_tree, spanning_tree, trace_reduced, trace_word, Chord, SpanningTree};
pub use word::{concat, equal, invert, reduce, Letter, ReducedWord, Word};
