//! Abelianisation, cycle-space checks and commutator length in free groups.
//!
//! Commutator length is computed from pairings of a balanced word: every
//! occurrence of a letter is matched with an occurrence of its inverse, the
//! matched positions are joined by chords of a circle carrying the word,
//! and the length is the minimum over pairings of half the GF(2) rank of
//! the chord linking matrix.

mod pairing;
mod report;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::freegroup::Word;
use crate::graph::EdgePath;

pub use pairing::{
    circle_matrix, commutator_length, commutator_length_with_cap, enumerate_pairings, pairing_count,
    CommLengthResult, Pairing, PairingMatrix, Pairings, DEFAULT_PAIRING_CAP,
};
pub use report::{nonnullhomologous_report, HomologyReport, LevelRow};

/// Signed count of each generator occurring in `w`, for every generator of
/// the alphabet.
pub fn exponent_sums(w: &Word) -> BTreeMap<usize, i64> {
    let mut sums: BTreeMap<usize, i64> = (0..w.rank()).map(|g| (g, 0)).collect();
    for l in w.letters() {
        *sums.entry(l.generator).or_insert(0) += l.exponent();
    }
    sums
}

pub fn in_commutator_subgroup(w: &Word) -> bool {
    exponent_sums(w).values().all(|&s| s == 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coefficients {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Z2")]
    Mod2,
}

/// Whether a closed walk is trivial in the cycle space: every edge traversed
/// an even number of times (`Z2`) or equally often in both directions (`Z`).
pub fn cycle_space_trivial(path: &EdgePath, coefficients: Coefficients) -> bool {
    match coefficients {
        Coefficients::Integers => path.signed_counts().values().all(|&c| c == 0),
        Coefficients::Mod2 => path.traversal_counts().values().all(|&c| c % 2 == 0),
    }
}
