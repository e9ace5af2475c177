//! Coherent families of reduced words: finite truncations of elements of
//! the inverse limit of the free groups `F_n = π_1(Γ_n)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freegroup::{apply_hom, induced_hom, spanning_tree, trace_reduced, GroupHom, ReducedWord, SpanningTree};
use crate::graph::GraphFamily;
use crate::ids::EdgeId;
use crate::truncation::{rho_between, trace_in, truncate, validate_loop, LoopSpec, QuotientGraph};

/// The bonding homomorphism `F_source -> F_target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelHom {
    pub source: usize,
    pub target: usize,
    pub hom: GroupHom,
}

/// Words `levels[n]` in `F_n` for `n = 1..=max_level`, with the bonding maps
/// between consecutive levels and the chord edges naming each level's
/// generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoherentFamily {
    pub max_level: usize,
    pub levels: BTreeMap<usize, ReducedWord>,
    pub homs: Vec<LevelHom>,
    pub chords: BTreeMap<usize, Vec<EdgeId>>,
}

impl CoherentFamily {
    /// The bonding homomorphism `F_m -> F_n`, composed from consecutive ones.
    pub fn bonding_hom(&self, m: usize, n: usize) -> Result<GroupHom> {
        if m < n {
            return Err(Error::LevelOrder { m, n });
        }
        if n < 1 || m > self.max_level {
            return Err(Error::Inconsistent(format!("levels ({m}, {n}) outside 1..={}", self.max_level)));
        }
        let rank = self.levels[&m].rank();
        let mut h = GroupHom::identity(rank);
        for k in (n..m).rev() {
            let step = self
                .homs
                .iter()
                .find(|lh| lh.source == k + 1 && lh.target == k)
                .ok_or_else(|| Error::Inconsistent(format!("missing bonding map {} -> {k}", k + 1)))?;
            h = step.hom.after(&h)?;
        }
        Ok(h)
    }

    /// Levelwise product; both families must come from the same family of
    /// graphs.
    pub fn concat(&self, other: &CoherentFamily) -> Result<CoherentFamily> {
        if self.max_level != other.max_level || self.chords != other.chords {
            return Err(Error::Inconsistent("families live over different inverse systems".into()));
        }
        let levels = self
            .levels
            .iter()
            .map(|(n, w)| Ok((*n, w.concat(&other.levels[n])?)))
            .collect::<Result<_>>()?;
        Ok(CoherentFamily { levels, ..self.clone() })
    }
}

struct Level {
    quotient: QuotientGraph,
    tree: SpanningTree,
    word: ReducedWord,
}

fn build_level(loop_spec: &LoopSpec, family: &GraphFamily, n: usize) -> Result<Level> {
    let quotient = truncate(family, n)?;
    let tree = spanning_tree(&quotient.graph)?;
    let word = trace_reduced(&trace_in(loop_spec, &quotient)?, &tree)?;
    Ok(Level { quotient, tree, word })
}

/// `Ψ(loop)` truncated at level `max_level`.
pub fn psi_family(loop_spec: &LoopSpec, family: &GraphFamily, max_level: usize) -> Result<CoherentFamily> {
    if max_level < 1 {
        return Err(Error::LevelTooSmall { level: max_level, min: 1 });
    }
    validate_loop(loop_spec, family)?;
    let built: Vec<Level> = (1..=max_level)
        .into_par_iter()
        .map(|n| build_level(loop_spec, family, n))
        .collect::<Result<_>>()?;
    let homs = (1..max_level)
        .into_par_iter()
        .map(|n| {
            let (lower, upper) = (&built[n - 1], &built[n]);
            let map = rho_between(&upper.quotient, &lower.quotient)?;
            Ok(LevelHom { source: n + 1, target: n, hom: induced_hom(&map, &upper.tree, &lower.tree)? })
        })
        .collect::<Result<_>>()?;
    let mut levels = BTreeMap::new();
    let mut chords = BTreeMap::new();
    for (i, level) in built.into_iter().enumerate() {
        chords.insert(i + 1, level.tree.chords().iter().map(|c| c.edge.clone()).collect());
        levels.insert(i + 1, level.word);
    }
    Ok(CoherentFamily { max_level, levels, homs, chords })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CoherenceReport {
    Pass {
        pairs_checked: usize,
    },
    Fail {
        m: usize,
        n: usize,
        expected: ReducedWord,
        found: ReducedWord,
    },
}

impl CoherenceReport {
    pub fn passed(&self) -> bool {
        matches!(self, CoherenceReport::Pass { .. })
    }
}

/// Checks `ρ^m_n*(levels[m]) = levels[n]` for every `m > n`, running `n`
/// downwards and `m` upwards, and reports the first failure. Malformed
/// families (missing maps or mismatched alphabets) fail at the pair where
/// the problem shows.
pub fn check_coherence(fam: &CoherentFamily) -> CoherenceReport {
    let mut pairs_checked = 0;
    for n in (1..fam.max_level).rev() {
        for m in n + 1..=fam.max_level {
            let found = fam.levels[&n].clone();
            let expected = fam
                .bonding_hom(m, n)
                .and_then(|h| apply_hom(&h, fam.levels[&m].as_word()));
            match expected {
                Ok(expected) if expected == found => pairs_checked += 1,
                Ok(expected) => return CoherenceReport::Fail { m, n, expected, found },
                Err(_) => {
                    return CoherenceReport::Fail { m, n, expected: ReducedWord::identity(found.rank()), found }
                }
            }
        }
    }
    CoherenceReport::Pass { pairs_checked }
}

/// Occurrence counts of one chord edge at every level from the first level
/// at which it is a chord and stays one up to the top level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multiplicity {
    pub edge: EdgeId,
    pub first_level: usize,
    pub counts: Vec<usize>,
    /// The count did not change between the last two levels.
    pub stabilized: bool,
}

/// Multiplicity sequences of the persistent chords, keyed by edge id.
pub fn letter_multiplicity(fam: &CoherentFamily) -> BTreeMap<EdgeId, Multiplicity> {
    let mut out = BTreeMap::new();
    let Some(top_chords) = fam.chords.get(&fam.max_level) else {
        return out;
    };
    for edge in top_chords {
        let index_at = |n: usize| fam.chords.get(&n).and_then(|c| c.iter().position(|e| e == edge));
        let mut first_level = fam.max_level;
        while first_level > 1 && index_at(first_level - 1).is_some() {
            first_level -= 1;
        }
        let counts: Vec<usize> = (first_level..=fam.max_level)
            .map(|n| fam.levels[&n].as_word().count(index_at(n).expect("persistent")))
            .collect();
        let stabilized = counts.len() < 2 || counts[counts.len() - 1] == counts[counts.len() - 2];
        out.insert(edge.clone(), Multiplicity { edge: edge.clone(), first_level, counts, stabilized });
    }
    out
}
