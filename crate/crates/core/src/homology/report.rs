use std::fmt::Write as _;

use serde::Serialize;

use super::{commutator_length_with_cap, cycle_space_trivial, Coefficients, CommLengthResult};
use crate::error::{Error, Result};
use crate::freegroup::{spanning_tree, trace_reduced, ReducedWord};
use crate::graph::GraphFamily;
use crate::truncation::{trace_in, truncate, validate_loop, LoopSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelRow {
    pub level: usize,
    pub word: ReducedWord,
    /// `None` when the word is outside the commutator subgroup.
    pub cl: Option<usize>,
    pub pairings_considered: Option<u64>,
    pub z_trivial: bool,
    pub z2_trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub rows: Vec<LevelRow>,
    /// Every level's trace is trivial in the integral cycle space while the
    /// commutator length is finite, non-decreasing and strictly larger at
    /// the top level than at level 1.
    pub nonnullhomologous_evidence: bool,
}

impl HomologyReport {
    pub fn cl_sequence(&self) -> Vec<Option<usize>> {
        self.rows.iter().map(|r| r.cl).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("level  cl   Z    Z2   word\n");
        for r in &self.rows {
            let cl = r.cl.map_or_else(|| "-".to_string(), |c| c.to_string());
            let yn = |b: bool| if b { "yes" } else { "no" };
            let _ = writeln!(out, "{:<6} {:<4} {:<4} {:<4} {}", r.level, cl, yn(r.z_trivial), yn(r.z2_trivial), r.word.as_word());
        }
        let _ = writeln!(
            out,
            "non-nullhomologous evidence: {}",
            if self.nonnullhomologous_evidence { "yes" } else { "no" }
        );
        out
    }
}

/// Commutator length and cycle-space verdicts of a loop's trace at levels
/// `1..=max_level`.
pub fn nonnullhomologous_report(
    loop_spec: &LoopSpec,
    family: &GraphFamily,
    max_level: usize,
    cap: u64,
) -> Result<HomologyReport> {
    if max_level < 1 {
        return Err(Error::LevelTooSmall { level: max_level, min: 1 });
    }
    validate_loop(loop_spec, family)?;
    let mut rows = Vec::with_capacity(max_level);
    for level in 1..=max_level {
        let q = truncate(family, level)?;
        let path = trace_in(loop_spec, &q)?;
        let word = trace_reduced(&path, &spanning_tree(&q.graph)?)?;
        let (cl, pairings_considered) = match commutator_length_with_cap(word.as_word(), cap)? {
            CommLengthResult::Finite { cl, pairings_considered, .. } => (Some(cl), Some(pairings_considered)),
            CommLengthResult::NotInCommutatorSubgroup { .. } => (None, None),
        };
        rows.push(LevelRow {
            level,
            word,
            cl,
            pairings_considered,
            z_trivial: cycle_space_trivial(&path, Coefficients::Integers),
            z2_trivial: cycle_space_trivial(&path, Coefficients::Mod2),
        });
    }
    let cls: Option<Vec<usize>> = rows.iter().map(|r| r.cl).collect();
    let nonnullhomologous_evidence = rows.iter().all(|r| r.z_trivial)
        && cls.is_some_and(|c| c.windows(2).all(|w| w[0] <= w[1]) && c.last() > c.first());
    Ok(HomologyReport { rows, nonnullhomologous_evidence })
}
