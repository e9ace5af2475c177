use serde::Serialize;

use super::tree::{trace_word, SpanningTree};
use super::word::{ReducedWord, Word};
use crate::error::{Error, Result};
use crate::truncation::GraphMap;

/// A homomorphism between free groups, given by the images of the source
/// generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupHom {
    pub source_rank: usize,
    pub target_rank: usize,
    pub images: Vec<ReducedWord>,
}

impl GroupHom {
    pub fn new(source_rank: usize, target_rank: usize, images: Vec<ReducedWord>) -> Result<Self> {
        if images.len() != source_rank {
            return Err(Error::Inconsistent(format!(
                "{} images for {source_rank} generators",
                images.len()
            )));
        }
        if let Some(img) = images.iter().find(|w| w.rank() != target_rank) {
            return Err(Error::AlphabetMismatch { expected: target_rank, found: img.rank() });
        }
        Ok(Self { source_rank, target_rank, images })
    }

    pub fn identity(rank: usize) -> Self {
        let images = (0..rank)
            .map(|i| ReducedWord::generator(rank, super::Letter::pos(i)).expect("in range"))
            .collect();
        Self { source_rank: rank, target_rank: rank, images }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.target_rank != self.source_rank {
            return Err(Error::AlphabetMismatch { expected: self.source_rank, found: first.target_rank });
        }
        let images = first
            .images
            .iter()
            .map(|w| apply_hom(self, w.as_word()))
            .collect::<Result<_>>()?;
        GroupHom::new(first.source_rank, self.target_rank, images)
    }
}

/// Substitutes generator images into `w` and reduces.
pub fn apply_hom(h: &GroupHom, w: &Word) -> Result<ReducedWord> {
    if w.rank() != h.source_rank {
        return Err(Error::AlphabetMismatch { expected: h.source_rank, found: w.rank() });
    }
    let mut out = ReducedWord::identity(h.target_rank);
    for l in w.letters() {
        let img = &h.images[l.generator];
        out = out.concat(&if l.inverse { img.invert() } else { img.clone() })?;
    }
    Ok(out)
}

/// The homomorphism `π_1(Γ_m) -> π_1(Γ_n)` induced by a graph map: chord
/// `e` of `tree_m` goes to the reduced chord word over `tree_n` of the image
/// of its generator loop.
pub fn induced_hom(map: &GraphMap, tree_m: &SpanningTree, tree_n: &SpanningTree) -> Result<GroupHom> {
    let source_vertices: Vec<_> = tree_m.graph().vertices().collect();
    if source_vertices.len() != map.vertices.len() || source_vertices.iter().any(|v| !map.vertices.contains_key(*v)) {
        return Err(Error::Inconsistent("graph map source does not match the source tree".into()));
    }
    if map.vertices.values().any(|v| !tree_n.graph().has_vertex(v)) {
        return Err(Error::Inconsistent("graph map target does not match the target tree".into()));
    }
    let images = (0..tree_m.rank())
        .map(|i| {
            let path = map.apply_to_path(&tree_m.generator_loop(i)?)?;
            Ok(trace_word(&path, tree_n)?.reduce())
        })
        .collect::<Result<_>>()?;
    GroupHom::new(tree_m.rank(), tree_n.rank(), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::spanning_tree;
    use crate::graph::{build_family, Params};
    use crate::truncation::{rho_map, truncate};

    #[test]
    fn identity_map_gives_identity_hom() {
        let l = build_family("ladder", Params::new()).unwrap();
        let q = truncate(&l, 4).unwrap();
        let t = spanning_tree(&q.graph).unwrap();
        let h = induced_hom(&rho_map(&l, 4, 4).unwrap(), &t, &t).unwrap();
        assert_eq!(h, GroupHom::identity(4));
    }

    #[test]
    fn line_homs_are_trivial() {
        let line = build_family("line", Params::new()).unwrap();
        let (qm, qn) = (truncate(&line, 5).unwrap(), truncate(&line, 2).unwrap());
        let (tm, tn) = (spanning_tree(&qm.graph).unwrap(), spanning_tree(&qn.graph).unwrap());
        let h = induced_hom(&rho_map(&line, 5, 2).unwrap(), &tm, &tn).unwrap();
        assert_eq!((h.source_rank, h.target_rank), (0, 0));
    }

    #[test]
    fn mismatched_trees_are_rejected() {
        let l = build_family("ladder", Params::new()).unwrap();
        let t3 = spanning_tree(&truncate(&l, 3).unwrap().graph).unwrap();
        let t5 = spanning_tree(&truncate(&l, 5).unwrap().graph).unwrap();
        assert!(matches!(induced_hom(&rho_map(&l, 5, 3).unwrap(), &t3, &t5), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn apply_checks_alphabet() {
        let h = GroupHom::identity(2);
        assert!(apply_hom(&h, &Word::empty(3)).is_err());
        assert!(apply_hom(&h, &Word::empty(2)).unwrap().is_identity());
        let w = Word::from_signed(&[1, 2, -2, 2], Some(2)).unwrap();
        assert_eq!(apply_hom(&h, &w).unwrap(), w.reduce());
    }
}
