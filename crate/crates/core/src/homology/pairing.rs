use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::exponent_sums;
use crate::error::{Error, Result};
use crate::freegroup::{ReducedWord, Word};
use crate::linalg::{gf2_rank, Gf2Matrix};

/// Default limit on the number of pairings examined.
pub const DEFAULT_PAIRING_CAP: u64 = 1_000_000;

/// A perfect matching of the letter positions of a word in which matched
/// positions carry mutually inverse letters. Pairs are `(i, j)` with
/// `i < j`, listed by `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pairing {
    pub word: Word,
    pub pairs: Vec<(usize, usize)>,
}

impl Pairing {
    /// Checks the matching invariants.
    pub fn new(word: Word, mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut used = vec![false; word.len()];
        for p in pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
            let (i, j) = *p;
            if j >= word.len() || i == j || used[i] || used[j] {
                return Err(Error::Inconsistent(format!("pair ({i}, {j}) is not a valid match")));
            }
            if word.letters()[i] != word.letters()[j].inv() {
                return Err(Error::Inconsistent(format!("positions {i} and {j} are not inverse letters")));
            }
            used[i] = true;
            used[j] = true;
        }
        if used.iter().any(|u| !u) {
            return Err(Error::Inconsistent("pairing does not cover every position".into()));
        }
        pairs.sort_unstable();
        Ok(Self { word, pairs })
    }
}

/// Symmetric 0/1 linking matrix of a pairing, indexed like `Pairing::pairs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PairingMatrix(Gf2Matrix);

impl PairingMatrix {
    pub fn matrix(&self) -> &Gf2Matrix {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn rank(&self) -> usize {
        gf2_rank(&self.0)
    }
}

fn linked(p: (usize, usize), q: (usize, usize)) -> bool {
    (p.0 < q.0 && q.0 < p.1 && p.1 < q.1) || (q.0 < p.0 && p.0 < q.1 && q.1 < p.1)
}

fn linking_matrix(pairs: &[(usize, usize)]) -> Gf2Matrix {
    let k = pairs.len();
    let mut m = Gf2Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..i {
            if linked(pairs[i], pairs[j]) {
                m.set(i, j, true);
                m.set(j, i, true);
            }
        }
    }
    m
}

/// Chords `i` and `j` are linked when their endpoints alternate around the
/// circle.
pub fn circle_matrix(p: &Pairing) -> PairingMatrix {
    PairingMatrix(linking_matrix(&p.pairs))
}

/// Positions of each generator's positive and negative occurrences.
#[derive(Clone, Debug)]
struct Occurrences {
    positive: Vec<usize>,
    negative: Vec<usize>,
}

fn occurrences(w: &Word) -> Result<Vec<Occurrences>> {
    if let Some((&g, &s)) = exponent_sums(w).iter().find(|(_, &s)| s != 0) {
        return Err(Error::NonzeroExponentSum { generator: g, sum: s });
    }
    let mut by_gen: BTreeMap<usize, Occurrences> = BTreeMap::new();
    for (pos, l) in w.letters().iter().enumerate() {
        let occ = by_gen
            .entry(l.generator)
            .or_insert_with(|| Occurrences { positive: Vec::new(), negative: Vec::new() });
        if l.inverse {
            occ.negative.push(pos);
        } else {
            occ.positive.push(pos);
        }
    }
    Ok(by_gen.into_values().collect())
}

fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

/// Number of pairings of a balanced word, `∏ m_g!`; `None` if it does not
/// fit in 128 bits.
pub fn pairing_count(w: &Word) -> Result<Option<u128>> {
    Ok(occurrences(w)?
        .iter()
        .try_fold(1u128, |acc, o| factorial(o.positive.len()).and_then(|f| acc.checked_mul(f))))
}

/// The `index`-th permutation of `0..n` in lexicographic order.
fn nth_permutation(n: usize, mut index: u128) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for k in (0..n).rev() {
        let f = factorial(k).expect("fits: total count fits");
        let pick = (index / f) as usize;
        index %= f;
        out.push(pool.remove(pick));
    }
    out
}

/// All pairings of a balanced word, in a fixed order: generators in
/// ascending order, the first generator varying slowest, and for each
/// generator the bijections from its positive to its negative occurrences
/// in lexicographic order.
#[derive(Clone, Debug)]
pub struct Pairings {
    word: Word,
    occ: Vec<Occurrences>,
    radices: Vec<u128>,
    total: u128,
    next: u128,
}

impl Pairings {
    pub fn total(&self) -> u128 {
        self.total
    }

    /// The pairing at a given position of the enumeration.
    pub fn nth_pairs(&self, mut index: u128) -> Vec<(usize, usize)> {
        let mut pairs = Vec::with_capacity(self.word.len() / 2);
        let mut digits = vec![0u128; self.occ.len()];
        for (g, radix) in self.radices.iter().enumerate().rev() {
            digits[g] = index % radix;
            index /= radix;
        }
        for (o, digit) in self.occ.iter().zip(digits) {
            let perm = nth_permutation(o.positive.len(), digit);
            for (k, &target) in perm.iter().enumerate() {
                let (a, b) = (o.positive[k], o.negative[target]);
                pairs.push((a.min(b), a.max(b)));
            }
        }
        pairs.sort_unstable();
        pairs
    }
}

impl Iterator for Pairings {
    type Item = Pairing;

    fn next(&mut self) -> Option<Pairing> {
        if self.next >= self.total {
            return None;
        }
        let pairs = self.nth_pairs(self.next);
        self.next += 1;
        Some(Pairing { word: self.word.clone(), pairs })
    }
}

/// Enumerates every pairing of a word whose exponent sums all vanish.
pub fn enumerate_pairings(w: &Word) -> Result<Pairings> {
    let occ = occurrences(w)?;
    let radices: Vec<u128> = occ
        .iter()
        .map(|o| factorial(o.positive.len()))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::PairingCapExceeded { count: "more than 2^128".into(), cap: u64::MAX })?;
    let total = radices
        .iter()
        .try_fold(1u128, |acc, &r| acc.checked_mul(r))
        .ok_or_else(|| Error::PairingCapExceeded { count: "more than 2^128".into(), cap: u64::MAX })?;
    Ok(Pairings { word: w.clone(), occ, radices, total, next: 0 })
}

/// Commutator length of a group element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CommLengthResult {
    Finite {
        /// The reduced word the pairings were taken over.
        word: ReducedWord,
        cl: usize,
        witness: Pairing,
        pairings_considered: u64,
    },
    NotInCommutatorSubgroup {
        word: ReducedWord,
        exponent_sums: BTreeMap<usize, i64>,
    },
}

impl CommLengthResult {
    pub fn value(&self) -> Option<usize> {
        match self {
            CommLengthResult::Finite { cl, .. } => Some(*cl),
            CommLengthResult::NotInCommutatorSubgroup { .. } => None,
        }
    }
}

pub fn commutator_length(w: &Word) -> Result<CommLengthResult> {
    commutator_length_with_cap(w, DEFAULT_PAIRING_CAP)
}

/// Minimum over all pairings of half the GF(2) rank of the linking matrix,
/// taken over the reduced form of `w`. Refuses when the number of pairings
/// exceeds `cap`. Ties between minimal pairings go to the earliest one in
/// enumeration order.
pub fn commutator_length_with_cap(w: &Word, cap: u64) -> Result<CommLengthResult> {
    let reduced = w.reduce();
    let sums = exponent_sums(reduced.as_word());
    if sums.values().any(|&s| s != 0) {
        return Ok(CommLengthResult::NotInCommutatorSubgroup { word: reduced, exponent_sums: sums });
    }
    let pairings = match enumerate_pairings(reduced.as_word()) {
        Ok(p) => p,
        Err(Error::PairingCapExceeded { count, .. }) => return Err(Error::PairingCapExceeded { count, cap }),
        Err(e) => return Err(e),
    };
    let total = pairings.total();
    if total > u128::from(cap) {
        return Err(Error::PairingCapExceeded { count: total.to_string(), cap });
    }
    let total = total as u64;
    let (rank, index) = (0..total)
        .into_par_iter()
        .map(|i| (gf2_rank(&linking_matrix(&pairings.nth_pairs(u128::from(i)))), i))
        .min()
        .expect("at least one pairing");
    let witness = Pairing { word: reduced.as_word().clone(), pairs: pairings.nth_pairs(u128::from(index)) };
    Ok(CommLengthResult::Finite { word: reduced, cl: rank / 2, witness, pairings_considered: total })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[i64]) -> Word {
        Word::from_signed(letters, None).unwrap()
    }

    fn ladder_word(n: i64) -> Word {
        let mut letters: Vec<i64> = (1..=n).collect();
        letters.extend((1..=n).map(|i| -i));
        w(&letters)
    }

    #[test]
    fn pairing_counts() {
        assert_eq!(enumerate_pairings(&w(&[1, 2, 3, -1, -2, -3])).unwrap().count(), 1);
        assert_eq!(enumerate_pairings(&w(&[1, 1, -1, -1])).unwrap().count(), 2);
        for n in 1..=8 {
            assert_eq!(enumerate_pairings(&ladder_word(n)).unwrap().count(), 1);
        }
        assert_eq!(pairing_count(&w(&[1, 1, 1, -1, -1, -1, 2, -2])).unwrap(), Some(6));
        assert!(matches!(enumerate_pairings(&w(&[1, 2])), Err(Error::NonzeroExponentSum { .. })));
    }

    #[test]
    fn enumeration_is_exhaustive_and_distinct() {
        let word = w(&[1, 2, 1, -1, -2, 2, -1, -2, 1, -1]);
        let all: Vec<_> = enumerate_pairings(&word).unwrap().map(|p| p.pairs).collect();
        assert_eq!(all.len(), 12);
        let distinct: std::collections::BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), 12);
        for pairs in all {
            Pairing::new(word.clone(), pairs).unwrap();
        }
    }

    #[test]
    fn circle_matrices() {
        let p = enumerate_pairings(&w(&[1, 2, 3, -1, -2, -3])).unwrap().next().unwrap();
        let m = circle_matrix(&p);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.matrix().get(i, j), i != j);
            }
        }
        let single = enumerate_pairings(&w(&[1, -1])).unwrap().next().unwrap();
        assert_eq!(circle_matrix(&single).matrix(), &Gf2Matrix::zeros(1, 1));
        let nested = enumerate_pairings(&w(&[1, 2, -2, -1])).unwrap().next().unwrap();
        assert_eq!(circle_matrix(&nested).matrix(), &Gf2Matrix::zeros(2, 2));
    }

    #[test]
    fn small_commutator_lengths() {
        assert_eq!(commutator_length(&w(&[1, 2, -1, -2])).unwrap().value(), Some(1));
        assert_eq!(commutator_length(&w(&[1])).unwrap().value(), None);
        assert_eq!(commutator_length(&Word::empty(2)).unwrap().value(), Some(0));
        assert_eq!(commutator_length(&w(&[1, 2, -2, -1])).unwrap().value(), Some(0));
        // [a,b][c,d]
        assert_eq!(commutator_length(&w(&[1, 2, -1, -2, 3, 4, -3, -4])).unwrap().value(), Some(2));
        // [a,b]^2 has commutator length 2
        assert_eq!(commutator_length(&w(&[1, 2, -1, -2, 1, 2, -1, -2])).unwrap().value(), Some(2));
    }

    #[test]
    fn ladder_words() {
        for n in 1..=8 {
            assert_eq!(commutator_length(&ladder_word(n)).unwrap().value(), Some(n as usize / 2));
        }
    }

    #[test]
    fn cap_is_a_refusal() {
        let word = w(&[1, 1, 1, 2, -1, -1, -1, -2]);
        assert!(matches!(
            commutator_length_with_cap(&word, 5),
            Err(Error::PairingCapExceeded { cap: 5, .. })
        ));
        assert!(commutator_length_with_cap(&word, 6).is_ok());
    }

    #[test]
    fn pairing_validation() {
        let word = w(&[1, -1, 2, -2]);
        assert!(Pairing::new(word.clone(), vec![(0, 1), (2, 3)]).is_ok());
        assert!(Pairing::new(word.clone(), vec![(0, 2), (1, 3)]).is_err());
        assert!(Pairing::new(word, vec![(0, 1)]).is_err());
    }
}
