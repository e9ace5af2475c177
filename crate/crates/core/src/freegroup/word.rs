use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Self { generator, inverse: false }
    }

    pub fn neg(generator: usize) -> Self {
        Self { generator, inverse: true }
    }

    pub fn inv(self) -> Self {
        Self { generator: self.generator, inverse: !self.inverse }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// `±(generator + 1)`.
    pub fn to_signed(self) -> i64 {
        (self.generator as i64 + 1) * self.exponent()
    }

    pub fn from_signed(x: i64) -> Result<Self> {
        if x == 0 {
            return Err(Error::Malformed("letter 0 is not allowed; letters are ±(index + 1)".into()));
        }
        let generator = (x.unsigned_abs() - 1) as usize;
        Ok(Self { generator, inverse: x < 0 })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.generator + 1)?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

/// A word in the free group of the given rank, not necessarily reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(rank: usize, letters: Vec<Letter>) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| l.generator >= rank) {
            return Err(Error::GeneratorOutOfRange { generator: l.generator, rank });
        }
        Ok(Self { rank, letters })
    }

    pub fn empty(rank: usize) -> Self {
        Self { rank, letters: Vec::new() }
    }

    /// Parses signed letters; the rank is the largest generator used unless
    /// given.
    pub fn from_signed(letters: &[i64], rank: Option<usize>) -> Result<Self> {
        let letters: Vec<Letter> = letters.iter().map(|&x| Letter::from_signed(x)).collect::<Result<_>>()?;
        let needed = letters.iter().map(|l| l.generator + 1).max().unwrap_or(0);
        Self::new(rank.unwrap_or(needed), letters)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) -> Result<()> {
        if letter.generator >= self.rank {
            return Err(Error::GeneratorOutOfRange { generator: letter.generator, rank: self.rank });
        }
        self.letters.push(letter);
        Ok(())
    }

    /// Juxtaposition without cancellation.
    pub fn juxtapose(&self, other: &Word) -> Result<Word> {
        check_rank(self.rank, other.rank)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { rank: self.rank, letters })
    }

    /// Formal inverse without cancellation.
    pub fn formal_inverse(&self) -> Word {
        Word { rank: self.rank, letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.to_signed()).collect()
    }

    pub fn count(&self, generator: usize) -> usize {
        self.letters.iter().filter(|l| l.generator == generator).count()
    }

    pub fn reduce(&self) -> ReducedWord {
        reduce(self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_signed().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<i64>::deserialize(d)?;
        Word::from_signed(&raw, None).map_err(serde::de::Error::custom)
    }
}

fn check_rank(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::AlphabetMismatch { expected, found });
    }
    Ok(())
}

/// A freely reduced word: no letter is followed by its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ReducedWord(Word);

impl ReducedWord {
    pub fn identity(rank: usize) -> Self {
        Self(Word::empty(rank))
    }

    pub fn generator(rank: usize, letter: Letter) -> Result<Self> {
        Ok(Self(Word::new(rank, vec![letter])?))
    }

    pub fn as_word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0.letters
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Group product, reduced.
    pub fn concat(&self, other: &ReducedWord) -> Result<ReducedWord> {
        check_rank(self.rank(), other.rank())?;
        let mut stack = self.0.letters.clone();
        for &l in other.letters() {
            push_reducing(&mut stack, l);
        }
        Ok(ReducedWord(Word { rank: self.rank(), letters: stack }))
    }

    pub fn invert(&self) -> ReducedWord {
        ReducedWord(self.0.formal_inverse())
    }

    /// Letter-by-letter equality of reduced forms over the same alphabet.
    pub fn equal(&self, other: &ReducedWord) -> Result<bool> {
        check_rank(self.rank(), other.rank())?;
        Ok(self.letters() == other.letters())
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn push_reducing(stack: &mut Vec<Letter>, l: Letter) {
    if stack.last() == Some(&l.inv()) {
        stack.pop();
    } else {
        stack.push(l);
    }
}

/// Free reduction in one left-to-right pass over a stack.
pub fn reduce(w: &Word) -> ReducedWord {
    let mut stack = Vec::with_capacity(w.letters.len());
    for &l in &w.letters {
        push_reducing(&mut stack, l);
    }
    ReducedWord(Word { rank: w.rank, letters: stack })
}

pub fn concat(u: &ReducedWord, v: &ReducedWord) -> Result<ReducedWord> {
    u.concat(v)
}

pub fn invert(w: &ReducedWord) -> ReducedWord {
    w.invert()
}

pub fn equal(u: &ReducedWord, v: &ReducedWord) -> Result<bool> {
    u.equal(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[i64]) -> Word {
        Word::from_signed(letters, None).unwrap()
    }

    fn rw(rank: usize, letters: &[i64]) -> ReducedWord {
        reduce(&Word::from_signed(letters, Some(rank)).unwrap())
    }

    #[test]
    fn palindromic_word_reduces_to_identity() {
        for n in 1..=12i64 {
            let mut letters: Vec<i64> = (1..=n).collect();
            letters.extend((1..=n).rev().map(|i| -i));
            assert!(reduce(&w(&letters)).is_identity(), "n = {n}");
        }
        assert!(reduce(&Word::empty(3)).is_identity());
    }

    #[test]
    fn group_operations() {
        let x = rw(3, &[1, 2, -3]);
        assert!(x.concat(&x.invert()).unwrap().is_identity());
        assert_eq!(rw(2, &[1, 2]).invert().as_word().to_signed(), vec![-2, -1]);
        assert_eq!(rw(1, &[1]).concat(&rw(1, &[1])).unwrap().as_word().to_signed(), vec![1, 1]);
        assert!(rw(2, &[1, -2]).equal(&rw(2, &[1, 2, -2, -2])).unwrap());
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        assert_eq!(
            rw(2, &[1]).concat(&rw(3, &[1])),
            Err(Error::AlphabetMismatch { expected: 2, found: 3 })
        );
        assert!(rw(2, &[1]).equal(&rw(3, &[1])).is_err());
        assert_eq!(
            Word::from_signed(&[3], Some(2)),
            Err(Error::GeneratorOutOfRange { generator: 2, rank: 2 })
        );
        assert!(Word::from_signed(&[0], None).is_err());
    }

    #[test]
    fn signed_json_form() {
        let word = w(&[1, -2, 3]);
        assert_eq!(serde_json::to_string(&word).unwrap(), "[1,-2,3]");
        let back: Word = serde_json::from_str("[1,-2,3]").unwrap();
        assert_eq!(back, word);
        assert_eq!(word.to_string(), "e1 e2^-1 e3");
    }
}
