//! Inputs shared by the benchmarks.

use endtrace_core::Word;

/// `e_1 ... e_n e_1^-1 ... e_n^-1`.
pub fn ladder_word(n: usize) -> Word {
    let n = n as i64;
    let letters: Vec<i64> = (1..=n).chain((1..=n).map(|i| -i)).collect();
    Word::from_signed(&letters, None).expect("nonzero letters")
}

/// `[e_1, e_2]^k`, which has `k!^2` pairings.
pub fn commutator_power(k: usize) -> Word {
    let letters: Vec<i64> = [1, 2, -1, -2].repeat(k);
    Word::from_signed(&letters, None).expect("nonzero letters")
}
