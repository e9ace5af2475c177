#![allow(dead_code)]

use endtrace_core::freegroup::Word;
use endtrace_core::graph::{Edge, FiniteGraph};
use rand::seq::SliceRandom;
use rand::Rng;

/// Free reduction by repeatedly deleting the leftmost cancelling pair.
pub fn naive_reduce(letters: &[i64]) -> Vec<i64> {
    let mut v = letters.to_vec();
    while let Some(i) = (0..v.len().saturating_sub(1)).find(|&i| v[i] == -v[i + 1]) {
        v.drain(i..i + 2);
    }
    v
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * i128::from(m[0][j]) * cofactor_det(&minor)
        })
        .sum()
}

/// Rank over GF(2) as log2 of the size of the row span, found by listing
/// every subset sum of the rows.
pub fn span_rank(rows: &[Vec<bool>]) -> usize {
    let mut span = std::collections::BTreeSet::new();
    for mask in 0u32..(1 << rows.len()) {
        let mut acc = vec![false; rows.first().map_or(0, Vec::len)];
        for (i, row) in rows.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (a, b) in acc.iter_mut().zip(row) {
                    *a ^= b;
                }
            }
        }
        span.insert(acc);
    }
    span.len().trailing_zeros() as usize
}

pub fn random_word(rng: &mut impl Rng, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<i64> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..=rank as i64);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    Word::from_signed(&letters, Some(rank)).unwrap()
}

/// A word with every exponent sum zero and at most `max_mult` occurrences
/// of each letter.
pub fn random_balanced_word(rng: &mut impl Rng, rank: usize, max_mult: usize) -> Word {
    let mut letters = Vec::new();
    for g in 1..=rank as i64 {
        for _ in 0..rng.gen_range(0..=max_mult) {
            letters.push(g);
            letters.push(-g);
        }
    }
    letters.shuffle(rng);
    Word::from_signed(&letters, Some(rank)).unwrap()
}

/// A connected graph on `v:0 .. v:(n-1)` with basepoint `v:0`: a random
/// tree plus `extra` random edges (loops and parallel edges allowed).
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, extra: usize) -> FiniteGraph {
    let mut g = FiniteGraph::new("v:0");
    for i in 1..n {
        g.add_vertex(format!("v:{i}"));
        let j = rng.gen_range(0..i);
        g.add_edge(Edge::new(format!("e:{i}"), format!("v:{j}"), format!("v:{i}"))).unwrap();
    }
    for k in 0..extra {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        g.add_edge(Edge::new(format!("x:{k}"), format!("v:{a}"), format!("v:{b}"))).unwrap();
    }
    g
}
