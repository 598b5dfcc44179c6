//! Minimal fixed-width bit set over member indices, used by the copy search
//! and the solver.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

impl BitSet {
    pub(crate) fn new(bits: usize) -> Self {
        BitSet { words: vec![0; words_for(bits)] }
    }

    pub(crate) fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

pub(crate) fn test_bit(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

pub(crate) fn is_empty(words: &[u64]) -> bool {
    words.iter().all(|&w| w == 0)
}

/// Clears every bit below `start`.
pub(crate) fn clear_below(words: &mut [u64], start: usize) {
    let full = start / 64;
    let len = words.len();
    for w in words.iter_mut().take(full.min(len)) {
        *w = 0;
    }
    if full < words.len() && !start.is_multiple_of(64) {
        words[full] &= !0u64 << (start % 64);
    }
}

/// Index of the lowest set bit at or after `start`.
pub(crate) fn next_set(words: &[u64], start: usize) -> Option<usize> {
    let mut w = start / 64;
    if w >= words.len() {
        return None;
    }
    let mut cur = words[w] & (!0u64 << (start % 64));
    loop {
        if cur != 0 {
            return Some(w * 64 + cur.trailing_zeros() as usize);
        }
        w += 1;
        if w == words.len() {
            return None;
        }
        cur = words[w];
    }
}
