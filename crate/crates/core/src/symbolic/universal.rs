//! The universal (dense-orbit) sequence.
//!
//! Every word over the alphabet is listed in length-lexicographic order
//! (`1, 2, 11, 12, 21, 22, 111, ...` for `m = 2`) and the words are
//! concatenated. Enumeration index `e` is the `e`-th symbol of that stream.
//! All offsets are computed in closed form so symbol lookup and word
//! location never materialize the prefix.

use memchr::memmem;

use super::{Alphabet, BiSequence, Word};
use crate::{Error, Result};

const CHUNK: usize = 1 << 16;

/// Index of the first symbol of the length-`len` section: `sum_{l<len} l * m^l`.
pub fn section_start(alphabet: Alphabet, len: usize) -> u128 {
    let m = alphabet.size() as u128;
    let mut power = 1u128;
    let mut total = 0u128;
    for l in 1..len as u128 {
        power = power.saturating_mul(m);
        total = total.saturating_add(power.saturating_mul(l));
    }
    total
}

/// Index at which `word` is listed as an entry of the enumeration.
pub fn enumeration_position(alphabet: Alphabet, word: &Word) -> u128 {
    if word.is_empty() {
        return 0;
    }
    section_start(alphabet, word.len()) + word.len() as u128 * alphabet.rank(word)
}

/// Splits an enumeration index into `(len, word rank, offset in word)`.
fn decompose(alphabet: Alphabet, mut index: u128) -> (usize, u128, usize) {
    let m = alphabet.size() as u128;
    let mut power = 1u128;
    let mut len = 1usize;
    loop {
        power = power.saturating_mul(m);
        let section = power.saturating_mul(len as u128);
        if index < section {
            return (len, index / len as u128, (index % len as u128) as usize);
        }
        index -= section;
        len += 1;
    }
}

fn digits_of(alphabet: Alphabet, len: usize, mut rank: u128) -> Vec<u8> {
    let m = alphabet.size() as u128;
    let mut digits = vec![1u8; len];
    for d in digits.iter_mut().rev() {
        *d = (rank % m) as u8 + 1;
        rank /= m;
    }
    digits
}

/// Symbol at enumeration index `index`.
pub fn symbol_at_index(alphabet: Alphabet, index: u128) -> u8 {
    let (len, rank, offset) = decompose(alphabet, index);
    let m = alphabet.size() as u128;
    let place = m.pow((len - 1 - offset) as u32);
    ((rank / place) % m) as u8 + 1
}

/// Streams enumeration symbols from a starting index.
#[derive(Clone, Debug)]
pub struct Enumeration {
    alphabet: Alphabet,
    digits: Vec<u8>,
    offset: usize,
}

impl Enumeration {
    pub fn starting_at(alphabet: Alphabet, index: u128) -> Self {
        let (len, rank, offset) = decompose(alphabet, index);
        Enumeration {
            alphabet,
            digits: digits_of(alphabet, len, rank),
            offset,
        }
    }

    fn advance_word(&mut self) {
        let m = self.alphabet.size();
        for d in self.digits.iter_mut().rev() {
            if *d < m {
                *d += 1;
                return;
            }
            *d = 1;
        }
        // wrapped past the last word of this length
        self.digits.push(1);
    }

    fn fill(&mut self, buf: &mut Vec<u8>, n: usize) {
        while buf.len() < n {
            let take = (self.digits.len() - self.offset).min(n - buf.len());
            buf.extend_from_slice(&self.digits[self.offset..self.offset + take]);
            self.offset += take;
            if self.offset == self.digits.len() {
                self.offset = 0;
                self.advance_word();
            }
        }
    }
}

impl Iterator for Enumeration {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        let s = self.digits[self.offset];
        self.offset += 1;
        if self.offset == self.digits.len() {
            self.offset = 0;
            self.advance_word();
        }
        Some(s)
    }
}

/// First index `e` in `from..=last_start` where the enumeration carries `pattern`.
pub fn find_block(
    alphabet: Alphabet,
    pattern: &[u8],
    from: u128,
    last_start: u128,
) -> Option<u128> {
    if pattern.is_empty() {
        return Some(from);
    }
    if from > last_start {
        return None;
    }
    let finder = memmem::Finder::new(pattern);
    let overlap = pattern.len() - 1;
    let mut stream = Enumeration::starting_at(alphabet, from);
    let mut buf: Vec<u8> = Vec::with_capacity(CHUNK + overlap);
    let mut base = from;
    stream.fill(&mut buf, overlap);
    loop {
        stream.fill(&mut buf, CHUNK + overlap);
        if let Some(i) = finder.find(&buf) {
            let e = base + i as u128;
            return (e <= last_start).then_some(e);
        }
        base += CHUNK as u128;
        if base > last_start {
            return None;
        }
        buf.drain(..CHUNK);
    }
}

/// The sequence whose nonnegative positions carry the full enumeration and
/// whose negative positions carry symbol 1.
pub fn make_universal_sequence(alphabet: Alphabet) -> BiSequence {
    BiSequence::Universal {
        alphabet,
        origin: 0,
    }
}

/// Smallest `p` such that `u.shift(p)` carries `word` at positions `1..=|word|`,
/// restricted to occurrences inside the enumerated part of `u`.
pub fn locate_block(u: &BiSequence, word: &Word) -> Result<i64> {
    let BiSequence::Universal { alphabet, origin } = u else {
        return Err(Error::NotUniversal);
    };
    alphabet.check_word(word)?;
    let bound = enumeration_position(*alphabet, word);
    let e = find_block(*alphabet, word.as_slice(), 0, bound)
        .ok_or_else(|| Error::BlockNotFound(word.to_string()))?;
    Ok(origin + e as i64 - 1)
}
