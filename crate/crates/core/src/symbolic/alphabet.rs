use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Symbol count `m` of the index space. Symbols are encoded `1..=m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Alphabet(u8);

impl Alphabet {
    pub const BINARY: Alphabet = Alphabet(2);

    pub fn new(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::AlphabetTooSmall(m));
        }
        let m = u8::try_from(m).map_err(|_| Error::InvalidParameter {
            name: "m",
            reason: format!("{m} exceeds 255 symbols"),
        })?;
        Ok(Alphabet(m))
    }

    pub fn size(self) -> u8 {
        self.0
    }

    pub fn contains(self, symbol: u8) -> bool {
        (1..=self.0).contains(&symbol)
    }

    pub fn symbols(self) -> impl Iterator<Item = u8> + Clone {
        1..=self.0
    }

    /// Cyclic successor `s mod m + 1`; never a fixed point since `m >= 2`.
    pub fn flip(self, symbol: u8) -> u8 {
        symbol % self.0 + 1
    }

    pub fn check_symbol(self, symbol: u8) -> Result<()> {
        if self.contains(symbol) {
            Ok(())
        } else {
            Err(Error::SymbolOutOfRange { symbol, m: self.0 })
        }
    }

    pub fn check_word(self, word: &Word) -> Result<()> {
        word.iter().try_for_each(|s| self.check_symbol(s))
    }

    /// All words of `len` symbols in lexicographic order.
    pub fn words(self, len: usize) -> Words {
        Words {
            m: self.0,
            next: Some(vec![1; len]),
        }
    }

    /// All words of length `1..=max_len`, shortest first.
    pub fn words_up_to(self, max_len: usize) -> impl Iterator<Item = Word> {
        (1..=max_len).flat_map(move |len| self.words(len))
    }

    /// Lexicographic rank of `word` among words of its length.
    pub fn rank(self, word: &Word) -> u128 {
        word.iter()
            .fold(0u128, |acc, s| acc * self.0 as u128 + (s - 1) as u128)
    }
}

impl TryFrom<u8> for Alphabet {
    type Error = Error;

    fn try_from(m: u8) -> Result<Self> {
        Alphabet::new(m as usize)
    }
}

impl From<Alphabet> for u8 {
    fn from(a: Alphabet) -> u8 {
        a.0
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{1..{}}}", self.0)
    }
}

/// Lexicographic iterator over the words of a fixed length.
#[derive(Clone, Debug)]
pub struct Words {
    m: u8,
    next: Option<Vec<u8>>,
}

impl Iterator for Words {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carry = true;
        for digit in succ.iter_mut().rev() {
            if *digit < self.m {
                *digit += 1;
                carry = false;
                break;
            }
            *digit = 1;
        }
        if !carry {
            self.next = Some(succ);
        }
        Some(Word(current))
    }
}

/// A finite block of symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Word(Vec<u8>);

impl Word {
    /// Symbols must be nonzero; alphabet bounds are checked by [`Alphabet::check_word`].
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = symbols.iter().find(|&&s| s == 0) {
            return Err(Error::SymbolOutOfRange { symbol: bad, m: 0 });
        }
        Ok(Word(symbols))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u8> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn get(&self, i: usize) -> Option<u8> {
        self.0.get(i).copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = self.0.clone();
        symbols.extend_from_slice(&other.0);
        Word(symbols)
    }

    pub fn max_symbol(&self) -> Option<u8> {
        self.0.iter().copied().max()
    }

    pub(crate) fn from_raw(symbols: Vec<u8>) -> Self {
        debug_assert!(symbols.iter().all(|&s| s > 0));
        Word(symbols)
    }
}

impl TryFrom<Vec<u8>> for Word {
    type Error = Error;

    fn try_from(symbols: Vec<u8>) -> Result<Self> {
        Word::new(symbols)
    }
}

impl From<Word> for Vec<u8> {
    fn from(w: Word) -> Vec<u8> {
        w.0
    }
}

impl std::ops::Index<usize> for Word {
    type Output = u8;

    fn index(&self, i: usize) -> &u8 {
        &self.0[i]
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| s <= 9) {
            for s in &self.0 {
                write!(f, "{s}")?;
            }
        } else {
            for (i, s) in self.0.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

/// Parses `"1212"` (single-digit symbols) or `"1,12,3"`.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_err = |tok: &str| Error::InvalidParameter {
            name: "word",
            reason: format!("cannot parse symbol {tok:?}"),
        };
        let symbols = if s.contains(',') {
            s.split(',')
                .map(|tok| tok.trim().parse::<u8>().map_err(|_| parse_err(tok)))
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| parse_err(&c.to_string()))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Word::new(symbols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_rejects_single_symbol() {
        assert_eq!(Alphabet::new(1), Err(Error::AlphabetTooSmall(1)));
        assert!(Alphabet::new(0).is_err());
        assert!(Alphabet::new(256).is_err());
        assert_eq!(Alphabet::new(3).unwrap().size(), 3);
    }

    #[test]
    fn words_enumerate_lexicographically() {
        let words: Vec<String> = Alphabet::BINARY.words(2).map(|w| w.to_string()).collect();
        assert_eq!(words, ["11", "12", "21", "22"]);
        assert_eq!(Alphabet::new(3).unwrap().words(3).count(), 27);
        assert_eq!(Alphabet::BINARY.words(0).count(), 1);
    }

    #[test]
    fn rank_matches_enumeration_order() {
        let a = Alphabet::new(3).unwrap();
        for (i, w) in a.words(3).enumerate() {
            assert_eq!(a.rank(&w), i as u128);
        }
    }

    #[test]
    fn flip_cycles() {
        let a = Alphabet::new(3).unwrap();
        assert_eq!(a.symbols().map(|s| a.flip(s)).collect::<Vec<_>>(), [2, 3, 1]);
    }

    #[test]
    fn word_parse_and_display() {
        let w: Word = "1221".parse().unwrap();
        assert_eq!(w.as_slice(), &[1, 2, 2, 1]);
        assert_eq!(w.to_string(), "1221");
        let wide: Word = "1,12,3".parse().unwrap();
        assert_eq!(wide.to_string(), "1,12,3");
        assert!("10".parse::<Word>().is_err());
        assert!(Alphabet::BINARY.check_word(&"123".parse().unwrap()).is_err());
    }
}
