use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{BiSequence, Word};
use crate::{Error, Result};

/// Points whose symbols are fixed on the contiguous window `start..=end`
/// and free everywhere else. The empty window is the whole space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CylinderSet {
    fixed: Word,
    start: i64,
}

impl CylinderSet {
    pub fn new(fixed: Word, start: i64) -> Self {
        CylinderSet { fixed, start }
    }

    pub fn whole() -> Self {
        CylinderSet {
            fixed: Word::empty(),
            start: 1,
        }
    }

    /// `F_{i1...in}`: the word sits at positions `1..=n`.
    pub fn future(word: Word) -> Self {
        CylinderSet {
            fixed: word,
            start: 1,
        }
    }

    /// `F_{i-k...i0}`: the word ends at position 0.
    pub fn past(word: Word) -> Self {
        let start = 1 - word.len() as i64;
        CylinderSet { fixed: word, start }
    }

    /// `F_{i-k...i0 . i1...in}`.
    pub fn two_sided(past: &Word, future: &Word) -> Self {
        CylinderSet {
            fixed: past.concat(future),
            start: 1 - past.len() as i64,
        }
    }

    pub fn fixed(&self) -> &Word {
        &self.fixed
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last fixed position; `start - 1` for the whole space.
    pub fn end(&self) -> i64 {
        self.start + self.fixed.len() as i64 - 1
    }

    /// Number of fixed positions; a cylinder as a set is never empty.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.fixed.len()
    }

    pub fn is_whole(&self) -> bool {
        self.fixed.is_empty()
    }

    pub fn is_future(&self) -> bool {
        self.is_whole() || self.start == 1
    }

    pub fn is_past(&self) -> bool {
        self.is_whole() || self.end() == 0
    }

    pub fn is_two_sided(&self) -> bool {
        !self.is_whole() && self.start <= 0 && self.end() >= 1
    }

    pub fn symbol_at(&self, j: i64) -> Option<u8> {
        let offset = j - self.start;
        if offset < 0 {
            return None;
        }
        self.fixed.get(offset as usize)
    }

    pub fn positions(&self) -> impl Iterator<Item = (i64, u8)> + '_ {
        self.fixed
            .iter()
            .enumerate()
            .map(move |(i, s)| (self.start + i as i64, s))
    }

    pub fn contains(&self, s: &BiSequence) -> bool {
        self.positions().all(|(j, sym)| s.symbol_at(j) == sym)
    }

    /// Window-constraint entailment: every member of `self` is a member of `other`.
    pub fn is_subset_of(&self, other: &CylinderSet) -> bool {
        other
            .positions()
            .all(|(j, sym)| self.symbol_at(j) == Some(sym))
    }

    /// Image of the cylinder under `shift(steps)`.
    pub fn shift(&self, steps: i64) -> CylinderSet {
        if self.is_whole() {
            return self.clone();
        }
        CylinderSet {
            fixed: self.fixed.clone(),
            start: self.start - steps,
        }
    }

    /// The member carrying `pad` at every free position.
    pub fn member(&self, pad: u8) -> BiSequence {
        BiSequence::WindowPadded {
            window: self.fixed.clone(),
            window_start: self.start,
            pad,
        }
    }
}

/// Dotted notation: `12.121` fixes positions -1..=3. `*` marks free
/// positions between the dot and a one-sided window (`.**12`, `21*.`).
impl fmt::Display for CylinderSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_whole() {
            return f.write_str(".");
        }
        let end = self.end();
        let mut text = String::new();
        for j in self.start.min(1)..=end.max(0) {
            if j == 1 {
                text.push('.');
            }
            match self.symbol_at(j) {
                Some(s) => text.push_str(&s.to_string()),
                None => text.push('*'),
            }
        }
        if end <= 0 {
            text.push('.');
        }
        f.write_str(&text)
    }
}

impl FromStr for CylinderSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidParameter {
            name: "cylinder",
            reason: format!("{s:?}: {reason}"),
        };
        let (left, right) = s.trim().split_once('.').ok_or_else(|| bad("missing dot"))?;
        let mut cells: Vec<(i64, Option<u8>)> = Vec::new();
        for (i, c) in left.chars().rev().enumerate() {
            cells.push((-(i as i64), parse_cell(c).ok_or_else(|| bad("bad symbol"))?));
        }
        for (i, c) in right.chars().enumerate() {
            cells.push((i as i64 + 1, parse_cell(c).ok_or_else(|| bad("bad symbol"))?));
        }
        cells.sort_by_key(|&(j, _)| j);
        let fixed: Vec<(i64, u8)> = cells
            .iter()
            .filter_map(|&(j, s)| s.map(|s| (j, s)))
            .collect();
        let Some(&(start, _)) = fixed.first() else {
            return Ok(CylinderSet::whole());
        };
        let contiguous = fixed.windows(2).all(|p| p[1].0 == p[0].0 + 1);
        if !contiguous {
            return Err(bad("fixed positions are not contiguous"));
        }
        let word = Word::new(fixed.iter().map(|&(_, s)| s).collect())?;
        Ok(CylinderSet::new(word, start))
    }
}

fn parse_cell(c: char) -> Option<Option<u8>> {
    match c {
        '*' => Some(None),
        _ => c.to_digit(10).filter(|&d| d > 0).map(|d| Some(d as u8)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn orientations() {
        let fut = CylinderSet::future(w("12"));
        assert!(fut.is_future() && !fut.is_past() && !fut.is_two_sided());
        assert_eq!((fut.start(), fut.end()), (1, 2));
        let past = CylinderSet::past(w("212"));
        assert!(past.is_past() && !past.is_future());
        assert_eq!((past.start(), past.end()), (-2, 0));
        let two = CylinderSet::two_sided(&w("1"), &w("21"));
        assert!(two.is_two_sided());
        assert_eq!((two.start(), two.end()), (0, 2));
        let whole = CylinderSet::whole();
        assert!(whole.is_future() && whole.is_past() && !whole.is_two_sided());
    }

    #[test]
    fn membership() {
        let c = CylinderSet::two_sided(&w("12"), &w("1"));
        let s = BiSequence::window_padded(w("121"), -1, 2).unwrap();
        assert!(c.contains(&s));
        assert!(!c.contains(&s.shift(1)));
        assert!(c.contains(&c.member(1)) && c.contains(&c.member(2)));
        assert!(CylinderSet::whole().contains(&s));
    }

    #[test]
    fn subset_is_window_entailment() {
        let parent = CylinderSet::future(w("12"));
        let child = CylinderSet::future(w("121"));
        assert!(child.is_subset_of(&parent));
        assert!(!parent.is_subset_of(&child));
        let corrupted = CylinderSet::future(w("221"));
        assert!(!corrupted.is_subset_of(&parent));
        assert!(parent.is_subset_of(&CylinderSet::whole()));
    }

    #[test]
    fn dotted_notation_round_trips() {
        for text in [".", "12.121", ".12", "121.", ".**12", "21*.", "1."] {
            let c: CylinderSet = text.parse().unwrap();
            assert_eq!(c.to_string(), text);
        }
        let c: CylinderSet = ".**12".parse().unwrap();
        assert_eq!((c.start(), c.end()), (3, 4));
        assert!("1*.1".parse::<CylinderSet>().is_err());
        assert!("12".parse::<CylinderSet>().is_err());
    }

    #[test]
    fn shift_moves_window() {
        let c = CylinderSet::future(w("12"));
        let moved = c.shift(1);
        assert_eq!((moved.start(), moved.end()), (0, 1));
        let s = c.member(1);
        assert!(moved.contains(&s.shift(1)));
    }
}
