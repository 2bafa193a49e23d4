use serde::{Deserialize, Serialize};

use super::universal;
use super::{Alphabet, Word};
use crate::{Error, Result};

/// A bi-infinite symbol sequence given by a finite generator.
///
/// Positions range over all integers; the present-time dot sits between
/// positions 0 and 1. [`BiSequence::shift`] by one moves the dot right, so
/// `shift(s, 1).symbol_at(j) == s.symbol_at(j + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BiSequence {
    /// `symbol_at(j) = block[(j + phase) mod |block|]`.
    Periodic { block: Word, phase: i64 },
    /// `left` repeated up to `center_start - 1`, then `center`, then `right` repeated.
    EventuallyPeriodic {
        left: Word,
        center: Word,
        center_start: i64,
        right: Word,
    },
    /// Length-lexicographic concatenation of every word, beginning at `origin`;
    /// positions left of `origin` carry symbol 1.
    Universal { alphabet: Alphabet, origin: i64 },
    /// `window` at positions `window_start..`, `pad` everywhere else.
    WindowPadded {
        window: Word,
        window_start: i64,
        pad: u8,
    },
    /// `past` at positions `<= cut`, `future` at positions `> cut`.
    Spliced {
        past: Box<BiSequence>,
        future: Box<BiSequence>,
        cut: i64,
    },
    /// `base` with every masked position replaced by its cyclic successor.
    Toggled {
        base: Box<BiSequence>,
        alphabet: Alphabet,
        mask: ToggleMask,
    },
}

/// Positions rewritten by [`BiSequence::Toggled`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mask", rename_all = "snake_case")]
pub enum ToggleMask {
    /// Every position `>= start`.
    From { start: i64 },
    /// Positions `start..start + len`.
    Window { start: i64, len: u64 },
    /// From `start` on, alternating agreement and toggle blocks of lengths
    /// 1, 1, 2, 2, 4, 4, ...; toggle blocks are the second of each pair.
    Dyadic { start: i64 },
}

impl ToggleMask {
    pub fn contains(&self, j: i64) -> bool {
        match *self {
            ToggleMask::From { start } => j >= start,
            ToggleMask::Window { start, len } => j >= start && ((j - start) as u64) < len,
            ToggleMask::Dyadic { start } => {
                if j < start {
                    return false;
                }
                let (level, local) = dyadic_block(j - start);
                local >= 1u64 << level
            }
        }
    }

    fn shifted(self, steps: i64) -> Self {
        match self {
            ToggleMask::From { start } => ToggleMask::From { start: start - steps },
            ToggleMask::Window { start, len } => ToggleMask::Window {
                start: start - steps,
                len,
            },
            ToggleMask::Dyadic { start } => ToggleMask::Dyadic { start: start - steps },
        }
    }
}

/// For an offset into the dyadic layout, returns `(i, local)`: the offset lies in
/// block pair `i` (agreement length `2^i` then toggle length `2^i`) at `local`.
pub(crate) fn dyadic_block(offset: i64) -> (u32, u64) {
    let o = offset as u64 + 2;
    let level = 63 - o.leading_zeros() - 1;
    (level, o - (1u64 << (level + 1)))
}

/// Eventual periodicity of one side of a sequence.
///
/// A right tail promises `s(j + period) == s(j)` for every `j >= anchor`;
/// a left tail promises `s(j - period) == s(j)` for every `j <= anchor`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tail {
    pub anchor: i64,
    pub period: u64,
}

impl BiSequence {
    pub fn periodic(block: Word, phase: i64) -> Result<Self> {
        if block.is_empty() {
            return Err(Error::EmptyWord("periodic block"));
        }
        let phase = phase.rem_euclid(block.len() as i64);
        Ok(BiSequence::Periodic { block, phase })
    }

    pub fn eventually_periodic(
        left: Word,
        center: Word,
        center_start: i64,
        right: Word,
    ) -> Result<Self> {
        if left.is_empty() {
            return Err(Error::EmptyWord("left block"));
        }
        if right.is_empty() {
            return Err(Error::EmptyWord("right block"));
        }
        Ok(BiSequence::EventuallyPeriodic {
            left,
            center,
            center_start,
            right,
        })
    }

    pub fn window_padded(window: Word, window_start: i64, pad: u8) -> Result<Self> {
        if pad == 0 {
            return Err(Error::SymbolOutOfRange { symbol: 0, m: 0 });
        }
        Ok(BiSequence::WindowPadded {
            window,
            window_start,
            pad,
        })
    }

    pub fn constant(symbol: u8) -> Result<Self> {
        BiSequence::periodic(Word::new(vec![symbol])?, 0)
    }

    pub fn spliced(past: BiSequence, future: BiSequence, cut: i64) -> Self {
        BiSequence::Spliced {
            past: Box::new(past),
            future: Box::new(future),
            cut,
        }
    }

    pub fn toggled(base: BiSequence, alphabet: Alphabet, mask: ToggleMask) -> Self {
        BiSequence::Toggled {
            base: Box::new(base),
            alphabet,
            mask,
        }
    }

    /// Symbol at position `j`.
    pub fn symbol_at(&self, j: i64) -> u8 {
        match self {
            BiSequence::Periodic { block, phase } => {
                block[(j + phase).rem_euclid(block.len() as i64) as usize]
            }
            BiSequence::EventuallyPeriodic {
                left,
                center,
                center_start,
                right,
            } => {
                let end = center_start + center.len() as i64;
                if j < *center_start {
                    left[(j - center_start).rem_euclid(left.len() as i64) as usize]
                } else if j >= end {
                    right[((j - end) as u64 % right.len() as u64) as usize]
                } else {
                    center[(j - center_start) as usize]
                }
            }
            BiSequence::Universal { alphabet, origin } => {
                if j < *origin {
                    1
                } else {
                    universal::symbol_at_index(*alphabet, (j - origin) as u128)
                }
            }
            BiSequence::WindowPadded {
                window,
                window_start,
                pad,
            } => {
                let offset = j - window_start;
                if offset >= 0 && (offset as usize) < window.len() {
                    window[offset as usize]
                } else {
                    *pad
                }
            }
            BiSequence::Spliced { past, future, cut } => {
                if j <= *cut {
                    past.symbol_at(j)
                } else {
                    future.symbol_at(j)
                }
            }
            BiSequence::Toggled {
                base,
                alphabet,
                mask,
            } => {
                let s = base.symbol_at(j);
                if mask.contains(j) {
                    alphabet.flip(s)
                } else {
                    s
                }
            }
        }
    }

    /// The block at positions `start..start + len`.
    pub fn window(&self, start: i64, len: usize) -> Word {
        Word::from_raw((0..len as i64).map(|i| self.symbol_at(start + i)).collect())
    }

    /// Iterates the similarity map: `shift(s, n).symbol_at(j) == s.symbol_at(j + n)`.
    pub fn shift(&self, steps: i64) -> BiSequence {
        if steps == 0 {
            return self.clone();
        }
        match self {
            BiSequence::Periodic { block, phase } => BiSequence::Periodic {
                block: block.clone(),
                phase: (phase + steps).rem_euclid(block.len() as i64),
            },
            BiSequence::EventuallyPeriodic {
                left,
                center,
                center_start,
                right,
            } => BiSequence::EventuallyPeriodic {
                left: left.clone(),
                center: center.clone(),
                center_start: center_start - steps,
                right: right.clone(),
            },
            BiSequence::Universal { alphabet, origin } => BiSequence::Universal {
                alphabet: *alphabet,
                origin: origin - steps,
            },
            BiSequence::WindowPadded {
                window,
                window_start,
                pad,
            } => BiSequence::WindowPadded {
                window: window.clone(),
                window_start: window_start - steps,
                pad: *pad,
            },
            BiSequence::Spliced { past, future, cut } => BiSequence::Spliced {
                past: Box::new(past.shift(steps)),
                future: Box::new(future.shift(steps)),
                cut: cut - steps,
            },
            BiSequence::Toggled {
                base,
                alphabet,
                mask,
            } => BiSequence::Toggled {
                base: Box::new(base.shift(steps)),
                alphabet: *alphabet,
                mask: mask.shifted(steps),
            },
        }
    }

    /// Period if the sequence is a [`BiSequence::Periodic`] point.
    pub fn period(&self) -> Option<usize> {
        match self {
            BiSequence::Periodic { block, .. } => Some(block.len()),
            _ => None,
        }
    }

    pub fn right_tail(&self) -> Option<Tail> {
        match self {
            BiSequence::Periodic { block, .. } => Some(Tail {
                anchor: 1,
                period: block.len() as u64,
            }),
            BiSequence::EventuallyPeriodic {
                center,
                center_start,
                right,
                ..
            } => Some(Tail {
                anchor: center_start + center.len() as i64,
                period: right.len() as u64,
            }),
            BiSequence::WindowPadded {
                window,
                window_start,
                ..
            } => Some(Tail {
                anchor: window_start + window.len() as i64,
                period: 1,
            }),
            BiSequence::Universal { .. } => None,
            BiSequence::Spliced { future, cut, .. } => future.right_tail().map(|t| Tail {
                anchor: t.anchor.max(cut + 1),
                period: t.period,
            }),
            BiSequence::Toggled { base, mask, .. } => {
                let t = base.right_tail()?;
                let anchor = match *mask {
                    ToggleMask::From { start } => t.anchor.max(start),
                    ToggleMask::Window { start, len } => t.anchor.max(start + len as i64),
                    ToggleMask::Dyadic { .. } => return None,
                };
                Some(Tail {
                    anchor,
                    period: t.period,
                })
            }
        }
    }

    pub fn left_tail(&self) -> Option<Tail> {
        match self {
            BiSequence::Periodic { block, .. } => Some(Tail {
                anchor: 0,
                period: block.len() as u64,
            }),
            BiSequence::EventuallyPeriodic {
                left, center_start, ..
            } => Some(Tail {
                anchor: center_start - 1,
                period: left.len() as u64,
            }),
            BiSequence::WindowPadded { window_start, .. } => Some(Tail {
                anchor: window_start - 1,
                period: 1,
            }),
            BiSequence::Universal { origin, .. } => Some(Tail {
                anchor: origin - 1,
                period: 1,
            }),
            BiSequence::Spliced { past, cut, .. } => past.left_tail().map(|t| Tail {
                anchor: t.anchor.min(*cut),
                period: t.period,
            }),
            BiSequence::Toggled { base, mask, .. } => {
                let t = base.left_tail()?;
                let start = match *mask {
                    ToggleMask::From { start }
                    | ToggleMask::Window { start, .. }
                    | ToggleMask::Dyadic { start } => start,
                };
                Some(Tail {
                    anchor: t.anchor.min(start - 1),
                    period: t.period,
                })
            }
        }
    }

    /// Checks every stored symbol against `alphabet`.
    pub fn validate(&self, alphabet: Alphabet) -> Result<()> {
        match self {
            BiSequence::Periodic { block, .. } => {
                if block.is_empty() {
                    return Err(Error::EmptyWord("periodic block"));
                }
                alphabet.check_word(block)
            }
            BiSequence::EventuallyPeriodic {
                left,
                center,
                right,
                ..
            } => {
                if left.is_empty() || right.is_empty() {
                    return Err(Error::EmptyWord("eventually periodic tail"));
                }
                alphabet.check_word(left)?;
                alphabet.check_word(center)?;
                alphabet.check_word(right)
            }
            BiSequence::Universal { alphabet: own, .. } => {
                if own.size() > alphabet.size() {
                    return Err(Error::SymbolOutOfRange {
                        symbol: own.size(),
                        m: alphabet.size(),
                    });
                }
                Ok(())
            }
            BiSequence::WindowPadded { window, pad, .. } => {
                alphabet.check_symbol(*pad)?;
                alphabet.check_word(window)
            }
            BiSequence::Spliced { past, future, .. } => {
                past.validate(alphabet)?;
                future.validate(alphabet)
            }
            BiSequence::Toggled {
                base,
                alphabet: own,
                ..
            } => {
                if own.size() > alphabet.size() {
                    return Err(Error::SymbolOutOfRange {
                        symbol: own.size(),
                        m: alphabet.size(),
                    });
                }
                base.validate(*own)
            }
        }
    }

    pub fn is_universal(&self) -> bool {
        matches!(self, BiSequence::Universal { .. })
    }
}

/// The periodic point repeating `block`, which occupies positions `1..=|block|`.
pub fn periodic_point(block: Word) -> Result<BiSequence> {
    BiSequence::periodic(block, -1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn periodic_symbols() {
        let s = BiSequence::periodic(w("12"), 0).unwrap();
        assert_eq!(s.symbol_at(0), 1);
        assert_eq!(s.symbol_at(1), 2);
        assert_eq!(s.symbol_at(2), 1);
        assert_eq!(s.symbol_at(-1), 2);
    }

    #[test]
    fn window_padded_symbols() {
        let s = BiSequence::window_padded(w("2"), 0, 1).unwrap();
        assert_eq!(s.symbol_at(0), 2);
        assert_eq!(s.symbol_at(5), 1);
        assert_eq!(s.symbol_at(-5), 1);
    }

    #[test]
    fn eventually_periodic_layout() {
        let s = BiSequence::eventually_periodic(w("12"), w("333"), 0, w("21")).unwrap();
        let got: Vec<u8> = (-4..7).map(|j| s.symbol_at(j)).collect();
        assert_eq!(got, [1, 2, 1, 2, 3, 3, 3, 2, 1, 2, 1]);
    }

    #[test]
    fn shift_moves_the_dot_right() {
        // ...1 1 1 . 2 1 1...
        let s = BiSequence::window_padded(w("111211"), -2, 1).unwrap();
        assert_eq!(s.symbol_at(1), 2);
        let t = s.shift(1);
        assert_eq!(t.symbol_at(0), 2);
        assert_eq!(t.symbol_at(1), 1);
    }

    #[test]
    fn shift_zero_is_identity_and_period_two_returns() {
        let s = BiSequence::periodic(w("12"), 0).unwrap();
        assert_eq!(s.shift(0), s);
        assert_eq!(s.shift(2), s);
        assert_ne!(s.shift(1), s);
    }

    #[test]
    fn periodic_point_places_block_after_dot() {
        let p = periodic_point(w("122")).unwrap();
        assert_eq!(p.window(1, 3), w("122"));
        assert_eq!(p.shift(3), p);
        let once = p.shift(1);
        assert!((-20..=20).any(|j| once.symbol_at(j) != p.symbol_at(j)));
        assert!(periodic_point(Word::empty()).is_err());
        let constant = periodic_point(w("1")).unwrap();
        assert!((-10..10).all(|j| constant.symbol_at(j) == 1));
    }

    #[test]
    fn dyadic_layout() {
        let mask = ToggleMask::Dyadic { start: 1 };
        let toggled: Vec<bool> = (1..=14).map(|j| mask.contains(j)).collect();
        // A D AA DD AAAA DDDD
        let expected = [
            false, true, false, false, true, true, false, false, false, false, true, true, true,
            true,
        ];
        assert_eq!(toggled, expected);
        assert!(!mask.contains(0));
    }

    #[test]
    fn toggled_flips_masked_positions() {
        let base = BiSequence::constant(1).unwrap();
        let t = BiSequence::toggled(base, Alphabet::BINARY, ToggleMask::From { start: 3 });
        assert_eq!(t.window(0, 5), w("11122"));
        assert_eq!(t.shift(2).window(0, 3), w("122"));
    }

    #[test]
    fn spliced_joins_past_and_future() {
        let s = BiSequence::spliced(
            BiSequence::constant(2).unwrap(),
            BiSequence::constant(1).unwrap(),
            0,
        );
        assert_eq!(s.window(-1, 4), w("2211"));
        assert_eq!(s.shift(-1).window(-1, 4), w("2221"));
    }

    #[test]
    fn tails_hold_past_their_anchor() {
        let a = Alphabet::new(3).unwrap();
        let seqs = [
            BiSequence::periodic(w("123"), 1).unwrap(),
            BiSequence::eventually_periodic(w("12"), w("3"), 4, w("321")).unwrap(),
            BiSequence::window_padded(w("23"), -3, 2).unwrap(),
            BiSequence::spliced(
                BiSequence::periodic(w("13"), 0).unwrap(),
                BiSequence::window_padded(w("3"), 5, 1).unwrap(),
                2,
            ),
            BiSequence::toggled(
                BiSequence::periodic(w("12"), 0).unwrap(),
                a,
                ToggleMask::Window { start: -2, len: 3 },
            ),
        ];
        for s in &seqs {
            let r = s.right_tail().unwrap();
            for j in r.anchor..r.anchor + 30 {
                assert_eq!(s.symbol_at(j), s.symbol_at(j + r.period as i64), "{s:?} at {j}");
            }
            let l = s.left_tail().unwrap();
            for j in l.anchor - 30..=l.anchor {
                assert_eq!(s.symbol_at(j), s.symbol_at(j - l.period as i64), "{s:?} at {j}");
            }
            assert!(s.validate(a).is_ok());
        }
    }

    #[test]
    fn validate_catches_out_of_range() {
        let s = BiSequence::window_padded(w("13"), 0, 1).unwrap();
        assert!(s.validate(Alphabet::BINARY).is_err());
        assert!(s.validate(Alphabet::new(3).unwrap()).is_ok());
    }
}
