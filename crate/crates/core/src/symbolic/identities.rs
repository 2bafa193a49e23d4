//! Finite-depth checks of the structural identities of the shift:
//! `shift^n(F_{i1..in}) = F`, `shift^-n(F_{i-n+1..i0}) = F` and the nesting
//! chains of future and past cylinders.

use super::{Alphabet, BiSequence, CylinderSet, Word};
use crate::{Error, Result};

/// Checks that `shift^n` maps the length-`n` cylinder `c` onto the whole
/// space, up to words of length `depth - n`.
///
/// For every such word `w` and every pad symbol, a member of `c` is built
/// whose image carries `w` right after the dot (before it, for past
/// cylinders). The image must pull back into `c`.
pub fn similarity_identity_check(c: &CylinderSet, alphabet: Alphabet, depth: usize) -> Result<bool> {
    alphabet.check_word(c.fixed())?;
    let n = c.len();
    if depth < n {
        return Err(Error::InvalidParameter {
            name: "depth",
            reason: format!("depth {depth} is shorter than the cylinder length {n}"),
        });
    }
    let forward = if c.is_future() {
        true
    } else if c.is_past() {
        false
    } else {
        return Err(Error::WrongOrientation {
            start: c.start(),
            end: c.end(),
            expected: "future (start = 1) or past (end = 0) cylinder",
        });
    };
    let steps = if forward { n as i64 } else { -(n as i64) };

    let words = std::iter::once(Word::empty()).chain(alphabet.words_up_to(depth - n));
    for w in words {
        for pad in alphabet.symbols() {
            let member = if forward {
                BiSequence::WindowPadded {
                    window: c.fixed().concat(&w),
                    window_start: 1,
                    pad,
                }
            } else {
                BiSequence::WindowPadded {
                    window: w.concat(c.fixed()),
                    window_start: 1 - (n + w.len()) as i64,
                    pad,
                }
            };
            if !c.contains(&member) {
                return Ok(false);
            }
            let image = member.shift(steps);
            let landed = if forward {
                image.window(1, w.len())
            } else {
                image.window(1 - w.len() as i64, w.len())
            };
            if landed != w || !c.contains(&image.shift(-steps)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Verifies `F ⊇ F_{i1} ⊇ F_{i1 i2} ⊇ ...` and the mirrored past chain for
/// every word shorter than `depth`.
pub fn nesting_check(alphabet: Alphabet, depth: usize) -> bool {
    (0..depth).all(|len| {
        alphabet.words(len).all(|w| {
            let fut_parent = CylinderSet::future(w.clone());
            let past_parent = CylinderSet::past(w.clone());
            alphabet.symbols().all(|s| {
                let one = Word::from_raw(vec![s]);
                CylinderSet::future(w.concat(&one)).is_subset_of(&fut_parent)
                    && CylinderSet::past(one.concat(&w)).is_subset_of(&past_parent)
            })
        })
    })
}
