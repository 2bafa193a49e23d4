//! Seeded generators for randomized suites.

use rand::Rng;

use crate::certify::UnstableSetId;
use crate::symbolic::{Alphabet, BiSequence, CylinderSet, Word};

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, alphabet: Alphabet, len: usize) -> Word {
    Word::from_raw((0..len).map(|_| rng.gen_range(1..=alphabet.size())).collect())
}

/// A representable sequence: periodic, eventually periodic, or window-padded.
pub fn random_sequence<R: Rng + ?Sized>(rng: &mut R, alphabet: Alphabet) -> BiSequence {
    match rng.gen_range(0..3) {
        0 => {
            let len = rng.gen_range(1..=6);
            let phase = rng.gen_range(0..len as i64);
            BiSequence::Periodic {
                block: random_word(rng, alphabet, len),
                phase,
            }
        }
        1 => {
            let left = rng.gen_range(1..=3);
            let center = rng.gen_range(0..=8);
            let right = rng.gen_range(1..=3);
            BiSequence::EventuallyPeriodic {
                left: random_word(rng, alphabet, left),
                center: random_word(rng, alphabet, center),
                center_start: rng.gen_range(-6..=2),
                right: random_word(rng, alphabet, right),
            }
        }
        _ => {
            let len = rng.gen_range(1..=8);
            BiSequence::WindowPadded {
                window: random_word(rng, alphabet, len),
                window_start: rng.gen_range(-6..=2),
                pad: rng.gen_range(1..=alphabet.size()),
            }
        }
    }
}

/// An unstable set whose past is periodic or padded.
pub fn random_unstable_set<R: Rng + ?Sized>(rng: &mut R, alphabet: Alphabet) -> UnstableSetId {
    let past = if rng.gen_bool(0.5) {
        let len = rng.gen_range(1..=4);
        BiSequence::Periodic {
            block: random_word(rng, alphabet, len),
            phase: rng.gen_range(0..len as i64),
        }
    } else {
        let len = rng.gen_range(1..=5);
        BiSequence::WindowPadded {
            window: random_word(rng, alphabet, len),
            window_start: 1 - len as i64,
            pad: rng.gen_range(1..=alphabet.size()),
        }
    };
    UnstableSetId::new(past, alphabet).expect("generated past is valid")
}

/// A cylinder on `[-k, n]` with `k <= max_back` and `1 <= n <= max_forward`.
pub fn random_target<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: Alphabet,
    max_back: u32,
    max_forward: u32,
) -> CylinderSet {
    let k = rng.gen_range(0..=max_back) as i64;
    let n = rng.gen_range(1..=max_forward.max(1)) as i64;
    CylinderSet::new(random_word(rng, alphabet, (k + n + 1) as usize), -k)
}

/// Two members of `cylinder` that disagree at every free position within
/// `spread` of its window and have independent random tails beyond.
pub fn adversarial_pair<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: Alphabet,
    cylinder: &CylinderSet,
    spread: usize,
) -> (BiSequence, BiSequence) {
    let start = cylinder.start() - spread as i64;
    let len = cylinder.len() + 2 * spread;
    let base = random_word(rng, alphabet, len);
    let mut a = Vec::with_capacity(len);
    let mut b = Vec::with_capacity(len);
    for (i, sym) in base.iter().enumerate() {
        match cylinder.symbol_at(start + i as i64) {
            Some(fixed) => {
                a.push(fixed);
                b.push(fixed);
            }
            None => {
                a.push(sym);
                b.push(alphabet.flip(sym));
            }
        }
    }
    let mut side = |center: Vec<u8>| {
        let l = rng.gen_range(1..=3);
        let r = rng.gen_range(1..=3);
        BiSequence::EventuallyPeriodic {
            left: random_word(rng, alphabet, l),
            center: Word::from_raw(center),
            center_start: start,
            right: random_word(rng, alphabet, r),
        }
    };
    let s = side(a);
    let t = side(b);
    (s, t)
}

/// A periodic point over `alphabet` with block length in `1..=max_period`.
pub fn random_periodic<R: Rng + ?Sized>(rng: &mut R, alphabet: Alphabet, max_period: usize) -> BiSequence {
    let len = rng.gen_range(1..=max_period.max(1));
    BiSequence::Periodic {
        block: random_word(rng, alphabet, len),
        phase: rng.gen_range(0..len as i64),
    }
}
