//! Fixtures shared by the criterion benches.

use hyperchaos_core::certify::{Certifier, UnstableSetId};
use hyperchaos_core::symbolic::ToggleMask;
use hyperchaos_core::{Alphabet, BiSequence, MetricParams, Word};

pub fn certifier() -> Certifier {
    Certifier::new(Alphabet::BINARY, MetricParams::default(), 1e-12).expect("valid defaults")
}

pub fn unstable_set() -> UnstableSetId {
    let past = BiSequence::periodic(Word::new(vec![2, 1, 1]).expect("valid word"), 0).expect("valid block");
    UnstableSetId::new(past, Alphabet::BINARY).expect("periodic past")
}

/// The universal member and a copy toggled from position 40 on.
pub fn truncated_pair() -> (BiSequence, BiSequence) {
    let s = unstable_set().universal_member(Alphabet::BINARY);
    let t = BiSequence::toggled(s.clone(), Alphabet::BINARY, ToggleMask::From { start: 40 });
    (s, t)
}

/// Two eventually periodic sequences with coprime tail periods.
pub fn closed_form_pair() -> (BiSequence, BiSequence) {
    let w = |v: Vec<u8>| Word::new(v).expect("valid word");
    let s = BiSequence::eventually_periodic(w(vec![1, 2]), w(vec![2, 2, 1]), -1, w(vec![1, 1, 2])).expect("valid");
    let t = BiSequence::eventually_periodic(w(vec![2, 2, 1]), w(vec![1]), 0, w(vec![2, 1, 1, 2, 1])).expect("valid");
    (s, t)
}
