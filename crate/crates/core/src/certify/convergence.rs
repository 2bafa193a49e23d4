//! Orbit convergence inside stable and unstable sets.

use serde::{Deserialize, Serialize};

use super::{check_recomputed, reject, Certificate, Certifier, ConvergenceEvidence, Evidence, MEMBERSHIP_DEPTH};
use crate::symbolic::BiSequence;
use crate::{Error, Result};

/// Time direction of a convergence claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Stable sets: shared future, shift by `+n`.
    Forward,
    /// Unstable sets: shared past, shift by `-n`.
    Backward,
}

impl Direction {
    fn steps(self, n: usize) -> i64 {
        match self {
            Direction::Forward => n as i64,
            Direction::Backward => -(n as i64),
        }
    }

    fn shares_fixed_side(self, s: &BiSequence, t: &BiSequence) -> bool {
        match self {
            Direction::Forward => (1..=MEMBERSHIP_DEPTH).all(|j| s.symbol_at(j) == t.symbol_at(j)),
            Direction::Backward => (-MEMBERSHIP_DEPTH..=0).all(|j| s.symbol_at(j) == t.symbol_at(j)),
        }
    }
}

impl Certifier {
    pub fn stable_set_convergence(&self, s: &BiSequence, t: &BiSequence, n_max: u32) -> Result<Certificate> {
        self.convergence(s, t, n_max, Direction::Forward)
    }

    pub fn unstable_set_convergence(&self, s: &BiSequence, t: &BiSequence, n_max: u32) -> Result<Certificate> {
        self.convergence(s, t, n_max, Direction::Backward)
    }

    fn convergence(&self, s: &BiSequence, t: &BiSequence, n_max: u32, dir: Direction) -> Result<Certificate> {
        s.validate(self.alphabet)?;
        t.validate(self.alphabet)?;
        if !dir.shares_fixed_side(s, t) {
            return Err(Error::NotInCommonSet(match dir {
                Direction::Forward => "points do not share a future",
                Direction::Backward => "points do not share a past",
            }));
        }
        let mut distances = Vec::with_capacity(n_max as usize + 1);
        let mut bounds = Vec::with_capacity(n_max as usize + 1);
        for n in 0..=n_max as usize {
            let k = dir.steps(n);
            distances.push(self.distance(&s.shift(k), &t.shift(k))?);
            bounds.push(free_weight(self, dir, n));
        }
        let evidence = ConvergenceEvidence {
            first: s.clone(),
            second: t.clone(),
            distances,
            bounds,
        };
        let cert = self.wrap(match dir {
            Direction::Forward => Evidence::StableConvergence(evidence),
            Direction::Backward => Evidence::UnstableConvergence(evidence),
        });
        cert.verify()?;
        Ok(cert)
    }
}

/// Weight of the positions that may still differ after `n` steps.
fn free_weight(ctx: &Certifier, dir: Direction, n: usize) -> f64 {
    match dir {
        Direction::Forward => ctx.metric.sum_to(-(n as i64)),
        Direction::Backward => ctx.metric.sum_from(n as i64 + 1),
    }
}

pub(super) fn verify(ctx: &Certifier, e: &ConvergenceEvidence, dir: Direction) -> Result<()> {
    e.first.validate(ctx.alphabet)?;
    e.second.validate(ctx.alphabet)?;
    if !dir.shares_fixed_side(&e.first, &e.second) {
        return reject("points are not in a common set".into());
    }
    if e.distances.is_empty() || e.distances.len() != e.bounds.len() {
        return reject("distance and bound tables differ in length".into());
    }
    let mut previous = f64::INFINITY;
    for (n, (stored, &bound)) in e.distances.iter().zip(&e.bounds).enumerate() {
        if bound != free_weight(ctx, dir, n) {
            return reject(format!("bound at step {n} is {bound}"));
        }
        let k = dir.steps(n);
        let d = check_recomputed(ctx, "orbit distance", stored, &e.first.shift(k), &e.second.shift(k))?;
        if d.lower() > bound {
            return reject(format!("distance {:?} at step {n} exceeds {bound}", d));
        }
        if d.lower() > previous {
            return reject(format!("distance increases at step {n}"));
        }
        previous = d.upper();
    }
    Ok(())
}
