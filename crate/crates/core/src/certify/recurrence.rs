//! Returns of the universal member to shrinking neighbourhoods of itself.

use super::{
    check_recomputed, reject, Certificate, Certifier, Evidence, RecurrenceEvidence,
    RecurrenceReturn, UnstableSetId,
};
use crate::symbolic::universal::{enumeration_position, find_block};
use crate::symbolic::{BiSequence, Word};
use crate::{Error, Result};

impl Certifier {
    /// Return times `n_1 < n_2 < ...` with the orbit of the universal member
    /// `u` matching `u` on `[-j, j]` at time `n_j`.
    ///
    /// Each window first reappears either close to the dot, where it
    /// overlaps the fixed past, or inside the enumeration, where block
    /// search finds it no later than its own listed position.
    pub fn poisson_recurrence_witness(&self, unstable: &UnstableSetId, depths: u32) -> Result<Certificate> {
        if depths == 0 {
            return Err(Error::InvalidParameter {
                name: "depths",
                reason: "at least one depth is required".into(),
            });
        }
        let u = unstable.universal_member(self.alphabet);
        let mut returns = Vec::with_capacity(depths as usize);
        let mut last = 0i64;
        for depth in 1..=depths {
            let threshold = self.metric.window_diameter(depth, depth);
            let (steps, distance) = self.next_return(&u, depth, last, threshold)?;
            returns.push(RecurrenceReturn {
                depth,
                steps,
                threshold,
                distance,
            });
            last = steps;
        }
        let cert = self.wrap(Evidence::PoissonRecurrence(RecurrenceEvidence {
            unstable_set: unstable.clone(),
            point: u,
            returns,
        }));
        cert.verify()?;
        Ok(cert)
    }

    fn next_return(
        &self,
        u: &BiSequence,
        depth: u32,
        after: i64,
        threshold: f64,
    ) -> Result<(i64, crate::DistanceBound)> {
        let j = depth as i64;
        let window = u.window(-j, 2 * depth as usize + 1);
        let accept = |n: i64| -> Result<Option<(i64, crate::DistanceBound)>> {
            let d = self.distance(&u.shift(n), u)?;
            Ok((d.upper() < threshold).then_some((n, d)))
        };
        for n in after + 1..=j {
            if u.shift(n).window(-j, window.len()) == window {
                if let Some(hit) = accept(n)? {
                    return Ok(hit);
                }
            }
        }
        // enumeration index e sits at position e + 1, so n = e + 1 + j
        let listed = enumeration_position(self.alphabet, &window);
        let limit = listed.saturating_mul(4).saturating_add(1 << 20);
        let mut from = (after.max(j) - j) as u128;
        while let Some(e) = find_block(self.alphabet, window.as_slice(), from, limit) {
            let n = e as i64 + 1 + j;
            if let Some(hit) = accept(n)? {
                return Ok(hit);
            }
            from = e + 1;
        }
        Err(Error::BlockNotFound(window_label(&window)))
    }
}

fn window_label(w: &Word) -> String {
    format!("recurrence window {w}")
}

pub(super) fn verify(ctx: &Certifier, e: &RecurrenceEvidence) -> Result<()> {
    if e.point != e.unstable_set.universal_member(ctx.alphabet) {
        return Err(Error::NotUniversal);
    }
    if e.returns.is_empty() {
        return reject("no recurrence times".into());
    }
    let mut previous: Option<&RecurrenceReturn> = None;
    for (i, ret) in e.returns.iter().enumerate() {
        if ret.depth as usize != i + 1 {
            return reject(format!("return {i} has depth {}", ret.depth));
        }
        let expected = ctx.metric.window_diameter(ret.depth, ret.depth);
        if ret.threshold != expected {
            return reject(format!(
                "threshold {} at depth {} differs from {expected}",
                ret.threshold, ret.depth
            ));
        }
        if let Some(prev) = previous {
            if ret.steps <= prev.steps || ret.threshold >= prev.threshold {
                return reject(format!("return at depth {} is not monotone", ret.depth));
            }
        } else if ret.steps <= 0 {
            return reject("return times must be positive".into());
        }
        let d = check_recomputed(ctx, "return distance", &ret.distance, &e.point.shift(ret.steps), &e.point)?;
        if d.upper() >= ret.threshold {
            return reject(format!(
                "distance {:?} at depth {} is not below {}",
                d, ret.depth, ret.threshold
            ));
        }
        previous = Some(ret);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::MetricParams;
    use crate::symbolic::Alphabet;

    fn ctx() -> Certifier {
        Certifier::new(Alphabet::BINARY, MetricParams::default(), 1e-12).unwrap()
    }

    fn unstable(block: &str) -> UnstableSetId {
        UnstableSetId::new(BiSequence::periodic(block.parse().unwrap(), 0).unwrap(), Alphabet::BINARY).unwrap()
    }

    #[test]
    fn first_return_matches_scan() {
        for block in ["1", "2", "12", "211"] {
            let u = unstable(block);
            let cert = ctx().poisson_recurrence_witness(&u, 1).unwrap();
            let Evidence::PoissonRecurrence(e) = &cert.evidence else { unreachable!() };
            let point = &e.point;
            let w = point.window(-1, 3);
            let threshold = MetricParams::default().window_diameter(1, 1);
            // scan oracle: first n whose window matches and whose distance clears the threshold
            let scan = (1..100_000)
                .find(|&n| {
                    point.shift(n).window(-1, 3) == w
                        && ctx().distance(&point.shift(n), point).unwrap().upper() < threshold
                })
                .unwrap();
            assert_eq!(e.returns[0].steps, scan, "past {block}");
        }
    }

    #[test]
    fn ten_depths_are_monotone() {
        let cert = ctx().poisson_recurrence_witness(&unstable("12"), 10).unwrap();
        let Evidence::PoissonRecurrence(e) = &cert.evidence else { unreachable!() };
        assert_eq!(e.returns.len(), 10);
        for pair in e.returns.windows(2) {
            assert!(pair[0].steps < pair[1].steps);
            assert!(pair[0].threshold > pair[1].threshold);
        }
        for r in &e.returns {
            assert!(r.distance.upper() < r.threshold);
        }
    }

    #[test]
    fn foreign_points_are_rejected() {
        let cert = ctx().poisson_recurrence_witness(&unstable("1"), 2).unwrap();
        let mut bad = cert.clone();
        if let Evidence::PoissonRecurrence(e) = &mut bad.evidence {
            e.point = BiSequence::constant(1).unwrap();
        }
        assert_eq!(bad.verify(), Err(Error::NotUniversal));
        let mut bad = cert;
        if let Evidence::PoissonRecurrence(e) = &mut bad.evidence {
            e.returns.swap(0, 1);
        }
        assert!(bad.verify().is_err());
        assert!(ctx().poisson_recurrence_witness(&unstable("1"), 0).is_err());
    }
}
