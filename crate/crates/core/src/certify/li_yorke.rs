//! Dyadic scrambled pairs.

use super::{check_recomputed, reject, Certificate, Certifier, Evidence, LiYorkeEvidence, UnstableSetId};
use crate::metric::{DistanceBound, MetricParams};
use crate::symbolic::{BiSequence, ToggleMask};
use crate::{Error, Result};

/// Smallest horizon accepted by [`Certifier::li_yorke_pair`].
pub const MIN_HORIZON: u64 = 10;

/// Distance bound at the centre of the longest agreement block reachable
/// within `horizon` shifts.
///
/// Agreement block `J` has length `L = 2^J` and starts at position
/// `2^(J+1) - 1`. Shifting to its centre `a + L/2` leaves every mismatch at
/// least `L/2 + 1` steps left of the dot or `L - L/2` steps right of it.
pub fn dyadic_proximal_threshold(metric: MetricParams, horizon: u64) -> Result<f64> {
    let (_, h, len) = centre_for(horizon).ok_or_else(|| Error::InvalidParameter {
        name: "horizon",
        reason: format!("{horizon} reaches no agreement block"),
    })?;
    Ok(metric.sum_to(-h - 1) + metric.sum_from(len - h))
}

/// `(centre, half, length)` of the last agreement block whose centre is within `horizon`.
fn centre_for(horizon: u64) -> Option<(i64, i64, i64)> {
    let mut best = None;
    for level in 0..62u32 {
        let len = 1i64 << level;
        let start = (1i64 << (level + 1)) - 1;
        let centre = start + len / 2;
        if centre as u64 > horizon {
            break;
        }
        best = Some((centre, len / 2, len));
    }
    best
}

impl Certifier {
    /// The universal member of `unstable` paired with its copy toggled on
    /// every dyadic disagreement block.
    pub fn li_yorke_pair(&self, unstable: &UnstableSetId, horizon: u64) -> Result<Certificate> {
        if horizon < MIN_HORIZON {
            return Err(Error::InvalidParameter {
                name: "horizon",
                reason: format!("{horizon} is below {MIN_HORIZON}"),
            });
        }
        let first = unstable.universal_member(self.alphabet);
        let second = BiSequence::toggled(first.clone(), self.alphabet, ToggleMask::Dyadic { start: 1 });
        let threshold = dyadic_proximal_threshold(self.metric, horizon)?;
        self.li_yorke_certify_pair(&first, &second, horizon, threshold)
    }

    /// Scans `n = 0..=horizon` for the closest and farthest orbit points and
    /// certifies `min < threshold` and `max >= epsilon0`.
    pub fn li_yorke_certify_pair(
        &self,
        s: &BiSequence,
        t: &BiSequence,
        horizon: u64,
        threshold: f64,
    ) -> Result<Certificate> {
        if s == t {
            return Err(Error::Degenerate("scrambled pair needs two distinct points"));
        }
        if threshold.is_nan() || threshold <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "threshold",
                reason: format!("{threshold} must be positive"),
            });
        }
        s.validate(self.alphabet)?;
        t.validate(self.alphabet)?;
        let tol = self.tolerance.min(threshold / 16.0);
        let mut min: Option<(i64, DistanceBound)> = None;
        let mut max: Option<(i64, DistanceBound)> = None;
        for n in 0..=horizon as i64 {
            let d = self.metric.distance(&s.shift(n), &t.shift(n), tol)?;
            if min.is_none_or(|(_, m)| d.upper() < m.upper()) {
                min = Some((n, d));
            }
            if max.is_none_or(|(_, m)| d.lower() > m.lower()) {
                max = Some((n, d));
            }
        }
        let (min_step, min_distance) = min.expect("horizon range is non-empty");
        let (max_step, max_distance) = max.expect("horizon range is non-empty");
        let cert = self.wrap_with(
            Evidence::LiYorke(LiYorkeEvidence {
                first: s.clone(),
                second: t.clone(),
                horizon,
                proximal_threshold: threshold,
                min_step,
                min_distance,
                max_step,
                max_distance,
                epsilon0: self.epsilon0(),
            }),
            tol,
        );
        cert.verify()?;
        Ok(cert)
    }
}

pub(super) fn verify(ctx: &Certifier, e: &LiYorkeEvidence) -> Result<()> {
    e.first.validate(ctx.alphabet)?;
    e.second.validate(ctx.alphabet)?;
    if e.first == e.second {
        return reject("scrambled pair is degenerate".into());
    }
    for step in [e.min_step, e.max_step] {
        if step < 0 || step as u64 > e.horizon {
            return reject(format!("step {step} is outside 0..={}", e.horizon));
        }
    }
    let near = check_recomputed(
        ctx,
        "proximal distance",
        &e.min_distance,
        &e.first.shift(e.min_step),
        &e.second.shift(e.min_step),
    )?;
    if near.upper() >= e.proximal_threshold {
        return reject(format!(
            "distance {:?} at step {} is not below {}",
            near, e.min_step, e.proximal_threshold
        ));
    }
    let far = check_recomputed(
        ctx,
        "separated distance",
        &e.max_distance,
        &e.first.shift(e.max_step),
        &e.second.shift(e.max_step),
    )?;
    if e.epsilon0 < ctx.epsilon0() {
        return reject(format!("epsilon0 {} exceeds the separation constant", e.epsilon0));
    }
    if far.lower() < e.epsilon0 {
        return reject(format!(
            "distance {:?} at step {} is below epsilon0 {}",
            far, e.max_step, e.epsilon0
        ));
    }
    Ok(())
}
