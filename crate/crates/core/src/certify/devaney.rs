//! Devaney chaos witnesses.

use super::{
    check_recomputed, reject, Certificate, Certifier, Evidence, PeriodicDensityEvidence,
    SensitivityEvidence, TransitivityEvidence, UnstableSetId,
};
use crate::symbolic::universal::{enumeration_position, find_block};
use crate::symbolic::{BiSequence, CylinderSet, ToggleMask};
use crate::{Error, Result};

impl Certifier {
    /// Shift count carrying the universal member of `unstable` into `target`.
    ///
    /// The member's future lists every word, so the target's word occurs at
    /// some enumeration index `e` (position `e + 1`); shifting by
    /// `e + 1 - start` aligns it with the target window.
    pub fn transitivity_witness(&self, unstable: &UnstableSetId, target: &CylinderSet) -> Result<Certificate> {
        self.alphabet.check_word(target.fixed())?;
        let point = unstable.universal_member(self.alphabet);
        let steps = if target.is_whole() {
            0
        } else {
            let word = target.fixed();
            let bound = enumeration_position(self.alphabet, word);
            let e = find_block(self.alphabet, word.as_slice(), 0, bound)
                .ok_or_else(|| Error::BlockNotFound(word.to_string()))?;
            e as i64 + 1 - target.start()
        };
        let cert = self.wrap(Evidence::Transitivity(TransitivityEvidence {
            unstable_set: unstable.clone(),
            point,
            target: target.clone(),
            steps,
        }));
        cert.verify()?;
        Ok(cert)
    }

    /// Periodic point within `delta` of `s`.
    ///
    /// Picks the least `k` with `diam[-k, k] < delta` and repeats the block
    /// `s_-k ... s_k`, aligned so it agrees with `s` on `[-k, k]`.
    pub fn periodic_density_witness(&self, s: &BiSequence, delta: f64) -> Result<Certificate> {
        if delta.is_nan() || delta <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "delta",
                reason: format!("{delta} must be positive"),
            });
        }
        s.validate(self.alphabet)?;
        let mut k = 0u32;
        while self.metric.window_diameter(k, k) >= delta {
            k += 1;
        }
        let periodic = if s.period().is_some() {
            s.clone()
        } else {
            let block = s.window(-(k as i64), 2 * k as usize + 1);
            BiSequence::periodic(block, k as i64)?
        };
        let distance = self.distance(s, &periodic)?;
        let cert = self.wrap(Evidence::PeriodicDensity(PeriodicDensityEvidence {
            point: s.clone(),
            periodic,
            half_width: k,
            delta,
            distance,
            degenerate: delta > self.metric.space_diameter(),
        }));
        cert.verify()?;
        Ok(cert)
    }

    /// A partner within `eps` of `s` whose orbit separates by `epsilon0`.
    ///
    /// The partner agrees with `s` up to position `k` and toggles every
    /// later symbol; after `k` shifts the two points disagree at position 1
    /// onward.
    pub fn sensitivity_witness(&self, s: &BiSequence, eps: f64) -> Result<Certificate> {
        if eps.is_nan() || eps <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "eps",
                reason: format!("{eps} must be positive"),
            });
        }
        s.validate(self.alphabet)?;
        let mut k = 0u32;
        while self.metric.window_diameter(k, k) >= eps {
            k += 1;
        }
        let split = k as i64;
        let partner = BiSequence::toggled(s.clone(), self.alphabet, ToggleMask::From { start: split + 1 });
        let initial = self.distance(s, &partner)?;
        let divergence = self.distance(&s.shift(split), &partner.shift(split))?;
        let cert = self.wrap(Evidence::Sensitivity(SensitivityEvidence {
            point: s.clone(),
            partner,
            eps,
            split,
            initial,
            divergence_steps: split,
            divergence,
            epsilon0: self.epsilon0(),
        }));
        cert.verify()?;
        Ok(cert)
    }
}

pub(super) fn verify_transitivity(ctx: &Certifier, e: &TransitivityEvidence) -> Result<()> {
    e.point.validate(ctx.alphabet)?;
    if !e.unstable_set.contains(&e.point) {
        return reject("transitivity point is not in the unstable set".into());
    }
    if !e.target.contains(&e.point.shift(e.steps)) {
        return reject(format!(
            "shift by {} does not land in target {}",
            e.steps, e.target
        ));
    }
    Ok(())
}

pub(super) fn verify_density(ctx: &Certifier, e: &PeriodicDensityEvidence) -> Result<()> {
    e.point.validate(ctx.alphabet)?;
    e.periodic.validate(ctx.alphabet)?;
    if e.periodic.period().is_none() {
        return reject("density witness is not a periodic point".into());
    }
    let d = check_recomputed(ctx, "density distance", &e.distance, &e.point, &e.periodic)?;
    if d.upper() >= e.delta {
        return reject(format!("distance {:?} is not below delta {}", d, e.delta));
    }
    Ok(())
}

pub(super) fn verify_sensitivity(ctx: &Certifier, e: &SensitivityEvidence) -> Result<()> {
    e.point.validate(ctx.alphabet)?;
    e.partner.validate(ctx.alphabet)?;
    let initial = check_recomputed(ctx, "initial distance", &e.initial, &e.point, &e.partner)?;
    if initial.upper() >= e.eps {
        return reject(format!("initial distance {:?} is not below eps {}", initial, e.eps));
    }
    let divergence = check_recomputed(
        ctx,
        "divergence",
        &e.divergence,
        &e.point.shift(e.divergence_steps),
        &e.partner.shift(e.divergence_steps),
    )?;
    if e.epsilon0 < ctx.epsilon0() {
        return reject(format!("epsilon0 {} exceeds the separation constant", e.epsilon0));
    }
    if divergence.lower() < e.epsilon0 {
        return reject(format!(
            "divergence {:?} is below epsilon0 {}",
            divergence, e.epsilon0
        ));
    }
    Ok(())
}
