//! Finite-depth chaos witnesses on unstable sets.
//!
//! A [`Certifier`] builds one [`Certificate`] per claim; [`CertificateKind`]
//! lists the claims. Every certificate stores its witnesses together with
//! the tolerance it was built with, and [`Certificate::verify`] recomputes
//! every claim from those alone.

mod convergence;
mod devaney;
mod li_yorke;
mod recurrence;

use serde::{Deserialize, Serialize};

use crate::metric::{DistanceBound, MetricParams};
use crate::symbolic::{Alphabet, BiSequence, CylinderSet};
use crate::{Error, Result};

pub use convergence::Direction;
pub use li_yorke::dyadic_proximal_threshold;

pub const SCHEMA_VERSION: u32 = 1;

/// Positions compared when checking membership in a stable or unstable set.
pub const MEMBERSHIP_DEPTH: i64 = 512;

/// The unstable set `F_{...i_-1 i_0}`: all points sharing `past` at every
/// position `<= 0`, with free futures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnstableSetId {
    past: BiSequence,
}

impl UnstableSetId {
    pub fn new(past: BiSequence, alphabet: Alphabet) -> Result<Self> {
        past.validate(alphabet)?;
        if past.left_tail().is_none() {
            return Err(Error::InvalidParameter {
                name: "past",
                reason: "past tail must be eventually periodic".into(),
            });
        }
        Ok(UnstableSetId { past })
    }

    pub fn past(&self) -> &BiSequence {
        &self.past
    }

    /// The member with the given future (positions `>= 1`).
    pub fn member(&self, future: BiSequence) -> BiSequence {
        BiSequence::spliced(self.past.clone(), future, 0)
    }

    /// The member whose future is the universal enumeration, starting at position 1.
    pub fn universal_member(&self, alphabet: Alphabet) -> BiSequence {
        self.member(BiSequence::Universal { alphabet, origin: 1 })
    }

    pub fn contains(&self, s: &BiSequence) -> bool {
        (-MEMBERSHIP_DEPTH..=0).all(|j| s.symbol_at(j) == self.past.symbol_at(j))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Transitivity,
    PeriodicDensity,
    Sensitivity,
    PoissonRecurrence,
    LiYorke,
    StableConvergence,
    UnstableConvergence,
}

impl CertificateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::Transitivity => "transitivity",
            CertificateKind::PeriodicDensity => "periodic_density",
            CertificateKind::Sensitivity => "sensitivity",
            CertificateKind::PoissonRecurrence => "poisson_recurrence",
            CertificateKind::LiYorke => "li_yorke",
            CertificateKind::StableConvergence => "stable_convergence",
            CertificateKind::UnstableConvergence => "unstable_convergence",
        }
    }
}

impl std::fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: u32,
    pub alphabet: Alphabet,
    pub metric: MetricParams,
    /// Truncation tolerance of every stored distance.
    pub tolerance: f64,
    #[serde(flatten)]
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Transitivity(TransitivityEvidence),
    PeriodicDensity(PeriodicDensityEvidence),
    Sensitivity(SensitivityEvidence),
    PoissonRecurrence(RecurrenceEvidence),
    LiYorke(LiYorkeEvidence),
    StableConvergence(ConvergenceEvidence),
    UnstableConvergence(ConvergenceEvidence),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitivityEvidence {
    pub unstable_set: UnstableSetId,
    pub point: BiSequence,
    pub target: CylinderSet,
    pub steps: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodicDensityEvidence {
    pub point: BiSequence,
    pub periodic: BiSequence,
    /// The periodic point repeats the block on `[-half_width, half_width]`.
    pub half_width: u32,
    pub delta: f64,
    pub distance: DistanceBound,
    /// `delta` exceeds the diameter of the whole space.
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SensitivityEvidence {
    pub point: BiSequence,
    pub partner: BiSequence,
    pub eps: f64,
    /// The partner agrees with the point on every position `<= split`.
    pub split: i64,
    pub initial: DistanceBound,
    pub divergence_steps: i64,
    pub divergence: DistanceBound,
    pub epsilon0: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceReturn {
    /// The orbit matches the point on the window `[-depth, depth]`.
    pub depth: u32,
    pub steps: i64,
    pub threshold: f64,
    pub distance: DistanceBound,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceEvidence {
    pub unstable_set: UnstableSetId,
    pub point: BiSequence,
    pub returns: Vec<RecurrenceReturn>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiYorkeEvidence {
    pub first: BiSequence,
    pub second: BiSequence,
    pub horizon: u64,
    pub proximal_threshold: f64,
    pub min_step: i64,
    pub min_distance: DistanceBound,
    pub max_step: i64,
    pub max_distance: DistanceBound,
    pub epsilon0: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceEvidence {
    pub first: BiSequence,
    pub second: BiSequence,
    /// `distances[n]` is the distance after `n` steps in the set's direction.
    pub distances: Vec<DistanceBound>,
    /// `bounds[n]` is the weight of the positions that can still differ.
    pub bounds: Vec<f64>,
}

impl Certificate {
    pub fn kind(&self) -> CertificateKind {
        match &self.evidence {
            Evidence::Transitivity(_) => CertificateKind::Transitivity,
            Evidence::PeriodicDensity(_) => CertificateKind::PeriodicDensity,
            Evidence::Sensitivity(_) => CertificateKind::Sensitivity,
            Evidence::PoissonRecurrence(_) => CertificateKind::PoissonRecurrence,
            Evidence::LiYorke(_) => CertificateKind::LiYorke,
            Evidence::StableConvergence(_) => CertificateKind::StableConvergence,
            Evidence::UnstableConvergence(_) => CertificateKind::UnstableConvergence,
        }
    }

    /// One-number summary for tables: the quantity the certificate bounds.
    pub fn headline(&self) -> f64 {
        match &self.evidence {
            Evidence::Transitivity(e) => e.steps as f64,
            Evidence::PeriodicDensity(e) => e.distance.value,
            Evidence::Sensitivity(e) => e.divergence.value,
            Evidence::PoissonRecurrence(e) => e.returns.last().map_or(0.0, |r| r.distance.value),
            Evidence::LiYorke(e) => e.min_distance.value,
            Evidence::StableConvergence(e) | Evidence::UnstableConvergence(e) => {
                e.distances.last().map_or(0.0, |d| d.value)
            }
        }
    }

    /// Recomputes every stored claim from the stored witnesses.
    pub fn verify(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return reject(format!("unsupported schema {}", self.schema));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return reject("tolerance must be positive".into());
        }
        let ctx = Certifier::new(self.alphabet, self.metric, self.tolerance)?;
        match &self.evidence {
            Evidence::Transitivity(e) => devaney::verify_transitivity(&ctx, e),
            Evidence::PeriodicDensity(e) => devaney::verify_density(&ctx, e),
            Evidence::Sensitivity(e) => devaney::verify_sensitivity(&ctx, e),
            Evidence::PoissonRecurrence(e) => recurrence::verify(&ctx, e),
            Evidence::LiYorke(e) => li_yorke::verify(&ctx, e),
            Evidence::StableConvergence(e) => convergence::verify(&ctx, e, Direction::Forward),
            Evidence::UnstableConvergence(e) => convergence::verify(&ctx, e, Direction::Backward),
        }
    }
}

pub(crate) fn reject<T>(reason: String) -> Result<T> {
    Err(Error::CertificateRejected(reason))
}

/// Checks that a recomputed distance reproduces a stored one.
pub(crate) fn check_recomputed(
    ctx: &Certifier,
    label: &str,
    stored: &DistanceBound,
    s: &BiSequence,
    t: &BiSequence,
) -> Result<DistanceBound> {
    let fresh = ctx.distance(s, t)?;
    if (fresh.value - stored.value).abs() > ctx.tolerance || fresh.error > stored.error.max(ctx.tolerance) {
        return reject(format!(
            "{label}: stored {:?} but recomputed {:?}",
            stored, fresh
        ));
    }
    Ok(fresh)
}

/// Shared parameters for building and verifying certificates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Certifier {
    pub alphabet: Alphabet,
    pub metric: MetricParams,
    pub tolerance: f64,
}

impl Certifier {
    pub fn new(alphabet: Alphabet, metric: MetricParams, tolerance: f64) -> Result<Self> {
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "tolerance",
                reason: format!("{tolerance} must be positive and finite"),
            });
        }
        Ok(Certifier {
            alphabet,
            metric,
            tolerance,
        })
    }

    pub fn distance(&self, s: &BiSequence, t: &BiSequence) -> Result<DistanceBound> {
        self.metric.distance(s, t, self.tolerance)
    }

    /// Separation constant used by sensitivity and Li–Yorke claims.
    pub fn epsilon0(&self) -> f64 {
        self.metric
            .check_separation(self.alphabet, 1)
            .map(|r| r.epsilon0)
            .unwrap_or_else(|_| self.metric.weight(1))
    }

    fn wrap(&self, evidence: Evidence) -> Certificate {
        self.wrap_with(evidence, self.tolerance)
    }

    fn wrap_with(&self, evidence: Evidence, tolerance: f64) -> Certificate {
        Certificate {
            schema: SCHEMA_VERSION,
            alphabet: self.alphabet,
            metric: self.metric,
            tolerance,
            evidence,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::Word;

    fn ctx() -> Certifier {
        Certifier::new(Alphabet::BINARY, MetricParams::default(), 1e-12).unwrap()
    }

    #[test]
    fn unstable_set_membership() {
        let u = UnstableSetId::new(
            BiSequence::periodic(Word::new(vec![1, 2]).unwrap(), 0).unwrap(),
            Alphabet::BINARY,
        )
        .unwrap();
        let m = u.universal_member(Alphabet::BINARY);
        assert!(u.contains(&m));
        assert!(!u.contains(&m.shift(1)));
        assert_eq!(m.window(1, 4), Word::new(vec![1, 2, 1, 1]).unwrap());
        assert!(UnstableSetId::new(BiSequence::constant(3).unwrap(), Alphabet::BINARY).is_err());
    }

    #[test]
    fn certificate_json_round_trip() {
        let u = UnstableSetId::new(BiSequence::constant(1).unwrap(), Alphabet::BINARY).unwrap();
        let target: CylinderSet = "1.21".parse().unwrap();
        let cert = ctx().transitivity_witness(&u, &target).unwrap();
        let json = serde_json::to_string_pretty(&cert).unwrap();
        assert!(json.contains("\"kind\": \"transitivity\""));
        assert!(json.contains("\"schema\": 1"));
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
        back.verify().unwrap();
    }

    #[test]
    fn tampered_certificates_fail() {
        let s = BiSequence::constant(1).unwrap();
        let cert = ctx().sensitivity_witness(&s, 0.25).unwrap();
        let mut bad = cert.clone();
        if let Evidence::Sensitivity(e) = &mut bad.evidence {
            e.divergence.value = 0.1;
        }
        assert!(bad.verify().is_err());
        let mut bad = cert;
        bad.schema = 2;
        assert!(bad.verify().is_err());
        assert!(Certifier::new(Alphabet::BINARY, MetricParams::default(), 0.0).is_err());
    }
}
