//! Affine, orientation-preserving Smale horseshoe on the unit square.
//!
//! Branch 1 maps the strip `H1 = [0,1] x [0, 1/mu]` onto `V1 = [0, lambda] x [0,1]`
//! by `(x, y) -> (lambda x, mu y)`; branch 2 maps `H2 = [0,1] x [1 - 1/mu, 1]`
//! onto `V2 = [1 - lambda, 1] x [0,1]` by
//! `(x, y) -> (lambda x + 1 - lambda, mu y - (mu - 1))`.
//!
//! Itinerary convention: position `j >= 1` records the horizontal strip of
//! `F^(j-1)(q)`; position `j <= 0` records the vertical strip of `F^j(q)`,
//! which is the horizontal strip of `F^(j-1)(q)`.

mod conditions;
mod rectangles;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::symbolic::{BiSequence, CylinderSet, Word};
use crate::{Error, Result};

pub use conditions::{
    conjugacy_check, verify_hyperbolic_conditions, ConjugacyReport, DiagonalRow, EuclideanAdapter,
    HyperbolicReport,
};
pub use rectangles::{leading_symbol, level_rectangles, Interval, SymbolicRectangle, RECTANGLE_CAP_EXPONENT};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct HorseshoeParams {
    lambda: f64,
    mu: f64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    lambda: f64,
    mu: f64,
}

impl TryFrom<RawParams> for HorseshoeParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        HorseshoeParams::new(raw.lambda, raw.mu)
    }
}

impl From<HorseshoeParams> for RawParams {
    fn from(p: HorseshoeParams) -> RawParams {
        RawParams {
            lambda: p.lambda,
            mu: p.mu,
        }
    }
}

impl Default for HorseshoeParams {
    fn default() -> Self {
        HorseshoeParams {
            lambda: 1.0 / 3.0,
            mu: 3.0,
        }
    }
}

impl HorseshoeParams {
    /// Requires `0 < lambda < 1/2` and `mu > 2` so the strips are disjoint.
    pub fn new(lambda: f64, mu: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 0.5) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                reason: format!("{lambda} is not in (0, 1/2)"),
            });
        }
        if !(mu > 2.0 && mu.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "mu",
                reason: format!("{mu} is not a finite value above 2"),
            });
        }
        Ok(HorseshoeParams { lambda, mu })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Branch symbol of the horizontal strip containing `y`.
    pub fn horizontal_strip(&self, y: f64) -> Option<u8> {
        if (0.0..=1.0 / self.mu).contains(&y) {
            Some(1)
        } else if (1.0 - 1.0 / self.mu..=1.0).contains(&y) {
            Some(2)
        } else {
            None
        }
    }

    /// Branch symbol of the vertical strip containing `x`.
    pub fn vertical_strip(&self, x: f64) -> Option<u8> {
        if (0.0..=self.lambda).contains(&x) {
            Some(1)
        } else if (1.0 - self.lambda..=1.0).contains(&x) {
            Some(2)
        } else {
            None
        }
    }

    /// The affine map of `branch`, without strip membership checks.
    pub fn apply_branch(&self, q: PlanePoint, branch: u8) -> PlanePoint {
        let (lambda, mu) = (self.lambda, self.mu);
        if branch == 1 {
            PlanePoint {
                x: lambda * q.x,
                y: mu * q.y,
            }
        } else {
            PlanePoint {
                x: lambda * q.x + (1.0 - lambda),
                y: mu * q.y - (mu - 1.0),
            }
        }
    }

    pub fn map(&self, q: PlanePoint) -> Result<PlanePoint> {
        horseshoe_map(q, self)
    }

    pub fn inverse(&self, q: PlanePoint) -> Result<PlanePoint> {
        horseshoe_inverse(q, self)
    }
}

/// A point of the unit square.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y)) {
            return Err(Error::InvalidParameter {
                name: "point",
                reason: format!("({x}, {y}) is outside the unit square"),
            });
        }
        Ok(PlanePoint { x, y })
    }

    pub fn distance(&self, other: &PlanePoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn horseshoe_map(q: PlanePoint, hp: &HorseshoeParams) -> Result<PlanePoint> {
    let branch = hp
        .horizontal_strip(q.y)
        .ok_or(Error::Escapes { step: 0, point: q })?;
    Ok(hp.apply_branch(q, branch))
}

pub fn horseshoe_inverse(q: PlanePoint, hp: &HorseshoeParams) -> Result<PlanePoint> {
    let (lambda, mu) = (hp.lambda, hp.mu);
    match hp.vertical_strip(q.x) {
        Some(1) => Ok(PlanePoint {
            x: q.x / lambda,
            y: q.y / mu,
        }),
        Some(_) => Ok(PlanePoint {
            x: (q.x - (1.0 - lambda)) / lambda,
            y: (q.y + mu - 1.0) / mu,
        }),
        None => Err(Error::Escapes { step: 0, point: q }),
    }
}

/// Symbols of `q` on positions `-back + 1..=fwd`, returned as the cylinder
/// they fix.
pub fn itinerary(q: PlanePoint, hp: &HorseshoeParams, back: usize, fwd: usize) -> Result<CylinderSet> {
    let mut future = Vec::with_capacity(fwd);
    let mut p = q;
    for j in 1..=fwd as i64 {
        let sym = hp
            .horizontal_strip(p.y)
            .ok_or(Error::Escapes { step: j - 1, point: p })?;
        future.push(sym);
        if j < fwd as i64 {
            p = hp.apply_branch(p, sym);
        }
    }
    let mut past = Vec::with_capacity(back);
    let mut p = q;
    for j in (-(back as i64) + 1..=0).rev() {
        let sym = hp
            .vertical_strip(p.x)
            .ok_or(Error::Escapes { step: j, point: p })?;
        past.push(sym);
        if j > -(back as i64) + 1 {
            p = horseshoe_inverse(p, hp).map_err(|_| Error::Escapes { step: j - 1, point: p })?;
        }
    }
    past.reverse();
    Ok(CylinderSet::two_sided(
        &Word::from_raw(past),
        &Word::from_raw(future),
    ))
}

/// Point of the invariant set with the given itinerary, truncated to
/// `depth` digits per axis.
///
/// With digits `a_j = s_j - 1`: `y = sum_{j>=1} a_j (mu - 1) mu^-j` and
/// `x = (1 - lambda) sum_{j<=0} a_j lambda^-j`. The returned bound is the
/// Euclidean norm of the per-axis tails `lambda^depth` and `mu^-depth`.
pub fn point_from_itinerary(
    s: &BiSequence,
    hp: &HorseshoeParams,
    depth: usize,
) -> Result<(PlanePoint, f64)> {
    if depth < 1 {
        return Err(Error::InvalidParameter {
            name: "depth",
            reason: "must be at least 1".into(),
        });
    }
    let digit = |j: i64| -> Result<f64> {
        match s.symbol_at(j) {
            1 => Ok(0.0),
            2 => Ok(1.0),
            other => Err(Error::SymbolOutOfRange { symbol: other, m: 2 }),
        }
    };
    let (lambda, mu) = (hp.lambda, hp.mu);
    let mut y = 0.0;
    for j in (1..=depth as i64).rev() {
        y = (y + digit(j)? * (mu - 1.0)) / mu;
    }
    let mut x = 0.0;
    for i in (0..depth as i64).rev() {
        x = x * lambda + digit(-i)?;
    }
    x *= 1.0 - lambda;
    let bound = lambda.powi(depth as i32).hypot(mu.powi(-(depth as i32)));
    Ok((PlanePoint { x, y }, bound))
}

/// Whether the itinerary of the reconstructed point of `s` reproduces `s`
/// on positions `-back + 1..=fwd`.
pub fn itinerary_round_trip(s: &BiSequence, hp: &HorseshoeParams, back: usize, fwd: usize) -> Result<bool> {
    let (q, _) = point_from_itinerary(s, hp, RECONSTRUCTION_DEPTH)?;
    Ok(itinerary(q, hp, back, fwd)?.contains(s))
}

/// Digits per axis used by [`itinerary_round_trip`]; past this depth the
/// truncation tail is below `f64` resolution for every admissible `(lambda, mu)`.
const RECONSTRUCTION_DEPTH: usize = 64;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::periodic_point;

    fn hp() -> HorseshoeParams {
        HorseshoeParams::default()
    }

    fn pt(x: f64, y: f64) -> PlanePoint {
        PlanePoint::new(x, y).unwrap()
    }

    #[test]
    fn parameter_invariants() {
        assert!(HorseshoeParams::new(0.5, 3.0).is_err());
        assert!(HorseshoeParams::new(0.3, 2.0).is_err());
        assert!(HorseshoeParams::new(0.0, 3.0).is_err());
        assert!(HorseshoeParams::new(0.49, 2.01).is_ok());
        assert!(PlanePoint::new(1.2, 0.0).is_err());
    }

    #[test]
    fn fixed_points() {
        assert_eq!(horseshoe_map(pt(0.0, 0.0), &hp()).unwrap(), pt(0.0, 0.0));
        let one = horseshoe_map(pt(1.0, 1.0), &hp()).unwrap();
        assert!((one.x - 1.0).abs() < 1e-15 && (one.y - 1.0).abs() < 1e-15);
        assert_eq!(horseshoe_inverse(pt(0.0, 0.0), &hp()).unwrap(), pt(0.0, 0.0));
    }

    #[test]
    fn gap_points_escape() {
        assert!(matches!(horseshoe_map(pt(0.5, 0.5), &hp()), Err(Error::Escapes { step: 0, .. })));
        assert!(matches!(horseshoe_inverse(pt(0.5, 0.5), &hp()), Err(Error::Escapes { .. })));
    }

    #[test]
    fn inverse_branch_one() {
        let q = horseshoe_inverse(pt(0.25 / 3.0, 0.2), &hp()).unwrap();
        assert!((q.x - 0.25).abs() < 1e-15);
        assert!((q.y - 0.2 / 3.0).abs() < 1e-15);
        let back = horseshoe_map(q, &hp()).unwrap();
        assert!(back.distance(&pt(0.25 / 3.0, 0.2)) < 1e-12);
    }

    #[test]
    fn itineraries_of_fixed_points() {
        let zero = itinerary(pt(0.0, 0.0), &hp(), 5, 5).unwrap();
        assert!(zero.fixed().iter().all(|s| s == 1));
        let one = itinerary(pt(1.0, 1.0), &hp(), 5, 5).unwrap();
        assert!(one.fixed().iter().all(|s| s == 2));
        assert_eq!((zero.start(), zero.end()), (-4, 5));
    }

    #[test]
    fn itinerary_names_escape_step() {
        // y = 0.2 maps into the gap at 0.6
        match itinerary(pt(0.0, 0.2), &hp(), 0, 6) {
            Err(Error::Escapes { step, .. }) => assert_eq!(step, 1),
            other => panic!("expected escape, got {other:?}"),
        }
    }

    #[test]
    fn reconstruction_of_constant_itineraries() {
        let (p, bound) = point_from_itinerary(&BiSequence::constant(1).unwrap(), &hp(), 20).unwrap();
        assert_eq!(p, pt(0.0, 0.0));
        assert!(bound > 0.0 && bound < 1e-9);
        let (p, bound) = point_from_itinerary(&BiSequence::constant(2).unwrap(), &hp(), 30).unwrap();
        assert!(p.distance(&pt(1.0, 1.0)) <= bound + 1e-15);
    }

    #[test]
    fn period_two_reconstruction_round_trips() {
        let s = periodic_point("12".parse().unwrap()).unwrap();
        let (p, _) = point_from_itinerary(&s, &hp(), 40).unwrap();
        // digits after the dot are 0,1,0,1,... so y = (mu-1) sum_{k>=1} mu^-2k = 1/4.
        assert!((p.y - 0.25).abs() < 1e-15);
        // digits at 0,-1,... are 1,0,1,0,...: x = (2/3) sum_k 9^-k = 3/4.
        assert!((p.x - 0.75).abs() < 1e-15);
        // forward-iteration oracle: the branch sequence reproduces the word
        let mut q = p;
        for j in 1..=16 {
            assert_eq!(hp().horizontal_strip(q.y), Some(s.symbol_at(j)));
            q = horseshoe_map(q, &hp()).unwrap();
        }
        let code = itinerary(p, &hp(), 8, 8).unwrap();
        assert!(code.contains(&s));
        assert!(itinerary_round_trip(&s, &hp(), 8, 8).unwrap());
    }

    #[test]
    fn reconstruction_rejects_large_symbols() {
        let s = BiSequence::constant(3).unwrap();
        assert!(point_from_itinerary(&s, &hp(), 5).is_err());
        assert!(point_from_itinerary(&BiSequence::constant(1).unwrap(), &hp(), 0).is_err());
    }
}
