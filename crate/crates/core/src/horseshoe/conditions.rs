use serde::{Deserialize, Serialize};

use super::rectangles::{level_rectangles, Interval, SymbolicRectangle, RECTANGLE_CAP_EXPONENT};
use super::{horseshoe_map, point_from_itinerary, HorseshoeParams};
use crate::metric::{diameter_report, separation_by_enumeration, CylinderMetric, DiameterReport, SeparationReport};
use crate::symbolic::{Alphabet, BiSequence, CylinderSet};
use crate::{Error, Result};

/// Euclidean planar distance on the invariant set, seen through cylinders.
///
/// A cylinder's points fill a product of Cantor sets whose extreme points
/// are attained, so its diameter is the diagonal of its bounding box. Set
/// distances are box gaps; they are exact when, on each axis, the two
/// cylinders either fix the same positions or have separated intervals,
/// which covers equal-window cylinders.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EuclideanAdapter(pub HorseshoeParams);

impl EuclideanAdapter {
    /// Bounding box of the points of `c` (binary alphabet).
    pub fn bounding_box(&self, c: &CylinderSet) -> (Interval, Interval) {
        let (lambda, mu) = (self.0.lambda(), self.0.mu());
        let digit = |s: u8| f64::from(s.saturating_sub(1));

        // x digits live at positions <= 0, index i = -j, weight (1-lambda) lambda^i
        let past: Vec<(i64, u8)> = c.positions().filter(|&(j, _)| j <= 0).collect();
        let x = match (past.first(), past.last()) {
            (Some(&(first, _)), Some(&(last, _))) => {
                let (i_lo, i_hi) = (-last, -first);
                let lo = past
                    .iter()
                    .map(|&(j, s)| (1.0 - lambda) * digit(s) * lambda.powi(-j as i32))
                    .sum::<f64>();
                let free = (1.0 - lambda.powi(i_lo as i32)) + lambda.powi(i_hi as i32 + 1);
                Interval { lo, hi: lo + free }
            }
            _ => Interval { lo: 0.0, hi: 1.0 },
        };

        let future: Vec<(i64, u8)> = c.positions().filter(|&(j, _)| j >= 1).collect();
        let y = match (future.first(), future.last()) {
            (Some(&(j_lo, _)), Some(&(j_hi, _))) => {
                let lo = future
                    .iter()
                    .map(|&(j, s)| digit(s) * (mu - 1.0) * mu.powi(-j as i32))
                    .sum::<f64>();
                let free = (1.0 - mu.powi(-(j_lo as i32 - 1))) + mu.powi(-(j_hi as i32));
                Interval { lo, hi: lo + free }
            }
            _ => Interval { lo: 0.0, hi: 1.0 },
        };
        (x, y)
    }

    fn extents(&self, c: &CylinderSet) -> (f64, f64) {
        let (lambda, mu) = (self.0.lambda(), self.0.mu());
        let fixed_x: Vec<i64> = c.positions().filter(|&(j, _)| j <= 0).map(|(j, _)| -j).collect();
        let fixed_y: Vec<i64> = c.positions().filter(|&(j, _)| j >= 1).map(|(j, _)| j).collect();
        let w = match (fixed_x.iter().min(), fixed_x.iter().max()) {
            (Some(&lo), Some(&hi)) => (1.0 - lambda.powi(lo as i32)) + lambda.powi(hi as i32 + 1),
            _ => 1.0,
        };
        let h = match (fixed_y.iter().min(), fixed_y.iter().max()) {
            (Some(&lo), Some(&hi)) => (1.0 - mu.powi(-(lo as i32 - 1))) + mu.powi(-(hi as i32)),
            _ => 1.0,
        };
        (w, h)
    }
}

/// `sqrt(lambda^(2(k+1)) + mu^(-2n))`.
fn closed_form_diagonal(hp: &HorseshoeParams, k: u32, n: u32) -> f64 {
    let w = hp.lambda().powi(k as i32 + 1);
    let h = hp.mu().powi(-(n as i32));
    (w * w + h * h).sqrt()
}

impl CylinderMetric for EuclideanAdapter {
    fn cylinder_diameter(&self, c: &CylinderSet) -> f64 {
        let (w, h) = self.extents(c);
        (w * w + h * h).sqrt()
    }

    fn set_distance(&self, a: &CylinderSet, b: &CylinderSet) -> f64 {
        let (ax, ay) = self.bounding_box(a);
        let (bx, by) = self.bounding_box(b);
        ax.gap(&bx).hypot(ay.gap(&by))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjugacyReport {
    pub depth: usize,
    pub defect: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Compares `F(point(s))` with `point(shift(s, 1))`.
///
/// The bound propagates the reconstruction tails of `point(s)` through `F`
/// (x contracts by `lambda`, y expands by `mu`), adds the tail of
/// `point(shift(s, 1))`, and allows a few ulps of rounding.
pub fn conjugacy_check(s: &BiSequence, hp: &HorseshoeParams, depth: usize) -> Result<ConjugacyReport> {
    if depth < 2 {
        return Err(Error::InvalidParameter {
            name: "depth",
            reason: "conjugacy check needs depth >= 2".into(),
        });
    }
    let (p, _) = point_from_itinerary(s, hp, depth)?;
    let (q, q_bound) = point_from_itinerary(&s.shift(1), hp, depth)?;
    let image = horseshoe_map(p, hp)?;
    let (lambda, mu) = (hp.lambda(), hp.mu());
    let ex = lambda.powi(depth as i32);
    let ey = mu.powi(-(depth as i32));
    let bound = (lambda * ex).hypot(mu * ey) + q_bound + 8.0 * f64::EPSILON;
    let defect = image.distance(&q);
    Ok(ConjugacyReport {
        depth,
        defect,
        bound,
        holds: defect <= bound,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagonalRow {
    pub k: u32,
    pub n: u32,
    /// `sqrt(lambda^(2(k+1)) + mu^(-2n))`.
    pub closed_form: f64,
    /// Diameter of the window through the Euclidean cylinder metric.
    pub metric_diameter: f64,
    /// Largest diagonal over the generated rectangles.
    pub measured: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicReport {
    pub lambda: f64,
    pub mu: f64,
    pub max_depth: u32,
    pub diagonals: Vec<DiagonalRow>,
    pub diagonals_decreasing: bool,
    pub diagonals_match: bool,
    /// Vertical gap `1 - 2/mu` between rectangles differing at position 1.
    pub future_gap: f64,
    /// Horizontal gap `1 - 2 lambda` between rectangles differing at position 0.
    pub past_gap: f64,
    pub epsilon0: f64,
    /// Minimum pairwise gap among depth-1 rectangles differing at position 1.
    pub brute_force_gap: f64,
    pub witness: (CylinderSet, CylinderSet),
    /// The symbolic checkers run against the Euclidean adapter.
    pub diameter: DiameterReport,
    pub separation: Vec<SeparationReport>,
    pub holds: bool,
}

const MEASURE_TOLERANCE: f64 = 1e-12;

/// Diameter and separation conditions of the horseshoe-induced index space.
pub fn verify_hyperbolic_conditions(hp: &HorseshoeParams, max_depth: u32) -> Result<HyperbolicReport> {
    if max_depth < 1 {
        return Err(Error::InvalidParameter {
            name: "max_depth",
            reason: "must be at least 1".into(),
        });
    }
    let exponent = 2 * max_depth + 1;
    if exponent > RECTANGLE_CAP_EXPONENT {
        return Err(Error::RectangleCap {
            exponent,
            cap: RECTANGLE_CAP_EXPONENT,
        });
    }
    let adapter = EuclideanAdapter(*hp);

    let mut diagonals = Vec::new();
    for k in 0..=max_depth {
        for n in 1..=max_depth {
            let rects = level_rectangles(hp, k, n)?;
            let measured = rects.iter().map(SymbolicRectangle::diagonal).fold(0.0, f64::max);
            let window = &rects[0].cylinder;
            diagonals.push(DiagonalRow {
                k,
                n,
                closed_form: closed_form_diagonal(hp, k, n),
                metric_diameter: adapter.cylinder_diameter(window),
                measured,
            });
        }
    }
    let at = |k: u32, n: u32| &diagonals[(k * max_depth + n - 1) as usize];
    let diagonals_decreasing = (0..=max_depth).all(|k| {
        (1..max_depth).all(|n| at(k, n + 1).closed_form < at(k, n).closed_form)
    }) && (1..=max_depth).all(|n| {
        (0..max_depth).all(|k| at(k + 1, n).closed_form < at(k, n).closed_form)
    });
    let diagonals_match = diagonals.iter().all(|row| {
        row.metric_diameter == row.closed_form
            && (row.measured - row.closed_form).abs() <= MEASURE_TOLERANCE
    });

    let future_gap = 1.0 - 2.0 / hp.mu();
    let past_gap = 1.0 - 2.0 * hp.lambda();
    let level_one = level_rectangles(hp, 0, 1)?;
    let mut brute: Option<(f64, usize, usize)> = None;
    for (i, a) in level_one.iter().enumerate() {
        for (j, b) in level_one.iter().enumerate().skip(i + 1) {
            if a.cylinder.symbol_at(1) == b.cylinder.symbol_at(1) {
                continue;
            }
            let gap = a.gap(b);
            if brute.is_none_or(|(g, _, _)| gap < g) {
                brute = Some((gap, i, j));
            }
        }
    }
    let (brute_force_gap, wi, wj) = brute.expect("depth-1 rectangles differ at position 1");

    let windows: Vec<(u32, u32)> = (1..=max_depth).map(|d| (d, d)).collect();
    let hp_copy = *hp;
    let diameter = diameter_report(&adapter, &windows, move |k, n| closed_form_diagonal(&hp_copy, k, n));
    let separation = (1..=max_depth.min(6))
        .map(|n| separation_by_enumeration(&adapter, Alphabet::BINARY, n))
        .collect::<Result<Vec<_>>>()?;

    let holds = diagonals_decreasing
        && diagonals_match
        && future_gap > 0.0
        && past_gap > 0.0
        && (brute_force_gap - future_gap).abs() <= MEASURE_TOLERANCE
        && diameter.holds
        && separation.iter().all(|s| s.epsilon0 >= future_gap - MEASURE_TOLERANCE);

    Ok(HyperbolicReport {
        lambda: hp.lambda(),
        mu: hp.mu(),
        max_depth,
        diagonals,
        diagonals_decreasing,
        diagonals_match,
        future_gap,
        past_gap,
        epsilon0: future_gap,
        brute_force_gap,
        witness: (level_one[wi].cylinder.clone(), level_one[wj].cylinder.clone()),
        diameter,
        separation,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{periodic_point, Word};

    fn hp() -> HorseshoeParams {
        HorseshoeParams::default()
    }

    #[test]
    fn bounding_boxes_match_rectangles() {
        let adapter = EuclideanAdapter(hp());
        for rect in level_rectangles(&hp(), 2, 2).unwrap() {
            let (x, y) = adapter.bounding_box(&rect.cylinder);
            assert!((x.lo - rect.x.lo).abs() < 1e-15 && (x.hi - rect.x.hi).abs() < 1e-15);
            assert!((y.lo - rect.y.lo).abs() < 1e-15 && (y.hi - rect.y.hi).abs() < 1e-15);
        }
        let whole = adapter.bounding_box(&CylinderSet::whole());
        assert_eq!(whole, (Interval { lo: 0.0, hi: 1.0 }, Interval { lo: 0.0, hi: 1.0 }));
    }

    #[test]
    fn box_diameter_is_attained_by_extreme_itineraries() {
        // all-1 and all-2 free tails reach opposite box corners
        let adapter = EuclideanAdapter(hp());
        let c = CylinderSet::two_sided(&"21".parse().unwrap(), &"12".parse().unwrap());
        let low = c.member(1);
        let high = c.member(2);
        let (p, _) = point_from_itinerary(&low, &hp(), 40).unwrap();
        let (q, _) = point_from_itinerary(&high, &hp(), 40).unwrap();
        assert!((p.distance(&q) - adapter.cylinder_diameter(&c)).abs() < 1e-14);
    }

    #[test]
    fn conjugacy_defects() {
        let fixed = conjugacy_check(&BiSequence::constant(1).unwrap(), &hp(), 10).unwrap();
        assert_eq!(fixed.defect, 0.0);
        let s = periodic_point(Word::new(vec![1, 2]).unwrap()).unwrap();
        let report = conjugacy_check(&s, &hp(), 20).unwrap();
        assert!(report.holds && report.defect < 1e-8);
        assert!(conjugacy_check(&s, &hp(), 1).is_err());
    }

    #[test]
    fn hyperbolic_conditions_hold_at_default_parameters() {
        let report = verify_hyperbolic_conditions(&hp(), 4).unwrap();
        assert!(report.holds, "{report:#?}");
        assert!((report.epsilon0 - 1.0 / 3.0).abs() < 1e-15);
        assert!((report.brute_force_gap - 1.0 / 3.0).abs() < 1e-12);
        assert!((report.separation[0].epsilon0 - report.brute_force_gap).abs() < 1e-15);
        assert!(verify_hyperbolic_conditions(&hp(), 10).is_err());
    }
}
