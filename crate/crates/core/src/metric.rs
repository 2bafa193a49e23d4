//! Weighted symbol-mismatch metric on bi-infinite sequences.
//!
//! `d(s, t) = sum_j [s_j != t_j] * w_j` with `w_j = r^j` for `j >= 1` and
//! `w_j = r^(|j| + 1)` for `j <= 0`. Both tails are geometric, so cylinder
//! diameters and inter-cylinder distances have closed forms, and the
//! distance between two generated sequences is either exact (both sides
//! eventually periodic) or truncated with a certified tail bound.

use serde::{Deserialize, Serialize};

use crate::symbolic::{Alphabet, BiSequence, CylinderSet, Tail, Word};
use crate::{Error, Result};

/// Largest combined tail period summed in closed form.
const MAX_EXACT_PERIOD: u64 = 1 << 16;
/// Largest explicit prefix summed before a closed-form tail.
const MAX_EXACT_SPAN: i64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMetric", into = "RawMetric")]
pub struct MetricParams {
    r: f64,
}

#[derive(Serialize, Deserialize)]
struct RawMetric {
    r: f64,
}

impl TryFrom<RawMetric> for MetricParams {
    type Error = Error;

    fn try_from(raw: RawMetric) -> Result<Self> {
        MetricParams::new(raw.r)
    }
}

impl From<MetricParams> for RawMetric {
    fn from(p: MetricParams) -> RawMetric {
        RawMetric { r: p.r }
    }
}

impl Default for MetricParams {
    fn default() -> Self {
        MetricParams { r: 0.5 }
    }
}

/// A distance value with a certified truncation error: the true distance
/// lies in `[value - error, value + error]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceBound {
    pub value: f64,
    pub error: f64,
}

impl DistanceBound {
    pub fn exact(value: f64) -> Self {
        DistanceBound { value, error: 0.0 }
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error
    }

    pub fn lower(&self) -> f64 {
        (self.value - self.error).max(0.0)
    }

    pub fn is_exact(&self) -> bool {
        self.error == 0.0
    }
}

impl MetricParams {
    pub fn new(r: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::InvalidParameter {
                name: "r",
                reason: format!("{r} is not in (0, 1)"),
            });
        }
        Ok(MetricParams { r })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub(crate) fn pow(&self, e: i64) -> f64 {
        match i32::try_from(e) {
            Ok(e) => self.r.powi(e),
            Err(_) => self.r.powf(e as f64),
        }
    }

    pub fn weight(&self, j: i64) -> f64 {
        if j >= 1 {
            self.pow(j)
        } else {
            self.pow(1 - j)
        }
    }

    /// `sum_{j >= a} w_j`.
    pub fn sum_from(&self, a: i64) -> f64 {
        let r = self.r;
        if a >= 1 {
            self.pow(a) / (1.0 - r)
        } else {
            r * (1.0 - self.pow(1 - a)) / (1.0 - r) + r / (1.0 - r)
        }
    }

    /// `sum_{j <= b} w_j`.
    pub fn sum_to(&self, b: i64) -> f64 {
        let r = self.r;
        if b <= 0 {
            self.pow(1 - b) / (1.0 - r)
        } else {
            r / (1.0 - r) + r * (1.0 - self.pow(b)) / (1.0 - r)
        }
    }

    /// Diameter of the whole space, `2r / (1 - r)`.
    pub fn space_diameter(&self) -> f64 {
        2.0 * self.r / (1.0 - self.r)
    }

    /// Diameter of the two-sided window `[-k, n]`:
    /// `(r^(n+1) + r^(k+2)) / (1 - r)`, which is `2^-n + 2^-(k+1)` at `r = 1/2`.
    pub fn window_diameter(&self, k: u32, n: u32) -> f64 {
        self.sum_to(-(k as i64) - 1) + self.sum_from(n as i64 + 1)
    }

    /// Smallest `K >= 0` with `sum_{j > K} w_j <= budget`.
    fn right_cutoff(&self, budget: f64) -> i64 {
        let mut k = ((budget * (1.0 - self.r)).ln() / self.r.ln()).ceil() as i64 - 1;
        k = k.max(0);
        while k > 0 && self.sum_from(k) <= budget {
            k -= 1;
        }
        while self.sum_from(k + 1) > budget {
            k += 1;
        }
        k
    }

    /// Smallest `K >= 0` with `sum_{j < -K} w_j <= budget`.
    fn left_cutoff(&self, budget: f64) -> i64 {
        let mut k = ((budget * (1.0 - self.r)).ln() / self.r.ln()).ceil() as i64 - 2;
        k = k.max(0);
        while k > 0 && self.sum_to(-k) <= budget {
            k -= 1;
        }
        while self.sum_to(-k - 1) > budget {
            k += 1;
        }
        k
    }

    /// Distance between two sequences with error at most `tol`.
    ///
    /// Each side (positions `>= 1`, positions `<= 0`) is summed in closed
    /// form when both sequences are eventually periodic there; otherwise it
    /// is truncated where its geometric tail drops below `tol / 2`.
    pub fn distance(&self, s: &BiSequence, t: &BiSequence, tol: f64) -> Result<DistanceBound> {
        if tol.is_nan() || tol <= 0.0 || !tol.is_finite() {
            return Err(Error::InvalidParameter {
                name: "tol",
                reason: format!("{tol} must be positive and finite"),
            });
        }
        let (right, right_err) = self.right_side(s, t, tol / 2.0);
        let (left, left_err) = self.left_side(s, t, tol / 2.0);
        Ok(DistanceBound {
            value: left + right + 0.0,
            error: left_err + right_err,
        })
    }

    fn mismatch(s: &BiSequence, t: &BiSequence, j: i64) -> bool {
        s.symbol_at(j) != t.symbol_at(j)
    }

    fn right_side(&self, s: &BiSequence, t: &BiSequence, budget: f64) -> (f64, f64) {
        let cutoff = self.right_cutoff(budget);
        if let Some(tail) = joint_tail(s.right_tail(), t.right_tail(), |a, b| a.max(b).max(1)) {
            if tail.anchor - 1 <= MAX_EXACT_SPAN.max(cutoff) {
                let mut value: f64 = (1..tail.anchor)
                    .filter(|&j| Self::mismatch(s, t, j))
                    .map(|j| self.weight(j))
                    .sum();
                let scale = 1.0 / (1.0 - self.pow(tail.period as i64));
                value += (0..tail.period as i64)
                    .map(|q| tail.anchor + q)
                    .filter(|&j| Self::mismatch(s, t, j))
                    .map(|j| self.weight(j) * scale)
                    .sum::<f64>();
                return (value, 0.0);
            }
        }
        let value = (1..=cutoff)
            .filter(|&j| Self::mismatch(s, t, j))
            .map(|j| self.weight(j))
            .sum();
        (value, self.sum_from(cutoff + 1))
    }

    fn left_side(&self, s: &BiSequence, t: &BiSequence, budget: f64) -> (f64, f64) {
        let cutoff = self.left_cutoff(budget);
        if let Some(tail) = joint_tail(s.left_tail(), t.left_tail(), |a, b| a.min(b).min(0)) {
            if -tail.anchor <= MAX_EXACT_SPAN.max(cutoff) {
                let mut value: f64 = (tail.anchor + 1..=0)
                    .rev()
                    .filter(|&j| Self::mismatch(s, t, j))
                    .map(|j| self.weight(j))
                    .sum();
                let scale = 1.0 / (1.0 - self.pow(tail.period as i64));
                value += (0..tail.period as i64)
                    .map(|q| tail.anchor - q)
                    .filter(|&j| Self::mismatch(s, t, j))
                    .map(|j| self.weight(j) * scale)
                    .sum::<f64>();
                return (value, 0.0);
            }
        }
        let value = (-cutoff..=0)
            .rev()
            .filter(|&j| Self::mismatch(s, t, j))
            .map(|j| self.weight(j))
            .sum();
        (value, self.sum_to(-cutoff - 1))
    }

    /// Diameter of a cylinder: the weight of its free positions.
    pub fn cylinder_diameter(&self, c: &CylinderSet) -> f64 {
        if c.is_whole() {
            return self.space_diameter();
        }
        self.sum_to(c.start() - 1) + self.sum_from(c.end() + 1)
    }

    /// `inf { d(x, y) : x in a, y in b }`: weight of the positions fixed in
    /// both windows with different symbols.
    pub fn set_distance(&self, a: &CylinderSet, b: &CylinderSet) -> f64 {
        a.positions()
            .filter(|&(j, s)| b.symbol_at(j).is_some_and(|t| t != s))
            .map(|(j, _)| self.weight(j))
            .sum::<f64>()
            + 0.0
    }

    /// Diameter table for windows `[-k, k]`, `k = 1..=max_depth`. Diameters
    /// do not depend on the alphabet size once `m >= 2`.
    pub fn check_diameter_condition(&self, max_depth: u32) -> Result<DiameterReport> {
        if max_depth < 1 {
            return Err(Error::InvalidParameter {
                name: "max_depth",
                reason: "must be at least 1".into(),
            });
        }
        let r = self.r;
        let windows: Vec<(u32, u32)> = (1..=max_depth).map(|d| (d, d)).collect();
        Ok(diameter_report(self, &windows, |k, n| {
            (r.powi(n as i32 + 1) + r.powi(k as i32 + 2)) / (1.0 - r)
        }))
    }

    /// Separation constant of degree `n` from the first-symbol flip family.
    ///
    /// Flipping `i1` puts the two cylinders at distance exactly `w_1 = r`,
    /// whatever the degree, so `epsilon0 = r`. The per-degree optimum
    /// `min_i max_j d(F_i, F_j)` flips every symbol and equals
    /// `sum_{t <= n} r^t`.
    pub fn check_separation(&self, alphabet: Alphabet, n: u32) -> Result<SeparationReport> {
        if n < 1 {
            return Err(Error::InvalidParameter {
                name: "n",
                reason: "separation degree must be at least 1".into(),
            });
        }
        let base = Word::from_raw(vec![1; n as usize]);
        let mut flipped = base.as_slice().to_vec();
        flipped[0] = alphabet.flip(flipped[0]);
        let first = CylinderSet::future(base);
        let second = CylinderSet::future(Word::from_raw(flipped));
        Ok(SeparationReport {
            degree: n,
            epsilon0: self.set_distance(&first, &second),
            witness: (first, second),
            degree_optimum: Some((1..=n as i64).map(|j| self.weight(j)).sum()),
        })
    }
}

fn joint_tail(a: Option<Tail>, b: Option<Tail>, pick: impl Fn(i64, i64) -> i64) -> Option<Tail> {
    let (a, b) = (a?, b?);
    let period = lcm(a.period, b.period)?;
    (period <= MAX_EXACT_PERIOD).then(|| Tail {
        anchor: pick(a.anchor, b.anchor),
        period,
    })
}

fn lcm(a: u64, b: u64) -> Option<u64> {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    (a / gcd(a, b)).checked_mul(b)
}

/// A metric on the cylinder sets of an index space.
pub trait CylinderMetric {
    fn cylinder_diameter(&self, c: &CylinderSet) -> f64;
    fn set_distance(&self, a: &CylinderSet, b: &CylinderSet) -> f64;
}

impl CylinderMetric for MetricParams {
    fn cylinder_diameter(&self, c: &CylinderSet) -> f64 {
        MetricParams::cylinder_diameter(self, c)
    }

    fn set_distance(&self, a: &CylinderSet, b: &CylinderSet) -> f64 {
        MetricParams::set_distance(self, a, b)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiameterRow {
    pub k: u32,
    pub n: u32,
    pub diameter: f64,
    pub prediction: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiameterReport {
    pub rows: Vec<DiameterRow>,
    pub strictly_decreasing: bool,
    pub matches_prediction: bool,
    pub holds: bool,
}

impl DiameterReport {
    pub fn final_diameter(&self) -> Option<f64> {
        self.rows.last().map(|r| r.diameter)
    }
}

/// Diameters of the windows `[-k, n]` under any cylinder metric.
///
/// Both metrics in this crate are uniform over the words of a window, so
/// each row measures the all-ones cylinder.
pub fn diameter_report<M: CylinderMetric + ?Sized>(
    metric: &M,
    windows: &[(u32, u32)],
    prediction: impl Fn(u32, u32) -> f64,
) -> DiameterReport {
    let rows: Vec<DiameterRow> = windows
        .iter()
        .map(|&(k, n)| {
            let c = CylinderSet::two_sided(
                &Word::from_raw(vec![1; k as usize + 1]),
                &Word::from_raw(vec![1; n as usize]),
            );
            DiameterRow {
                k,
                n,
                diameter: metric.cylinder_diameter(&c),
                prediction: prediction(k, n),
            }
        })
        .collect();
    let strictly_decreasing = rows.windows(2).all(|p| p[1].diameter < p[0].diameter);
    let matches_prediction = rows
        .iter()
        .all(|row| (row.diameter - row.prediction).abs() <= 4.0 * f64::EPSILON * row.prediction);
    DiameterReport {
        holds: strictly_decreasing && matches_prediction,
        rows,
        strictly_decreasing,
        matches_prediction,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub degree: u32,
    pub epsilon0: f64,
    pub witness: (CylinderSet, CylinderSet),
    /// `min_i max_j d(F_i, F_j)` at this degree, when computed.
    pub degree_optimum: Option<f64>,
}

/// Separation constant by enumerating all degree-`n` future cylinders.
///
/// `epsilon0` is the minimum over words `i` of the distance to the word
/// with `i1` flipped; the optimum is computed when `m^(2n) <= 2^22`.
pub fn separation_by_enumeration<M: CylinderMetric + ?Sized>(
    metric: &M,
    alphabet: Alphabet,
    n: u32,
) -> Result<SeparationReport> {
    let count = (alphabet.size() as u128).checked_pow(n).unwrap_or(u128::MAX);
    if n < 1 || count > 1 << 20 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: format!("degree {n} outside the enumerable range"),
        });
    }
    let cylinders: Vec<CylinderSet> = alphabet.words(n as usize).map(CylinderSet::future).collect();
    let mut best: Option<(f64, usize, CylinderSet)> = None;
    for (i, c) in cylinders.iter().enumerate() {
        let mut flipped = c.fixed().as_slice().to_vec();
        flipped[0] = alphabet.flip(flipped[0]);
        let partner = CylinderSet::future(Word::from_raw(flipped));
        let d = metric.set_distance(c, &partner);
        if best.as_ref().is_none_or(|(b, _, _)| d < *b) {
            best = Some((d, i, partner));
        }
    }
    let (epsilon0, i, partner) = best.expect("at least one cylinder");
    let degree_optimum = (count * count <= 1 << 22).then(|| {
        cylinders
            .iter()
            .map(|a| {
                cylinders
                    .iter()
                    .map(|b| metric.set_distance(a, b))
                    .fold(0.0, f64::max)
            })
            .fold(f64::INFINITY, f64::min)
    });
    Ok(SeparationReport {
        degree: n,
        epsilon0,
        witness: (cylinders[i].clone(), partner),
        degree_optimum,
    })
}
