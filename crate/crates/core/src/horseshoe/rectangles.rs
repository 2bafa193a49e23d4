use serde::{Deserialize, Serialize};

use super::HorseshoeParams;
use crate::symbolic::{Alphabet, CylinderSet};
use crate::{Error, Result};

/// Level rectangles are capped at `2^RECTANGLE_CAP_EXPONENT` per call.
pub const RECTANGLE_CAP_EXPONENT: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Length of the gap between two intervals, 0 when they overlap.
    pub fn gap(&self, other: &Interval) -> f64 {
        (other.lo - self.hi).max(self.lo - other.hi).max(0.0)
    }
}

/// Geometric realization of a two-sided cylinder: the box of points of the
/// square whose itinerary carries `cylinder` on its window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymbolicRectangle {
    pub cylinder: CylinderSet,
    pub x: Interval,
    pub y: Interval,
}

impl SymbolicRectangle {
    pub fn diagonal(&self) -> f64 {
        self.x.width().hypot(self.y.width())
    }

    /// Euclidean distance between the two boxes.
    pub fn gap(&self, other: &SymbolicRectangle) -> f64 {
        self.x.gap(&other.x).hypot(self.y.gap(&other.y))
    }

    pub fn is_disjoint(&self, other: &SymbolicRectangle) -> bool {
        self.gap(other) > 0.0
    }
}

/// All `2^(k+1+n)` rectangles of the window `[-k, n]`, in lexicographic
/// order of their words. Past digits fix nested `lambda`-scaled
/// x-intervals of width `lambda^(k+1)`; future digits fix nested
/// y-intervals of height `mu^-n`.
pub fn level_rectangles(hp: &HorseshoeParams, k: u32, n: u32) -> Result<Vec<SymbolicRectangle>> {
    if n < 1 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: "future depth must be at least 1".into(),
        });
    }
    let exponent = k + 1 + n;
    if exponent > RECTANGLE_CAP_EXPONENT {
        return Err(Error::RectangleCap {
            exponent,
            cap: RECTANGLE_CAP_EXPONENT,
        });
    }
    let (lambda, mu) = (hp.lambda(), hp.mu());
    let width = lambda.powi(k as i32 + 1);
    let height = mu.powi(-(n as i32));

    let past_len = k as usize + 1;
    let x_lo: Vec<f64> = Alphabet::BINARY
        .words(past_len)
        .map(|w| {
            // w[past_len - 1] sits at position 0 and carries weight lambda^0
            let acc = w.iter().fold(0.0, |acc, s| acc * lambda + f64::from(s - 1));
            (1.0 - lambda) * acc
        })
        .collect();
    let y_lo: Vec<f64> = Alphabet::BINARY
        .words(n as usize)
        .map(|w| {
            w.iter()
                .rev()
                .fold(0.0, |acc, s| (acc + f64::from(s - 1) * (mu - 1.0)) / mu)
        })
        .collect();

    let mut out = Vec::with_capacity(1 << exponent);
    for (past, &xl) in Alphabet::BINARY.words(past_len).zip(&x_lo) {
        for (future, &yl) in Alphabet::BINARY.words(n as usize).zip(&y_lo) {
            out.push(SymbolicRectangle {
                cylinder: CylinderSet::two_sided(&past, &future),
                x: Interval {
                    lo: xl,
                    hi: xl + width,
                },
                y: Interval {
                    lo: yl,
                    hi: yl + height,
                },
            });
        }
    }
    Ok(out)
}

/// Leading (position 1) symbol of a rectangle's word.
pub fn leading_symbol(rect: &SymbolicRectangle) -> u8 {
    rect.cylinder.symbol_at(1).unwrap_or(1)
}
