use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};

/// A closed real interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return domain(format!("interval bounds must be finite, got [{lo}, {hi}]"));
        }
        if lo >= hi {
            return domain(format!("empty interval [{lo}, {hi}]"));
        }
        Ok(Interval { lo, hi })
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        Interval::new(self.lo.max(other.lo), self.hi.min(other.hi)).ok()
    }

    /// `n >= 2` equally spaced points including both ends.
    pub fn linspace(&self, n: usize) -> Vec<f64> {
        linspace(self.lo, self.hi, n)
    }

    /// `n` cell-centred points, each half a step away from the ends.
    pub fn midpoints(&self, n: usize) -> Vec<f64> {
        let step = self.width() / n as f64;
        (0..n).map(|i| self.lo + (i as f64 + 0.5) * step).collect()
    }
}

/// `n` equally spaced points from `a` to `b`; a single point yields `[a]`.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let step = (b - a) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { b } else { a + i as f64 * step })
                .collect()
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Parses `a:b` into its two bounds without ordering checks.
pub fn parse_bounds(s: &str) -> Result<(f64, f64)> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected `a:b`, got `{s}`")))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("invalid number `{t}` in range `{s}`")))
    };
    Ok((parse(a)?, parse(b)?))
}

impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = parse_bounds(s)?;
        Interval::new(a, b)
    }
}
