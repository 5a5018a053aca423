use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_GRID_POINTS: usize = 512;

/// Closed evaluation interval `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub a: f64,
    pub b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::config(format!("interval requires finite a < b, got [{a}, {b}]")));
        }
        Ok(Self { a, b })
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.a && x <= self.b
    }

    /// Middle `fraction` of the interval, e.g. 0.9 for the central 90%.
    pub fn central(&self, fraction: f64) -> Interval {
        let mid = 0.5 * (self.a + self.b);
        let half = 0.5 * fraction * (self.b - self.a);
        Interval { a: mid - half, b: mid + half }
    }

    /// `points` equispaced values including both endpoints.
    pub fn grid(&self, points: usize) -> Result<Vec<f64>> {
        match points {
            0 => Err(Error::config("grid needs at least one point")),
            1 => Ok(vec![0.5 * (self.a + self.b)]),
            _ => {
                let step = (self.b - self.a) / (points - 1) as f64;
                Ok((0..points)
                    .map(|i| if i + 1 == points { self.b } else { self.a + step * i as f64 })
                    .collect())
            }
        }
    }
}

/// Checks a grid is nonempty, finite and sorted ascending.
pub fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::config("grid is empty"));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::config("grid contains non-finite points"));
    }
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::config("grid must be sorted ascending"));
    }
    Ok(())
}
