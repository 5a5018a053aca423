//! Distribution estimates from a single sample: the kernel-smoothed CDF and
//! density, the empirical CDF, and their inverses.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::KernelSpec;

/// Sorted batch of finite observations from one distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    /// Sorts `values` (stable; ties kept) and rejects NaN/±∞ and empty input.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::data("sample is empty"));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::data(format!("sample contains non-finite value {bad}")));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// `i`-th order statistic, 1-based.
    pub fn order_statistic(&self, rank: usize) -> f64 {
        self.values[rank.clamp(1, self.len()) - 1]
    }

    /// Interquartile range using the order-statistic quantile convention.
    pub fn iqr(&self) -> f64 {
        let n = self.len();
        self.order_statistic(ceil_rank(0.75, n)) - self.order_statistic(ceil_rank(0.25, n))
    }
}

impl TryFrom<Vec<f64>> for Sample {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Sample::new(values)
    }
}

impl From<Sample> for Vec<f64> {
    fn from(s: Sample) -> Self {
        s.values
    }
}

/// `⌈p·n⌉` clamped to `1..=n`. The product is nudged down by a relative 1e-12
/// so that values like `0.99 · 2500` do not round up past an integer.
pub fn ceil_rank(p: f64, n: usize) -> usize {
    let x = p * n as f64;
    let rank = (x - 1e-12 * x.abs().max(1.0)).ceil();
    (rank.max(1.0) as usize).min(n)
}

/// `⌈k·m/n⌉` in exact integer arithmetic, with `k = 0` mapped to 1
/// (generalized inverse at level zero is the minimum).
pub fn composed_rank(k: usize, n: usize, m: usize) -> usize {
    if k == 0 {
        1
    } else {
        (k * m).div_ceil(n).clamp(1, m)
    }
}

/// Target of a monotone inversion: a lower-tail probability `F(y) = p` or an
/// upper-tail probability `1 - F(y) = q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailProbability {
    Lower(f64),
    Upper(f64),
}

impl TailProbability {
    /// Lower-tail equivalent (may lose precision near 1).
    pub fn lower(self) -> f64 {
        match self {
            TailProbability::Lower(p) => p,
            TailProbability::Upper(q) => 1.0 - q,
        }
    }
}

const BISECTION_WIDTH: f64 = 1e-12;
const MAX_NEWTON_STEPS: usize = 5;
const MAX_EXPANSIONS: usize = 1100;

/// Kernel estimate `F̂(x) = n⁻¹ Σ K̄((x − Xᵢ)/r)` with density
/// `f̂(x) = (n r)⁻¹ Σ K((x − Xᵢ)/r)`.
#[derive(Debug, Clone)]
pub struct SmoothedCdf {
    sample: Sample,
    kernel: KernelSpec,
    bandwidth: f64,
}

impl SmoothedCdf {
    pub fn fit(sample: Sample, kernel: KernelSpec, bandwidth: f64) -> Result<Self> {
        if !(bandwidth.is_finite() && bandwidth > 0.0) {
            return Err(Error::config(format!("bandwidth must be positive, got {bandwidth}")));
        }
        Ok(Self { sample, kernel, bandwidth })
    }

    pub fn sample(&self) -> &Sample {
        &self.sample
    }

    pub fn kernel(&self) -> KernelSpec {
        self.kernel
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn len(&self) -> usize {
        self.sample.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index range of observations within `radius · r` of `x`.
    fn window(&self, x: f64) -> (usize, usize) {
        let reach = self.kernel.support_radius() * self.bandwidth;
        let v = self.sample.values();
        let lo = v.partition_point(|&xi| xi < x - reach);
        let hi = v.partition_point(|&xi| xi <= x + reach);
        (lo, hi)
    }

    /// `F̂(x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        let v = self.sample.values();
        let (lo, hi) = self.window(x);
        let mut sum = lo as f64;
        for &xi in &v[lo..hi] {
            sum += self.kernel.cdf((x - xi) / self.bandwidth);
        }
        if lo == 0 && sum < 1e-12 && !self.kernel.is_compact() {
            // Deep left tail: terms beyond the window decrease with the index.
            for &xi in &v[hi..] {
                let term = self.kernel.cdf((x - xi) / self.bandwidth);
                sum += term;
                if term <= 1e-17 * sum || term == 0.0 {
                    break;
                }
            }
        }
        sum / v.len() as f64
    }

    /// `1 − F̂(x)`, accurate in the right tail.
    pub fn sf(&self, x: f64) -> f64 {
        let v = self.sample.values();
        let (lo, hi) = self.window(x);
        let mut sum = (v.len() - hi) as f64;
        for &xi in &v[lo..hi] {
            sum += self.kernel.sf((x - xi) / self.bandwidth);
        }
        if hi == v.len() && sum < 1e-12 && !self.kernel.is_compact() {
            for &xi in v[..lo].iter().rev() {
                let term = self.kernel.sf((x - xi) / self.bandwidth);
                sum += term;
                if term <= 1e-17 * sum || term == 0.0 {
                    break;
                }
            }
        }
        sum / v.len() as f64
    }

    /// Evaluate the tail that is below one half, for use as an inversion target.
    pub fn tail_probability(&self, x: f64) -> TailProbability {
        let p = self.cdf(x);
        if p <= 0.5 {
            TailProbability::Lower(p)
        } else {
            TailProbability::Upper(self.sf(x))
        }
    }

    /// `f̂(x)`.
    pub fn density(&self, x: f64) -> f64 {
        let v = self.sample.values();
        let (lo, hi) = self.window(x);
        let r = self.bandwidth;
        let mut sum: f64 = v[lo..hi].iter().map(|&xi| self.kernel.eval((x - xi) / r)).sum();
        if sum == 0.0 && !self.kernel.is_compact() {
            // Outside every window: the nearest observations on each side dominate.
            for &xi in &v[hi..] {
                let term = self.kernel.eval((x - xi) / r);
                sum += term;
                if term <= 1e-17 * sum || term == 0.0 {
                    break;
                }
            }
            for &xi in v[..lo].iter().rev() {
                let term = self.kernel.eval((x - xi) / r);
                sum += term;
                if term <= 1e-17 * sum || term == 0.0 {
                    break;
                }
            }
        }
        sum / (v.len() as f64 * r)
    }

    /// `F̂⁻¹(p)` for `0 < p < 1`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::config(format!("quantile level must lie in (0, 1), got {p}")));
        }
        if p <= 0.5 {
            self.invert(TailProbability::Lower(p))
        } else {
            self.invert(TailProbability::Upper(1.0 - p))
        }
    }

    /// The `y` with `1 − F̂(y) = q`, for `0 < q < 1`.
    pub fn quantile_sf(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::config(format!("tail level must lie in (0, 1), got {q}")));
        }
        self.invert(TailProbability::Upper(q))
    }

    /// Signed residual, increasing in `y`, whose root is the requested quantile.
    fn residual(&self, target: TailProbability, y: f64) -> f64 {
        match target {
            TailProbability::Lower(p) => self.cdf(y) - p,
            TailProbability::Upper(q) => q - self.sf(y),
        }
    }

    /// Bracket by expanding outward from the data range, bisect to width 1e-12,
    /// then polish with at most five Newton steps kept inside the bracket.
    pub fn invert(&self, target: TailProbability) -> Result<f64> {
        let level = match target {
            TailProbability::Lower(p) | TailProbability::Upper(p) => p,
        };
        if !(level > 0.0 && level < 1.0) {
            return Err(Error::NonBracketing { p: target.lower() });
        }
        let reach = self.kernel.support_radius() * self.bandwidth;
        let mut lo = self.sample.min() - reach;
        let mut hi = self.sample.max() + reach;
        let mut step = reach;
        let mut expansions = 0;
        while self.residual(target, lo) > 0.0 {
            lo -= step;
            step *= 2.0;
            expansions += 1;
            if expansions > MAX_EXPANSIONS || !lo.is_finite() {
                return Err(Error::NonBracketing { p: target.lower() });
            }
        }
        step = reach;
        expansions = 0;
        while self.residual(target, hi) < 0.0 {
            hi += step;
            step *= 2.0;
            expansions += 1;
            if expansions > MAX_EXPANSIONS || !hi.is_finite() {
                return Err(Error::NonBracketing { p: target.lower() });
            }
        }

        loop {
            let width = hi - lo;
            let mid = 0.5 * (lo + hi);
            if width <= BISECTION_WIDTH.max(4.0 * f64::EPSILON * mid.abs()) || mid <= lo || mid >= hi {
                break;
            }
            let g = self.residual(target, mid);
            if g == 0.0 {
                return Ok(mid);
            }
            if g > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }

        let mut y = 0.5 * (lo + hi);
        for _ in 0..MAX_NEWTON_STEPS {
            let g = self.residual(target, y);
            let d = self.density(y);
            if g == 0.0 || d <= 0.0 {
                break;
            }
            let next = y - g / d;
            if !(next >= lo && next <= hi) || next == y {
                break;
            }
            y = next;
        }
        Ok(y)
    }
}

/// Step function `F̃(x) = #{Xᵢ ≤ x}/n`.
#[derive(Debug, Clone)]
pub struct EmpiricalCdf {
    sample: Sample,
}

impl EmpiricalCdf {
    pub fn new(sample: Sample) -> Self {
        Self { sample }
    }

    pub fn sample(&self) -> &Sample {
        &self.sample
    }

    pub fn len(&self) -> usize {
        self.sample.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `#{Xᵢ ≤ x}`.
    pub fn count_le(&self, x: f64) -> usize {
        self.sample.values().partition_point(|&xi| xi <= x)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.count_le(x) as f64 / self.len() as f64
    }

    /// Generalized inverse `inf{x : p ≤ F̃(x)}`, i.e. `X_(⌈pn⌉)`, for `0 < p ≤ 1`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::config(format!("quantile level must lie in (0, 1], got {p}")));
        }
        Ok(self.sample.order_statistic(ceil_rank(p, self.len())))
    }
}
