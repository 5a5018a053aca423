//! Uniform bands, pointwise intervals, and the coverage/width functionals.

use serde::{Deserialize, Serialize};

use crate::bootstrap::{validate_alpha, PointwiseDraws};
use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::otmap::{EmpiricalOtMapEstimate, OtMapEstimate, ScaleEstimate};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandMetadata {
    pub kernel: KernelSpec,
    pub beta: Option<f64>,
    pub r_n: f64,
    pub r_m: f64,
    pub seed: Option<u64>,
}

/// `T̂(x) ± ŝ(x) q̂(1 − α) / √(n + m)` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BandResult {
    pub grid: Vec<f64>,
    pub center: Vec<f64>,
    pub scale: Vec<f64>,
    pub q_hat: f64,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub alpha: f64,
    pub n: usize,
    pub m: usize,
    pub metadata: BandMetadata,
}

impl BandResult {
    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn half_width(&self, j: usize) -> f64 {
        self.upper[j] - self.center[j]
    }

    pub fn with_provenance(mut self, beta: Option<f64>, seed: Option<u64>) -> Self {
        self.metadata.beta = beta;
        self.metadata.seed = seed;
        self
    }
}

pub fn build_uniform_band(map: &OtMapEstimate, scale: &ScaleEstimate, q_hat: f64, alpha: f64) -> Result<BandResult> {
    validate_alpha(alpha)?;
    if !(q_hat.is_finite() && q_hat >= 0.0) {
        return Err(Error::numeric(format!("bootstrap quantile must be finite and >= 0, got {q_hat}")));
    }
    let (n, m) = (map.n(), map.m());
    let factor = q_hat / ((n + m) as f64).sqrt();
    let half: Vec<f64> = scale.s_hat.iter().map(|s| s * factor).collect();
    let lower = scale.center.iter().zip(&half).map(|(c, h)| c - h).collect();
    let upper = scale.center.iter().zip(&half).map(|(c, h)| c + h).collect();
    Ok(BandResult {
        grid: scale.grid.clone(),
        center: scale.center.clone(),
        scale: scale.s_hat.clone(),
        q_hat,
        lower,
        upper,
        alpha,
        n,
        m,
        metadata: BandMetadata {
            kernel: map.source().kernel(),
            beta: None,
            r_n: map.source().bandwidth(),
            r_m: map.target().bandwidth(),
            seed: None,
        },
    })
}

/// True iff `lower ≤ T₀ ≤ upper` at every grid point.
pub fn covers(band: &BandResult, truth: impl Fn(f64) -> f64) -> bool {
    band.grid
        .iter()
        .enumerate()
        .all(|(j, &x)| {
            let t = truth(x);
            band.lower[j] <= t && t <= band.upper[j]
        })
}

/// Mean over the grid of `upper − lower`.
pub fn average_width(band: &BandResult) -> f64 {
    if band.is_empty() {
        return 0.0;
    }
    band.upper.iter().zip(&band.lower).map(|(u, l)| u - l).sum::<f64>() / band.len() as f64
}

/// `T̃(x) ± q̃(1 − α/2) / √(n + m)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointwiseInterval {
    pub x: f64,
    pub center: f64,
    pub half_width: f64,
    pub alpha: f64,
    /// `x` lies outside the range of the source sample.
    pub extrapolation: bool,
}

impl PointwiseInterval {
    pub fn lower(&self) -> f64 {
        self.center - self.half_width
    }

    pub fn upper(&self) -> f64 {
        self.center + self.half_width
    }

    pub fn width(&self) -> f64 {
        2.0 * self.half_width
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lower() <= value && value <= self.upper()
    }
}

/// Half-width is the `⌈(1 − α/2)B⌉`-th order statistic over `√N`; a negative
/// order statistic (possible only for degenerate draws) is clamped to zero.
pub fn build_pointwise_interval(est: &EmpiricalOtMapEstimate, draws: &PointwiseDraws, alpha: f64) -> Result<PointwiseInterval> {
    validate_alpha(alpha)?;
    let root_total = ((est.n() + est.m()) as f64).sqrt();
    let q = draws.quantile(1.0 - alpha / 2.0);
    Ok(PointwiseInterval {
        x: draws.x,
        center: est.eval(draws.x),
        half_width: (q / root_total).max(0.0),
        alpha,
        extrapolation: est.is_extrapolation(draws.x),
    })
}
