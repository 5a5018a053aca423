//! Bootstrap distributions for the band and for pointwise intervals.
//!
//! The band uses a smoothed bootstrap: resamples are drawn from the kernel
//! mixtures `F̂_P`, `F̂_Q`, and the bootstrap map composes the *empirical* CDF and
//! quantile of those resamples. Pointwise intervals use the ordinary empirical
//! bootstrap. Replicate `b` always draws from stream `b` of its key.

use rand::Rng;
use rayon::prelude::*;

use crate::dist_est::{ceil_rank, composed_rank, Sample, SmoothedCdf};
use crate::error::{Error, Result};
use crate::grid::validate_grid;
use crate::otmap::{EmpiricalOtMapEstimate, OtMapEstimate, ScaleEstimate};
use crate::rng::StreamKey;

pub const DEFAULT_REPLICATES: usize = 2500;
pub const MIN_REPLICATES: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapConfig {
    pub replicates: usize,
    pub seed: u64,
    pub grid: Vec<f64>,
    pub alpha_levels: Vec<f64>,
}

impl BootstrapConfig {
    pub fn new(replicates: usize, seed: u64, grid: Vec<f64>, alpha_levels: Vec<f64>) -> Result<Self> {
        if replicates < MIN_REPLICATES {
            return Err(Error::config(format!(
                "at least {MIN_REPLICATES} bootstrap replicates are required, got {replicates}"
            )));
        }
        validate_grid(&grid)?;
        for &a in &alpha_levels {
            validate_alpha(a)?;
        }
        Ok(Self { replicates, seed, grid, alpha_levels })
    }

    /// Root key for this configuration's streams.
    pub fn key(&self) -> StreamKey {
        StreamKey::root(self.seed)
    }
}

pub fn validate_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::config(format!("alpha must lie in (0, 1), got {alpha}")))
    }
}

/// Draws of `√N · max_grid |T̂*(x) − T̂(x)| / ŝ(x)`, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SupStatisticDraws {
    values: Vec<f64>,
}

impl SupStatisticDraws {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::numeric("no bootstrap draws"));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::numeric(format!("invalid sup-statistic draw {v}")));
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

    pub fn median(&self) -> f64 {
        self.values[ceil_rank(0.5, self.len()) - 1]
    }
}

/// `(1 − α)`-quantile: the `⌈(1 − α)B⌉`-th order statistic of the draws.
pub fn quantile_of_draws(draws: &SupStatisticDraws, alpha: f64) -> Result<f64> {
    validate_alpha(alpha)?;
    Ok(draws.values[ceil_rank(1.0 - alpha, draws.len()) - 1])
}

/// Draws of `√N (T̃*(x) − T̃(x))` at one point, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct PointwiseDraws {
    pub x: f64,
    values: Vec<f64>,
}

impl PointwiseDraws {
    pub fn new(x: f64, mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::numeric("no bootstrap draws"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::numeric(format!("non-finite pointwise draw at x = {x}")));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { x, values })
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

    /// `⌈level · B⌉`-th order statistic.
    pub fn quantile(&self, level: f64) -> f64 {
        self.values[ceil_rank(level, self.len()) - 1]
    }
}

/// `count` i.i.d. draws from the kernel mixture: `X_I + r ε`, `I` uniform, `ε ~ K`.
pub fn sample_from_smoothed<R: Rng + ?Sized>(cdf: &SmoothedCdf, count: usize, rng: &mut R) -> Result<Sample> {
    let mut out = Vec::with_capacity(count);
    draw_mixture(cdf, count, rng, &mut out);
    Sample::new(out)
}

fn draw_mixture<R: Rng + ?Sized>(cdf: &SmoothedCdf, count: usize, rng: &mut R, out: &mut Vec<f64>) {
    let values = cdf.sample().values();
    let (kernel, r) = (cdf.kernel(), cdf.bandwidth());
    out.clear();
    out.extend((0..count).map(|_| values[rng.random_range(0..values.len())] + r * kernel.sample(rng)));
}

fn draw_with_replacement<R: Rng + ?Sized>(values: &[f64], count: usize, rng: &mut R, out: &mut Vec<f64>) {
    out.clear();
    out.extend((0..count).map(|_| values[rng.random_range(0..values.len())]));
}

/// `cum[j] = #{v : v ≤ grid[j]}` for a sorted grid.
fn counts_on_grid(draws: &[f64], grid: &[f64], bins: &mut Vec<usize>, cum: &mut Vec<usize>) {
    bins.clear();
    bins.resize(grid.len() + 1, 0);
    for &v in draws {
        bins[grid.partition_point(|&g| g < v)] += 1;
    }
    cum.clear();
    let mut acc = 0;
    for &b in &bins[..grid.len()] {
        acc += b;
        cum.push(acc);
    }
}

#[derive(Default)]
struct Scratch {
    xs: Vec<f64>,
    ys: Vec<f64>,
    bins: Vec<usize>,
    cum: Vec<usize>,
}

fn sup_replicate(map: &OtMapEstimate, scale: &ScaleEstimate, key: &StreamKey, b: u64, s: &mut Scratch) -> f64 {
    let mut rng = key.stream(b);
    let (n, m) = (map.n(), map.m());
    draw_mixture(map.source(), n, &mut rng, &mut s.xs);
    draw_mixture(map.target(), m, &mut rng, &mut s.ys);
    s.ys.sort_unstable_by(f64::total_cmp);
    counts_on_grid(&s.xs, &scale.grid, &mut s.bins, &mut s.cum);
    let mut worst: f64 = 0.0;
    for (j, &k) in s.cum.iter().enumerate() {
        let t_star = s.ys[composed_rank(k, n, m) - 1];
        worst = worst.max((t_star - scale.center[j]).abs() / scale.s_hat[j]);
    }
    ((n + m) as f64).sqrt() * worst
}

/// Smoothed-bootstrap sup statistics under an explicit stream key.
pub fn uniform_sup_draws_keyed(
    map: &OtMapEstimate,
    scale: &ScaleEstimate,
    replicates: usize,
    key: &StreamKey,
) -> Result<SupStatisticDraws> {
    if scale.is_empty() {
        return Err(Error::config("scale estimate has an empty grid"));
    }
    let values: Vec<f64> = (0..replicates as u64)
        .into_par_iter()
        .map_init(Scratch::default, |s, b| sup_replicate(map, scale, key, b, s))
        .collect();
    SupStatisticDraws::new(values)
}

/// Smoothed-bootstrap sup statistics on `cfg.grid`; `scale` must be on that grid.
pub fn uniform_sup_draws(map: &OtMapEstimate, scale: &ScaleEstimate, cfg: &BootstrapConfig) -> Result<SupStatisticDraws> {
    if scale.grid != cfg.grid {
        return Err(Error::config("scale estimate was computed on a different grid"));
    }
    uniform_sup_draws_keyed(map, scale, cfg.replicates, &cfg.key().derive("smoothed-bootstrap", 0))
}

fn pointwise_replicate(est: &EmpiricalOtMapEstimate, grid: &[f64], center: &[f64], key: &StreamKey, b: u64, s: &mut Scratch) -> Vec<f64> {
    let mut rng = key.stream(b);
    let (n, m) = (est.n(), est.m());
    draw_with_replacement(est.source().sample().values(), n, &mut rng, &mut s.xs);
    draw_with_replacement(est.target().sample().values(), m, &mut rng, &mut s.ys);
    s.ys.sort_unstable_by(f64::total_cmp);
    counts_on_grid(&s.xs, grid, &mut s.bins, &mut s.cum);
    let root_total = ((n + m) as f64).sqrt();
    s.cum
        .iter()
        .zip(center)
        .map(|(&k, &c)| root_total * (s.ys[composed_rank(k, n, m) - 1] - c))
        .collect()
}

/// Empirical-bootstrap draws at every grid point, sharing replicates across points.
pub fn pointwise_draws_grid_keyed(
    est: &EmpiricalOtMapEstimate,
    grid: &[f64],
    replicates: usize,
    key: &StreamKey,
) -> Result<Vec<PointwiseDraws>> {
    validate_grid(grid)?;
    let center: Vec<f64> = grid.iter().map(|&x| est.eval(x)).collect();
    let rows: Vec<Vec<f64>> = (0..replicates as u64)
        .into_par_iter()
        .map_init(Scratch::default, |s, b| pointwise_replicate(est, grid, &center, key, b, s))
        .collect();
    grid.iter()
        .enumerate()
        .map(|(j, &x)| PointwiseDraws::new(x, rows.iter().map(|row| row[j]).collect()))
        .collect()
}

pub fn pointwise_draws_grid(est: &EmpiricalOtMapEstimate, grid: &[f64], cfg: &BootstrapConfig) -> Result<Vec<PointwiseDraws>> {
    pointwise_draws_grid_keyed(est, grid, cfg.replicates, &cfg.key().derive("empirical-bootstrap", 0))
}

/// `B` draws of `√N (T̃*(x) − T̃(x))` at a single point.
pub fn pointwise_draws(est: &EmpiricalOtMapEstimate, x: f64, cfg: &BootstrapConfig) -> Result<PointwiseDraws> {
    let mut all = pointwise_draws_grid(est, &[x], cfg)?;
    Ok(all.remove(0))
}
