//! Monte Carlo coverage studies for the uniform band and the pointwise intervals.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bands::build_uniform_band;
use crate::bootstrap::{pointwise_draws_grid_keyed, quantile_of_draws, uniform_sup_draws_keyed, validate_alpha, MIN_REPLICATES};
use crate::dist_est::{EmpiricalCdf, Sample, SmoothedCdf};
use crate::error::{Error, Result};
use crate::grid::Interval;
use crate::kernels::{check_order_compatibility, BandwidthRule, KernelSpec};
use crate::otmap::{scale_plugin, EmpiricalOtMapEstimate, KnownTruth, OtMapEstimate};
use crate::rng::StreamKey;
use crate::simulation::reference::{GammaParameter, ReferenceDistribution};

/// Number of failure messages kept per cell.
const KEPT_FAILURES: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationDesign {
    pub source: ReferenceDistribution,
    pub target: ReferenceDistribution,
    pub n_values: Vec<usize>,
    /// Limit of `n / (n + m)`; the target size is `m = round(n (1 − κ) / κ)`.
    pub kappa: f64,
    pub kernel: KernelSpec,
    pub beta: f64,
    pub bandwidth_constant: f64,
    pub interval: Interval,
    pub grid_points: usize,
    pub alpha_levels: Vec<f64>,
    pub mc_iterations: usize,
    pub replicates: usize,
    pub seed: u64,
}

impl SimulationDesign {
    /// Standard normal to Gamma(5, rate 0.5), `m = n/4`, Gaussian kernel with
    /// `r = ½ n^{-1/2}`, evaluated on `[-2.5, 2.5]`.
    pub fn default_study() -> Self {
        SimulationDesign {
            source: ReferenceDistribution::standard_normal(),
            target: ReferenceDistribution::gamma(5.0, 0.5, GammaParameter::Rate).expect("valid gamma"),
            n_values: vec![200, 700, 2000],
            kappa: 0.8,
            kernel: KernelSpec::Gaussian,
            beta: 0.5,
            bandwidth_constant: 0.5,
            interval: Interval { a: -2.5, b: 2.5 },
            grid_points: 512,
            alpha_levels: vec![0.10, 0.05, 0.01],
            mc_iterations: 1000,
            replicates: 2500,
            seed: 20240601,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.kappa > 0.0 && self.kappa < 1.0) {
            return Err(Error::config(format!("kappa must lie in (0, 1), got {}", self.kappa)));
        }
        if self.n_values.is_empty() || self.n_values.iter().any(|&n| n < 2) {
            return Err(Error::config("n_values must be nonempty and every n at least 2"));
        }
        if self.n_values.iter().any(|&n| self.target_size(n) < 2) {
            return Err(Error::config("kappa leaves fewer than 2 target observations"));
        }
        let rule = BandwidthRule::new(self.beta, self.bandwidth_constant)?;
        if !check_order_compatibility(self.kernel, rule.beta()) {
            return Err(Error::config(format!(
                "kernel {} of order {} cannot support beta = {}",
                self.kernel,
                self.kernel.order(),
                self.beta
            )));
        }
        Interval::new(self.interval.a, self.interval.b)?;
        if self.grid_points == 0 {
            return Err(Error::config("grid_points must be positive"));
        }
        if self.alpha_levels.is_empty() {
            return Err(Error::config("alpha_levels is empty"));
        }
        for &a in &self.alpha_levels {
            validate_alpha(a)?;
        }
        if self.mc_iterations == 0 {
            return Err(Error::config("mc_iterations must be positive"));
        }
        if self.replicates < MIN_REPLICATES {
            return Err(Error::config(format!("at least {MIN_REPLICATES} bootstrap replicates are required")));
        }
        Ok(())
    }

    pub fn target_size(&self, n: usize) -> usize {
        (n as f64 * (1.0 - self.kappa) / self.kappa).round() as usize
    }

    pub fn bandwidth_rule(&self) -> Result<BandwidthRule> {
        BandwidthRule::new(self.beta, self.bandwidth_constant)
    }

    pub fn grid(&self) -> Result<Vec<f64>> {
        self.interval.grid(self.grid_points)
    }

    fn truth(&self) -> KnownTruth {
        KnownTruth { source: self.source, target: self.target }
    }

    /// Data for iteration `iter` at size `n`; shared by both studies.
    pub fn draw_samples(&self, n: usize, iter: u64) -> Result<(Sample, Sample)> {
        let mut rng = StreamKey::root(self.seed).derive("mc-data", n as u64).stream(iter);
        let xs = self.source.sample_n(n, &mut rng);
        let ys = self.target.sample_n(self.target_size(n), &mut rng);
        Ok((Sample::new(xs)?, Sample::new(ys)?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformCell {
    pub alpha: f64,
    pub n: usize,
    pub m: usize,
    pub iterations: usize,
    pub failures: usize,
    pub coverage: f64,
    pub mc_standard_error: f64,
    pub median_average_width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointwiseCell {
    pub alpha: f64,
    pub n: usize,
    pub m: usize,
    pub iterations: usize,
    pub failures: usize,
    pub average_coverage: f64,
    pub min_coverage: f64,
    pub max_coverage: f64,
    pub median_average_width: f64,
    /// Coverage at each grid point.
    pub coverage_by_point: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct CoverageReport {
    pub uniform: Vec<UniformCell>,
    pub pointwise: Vec<PointwiseCell>,
    /// First few failure messages, as `n=…, iteration=…: message`.
    pub failure_log: Vec<String>,
}

/// Per-iteration outcome: one entry per alpha level.
struct UniformOutcome {
    covered: Vec<bool>,
    width: Vec<f64>,
}

fn uniform_iteration(design: &SimulationDesign, rule: &BandwidthRule, grid: &[f64], truth: &[f64], n: usize, iter: u64) -> Result<UniformOutcome> {
    let (xs, ys) = design.draw_samples(n, iter)?;
    let m = ys.len();
    let source = SmoothedCdf::fit(xs, design.kernel, rule.bandwidth(n)?)?;
    let target = SmoothedCdf::fit(ys, design.kernel, rule.bandwidth(m)?)?;
    let map = OtMapEstimate::new(source, target)?;
    let scale = scale_plugin(&map, grid)?;
    let key = StreamKey::root(design.seed).derive("smoothed-bootstrap", n as u64).derive("iteration", iter);
    let draws = uniform_sup_draws_keyed(&map, &scale, design.replicates, &key)?;
    let mut out = UniformOutcome { covered: Vec::new(), width: Vec::new() };
    for &alpha in &design.alpha_levels {
        let band = build_uniform_band(&map, &scale, quantile_of_draws(&draws, alpha)?, alpha)?;
        let ok = truth.iter().enumerate().all(|(j, &t)| band.lower[j] <= t && t <= band.upper[j]);
        out.covered.push(ok);
        out.width.push(crate::bands::average_width(&band));
    }
    Ok(out)
}

struct PointwiseOutcome {
    /// `covered[a][j]` for alpha level `a` and grid point `j`.
    covered: Vec<Vec<bool>>,
    width: Vec<f64>,
}

fn pointwise_iteration(design: &SimulationDesign, grid: &[f64], truth: &[f64], n: usize, iter: u64) -> Result<PointwiseOutcome> {
    let (xs, ys) = design.draw_samples(n, iter)?;
    let est = EmpiricalOtMapEstimate::new(EmpiricalCdf::new(xs), EmpiricalCdf::new(ys));
    let key = StreamKey::root(design.seed).derive("empirical-bootstrap", n as u64).derive("iteration", iter);
    let draws = pointwise_draws_grid_keyed(&est, grid, design.replicates, &key)?;
    let root_total = ((est.n() + est.m()) as f64).sqrt();
    let centers: Vec<f64> = grid.iter().map(|&x| est.eval(x)).collect();
    let mut out = PointwiseOutcome { covered: Vec::new(), width: Vec::new() };
    for &alpha in &design.alpha_levels {
        let mut row = Vec::with_capacity(grid.len());
        let mut width = 0.0;
        for (j, d) in draws.iter().enumerate() {
            let half = (d.quantile(1.0 - alpha / 2.0) / root_total).max(0.0);
            row.push((truth[j] - centers[j]).abs() <= half);
            width += 2.0 * half;
        }
        out.covered.push(row);
        out.width.push(width / grid.len() as f64);
    }
    Ok(out)
}

fn median(mut v: Vec<f64>) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let k = v.len();
    if k % 2 == 1 { v[k / 2] } else { 0.5 * (v[k / 2 - 1] + v[k / 2]) }
}

fn log_failures<T>(n: usize, results: &[Result<T>], log: &mut Vec<String>) -> usize {
    let mut count = 0;
    for (i, r) in results.iter().enumerate() {
        if let Err(e) = r {
            count += 1;
            if count <= KEPT_FAILURES {
                log.push(format!("n={n}, iteration={i}: {e}"));
            }
        }
    }
    count
}

fn all_failed<T>(n: usize, results: &[Result<T>]) -> Error {
    let first = results.iter().find_map(|r| r.as_ref().err()).map(|e| e.to_string()).unwrap_or_default();
    Error::numeric(format!("every iteration failed at n={n}; first error: {first}"))
}

/// Coverage of the uniform band at every `(n, α)`. Failed iterations are
/// counted in `failures` and excluded from both coverage and width; a sample
/// size at which every iteration fails is an error.
pub fn run_uniform_study(design: &SimulationDesign) -> Result<CoverageReport> {
    design.validate()?;
    let rule = design.bandwidth_rule()?;
    let grid = design.grid()?;
    let truth_map = design.truth();
    let truth: Vec<f64> = grid.iter().map(|&x| truth_map.map(x)).collect();
    let mut report = CoverageReport::default();
    for &n in &design.n_values {
        let results: Vec<Result<UniformOutcome>> = (0..design.mc_iterations as u64)
            .into_par_iter()
            .map(|iter| uniform_iteration(design, &rule, &grid, &truth, n, iter))
            .collect();
        let failures = log_failures(n, &results, &mut report.failure_log);
        let ok: Vec<&UniformOutcome> = results.iter().filter_map(|r| r.as_ref().ok()).collect();
        if ok.is_empty() {
            return Err(all_failed(n, &results));
        }
        for (a, &alpha) in design.alpha_levels.iter().enumerate() {
            let count = ok.len();
            let hits = ok.iter().filter(|o| o.covered[a]).count();
            let coverage = hits as f64 / count as f64;
            report.uniform.push(UniformCell {
                alpha,
                n,
                m: design.target_size(n),
                iterations: design.mc_iterations,
                failures,
                coverage,
                mc_standard_error: (coverage * (1.0 - coverage) / count as f64).sqrt(),
                median_average_width: median(ok.iter().map(|o| o.width[a]).collect()),
            });
        }
    }
    Ok(report)
}

/// Pointwise coverage of the empirical-bootstrap intervals at every grid point.
pub fn run_pointwise_study(design: &SimulationDesign) -> Result<CoverageReport> {
    design.validate()?;
    let grid = design.grid()?;
    let truth_map = design.truth();
    let truth: Vec<f64> = grid.iter().map(|&x| truth_map.map(x)).collect();
    let mut report = CoverageReport::default();
    for &n in &design.n_values {
        let results: Vec<Result<PointwiseOutcome>> = (0..design.mc_iterations as u64)
            .into_par_iter()
            .map(|iter| pointwise_iteration(design, &grid, &truth, n, iter))
            .collect();
        let failures = log_failures(n, &results, &mut report.failure_log);
        let ok: Vec<&PointwiseOutcome> = results.iter().filter_map(|r| r.as_ref().ok()).collect();
        if ok.is_empty() {
            return Err(all_failed(n, &results));
        }
        for (a, &alpha) in design.alpha_levels.iter().enumerate() {
            let count = ok.len() as f64;
            let coverage_by_point: Vec<f64> = (0..grid.len())
                .map(|j| ok.iter().filter(|o| o.covered[a][j]).count() as f64 / count)
                .collect();
            let average = coverage_by_point.iter().sum::<f64>() / grid.len() as f64;
            report.pointwise.push(PointwiseCell {
                alpha,
                n,
                m: design.target_size(n),
                iterations: design.mc_iterations,
                failures,
                average_coverage: average,
                min_coverage: coverage_by_point.iter().copied().fold(f64::INFINITY, f64::min),
                max_coverage: coverage_by_point.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                median_average_width: median(ok.iter().map(|o| o.width[a]).collect()),
                coverage_by_point,
            });
        }
    }
    Ok(report)
}

/// Both studies on the same data streams.
pub fn run_study(design: &SimulationDesign) -> Result<CoverageReport> {
    let mut report = run_uniform_study(design)?;
    let pointwise = run_pointwise_study(design)?;
    report.pointwise = pointwise.pointwise;
    report.failure_log.extend(pointwise.failure_log);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SimulationDesign {
        SimulationDesign {
            n_values: vec![60, 120],
            grid_points: 32,
            mc_iterations: 12,
            replicates: 100,
            target: ReferenceDistribution::normal(1.0, 2.0).unwrap(),
            interval: Interval { a: -1.5, b: 1.5 },
            ..SimulationDesign::default_study()
        }
    }

    #[test]
    fn target_size_matches_quarter_ratio() {
        let d = SimulationDesign::default_study();
        assert_eq!(d.target_size(200), 50);
        assert_eq!(d.target_size(700), 175);
        assert_eq!(d.target_size(2000), 500);
        assert!(d.validate().is_ok());
    }

    #[test]
    fn validation_rejects_bad_designs() {
        let base = small();
        let bad = [
            SimulationDesign { kappa: 1.0, ..base.clone() },
            SimulationDesign { beta: 1.6, ..base.clone() },
            SimulationDesign { alpha_levels: vec![], ..base.clone() },
            SimulationDesign { alpha_levels: vec![1.5], ..base.clone() },
            SimulationDesign { interval: Interval { a: 1.0, b: 0.0 }, ..base.clone() },
            SimulationDesign { replicates: 10, ..base.clone() },
            SimulationDesign { n_values: vec![], ..base.clone() },
        ];
        for d in bad {
            assert!(matches!(d.validate(), Err(Error::Config(_))), "{d:?}");
        }
    }

    #[test]
    fn samples_are_reproducible_and_sized() {
        let d = small();
        let (x1, y1) = d.draw_samples(60, 3).unwrap();
        let (x2, y2) = d.draw_samples(60, 3).unwrap();
        assert_eq!(x1.values(), x2.values());
        assert_eq!(y1.values(), y2.values());
        assert_eq!((x1.len(), y1.len()), (60, 15));
        assert_ne!(d.draw_samples(60, 4).unwrap().0.values(), x1.values());
    }

    #[test]
    fn study_cells_are_well_formed() {
        let d = small();
        let report = run_study(&d).unwrap();
        assert_eq!(report.uniform.len(), 6);
        assert_eq!(report.pointwise.len(), 6);
        for c in &report.uniform {
            assert_eq!(c.failures, 0);
            assert!((0.0..=1.0).contains(&c.coverage));
            assert!(c.median_average_width > 0.0);
        }
        for c in &report.pointwise {
            assert!(c.min_coverage <= c.average_coverage && c.average_coverage <= c.max_coverage);
            assert_eq!(c.coverage_by_point.len(), 32);
        }
        // widths shrink as alpha grows within a sample size
        let w: Vec<f64> = report.uniform[..3].iter().map(|c| c.median_average_width).collect();
        assert!(w[0] <= w[1] && w[1] <= w[2]);
        assert_eq!(run_study(&d).unwrap(), report);
    }

    #[test]
    fn design_round_trips_through_toml() {
        let d = SimulationDesign::default_study();
        let text = toml::to_string(&d).unwrap();
        let back: SimulationDesign = toml::from_str(&text).unwrap();
        assert_eq!(back, d);
    }
}
