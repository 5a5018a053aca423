//! Transport-map estimators and their scale.
//!
//! In one dimension the optimal map is the monotone rearrangement
//! `T₀ = F_Q⁻¹ ∘ F_P`. [`OtMapEstimate`] plugs in the kernel-smoothed CDFs,
//! [`EmpiricalOtMapEstimate`] the empirical ones.

use rayon::prelude::*;

use crate::dist_est::{composed_rank, EmpiricalCdf, SmoothedCdf};
use crate::error::{Error, Result};
use crate::simulation::reference::ReferenceDistribution;

/// `T̂(x) = F̂_Q⁻¹(F̂_P(x))`.
#[derive(Debug, Clone)]
pub struct OtMapEstimate {
    source: SmoothedCdf,
    target: SmoothedCdf,
}

impl OtMapEstimate {
    pub fn new(source: SmoothedCdf, target: SmoothedCdf) -> Result<Self> {
        if source.kernel() != target.kernel() {
            return Err(Error::config(format!(
                "source and target must use the same kernel ({} vs {})",
                source.kernel(),
                target.kernel()
            )));
        }
        Ok(Self { source, target })
    }

    pub fn source(&self) -> &SmoothedCdf {
        &self.source
    }

    pub fn target(&self) -> &SmoothedCdf {
        &self.target
    }

    pub fn n(&self) -> usize {
        self.source.len()
    }

    pub fn m(&self) -> usize {
        self.target.len()
    }

    /// `T̂(x)`. The smaller of `F̂_P(x)` and `1 − F̂_P(x)` is matched against the
    /// same tail of `F̂_Q`, so the identity holds in both tails.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let level = self.source.tail_probability(x);
        self.target.invert(level)
    }

    pub fn eval_grid(&self, grid: &[f64]) -> Result<Vec<f64>> {
        grid.par_iter().map(|&x| self.eval(x)).collect()
    }
}

/// `T̃(x) = F̃_Q⁻¹(F̃_P(x)) = Y_(⌈m F̃_P(x)⌉)`, with `F̃_P(x) = 0` mapped to `Y_(1)`.
#[derive(Debug, Clone)]
pub struct EmpiricalOtMapEstimate {
    source: EmpiricalCdf,
    target: EmpiricalCdf,
}

impl EmpiricalOtMapEstimate {
    pub fn new(source: EmpiricalCdf, target: EmpiricalCdf) -> Self {
        Self { source, target }
    }

    pub fn source(&self) -> &EmpiricalCdf {
        &self.source
    }

    pub fn target(&self) -> &EmpiricalCdf {
        &self.target
    }

    pub fn n(&self) -> usize {
        self.source.len()
    }

    pub fn m(&self) -> usize {
        self.target.len()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let k = self.source.count_le(x);
        self.target.sample().order_statistic(composed_rank(k, self.n(), self.m()))
    }

    /// True when `x` lies outside `[min X, max X]`.
    pub fn is_extrapolation(&self, x: f64) -> bool {
        let s = self.source.sample();
        x < s.min() || x > s.max()
    }
}

/// Plug-in scale `ŝ` on a grid, together with the map estimate there.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleEstimate {
    pub grid: Vec<f64>,
    /// `T̂(x)` at each grid point.
    pub center: Vec<f64>,
    pub s_hat: Vec<f64>,
    /// Whether the value was raised to the floor `1e-8 · IQR(Y)`.
    pub floor_applied: Vec<bool>,
}

impl ScaleEstimate {
    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}

/// `ŝ(x) = √((N/n + N/m) F̂_P(x)(1 − F̂_P(x))) / f̂_Q(T̂(x))`, `N = n + m`.
pub fn scale_plugin(map: &OtMapEstimate, grid: &[f64]) -> Result<ScaleEstimate> {
    let center = map.eval_grid(grid)?;
    scale_plugin_with_center(map, grid, center)
}

/// As [`scale_plugin`], reusing a precomputed `T̂` on the grid.
pub fn scale_plugin_with_center(map: &OtMapEstimate, grid: &[f64], center: Vec<f64>) -> Result<ScaleEstimate> {
    if center.len() != grid.len() {
        return Err(Error::config("center and grid lengths differ"));
    }
    let (n, m) = (map.n() as f64, map.m() as f64);
    let total = n + m;
    let weight = total / n + total / m;
    let floor = {
        let f = 1e-8 * map.target().sample().iqr();
        if f > 0.0 {
            f
        } else {
            f64::MIN_POSITIVE
        }
    };
    let mut s_hat = Vec::with_capacity(grid.len());
    let mut floor_applied = Vec::with_capacity(grid.len());
    for (&x, &t) in grid.iter().zip(&center) {
        let p = map.source().cdf(x);
        let q = map.source().sf(x);
        let density = map.target().density(t);
        let s = (weight * p * q).sqrt() / density;
        if !s.is_finite() {
            return Err(Error::numeric(format!(
                "plug-in scale is not finite at x = {x} (target density {density:e})"
            )));
        }
        if s < floor {
            s_hat.push(floor);
            floor_applied.push(true);
        } else {
            s_hat.push(s);
            floor_applied.push(false);
        }
    }
    Ok(ScaleEstimate { grid: grid.to_vec(), center, s_hat, floor_applied })
}

/// Population scale
/// `s_κ(x) = √((1/κ + 1/(1−κ)) F_P(x)(1 − F_P(x))) / f_Q(T₀(x))`.
pub fn scale_oracle(
    cdf_p: impl Fn(f64) -> f64,
    density_q: impl Fn(f64) -> f64,
    map: impl Fn(f64) -> f64,
    kappa: f64,
    x: f64,
) -> Result<f64> {
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(Error::config(format!("kappa must lie in (0, 1), got {kappa}")));
    }
    let p = cdf_p(x);
    let fq = density_q(map(x));
    Ok(((1.0 / kappa + 1.0 / (1.0 - kappa)) * p * (1.0 - p)).sqrt() / fq)
}

/// Known source and target laws, for diagnostics in simulations.
#[derive(Debug, Clone, Copy)]
pub struct KnownTruth {
    pub source: ReferenceDistribution,
    pub target: ReferenceDistribution,
}

impl KnownTruth {
    pub fn map(&self, x: f64) -> f64 {
        let p = self.source.cdf(x);
        if p <= 0.5 {
            self.target.quantile_lower(p)
        } else {
            self.target.quantile_upper(self.source.sf(x))
        }
    }

    pub fn kappa_scale(&self, kappa: f64, x: f64) -> Result<f64> {
        scale_oracle(|u| self.source.cdf(u), |y| self.target.density(y), |u| self.map(u), kappa, x)
    }
}

/// `ψ̂(Xᵢ, x) = [K̄((x − Xᵢ)/r_n) − F_P(x)] / f_Q(T₀(x))`.
fn psi_hat(map: &OtMapEstimate, xi: f64, x: f64, fp: f64, fq: f64) -> f64 {
    let s = map.source();
    (s.kernel().cdf((x - xi) / s.bandwidth()) - fp) / fq
}

/// `ζ̂(Yⱼ, x) = [F_P(x) − K̄((T₀(x) − Yⱼ)/r_m)] / f_Q(T₀(x))`.
fn zeta_hat(map: &OtMapEstimate, yj: f64, t0: f64, fp: f64, fq: f64) -> f64 {
    let t = map.target();
    (fp - t.kernel().cdf((t0 - yj) / t.bandwidth())) / fq
}

/// Remainder of the linear expansion of `√N (T̂(x) − T₀(x))`:
/// `√N(T̂ − T₀) − [√N/n Σ ψ̂(Xᵢ, x) + √N/m Σ ζ̂(Yⱼ, x)]`.
pub fn bahadur_residual(map: &OtMapEstimate, truth: &KnownTruth, x: f64) -> Result<f64> {
    let (n, m) = (map.n() as f64, map.m() as f64);
    let root_total = (n + m).sqrt();
    let t_hat = map.eval(x)?;
    let t0 = truth.map(x);
    let fp = truth.source.cdf(x);
    let fq = truth.target.density(t0);
    if !(fq > 0.0) {
        return Err(Error::numeric(format!("target density vanishes at T0({x}) = {t0}")));
    }
    let psi_sum: f64 = map.source().sample().values().iter().map(|&xi| psi_hat(map, xi, x, fp, fq)).sum();
    let zeta_sum: f64 = map.target().sample().values().iter().map(|&yj| zeta_hat(map, yj, t0, fp, fq)).sum();
    let linear = root_total / n * psi_sum + root_total / m * zeta_sum;
    Ok(root_total * (t_hat - t0) - linear)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist_est::Sample;
    use crate::kernels::KernelSpec;
    use crate::simulation::reference::GammaParameter;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn normals(n: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| rng.sample(StandardNormal)).collect()
    }

    fn fit(values: Vec<f64>, r: f64) -> SmoothedCdf {
        SmoothedCdf::fit(Sample::new(values).unwrap(), KernelSpec::Gaussian, r).unwrap()
    }

    #[test]
    fn identical_samples_give_identity() {
        let v = normals(300, 1);
        let map = OtMapEstimate::new(fit(v.clone(), 0.1), fit(v, 0.1)).unwrap();
        for i in 0..=100 {
            let x = -2.5 + 0.05 * i as f64;
            assert!((map.eval(x).unwrap() - x).abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn affine_target() {
        let n = 100_000;
        let x = normals(n, 2);
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v + 3.0).collect();
        let r = 0.5 / (n as f64).sqrt();
        let map = OtMapEstimate::new(fit(x, r), fit(y, r)).unwrap();
        for i in 0..=40 {
            let x0 = -2.0 + 0.1 * i as f64;
            assert!((map.eval(x0).unwrap() - (2.0 * x0 + 3.0)).abs() < 0.05);
        }
    }

    #[test]
    fn defining_identity_gamma_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = ReferenceDistribution::gamma(5.0, 0.5, GammaParameter::Rate).unwrap();
        let x = normals(2000, 4);
        let y = g.sample_n(500, &mut rng);
        let map = OtMapEstimate::new(fit(x, 0.5 / 2000f64.sqrt()), fit(y, 0.5 / 500f64.sqrt())).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=500 {
            let x0 = -3.0 + 0.012 * i as f64;
            let t = map.eval(x0).unwrap();
            let gap = (map.target().cdf(t) - map.source().cdf(x0)).abs();
            assert!(gap < 1e-10, "x={x0} gap={gap}");
            // between widely spaced source points F̂_P is flat to machine precision
            assert!(t >= prev, "x={x0} t={t} prev={prev}");
            prev = t;
        }
        // far enough out that F̂_P underflows: reported, not silently clamped
        assert!(matches!(map.eval(-60.0), Err(Error::NonBracketing { .. })));
    }

    #[test]
    fn shift_and_scale_equivariance() {
        let x = normals(400, 5);
        let y = normals(300, 6);
        let base = OtMapEstimate::new(fit(x.clone(), 0.1), fit(y.clone(), 0.2)).unwrap();
        let shifted = OtMapEstimate::new(fit(x.clone(), 0.1), fit(y.iter().map(|v| v + 7.5).collect(), 0.2)).unwrap();
        let scaled = OtMapEstimate::new(fit(x, 0.1), fit(y.iter().map(|v| v * 3.0).collect(), 0.6)).unwrap();
        for i in 0..=50 {
            let x0 = -2.5 + 0.1 * i as f64;
            let t = base.eval(x0).unwrap();
            assert!((shifted.eval(x0).unwrap() - (t + 7.5)).abs() < 1e-9);
            assert!((scaled.eval(x0).unwrap() - 3.0 * t).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_mixed_kernels() {
        let a = fit(vec![0.0, 1.0], 1.0);
        let b = SmoothedCdf::fit(Sample::new(vec![0.0, 1.0]).unwrap(), KernelSpec::Epanechnikov, 1.0).unwrap();
        assert!(OtMapEstimate::new(a, b).is_err());
    }

    #[test]
    fn empirical_map_examples() {
        let e = |x: Vec<f64>, y: Vec<f64>| {
            EmpiricalOtMapEstimate::new(
                EmpiricalCdf::new(Sample::new(x).unwrap()),
                EmpiricalCdf::new(Sample::new(y).unwrap()),
            )
        };
        let v = normals(50, 7);
        let same = e(v.clone(), v.clone());
        for &xi in &v {
            assert_eq!(same.eval(xi), xi);
        }
        assert_eq!(same.eval(-100.0), same.target().sample().min());
        let small = e(vec![1.0, 2.0], vec![10.0, 20.0]);
        assert_eq!(small.eval(1.0), 10.0);
        assert_eq!(small.eval(2.0), 20.0);
        assert_eq!(small.eval(0.0), 10.0);
        assert!(small.is_extrapolation(0.0) && !small.is_extrapolation(1.5));
    }

    #[test]
    fn empirical_map_nondecreasing_within_y() {
        let x = normals(117, 8);
        let y = normals(43, 9);
        let est = EmpiricalOtMapEstimate::new(
            EmpiricalCdf::new(Sample::new(x).unwrap()),
            EmpiricalCdf::new(Sample::new(y.clone()).unwrap()),
        );
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=1000 {
            let t = est.eval(-4.0 + 0.008 * i as f64);
            assert!(t >= prev);
            assert!(y.contains(&t));
            prev = t;
        }
    }

    #[test]
    fn scale_oracle_examples() {
        let s = scale_oracle(|_| 0.5, |_| 1.0, |x| x, 0.5, 0.0).unwrap();
        assert!((s - 1.0).abs() < 1e-15);
        let s = scale_oracle(|_| 1e-14, |_| 1.0, |x| x, 0.5, 0.0).unwrap();
        assert!(s < 1e-6);
        let truth = KnownTruth { source: ReferenceDistribution::standard_normal(), target: ReferenceDistribution::standard_normal() };
        let s = truth.kappa_scale(0.5, 0.0).unwrap();
        assert!((s - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-12);
        assert!(scale_oracle(|_| 0.5, |_| 1.0, |x| x, 1.0, 0.0).is_err());
        assert!(scale_oracle(|_| 0.5, |_| 1.0, |x| x, 0.0, 0.0).is_err());
    }

    #[test]
    fn plugin_scale_balanced_median() {
        // n = m and F̂_P(x) = 1/2: ŝ(x) = 1/f̂_Q(T̂(x)).
        let x = vec![-1.0, 1.0];
        let y = normals(2, 10);
        let map = OtMapEstimate::new(fit(x, 0.7), fit(y, 0.4)).unwrap();
        let s = scale_plugin(&map, &[0.0]).unwrap();
        let expected = 1.0 / map.target().density(s.center[0]);
        assert!((s.s_hat[0] - expected).abs() < 1e-12 * expected);
        assert!(!s.floor_applied[0]);
    }

    #[test]
    fn plugin_scale_positive_and_unfloored_on_design() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = ReferenceDistribution::gamma(5.0, 0.5, GammaParameter::Rate).unwrap();
        let x = normals(2000, 12);
        let y = g.sample_n(500, &mut rng);
        let map = OtMapEstimate::new(fit(x, 0.5 / 2000f64.sqrt()), fit(y, 0.5 / 500f64.sqrt())).unwrap();
        let grid: Vec<f64> = (0..512).map(|i| -2.5 + 5.0 * i as f64 / 511.0).collect();
        let s = scale_plugin(&map, &grid).unwrap();
        assert!(s.s_hat.iter().all(|&v| v > 0.0 && v.is_finite()));
        assert!(s.floor_applied.iter().all(|&f| !f));
    }

    #[test]
    fn residual_vanishes_for_identity_truth() {
        // P = Q with shared data and bandwidth: T̂ = T₀ = id would leave only
        // the (mean-zero) sums; check the degenerate combination is finite.
        let v = normals(500, 13);
        let map = OtMapEstimate::new(fit(v.clone(), 0.05), fit(v, 0.05)).unwrap();
        let truth = KnownTruth { source: ReferenceDistribution::standard_normal(), target: ReferenceDistribution::standard_normal() };
        let r = bahadur_residual(&map, &truth, 0.0).unwrap();
        // with identical samples the ψ̂ and ζ̂ sums cancel exactly at T₀(0) = 0
        let t_hat = map.eval(0.0).unwrap();
        assert!((r - 1000f64.sqrt() * t_hat).abs() < 1e-9);
    }
}
