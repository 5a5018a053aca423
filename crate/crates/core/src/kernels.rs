//! Smoothing kernels, their antiderivatives, and bandwidth rules.
//!
//! Only nonnegative second-order kernels are provided. A nonnegative kernel
//! keeps the smoothed CDF strictly increasing (so it can be inverted) and lets
//! the smoothed bootstrap sample from the kernel mixture directly.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{normal_cdf, normal_pdf, normal_sf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelSpec {
    Gaussian,
    Epanechnikov,
}

impl KernelSpec {
    pub fn name(self) -> &'static str {
        match self {
            KernelSpec::Gaussian => "gaussian",
            KernelSpec::Epanechnikov => "epanechnikov",
        }
    }

    /// Number of vanishing moments: `∫ u^j K(u) du = 0` for `j = 1..order`.
    pub fn order(self) -> u32 {
        2
    }

    /// Beyond this radius `K̄` is 0 or 1 (exactly for compact kernels, to
    /// within 1e-18 for the Gaussian).
    pub fn support_radius(self) -> f64 {
        match self {
            KernelSpec::Gaussian => 9.0,
            KernelSpec::Epanechnikov => 1.0,
        }
    }

    pub fn is_compact(self) -> bool {
        matches!(self, KernelSpec::Epanechnikov)
    }

    /// Kernel density `K(u)`.
    pub fn eval(self, u: f64) -> f64 {
        match self {
            KernelSpec::Gaussian => normal_pdf(u),
            KernelSpec::Epanechnikov => {
                if u.abs() <= 1.0 {
                    0.75 * (1.0 - u * u)
                } else {
                    0.0
                }
            }
        }
    }

    /// Antiderivative `K̄(u) = ∫_{-∞}^u K`.
    pub fn cdf(self, u: f64) -> f64 {
        match self {
            KernelSpec::Gaussian => normal_cdf(u),
            KernelSpec::Epanechnikov => {
                if u <= -1.0 {
                    0.0
                } else if u >= 1.0 {
                    1.0
                } else {
                    0.5 + 0.75 * u - 0.25 * u * u * u
                }
            }
        }
    }

    /// `1 - K̄(u)`, evaluated without cancellation in the upper tail.
    pub fn sf(self, u: f64) -> f64 {
        match self {
            KernelSpec::Gaussian => normal_sf(u),
            KernelSpec::Epanechnikov => self.cdf(-u),
        }
    }

    /// Draw a single variate with density `K`.
    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R) -> f64 {
        match self {
            KernelSpec::Gaussian => rng.sample(StandardNormal),
            KernelSpec::Epanechnikov => {
                // Devroye: of three U(-1, 1) draws, return the second one
                // unless the third has the largest magnitude.
                let u1: f64 = rng.random_range(-1.0..1.0);
                let u2: f64 = rng.random_range(-1.0..1.0);
                let u3: f64 = rng.random_range(-1.0..1.0);
                if u3.abs() >= u2.abs() && u3.abs() >= u1.abs() {
                    u2
                } else {
                    u3
                }
            }
        }
    }
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gaussian" => Ok(KernelSpec::Gaussian),
            "epanechnikov" => Ok(KernelSpec::Epanechnikov),
            other => Err(Error::config(format!(
                "unknown kernel '{other}' (expected 'gaussian' or 'epanechnikov')"
            ))),
        }
    }
}

/// True iff the kernel order exceeds `beta + 1/2`.
pub fn check_order_compatibility(kernel: KernelSpec, beta: f64) -> bool {
    f64::from(kernel.order()) > beta + 0.5
}

/// Bandwidth `c · n^{-1/(2β+1)}` for densities of smoothness β.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandwidthRule {
    beta: f64,
    constant: f64,
}

impl BandwidthRule {
    pub fn new(beta: f64, constant: f64) -> Result<Self> {
        if !beta.is_finite() || beta < 0.0 {
            return Err(Error::config(format!("beta must be finite and >= 0, got {beta}")));
        }
        if !constant.is_finite() || constant <= 0.0 {
            return Err(Error::config(format!(
                "bandwidth constant must be finite and > 0, got {constant}"
            )));
        }
        Ok(Self { beta, constant })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn exponent_denominator(&self) -> f64 {
        2.0 * self.beta + 1.0
    }

    pub fn bandwidth(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::config("bandwidth requires a sample size n >= 1"));
        }
        Ok(self.constant * (n as f64).powf(-1.0 / self.exponent_denominator()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const KERNELS: [KernelSpec; 2] = [KernelSpec::Gaussian, KernelSpec::Epanechnikov];

    /// Composite Simpson on [lo, hi] with `steps` (even) panels.
    fn simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, steps: usize) -> f64 {
        let h = (hi - lo) / steps as f64;
        let mut acc = f(lo) + f(hi);
        for i in 1..steps {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(lo + i as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn eval_examples() {
        assert!((KernelSpec::Gaussian.eval(0.0) - 0.398_942_280_401_432_7).abs() < 1e-15);
        assert_eq!(KernelSpec::Epanechnikov.eval(2.0), 0.0);
        let closed = (2.0 * std::f64::consts::PI).powf(-0.5) * (-0.5f64).exp();
        assert!((KernelSpec::Gaussian.eval(1.0) - closed).abs() < 1e-15);
        assert!((KernelSpec::Gaussian.eval(1.0) - 0.24197).abs() < 1e-5);
    }

    #[test]
    fn cdf_examples() {
        assert_eq!(KernelSpec::Gaussian.cdf(0.0), 0.5);
        assert_eq!(KernelSpec::Epanechnikov.cdf(1.0), 1.0);
        assert_eq!(KernelSpec::Epanechnikov.cdf(0.0), 0.5);
        assert!((KernelSpec::Gaussian.cdf(1.959_964) - 0.975).abs() < 1e-6);
        // quadrature oracle for the Gaussian value at 1
        let quad = 0.5 + simpson(|u| KernelSpec::Gaussian.eval(u), 0.0, 1.0, 2000);
        assert!((KernelSpec::Gaussian.cdf(1.0) - quad).abs() < 1e-12);
    }

    #[test]
    fn kernel_moments_by_quadrature() {
        for k in KERNELS {
            let r = k.support_radius();
            let mass = simpson(|u| k.eval(u), -r, r, 20_000);
            let first = simpson(|u| u * k.eval(u), -r, r, 20_000);
            assert!((mass - 1.0).abs() < 1e-8, "{k}: mass {mass}");
            assert!(first.abs() < 1e-8, "{k}: first moment {first}");
            let second = simpson(|u| u * u * k.eval(u), -r, r, 20_000);
            assert!(second > 0.0, "order is exactly 2");
        }
    }

    #[test]
    fn kernel_symmetric_and_nonnegative() {
        for k in KERNELS {
            for i in -300..=300 {
                let u = i as f64 * 0.037;
                assert!(k.eval(u) >= 0.0);
                assert_eq!(k.eval(u), k.eval(-u));
            }
            assert_eq!(k.cdf(0.0), 0.5);
            assert!(k.cdf(-k.support_radius() - 1e-9) < 1e-18);
            assert!(1.0 - k.cdf(k.support_radius() + 1e-9) < 1e-18);
        }
    }

    #[test]
    fn cdf_matches_integral_of_density() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in KERNELS {
            let r = k.support_radius();
            let mut prev = (f64::NEG_INFINITY, 0.0);
            let mut us: Vec<f64> = (0..100).map(|_| rng.random_range(-r..r)).collect();
            us.sort_by(f64::total_cmp);
            for u in us {
                let quad = simpson(|t| k.eval(t), -r, u, 4000);
                assert!((k.cdf(u) - quad).abs() < 1e-7, "{k} u={u}");
                assert!(k.cdf(u) >= prev.1 || u == prev.0);
                prev = (u, k.cdf(u));
                assert!((k.sf(u) - (1.0 - k.cdf(u))).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn epanechnikov_sampler_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let draws: Vec<f64> = (0..200_000).map(|_| KernelSpec::Epanechnikov.sample(&mut rng)).collect();
        let mean = draws.iter().sum::<f64>() / draws.len() as f64;
        let var = draws.iter().map(|d| d * d).sum::<f64>() / draws.len() as f64;
        // variance of the Epanechnikov kernel is 1/5
        assert!(mean.abs() < 0.005);
        assert!((var - 0.2).abs() < 0.003);
        assert!(draws.iter().all(|d| d.abs() <= 1.0));
    }

    #[test]
    fn bandwidth_examples() {
        let rule = BandwidthRule::new(0.5, 0.5).unwrap();
        assert!((rule.bandwidth(2000).unwrap() - 0.011_180_339_887_498_949).abs() < 1e-15);
        let rule = BandwidthRule::new(1.25, 2.0).unwrap();
        let r = rule.bandwidth(1000).unwrap();
        assert!((r - 2.0 * 1000f64.powf(-1.0 / 3.5)).abs() < 1e-15);
        assert!((r - 0.277_899).abs() < 1e-6);
        for beta in [0.0, 0.7, 1.4] {
            assert_eq!(BandwidthRule::new(beta, 1.0).unwrap().bandwidth(1).unwrap(), 1.0);
        }
        assert!(rule.bandwidth(0).is_err());
        assert!(BandwidthRule::new(-0.1, 1.0).is_err());
        assert!(BandwidthRule::new(0.5, 0.0).is_err());
    }

    #[test]
    fn bandwidth_strictly_decreasing() {
        let rule = BandwidthRule::new(0.5, 0.5).unwrap();
        let mut prev = f64::INFINITY;
        for n in 1..500 {
            let r = rule.bandwidth(n).unwrap();
            assert!(r > 0.0 && r < prev);
            prev = r;
        }
    }

    #[test]
    fn order_compatibility() {
        assert!(check_order_compatibility(KernelSpec::Gaussian, 1.4));
        assert!(!check_order_compatibility(KernelSpec::Gaussian, 1.5));
        assert!(check_order_compatibility(KernelSpec::Gaussian, 0.0));
        assert!(check_order_compatibility(KernelSpec::Epanechnikov, 1.25));
    }

    #[test]
    fn parse_kernel_names() {
        assert_eq!("Gaussian".parse::<KernelSpec>().unwrap(), KernelSpec::Gaussian);
        assert_eq!("epanechnikov".parse::<KernelSpec>().unwrap(), KernelSpec::Epanechnikov);
        assert!("triweight".parse::<KernelSpec>().is_err());
    }
}
