//! Reference distributions with exact CDF, density, quantile and sampler.

use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{gamma_p, gamma_q, ln_gamma, normal_cdf, normal_pdf, normal_quantile, normal_sf, normal_sf_quantile};

/// How the second gamma parameter is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum GammaParameter {
    #[default]
    Rate,
    Scale,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ReferenceDistribution {
    Normal { mean: f64, sd: f64 },
    /// Always stored with a scale parameter.
    Gamma { shape: f64, scale: f64 },
}

impl ReferenceDistribution {
    pub fn normal(mean: f64, sd: f64) -> Result<Self> {
        if !(mean.is_finite() && sd.is_finite() && sd > 0.0) {
            return Err(Error::config(format!("invalid normal parameters mean={mean} sd={sd}")));
        }
        Ok(ReferenceDistribution::Normal { mean, sd })
    }

    pub fn standard_normal() -> Self {
        ReferenceDistribution::Normal { mean: 0.0, sd: 1.0 }
    }

    pub fn gamma(shape: f64, second: f64, convention: GammaParameter) -> Result<Self> {
        if !(shape.is_finite() && shape > 0.0 && second.is_finite() && second > 0.0) {
            return Err(Error::config(format!("invalid gamma parameters shape={shape} second={second}")));
        }
        let scale = match convention {
            GammaParameter::Rate => 1.0 / second,
            GammaParameter::Scale => second,
        };
        Ok(ReferenceDistribution::Gamma { shape, scale })
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            ReferenceDistribution::Normal { mean, sd } => normal_cdf((x - mean) / sd),
            ReferenceDistribution::Gamma { shape, scale } => gamma_p(shape, x / scale),
        }
    }

    pub fn sf(&self, x: f64) -> f64 {
        match *self {
            ReferenceDistribution::Normal { mean, sd } => normal_sf((x - mean) / sd),
            ReferenceDistribution::Gamma { shape, scale } => gamma_q(shape, x / scale),
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        match *self {
            ReferenceDistribution::Normal { mean, sd } => normal_pdf((x - mean) / sd) / sd,
            ReferenceDistribution::Gamma { shape, scale } => {
                if x <= 0.0 {
                    0.0
                } else {
                    let z = x / scale;
                    ((shape - 1.0) * z.ln() - z - ln_gamma(shape)).exp() / scale
                }
            }
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            ReferenceDistribution::Normal { mean, .. } => mean,
            ReferenceDistribution::Gamma { shape, scale } => shape * scale,
        }
    }

    pub fn variance(&self) -> f64 {
        match *self {
            ReferenceDistribution::Normal { sd, .. } => sd * sd,
            ReferenceDistribution::Gamma { shape, scale } => shape * scale * scale,
        }
    }

    /// `F⁻¹(p)` for `0 < p < 1`.
    pub fn quantile(&self, p: f64) -> f64 {
        if p <= 0.5 {
            self.quantile_lower(p)
        } else {
            self.quantile_upper(1.0 - p)
        }
    }

    /// The `x` with `F(x) = p`.
    pub fn quantile_lower(&self, p: f64) -> f64 {
        match *self {
            ReferenceDistribution::Normal { mean, sd } => mean + sd * normal_quantile(p),
            ReferenceDistribution::Gamma { shape, scale } => scale * gamma_quantile(shape, p, false),
        }
    }

    /// The `x` with `1 − F(x) = q`.
    pub fn quantile_upper(&self, q: f64) -> f64 {
        match *self {
            ReferenceDistribution::Normal { mean, sd } => mean + sd * normal_sf_quantile(q),
            ReferenceDistribution::Gamma { shape, scale } => scale * gamma_quantile(shape, q, true),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            ReferenceDistribution::Normal { mean, sd } => {
                let z: f64 = rng.sample(StandardNormal);
                mean + sd * z
            }
            ReferenceDistribution::Gamma { shape, scale } => {
                // parameters were validated at construction
                Gamma::new(shape, scale).expect("valid gamma parameters").sample(rng)
            }
        }
    }

    pub fn sample_n<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Vec<f64> {
        match *self {
            ReferenceDistribution::Gamma { shape, scale } => {
                let g = Gamma::new(shape, scale).expect("valid gamma parameters");
                (0..count).map(|_| g.sample(rng)).collect()
            }
            _ => (0..count).map(|_| self.sample(rng)).collect(),
        }
    }
}

/// Quantile of the unit-scale gamma law: solves `P(a, x) = level`, or
/// `Q(a, x) = level` when `upper` is set. Newton on the regularized incomplete
/// gamma from a Wilson–Hilferty starting point.
pub fn gamma_quantile(shape: f64, level: f64, upper: bool) -> f64 {
    if level <= 0.0 {
        return if upper { f64::INFINITY } else { 0.0 };
    }
    if level >= 1.0 {
        return if upper { 0.0 } else { f64::INFINITY };
    }
    let z = if upper { normal_sf_quantile(level) } else { normal_quantile(level) };
    let c = 1.0 / (9.0 * shape);
    let mut x = shape * (1.0 - c + z * c.sqrt()).powi(3);
    let lower_level = if upper { 1.0 - level } else { level };
    if !(x > 0.0) || (lower_level < 0.05 && shape < 1.0) {
        // small-x expansion P(a, x) ≈ x^a / Γ(a + 1)
        x = ((lower_level.ln() + ln_gamma(shape + 1.0)) / shape).exp();
    }
    let ln_gamma_a = ln_gamma(shape);
    let mut lo = 0.0;
    let mut hi = f64::INFINITY;
    for _ in 0..100 {
        let g = if upper { level - gamma_q(shape, x) } else { gamma_p(shape, x) - level };
        if g == 0.0 {
            break;
        }
        if g > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let pdf = ((shape - 1.0) * x.ln() - x - ln_gamma_a).exp();
        let mut next = if pdf > 0.0 { x - g / pdf } else { f64::NAN };
        if !(next > lo && next < hi) {
            next = if hi.is_finite() { 0.5 * (lo + hi) } else { 2.0 * x.max(lo) + 1.0 };
        }
        if (next - x).abs() <= 1e-15 * x {
            x = next;
            break;
        }
        x = next;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Adaptive Simpson to an absolute tolerance.
    fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
        fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
            let m = 0.5 * (a + b);
            let fm = f(m);
            (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
        }
        #[allow(clippy::too_many_arguments)]
        fn rec(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64, m: f64, fm: f64, whole: f64, tol: f64, depth: u32) -> f64 {
            let (lm, flm, left) = simpson(f, a, fa, m, fm);
            let (rm, frm, right) = simpson(f, m, fm, b, fb);
            let delta = left + right - whole;
            if depth == 0 || delta.abs() <= 15.0 * tol {
                left + right + delta / 15.0
            } else {
                rec(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
                    + rec(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
            }
        }
        let (fa, fb) = (f(a), f(b));
        let (m, fm, whole) = simpson(f, a, fa, b, fb);
        rec(f, a, fa, b, fb, m, fm, whole, tol, 50)
    }

    #[test]
    fn gamma_cdf_matches_quadrature_of_density() {
        let d = ReferenceDistribution::gamma(5.0, 0.5, GammaParameter::Rate).unwrap();
        for &x in &[0.5, 2.0, 6.0, 9.3418, 15.0, 25.0, 40.0] {
            let quad = adaptive_simpson(&|t| d.density(t), 0.0, x, 1e-13);
            assert!((d.cdf(x) - quad).abs() < 1e-11, "x={x} cdf={} quad={quad}", d.cdf(x));
        }
    }

    #[test]
    fn gamma_median_against_bisection_on_quadrature() {
        let d = ReferenceDistribution::gamma(5.0, 0.5, GammaParameter::Rate).unwrap();
        let (mut lo, mut hi) = (0.0, 50.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if adaptive_simpson(&|t| d.density(t), 0.0, mid, 1e-13) < 0.5 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((d.quantile(0.5) - 0.5 * (lo + hi)).abs() < 1e-8);
        // known value: median of Gamma(5, scale 2) ≈ 9.3418
        assert!((d.quantile(0.5) - 9.341_8).abs() < 1e-3);
    }

    #[test]
    fn quantile_round_trip() {
        let dists = [
            ReferenceDistribution::standard_normal(),
            ReferenceDistribution::normal(3.0, 2.0).unwrap(),
            ReferenceDistribution::gamma(5.0, 0.5, GammaParameter::Rate).unwrap(),
            ReferenceDistribution::gamma(5.0, 0.5, GammaParameter::Scale).unwrap(),
            ReferenceDistribution::gamma(0.7, 1.0, GammaParameter::Scale).unwrap(),
        ];
        let levels: Vec<f64> = (0..=200)
            .map(|i| {
                let t = i as f64 / 200.0;
                1e-6 + t * (1.0 - 2e-6)
            })
            .collect();
        for d in &dists {
            for &p in &levels {
                let x = d.quantile(p);
                assert!((d.cdf(x) - p).abs() < 1e-10, "{d:?} p={p} x={x}");
            }
            for &q in &[1e-12, 1e-8, 1e-4] {
                let x = d.quantile_upper(q);
                assert!(((d.sf(x) - q) / q).abs() < 1e-8, "{d:?} q={q}");
            }
        }
    }

    #[test]
    fn density_positive_on_support() {
        let g = ReferenceDistribution::gamma(5.0, 0.5, GammaParameter::Rate).unwrap();
        assert!((1..1000).all(|i| g.density(i as f64 * 0.05) > 0.0));
        assert_eq!(g.density(-1.0), 0.0);
        let n = ReferenceDistribution::standard_normal();
        assert!((-300..300).all(|i| n.density(i as f64 * 0.02) > 0.0));
    }

    #[test]
    fn sampler_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let count = 1_000_000;
        for d in [
            ReferenceDistribution::standard_normal(),
            ReferenceDistribution::gamma(5.0, 0.5, GammaParameter::Rate).unwrap(),
        ] {
            let draws = d.sample_n(count, &mut rng);
            let mean = draws.iter().sum::<f64>() / count as f64;
            let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (count - 1) as f64;
            let se_mean = (d.variance() / count as f64).sqrt();
            assert!((mean - d.mean()).abs() < 4.0 * se_mean, "{d:?} mean={mean}");
            // SE of the sample variance: sqrt((μ4 - σ⁴)/n); μ4 = 3σ⁴ (normal), (3 + 6/k)σ⁴ (gamma)
            let kurt = match d {
                ReferenceDistribution::Normal { .. } => 3.0,
                ReferenceDistribution::Gamma { shape, .. } => 3.0 + 6.0 / shape,
            };
            let se_var = ((kurt - 1.0) * d.variance().powi(2) / count as f64).sqrt();
            assert!((var - d.variance()).abs() < 4.0 * se_var, "{d:?} var={var}");
        }
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(ReferenceDistribution::normal(0.0, 0.0).is_err());
        assert!(ReferenceDistribution::gamma(-1.0, 1.0, GammaParameter::Rate).is_err());
        assert!(ReferenceDistribution::gamma(1.0, 0.0, GammaParameter::Scale).is_err());
    }
}
