//! Exact-truth oracles: the population transport map and the supremum of the
//! limiting Gaussian process `Z_κ`.

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::validate_grid;
use crate::otmap::KnownTruth;
use crate::rng::StreamKey;
use crate::simulation::reference::ReferenceDistribution;

/// `T₀(x) = F_Q⁻¹(F_P(x))`.
pub fn true_map_oracle(source: &ReferenceDistribution, target: &ReferenceDistribution, x: f64) -> f64 {
    KnownTruth { source: *source, target: *target }.map(x)
}

/// Draws of `sup_grid |Z_κ(x)|` where
/// `Z_κ(x) = [√(1/κ) G₁(u) − √(1/(1−κ)) G₂(u)] / √((1/κ + 1/(1−κ)) u(1−u))`,
/// `u = F_P(x)`, with independent Brownian bridges `G₁`, `G₂`.
///
/// Only `F_P` enters; the target law is accepted for symmetry with the other
/// oracles. Draw `d` uses stream `d` of `key`.
pub fn z_kappa_sup_oracle(
    source: &ReferenceDistribution,
    _target: &ReferenceDistribution,
    kappa: f64,
    grid: &[f64],
    draws: usize,
    key: &StreamKey,
) -> Result<Vec<f64>> {
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(Error::config(format!("kappa must lie in (0, 1), got {kappa}")));
    }
    validate_grid(grid)?;
    let levels: Vec<f64> = grid.iter().map(|&x| source.cdf(x)).collect();
    if levels.iter().any(|&u| !(u > 0.0 && u < 1.0)) {
        return Err(Error::numeric("grid reaches a point where F_P is 0 or 1"));
    }
    let (w1, w2) = ((1.0 / kappa).sqrt(), (1.0 / (1.0 - kappa)).sqrt());
    let var_factor = 1.0 / kappa + 1.0 / (1.0 - kappa);
    let norms: Vec<f64> = levels.iter().map(|&u| (var_factor * u * (1.0 - u)).sqrt()).collect();

    Ok((0..draws as u64)
        .into_par_iter()
        .map_init(
            || (Vec::new(), Vec::new()),
            |(g1, g2): &mut (Vec<f64>, Vec<f64>), d| {
                let mut rng = key.stream(d);
                brownian_bridge(&levels, &mut rng, g1);
                brownian_bridge(&levels, &mut rng, g2);
                g1.iter()
                    .zip(g2.iter())
                    .zip(&norms)
                    .map(|((a, b), s)| ((w1 * a - w2 * b) / s).abs())
                    .fold(0.0, f64::max)
            },
        )
        .collect())
}

/// Brownian bridge at increasing times `levels ⊂ (0, 1)`: `W(u) − u W(1)`.
fn brownian_bridge<R: rand::Rng + ?Sized>(levels: &[f64], rng: &mut R, out: &mut Vec<f64>) {
    out.clear();
    let mut w = 0.0;
    let mut t = 0.0;
    for &u in levels {
        let z: f64 = StandardNormal.sample(rng);
        w += (u - t).max(0.0).sqrt() * z;
        t = u;
        out.push(w);
    }
    let z: f64 = StandardNormal.sample(rng);
    let w_one = w + (1.0 - t).sqrt() * z;
    for (b, &u) in out.iter_mut().zip(levels) {
        *b -= u * w_one;
    }
}
