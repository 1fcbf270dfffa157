//! Uniform sampling of points on a field's surface, weighted by the
//! normalized triangle areas, and Monte-Carlo estimates of `∫ w(F) dA`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ScalarField;
use crate::profile::Profile1D;

pub struct AreaSampler {
    cdf: Vec<f64>,
    rng: ChaCha8Rng,
}

impl AreaSampler {
    pub fn new(field: &ScalarField, seed: u64) -> Self {
        let mut acc = 0.0;
        let cdf = field
            .areas()
            .iter()
            .map(|a| {
                acc += a;
                acc
            })
            .collect();
        Self {
            cdf,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A triangle index and barycentric coordinates of a uniform point.
    pub fn sample(&mut self) -> (usize, [f64; 3]) {
        let total = *self.cdf.last().expect("a sphere mesh has triangles");
        let u: f64 = self.rng.random::<f64>() * total;
        let t = self.cdf.partition_point(|&c| c < u).min(self.cdf.len() - 1);
        let (r1, r2): (f64, f64) = (self.rng.random(), self.rng.random());
        let s = r1.sqrt();
        (t, [1.0 - s, s * (1.0 - r2), s * r2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub samples: usize,
    pub mean: f64,
    pub std_error: f64,
}

/// Monte-Carlo estimate of `∫ w(F) dA` over the unit-area surface.
pub fn monte_carlo_integral(
    field: &ScalarField,
    w: &Profile1D,
    samples: usize,
    seed: u64,
) -> MonteCarloEstimate {
    let mut sampler = AreaSampler::new(field, seed);
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..samples {
        let (t, bary) = sampler.sample();
        let y = w.eval(field.eval_in_triangle(t, bary));
        sum += y;
        sum_sq += y * y;
    }
    let n = samples.max(1) as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0);
    MonteCarloEstimate {
        samples,
        mean,
        std_error: (var / n).sqrt(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::FixtureSpec;

    #[test]
    fn mean_of_constant_and_height() {
        let field = FixtureSpec::Height.field(3);
        let one = monte_carlo_integral(&field, &Profile1D::constant(2.0), 1000, 1);
        assert!((one.mean - 2.0).abs() < 1e-12);
        assert!(one.std_error < 1e-9);
        let h = monte_carlo_integral(&field, &Profile1D::identity(), 100_000, 1);
        assert!(h.mean.abs() < 5.0 * h.std_error);
        let again = monte_carlo_integral(&field, &Profile1D::identity(), 100_000, 1);
        assert_eq!(h, again);
    }
}
