//! One-dimensional profiles `w: ℝ → ℝ` used to build Hamiltonians `w∘F` and
//! the bump functions of the μ_ε families.

use serde::{Deserialize, Serialize};

use crate::quadrature;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProfileError {
    #[error("invalid profile: {0}")]
    Invalid(String),
}

/// A continuous function of one real variable.
///
/// Piecewise-linear profiles are extended by their end values outside
/// `[xs[0], xs[last]]`. A ramp is `0` up to `start` and
/// `Σ coeffs[k]·(t − start)^k` after it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Profile1D {
    Pl { xs: Vec<f64>, ys: Vec<f64> },
    Poly { coeffs: Vec<f64> },
    Ramp { start: f64, coeffs: Vec<f64> },
    Sum { parts: Vec<Profile1D> },
    Scaled { factor: f64, inner: Box<Profile1D> },
}

impl Profile1D {
    pub fn identity() -> Self {
        Profile1D::Poly {
            coeffs: vec![0.0, 1.0],
        }
    }

    pub fn constant(c: f64) -> Self {
        Profile1D::Poly { coeffs: vec![c] }
    }

    pub fn zero() -> Self {
        Profile1D::Poly { coeffs: Vec::new() }
    }

    pub fn pl(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self, ProfileError> {
        let p = Profile1D::Pl { xs, ys };
        p.validate()?;
        Ok(p)
    }

    /// Tent of height `peak` on `[center − half_width, center + half_width]`.
    pub fn triangle_bump(center: f64, half_width: f64, peak: f64) -> Self {
        Profile1D::Pl {
            xs: vec![center - half_width, center, center + half_width],
            ys: vec![0.0, peak, 0.0],
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ProfileError> {
        let p: Profile1D =
            serde_json::from_str(text).map_err(|e| ProfileError::Invalid(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ProfileError> {
        let finite = |v: &[f64], what: &str| {
            if v.iter().all(|x| x.is_finite()) {
                Ok(())
            } else {
                Err(ProfileError::Invalid(format!("{what} must be finite")))
            }
        };
        match self {
            Profile1D::Pl { xs, ys } => {
                if xs.is_empty() || xs.len() != ys.len() {
                    return Err(ProfileError::Invalid(
                        "pl profile needs equally many (≥ 1) xs and ys".into(),
                    ));
                }
                finite(xs, "breakpoints")?;
                finite(ys, "values")?;
                if xs.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(ProfileError::Invalid(
                        "breakpoints must be strictly increasing".into(),
                    ));
                }
                Ok(())
            }
            Profile1D::Poly { coeffs } => finite(coeffs, "coefficients"),
            Profile1D::Ramp { start, coeffs } => {
                finite(&[*start], "ramp start")?;
                finite(coeffs, "coefficients")?;
                if coeffs.first().is_some_and(|&c| c != 0.0) {
                    return Err(ProfileError::Invalid(
                        "ramp must vanish at its start (coeffs[0] = 0)".into(),
                    ));
                }
                Ok(())
            }
            Profile1D::Sum { parts } => parts.iter().try_for_each(Profile1D::validate),
            Profile1D::Scaled { factor, inner } => {
                finite(&[*factor], "factor")?;
                inner.validate()
            }
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Profile1D::Pl { xs, ys } => {
                let last = xs.len() - 1;
                if t <= xs[0] {
                    return ys[0];
                }
                if t >= xs[last] {
                    return ys[last];
                }
                let k = xs.partition_point(|&x| x <= t) - 1;
                let u = (t - xs[k]) / (xs[k + 1] - xs[k]);
                ys[k] + u * (ys[k + 1] - ys[k])
            }
            Profile1D::Poly { coeffs } => horner(coeffs, t),
            Profile1D::Ramp { start, coeffs } => {
                if t <= *start {
                    0.0
                } else {
                    horner(coeffs, t - start)
                }
            }
            Profile1D::Sum { parts } => parts.iter().map(|p| p.eval(t)).sum(),
            Profile1D::Scaled { factor, inner } => factor * inner.eval(t),
        }
    }

    /// Points where the profile may fail to be smooth.
    pub fn knots(&self) -> Vec<f64> {
        let mut out = Vec::new();
        self.collect_knots(&mut out);
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    fn collect_knots(&self, out: &mut Vec<f64>) {
        match self {
            Profile1D::Pl { xs, .. } => out.extend(xs),
            Profile1D::Poly { .. } => {}
            Profile1D::Ramp { start, .. } => out.push(*start),
            Profile1D::Sum { parts } => parts.iter().for_each(|p| p.collect_knots(out)),
            Profile1D::Scaled { inner, .. } => inner.collect_knots(out),
        }
    }

    /// Polynomial degree between consecutive knots.
    pub fn degree(&self) -> usize {
        match self {
            Profile1D::Pl { .. } => 1,
            Profile1D::Poly { coeffs } | Profile1D::Ramp { coeffs, .. } => {
                coeffs.len().saturating_sub(1)
            }
            Profile1D::Sum { parts } => parts.iter().map(Profile1D::degree).max().unwrap_or(0),
            Profile1D::Scaled { inner, .. } => inner.degree(),
        }
    }

    /// `∫_a^b w(t)·ℓ(t) dt` where `ℓ` is the linear function with
    /// `ℓ(a) = la`, `ℓ(b) = lb`. Exact up to rounding.
    pub fn integrate_linear_weight(&self, a: f64, b: f64, la: f64, lb: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        match self {
            Profile1D::Sum { parts } => parts
                .iter()
                .map(|p| p.integrate_linear_weight(a, b, la, lb))
                .sum(),
            Profile1D::Scaled { factor, inner } => {
                factor * inner.integrate_linear_weight(a, b, la, lb)
            }
            _ => {
                let n = quadrature::nodes_for_degree(self.degree() + 1);
                let slope = (lb - la) / (b - a);
                let mut total = 0.0;
                let mut lo = a;
                for k in self
                    .knots()
                    .into_iter()
                    .filter(|&k| k > a && k < b)
                    .chain([b])
                {
                    total +=
                        quadrature::integrate(|t| self.eval(t) * (la + slope * (t - a)), lo, k, n);
                    lo = k;
                }
                total
            }
        }
    }

    /// `∫_a^b w(t) dt`.
    pub fn integrate(&self, a: f64, b: f64) -> f64 {
        if b < a {
            return -self.integrate(b, a);
        }
        self.integrate_linear_weight(a, b, 1.0, 1.0)
    }

    /// Whether the profile is identically zero outside `(a, b)`.
    pub fn vanishes_outside(&self, a: f64, b: f64) -> bool {
        match self {
            Profile1D::Pl { xs, ys } => {
                ys[0] == 0.0
                    && ys[ys.len() - 1] == 0.0
                    && self.eval(a) == 0.0
                    && self.eval(b) == 0.0
                    && xs
                        .iter()
                        .zip(ys)
                        .all(|(&x, &y)| (x > a && x < b) || y == 0.0)
            }
            Profile1D::Poly { coeffs } | Profile1D::Ramp { coeffs, .. } => {
                coeffs.iter().all(|&c| c == 0.0)
            }
            Profile1D::Sum { parts } => parts.iter().all(|p| p.vanishes_outside(a, b)),
            Profile1D::Scaled { factor, inner } => *factor == 0.0 || inner.vanishes_outside(a, b),
        }
    }

    pub fn plus(&self, other: &Profile1D) -> Profile1D {
        Profile1D::Sum {
            parts: vec![self.clone(), other.clone()],
        }
    }

    pub fn scaled(&self, factor: f64) -> Profile1D {
        Profile1D::Scaled {
            factor,
            inner: Box::new(self.clone()),
        }
    }
}

fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}
