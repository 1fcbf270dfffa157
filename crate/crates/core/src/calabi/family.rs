//! The families μ_ε on the annulus `T*S¹ ⊃ {0 < p < 0.1}` and on the unit
//! area disk, evaluated on Hamiltonians depending on one coordinate only.
//!
//! On the annulus `H = H(p)` and the fiber circle has unit length, so the
//! Calabi term is `∫₀^{0.1} H dp`. On the disk `H = H(c)` with the area
//! coordinate `c = π(p² + q²)`, so the Calabi term is `∫₀¹ H dc`.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::Serialize;

use super::CalabiError;
use crate::profile::Profile1D;

/// Width of the annulus in the `p` coordinate.
pub const ANNULUS_WIDTH: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyVariant {
    Annulus,
    Disk,
}

impl FamilyVariant {
    /// Interval containing the support of admissible Hamiltonians.
    pub fn domain(self) -> (f64, f64) {
        match self {
            FamilyVariant::Annulus => (0.0, ANNULUS_WIDTH),
            FamilyVariant::Disk => (0.0, 1.0),
        }
    }

    /// Admissible range of ε.
    pub fn eps_range(self) -> (f64, f64) {
        match self {
            FamilyVariant::Annulus => (0.0, ANNULUS_WIDTH),
            FamilyVariant::Disk => (0.5, 1.0),
        }
    }

    /// Point where μ_ε samples the Hamiltonian.
    pub fn probe(self, eps: f64) -> f64 {
        match self {
            FamilyVariant::Annulus => eps,
            FamilyVariant::Disk => 0.5 / eps,
        }
    }
}

impl FromStr for FamilyVariant {
    type Err = CalabiError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "annulus" => Ok(FamilyVariant::Annulus),
            "disk" => Ok(FamilyVariant::Disk),
            _ => Err(CalabiError::Domain(format!(
                "unknown variant {s:?} (expected annulus or disk)"
            ))),
        }
    }
}

impl fmt::Display for FamilyVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyVariant::Annulus => "annulus",
            FamilyVariant::Disk => "disk",
        })
    }
}

fn check(variant: FamilyVariant, h: &Profile1D, eps: f64) -> Result<(), CalabiError> {
    let (lo, hi) = variant.eps_range();
    if !(eps > lo && eps < hi) {
        return Err(CalabiError::Domain(format!(
            "eps = {eps} is outside ({lo}, {hi}) for the {variant}"
        )));
    }
    let (a, b) = variant.domain();
    if !h.vanishes_outside(a, b) {
        return Err(CalabiError::Domain(format!(
            "the Hamiltonian must be supported in ({a}, {b}) for the {variant}"
        )));
    }
    h.validate().map_err(|e| CalabiError::Domain(e.to_string()))
}

/// `Cal(ψ_H) − ε⁻¹·H(ε⁻¹/2)` on the disk, or `Cal(ψ_H) − H(ε)` on the
/// annulus.
pub fn mu_epsilon(variant: FamilyVariant, h: &Profile1D, eps: f64) -> Result<f64, CalabiError> {
    check(variant, h, eps)?;
    let (a, b) = variant.domain();
    let calabi = h.integrate(a, b);
    Ok(match variant {
        FamilyVariant::Annulus => calabi - h.eval(eps),
        FamilyVariant::Disk => calabi - h.eval(variant.probe(eps)) / eps,
    })
}

pub fn mu_epsilon_annulus(h: &Profile1D, eps: f64) -> Result<f64, CalabiError> {
    mu_epsilon(FamilyVariant::Annulus, h, eps)
}

pub fn mu_epsilon_disk(h: &Profile1D, eps: f64) -> Result<f64, CalabiError> {
    mu_epsilon(FamilyVariant::Disk, h, eps)
}

/// One tent of peak 1 and the given half width around each probe point.
pub fn bump_profiles(
    variant: FamilyVariant,
    eps_list: &[f64],
    half_width: f64,
) -> Result<Vec<Profile1D>, CalabiError> {
    let (a, b) = variant.domain();
    eps_list
        .iter()
        .map(|&eps| {
            let center = variant.probe(eps);
            if !(half_width > 0.0 && center - half_width > a && center + half_width < b) {
                return Err(CalabiError::Domain(format!(
                    "a bump of half width {half_width} around {center} leaves ({a}, {b})"
                )));
            }
            Ok(Profile1D::triangle_bump(center, half_width, 1.0))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndependenceReport {
    pub variant: FamilyVariant,
    pub eps: Vec<f64>,
    /// `matrix[i][j] = μ_{ε_i}(ψ_{H_j})`.
    pub matrix: Vec<Vec<f64>>,
    pub singular_values: Vec<f64>,
    pub tolerance: f64,
    pub rank: usize,
}

/// Relative tolerance on singular values for the numerical rank.
pub const RANK_TOL: f64 = 1e-9;

impl IndependenceReport {
    /// Recomputes `tolerance` and `rank` for singular values above
    /// `rel_tol · σ_max`.
    pub fn with_rank_tolerance(mut self, rel_tol: f64) -> Self {
        self.tolerance = rel_tol * self.singular_values.first().copied().unwrap_or(0.0);
        self.rank = self
            .singular_values
            .iter()
            .filter(|&&s| s > self.tolerance)
            .count();
        self
    }
}

/// The matrix of μ_ε values and its numerical rank.
pub fn linear_independence(
    variant: FamilyVariant,
    eps_list: &[f64],
    profiles: &[Profile1D],
) -> Result<IndependenceReport, CalabiError> {
    if eps_list.is_empty() {
        return Err(CalabiError::Domain("no eps values given".into()));
    }
    let mut sorted = eps_list.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(CalabiError::Domain("eps values must be distinct".into()));
    }
    if profiles.len() < eps_list.len() {
        return Err(CalabiError::Domain(format!(
            "{} profiles given for {} eps values",
            profiles.len(),
            eps_list.len()
        )));
    }
    let matrix = eps_list
        .iter()
        .map(|&eps| {
            profiles
                .iter()
                .map(|h| mu_epsilon(variant, h, eps))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let (k, m) = (eps_list.len(), profiles.len());
    let dm = DMatrix::from_fn(k, m, |i, j| matrix[i][j]);
    let mut singular_values: Vec<f64> = dm.singular_values().iter().copied().collect();
    singular_values.sort_by(|a, b| b.total_cmp(a));
    Ok(IndependenceReport {
        variant,
        eps: eps_list.to_vec(),
        matrix,
        singular_values,
        tolerance: 0.0,
        rank: 0,
    }
    .with_rank_tolerance(RANK_TOL))
}
