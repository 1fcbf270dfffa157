//! Medians of measured trees and the Calabi quasimorphism on autonomous
//! Hamiltonians `H = w∘F`:
//!
//! ```text
//! μ(ψ_H) = ∫_{S²} H ω − H̄(x₀)
//! ```
//!
//! where `x₀` is the median of the measured Reeb tree of `F`.

mod family;

use std::collections::VecDeque;

use serde::Serialize;

use crate::mesh::ScalarField;
use crate::profile::Profile1D;
use crate::reeb::{
    build_reeb_tree, classify_vertex, CriticalKind, Location, MeasuredTree, ReebError, TreePoint,
};

pub use family::{
    bump_profiles, linear_independence, mu_epsilon, mu_epsilon_annulus, mu_epsilon_disk,
    FamilyVariant, IndependenceReport, ANNULUS_WIDTH, RANK_TOL,
};

/// Default tolerance on measure for the bisection condition of the class 𝒲.
pub const EPS_BISECT: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CalabiError {
    #[error(transparent)]
    Reeb(#[from] ReebError),
    #[error("the field is constant, so its C0 norm is zero")]
    ZeroNorm,
    #[error("domain error: {0}")]
    Domain(String),
}

/// The unique point of a measured tree whose complement has no component of
/// measure above 1/2.
#[derive(Debug, Clone, PartialEq)]
pub struct Median {
    pub point: TreePoint,
    /// Measures of the components of `T ∖ {x₀}`. For an edge-interior median
    /// these are the two sides, low end first.
    pub component_measures: Vec<f64>,
}

/// Finds the median by descending from a root towards the heavy side.
pub fn median(tree: &MeasuredTree) -> Median {
    let n = tree.vertex_count();
    let mut parent_edge = vec![None; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([0]);
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &e in tree.incident(v) {
            let c = tree.edges()[e].other(v);
            if !seen[c] {
                seen[c] = true;
                parent_edge[c] = Some(e);
                queue.push_back(c);
            }
        }
    }
    // Measure hanging below each vertex.
    let mut sub = vec![0.0; n];
    for &v in order.iter().rev() {
        if let Some(e) = parent_edge[v] {
            let p = tree.edges()[e].other(v);
            sub[p] += sub[v] + tree.edges()[e].measure();
        }
    }
    let total = sub[0];
    let half = 0.5 * total;
    let mut v = 0;
    loop {
        let children = tree
            .incident(v)
            .iter()
            .copied()
            .filter(|&e| Some(e) != parent_edge[v]);
        let mut heavy = None;
        let mut components = Vec::new();
        for e in children {
            let c = tree.edges()[e].other(v);
            let comp = sub[c] + tree.edges()[e].measure();
            components.push(comp);
            if comp > half {
                heavy = Some((e, c, comp));
            }
        }
        let Some((e, c, comp)) = heavy else {
            if parent_edge[v].is_some() {
                components.push(total - sub[v]);
            }
            return Median {
                point: tree.point(Location::Vertex(v)),
                component_measures: components,
            };
        };
        if sub[c] < half {
            let edge = &tree.edges()[e];
            let tau = comp - half;
            let offset = if v == edge.lo {
                tau
            } else {
                edge.measure() - tau
            };
            let below = tree.side_measure(e, edge.lo) + offset;
            return Median {
                point: tree.point(Location::Edge { edge: e, offset }),
                component_measures: vec![below, total - below],
            };
        }
        v = c;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MedianJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<f64>,
    pub level: f64,
}

impl From<&Median> for MedianJson {
    fn from(m: &Median) -> Self {
        match m.point.location {
            Location::Vertex(v) => MedianJson {
                vertex: Some(v),
                edge: None,
                offset: None,
                level: m.point.level,
            },
            Location::Edge { edge, offset } => MedianJson {
                vertex: None,
                edge: Some(edge),
                offset: Some(offset),
                level: m.point.level,
            },
        }
    }
}

/// Membership in the class 𝒲 with the reasons for any failure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WVerdict {
    pub ok: bool,
    pub reasons: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuasimorphismReport {
    pub mu: f64,
    pub integral_term: f64,
    pub median_term: f64,
    pub median: MedianJson,
    pub c0_norm: f64,
    pub zeta_lower: Option<f64>,
    #[serde(rename = "in_W")]
    pub in_w: Option<WVerdict>,
}

/// A field together with its measured Reeb tree and median, for evaluating
/// many profiles.
#[derive(Debug, Clone)]
pub struct Autonomous<'a> {
    field: &'a ScalarField,
    tree: MeasuredTree,
    median: Median,
}

impl<'a> Autonomous<'a> {
    pub fn new(field: &'a ScalarField) -> Result<Self, CalabiError> {
        let tree = build_reeb_tree(field)?;
        let median = median(&tree);
        Ok(Self {
            field,
            tree,
            median,
        })
    }

    pub fn field(&self) -> &ScalarField {
        self.field
    }

    pub fn tree(&self) -> &MeasuredTree {
        &self.tree
    }

    pub fn median(&self) -> &Median {
        &self.median
    }

    /// `(μ, ∫ H ω, H̄(x₀))` for `H = w∘F`.
    pub fn terms(&self, w: &Profile1D) -> (f64, f64, f64) {
        let integral = self.tree.integral(w);
        let at_median = w.eval(self.median.point.level);
        (integral - at_median, integral, at_median)
    }

    pub fn mu(&self, w: &Profile1D) -> f64 {
        self.terms(w).0
    }

    /// `max H − min H` for `H = w∘F`; `w` is maximized over the range of `F`
    /// at its knots, the range ends and a uniform grid.
    pub fn c0_norm(&self, w: &Profile1D) -> f64 {
        let (lo, hi) = (self.field.min_value(), self.field.max_value());
        if *w == Profile1D::identity() {
            return hi - lo;
        }
        const GRID: usize = 4096;
        let samples = w
            .knots()
            .into_iter()
            .filter(|&k| k > lo && k < hi)
            .chain((0..=GRID).map(|i| lo + (hi - lo) * i as f64 / GRID as f64))
            .map(|t| w.eval(t));
        let (min, max) = samples.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| {
            (a.min(x), b.max(x))
        });
        max - min
    }

    pub fn report(&self, w: &Profile1D) -> QuasimorphismReport {
        let (mu, integral_term, median_term) = self.terms(w);
        QuasimorphismReport {
            mu,
            integral_term,
            median_term,
            median: MedianJson::from(&self.median),
            c0_norm: self.c0_norm(w),
            zeta_lower: None,
            in_w: None,
        }
    }

    /// `μ(w₁ + w₂) − μ(w₁) − μ(w₂)`.
    pub fn homomorphism_residual(&self, w1: &Profile1D, w2: &Profile1D) -> f64 {
        self.mu(&w1.plus(w2)) - self.mu(w1) - self.mu(w2)
    }

    /// The three conditions defining 𝒲: PL-Morse, 0 a regular value, and no
    /// component of `F⁻¹(0)` cutting the sphere into halves (up to
    /// `eps_bisect` in measure).
    pub fn in_class_w(&self, eps_bisect: f64) -> WVerdict {
        let mut reasons = Vec::new();
        let field = self.field;
        let c0 = field.c0_norm();
        if field.mean().abs() > 1e-9 * c0.max(f64::MIN_POSITIVE) {
            reasons.push(format!("mean is {:.3e}, not zero", field.mean()));
        }
        for v in 0..field.vertex_count() {
            if let Some(CriticalKind::Saddle(k)) = classify_vertex(field, v) {
                if k > 1 {
                    reasons.push(format!(
                        "degenerate saddle of multiplicity {k} at mesh vertex {v}"
                    ));
                }
            }
        }
        if self.tree.contracted_edges() > 0 {
            reasons.push(format!(
                "{} zero-measure tree edges contracted (merged critical points)",
                self.tree.contracted_edges()
            ));
        }
        for (i, v) in self.tree.vertices().iter().enumerate() {
            if v.level == 0.0 {
                reasons.push(format!("0 is a critical value (tree vertex {i})"));
            }
        }
        for (i, e) in self.tree.edges().iter().enumerate() {
            let (a, b) = (e.profile.lo_level(), e.profile.hi_level());
            if a < 0.0 && 0.0 < b {
                let below = self.tree.side_measure(i, e.lo) + e.profile.cumulative(0.0);
                let total = self.tree.total_measure();
                if (below - 0.5 * total).abs() <= eps_bisect {
                    reasons.push(format!(
                        "bisecting zero level: the level-0 component on edge {i} splits the area {below:.12}/{:.12}",
                        total - below
                    ));
                }
            }
        }
        WVerdict {
            ok: reasons.is_empty(),
            reasons,
        }
    }

    /// `|μ(ψ_F)| / ‖F‖_{C⁰}` with `w` the identity.
    pub fn zeta_lower(&self) -> Result<f64, CalabiError> {
        let c0 = self.field.c0_norm();
        if c0 == 0.0 {
            return Err(CalabiError::ZeroNorm);
        }
        Ok(self.mu(&Profile1D::identity()).abs() / c0)
    }
}

/// μ(ψ_H) for `H = w∘F`.
pub fn mu_autonomous(
    field: &ScalarField,
    w: &Profile1D,
) -> Result<QuasimorphismReport, CalabiError> {
    Ok(Autonomous::new(field)?.report(w))
}

/// `μ(w₁ + w₂) − μ(w₁) − μ(w₂)` on `field`.
pub fn homomorphism_check(
    field: &ScalarField,
    w1: &Profile1D,
    w2: &Profile1D,
) -> Result<f64, CalabiError> {
    Ok(Autonomous::new(field)?.homomorphism_residual(w1, w2))
}

pub fn in_class_w(field: &ScalarField, eps_bisect: f64) -> Result<WVerdict, CalabiError> {
    Ok(Autonomous::new(field)?.in_class_w(eps_bisect))
}

/// Report for `w = id` with `zeta_lower` filled in.
pub fn zeta_lower_bound(field: &ScalarField) -> Result<QuasimorphismReport, CalabiError> {
    if field.c0_norm() == 0.0 {
        return Err(CalabiError::ZeroNorm);
    }
    let eval = Autonomous::new(field)?;
    let mut report = eval.report(&Profile1D::identity());
    report.zeta_lower = Some(eval.zeta_lower()?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{octahedron, FixtureSpec};

    fn star(measures: &[f64]) -> MeasuredTree {
        let mut levels = vec![0.0];
        let mut edges = Vec::new();
        for (i, &m) in measures.iter().enumerate() {
            levels.push(1.0 + i as f64);
            edges.push((0, i + 1, m));
        }
        MeasuredTree::with_uniform_edges(&levels, &edges).unwrap()
    }

    #[test]
    fn segment_median() {
        let tree = MeasuredTree::with_uniform_edges(&[-0.5, 0.5], &[(0, 1, 1.0)]).unwrap();
        let m = median(&tree);
        assert_eq!(
            m.point.location,
            Location::Edge {
                edge: 0,
                offset: 0.5
            }
        );
        assert_eq!(m.point.level, 0.0);
    }

    #[test]
    fn balanced_star_median_is_center() {
        let m = median(&star(&[0.5, 0.25, 0.25]));
        assert_eq!(m.point.location, Location::Vertex(0));
        assert_eq!(m.component_measures, vec![0.5, 0.25, 0.25]);
    }

    #[test]
    fn heavy_star_median_is_on_heavy_edge() {
        let m = median(&star(&[0.7, 0.2, 0.1]));
        let Location::Edge { edge, offset } = m.point.location else {
            panic!("edge median expected");
        };
        assert_eq!(edge, 0);
        assert!((offset - 0.2).abs() < 1e-15);
        assert!((m.component_measures[0] - 0.5).abs() < 1e-15);
        assert!((m.component_measures[1] - 0.5).abs() < 1e-15);
        // Rooting elsewhere gives the same point.
        let tree = MeasuredTree::with_uniform_edges(
            &[1.0, 0.0, 2.0, 3.0],
            &[(1, 0, 0.7), (1, 2, 0.2), (1, 3, 0.1)],
        )
        .unwrap();
        let m = median(&tree);
        let Location::Edge { edge: 0, offset } = m.point.location else {
            panic!("edge median expected");
        };
        assert!((offset - 0.2).abs() < 1e-15);
    }

    #[test]
    fn height_field_is_symmetric() {
        let field = FixtureSpec::Height.field(4).normalized();
        let eval = Autonomous::new(&field).unwrap();
        assert!(eval.median().point.level.abs() < 1e-12);
        let (mu, integral, at_median) = eval.terms(&Profile1D::identity());
        assert!(mu.abs() < 1e-12 && integral.abs() < 1e-12 && at_median.abs() < 1e-12);
        let verdict = eval.in_class_w(EPS_BISECT);
        assert!(!verdict.ok);
        assert!(verdict
            .reasons
            .iter()
            .any(|r| r.starts_with("bisecting zero level")));
        assert!(eval.zeta_lower().unwrap() < 1e-12);
    }

    #[test]
    fn perturbed_height_is_generic() {
        let field = FixtureSpec::PerturbedHeight.field(4).normalized();
        let eval = Autonomous::new(&field).unwrap();
        let verdict = eval.in_class_w(EPS_BISECT);
        assert!(verdict.ok, "{:?}", verdict.reasons);
        assert!(eval.zeta_lower().unwrap() > 1e-4);
    }

    #[test]
    fn constants_and_scaling() {
        let field = FixtureSpec::TwoBump.field(3);
        let eval = Autonomous::new(&field).unwrap();
        assert!(eval.mu(&Profile1D::constant(3.5)).abs() < 1e-12);
        let w = Profile1D::pl(vec![0.0, 0.3, 1.0], vec![1.0, -2.0, 0.5]).unwrap();
        let mu = eval.mu(&w);
        assert!((eval.mu(&w.scaled(-2.5)) + 2.5 * mu).abs() < 1e-12);
        assert!(eval.homomorphism_residual(&w, &Profile1D::zero()).abs() < 1e-15);
        assert!(eval.homomorphism_residual(&w, &w.scaled(-1.0)).abs() < 1e-15);
    }

    #[test]
    fn constant_field_has_zero_norm() {
        let field = ScalarField::new(octahedron(), vec![0.25; 6], None).unwrap();
        assert_eq!(zeta_lower_bound(&field), Err(CalabiError::ZeroNorm));
    }

    #[test]
    fn zero_vertex_value_is_reported() {
        // Octahedron height with the equator tied at exactly 0.
        let mesh = octahedron();
        let values = mesh.positions.iter().map(|p| p[2] / 2.0).collect();
        let field = ScalarField::new(mesh, values, None).unwrap();
        let verdict = in_class_w(&field, EPS_BISECT).unwrap();
        assert!(!verdict.ok);
        assert!(verdict
            .reasons
            .iter()
            .any(|r| r.starts_with("bisecting zero level")));
    }

    #[test]
    fn report_json_shape() {
        let field = FixtureSpec::Height.field(2).normalized();
        let report = zeta_lower_bound(&field).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        for key in [
            "mu",
            "integral_term",
            "median_term",
            "median",
            "c0_norm",
            "zeta_lower",
            "in_W",
        ] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert!(json["median"].get("edge").is_some());
        assert!(json["median"].get("offset").is_some());
    }
}
