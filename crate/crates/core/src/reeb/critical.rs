//! PL critical points from lower links.

use serde::Serialize;

use crate::mesh::ScalarField;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalKind {
    Minimum,
    Maximum,
    /// Lower link with `k + 1 ≥ 2` components; `k > 1` is a monkey saddle.
    Saddle(usize),
}

/// Number of connected components of the lower link of `v`, and whether the
/// upper link is empty.
fn lower_link(field: &ScalarField, v: usize) -> (usize, bool) {
    let link = &field.topology().links[v];
    let lower: Vec<bool> = link
        .iter()
        .map(|&u| field.cmp_vertices(u, v).is_lt())
        .collect();
    if lower.iter().all(|&b| b) {
        return (1, true);
    }
    let changes = (0..lower.len())
        .filter(|&i| lower[i] && !lower[(i + 1) % lower.len()])
        .count();
    (changes, false)
}

/// Classification of `v`; `None` for regular vertices.
pub fn classify_vertex(field: &ScalarField, v: usize) -> Option<CriticalKind> {
    match lower_link(field, v) {
        (0, _) => Some(CriticalKind::Minimum),
        (_, true) => Some(CriticalKind::Maximum),
        (1, false) => None,
        (k, false) => Some(CriticalKind::Saddle(k - 1)),
    }
}

/// All PL critical vertices in vertex order.
pub fn critical_points(field: &ScalarField) -> Vec<(usize, CriticalKind)> {
    (0..field.vertex_count())
        .filter_map(|v| classify_vertex(field, v).map(|k| (v, k)))
        .collect()
}
