//! Oracles independent of the Reeb-tree construction: exact quadrature of
//! `w∘F` over the mesh, Monte-Carlo sampling of the surface, a sweep that
//! assigns samples to tree edges, random measured trees and a brute-force
//! median scan.

#![allow(dead_code)]

use calabi_core::calabi::median;
use calabi_core::mesh::{AreaSampler, ScalarField, UnionFind};
use calabi_core::profile::Profile1D;
use calabi_core::reeb::{Location, MeasuredTree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Monomial coefficients of `w` on an open interval free of its knots.
pub fn piece_poly(w: &Profile1D, lo: f64, hi: f64) -> Vec<f64> {
    let mid = 0.5 * (lo + hi);
    match w {
        Profile1D::Poly { coeffs } => coeffs.clone(),
        Profile1D::Pl { xs, ys } => {
            let last = xs.len() - 1;
            if mid <= xs[0] {
                return vec![ys[0]];
            }
            if mid >= xs[last] {
                return vec![ys[last]];
            }
            let k = xs.partition_point(|&x| x <= mid) - 1;
            let slope = (ys[k + 1] - ys[k]) / (xs[k + 1] - xs[k]);
            vec![ys[k] - slope * xs[k], slope]
        }
        Profile1D::Ramp { start, coeffs } => {
            if mid <= *start {
                return Vec::new();
            }
            // Σ c_k (t − start)^k expanded binomially.
            let mut out = vec![0.0; coeffs.len()];
            for (k, &c) in coeffs.iter().enumerate() {
                let mut binom = 1.0;
                for j in 0..=k {
                    out[j] += c * binom * (-start).powi((k - j) as i32);
                    binom = binom * (k - j) as f64 / (j + 1) as f64;
                }
            }
            out
        }
        Profile1D::Sum { parts } => {
            let mut out = Vec::new();
            for p in parts {
                let q = piece_poly(p, lo, hi);
                if q.len() > out.len() {
                    out.resize(q.len(), 0.0);
                }
                for (o, c) in out.iter_mut().zip(q) {
                    *o += c;
                }
            }
            out
        }
        Profile1D::Scaled { factor, inner } => piece_poly(inner, lo, hi)
            .into_iter()
            .map(|c| factor * c)
            .collect(),
    }
}

/// Complete homogeneous symmetric polynomial `h_k(x, y, z)`.
fn complete_symmetric(k: usize, [x, y, z]: [f64; 3]) -> f64 {
    let mut total = 0.0;
    for i in 0..=k {
        for j in 0..=k - i {
            total += x.powi(i as i32) * y.powi(j as i32) * z.powi((k - i - j) as i32);
        }
    }
    total
}

/// `∫_T F^k dA / area(T)` for `F` linear with vertex values `f`.
fn mean_power(k: usize, f: [f64; 3]) -> f64 {
    // 2·k!/(k+2)! = 2/((k+1)(k+2))
    2.0 / ((k + 1) * (k + 2)) as f64 * complete_symmetric(k, f)
}

type Point = ([f64; 3], f64);

fn clip(poly: &[Point], keep_above: bool, level: f64) -> Vec<Point> {
    let inside = |p: &Point| {
        if keep_above {
            p.1 >= level
        } else {
            p.1 <= level
        }
    };
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        if inside(&p) {
            out.push(p);
        }
        if inside(&p) != inside(&q) {
            let t = (level - p.1) / (q.1 - p.1);
            let x = [0, 1, 2].map(|c| p.0[c] + t * (q.0[c] - p.0[c]));
            out.push((x, level));
        }
    }
    out
}

fn cross_norm(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    let w = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt()
}

/// `∫ w(F) dA` over the mesh with normalized area, exact up to rounding for
/// profiles that are polynomial between knots: each triangle is cut along
/// the knot levels and the pieces integrated in closed form.
pub fn mesh_integral(field: &ScalarField, w: &Profile1D) -> f64 {
    let knots = w.knots();
    let positions = &field.mesh().positions;
    let mut total = 0.0;
    for (t, tri) in field.triangles().iter().enumerate() {
        let f = tri.map(|v| field.value(v));
        let area = field.areas()[t];
        let (lo, hi) = (f[0].min(f[1]).min(f[2]), f[0].max(f[1]).max(f[2]));
        if lo == hi {
            total += area * w.eval(lo);
            continue;
        }
        let full = cross_norm(positions[tri[0]], positions[tri[1]], positions[tri[2]]);
        let mut cuts: Vec<f64> = knots
            .iter()
            .copied()
            .filter(|&k| k > lo && k < hi)
            .collect();
        cuts.insert(0, lo);
        cuts.push(hi);
        let polygon: Vec<Point> = (0..3).map(|i| (positions[tri[i]], f[i])).collect();
        for pair in cuts.windows(2) {
            let coeffs = piece_poly(w, pair[0], pair[1]);
            let piece = clip(&clip(&polygon, true, pair[0]), false, pair[1]);
            for i in 1..piece.len().saturating_sub(1) {
                let (a, b, c) = (piece[0], piece[i], piece[i + 1]);
                let frac = cross_norm(a.0, b.0, c.0) / full;
                let g = [a.1, b.1, c.1];
                let value: f64 = coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, &ck)| ck * mean_power(k, g))
                    .sum();
                total += area * frac * value;
            }
        }
    }
    total
}

/// Monte-Carlo estimate of `∫ w(F) dA`.
pub fn monte_carlo_integral(field: &ScalarField, w: &Profile1D, samples: usize, seed: u64) -> f64 {
    let mut sampler = AreaSampler::new(field, seed);
    let mut total = 0.0;
    for _ in 0..samples {
        let (t, bary) = sampler.sample();
        total += w.eval(field.eval_in_triangle(t, bary));
    }
    total / samples as f64
}

/// Fraction of `samples` uniform points falling on each tree edge.
///
/// Points are swept from the top: at the level `y` of a point, the
/// superlevel component of its triangle is found by union-find over the mesh
/// vertices above `y`, and its highest vertex is a maximum of the tree. The
/// edge is then found by walking down from that maximum. This needs every
/// tree vertex to have at most one lower edge, so that each superlevel
/// component has a single boundary contour.
pub fn monte_carlo_edge_measures(
    field: &ScalarField,
    tree: &MeasuredTree,
    samples: usize,
    seed: u64,
) -> Vec<f64> {
    let lower_edge: Vec<Option<usize>> = (0..tree.vertex_count())
        .map(|v| {
            let down: Vec<usize> = tree
                .incident(v)
                .iter()
                .copied()
                .filter(|&e| tree.edges()[e].hi == v)
                .collect();
            assert!(down.len() <= 1, "tree vertex {v} has several lower edges");
            down.first().copied()
        })
        .collect();
    let tree_max: std::collections::HashMap<usize, usize> = tree
        .vertices()
        .iter()
        .enumerate()
        .filter(|(v, _)| lower_edge[*v].is_some() && tree.degree(*v) == 1)
        .map(|(v, tv)| (tv.mesh_vertex.expect("maxima carry mesh vertices"), v))
        .collect();

    let mut sampler = AreaSampler::new(field, seed);
    let mut points: Vec<(f64, usize)> = (0..samples)
        .map(|_| {
            let (t, bary) = sampler.sample();
            let tri = field.triangles()[t];
            let top = *tri.iter().max_by_key(|&&v| field.rank(v)).unwrap();
            (field.eval_in_triangle(t, bary), top)
        })
        .collect();
    points.sort_by(|a, b| b.0.total_cmp(&a.0));

    let n = field.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(field.rank(v)));
    let mut uf = UnionFind::new(n);
    let mut highest: Vec<usize> = (0..n).collect();
    let mut added = vec![false; n];
    let mut next = 0;
    let mut counts = vec![0usize; tree.edge_count()];
    for (y, top) in points {
        while next < n && field.value(order[next]) > y {
            let v = order[next];
            added[v] = true;
            for &u in &field.topology().neighbors[v] {
                if added[u] {
                    let (ru, rv) = (uf.find(u), uf.find(v));
                    if ru != rv {
                        let h = if field.rank(highest[ru]) > field.rank(highest[rv]) {
                            highest[ru]
                        } else {
                            highest[rv]
                        };
                        let r = uf.union(ru, rv);
                        highest[r] = h;
                    }
                }
            }
            next += 1;
        }
        if !added[top] {
            // y equals the top vertex value: a null event.
            continue;
        }
        let peak = highest[uf.find(top)];
        let mut v = tree_max[&peak];
        let edge = loop {
            let e = lower_edge[v].expect("walked below the minimum");
            if tree.edges()[e].profile.lo_level() <= y {
                break e;
            }
            v = tree.edges()[e].lo;
        };
        counts[edge] += 1;
    }
    counts
        .into_iter()
        .map(|c| c as f64 / samples as f64)
        .collect()
}

/// Random tree on `n` vertices with levels given by depth from vertex 0 and
/// random edge measures summing to one.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> MeasuredTree {
    let mut depth = vec![0.0; n];
    let mut edges = Vec::with_capacity(n - 1);
    let mut raw = Vec::with_capacity(n - 1);
    for v in 1..n {
        let parent = rng.random_range(0..v);
        depth[v] = depth[parent] + 1.0;
        // Heavy-tailed weights so some edges dominate.
        let m: f64 = rng.random::<f64>().powi(3) + 1e-3;
        raw.push(m);
        edges.push((parent, v, 0.0));
    }
    let total: f64 = raw.iter().sum();
    for (e, m) in edges.iter_mut().zip(raw) {
        e.2 = m / total;
    }
    MeasuredTree::with_uniform_edges(&depth, &edges).unwrap()
}

/// Largest measure of a component of `T ∖ {x}`.
pub fn phi(tree: &MeasuredTree, location: Location) -> f64 {
    match location {
        Location::Vertex(v) => tree
            .incident(v)
            .iter()
            .map(|&e| {
                let edge = &tree.edges()[e];
                edge.measure() + tree.side_measure(e, edge.other(v))
            })
            .fold(0.0, f64::max),
        Location::Edge { edge, offset } => {
            let e = &tree.edges()[edge];
            let below = tree.side_measure(edge, e.lo) + offset;
            let above = tree.side_measure(edge, e.hi) + e.measure() - offset;
            below.max(above)
        }
    }
}

/// Scan points: every vertex, and cell midpoints on each edge with about
/// `count` cells in total, each of measure at most `1/count`.
pub fn scan_points(tree: &MeasuredTree, count: usize) -> Vec<(Location, f64)> {
    let mut out: Vec<(Location, f64)> = (0..tree.vertex_count())
        .map(|v| (Location::Vertex(v), 0.0))
        .collect();
    for (i, e) in tree.edges().iter().enumerate() {
        let cells = ((e.measure() * count as f64).ceil() as usize).max(1);
        let width = e.measure() / cells as f64;
        for j in 0..cells {
            out.push((
                Location::Edge {
                    edge: i,
                    offset: (j as f64 + 0.5) * width,
                },
                width,
            ));
        }
    }
    out
}

/// Distance in measure along the tree between two points on the same edge,
/// or between a vertex and a point on an incident edge; `None` otherwise.
pub fn local_distance(tree: &MeasuredTree, a: Location, b: Location) -> Option<f64> {
    let offset_of_vertex = |edge: usize, v: usize| {
        let e = &tree.edges()[edge];
        if v == e.lo {
            Some(0.0)
        } else if v == e.hi {
            Some(e.measure())
        } else {
            None
        }
    };
    match (a, b) {
        (Location::Vertex(u), Location::Vertex(v)) => (u == v).then_some(0.0),
        (Location::Vertex(v), Location::Edge { edge, offset })
        | (Location::Edge { edge, offset }, Location::Vertex(v)) => {
            offset_of_vertex(edge, v).map(|o| (o - offset).abs())
        }
        (
            Location::Edge {
                edge: e1,
                offset: o1,
            },
            Location::Edge {
                edge: e2,
                offset: o2,
            },
        ) => (e1 == e2).then_some((o1 - o2).abs()),
    }
}

/// Brute-force check of the median of `tree` against a scan of about
/// `count` points.
pub fn check_median(tree: &MeasuredTree, count: usize) -> Result<(), String> {
    let m = median(tree);
    if let Some(c) = m.component_measures.iter().find(|&&c| c > 0.5 + 1e-12) {
        return Err(format!("component of measure {c}"));
    }
    let at_median = phi(tree, m.point.location);
    if at_median > 0.5 + 1e-12 {
        return Err(format!("phi at the median is {at_median}"));
    }
    let points = scan_points(tree, count);
    let values: Vec<f64> = points.iter().map(|&(loc, _)| phi(tree, loc)).collect();
    let best = values.iter().copied().fold(f64::INFINITY, f64::min);
    if best < at_median - 1e-12 {
        return Err(format!(
            "scan found phi = {best} below the median's {at_median}"
        ));
    }
    // Every near-minimal scan point lies within its cell of the median.
    for ((loc, width), v) in points.iter().zip(&values) {
        if *v > best + 1e-12 {
            continue;
        }
        let d = local_distance(tree, *loc, m.point.location)
            .ok_or_else(|| format!("minimizer {loc:?} is far from the median {:?}", m.point))?;
        if d > 0.5 * width + 1e-12 {
            return Err(format!("minimizer {loc:?} is {d} away from the median"));
        }
    }
    Ok(())
}
