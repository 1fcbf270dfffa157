//! Triangulated 2-spheres carrying a piecewise-linear scalar field.

mod fixtures;
mod io;
mod sample;

use std::cmp::Ordering;
use std::collections::HashMap;

pub use fixtures::{
    direction, generic_rotation, icosphere, octahedron, round_sphere, torus, BumpField, FixtureSpec,
};
pub use io::{parse_off, parse_values, MeshDocument};
pub use sample::{monte_carlo_integral, AreaSampler, MonteCarloEstimate};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MeshError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a sphere: {0}")]
    NotASphere(String),
    #[error("triangle {0} has zero area")]
    DegenerateTriangle(usize),
    #[error("invalid field: {0}")]
    Invalid(String),
}

impl MeshError {
    /// Short machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            MeshError::Parse(_) => "ParseError",
            MeshError::NotASphere(_) => "NotASphere",
            MeshError::DegenerateTriangle(_) => "DegenerateTriangle",
            MeshError::Invalid(_) => "InvalidField",
        }
    }
}

/// Triangle soup with positions; connectivity is checked by [`ScalarField::new`].
#[derive(Debug, Clone, PartialEq)]
pub struct TriMesh {
    pub positions: Vec<[f64; 3]>,
    pub triangles: Vec<[usize; 3]>,
}

impl TriMesh {
    pub fn new(positions: Vec<[f64; 3]>, triangles: Vec<[usize; 3]>) -> Self {
        Self {
            positions,
            triangles,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangles[t].map(|i| self.positions[i]);
        let u = sub(b, a);
        let v = sub(c, a);
        0.5 * norm(cross(u, v))
    }

    /// Splits every triangle into four through its edge midpoints.
    /// Returns the refined mesh and, for each new vertex, the pair of parent
    /// vertices it is the midpoint of (`(i, i)` for original vertices).
    pub fn subdivide(&self) -> (TriMesh, Vec<(usize, usize)>) {
        let mut positions = self.positions.clone();
        let mut parents: Vec<(usize, usize)> = (0..positions.len()).map(|i| (i, i)).collect();
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, positions: &mut Vec<[f64; 3]>| {
            let key = (a.min(b), a.max(b));
            *midpoints.entry(key).or_insert_with(|| {
                let (pa, pb) = (positions[a], positions[b]);
                positions.push([
                    0.5 * (pa[0] + pb[0]),
                    0.5 * (pa[1] + pb[1]),
                    0.5 * (pa[2] + pb[2]),
                ]);
                parents.push(key);
                positions.len() - 1
            })
        };
        let mut triangles = Vec::with_capacity(4 * self.triangles.len());
        for &[a, b, c] in &self.triangles {
            let ab = midpoint(a, b, &mut positions);
            let bc = midpoint(b, c, &mut positions);
            let ca = midpoint(c, a, &mut positions);
            triangles.extend([[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
        }
        (TriMesh::new(positions, triangles), parents)
    }
}

pub(crate) fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

/// Connectivity of a closed triangulated surface.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    /// Undirected edges `(a, b)` with `a < b`.
    pub edges: Vec<(usize, usize)>,
    pub neighbors: Vec<Vec<usize>>,
    /// Cyclically ordered link of each vertex.
    pub links: Vec<Vec<usize>>,
}

impl Topology {
    /// Checks that the triangles form a closed connected surface with Euler
    /// characteristic 2.
    pub fn of_sphere(vertex_count: usize, triangles: &[[usize; 3]]) -> Result<Self, MeshError> {
        if triangles.is_empty() {
            return Err(MeshError::NotASphere("no triangles".into()));
        }
        for (t, tri) in triangles.iter().enumerate() {
            if tri.iter().any(|&i| i >= vertex_count) {
                return Err(MeshError::Parse(format!(
                    "triangle {t} references a vertex out of range"
                )));
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(MeshError::DegenerateTriangle(t));
            }
        }
        let mut edge_faces: HashMap<(usize, usize), usize> = HashMap::new();
        let mut link_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertex_count];
        for &[a, b, c] in triangles {
            for (u, v) in [(a, b), (b, c), (c, a)] {
                *edge_faces.entry((u.min(v), u.max(v))).or_default() += 1;
            }
            link_edges[a].push((b, c));
            link_edges[b].push((c, a));
            link_edges[c].push((a, b));
        }
        if let Some(((a, b), n)) = edge_faces.iter().find(|(_, &n)| n != 2) {
            return Err(MeshError::NotASphere(format!(
                "edge ({a}, {b}) lies in {n} triangles"
            )));
        }
        let mut edges: Vec<(usize, usize)> = edge_faces.into_keys().collect();
        edges.sort_unstable();

        let mut neighbors = vec![Vec::new(); vertex_count];
        for &(a, b) in &edges {
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        let mut links = Vec::with_capacity(vertex_count);
        for (v, le) in link_edges.iter().enumerate() {
            if le.is_empty() {
                return Err(MeshError::NotASphere(format!("vertex {v} is isolated")));
            }
            links.push(link_cycle(v, le)?);
        }

        let mut components = UnionFind::new(vertex_count);
        for &(a, b) in &edges {
            components.union(a, b);
        }
        if (1..vertex_count).any(|v| components.find(v) != components.find(0)) {
            return Err(MeshError::NotASphere("surface is disconnected".into()));
        }
        let chi = vertex_count as i64 - edges.len() as i64 + triangles.len() as i64;
        if chi != 2 {
            return Err(MeshError::NotASphere(format!(
                "Euler characteristic is {chi}"
            )));
        }
        Ok(Self {
            edges,
            neighbors,
            links,
        })
    }
}

/// Orders the link edges of `v` into a single cycle.
fn link_cycle(v: usize, link_edges: &[(usize, usize)]) -> Result<Vec<usize>, MeshError> {
    let mut next: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(b, c) in link_edges {
        next.entry(b).or_default().push(c);
        next.entry(c).or_default().push(b);
    }
    let start = link_edges[0].0;
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = link_edges[0].1;
    while cur != start {
        if cycle.len() > link_edges.len() {
            break;
        }
        cycle.push(cur);
        let nbrs = &next[&cur];
        let step = if nbrs[0] != prev { nbrs[0] } else { nbrs[1] };
        prev = cur;
        cur = step;
    }
    if cycle.len() != link_edges.len() {
        return Err(MeshError::NotASphere(format!(
            "the link of vertex {v} is not a single cycle"
        )));
    }
    Ok(cycle)
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; returns the new root.
    pub fn union(&mut self, a: usize, b: usize) -> usize {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return ra;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        ra
    }
}

/// A validated PL function on a triangulated sphere with triangle areas
/// normalized to total 1.
///
/// Equal values are ordered by vertex index (simulation of simplicity), so
/// the field behaves as if all values were distinct.
#[derive(Debug, Clone)]
pub struct ScalarField {
    mesh: TriMesh,
    values: Vec<f64>,
    areas: Vec<f64>,
    topology: Topology,
    rank: Vec<usize>,
    tied_vertices: usize,
}

impl ScalarField {
    /// Validates the mesh and the values. Areas come from the vertex positions
    /// unless `areas` is given; either way they are rescaled to sum to 1.
    pub fn new(
        mesh: TriMesh,
        values: Vec<f64>,
        areas: Option<Vec<f64>>,
    ) -> Result<Self, MeshError> {
        if values.len() != mesh.vertex_count() {
            return Err(MeshError::Invalid(format!(
                "{} values for {} vertices",
                values.len(),
                mesh.vertex_count()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(MeshError::Invalid(format!(
                "value at vertex {i} is not finite"
            )));
        }
        let topology = Topology::of_sphere(mesh.vertex_count(), &mesh.triangles)?;
        let mut areas = match areas {
            Some(a) => {
                if a.len() != mesh.triangles.len() {
                    return Err(MeshError::Invalid(format!(
                        "{} areas for {} triangles",
                        a.len(),
                        mesh.triangles.len()
                    )));
                }
                a
            }
            None => (0..mesh.triangles.len())
                .map(|t| mesh.triangle_area(t))
                .collect(),
        };
        let total: f64 = areas.iter().sum();
        for (t, &a) in areas.iter().enumerate() {
            if !(a.is_finite() && a > total * 1e-15) {
                return Err(MeshError::DegenerateTriangle(t));
            }
        }
        for a in &mut areas {
            *a /= total;
        }
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        let mut rank = vec![0; values.len()];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        let tied_vertices = order
            .iter()
            .enumerate()
            .filter(|&(i, &v)| {
                (i > 0 && values[order[i - 1]] == values[v])
                    || (i + 1 < order.len() && values[order[i + 1]] == values[v])
            })
            .count();
        Ok(Self {
            mesh,
            values,
            areas,
            topology,
            rank,
            tied_vertices,
        })
    }

    pub fn mesh(&self) -> &TriMesh {
        &self.mesh
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, v: usize) -> f64 {
        self.values[v]
    }

    /// Normalized triangle areas.
    pub fn areas(&self) -> &[f64] {
        &self.areas
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    pub fn vertex_count(&self) -> usize {
        self.values.len()
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.mesh.triangles
    }

    /// Position of `v` in the perturbed total order.
    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    /// Total order on vertices: by value, ties broken by index.
    pub fn cmp_vertices(&self, a: usize, b: usize) -> Ordering {
        self.rank[a].cmp(&self.rank[b])
    }

    /// Number of vertices whose value is shared with another vertex.
    pub fn tied_vertices(&self) -> usize {
        self.tied_vertices
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `max F − min F`.
    pub fn c0_norm(&self) -> f64 {
        self.max_value() - self.min_value()
    }

    /// `∫ F ω` for the PL interpolant.
    pub fn mean(&self) -> f64 {
        self.mesh
            .triangles
            .iter()
            .zip(&self.areas)
            .map(|(tri, a)| a * tri.iter().map(|&i| self.values[i]).sum::<f64>() / 3.0)
            .sum()
    }

    /// The same field shifted to have mean zero.
    pub fn normalized(&self) -> Self {
        let mean = self.mean();
        self.map_values(|v| v - mean)
    }

    /// Applies `f` to every vertex value. `f` should be strictly increasing so
    /// that the vertex order is preserved.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Self {
        let values: Vec<f64> = self.values.iter().map(|&v| f(v)).collect();
        let mut out = self.clone();
        out.values = values;
        let mut order: Vec<usize> = (0..out.values.len()).collect();
        order.sort_by(|&a, &b| out.values[a].total_cmp(&out.values[b]).then(a.cmp(&b)));
        for (r, &v) in order.iter().enumerate() {
            out.rank[v] = r;
        }
        out
    }

    /// One midpoint subdivision: the PL function is unchanged, each child
    /// triangle gets a quarter of its parent's area.
    pub fn subdivided(&self) -> Self {
        let (mesh, parents) = self.mesh.subdivide();
        let values = parents
            .iter()
            .map(|&(a, b)| 0.5 * (self.values[a] + self.values[b]))
            .collect();
        let areas = self.areas.iter().flat_map(|&a| [a / 4.0; 4]).collect();
        ScalarField::new(mesh, values, Some(areas)).expect("subdivision of a valid sphere")
    }

    /// Values of the field at a point given by barycentric coordinates in
    /// triangle `t`.
    pub fn eval_in_triangle(&self, t: usize, bary: [f64; 3]) -> f64 {
        let tri = self.mesh.triangles[t];
        (0..3).map(|k| bary[k] * self.values[tri[k]]).sum()
    }
}
