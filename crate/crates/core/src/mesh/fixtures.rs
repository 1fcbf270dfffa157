//! Reference meshes and fields used by tests, benches and the CLI.

use std::collections::HashMap;
use std::f64::consts::PI;

use super::{dot, norm, ScalarField, TriMesh};

/// Rotation (rows) applied to the icosphere so that no two vertices share a
/// height: angle 0.7 about the axis (1, 2, 3)/√14.
pub fn generic_rotation() -> [[f64; 3]; 3] {
    let [x, y, z] = unit([1.0, 2.0, 3.0]);
    let (s, c) = 0.7f64.sin_cos();
    let t = 1.0 - c;
    [
        [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
        [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
        [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
    ]
}

pub fn octahedron() -> TriMesh {
    let positions = vec![
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [-1.0, 0.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, -1.0],
    ];
    let triangles = vec![
        [0, 1, 2],
        [1, 3, 2],
        [3, 4, 2],
        [4, 0, 2],
        [1, 0, 5],
        [3, 1, 5],
        [4, 3, 5],
        [0, 4, 5],
    ];
    TriMesh::new(positions, triangles)
}

/// Icosahedron subdivided `level` times with vertices pushed to the unit
/// sphere: `20·4^level` triangles.
pub fn icosphere(level: u32) -> TriMesh {
    let g = (1.0 + 5f64.sqrt()) / 2.0;
    let mut positions: Vec<[f64; 3]> = [
        [-1.0, g, 0.0],
        [1.0, g, 0.0],
        [-1.0, -g, 0.0],
        [1.0, -g, 0.0],
        [0.0, -1.0, g],
        [0.0, 1.0, g],
        [0.0, -1.0, -g],
        [0.0, 1.0, -g],
        [g, 0.0, -1.0],
        [g, 0.0, 1.0],
        [-g, 0.0, -1.0],
        [-g, 0.0, 1.0],
    ]
    .into_iter()
    .map(unit)
    .collect();
    let mut triangles: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..level {
        let mut cache: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, positions: &mut Vec<[f64; 3]>| {
            *cache.entry((a.min(b), a.max(b))).or_insert_with(|| {
                let (pa, pb) = (positions[a], positions[b]);
                positions.push(unit([pa[0] + pb[0], pa[1] + pb[1], pa[2] + pb[2]]));
                positions.len() - 1
            })
        };
        let mut next = Vec::with_capacity(4 * triangles.len());
        for &[a, b, c] in &triangles {
            let ab = mid(a, b, &mut positions);
            let bc = mid(b, c, &mut positions);
            let ca = mid(c, a, &mut positions);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        triangles = next;
    }
    TriMesh::new(positions, triangles)
}

/// [`icosphere`] rotated by [`generic_rotation`].
pub fn round_sphere(level: u32) -> TriMesh {
    let mut mesh = icosphere(level);
    let r = generic_rotation();
    for p in &mut mesh.positions {
        *p = r.map(|row| dot(row, *p));
    }
    mesh
}

/// Triangulated torus with `n × m` grid cells (Euler characteristic 0).
pub fn torus(n: usize, m: usize) -> TriMesh {
    let (big, small) = (2.0, 1.0);
    let mut positions = Vec::with_capacity(n * m);
    for i in 0..n {
        let u = 2.0 * PI * i as f64 / n as f64;
        for j in 0..m {
            let v = 2.0 * PI * j as f64 / m as f64;
            let r = big + small * v.cos();
            positions.push([r * u.cos(), r * u.sin(), small * v.sin()]);
        }
    }
    let idx = |i: usize, j: usize| (i % n) * m + (j % m);
    let mut triangles = Vec::with_capacity(2 * n * m);
    for i in 0..n {
        for j in 0..m {
            triangles.push([idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)]);
            triangles.push([idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)]);
        }
    }
    TriMesh::new(positions, triangles)
}

fn unit(p: [f64; 3]) -> [f64; 3] {
    let n = norm(p);
    [p[0] / n, p[1] / n, p[2] / n]
}

/// Unit vector with polar angle `theta` from the north pole and azimuth `phi`.
pub fn direction(theta: f64, phi: f64) -> [f64; 3] {
    [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ]
}

/// `F(p) = height·p₃ + Σ aᵢ·exp(κᵢ(p·cᵢ − 1))` on the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct BumpField {
    pub height: f64,
    /// `(center, amplitude, kappa)`.
    pub bumps: Vec<([f64; 3], f64, f64)>,
}

impl BumpField {
    pub fn eval(&self, p: [f64; 3]) -> f64 {
        self.height * p[2]
            + self
                .bumps
                .iter()
                .map(|&(c, a, k)| a * (k * (dot(p, c) - 1.0)).exp())
                .sum::<f64>()
    }

    /// `p₃/2`.
    pub fn height() -> Self {
        Self {
            height: 0.5,
            bumps: Vec::new(),
        }
    }

    /// Two maxima of different heights, one saddle, one minimum.
    pub fn two_bump() -> Self {
        let t = 50f64.to_radians();
        Self {
            height: 0.0,
            bumps: vec![
                (direction(t, 0.0), 1.0, 6.0),
                (direction(-t, 0.0), 0.8, 6.0),
            ],
        }
    }

    /// Three maxima, two saddles, one minimum: bumps along one great circle.
    pub fn three_bump() -> Self {
        let t = 75f64.to_radians();
        Self {
            height: 0.05,
            bumps: vec![
                (direction(-t, 0.0), 1.0, 7.0),
                (direction(0.0, 0.0), 0.8, 7.0),
                (direction(t, 0.0), 0.6, 7.0),
            ],
        }
    }

    /// `p₃/2` plus a small bump on the northern hemisphere; still has exactly
    /// one maximum and one minimum.
    pub fn perturbed_height() -> Self {
        Self {
            height: 0.5,
            bumps: vec![(direction(30f64.to_radians(), 1.0), 0.05, 6.0)],
        }
    }

    /// Samples the field at the vertices of `mesh`.
    pub fn on(&self, mesh: TriMesh) -> ScalarField {
        let values = mesh.positions.iter().map(|&p| self.eval(p)).collect();
        ScalarField::new(mesh, values, None).expect("fixture meshes are spheres")
    }
}

/// Named fixture fields on [`round_sphere`] meshes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureSpec {
    Height,
    TwoBump,
    ThreeBump,
    PerturbedHeight,
}

impl FixtureSpec {
    pub const ALL: [FixtureSpec; 4] = [
        FixtureSpec::Height,
        FixtureSpec::TwoBump,
        FixtureSpec::ThreeBump,
        FixtureSpec::PerturbedHeight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FixtureSpec::Height => "height",
            FixtureSpec::TwoBump => "two-bump",
            FixtureSpec::ThreeBump => "three-bump",
            FixtureSpec::PerturbedHeight => "perturbed-height",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn function(self) -> BumpField {
        match self {
            FixtureSpec::Height => BumpField::height(),
            FixtureSpec::TwoBump => BumpField::two_bump(),
            FixtureSpec::ThreeBump => BumpField::three_bump(),
            FixtureSpec::PerturbedHeight => BumpField::perturbed_height(),
        }
    }

    /// The field on `round_sphere(level)`.
    pub fn field(self, level: u32) -> ScalarField {
        self.function().on(round_sphere(level))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn icosphere_counts() {
        for level in 0..4 {
            let m = icosphere(level);
            assert_eq!(m.triangles.len(), 20 * 4usize.pow(level));
            assert_eq!(m.vertex_count(), 10 * 4usize.pow(level) + 2);
        }
    }

    #[test]
    fn rotation_is_orthogonal() {
        let r = generic_rotation();
        for i in 0..3 {
            for j in 0..3 {
                let d = dot(r[i], r[j]);
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((d - expect).abs() < 1e-15, "{i} {j} {d}");
            }
        }
    }

    #[test]
    fn rotated_heights_are_distinct() {
        let field = FixtureSpec::Height.field(3);
        assert_eq!(field.tied_vertices(), 0);
    }
}
