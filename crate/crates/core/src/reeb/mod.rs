//! Measured Reeb trees of PL functions on triangulated spheres.
//!
//! The contour tree is built on the 1-skeleton and reduced to its critical
//! nodes. Each triangle `a < b < c` contributes a tent-shaped level density:
//! the part between `F(a)` and `F(b)` lives on the tree path from `a` to `b`,
//! the part between `F(b)` and `F(c)` on the path from `b` to `c`.

mod area;
mod contour;
mod critical;

use std::collections::VecDeque;

use serde::Serialize;

use crate::mesh::{MeshError, ScalarField, UnionFind};
use crate::profile::Profile1D;

pub use area::{AreaProfile, DensityPiece};
pub use critical::{classify_vertex, critical_points, CriticalKind};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReebError {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("internal topology error: {0}")]
    InternalTopology(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    Minimum,
    Maximum,
    Saddle,
}

impl VertexKind {
    pub fn is_extremum(self) -> bool {
        self != VertexKind::Saddle
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeVertex {
    pub kind: VertexKind,
    pub level: f64,
    /// A mesh vertex realising this node, when the tree comes from a field.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mesh_vertex: Option<usize>,
}

/// Edge from the lower vertex `lo` to the upper vertex `hi`; offsets along it
/// are measured from `lo`.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeEdge {
    pub lo: usize,
    pub hi: usize,
    pub profile: AreaProfile,
}

impl TreeEdge {
    pub fn measure(&self) -> f64 {
        self.profile.total()
    }

    pub fn other(&self, v: usize) -> usize {
        if v == self.lo {
            self.hi
        } else {
            self.lo
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Vertex(usize),
    /// Interior point at cumulative measure `offset` from the edge's low end.
    Edge {
        edge: usize,
        offset: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreePoint {
    pub location: Location,
    pub level: f64,
}

/// A finite tree whose edges carry atomless measures summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredTree {
    vertices: Vec<TreeVertex>,
    edges: Vec<TreeEdge>,
    incident: Vec<Vec<usize>>,
    /// Zero-measure edges collapsed during construction.
    contracted_edges: usize,
    tied_vertices: usize,
}

impl MeasuredTree {
    /// Checks that the edges form a tree with total measure 1 (within 1e-9).
    pub fn new(vertices: Vec<TreeVertex>, edges: Vec<TreeEdge>) -> Result<Self, ReebError> {
        let n = vertices.len();
        if n == 0 {
            return Err(ReebError::InvalidTree("no vertices".into()));
        }
        if edges.len() + 1 != n {
            return Err(ReebError::InvalidTree(format!(
                "{} edges for {n} vertices",
                edges.len()
            )));
        }
        let mut incident = vec![Vec::new(); n];
        let mut uf = UnionFind::new(n);
        for (i, e) in edges.iter().enumerate() {
            if e.lo >= n || e.hi >= n || e.lo == e.hi {
                return Err(ReebError::InvalidTree(format!(
                    "edge {i} has bad endpoints"
                )));
            }
            if uf.find(e.lo) == uf.find(e.hi) {
                return Err(ReebError::InvalidTree(format!("edge {i} closes a cycle")));
            }
            uf.union(e.lo, e.hi);
            incident[e.lo].push(i);
            incident[e.hi].push(i);
        }
        let total: f64 = edges.iter().map(TreeEdge::measure).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(ReebError::InvalidTree(format!(
                "total measure {total} is not 1"
            )));
        }
        Ok(Self {
            vertices,
            edges,
            incident,
            contracted_edges: 0,
            tied_vertices: 0,
        })
    }

    /// Tree with uniform edge profiles. `levels[v]` is the level of vertex `v`
    /// and each edge runs from its lower to its higher endpoint.
    pub fn with_uniform_edges(
        levels: &[f64],
        edges: &[(usize, usize, f64)],
    ) -> Result<Self, ReebError> {
        let mut degree = vec![0; levels.len()];
        let mut tree_edges = Vec::with_capacity(edges.len());
        for &(a, b, m) in edges {
            let (lo, hi) = if levels[a] <= levels[b] {
                (a, b)
            } else {
                (b, a)
            };
            if levels[lo] == levels[hi] || m <= 0.0 {
                return Err(ReebError::InvalidTree(
                    "edges need distinct end levels and positive measure".into(),
                ));
            }
            degree[a] += 1;
            degree[b] += 1;
            tree_edges.push(TreeEdge {
                lo,
                hi,
                profile: AreaProfile::uniform(levels[lo], levels[hi], m),
            });
        }
        let vertices = levels
            .iter()
            .enumerate()
            .map(|(v, &level)| TreeVertex {
                kind: kind_from_edges(v, &tree_edges, degree[v]),
                level,
                mesh_vertex: None,
            })
            .collect();
        Self::new(vertices, tree_edges)
    }

    pub fn vertices(&self) -> &[TreeVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges incident to `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn contracted_edges(&self) -> usize {
        self.contracted_edges
    }

    /// Mesh vertices sharing their value with another vertex.
    pub fn tied_vertices(&self) -> usize {
        self.tied_vertices
    }

    pub fn total_measure(&self) -> f64 {
        self.edges.iter().map(TreeEdge::measure).sum()
    }

    /// The level of the component represented by `point`.
    pub fn push_forward_value(&self, location: Location) -> f64 {
        match location {
            Location::Vertex(v) => self.vertices[v].level,
            Location::Edge { edge, offset } => self.edges[edge].profile.level_at(offset),
        }
    }

    pub fn point(&self, location: Location) -> TreePoint {
        TreePoint {
            location,
            level: self.push_forward_value(location),
        }
    }

    /// `∫_T w(level(x)) dϱ(x)`.
    pub fn integral(&self, w: &Profile1D) -> f64 {
        self.edges.iter().map(|e| e.profile.integrate(w)).sum()
    }

    /// Measure of the component of `T ∖ {edge}` containing `side`, where `side`
    /// is an endpoint of `edge`.
    pub fn side_measure(&self, edge: usize, side: usize) -> f64 {
        let mut total = 0.0;
        let mut stack = vec![(side, edge)];
        while let Some((v, from)) = stack.pop() {
            for &e in &self.incident[v] {
                if e != from {
                    total += self.edges[e].measure();
                    stack.push((self.edges[e].other(v), e));
                }
            }
        }
        total
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(id, v)| VertexJson {
                    id,
                    kind: v.kind,
                    level: v.level,
                    degree: self.degree(id),
                    mesh_vertex: v.mesh_vertex,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(id, e)| EdgeJson {
                    id,
                    lo: e.lo,
                    hi: e.hi,
                    measure: e.measure(),
                    level_range: [e.profile.lo_level(), e.profile.hi_level()],
                })
                .collect(),
            total_measure: self.total_measure(),
            contracted_edges: self.contracted_edges,
            tied_vertices: self.tied_vertices,
        }
    }

    /// CSV rows `edge,level,cumulative` at every profile knot.
    pub fn profile_csv(&self) -> String {
        let mut out = String::from("edge,level,cumulative\n");
        for (i, e) in self.edges.iter().enumerate() {
            for (x, c) in e
                .profile
                .knots()
                .iter()
                .zip(e.profile.cumulative_at_knots())
            {
                out.push_str(&format!("{i},{x:.12e},{c:.12e}\n"));
            }
        }
        out
    }
}

fn kind_from_edges(v: usize, edges: &[TreeEdge], degree: usize) -> VertexKind {
    if degree == 1 {
        if edges.iter().any(|e| e.lo == v) {
            VertexKind::Minimum
        } else {
            VertexKind::Maximum
        }
    } else {
        VertexKind::Saddle
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexJson {
    pub id: usize,
    pub kind: VertexKind,
    pub level: f64,
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mesh_vertex: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeJson {
    pub id: usize,
    pub lo: usize,
    pub hi: usize,
    pub measure: f64,
    pub level_range: [f64; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct TreeJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
    pub total_measure: f64,
    pub contracted_edges: usize,
    pub tied_vertices: usize,
}

/// Position of a mesh vertex in the reduced contour tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Place {
    Node(usize),
    Arc(usize),
}

struct Arc {
    lo: usize,
    hi: usize,
}

/// Contour tree reduced to critical nodes, rooted for path queries.
struct Reduced {
    node_vertex: Vec<usize>,
    arcs: Vec<Arc>,
    place: Vec<Place>,
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
}

impl Reduced {
    fn new(ct: &contour::AugmentedTree) -> Self {
        let n = ct.up.len();
        let regular = |v: usize| ct.up[v].len() == 1 && ct.down[v].len() == 1;
        let mut node_of = vec![usize::MAX; n];
        let mut node_vertex = Vec::new();
        for v in 0..n {
            if !regular(v) {
                node_of[v] = node_vertex.len();
                node_vertex.push(v);
            }
        }
        let mut place: Vec<Place> = (0..n)
            .map(|v| {
                if regular(v) {
                    Place::Arc(usize::MAX)
                } else {
                    Place::Node(node_of[v])
                }
            })
            .collect();
        let mut arcs = Vec::new();
        let mut adjacency = vec![Vec::new(); node_vertex.len()];
        for (a, &va) in node_vertex.iter().enumerate() {
            for &start in &ct.up[va] {
                let id = arcs.len();
                let mut cur = start;
                while regular(cur) {
                    place[cur] = Place::Arc(id);
                    cur = ct.up[cur][0];
                }
                let b = node_of[cur];
                arcs.push(Arc { lo: a, hi: b });
                adjacency[a].push((b, id));
                adjacency[b].push((a, id));
            }
        }
        let mut parent = vec![None; node_vertex.len()];
        let mut depth = vec![0; node_vertex.len()];
        let mut seen = vec![false; node_vertex.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(a) = queue.pop_front() {
            for &(b, arc) in &adjacency[a] {
                if !seen[b] {
                    seen[b] = true;
                    parent[b] = Some((a, arc));
                    depth[b] = depth[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        Self {
            node_vertex,
            arcs,
            place,
            parent,
            depth,
        }
    }

    /// Arcs on the tree path between nodes `a` and `b`.
    fn node_path(&self, mut a: usize, mut b: usize, out: &mut Vec<usize>) {
        while self.depth[a] > self.depth[b] {
            let (p, arc) = self.parent[a].unwrap();
            out.push(arc);
            a = p;
        }
        let mut tail = Vec::new();
        while self.depth[b] > self.depth[a] {
            let (p, arc) = self.parent[b].unwrap();
            tail.push(arc);
            b = p;
        }
        while a != b {
            let (pa, arc_a) = self.parent[a].unwrap();
            let (pb, arc_b) = self.parent[b].unwrap();
            out.push(arc_a);
            tail.push(arc_b);
            a = pa;
            b = pb;
        }
        out.extend(tail.into_iter().rev());
    }

    /// Arcs on the monotone tree path from mesh vertex `p` up to mesh vertex
    /// `q`.
    fn vertex_path(&self, p: usize, q: usize, out: &mut Vec<usize>) {
        out.clear();
        match (self.place[p], self.place[q]) {
            (Place::Arc(x), Place::Arc(y)) if x == y => out.push(x),
            (pp, qq) => {
                let from = match pp {
                    Place::Node(a) => a,
                    Place::Arc(x) => {
                        out.push(x);
                        self.arcs[x].hi
                    }
                };
                let (to, last) = match qq {
                    Place::Node(b) => (b, None),
                    Place::Arc(y) => (self.arcs[y].lo, Some(y)),
                };
                self.node_path(from, to, out);
                out.extend(last);
            }
        }
    }
}

/// Builds the measured Reeb tree of `field`.
pub fn build_reeb_tree(field: &ScalarField) -> Result<MeasuredTree, ReebError> {
    let ct = contour::contour_tree(field).map_err(ReebError::InternalTopology)?;
    let reduced = Reduced::new(&ct);
    let level = |node: usize| field.value(reduced.node_vertex[node]);

    let mut pieces: Vec<Vec<DensityPiece>> = vec![Vec::new(); reduced.arcs.len()];
    let mut path = Vec::new();
    let mut distribute =
        |p: usize, q: usize, piece: DensityPiece, pieces: &mut Vec<Vec<DensityPiece>>| {
            reduced.vertex_path(p, q, &mut path);
            if piece.lo == piece.hi {
                // Point mass of a flat triangle: all arcs on the path sit at this
                // level; give it to the first.
                if let Some(&arc) = path.first() {
                    pieces[arc].push(piece);
                }
                return;
            }
            for &arc in &path {
                let (a, b) = (reduced.arcs[arc].lo, reduced.arcs[arc].hi);
                if let Some(part) = piece.clip(level(a), level(b)) {
                    pieces[arc].push(part);
                }
            }
        };
    for (t, tri) in field.triangles().iter().enumerate() {
        let mut v = *tri;
        v.sort_by_key(|&i| field.rank(i));
        let [a, b, c] = v;
        let (fa, fb, fc) = (field.value(a), field.value(b), field.value(c));
        let area = field.areas()[t];
        if fa == fc {
            distribute(a, b, DensityPiece::atom(fa, 0.5 * area), &mut pieces);
            distribute(b, c, DensityPiece::atom(fa, 0.5 * area), &mut pieces);
            continue;
        }
        let peak = 2.0 * area / (fc - fa);
        if fb > fa {
            distribute(a, b, DensityPiece::linear(fa, fb, 0.0, peak), &mut pieces);
        }
        if fc > fb {
            distribute(b, c, DensityPiece::linear(fb, fc, peak, 0.0), &mut pieces);
        }
    }

    let profiles: Vec<AreaProfile> = reduced
        .arcs
        .iter()
        .zip(&pieces)
        .map(|(arc, p)| AreaProfile::from_pieces(level(arc.lo), level(arc.hi), p))
        .collect();

    // Collapse arcs that carry no measure.
    let node_count = reduced.node_vertex.len();
    let mut merge = UnionFind::new(node_count);
    let mut contracted = 0;
    for (arc, profile) in reduced.arcs.iter().zip(&profiles) {
        if profile.total() == 0.0 {
            merge.union(arc.lo, arc.hi);
            contracted += 1;
        }
    }
    let mut rep = vec![usize::MAX; node_count];
    let mut vertex_of_node = Vec::new();
    for a in 0..node_count {
        let r = merge.find(a);
        if rep[r] == usize::MAX {
            rep[r] = vertex_of_node.len();
            vertex_of_node.push(reduced.node_vertex[r]);
        }
    }
    let mut edges: Vec<TreeEdge> = reduced
        .arcs
        .iter()
        .zip(profiles)
        .filter(|(_, p)| p.total() > 0.0)
        .map(|(arc, profile)| TreeEdge {
            lo: rep[merge.find(arc.lo)],
            hi: rep[merge.find(arc.hi)],
            profile,
        })
        .collect();

    // Splice out vertices left with exactly one edge below and one above.
    let mut alive = vec![true; vertex_of_node.len()];
    loop {
        let mut ups = vec![Vec::new(); alive.len()];
        let mut downs = vec![Vec::new(); alive.len()];
        for (i, e) in edges.iter().enumerate() {
            ups[e.lo].push(i);
            downs[e.hi].push(i);
        }
        let Some(v) =
            (0..alive.len()).find(|&v| alive[v] && ups[v].len() == 1 && downs[v].len() == 1)
        else {
            break;
        };
        let (lower, upper) = (downs[v][0], ups[v][0]);
        let joined = TreeEdge {
            lo: edges[lower].lo,
            hi: edges[upper].hi,
            profile: edges[lower].profile.concat(&edges[upper].profile),
        };
        alive[v] = false;
        let (first, second) = (lower.min(upper), lower.max(upper));
        edges.remove(second);
        edges[first] = joined;
    }
    let mut new_id = vec![usize::MAX; alive.len()];
    let mut kept = Vec::new();
    for v in 0..alive.len() {
        if alive[v] {
            new_id[v] = kept.len();
            kept.push(vertex_of_node[v]);
        }
    }
    for e in &mut edges {
        e.lo = new_id[e.lo];
        e.hi = new_id[e.hi];
    }
    let mut degree = vec![0; kept.len()];
    for e in &edges {
        degree[e.lo] += 1;
        degree[e.hi] += 1;
    }
    let vertices = kept
        .iter()
        .enumerate()
        .map(|(v, &mv)| TreeVertex {
            kind: kind_from_edges(v, &edges, degree[v]),
            level: field.value(mv),
            mesh_vertex: Some(mv),
        })
        .collect();
    let mut tree = MeasuredTree::new(vertices, edges).map_err(|e| match e {
        ReebError::InvalidTree(msg) => ReebError::InternalTopology(msg),
        other => other,
    })?;
    tree.contracted_edges = contracted;
    tree.tied_vertices = field.tied_vertices();
    Ok(tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{octahedron, FixtureSpec};

    #[test]
    fn height_field_segment() {
        let field = FixtureSpec::Height.field(4);
        let tree = build_reeb_tree(&field).unwrap();
        assert_eq!(tree.vertex_count(), 2);
        assert_eq!(tree.edge_count(), 1);
        assert!((tree.total_measure() - 1.0).abs() < 1e-12);
        let e = &tree.edges()[0];
        // Close to Lebesgue measure on [−1/2, 1/2].
        for t in [-0.4, -0.2, 0.0, 0.2, 0.4] {
            assert!((e.profile.cumulative(t) - (t + 0.5)).abs() < 5e-3, "{t}");
        }
        assert!(tree.integral(&Profile1D::identity()).abs() < 1e-12);
        assert!((tree.integral(&Profile1D::constant(1.0)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn octahedron_with_ties() {
        let mesh = octahedron();
        let values = mesh.positions.iter().map(|p| p[2] / 2.0).collect();
        let field = ScalarField::new(mesh, values, None).unwrap();
        let tree = build_reeb_tree(&field).unwrap();
        assert_eq!((tree.vertex_count(), tree.edge_count()), (2, 1));
        let e = &tree.edges()[0];
        assert!((e.measure() - 1.0).abs() < 1e-15);
        assert!((e.profile.cumulative(0.0) - 0.5).abs() < 1e-15);
        assert_eq!(tree.push_forward_value(Location::Vertex(e.hi)), 0.5);
    }

    #[test]
    fn two_bump_is_y_shaped() {
        let field = FixtureSpec::TwoBump.field(4);
        let tree = build_reeb_tree(&field).unwrap();
        assert_eq!((tree.vertex_count(), tree.edge_count()), (4, 3));
        let saddles: Vec<_> = (0..4).filter(|&v| tree.degree(v) == 3).collect();
        assert_eq!(saddles.len(), 1);
        assert!((tree.total_measure() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn saddle_octahedron_tree() {
        let field =
            ScalarField::new(octahedron(), vec![1.0, -1.0, 0.0, 1.0, -1.0, 0.1], None).unwrap();
        let tree = build_reeb_tree(&field).unwrap();
        assert_eq!((tree.vertex_count(), tree.edge_count()), (6, 5));
        let extrema = tree
            .vertices()
            .iter()
            .filter(|v| v.kind.is_extremum())
            .count();
        assert_eq!(extrema, 4);
    }

    #[test]
    fn uniform_tree_validation() {
        assert!(MeasuredTree::with_uniform_edges(&[0.0, 1.0], &[(0, 1, 1.0)]).is_ok());
        assert!(MeasuredTree::with_uniform_edges(&[0.0, 1.0], &[(0, 1, 0.5)]).is_err());
        assert!(MeasuredTree::with_uniform_edges(&[0.0, 1.0, 2.0], &[(0, 1, 1.0)]).is_err());
        assert!(
            MeasuredTree::with_uniform_edges(&[0.0, 1.0, 2.0], &[(0, 1, 0.5), (1, 0, 0.5)])
                .is_err()
        );
    }
}
