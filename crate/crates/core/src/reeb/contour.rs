//! Augmented contour tree of a PL field: join and split trees of the
//! 1-skeleton, merged leaf by leaf.

use std::collections::VecDeque;

use crate::mesh::{ScalarField, UnionFind};

/// Contour tree on all mesh vertices. `up[v]` and `down[v]` list the tree
/// neighbours above and below `v` in the perturbed order.
#[derive(Debug, Clone)]
pub(crate) struct AugmentedTree {
    pub up: Vec<Vec<usize>>,
    pub down: Vec<Vec<usize>>,
}

/// Join tree (`ascending = false`: superlevel components merging while
/// sweeping down) or split tree (`ascending = true`). Returns, for each
/// vertex, its parent on the far side of the sweep and its children.
fn sweep_tree(field: &ScalarField, ascending: bool) -> (Vec<Option<usize>>, Vec<Vec<usize>>) {
    let n = field.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| field.rank(v));
    if !ascending {
        order.reverse();
    }
    let before = |u: usize, v: usize| {
        if ascending {
            field.rank(u) < field.rank(v)
        } else {
            field.rank(u) > field.rank(v)
        }
    };
    let mut uf = UnionFind::new(n);
    // Most recently swept vertex of each component, keyed by root.
    let mut head: Vec<usize> = (0..n).collect();
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    for &v in &order {
        for &u in &field.topology().neighbors[v] {
            if !before(u, v) {
                continue;
            }
            let (ru, rv) = (uf.find(u), uf.find(v));
            if ru == rv {
                continue;
            }
            let h = head[ru];
            parent[h] = Some(v);
            children[v].push(h);
            let root = uf.union(ru, rv);
            head[root] = v;
        }
    }
    (parent, children)
}

fn replace(list: &mut [usize], old: usize, new: usize) {
    if let Some(x) = list.iter_mut().find(|x| **x == old) {
        *x = new;
    }
}

fn remove(list: &mut Vec<usize>, old: usize) {
    if let Some(i) = list.iter().position(|&x| x == old) {
        list.swap_remove(i);
    }
}

pub(crate) fn contour_tree(field: &ScalarField) -> Result<AugmentedTree, String> {
    let n = field.vertex_count();
    // Join tree: `jt_down[v]` is the vertex below where v's superlevel
    // component joins, `jt_up[v]` the components arriving at v.
    let (mut jt_down, mut jt_up) = sweep_tree(field, false);
    let (mut st_up, mut st_down) = sweep_tree(field, true);

    let mut up = vec![Vec::new(); n];
    let mut down = vec![Vec::new(); n];
    let mut removed = vec![false; n];
    let is_leaf = |v: usize, jt_up: &[Vec<usize>], st_down: &[Vec<usize>]| {
        jt_up[v].len() + st_down[v].len() == 1
    };
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| is_leaf(v, &jt_up, &st_down)).collect();
    let mut remaining = n;
    while remaining > 1 {
        let Some(v) = queue.pop_front() else {
            return Err(format!(
                "contour tree merge stalled with {remaining} vertices left"
            ));
        };
        if removed[v] || !is_leaf(v, &jt_up, &st_down) {
            continue;
        }
        let touched: [Option<usize>; 3];
        if jt_up[v].is_empty() {
            // Upper leaf: v hangs above its join-tree parent.
            let w = jt_down[v].ok_or("upper leaf without a join parent")?;
            down[v].push(w);
            up[w].push(v);
            remove(&mut jt_up[w], v);
            let c = st_down[v][0];
            let p = st_up[v];
            st_up[c] = p;
            if let Some(p) = p {
                replace(&mut st_down[p], v, c);
            }
            touched = [Some(w), Some(c), p];
        } else {
            // Lower leaf: v hangs below its split-tree parent.
            let w = st_up[v].ok_or("lower leaf without a split parent")?;
            up[v].push(w);
            down[w].push(v);
            remove(&mut st_down[w], v);
            let c = jt_up[v][0];
            let p = jt_down[v];
            jt_down[c] = p;
            if let Some(p) = p {
                replace(&mut jt_up[p], v, c);
            }
            touched = [Some(w), Some(c), p];
        }
        removed[v] = true;
        remaining -= 1;
        for u in touched.into_iter().flatten() {
            if !removed[u] && is_leaf(u, &jt_up, &st_down) {
                queue.push_back(u);
            }
        }
    }
    let edges: usize = up.iter().map(Vec::len).sum();
    if edges + 1 != n {
        return Err(format!("contour tree has {edges} edges for {n} vertices"));
    }
    Ok(AugmentedTree { up, down })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{octahedron, FixtureSpec};

    #[test]
    fn height_field_is_a_path() {
        let field = FixtureSpec::Height.field(2);
        let ct = contour_tree(&field).unwrap();
        for v in 0..field.vertex_count() {
            assert!(ct.up[v].len() <= 1 && ct.down[v].len() <= 1);
        }
    }

    #[test]
    fn saddle_octahedron() {
        let field =
            ScalarField::new(octahedron(), vec![1.0, -1.0, 0.0, 1.0, -1.0, 0.1], None).unwrap();
        let ct = contour_tree(&field).unwrap();
        let degree = |v: usize| ct.up[v].len() + ct.down[v].len();
        // Two minima, two maxima, two saddles of degree 3.
        let leaves = (0..6).filter(|&v| degree(v) == 1).count();
        let branching = (0..6).filter(|&v| degree(v) == 3).count();
        assert_eq!((leaves, branching), (4, 2));
    }
}
