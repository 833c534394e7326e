use rustworkx_core::petgraph::graph::UnGraph;
use rustworkx_core::planar::is_planar;

use super::{build_ctree_labels, CanonicalOrder, PlaneGraph};
use crate::error::{Error, Result};

/// A triangulated disk grown from the edge `v_1 v_2` by attaching each new
/// vertex above a subpath of its upper boundary.
#[derive(Debug, Clone)]
pub(super) struct Disk {
    pub rotations: Vec<Vec<usize>>,
    /// Upper boundary from `v_1` to `v_2`.
    pub path: Vec<usize>,
    pub order: Vec<usize>,
}

impl Disk {
    pub fn new(n: usize, v1: usize, v2: usize) -> Self {
        let mut rotations = vec![Vec::new(); n];
        rotations[v1].push(v2);
        rotations[v2].push(v1);
        Disk { rotations, path: vec![v1, v2], order: vec![v1, v2] }
    }

    /// Joins `u` to `path[l..=r]`, `l < r`, burying the vertices strictly
    /// between.
    pub fn attach(&mut self, u: usize, l: usize, r: usize) {
        debug_assert!(l < r && r < self.path.len());
        let path = &self.path;
        self.rotations[u] = path[l..=r].iter().rev().copied().collect();
        let insert_before = |rot: &mut Vec<usize>, anchor: usize| {
            let i = rot.iter().position(|&x| x == anchor).unwrap();
            rot.insert(i, u);
        };
        let insert_after = |rot: &mut Vec<usize>, anchor: usize| {
            let i = rot.iter().position(|&x| x == anchor).unwrap();
            rot.insert(i + 1, u);
        };
        insert_before(&mut self.rotations[path[l]], path[l + 1]);
        for i in l + 1..=r {
            insert_after(&mut self.rotations[path[i]], path[i - 1]);
        }
        self.path.splice(l + 1..r, [u]);
        self.order.push(u);
    }

    /// The finished disk as a plane graph; the last vertex must have been
    /// attached along the whole path.
    pub fn into_graph(self) -> PlaneGraph {
        let (v1, v2) = (self.order[0], self.order[1]);
        let vn = *self.order.last().unwrap();
        PlaneGraph { n: self.rotations.len(), rotations: self.rotations, outer_face: vec![v1, v2, vn] }
    }
}

/// Extends a connected plane graph to a maximal one together with a
/// canonical order whose tree edges not at `v_1` are all edges of `g`.
///
/// The disk grows from the base edge `0 w`, `w` the smallest neighbour of
/// 0. A vertex with a neighbour in the disk other than `v_2` joins every
/// boundary vertex between its extreme disk neighbours, or its single
/// neighbour and the next vertex to the right. When only `v_2` has outside
/// neighbours the new vertex joins the whole boundary, as does the last
/// vertex. A vertex may join only if it buries no boundary vertex that
/// still has neighbours outside, and only if the vertices still outside can
/// then be drawn above the boundary: the boundary cycle, a new vertex joined
/// to all of it and the remaining input edges must form a planar graph.
/// Candidates are tried with the rightmost neighbour other than `v_2` as far
/// right as possible, then the leftmost, then the smaller id; if a choice
/// leaves no vertex able to join, the search backs up and tries the next.
pub fn triangulate(g: &PlaneGraph) -> Result<(PlaneGraph, CanonicalOrder)> {
    g.validate()?;
    let n = g.n;
    if n < 3 {
        return Err(Error::OutOfRange(format!("triangulate needs n >= 3, got {n}")));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let v1 = 0;
    let v2 = *g.rotations[v1].iter().min().unwrap();
    let mut in_disk = vec![false; n];
    in_disk[v1] = true;
    in_disk[v2] = true;
    let mut budget = 200_000usize;
    let disk = grow(g, Disk::new(n, v1, v2), &mut in_disk, &mut budget)?
        .ok_or_else(|| Error::Internal("no order of attachments keeps every input edge".into()))?;
    let order = disk.order.clone();
    let full = disk.into_graph();
    for (a, b) in g.edges() {
        if !full.has_edge(a, b) {
            return Err(Error::Internal(format!("input edge {a}-{b} lost during triangulation")));
        }
    }
    let co = build_ctree_labels(&full, &order)?;
    Ok((full, co))
}

/// Attachments `(u, l, r)` allowed next, in preference order.
fn choices(g: &PlaneGraph, disk: &Disk, in_disk: &[bool]) -> Vec<(usize, usize, usize)> {
    let n = g.n;
    let mut on_path = vec![usize::MAX; n];
    for (i, &v) in disk.path.iter().enumerate() {
        on_path[v] = i;
    }
    let last = disk.path.len() - 1;
    let outside = |v: usize| g.rotations[v].iter().filter(|&&w| !in_disk[w]).count();
    let mut case1 = Vec::new();
    let mut only_v2 = Vec::new();
    for u in (0..n).filter(|&u| !in_disk[u]) {
        let mut pos = Vec::new();
        for &w in g.rotations[u].iter().filter(|&&w| in_disk[w]) {
            pos.push(on_path[w]);
        }
        if pos.is_empty() || pos.contains(&usize::MAX) {
            continue;
        }
        pos.sort_unstable();
        if pos == [last] {
            only_v2.push(u);
            continue;
        }
        let right = *pos.iter().rev().find(|&&p| p != last).unwrap();
        let (l, r) = if pos.len() == 1 { (pos[0], pos[0] + 1) } else { (pos[0], pos[pos.len() - 1]) };
        let buries_live = (l + 1..r).any(|i| {
            let w = disk.path[i];
            outside(w) > usize::from(g.has_edge(w, u))
        });
        if !buries_live {
            case1.push(((right, l, std::cmp::Reverse(u)), u, l, r));
        }
    }
    if !case1.is_empty() {
        case1.sort_by_key(|c| std::cmp::Reverse(c.0));
        return case1.into_iter().map(|(_, u, l, r)| (u, l, r)).collect();
    }
    if disk.path[1..last].iter().any(|&w| outside(w) > 0) {
        return Vec::new();
    }
    only_v2.sort_unstable();
    only_v2.into_iter().map(|u| (u, 0, last)).collect()
}

fn grow(g: &PlaneGraph, disk: Disk, in_disk: &mut [bool], budget: &mut usize) -> Result<Option<Disk>> {
    if disk.order.len() == g.n {
        return Ok(Some(disk));
    }
    let is_last = disk.order.len() == g.n - 1;
    for (u, l, r) in choices(g, &disk, in_disk) {
        if *budget == 0 {
            return Err(Error::Internal("triangulation search exceeded its step budget".into()));
        }
        *budget -= 1;
        let mut next = disk.clone();
        if is_last {
            let last = next.path.len() - 1;
            next.attach(u, 0, last);
        } else {
            next.attach(u, l, r);
        }
        in_disk[u] = true;
        if !is_last && !extendable(g, &next, in_disk) {
            in_disk[u] = false;
            continue;
        }
        let found = grow(g, next, in_disk, budget)?;
        in_disk[u] = false;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// The outside part fits above the boundary path.
fn extendable(g: &PlaneGraph, disk: &Disk, in_disk: &[bool]) -> bool {
    let n = g.n;
    let mut on_path = vec![false; n];
    for &v in &disk.path {
        on_path[v] = true;
    }
    let apex = n as u32;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let path = &disk.path;
    for w in path.windows(2) {
        edges.push((w[0] as u32, w[1] as u32));
    }
    if path.len() > 2 {
        edges.push((path[0] as u32, path[path.len() - 1] as u32));
    }
    edges.extend(path.iter().map(|&v| (apex, v as u32)));
    for (a, b) in g.edges() {
        if in_disk[a] && in_disk[b] {
            continue;
        }
        for v in [a, b] {
            if in_disk[v] && !on_path[v] {
                return false;
            }
        }
        edges.push((a as u32, b as u32));
    }
    let mut h = UnGraph::<(), ()>::with_capacity(n + 1, edges.len());
    for _ in 0..=n {
        h.add_node(());
    }
    h.extend_with_edges(&edges);
    is_planar(&h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::{random_connected_plane_graph, validate_canonical_order};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check(g: &PlaneGraph) -> (PlaneGraph, CanonicalOrder) {
        let (full, co) = triangulate(g).unwrap();
        full.validate().unwrap();
        assert!(full.is_maximal());
        validate_canonical_order(&full, &co.order).unwrap();
        let v1 = co.order[0];
        for v in 0..g.n {
            if let Some(p) = co.parent[v] {
                assert!(p == v1 || g.has_edge(p, v), "tree edge {p}-{v} not in the input");
            }
        }
        (full, co)
    }

    #[test]
    fn triangle_is_kept() {
        let (full, co) = check(&PlaneGraph::triangle());
        assert_eq!(co.order, vec![0, 1, 2]);
        assert_eq!(full.edge_count(), 3);
    }

    #[test]
    fn path_becomes_k4() {
        let (full, _) = check(&PlaneGraph::path(4));
        assert_eq!(full.edge_count(), 6);
    }

    #[test]
    fn binary_tree() {
        check(&PlaneGraph::complete_binary_tree(3));
    }

    #[test]
    fn random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..300 {
            let n = rng.gen_range(3..30);
            check(&random_connected_plane_graph(n, &mut rng));
        }
    }

    #[test]
    fn rejects_disconnected() {
        let g = PlaneGraph { n: 4, rotations: vec![vec![1], vec![0], vec![3], vec![2]], outer_face: vec![] };
        assert_eq!(triangulate(&g).unwrap_err(), Error::Disconnected);
    }
}
