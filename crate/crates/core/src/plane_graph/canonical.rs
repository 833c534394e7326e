use serde::{Deserialize, Serialize};

use super::PlaneGraph;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A canonical order `v_1, …, v_n` with its canonical tree. `pre` and
/// `rpost` are 1-based ranks indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalOrder {
    pub order: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    /// Children of each vertex, clockwise.
    pub children: Vec<Vec<usize>>,
    pub pre: Vec<usize>,
    pub rpost: Vec<usize>,
}

impl CanonicalOrder {
    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Vertices in preorder.
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = vec![0; self.n()];
        for (v, &p) in self.pre.iter().enumerate() {
            out[p - 1] = v;
        }
        out
    }

    pub fn is_ancestor(&self, u: usize, w: usize) -> bool {
        let mut x = self.parent[w];
        while let Some(p) = x {
            if p == u {
                return true;
            }
            x = self.parent[p];
        }
        false
    }
}

/// Reverse shelling: peel off, from the outer path, the smallest vertex other
/// than `v_1, v_2` that is not incident to a chord. `outer` is the outer
/// triangle counterclockwise, `(v_1, v_2, v_n)`.
pub fn canonical_order(g: &PlaneGraph, outer: [usize; 3]) -> Result<CanonicalOrder> {
    if !g.is_maximal() {
        return Err(Error::NotMaximal(format!("n = {}, {} edges", g.n, g.edge_count())));
    }
    let [v1, v2, vn] = outer;
    if g.find_face(&outer).is_none() {
        return Err(Error::InvalidGraph(format!("{outer:?} is not a face listed counterclockwise")));
    }
    let n = g.n;
    let mut removed = vec![false; n];
    let mut path = vec![v1, vn, v2];
    let mut peeled = Vec::with_capacity(n);
    for _ in 3..n {
        let mut on_path = vec![usize::MAX; n];
        for (i, &v) in path.iter().enumerate() {
            on_path[v] = i;
        }
        let pick = (1..path.len() - 1)
            .filter(|&i| {
                g.rotations[path[i]]
                    .iter()
                    .all(|&w| removed[w] || on_path[w] == usize::MAX || on_path[w] + 1 == i || on_path[w] == i + 1)
            })
            .min_by_key(|&i| path[i])
            .ok_or_else(|| Error::Internal("no chord-free vertex on the outer path".into()))?;
        let (pred, v, succ) = (path[pick - 1], path[pick], path[pick + 1]);
        let mut segment = Vec::new();
        let mut w = g.next_ccw(v, pred);
        while w != succ {
            if removed[w] {
                return Err(Error::Internal(format!("vertex {w} below the outer path was already removed")));
            }
            segment.push(w);
            w = g.next_ccw(v, w);
        }
        removed[v] = true;
        peeled.push(v);
        path.splice(pick..=pick, segment);
    }
    if path.len() != 3 {
        return Err(Error::Internal(format!("shelling ended with outer path {path:?}")));
    }
    let mut order = vec![v1, v2, path[1]];
    order.extend(peeled.into_iter().rev());
    build_ctree_labels(g, &order)
}

/// `C_k ∖ v_1v_2` for `k = 3..=n`, read from `v_1` to `v_2`, built by
/// splicing each vertex over its earlier neighbours. Fails when some
/// `v_k` has earlier neighbours that are not a subpath of length at least
/// two.
pub fn outer_path_history(g: &PlaneGraph, order: &[usize]) -> Result<Vec<Vec<usize>>> {
    let n = g.n;
    if order.len() != n || n < 3 {
        return Err(Error::InvalidGraph(format!("order has {} vertices, graph {n}", order.len())));
    }
    let mut index = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || index[v] != usize::MAX {
            return Err(Error::InvalidGraph(format!("order is not a permutation of the vertices: {order:?}")));
        }
        index[v] = i;
    }
    let (v1, v2, v3) = (order[0], order[1], order[2]);
    if !(g.has_edge(v1, v2) && g.has_edge(v1, v3) && g.has_edge(v2, v3)) {
        return Err(Error::InvalidGraph("v_1 v_2 v_3 is not a triangle".into()));
    }
    let mut history = vec![vec![v1, v3, v2]];
    for k in 3..n {
        let v = order[k];
        let path = history.last().unwrap();
        let earlier: Vec<usize> = g.rotations[v].iter().copied().filter(|&u| index[u] < k).collect();
        let mut pos: Vec<usize> = Vec::with_capacity(earlier.len());
        for &u in &earlier {
            match path.iter().position(|&x| x == u) {
                Some(p) => pos.push(p),
                None => {
                    return Err(Error::InvalidGraph(format!(
                        "v_{} = {v} has earlier neighbour {u} off the outer path",
                        k + 1
                    )))
                }
            }
        }
        pos.sort_unstable();
        if pos.len() < 2 || pos[pos.len() - 1] - pos[0] + 1 != pos.len() {
            return Err(Error::InvalidGraph(format!(
                "earlier neighbours of v_{} = {v} are not a subpath of length >= 2",
                k + 1
            )));
        }
        let (l, r) = (pos[0], pos[pos.len() - 1]);
        let mut next = path[..=l].to_vec();
        next.push(v);
        next.extend_from_slice(&path[r..]);
        history.push(next);
    }
    Ok(history)
}

/// Parents, clockwise children, `pre` and `rpost`. The children of `v_1`
/// start after `v_2` clockwise, so the first is `v_n` and the last `v_2`;
/// those of any other vertex start after its parent.
pub fn build_ctree_labels(g: &PlaneGraph, order: &[usize]) -> Result<CanonicalOrder> {
    let history = outer_path_history(g, order)?;
    let n = g.n;
    let (v1, v2) = (order[0], order[1]);
    let mut parent = vec![None; n];
    parent[v2] = Some(v1);
    parent[order[2]] = Some(v1);
    for k in 3..n {
        let v = order[k];
        let path = &history[k - 3];
        let leftmost = path
            .iter()
            .copied()
            .find(|&u| g.has_edge(u, v))
            .ok_or_else(|| Error::Internal(format!("v_{} has no neighbour on C_{k}", k + 1)))?;
        parent[v] = Some(leftmost);
    }
    let mut children = vec![Vec::new(); n];
    for v in 0..n {
        let rot = &g.rotations[v];
        if rot.is_empty() {
            continue;
        }
        let start = if v == v1 { v2 } else { parent[v].unwrap() };
        let i = rot.iter().position(|&x| x == start).unwrap();
        children[v] = (1..=rot.len())
            .map(|d| rot[(i + d) % rot.len()])
            .filter(|&c| parent[c] == Some(v))
            .collect();
    }
    let mut pre = vec![0; n];
    let mut post = Vec::with_capacity(n);
    let mut counter = 0;
    // Iterative DFS: (vertex, next child index).
    let mut stack = vec![(v1, 0usize)];
    counter += 1;
    pre[v1] = counter;
    while let Some(top) = stack.last_mut() {
        let v = top.0;
        if let Some(&c) = children[v].get(top.1) {
            top.1 += 1;
            counter += 1;
            pre[c] = counter;
            stack.push((c, 0));
        } else {
            post.push(v);
            stack.pop();
        }
    }
    if counter != n {
        return Err(Error::Internal(format!("canonical tree reaches {counter} of {n} vertices")));
    }
    let mut rpost = vec![0; n];
    for (i, &v) in post.iter().rev().enumerate() {
        rpost[v] = i + 1;
    }
    Ok(CanonicalOrder { order: order.to_vec(), parent, children, pre, rpost })
}

/// Checks the three defining conditions from the embedding alone: the outer
/// triangle, each `G_k` two-connected with a simple outer cycle through
/// `v_1 v_2`, and each later vertex attached along a subpath of length at
/// least two of `C_{k−1} ∖ v_1v_2`.
pub fn validate_canonical_order(g: &PlaneGraph, order: &[usize]) -> Result<()> {
    let n = g.n;
    let bad = |m: String| Err(Error::InvalidGraph(m));
    if !g.is_maximal() {
        return Err(Error::NotMaximal("validator needs a maximal plane graph".into()));
    }
    let mut index = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || index[v] != usize::MAX {
            return bad(format!("not a vertex ordering: {order:?}"));
        }
        index[v] = i;
    }
    if order.len() != n {
        return bad(format!("order lists {} of {n} vertices", order.len()));
    }
    let (v1, v2, vn) = (order[0], order[1], order[n - 1]);
    if g.find_face(&[v1, v2, vn]).is_none() {
        return bad("v_1 v_2 v_n is not the outer triangle in counterclockwise order".into());
    }
    let mut prev_cycle: Vec<usize> = Vec::new();
    for k in 3..=n {
        let inside = |v: usize| index[v] < k;
        let sub = PlaneGraph {
            n,
            rotations: (0..n)
                .map(|v| if inside(v) { g.rotations[v].iter().copied().filter(|&u| inside(u)).collect() } else { Vec::new() })
                .collect(),
            outer_face: Vec::new(),
        };
        if !two_connected(&sub, &order[..k]) {
            return bad(format!("G_{k} is not 2-connected"));
        }
        let face = sub.face_of(v2, v1);
        let mut seen = vec![false; n];
        if face.iter().any(|&v| std::mem::replace(&mut seen[v], true)) {
            return bad(format!("outer boundary of G_{k} is not a cycle"));
        }
        // Boundary read from v_1 to v_2 without the edge v_1 v_2.
        let mut cycle: Vec<usize> = face[1..].to_vec();
        cycle.push(v2);
        if k >= 4 {
            let v = order[k - 1];
            if !cycle.contains(&v) {
                return bad(format!("v_{k} is not on the outer face of G_{k}"));
            }
            let mut pos: Vec<usize> = Vec::new();
            for &u in g.rotations[v].iter().filter(|&&u| index[u] < k - 1) {
                match prev_cycle.iter().position(|&x| x == u) {
                    Some(p) => pos.push(p),
                    None => return bad(format!("earlier neighbour {u} of v_{k} is not on C_{}", k - 1)),
                }
            }
            pos.sort_unstable();
            if pos.len() < 2 || pos[pos.len() - 1] - pos[0] + 1 != pos.len() {
                return bad(format!("earlier neighbours of v_{k} are not a subpath of C_{}", k - 1));
            }
        }
        prev_cycle = cycle;
    }
    Ok(())
}

fn two_connected(g: &PlaneGraph, vertices: &[usize]) -> bool {
    let connected_without = |skip: Option<usize>| {
        let start = vertices.iter().copied().find(|&v| Some(v) != skip).unwrap();
        let mut seen = vec![false; g.n];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &g.rotations[u] {
                if Some(w) != skip && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == vertices.len() - usize::from(skip.is_some())
    };
    vertices.len() >= 3 && connected_without(None) && vertices.iter().all(|&v| connected_without(Some(v)))
}

/// Renumbers by `rpost` and relabels.
pub fn recanonize(g: &PlaneGraph, co: &CanonicalOrder) -> Result<CanonicalOrder> {
    let mut order = co.order.clone();
    order.sort_by_key(|&v| co.rpost[v]);
    build_ctree_labels(g, &order)
}

/// `rpost` values listed in preorder.
pub fn cperm(co: &CanonicalOrder) -> Permutation {
    Permutation::from_vec_unchecked(co.preorder().into_iter().map(|v| co.rpost[v]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;
    use crate::plane_graph::{all_maximal_plane_graphs, random_maximal_plane_graph};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn outer(g: &PlaneGraph) -> [usize; 3] {
        [g.outer_face[0], g.outer_face[1], g.outer_face[2]]
    }

    #[test]
    fn triangle_and_k4() {
        let t = PlaneGraph::triangle();
        let co = canonical_order(&t, outer(&t)).unwrap();
        assert_eq!(co.order, vec![0, 1, 2]);
        assert_eq!(cperm(&co), perm("132"));
        assert_eq!(recanonize(&t, &co).unwrap(), co);

        let g = PlaneGraph::k4();
        let co = canonical_order(&g, outer(&g)).unwrap();
        validate_canonical_order(&g, &co.order).unwrap();
        assert_eq!(co.order, vec![0, 1, 3, 2]);
        for v in 1..4 {
            assert_eq!(co.parent[v], Some(0));
        }
        assert_eq!(cperm(&co), perm("1432"));
        let re = recanonize(&g, &co).unwrap();
        validate_canonical_order(&g, &re.order).unwrap();
        assert_eq!(cperm(&re), perm("1432"));
    }

    #[test]
    fn named_graphs() {
        for g in [PlaneGraph::icosahedron(), PlaneGraph::double_wheel(5), PlaneGraph::double_wheel(8)] {
            let co = canonical_order(&g, outer(&g)).unwrap();
            validate_canonical_order(&g, &co.order).unwrap();
            let re = recanonize(&g, &co).unwrap();
            validate_canonical_order(&g, &re.order).unwrap();
            assert_eq!(recanonize(&g, &re).unwrap(), re);
            let p = cperm(&re);
            assert!(p.avoids_213(), "{p}");
        }
    }

    #[test]
    fn rejects_non_maximal() {
        let p = PlaneGraph::path(4);
        assert!(matches!(canonical_order(&p, [0, 1, 2]), Err(Error::NotMaximal(_))));
        let g = PlaneGraph::k4();
        assert!(canonical_order(&g, [0, 2, 1]).is_err());
    }

    #[test]
    fn validator_rejects_bad_orders() {
        let g = PlaneGraph::icosahedron();
        let co = canonical_order(&g, outer(&g)).unwrap();
        let mut bad = co.order.clone();
        let n = bad.len();
        bad.swap(3, n - 2);
        assert!(validate_canonical_order(&g, &bad).is_err());
        let mut swapped = co.order.clone();
        swapped.swap(0, 1);
        assert!(validate_canonical_order(&g, &swapped).is_err());
    }

    fn check_labels(g: &PlaneGraph, co: &CanonicalOrder) {
        let n = g.n;
        for u in 0..n {
            for w in 0..n {
                let by_labels = co.pre[u] < co.pre[w] && co.rpost[u] < co.rpost[w];
                assert_eq!(by_labels, co.is_ancestor(u, w));
            }
        }
        // Boundary cycles are increasing in pre.
        for path in outer_path_history(g, &co.order).unwrap() {
            assert!(path.windows(2).all(|w| co.pre[w[0]] < co.pre[w[1]]), "{path:?}");
        }
        let p = cperm(co);
        assert!(p.avoids_213(), "{p}");
        let v = p.values();
        assert_eq!((v[0], v[1], v[n - 1]), (1, n, 2));
    }

    #[test]
    fn random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rand::Rng::gen_range(&mut rng, 3..25);
            let g = random_maximal_plane_graph(n, &mut rng);
            let co = canonical_order(&g, outer(&g)).unwrap();
            validate_canonical_order(&g, &co.order).unwrap();
            check_labels(&g, &co);
            let re = recanonize(&g, &co).unwrap();
            validate_canonical_order(&g, &re.order).unwrap();
            assert_eq!(re.parent, co.parent);
            assert_eq!(recanonize(&g, &re).unwrap(), re);
            check_labels(&g, &re);
        }
    }

    /// With the order given by `rpost`, a vertex strictly between two
    /// neighbours in preorder is off the outer cycle once the later of the
    /// two has been added.
    #[test]
    fn interior_lemma_small_graphs() {
        for n in 3..=8 {
            for g in all_maximal_plane_graphs(n) {
                let co = canonical_order(&g, outer(&g)).unwrap();
                let re = recanonize(&g, &co).unwrap();
                check_labels(&g, &re);
                let hist = outer_path_history(&g, &re.order).unwrap();
                let idx = |v: usize| re.rpost[v] - 1;
                for (h, j) in g.edges() {
                    for i in 0..n {
                        let (a, b) = if re.pre[h] < re.pre[j] { (h, j) } else { (j, h) };
                        if !(re.pre[a] < re.pre[i] && re.pre[i] < re.pre[b]) {
                            continue;
                        }
                        let l = idx(h).max(idx(j));
                        if l > idx(i) && l >= 2 {
                            assert!(!hist[l - 2].contains(&i), "n={n} h={h} i={i} j={j}");
                        }
                    }
                }
            }
        }
    }
}
