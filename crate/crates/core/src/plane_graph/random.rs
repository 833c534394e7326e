use rand::seq::SliceRandom;
use rand::Rng;

use super::triangulate::Disk;
use super::PlaneGraph;

/// A maximal plane graph grown by random attachments, then randomly
/// relabelled and given a random face as the outer face.
pub fn random_maximal_plane_graph<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PlaneGraph {
    assert!(n >= 3, "maximal plane graphs need n >= 3");
    let mut disk = Disk::new(n, 0, 1);
    for u in 2..n {
        let last = disk.path.len() - 1;
        if u == n - 1 {
            disk.attach(u, 0, last);
        } else {
            let l = rng.gen_range(0..last);
            let r = rng.gen_range(l + 1..=last);
            disk.attach(u, l, r);
        }
    }
    let g = disk.into_graph();
    let mut map: Vec<usize> = (0..n).collect();
    map.shuffle(rng);
    let g = g.relabel(&map);
    let faces = g.faces();
    let f = faces.choose(rng).unwrap();
    let s = rng.gen_range(0..3);
    // Traced faces run clockwise as outer faces; list counterclockwise.
    let ccw = vec![f[s], f[(s + 2) % 3], f[(s + 1) % 3]];
    g.with_outer_face(ccw).expect("traced face")
}

/// A random connected plane graph: a random spanning tree of a random
/// maximal plane graph plus each other edge with a random probability.
pub fn random_connected_plane_graph<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PlaneGraph {
    let g = random_maximal_plane_graph(n.max(3), rng);
    if n < 3 {
        return PlaneGraph::path(n);
    }
    let mut edges = g.edges();
    edges.shuffle(rng);
    let keep_extra = rng.gen_range(0.0..1.0);
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        if uf[x] != x {
            let r = find(uf, uf[x]);
            uf[x] = r;
        }
        uf[x]
    }
    let mut kept = std::collections::HashSet::new();
    for &(a, b) in &edges {
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        if ra != rb {
            uf[ra] = rb;
            kept.insert((a, b));
        } else if rng.gen_bool(keep_extra) {
            kept.insert((a, b));
        }
    }
    let rotations = g
        .rotations
        .iter()
        .enumerate()
        .map(|(u, rot)| rot.iter().copied().filter(|&v| kept.contains(&(u.min(v), u.max(v)))).collect())
        .collect();
    PlaneGraph { n, rotations, outer_face: Vec::new() }
}

/// Every maximal plane graph on `n` vertices, once per canonical order
/// that builds it (so with repetitions), each with its building order's
/// outer triangle.
pub fn all_maximal_plane_graphs(n: usize) -> Vec<PlaneGraph> {
    fn grow(disk: Disk, n: usize, out: &mut Vec<PlaneGraph>) {
        let u = disk.order.len();
        let last = disk.path.len() - 1;
        if u == n - 1 {
            let mut d = disk;
            d.attach(u, 0, last);
            out.push(d.into_graph());
            return;
        }
        for l in 0..last {
            for r in l + 1..=last {
                let mut d = disk.clone();
                d.attach(u, l, r);
                grow(d, n, out);
            }
        }
    }
    assert!(n >= 3);
    let mut out = Vec::new();
    grow(Disk::new(n, 0, 1), n, &mut out);
    out
}
