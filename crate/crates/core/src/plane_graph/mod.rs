//! Embedded planar graphs given by rotation systems, canonical orders, the
//! canonical tree and the permutation read off it.
//!
//! Vertices are `0..n`. `rotations[v]` lists the neighbours of `v` clockwise.
//! Faces are traced with the face on the left: from the dart `u → v` the
//! walk continues to the neighbour of `v` that follows `u` clockwise. Inner
//! faces come out counterclockwise and the outer face clockwise.
//! `outer_face` lists the outer face counterclockwise, so for a canonical
//! order it reads `v_1, v_2, v_n`.

mod canonical;
mod random;
mod triangulate;

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canonical::{
    build_ctree_labels, canonical_order, cperm, outer_path_history, recanonize, validate_canonical_order,
    CanonicalOrder,
};
pub use random::{all_maximal_plane_graphs, random_connected_plane_graph, random_maximal_plane_graph};
pub use triangulate::triangulate;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneGraph {
    pub n: usize,
    pub rotations: Vec<Vec<usize>>,
    #[serde(default)]
    pub outer_face: Vec<usize>,
}

impl PlaneGraph {
    /// Checks the rotation system and, when given, the outer face.
    pub fn new(rotations: Vec<Vec<usize>>, outer_face: Vec<usize>) -> Result<Self> {
        let g = PlaneGraph { n: rotations.len(), rotations, outer_face };
        g.validate()?;
        Ok(g)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let g: PlaneGraph = serde_json::from_str(text).map_err(|e| Error::Parse {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        g.validate()?;
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plane graphs serialize")
    }

    /// Every dart once, symmetric adjacency, no loops; the embedding of each
    /// component has genus zero and `outer_face` is a face.
    pub fn validate(&self) -> Result<()> {
        if self.rotations.len() != self.n {
            return Err(Error::InvalidGraph(format!(
                "n = {} but {} rotations given",
                self.n,
                self.rotations.len()
            )));
        }
        for (u, rot) in self.rotations.iter().enumerate() {
            let mut seen = HashSet::new();
            for &v in rot {
                if v >= self.n {
                    return Err(Error::InvalidGraph(format!("rotations[{u}] names vertex {v} >= n")));
                }
                if v == u {
                    return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
                }
                if !seen.insert(v) {
                    return Err(Error::InvalidGraph(format!("rotations[{u}] repeats {v}")));
                }
                if !self.rotations[v].contains(&u) {
                    return Err(Error::InvalidGraph(format!("edge {u}-{v} missing from rotations[{v}]")));
                }
            }
        }
        let comps = self.components();
        let faces = self.faces();
        let e = self.edge_count();
        // Euler, with each component's outer face traced separately.
        let isolated = (0..self.n).filter(|&v| self.rotations[v].is_empty()).count();
        if self.n + faces.len() + isolated != e + 2 * comps.len() {
            return Err(Error::InvalidGraph(format!(
                "rotation system is not planar: V={} E={e} F={} components={}",
                self.n,
                faces.len(),
                comps.len()
            )));
        }
        if !self.outer_face.is_empty() && self.find_face(&self.outer_face).is_none() {
            return Err(Error::InvalidGraph(format!(
                "outer face {:?} is not a face of the embedding",
                self.outer_face
            )));
        }
        Ok(())
    }

    pub fn edge_count(&self) -> usize {
        self.rotations.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rotations[u].contains(&v)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, rot) in self.rotations.iter().enumerate() {
            out.extend(rot.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    /// Neighbour of `v` following `u` clockwise.
    pub fn next_cw(&self, v: usize, u: usize) -> usize {
        let rot = &self.rotations[v];
        let i = rot.iter().position(|&x| x == u).expect("dart exists");
        rot[(i + 1) % rot.len()]
    }

    /// Neighbour of `v` preceding `u` clockwise.
    pub fn next_ccw(&self, v: usize, u: usize) -> usize {
        let rot = &self.rotations[v];
        let i = rot.iter().position(|&x| x == u).expect("dart exists");
        rot[(i + rot.len() - 1) % rot.len()]
    }

    /// The face to the left of the dart `u → v`, as the sequence of its
    /// vertices starting with `u`.
    pub fn face_of(&self, u: usize, v: usize) -> Vec<usize> {
        let mut out = vec![u];
        let (mut a, mut b) = (u, v);
        loop {
            let c = self.next_cw(b, a);
            a = b;
            b = c;
            if (a, b) == (u, v) {
                return out;
            }
            out.push(a);
        }
    }

    /// All faces, each traced once.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut used: HashSet<(usize, usize)> = HashSet::new();
        let mut out = Vec::new();
        for u in 0..self.n {
            for &v in &self.rotations[u] {
                if used.contains(&(u, v)) {
                    continue;
                }
                let f = self.face_of(u, v);
                for i in 0..f.len() {
                    used.insert((f[i], f[(i + 1) % f.len()]));
                }
                out.push(f);
            }
        }
        out
    }

    /// Whether the counterclockwise cycle `ccw` bounds a face, returning that
    /// face as traced.
    pub fn find_face(&self, ccw: &[usize]) -> Option<Vec<usize>> {
        let k = ccw.len();
        if k < 2 {
            return None;
        }
        // Traced clockwise: the reverse of the given order.
        let (u, v) = (ccw[0], ccw[k - 1]);
        if !self.has_edge(u, v) {
            return None;
        }
        let f = self.face_of(u, v);
        let mut want: Vec<usize> = ccw.to_vec();
        want[1..].reverse();
        (f == want).then_some(f)
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.rotations[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// `3n − 6` edges and every face a triangle.
    pub fn is_maximal(&self) -> bool {
        self.n >= 3
            && self.edge_count() == 3 * self.n - 6
            && self.is_connected()
            && self.faces().iter().all(|f| f.len() == 3)
    }

    /// The same embedding with vertex `v` renamed `map[v]`.
    pub fn relabel(&self, map: &[usize]) -> PlaneGraph {
        let mut rotations = vec![Vec::new(); self.n];
        for (v, rot) in self.rotations.iter().enumerate() {
            rotations[map[v]] = rot.iter().map(|&u| map[u]).collect();
        }
        PlaneGraph {
            n: self.n,
            rotations,
            outer_face: self.outer_face.iter().map(|&v| map[v]).collect(),
        }
    }

    /// The same embedding with another face, given counterclockwise, as the
    /// outer face.
    pub fn with_outer_face(&self, ccw: Vec<usize>) -> Result<PlaneGraph> {
        if self.find_face(&ccw).is_none() {
            return Err(Error::InvalidGraph(format!("{ccw:?} is not a face")));
        }
        Ok(PlaneGraph { outer_face: ccw, ..self.clone() })
    }

    pub fn triangle() -> PlaneGraph {
        PlaneGraph { n: 3, rotations: vec![vec![2, 1], vec![0, 2], vec![1, 0]], outer_face: vec![0, 1, 2] }
    }

    /// `K_4` with outer triangle `0 1 2` and vertex 3 inside.
    pub fn k4() -> PlaneGraph {
        PlaneGraph {
            n: 4,
            rotations: vec![vec![2, 3, 1], vec![0, 3, 2], vec![1, 3, 0], vec![2, 1, 0]],
            outer_face: vec![0, 1, 2],
        }
    }

    /// Path `0 − 1 − … − (n−1)`.
    pub fn path(n: usize) -> PlaneGraph {
        let rotations = (0..n)
            .map(|v| {
                let mut r = Vec::new();
                if v > 0 {
                    r.push(v - 1);
                }
                if v + 1 < n {
                    r.push(v + 1);
                }
                r
            })
            .collect();
        PlaneGraph { n, rotations, outer_face: Vec::new() }
    }

    /// Complete binary tree of height `h`, heap numbered.
    pub fn complete_binary_tree(h: u32) -> PlaneGraph {
        let n = (1usize << (h + 1)) - 1;
        let rotations = (0..n)
            .map(|v| {
                let mut r = Vec::new();
                if v > 0 {
                    r.push((v - 1) / 2);
                }
                for c in [2 * v + 1, 2 * v + 2] {
                    if c < n {
                        r.push(c);
                    }
                }
                r
            })
            .collect();
        PlaneGraph { n, rotations, outer_face: Vec::new() }
    }

    /// Two apexes over a cycle of length `k`: vertices `0..k` on the
    /// cycle, `k` inside and `k + 1` outside.
    pub fn double_wheel(k: usize) -> PlaneGraph {
        let (inner, outer) = (k, k + 1);
        let mut rotations = vec![Vec::new(); k + 2];
        for i in 0..k {
            let prev = (i + k - 1) % k;
            let next = (i + 1) % k;
            // The cycle runs counterclockwise; inside is to the left.
            rotations[i] = vec![next, outer, prev, inner];
        }
        rotations[inner] = (0..k).rev().collect();
        rotations[outer] = (0..k).collect();
        let g = PlaneGraph { n: k + 2, rotations, outer_face: Vec::new() };
        let f = g.face_of(outer, 0);
        let mut ccw = f.clone();
        ccw[1..].reverse();
        PlaneGraph { outer_face: ccw, ..g }
    }

    /// The icosahedron.
    pub fn icosahedron() -> PlaneGraph {
        // Top 0, upper ring 1..=5, lower ring 6..=10, bottom 11. Seen from
        // above, both rings run counterclockwise; lower vertex 5 + i sits
        // between upper i and i + 1.
        let up = |i: usize| 1 + (i % 5);
        let low = |i: usize| 6 + (i % 5);
        let mut rotations = vec![Vec::new(); 12];
        rotations[0] = (0..5).rev().map(up).collect();
        rotations[11] = (0..5).map(low).collect();
        for i in 0..5 {
            rotations[up(i)] = vec![0, up(i + 1), low(i), low(i + 4), up(i + 4)];
            rotations[low(i)] = vec![11, low(i + 4), up(i), up(i + 1), low(i + 1)];
        }
        let g = PlaneGraph { n: 12, rotations, outer_face: Vec::new() };
        let f = g.face_of(0, up(0));
        let mut ccw = f.clone();
        ccw[1..].reverse();
        PlaneGraph { outer_face: ccw, ..g }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs_are_valid() {
        for g in [PlaneGraph::triangle(), PlaneGraph::k4(), PlaneGraph::double_wheel(5), PlaneGraph::icosahedron()] {
            g.validate().unwrap();
            assert!(g.is_maximal(), "{g:?}");
        }
        for g in [PlaneGraph::path(5), PlaneGraph::complete_binary_tree(3)] {
            g.validate().unwrap();
            assert!(!g.is_maximal());
            assert_eq!(g.faces().len(), 1);
        }
    }

    #[test]
    fn k4_faces() {
        let g = PlaneGraph::k4();
        assert_eq!(g.faces().len(), 4);
        assert_eq!(g.face_of(0, 2), vec![0, 2, 1]);
        assert!(g.find_face(&[0, 1, 2]).is_some());
        assert!(g.find_face(&[0, 2, 1]).is_none());
    }

    #[test]
    fn rejects_bad_rotations() {
        let bad = PlaneGraph { n: 2, rotations: vec![vec![1], vec![]], outer_face: vec![] };
        assert!(matches!(bad.validate(), Err(Error::InvalidGraph(_))));
        // K_4 with one rotation flipped is not planar as embedded.
        let mut g = PlaneGraph::k4();
        g.rotations[3].reverse();
        g.outer_face.clear();
        assert!(g.validate().is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = PlaneGraph::icosahedron();
        let back = PlaneGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        let err = PlaneGraph::from_json("{\"n\": 3,\n \"rotations\": [[1]}").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        assert!(err.to_string().contains("line 2"), "{err}");
    }
}
