//! Stretched point sets `(i, q^{σ_i})`, exact predicates on them, the
//! universal point set and the drawing pipeline.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{is_embedding, Permutation};
use crate::plane_graph::{canonical_order, cperm, recanonize, triangulate, PlaneGraph};
use crate::superpattern::{augment, embed_into_mu, mu, mu_len};

/// The point `(x, q^e)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactPoint {
    pub x: u64,
    pub q: u64,
    pub e: u32,
}

impl ExactPoint {
    pub fn new(x: u64, q: u64, e: u32) -> Self {
        ExactPoint { x, q, e }
    }

    pub fn y(&self) -> BigInt {
        BigInt::from(self.q).pow(self.e)
    }
}

/// `{(i, q^{σ_i})}` with `q = |σ|`.
pub fn stretchperm(sigma: &Permutation) -> Result<Vec<ExactPoint>> {
    if sigma.is_empty() {
        return Err(Error::EmptyPermutation);
    }
    let q = sigma.len() as u64;
    Ok(sigma.values().iter().enumerate().map(|(i, &v)| ExactPoint::new(i as u64 + 1, q, v as u32)).collect())
}

/// Sign of the turn `a → b → c`: `+1` counterclockwise, `−1` clockwise,
/// `0` collinear.
pub fn orientation(a: &ExactPoint, b: &ExactPoint, c: &ExactPoint) -> i8 {
    let (ax, bx, cx) = (BigInt::from(a.x), BigInt::from(b.x), BigInt::from(c.x));
    let (ay, by, cy) = (a.y(), b.y(), c.y());
    let det = (&bx - &ax) * (&cy - &ay) - (&by - &ay) * (&cx - &ax);
    if det.is_zero() {
        0
    } else if det.is_positive() {
        1
    } else {
        -1
    }
}

/// Whether the open segments `ab` and `cd` cross at a single interior
/// point. Segments sharing an endpoint never count.
pub fn segments_cross(a: &ExactPoint, b: &ExactPoint, c: &ExactPoint, d: &ExactPoint) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    o1 * o2 < 0 && o3 * o4 < 0
}

/// Whether `p` lies in the relative interior of segment `ab`.
pub fn on_open_segment(p: &ExactPoint, a: &ExactPoint, b: &ExactPoint) -> bool {
    if p == a || p == b || orientation(a, b, p) != 0 {
        return false;
    }
    let between = |lo: &BigInt, v: &BigInt, hi: &BigInt| (lo <= v && v <= hi) || (hi <= v && v <= lo);
    between(&BigInt::from(a.x), &BigInt::from(p.x), &BigInt::from(b.x)) && between(&a.y(), &p.y(), &b.y())
}

/// `stretchperm(augment(μ_{n−3}))`.
pub fn universal_pointset(n: usize) -> Result<Vec<ExactPoint>> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("universal point sets need n >= 3, got {n}")));
    }
    stretchperm(&augment(&mu(n - 3)))
}

/// `|μ_{n−3}| + 3`.
pub fn universal_pointset_len(n: usize) -> usize {
    mu_len(n - 3) + 3
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub crossing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Drawing {
    pub q: u64,
    pub graph: PlaneGraph,
    /// Point of each vertex.
    pub points: Vec<ExactPoint>,
    /// Every pair of vertex-disjoint edges.
    pub certificate: Vec<PairCheck>,
    /// `(vertex, edge)` with the vertex inside the edge.
    pub vertex_on_edge: Vec<(usize, (usize, usize))>,
    pub crossing_free: bool,
}

#[derive(Serialize)]
struct VertexJson {
    id: usize,
    x: u64,
    y_exp: u32,
}

#[derive(Serialize)]
struct DrawingJson {
    q: u64,
    vertices: Vec<VertexJson>,
    crossing_free: bool,
}

impl Drawing {
    /// `{"q", "vertices": [{"id", "x", "y_exp"}], "crossing_free"}`.
    pub fn to_json(&self) -> String {
        let j = DrawingJson {
            q: self.q,
            vertices: self
                .points
                .iter()
                .enumerate()
                .map(|(id, p)| VertexJson { id, x: p.x, y_exp: p.e })
                .collect(),
            crossing_free: self.crossing_free,
        };
        serde_json::to_string_pretty(&j).expect("drawings serialize")
    }

    /// A schematic picture: `x` as is and the exponent `e` in place of
    /// `q^e`, both times `scale`.
    pub fn to_svg(&self, scale: f64) -> String {
        let pad = scale;
        let max_e = self.points.iter().map(|p| p.e).max().unwrap_or(1) as f64;
        let px = |p: &ExactPoint| pad + p.x as f64 * scale;
        let py = |p: &ExactPoint| pad + (max_e - p.e as f64) * scale;
        let w = 2.0 * pad + self.q as f64 * scale;
        let h = 2.0 * pad + max_e * scale;
        let mut s = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n"
        );
        s.push_str(
            "<!-- schematic: y is drawn as exponent × scale, not q^exponent; this picture may show crossings. \
             Crossing-freeness is verified only in exact integer coordinates. -->\n",
        );
        for (a, b) in self.graph.edges() {
            let (pa, pb) = (&self.points[a], &self.points[b]);
            s.push_str(&format!(
                "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\" stroke-width=\"1\"/>\n",
                px(pa),
                py(pa),
                px(pb),
                py(pb)
            ));
        }
        for (v, p) in self.points.iter().enumerate() {
            s.push_str(&format!(
                "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"{:.1}\" fill=\"crimson\"><title>{v}: ({}, {}^{})</title></circle>\n",
                px(p),
                py(p),
                scale / 4.0,
                p.x,
                p.q,
                p.e
            ));
        }
        s.push_str("</svg>\n");
        s
    }
}

/// Places a connected plane graph on `universal_pointset(n)`.
///
/// The graph is completed to a maximal plane graph (kept as is when it is
/// already maximal with a triangular outer face), given a canonical order
/// renumbered by `rpost`, and its permutation is found in `augment(μ_{n−3})`
/// from the embedding of the middle block into `μ_{n−3}`. Vertex `v` goes
/// to the point at the position matched to `pre(v)`. Every pair of
/// vertex-disjoint edges of the input is then checked exactly.
pub fn draw(g: &PlaneGraph) -> Result<Drawing> {
    g.validate()?;
    let n = g.n;
    if n < 3 {
        return Err(Error::OutOfRange(format!("drawing needs n >= 3, got {n}")));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (full, co) = if g.is_maximal() && g.outer_face.len() == 3 {
        let o = &g.outer_face;
        (g.clone(), canonical_order(g, [o[0], o[1], o[2]])?)
    } else {
        triangulate(g)?
    };
    let co = recanonize(&full, &co)?;
    let pi = cperm(&co);
    let aug = augment(&mu(n - 3));
    let middle = Permutation::standardize(&pi.values()[2..n - 1]);
    let inner = embed_into_mu(&middle, n - 3)?;
    let mut pos = vec![0, 1];
    pos.extend(inner.iter().map(|&p| p + 2));
    pos.push(aug.len() - 1);
    if !is_embedding(&aug, &pi, &pos) {
        return Err(Error::Internal(format!("{pi} was not matched in augment(mu_{})", n - 3)));
    }
    let q = aug.len() as u64;
    let points: Vec<ExactPoint> = (0..n)
        .map(|v| {
            let at = pos[co.pre[v] - 1];
            ExactPoint::new(at as u64 + 1, q, aug.values()[at] as u32)
        })
        .collect();
    let edges = g.edges();
    let pairs: Vec<((usize, usize), (usize, usize))> = edges
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| edges[i + 1..].iter().map(move |&f| (e, f)))
        .filter(|&((a, b), (c, d))| a != c && a != d && b != c && b != d)
        .collect();
    let certificate: Vec<PairCheck> = pairs
        .par_iter()
        .map(|&(e, f)| PairCheck {
            first: e,
            second: f,
            crossing: segments_cross(&points[e.0], &points[e.1], &points[f.0], &points[f.1]),
        })
        .collect();
    let vertex_on_edge: Vec<(usize, (usize, usize))> = edges
        .par_iter()
        .flat_map_iter(|&(a, b)| {
            let points = &points;
            (0..n)
                .filter(move |&v| v != a && v != b && on_open_segment(&points[v], &points[a], &points[b]))
                .map(move |v| (v, (a, b)))
        })
        .collect();
    let crossing_free = vertex_on_edge.is_empty() && certificate.iter().all(|c| !c.crossing);
    Ok(Drawing { q, graph: g.clone(), points, certificate, vertex_on_edge, crossing_free })
}
