//! Chessboard trees, Strahler numbers and tree augmentation of 213-avoiders.
//!
//! Every node of a chessboard tree has at most two children: the next
//! nonzero square up its column and the next one right along its row.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::chessboard::{chessboard, ChessboardGraph};
use crate::error::{Error, Result};
use crate::perm::{enumerate_class, perm, Permutation};

/// Rooted ordered tree whose children are an optional up-child and an
/// optional right-child.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    up: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    root: usize,
}

impl RootedTree {
    pub fn leaf() -> Self {
        RootedTree {
            up: vec![None],
            right: vec![None],
            parent: vec![None],
            root: 0,
        }
    }

    /// A new root whose up- and right-subtrees are the given trees.
    pub fn join(up: Option<RootedTree>, right: Option<RootedTree>) -> Self {
        let mut t = RootedTree::leaf();
        let attach = |sub: RootedTree, t: &mut RootedTree| -> usize {
            let off = t.up.len();
            let shift = |x: Option<usize>| x.map(|i| i + off);
            t.up.extend(sub.up.iter().map(|&x| shift(x)));
            t.right.extend(sub.right.iter().map(|&x| shift(x)));
            t.parent.extend(sub.parent.iter().map(|&x| shift(x)));
            t.parent[sub.root + off] = Some(0);
            sub.root + off
        };
        if let Some(u) = up {
            let r = attach(u, &mut t);
            t.up[0] = Some(r);
        }
        if let Some(rt) = right {
            let r = attach(rt, &mut t);
            t.right[0] = Some(r);
        }
        t
    }

    /// Builds a tree from child arrays, checking that they form one tree.
    pub fn from_children(up: Vec<Option<usize>>, right: Vec<Option<usize>>) -> Result<Self> {
        let n = up.len();
        if n == 0 || right.len() != n {
            return Err(Error::OutOfRange("tree needs matching nonempty child arrays".into()));
        }
        let mut parent = vec![None; n];
        for v in 0..n {
            for c in [up[v], right[v]].into_iter().flatten() {
                if c >= n || parent[c].is_some() || c == v {
                    return Err(Error::OutOfRange(format!("node {c} has a bad parent link")));
                }
                parent[c] = Some(v);
            }
        }
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::OutOfRange(format!("expected one root, found {}", roots.len())));
        }
        let t = RootedTree { up, right, parent, root: roots[0] };
        if t.preorder().len() != n {
            return Err(Error::OutOfRange("tree has a cycle".into()));
        }
        Ok(t)
    }

    /// Complete binary tree with `h + 1` levels.
    pub fn complete_binary(h: u32) -> Self {
        if h == 0 {
            return RootedTree::leaf();
        }
        let sub = RootedTree::complete_binary(h - 1);
        RootedTree::join(Some(sub.clone()), Some(sub))
    }

    /// A chain of `len ≥ 1` nodes, each the up-child of the previous one.
    pub fn path(len: usize) -> Self {
        assert!(len >= 1);
        let up = (0..len).map(|i| (i + 1 < len).then_some(i + 1)).collect();
        RootedTree::from_children(up, vec![None; len]).expect("path is a tree")
    }

    /// Random full binary tree with `internal` internal nodes, splitting the
    /// remaining internal nodes uniformly between the two subtrees.
    pub fn random_full_binary<R: Rng + ?Sized>(internal: usize, rng: &mut R) -> Self {
        if internal == 0 {
            return RootedTree::leaf();
        }
        let k = rng.gen_range(0..internal);
        let u = RootedTree::random_full_binary(k, rng);
        let r = RootedTree::random_full_binary(internal - 1 - k, rng);
        RootedTree::join(Some(u), Some(r))
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn up(&self, v: usize) -> Option<usize> {
        self.up[v]
    }

    pub fn right(&self, v: usize) -> Option<usize> {
        self.right[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.up[v].into_iter().chain(self.right[v])
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.up[v].is_none() && self.right[v].is_none()
    }

    /// Node, up-subtree, right-subtree.
    pub fn preorder(&self) -> Vec<usize> {
        self.preorder_from(self.root)
    }

    pub fn preorder_from(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            out.push(x);
            stack.extend(self.right[x]);
            stack.extend(self.up[x]);
        }
        out
    }

    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1; self.len()];
        for &v in self.preorder().iter().rev() {
            if let Some(p) = self.parent[v] {
                size[p] += size[v];
            }
        }
        size
    }

    pub fn strahler_numbers(&self) -> Vec<u32> {
        let mut s = vec![1u32; self.len()];
        for &v in self.preorder().iter().rev() {
            let kids: Vec<u32> = self.children(v).map(|c| s[c]).collect();
            if let Some(&m) = kids.iter().max() {
                let ties = kids.iter().filter(|&&x| x == m).count();
                s[v] = if ties > 1 { m + 1 } else { m };
            }
        }
        s
    }

    /// Copy of the subtree rooted at `v`, with nodes renumbered in preorder.
    pub fn subtree(&self, v: usize) -> RootedTree {
        let order = self.preorder_from(v);
        let mut id = vec![usize::MAX; self.len()];
        for (i, &x) in order.iter().enumerate() {
            id[x] = i;
        }
        let up = order.iter().map(|&x| self.up[x].map(|c| id[c])).collect();
        let right = order.iter().map(|&x| self.right[x].map(|c| id[c])).collect();
        RootedTree::from_children(up, right).expect("subtree is a tree")
    }
}

pub fn strahler_of_tree(t: &RootedTree) -> u32 {
    t.strahler_numbers()[t.root()]
}

/// The permutation whose chessboard graph is `t`: a node below and left of
/// its subtrees, the up-subtree above and left of the right-subtree.
/// Positions follow `t.preorder()`.
///
/// Only full binary trees occur as chessboard trees: a square without an
/// up-neighbour tops its column, so it lies on the diagonal and has no
/// right-neighbour either, and a square with an up-neighbour is off the
/// diagonal, so its row continues to the right. Other trees are rejected.
pub fn tree_pattern_permutation(t: &RootedTree) -> Result<Permutation> {
    if let Some(v) = (0..t.len()).find(|&v| t.up(v).is_some() != t.right(v).is_some()) {
        return Err(Error::OutOfRange(format!(
            "node {v} has a single child; chessboard trees are full binary trees"
        )));
    }
    let size = t.subtree_sizes();
    let mut low = vec![0usize; t.len()];
    low[t.root()] = 1;
    let order = t.preorder();
    for &v in &order {
        if let (Some(u), Some(r)) = (t.up(v), t.right(v)) {
            low[r] = low[v] + 1;
            low[u] = low[v] + 1 + size[r];
        }
    }
    Ok(Permutation::from_vec_unchecked(order.iter().map(|&v| low[v]).collect()))
}

/// Whether `p` is its own tree augmentation: 213-avoiding, every square 0 or
/// 1, and a chessboard graph that is a single tree.
pub fn is_tree_augmented(p: &Permutation) -> bool {
    if p.is_empty() || !p.avoids_213() {
        return false;
    }
    let b = chessboard(p).expect("nonempty");
    b.is_zero_one() && ChessboardGraph::from_board(&b).is_tree()
}

/// The chessboard tree of a tree-augmented permutation, with nodes numbered
/// so that node `i` is the element at position `i`.
pub fn chess_tree(p: &Permutation) -> Result<RootedTree> {
    if !is_tree_augmented(p) {
        return Err(Error::OutOfRange(format!("{p} is not tree-augmented")));
    }
    let b = chessboard(p)?;
    let g = ChessboardGraph::from_board(&b);
    // Graph nodes are listed column by column, bottom to top, which is
    // position order for a 0/1 board.
    let kids = g.children();
    RootedTree::from_children(kids.iter().map(|k| k.0).collect(), kids.iter().map(|k| k.1).collect())
}

/// A tree augmentation with the original elements marked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentedPermutation {
    pub perm: Permutation,
    /// `real_mask[i]` is set when position `i` holds an original element.
    pub real_mask: Vec<bool>,
    /// `provenance[j]` is the position of original element `j`.
    pub provenance: Vec<usize>,
    /// Fictitious leaves whose parent is also fictitious.
    pub fictitious_leaf_violations: usize,
}

impl AugmentedPermutation {
    pub fn tree(&self) -> RootedTree {
        chess_tree(&self.perm).expect("augmentation is a tree")
    }

    pub fn strahler(&self) -> u32 {
        strahler_of_tree(&self.tree())
    }
}

fn combine(a: u32, b: u32) -> u32 {
    if a == b {
        a + 1
    } else {
        a.max(b)
    }
}

/// Optimal subtree for a block of the permutation: (Strahler number, node
/// count) and how it splits.
#[derive(Clone, Copy)]
struct Plan {
    strahler: u32,
    size: usize,
    /// Whether the root is the block's first element.
    marked_root: bool,
    /// Start of the right-subtree part within the block.
    split: usize,
}

/// Minimal tree augmentation by dynamic programming over blocks.
///
/// A tree-augmented permutation is the realization of a full binary tree, and
/// the elements of a subtree form a block `1 ⊕ (U ⊖ R)` or `U ⊖ R` depending
/// on whether its root is kept. So a block either starts with its minimum,
/// taken as the root, followed by a skew split of the rest, or splits as a
/// skew sum under a fictitious root; empty parts become fictitious leaves.
/// Each block keeps the least (Strahler number, length).
struct Planner<'a> {
    vals: &'a [usize],
    memo: std::collections::HashMap<(usize, usize), Plan>,
}

impl Planner<'_> {
    fn plan(&mut self, i: usize, j: usize) -> Result<Plan> {
        let leaf = Plan { strahler: 1, size: 1, marked_root: j > i, split: j };
        if j - i <= 1 {
            return Ok(leaf);
        }
        if let Some(&p) = self.memo.get(&(i, j)) {
            return Ok(p);
        }
        let seg = &self.vals[i..j];
        let mut best: Option<Plan> = None;
        let consider = |cand: Plan, best: &mut Option<Plan>| {
            if best.is_none_or(|b| (cand.strahler, cand.size) < (b.strahler, b.size)) {
                *best = Some(cand);
            }
        };
        let lo = *seg.iter().min().unwrap();
        let vals = self.vals;
        // Skew split points of vals[from..j]: every value before the split
        // exceeds every value after it.
        let splits = |from: usize| -> Vec<usize> {
            let part = &vals[from..j];
            let mut suffix_max = vec![0; part.len() + 1];
            for k in (0..part.len()).rev() {
                suffix_max[k] = suffix_max[k + 1].max(part[k]);
            }
            let mut prefix_min = usize::MAX;
            let mut out = vec![from];
            for k in 0..part.len() {
                prefix_min = prefix_min.min(part[k]);
                if prefix_min > suffix_max[k + 1] {
                    out.push(from + k + 1);
                }
            }
            out
        };
        if seg[0] == lo {
            for t in splits(i + 1) {
                let (a, b) = (self.plan(i + 1, t)?, self.plan(t, j)?);
                consider(
                    Plan {
                        strahler: combine(a.strahler, b.strahler),
                        size: 1 + a.size + b.size,
                        marked_root: true,
                        split: t,
                    },
                    &mut best,
                );
            }
        }
        for t in splits(i).into_iter().filter(|&t| t > i && t < j) {
            let (a, b) = (self.plan(i, t)?, self.plan(t, j)?);
            consider(
                Plan {
                    strahler: combine(a.strahler, b.strahler),
                    size: 1 + a.size + b.size,
                    marked_root: false,
                    split: t,
                },
                &mut best,
            );
        }
        let best = best.ok_or_else(|| Error::Internal(format!("block {i}..{j} has no decomposition")))?;
        self.memo.insert((i, j), best);
        Ok(best)
    }

    /// The planned tree for `vals[i..j]` with its real-node marks in
    /// preorder.
    fn tree(&mut self, i: usize, j: usize) -> Result<(RootedTree, Vec<bool>)> {
        if j == i {
            return Ok((RootedTree::leaf(), vec![false]));
        }
        if j - i == 1 {
            return Ok((RootedTree::leaf(), vec![true]));
        }
        let p = self.plan(i, j)?;
        let from = if p.marked_root { i + 1 } else { i };
        let (u, mu) = self.tree(from, p.split)?;
        let (r, mr) = self.tree(p.split, j)?;
        let mut marks = vec![p.marked_root];
        marks.extend(mu);
        marks.extend(mr);
        Ok((RootedTree::join(Some(u), Some(r)), marks))
    }
}

/// A minimal tree augmentation of `p`: least Strahler number at every
/// subtree, then least length.
pub fn tree_augment(p: &Permutation) -> Result<AugmentedPermutation> {
    if p.is_empty() {
        return Err(Error::EmptyPermutation);
    }
    if !p.avoids_213() {
        return Err(Error::Contains213(p.to_string()));
    }
    let mut planner = Planner { vals: p.values(), memo: Default::default() };
    let (tree, real_mask) = planner.tree(0, p.len())?;
    let perm = tree_pattern_permutation(&tree)?;
    let provenance: Vec<usize> = (0..perm.len()).filter(|&i| real_mask[i]).collect();
    let violations = fictitious_leaf_violations(&tree, &real_mask);
    Ok(AugmentedPermutation {
        perm,
        real_mask,
        provenance,
        fictitious_leaf_violations: violations,
    })
}

/// Fictitious leaves whose parent is fictitious. Node `i` of the tree is the
/// element at position `i`.
pub fn fictitious_leaf_violations(t: &RootedTree, real: &[bool]) -> usize {
    (0..t.len())
        .filter(|&v| t.is_leaf(v) && !real[v] && t.parent(v).is_some_and(|u| !real[u]))
        .count()
}

/// Strahler number of the chessboard tree of `tree_augment(p)`: an upper
/// bound on the Strahler number of `p`.
pub fn strahler_upper_bound(p: &Permutation) -> Result<u32> {
    Ok(tree_augment(p)?.strahler())
}

/// Tree-augmented members of `S_n(213)` whose chessboard tree has Strahler
/// number at most `s`.
pub fn tree_augmented_with_bound(n: usize, s: u32) -> Vec<Permutation> {
    enumerate_class(n, &[perm("213")])
        .into_iter()
        .filter(|p| is_tree_augmented(p) && strahler_of_tree(&chess_tree(p).unwrap()) <= s)
        .collect()
}

/// The tallest complete binary tree obtainable from `t` by contracting
/// edges, with every kept node real: the root of each kept subtree has its
/// two kept children in its up- and right-subtrees. Returns the height and
/// the kept nodes.
pub fn complete_binary_minor(t: &RootedTree, real: &[bool]) -> Option<(u32, Vec<usize>)> {
    let n = t.len();
    // best[v]: (height, root) of the tallest such minor inside subtree(v).
    let mut best: Vec<Option<(u32, usize)>> = vec![None; n];
    for &v in t.preorder().iter().rev() {
        let mut cand = t.children(v).filter_map(|c| best[c]).max_by_key(|b| b.0);
        if real[v] {
            let here = match (t.up(v).and_then(|u| best[u]), t.right(v).and_then(|r| best[r])) {
                (Some(a), Some(b)) => (a.0.min(b.0) + 1, v),
                _ => (0, v),
            };
            if cand.is_none_or(|c| here.0 >= c.0) {
                cand = Some(here);
            }
        }
        best[v] = cand;
    }
    let (h, root) = best[t.root()]?;
    let mut nodes = Vec::new();
    collect_minor(t, &best, root, h, &mut nodes);
    nodes.sort_unstable();
    Some((h, nodes))
}

fn collect_minor(t: &RootedTree, best: &[Option<(u32, usize)>], root: usize, h: u32, out: &mut Vec<usize>) {
    out.push(root);
    if h == 0 {
        return;
    }
    for c in [t.up(root), t.right(root)].into_iter().flatten() {
        // Descend to a root of a minor of height exactly h − 1.
        let (ch, cr) = best[c].expect("child minor exists");
        debug_assert!(ch >= h - 1);
        let mut r = cr;
        let mut rh = ch;
        while rh > h - 1 {
            let (u, rt) = (t.up(r).unwrap(), t.right(r).unwrap());
            let (uh, ur) = best[u].unwrap();
            (rh, r) = if uh >= h - 1 { (uh, ur) } else { best[rt].unwrap() };
        }
        collect_minor(t, best, r, h - 1, out);
    }
}
