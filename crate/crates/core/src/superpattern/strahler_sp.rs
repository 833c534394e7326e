//! The recursive superpatterns `P(n, s)` for tree-augmented permutations of
//! Strahler number at most `s`.
//!
//! `P(0, s)` is empty, `P(n, 2)` is the `3n − 4` construction (with `1` and
//! `231` for `n = 1, 2`), and for `s ≥ 3`
//! `P(n, s) = 1 ⊕ (A ⊖ P(n − 1, s) ⊖ A)` with `A = P(ξ_n, s − 1)`.
//! Level `j` of `P(n, s)` therefore reads: its singleton, a left copy of
//! `A_j`, the whole of level `j − 1`, a right copy of `A_j`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::majorize::{majorize_usize, xi_unchecked};
use crate::perm::{perm, Permutation};
use crate::strahler::{chess_tree, strahler_of_tree, tree_pattern_permutation, RootedTree};

use super::classes::{embed_213_3412, superpattern_213_3412};

/// `|P(n, s)|`, memoized over the recursion.
pub fn strahler_superpattern_len(n: usize, s: u32) -> Result<usize> {
    if s < 2 {
        return Err(Error::OutOfRange(format!("Strahler bound must be >= 2, got {s}")));
    }
    let mut memo = HashMap::new();
    Ok(len_memo(n, s, &mut memo))
}

fn len_memo(n: usize, s: u32, memo: &mut HashMap<(usize, u32), usize>) -> usize {
    if s == 2 {
        return match n {
            0 => 0,
            1 => 1,
            2 => 3,
            _ => 3 * n - 4,
        };
    }
    if let Some(&l) = memo.get(&(n, s)) {
        return l;
    }
    // Iterate levels upwards to keep the recursion depth in `s`.
    let mut total = 0;
    for j in 1..=n {
        total += 1 + 2 * len_memo(xi_unchecked(j as u64) as usize, s - 1, memo);
        memo.insert((j, s), total);
    }
    total
}

fn base(n: usize) -> Permutation {
    match n {
        0 => Permutation::empty(),
        1 => perm("1"),
        2 => perm("231"),
        _ => superpattern_213_3412(n).expect("n >= 3"),
    }
}

/// `P(n, s)`.
pub fn strahler_superpattern(n: usize, s: u32) -> Result<Permutation> {
    if s < 2 {
        return Err(Error::OutOfRange(format!("Strahler bound must be >= 2, got {s}")));
    }
    Ok(build(n, s))
}

fn build(n: usize, s: u32) -> Permutation {
    if s == 2 {
        return base(n);
    }
    // Built from the innermost level outwards.
    let mut cur: Vec<usize> = Vec::new();
    for j in 1..=n {
        let a = build(xi_unchecked(j as u64) as usize, s - 1);
        let (la, lb) = (a.len(), cur.len());
        let mut next = Vec::with_capacity(1 + 2 * la + lb);
        next.push(1);
        next.extend(a.values().iter().map(|&x| x + 1 + la + lb));
        next.extend(cur.iter().map(|&x| x + 1 + la));
        next.extend(a.values().iter().map(|&x| x + 1));
        cur = next;
    }
    Permutation::from_vec_unchecked(cur)
}

/// Embeds a tree-augmented permutation of length at most `n` whose
/// chessboard tree has Strahler number at most `s` into `P(n, s)`.
pub fn embed_into_strahler_superpattern(p: &Permutation, n: usize, s: u32) -> Result<Vec<usize>> {
    if s < 2 {
        return Err(Error::OutOfRange(format!("Strahler bound must be >= 2, got {s}")));
    }
    if p.len() > n {
        return Err(Error::OutOfRange(format!("pattern of length {} exceeds {n}", p.len())));
    }
    if p.is_empty() {
        return Ok(Vec::new());
    }
    let t = chess_tree(p)?;
    let found = strahler_of_tree(&t);
    if found > s {
        return Err(Error::StrahlerTooLarge { found, limit: s });
    }
    let mut memo = HashMap::new();
    let mut pos = vec![usize::MAX; t.len()];
    embed_tree(&t, n, s, 0, &mut pos, &mut memo)?;
    // Node i of a chess tree is the element at position i.
    Ok(pos)
}

/// Fills `pos[v]` for every node of `t` with its position in `P(n, s)`,
/// shifted by `offset`.
fn embed_tree(
    t: &RootedTree,
    n: usize,
    s: u32,
    offset: usize,
    pos: &mut [usize],
    memo: &mut HashMap<(usize, u32), usize>,
) -> Result<()> {
    if s == 2 {
        let q = tree_pattern_permutation(t)?;
        let w = if n <= 2 {
            base(n).contains(&q).ok_or_else(|| Error::Internal(format!("{q} missing from P({n}, 2)")))?
        } else {
            embed_213_3412(&q, n)?
        };
        for (v, x) in t.preorder().into_iter().zip(w) {
            pos[v] = offset + x;
        }
        return Ok(());
    }
    let strahler = t.strahler_numbers();
    let size = t.subtree_sizes();

    // Spine from the root: keep to a child of equal Strahler number, else
    // the larger subtree, else the up-child.
    let mut spine = vec![t.root()];
    loop {
        let v = *spine.last().unwrap();
        let next = match (t.up(v), t.right(v)) {
            (None, None) => break,
            (Some(c), None) | (None, Some(c)) => c,
            (Some(u), Some(r)) => {
                if strahler[u] == strahler[v] {
                    u
                } else if strahler[r] == strahler[v] {
                    r
                } else if size[r] > size[u] {
                    r
                } else {
                    u
                }
            }
        };
        spine.push(next);
    }
    spine.reverse();

    let off_child = |i: usize| -> Option<(usize, bool)> {
        let v = spine[i];
        let on = if i > 0 { Some(spine[i - 1]) } else { None };
        match (t.up(v), t.right(v)) {
            (Some(u), Some(r)) => Some(if on == Some(u) { (r, false) } else { (u, true) }),
            (Some(u), None) if on != Some(u) => Some((u, true)),
            (None, Some(r)) if on != Some(r) => Some((r, false)),
            _ => None,
        }
    };
    let c: Vec<usize> = (0..spine.len()).map(|i| 1 + off_child(i).map_or(0, |(x, _)| size[x])).collect();
    let levels = majorize_usize(&c)?;

    // Offsets of each level's singleton and its block length.
    let level_len = |j: usize, memo: &mut HashMap<(usize, u32), usize>| len_memo(j, s, memo);
    let a_len = |j: usize, memo: &mut HashMap<(usize, u32), usize>| len_memo(xi_unchecked(j as u64) as usize, s - 1, memo);
    let mut start = vec![0usize; n + 2];
    start[n] = offset;
    for j in (1..n).rev() {
        start[j] = start[j + 1] + 1 + a_len(j + 1, memo);
    }

    for (i, &j) in levels.iter().enumerate() {
        pos[spine[i]] = start[j];
        if let Some((child, is_up)) = off_child(i) {
            let sub = t.subtree(child);
            let la = a_len(j, memo);
            let copy = if is_up {
                start[j] + 1
            } else {
                start[j] + level_len(j, memo) - la
            };
            let mut sub_pos = vec![usize::MAX; sub.len()];
            embed_tree(&sub, xi_unchecked(j as u64) as usize, s - 1, copy, &mut sub_pos, memo)?;
            for (orig, x) in t.preorder_from(child).into_iter().zip(sub_pos) {
                pos[orig] = x;
            }
        }
    }
    Ok(())
}
