//! `μ_n`, the `S_n(213)`-superpattern of length `n²/4 + n + ((−1)ⁿ − 1)/8`,
//! and its constructive embedding.
//!
//! Row `r` of the `n × n` board (counted from the bottom) holds a single 1 at
//! column `n + 1 − r` when `r` is odd; when `r` is even it holds a 2 there and
//! 1s in columns `1..=n − r`.

use crate::chessboard::{from_chessboard, Chessboard};
use crate::error::{Error, Result};
use crate::perm::Permutation;

pub fn mu_board(n: usize) -> Chessboard {
    let mut b = Chessboard::zeros(n, n);
    for r in 1..=n {
        let c = n + 1 - r;
        if r % 2 == 1 {
            b.set(c, r, 1);
        } else {
            b.set(c, r, 2);
            for c in 1..=n - r {
                b.set(c, r, 1);
            }
        }
    }
    b
}

pub fn mu(n: usize) -> Permutation {
    if n == 0 {
        return Permutation::empty();
    }
    from_chessboard(&mu_board(n)).expect("mu board is canonical")
}

/// `n²/4 + n + ((−1)ⁿ − 1)/8`, evaluated exactly.
pub fn mu_len(n: usize) -> usize {
    let n2 = n * n;
    if n.is_multiple_of(2) {
        n2 / 4 + n
    } else {
        (n2 + 4 * n - 1) / 4
    }
}

/// Positions (0-based) of an embedding of the 213-avoider `p` into `mu(n)`,
/// `|p| ≤ n`. The witness uses the bottom-left `|p| × |p|` corner window.
pub fn embed_into_mu(p: &Permutation, n: usize) -> Result<Vec<usize>> {
    if !p.avoids_213() {
        return Err(Error::Contains213(p.to_string()));
    }
    if p.len() > n {
        return Err(Error::OutOfRange(format!(
            "pattern of length {} does not fit in mu({n})",
            p.len()
        )));
    }
    if p.is_empty() {
        return Ok(Vec::new());
    }
    let layout = Layout::new(n);
    let mut cells = Vec::with_capacity(p.len());
    layout.embed_at(p.values(), 0, 1, &mut cells);
    let mut pos = vec![0; p.len()];
    for c in &cells {
        pos[c.index] = layout.position(*c);
    }
    Ok(pos)
}

#[derive(Debug, Clone, Copy)]
struct Placed {
    /// Index of the element in the pattern being embedded.
    index: usize,
    col: usize,
    row: usize,
    /// Rank within the cell.
    t: usize,
}

/// Column starts and per-cell offsets of `μ_n`, for turning cells into
/// positions.
struct Layout {
    n: usize,
    board: Chessboard,
    col_start: Vec<usize>,
}

impl Layout {
    fn new(n: usize) -> Self {
        let board = mu_board(n);
        let mut col_start = vec![0; n + 2];
        for c in 1..=n {
            col_start[c + 1] = col_start[c] + (1..=n).map(|r| board.get(c, r) as usize).sum::<usize>();
        }
        Layout { n, board, col_start }
    }

    fn position(&self, p: Placed) -> usize {
        let below: usize = (1..p.row).map(|r| self.board.get(p.col, r) as usize).sum();
        debug_assert!((p.t as u32) < self.board.get(p.col, p.row));
        self.col_start[p.col] + below + p.t
    }

    /// Embeds the pattern `vals`, whose first entry has index `base` in the
    /// full pattern, into the window whose bottom row is `a` and
    /// whose size is `vals.len()`: rows `a..=b`, columns
    /// `n + 1 − b..=n + 1 − a` with `b = a + k − 1`.
    ///
    /// With `a` odd the window looks like `μ_k`; with `a` even its bottom row
    /// holds `k + 1` elements (ones then a 2 in the last column) under a
    /// `μ_{k−1}`-shaped window.
    fn embed_at(&self, vals: &[usize], base: usize, a: usize, out: &mut Vec<Placed>) {
        let k = vals.len();
        if k == 0 {
            return;
        }
        let b = a + k - 1;
        let left_col = self.n + 1 - b;
        let abs = |rel: usize| left_col + rel - 1;
        let min = *vals.iter().min().unwrap();

        // Positions (0-based within `vals`) placed on the chosen row, and the
        // row/element mapping for them.
        let row_elems: Vec<usize>;
        if a % 2 == 1 && vals[k - 1] == min {
            // Case 1: the last element is the minimum; it goes to the corner,
            // and the next row of the pattern goes on row a + 1.
            out.push(Placed { index: base + k - 1, col: abs(k), row: a, t: 0 });
            row_elems = inverse_run(vals, min + 1, k - 1);
            for &i in &row_elems {
                let e = i + 1;
                out.push(Placed { index: base + i, col: abs(e.min(k - 1)), row: a + 1, t: e.saturating_sub(k - 1) });
            }
        } else {
            row_elems = inverse_run(vals, min, k);
            let (row, last) = if a % 2 == 1 { (a + 1, k - 1) } else { (a, k) };
            for &i in &row_elems {
                let e = i + 1;
                out.push(Placed { index: base + i, col: abs(e.min(last)), row, t: e.saturating_sub(last) });
            }
        }

        // Blocks between consecutive row elements recurse into sub-windows.
        let mut prev: Option<usize> = None;
        for &i in &row_elems {
            let (c0, lo) = match prev {
                None => (1, 0),
                Some(p) => (p + 1, p + 1),
            };
            let w = i - lo;
            if w > 0 {
                // Columns c0..c0 + w − 1 of this window, top-aligned so that
                // blocks further right sit lower.
                let a2 = b + 2 - c0 - w;
                self.embed_block(&vals[lo..i], base + lo, a2, out);
            }
            prev = Some(i);
        }
    }

    fn embed_block(&self, vals: &[usize], base: usize, a: usize, out: &mut Vec<Placed>) {
        let p = Permutation::standardize(vals);
        self.embed_at(p.values(), base, a, out);
    }
}

/// 0-based positions, in increasing order, of the maximal ascending run of
/// the inverse starting at value `start` among the first `len` entries.
fn inverse_run(vals: &[usize], start: usize, len: usize) -> Vec<usize> {
    let slice = &vals[..len];
    let mut out = Vec::new();
    let mut v = start;
    let mut last: Option<usize> = None;
    while let Some(i) = slice.iter().position(|&x| x == v) {
        if last.is_some_and(|l| i < l) {
            break;
        }
        out.push(i);
        last = Some(i);
        v += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chessboard::chessboard;
    use crate::perm::{enumerate_class, is_embedding, perm};

    fn s213(n: usize) -> Vec<Permutation> {
        enumerate_class(n, &[perm("213")])
    }

    #[test]
    fn small_cases() {
        assert_eq!(mu(1), perm("1"));
        assert_eq!(mu(2), perm("231"));
        assert_eq!(mu(3), perm("25341"));
        assert_eq!(mu(6).len(), 15);
        assert_eq!(mu(0), Permutation::empty());
    }

    #[test]
    fn length_formula() {
        for n in 1..=60 {
            assert_eq!(mu(n).len(), mu_len(n), "n = {n}");
        }
        for n in 1..=200 {
            assert_eq!(mu_board(n).total(), mu_len(n));
        }
    }

    #[test]
    fn board_recursion() {
        for n in 3..=12 {
            let b = chessboard(&mu(n)).unwrap();
            assert_eq!(b, mu_board(n));
            assert_eq!(b.get(n, 1), 1);
            assert_eq!(b.get(n - 1, 2), 2);
            for i in 1..=n - 2 {
                assert_eq!(b.get(i, 2), 1);
            }
            assert_eq!(b.sub_board(1..=n - 2, 3..=n), mu_board(n - 2));
        }
    }

    #[test]
    fn embeds_321_in_mu3() {
        let pos = embed_into_mu(&perm("321"), 3).unwrap();
        assert!(is_embedding(&mu(3), &perm("321"), &pos));
        assert_eq!(pos, [1, 2, 4]);
    }

    #[test]
    fn identity_embeds() {
        for n in 1..=8 {
            let id = Permutation::identity(n);
            let pos = embed_into_mu(&id, n).unwrap();
            assert!(is_embedding(&mu(n), &id, &pos), "n = {n}");
        }
    }

    #[test]
    fn exhaustive_up_to_7() {
        for n in 1..=7 {
            let m = mu(n);
            for p in s213(n) {
                let pos = embed_into_mu(&p, n).unwrap();
                assert!(is_embedding(&m, &p, &pos), "{p} into mu({n}) at {pos:?}");
            }
        }
    }

    #[test]
    fn shorter_patterns_embed() {
        let m = mu(7);
        for k in 0..7 {
            for p in s213(k) {
                let pos = embed_into_mu(&p, 7).unwrap();
                assert!(is_embedding(&m, &p, &pos));
            }
        }
    }

    #[test]
    fn rejects_213() {
        assert!(matches!(embed_into_mu(&perm("213"), 3), Err(Error::Contains213(_))));
        assert!(embed_into_mu(&perm("21"), 1).is_err());
    }

    /// Sub-boards: columns n−j+1..n−i+1, rows i..j of μ_n hold an
    /// `S_{j−i+1}(213)`-superpattern.
    #[test]
    fn windows_are_superpatterns() {
        for n in 1..=7 {
            let m = mu(n);
            let b = mu_board(n);
            let rows_of: Vec<usize> = {
                // Row index of each value.
                let mut out = vec![0; m.len() + 1];
                let mut v = 1;
                for r in 1..=n {
                    let cnt: usize = (1..=n).map(|c| b.get(c, r) as usize).sum();
                    for _ in 0..cnt {
                        out[v] = r;
                        v += 1;
                    }
                }
                out
            };
            let cols_of: Vec<usize> = {
                let mut out = Vec::new();
                for (ci, run) in m.ascending_runs().iter().enumerate() {
                    out.extend(run.clone().map(|_| ci + 1));
                }
                out
            };
            for i in 1..=n {
                for j in i..=n {
                    let vals: Vec<usize> = m
                        .values()
                        .iter()
                        .enumerate()
                        .filter(|&(pos, &v)| {
                            (n + 1 - j..=n + 1 - i).contains(&cols_of[pos]) && (i..=j).contains(&rows_of[v])
                        })
                        .map(|(_, &v)| v)
                        .collect();
                    let sub = Permutation::standardize(&vals);
                    for p in s213(j - i + 1) {
                        assert!(sub.contains(&p).is_some(), "n={n} i={i} j={j}: {sub} misses {p}");
                    }
                }
            }
        }
    }
}
