//! Superpatterns for the subclasses `S_n(213, 312)`, `S_n(213, 132)` and
//! `S_n(213, 3412)`, each with a direct embedding.

use crate::chessboard::{from_chessboard, Chessboard};
use crate::error::{Error, Result};
use crate::majorize::{majorize_usize, xi_unchecked, zeta};
use crate::perm::{perm, Permutation};

/// `1 3 5 … (2n−1) (2n−2) … 4 2`.
pub fn unimodal_superpattern(n: usize) -> Permutation {
    if n == 0 {
        return Permutation::empty();
    }
    let mut v: Vec<usize> = (1..=n).map(|i| 2 * i - 1).collect();
    v.extend((1..n).rev().map(|i| 2 * i));
    Permutation::from_vec_unchecked(v)
}

/// Embeds a unimodal permutation (increasing then decreasing) into
/// `unimodal_superpattern(n)`: values left of the maximum go to odd values,
/// values right of it to even values.
pub fn embed_unimodal(p: &Permutation, n: usize) -> Result<Vec<usize>> {
    let k = p.len();
    if k > n {
        return Err(Error::OutOfRange(format!("pattern of length {k} exceeds {n}")));
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let vals = p.values();
    let peak = vals.iter().position(|&v| v == k).unwrap();
    let unimodal = vals[..=peak].windows(2).all(|w| w[0] < w[1]) && vals[peak..].windows(2).all(|w| w[0] > w[1]);
    if !unimodal {
        return Err(Error::OutOfRange(format!("{p} is not unimodal")));
    }
    // The pattern's largest value lands on 2n − 1; shift so that value `k`
    // maps to superpattern value `n`.
    let shift = n - k;
    Ok(vals
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let v = v + shift;
            if i <= peak {
                v - 1
            } else {
                2 * n - 1 - v
            }
        })
        .collect())
}

/// Board with `ξ_1, …, ξ_n` on the top-left to bottom-right diagonal.
pub fn xi_diagonal_board(n: usize) -> Chessboard {
    let mut b = Chessboard::zeros(n, n);
    for c in 1..=n {
        b.set(c, n + 1 - c, xi_unchecked(c as u64) as u32);
    }
    b
}

/// The `S_n(213, 132)`-superpattern of length `ζ_n`.
pub fn superpattern_213_132(n: usize) -> Permutation {
    if n == 0 {
        return Permutation::empty();
    }
    from_chessboard(&xi_diagonal_board(n)).expect("diagonal board is canonical")
}

/// Members of `S_n(213, 132)` are descending sequences of ascending runs of
/// consecutive values. Run `i` goes to the start of diagonal cell `j_i`, with
/// the `j_i` majorizing the run lengths.
pub fn embed_213_132(p: &Permutation, n: usize) -> Result<Vec<usize>> {
    if p.len() > n {
        return Err(Error::OutOfRange(format!("pattern of length {} exceeds {n}", p.len())));
    }
    if p.is_empty() {
        return Ok(Vec::new());
    }
    let runs = p.ascending_runs();
    let vals = p.values();
    let mut next_top = p.len();
    for r in runs.iter().map(|r| &vals[r.clone()]) {
        // Each run must be the block directly below the previous one.
        if r[r.len() - 1] != next_top || r.windows(2).any(|w| w[1] != w[0] + 1) {
            return Err(Error::OutOfRange(format!("{p} is not in S(213, 132)")));
        }
        next_top -= r.len();
    }
    let lens: Vec<usize> = runs.iter().map(|r| r.len()).collect();
    let cells = majorize_usize(&lens)?;
    let mut out = Vec::with_capacity(p.len());
    for (len, j) in lens.iter().zip(cells) {
        let start = zeta(j as u64 - 1) as usize;
        out.extend(start..start + len);
    }
    Ok(out)
}

/// The `S_n(213, 3412)`-superpattern `σ_n` of length `3n − 4`, `n ≥ 3`:
/// `σ_3 = 25314` and `σ_n = 1, 3n−4, σ_{n−1} + 2, 2`.
pub fn superpattern_213_3412(n: usize) -> Result<Permutation> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("the 3n-4 construction needs n >= 3, got {n}")));
    }
    let mut v = perm("25314").into_values();
    for m in 4..=n {
        let len = 3 * m - 4;
        let mut next = Vec::with_capacity(len);
        next.push(1);
        next.push(len);
        next.extend(v.iter().map(|x| x + 2));
        next.push(2);
        v = next;
    }
    Ok(Permutation::from_vec_unchecked(v))
}

/// The same permutation read off its `(2n−3) × (2n−3)` board: `25314` in the
/// centre, ones on the rest of the main diagonal and on the diagonal from
/// the bottom-left corner up to the centre.
pub fn superpattern_213_3412_board(n: usize) -> Result<Chessboard> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("the 3n-4 construction needs n >= 3, got {n}")));
    }
    let size = 2 * n - 3;
    let mut b = Chessboard::zeros(size, size);
    for c in 1..=size {
        b.set(c, size + 1 - c, 1);
    }
    for c in 1..=n - 3 {
        b.set(c, c, 1);
    }
    let centre = crate::chessboard::chessboard(&perm("25314"))?;
    for c in 1..=3 {
        for r in 1..=3 {
            let v = centre.get(c, r);
            if v > 0 {
                b.set(n - 3 + c, n - 3 + r, v);
            }
        }
    }
    Ok(b)
}

/// Embeds `p ∈ S_m(213, 3412)`, `m ≤ n`, into `σ_n`, peeling one element per
/// level: a leading minimum to the first element, a trailing minimum to the
/// last, or a leading maximum to the second.
pub fn embed_213_3412(p: &Permutation, n: usize) -> Result<Vec<usize>> {
    let n = n.max(3);
    if p.len() > n {
        return Err(Error::OutOfRange(format!("pattern of length {} exceeds {n}", p.len())));
    }
    let mut out = vec![0; p.len()];
    // (pattern indices still to place, their values)
    let mut idx: Vec<usize> = (0..p.len()).collect();
    let mut offset = 0;
    let mut level = n;
    loop {
        let m = idx.len();
        if m == 0 {
            return Ok(out);
        }
        if level == 3 {
            let vals: Vec<usize> = idx.iter().map(|&i| p.values()[i]).collect();
            let sub = Permutation::standardize(&vals);
            let w = perm("25314")
                .contains(&sub)
                .ok_or_else(|| Error::Internal(format!("{sub} missing from 25314")))?;
            for (&i, &q) in idx.iter().zip(&w) {
                out[i] = offset + q;
            }
            return Ok(out);
        }
        let len = 3 * level - 4;
        if m == level {
            let vals: Vec<usize> = idx.iter().map(|&i| p.values()[i]).collect();
            let lo = *vals.iter().min().unwrap();
            let hi = *vals.iter().max().unwrap();
            if vals[0] == lo {
                out[idx[0]] = offset;
                idx.remove(0);
            } else if vals[m - 1] == lo {
                out[idx[m - 1]] = offset + len - 1;
                idx.pop();
            } else if vals[0] == hi {
                out[idx[0]] = offset + 1;
                idx.remove(0);
            } else {
                return Err(Error::OutOfRange(format!("{p} is not in S(213, 3412)")));
            }
        }
        offset += 2;
        level -= 1;
    }
}
