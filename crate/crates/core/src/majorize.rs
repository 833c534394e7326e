//! The sawtooth sequence `ξ_i = i XOR (i − 1)` (1, 3, 1, 7, 1, 3, 1, 15, …),
//! its partial sums `ζ`, and subsequence majorization.

use crate::error::{Error, Result};

/// `ξ_i`. Rejects `i = 0`.
pub fn xi(i: u64) -> Result<u64> {
    if i == 0 {
        return Err(Error::OutOfRange("xi is indexed from 1".into()));
    }
    Ok(xi_unchecked(i))
}

pub(crate) fn xi_unchecked(i: u64) -> u64 {
    i ^ (i - 1)
}

/// `ζ_n = ξ_1 + … + ξ_n`, summed bit by bit: the terms equal to `2^(b+1) − 1`
/// occur `⌊n / 2^b⌋ − ⌊n / 2^(b+1)⌋` times.
pub fn zeta(n: u64) -> u64 {
    let mut total = 0u64;
    let mut b = 0;
    while b < 64 && (n >> b) > 0 {
        let count = (n >> b) - (n >> (b + 1));
        total += count * ((1u64 << (b + 1)) - 1);
        b += 1;
    }
    total
}

/// Indices `j_1 < … < j_k ≤ Σα` (1-based) with `α_i ≤ ξ_{j_i}`.
///
/// Recursive: with `q` the largest power of two `≤ Σα`, the first `α_i`
/// whose prefix sum reaches `q` takes `ξ_q`; the parts on either side recurse
/// into the copies of the sequence before and after index `q`.
pub fn majorize(alpha: &[u64]) -> Result<Vec<u64>> {
    if alpha.is_empty() {
        return Err(Error::OutOfRange("majorize needs a nonempty sequence".into()));
    }
    if alpha.contains(&0) {
        return Err(Error::OutOfRange("majorize needs positive entries".into()));
    }
    let mut out = vec![0; alpha.len()];
    fill(alpha, 0, &mut out);
    Ok(out)
}

fn fill(alpha: &[u64], offset: u64, out: &mut [u64]) {
    if alpha.is_empty() {
        return;
    }
    let n: u64 = alpha.iter().sum();
    let q = 1u64 << (63 - n.leading_zeros());
    let mut prefix = 0;
    let i = alpha
        .iter()
        .position(|&a| {
            prefix += a;
            prefix >= q
        })
        .expect("total reaches q");
    out[i] = offset + q;
    let (left_out, rest) = out.split_at_mut(i);
    fill(&alpha[..i], offset, left_out);
    fill(&alpha[i + 1..], offset + q, &mut rest[1..]);
}

/// Convenience wrapper for `usize` block sizes.
pub fn majorize_usize(alpha: &[usize]) -> Result<Vec<usize>> {
    let a: Vec<u64> = alpha.iter().map(|&x| x as u64).collect();
    Ok(majorize(&a)?.into_iter().map(|j| j as usize).collect())
}
