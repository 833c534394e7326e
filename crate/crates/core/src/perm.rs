//! Permutations on `{1..n}` and classical pattern containment.
//!
//! Values are 1-based as in the usual one-line notation; positions handed
//! back by [`Permutation::contains`] are 0-based indices into the haystack.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection on `{1..n}` written in one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation {
                    len: n,
                    reason: format!("value {v} out of range"),
                });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation {
                    len: n,
                    reason: format!("value {v} repeated"),
                });
            }
        }
        Ok(Permutation(values))
    }

    /// Caller guarantees `values` is a bijection on `1..=len`.
    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok(), "{values:?}");
        Permutation(values)
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn decreasing(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    /// The permutation order-isomorphic to `seq`, which must hold distinct values.
    pub fn standardize<T: Ord>(seq: &[T]) -> Self {
        let mut idx: Vec<usize> = (0..seq.len()).collect();
        idx.sort_by(|&a, &b| seq[a].cmp(&seq[b]));
        let mut values = vec![0; seq.len()];
        for (rank, &i) in idx.iter().enumerate() {
            values[i] = rank + 1;
        }
        Permutation(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn into_values(self) -> Vec<usize> {
        self.0
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// Reverse-order image `i ↦ n+1-i` applied to values.
    pub fn complement(&self) -> Permutation {
        let n = self.len();
        Permutation(self.0.iter().map(|&v| n + 1 - v).collect())
    }

    pub fn reverse(&self) -> Permutation {
        Permutation(self.0.iter().rev().copied().collect())
    }

    /// The pattern formed by the entries at `positions` (0-based, any order of
    /// distinct indices is accepted; they are read in increasing order).
    pub fn pattern_at(&self, positions: &[usize]) -> Permutation {
        let mut pos = positions.to_vec();
        pos.sort_unstable();
        let sub: Vec<usize> = pos.iter().map(|&p| self.0[p]).collect();
        Permutation::standardize(&sub)
    }

    /// `self ⊕ other`: `other` placed above and to the right.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let k = self.len();
        let mut v = self.0.clone();
        v.extend(other.0.iter().map(|&x| x + k));
        Permutation(v)
    }

    /// `self ⊖ other`: `other` placed below and to the right.
    pub fn skew_sum(&self, other: &Permutation) -> Permutation {
        let k = other.len();
        let mut v: Vec<usize> = self.0.iter().map(|&x| x + k).collect();
        v.extend_from_slice(&other.0);
        Permutation(v)
    }

    /// Lexicographically smallest embedding of `needle`, if any.
    pub fn contains(&self, needle: &Permutation) -> Option<Vec<usize>> {
        Matcher::new(needle).find(&self.0)
    }

    pub fn contains_pattern(&self, needle: &Permutation) -> bool {
        self.contains(needle).is_some()
    }

    pub fn avoids(&self, forbidden: &[Permutation]) -> bool {
        forbidden.iter().all(|f| !self.contains_pattern(f))
    }

    /// Quadratic test for the pattern 213.
    pub fn avoids_213(&self) -> bool {
        let v = &self.0;
        // For each middle entry b, the smallest earlier entry above b must not
        // be exceeded later on.
        let n = v.len();
        let mut suffix_max = vec![0usize; n + 1];
        for i in (0..n).rev() {
            suffix_max[i] = suffix_max[i + 1].max(v[i]);
        }
        for j in 1..n {
            let b = v[j];
            let a = v[..j].iter().copied().filter(|&a| a > b).min();
            if let Some(a) = a {
                if suffix_max[j + 1] > a {
                    return false;
                }
            }
        }
        true
    }

    /// Maximal ascending runs as half-open position ranges.
    pub fn ascending_runs(&self) -> Vec<std::ops::Range<usize>> {
        let mut runs = Vec::new();
        let mut start = 0;
        for i in 1..=self.len() {
            if i == self.len() || self.0[i] < self.0[i - 1] {
                if i > start {
                    runs.push(start..i);
                }
                start = i;
            }
        }
        runs
    }
}

/// True when the entries of `haystack` at `positions` are order-isomorphic to
/// `needle`, checked over every pair.
pub fn is_embedding(haystack: &Permutation, needle: &Permutation, positions: &[usize]) -> bool {
    if positions.len() != needle.len() {
        return false;
    }
    if positions.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    if positions.last().is_some_and(|&p| p >= haystack.len()) {
        return false;
    }
    let h = haystack.values();
    let p = needle.values();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if (p[i] < p[j]) != (h[positions[i]] < h[positions[j]]) {
                return false;
            }
        }
    }
    true
}

/// Backtracking matcher for one needle, reusable across haystacks.
#[derive(Debug, Clone)]
pub struct Matcher {
    needle: Vec<usize>,
    /// For each needle index, the earlier index holding the next smaller value.
    below: Vec<Option<usize>>,
    /// For each needle index, the earlier index holding the next larger value.
    above: Vec<Option<usize>>,
}

impl Matcher {
    pub fn new(needle: &Permutation) -> Self {
        let p = needle.values();
        let mut below = Vec::with_capacity(p.len());
        let mut above = Vec::with_capacity(p.len());
        for k in 0..p.len() {
            let b = (0..k).filter(|&j| p[j] < p[k]).max_by_key(|&j| p[j]);
            let a = (0..k).filter(|&j| p[j] > p[k]).min_by_key(|&j| p[j]);
            below.push(b);
            above.push(a);
        }
        Matcher {
            needle: p.to_vec(),
            below,
            above,
        }
    }

    pub fn needle_len(&self) -> usize {
        self.needle.len()
    }

    pub fn find(&self, haystack: &[usize]) -> Option<Vec<usize>> {
        let m = self.needle.len();
        if m > haystack.len() {
            return None;
        }
        let mut pos = vec![0usize; m];
        if self.extend(haystack, &mut pos, 0, 0) {
            Some(pos)
        } else {
            None
        }
    }

    pub fn matches(&self, haystack: &[usize]) -> bool {
        self.find(haystack).is_some()
    }

    fn extend(&self, h: &[usize], pos: &mut [usize], k: usize, start: usize) -> bool {
        let m = self.needle.len();
        if k == m {
            return true;
        }
        let lo = self.below[k].map(|j| h[pos[j]]).unwrap_or(0);
        let hi = self.above[k].map(|j| h[pos[j]]).unwrap_or(usize::MAX);
        let last = h.len() - (m - k);
        for l in start..=last {
            let v = h[l];
            if v > lo && v < hi {
                pos[k] = l;
                if self.extend(h, pos, k + 1, l + 1) {
                    return true;
                }
            }
        }
        false
    }
}

/// All members of `S_n(forbidden)` in lexicographic order.
pub fn enumerate_class(n: usize, forbidden: &[Permutation]) -> Vec<Permutation> {
    let mut level = vec![Permutation::empty()];
    for len in 1..=n {
        let mut next = Vec::new();
        for sigma in &level {
            for v in 1..=len {
                let mut vals: Vec<usize> = sigma
                    .values()
                    .iter()
                    .map(|&x| if x >= v { x + 1 } else { x })
                    .collect();
                vals.push(v);
                let cand = Permutation(vals);
                if cand.avoids(forbidden) {
                    next.push(cand);
                }
            }
        }
        level = next;
    }
    level.sort();
    level
}

/// Every permutation of length `n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    enumerate_class(n, &[])
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses the single-line format `"2 5 3 1 4"`. A string of digits with no
    /// separators (`"25314"`) is read one digit per entry.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<usize> = if !s.contains(|c: char| c.is_whitespace() || c == ',')
            && s.len() > 1
            && s.len() <= 9
        {
            s.chars()
                .enumerate()
                .map(|(i, c)| {
                    c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse {
                        location: format!("column {}", i + 1),
                        message: format!("unexpected character {c:?}"),
                    })
                })
                .collect::<Result<_>>()?
        } else {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .enumerate()
                .map(|(i, t)| {
                    t.parse::<usize>().map_err(|e| Error::Parse {
                        location: format!("field {}", i + 1),
                        message: format!("{t:?}: {e}"),
                    })
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

/// Shorthand for tests and examples: `perm("25314")`. Panics on bad input.
pub fn perm(s: &str) -> Permutation {
    s.parse().unwrap_or_else(|e| panic!("bad permutation {s:?}: {e}"))
}
