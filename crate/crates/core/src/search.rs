//! Exhaustive searches for shortest superpatterns.
//!
//! For a class closed under prepending a new minimum (no basis element
//! starts with 1, as for `{213}`), deleting the first entry of an
//! `S_n`-superpattern leaves an `S_{n−1}`-superpattern. The staged search
//! builds every `S_n`-superpattern of length `L` by prepending one entry to
//! every `S_{n−1}`-superpattern of length `L − 1`, down to all permutations
//! of length `L − n + 1`. Other classes are searched over all permutations,
//! halved by inversion when the basis is closed under it.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{all_permutations, enumerate_class, perm, Permutation};
use crate::superpattern::{mu, mu_len};

/// Limits on a search. Exceeding either makes the result indeterminate.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn seconds(s: f64) -> Self {
        Budget { max_nodes: None, max_time: Some(Duration::from_secs_f64(s)) }
    }

    pub fn nodes(n: u64) -> Self {
        Budget { max_nodes: Some(n), max_time: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchOutcome {
    /// Shortest length, with the first superpattern of that length found.
    Determined { length: usize, witness: Permutation },
    /// Stopped early; no superpattern is shorter than `lower_bound`.
    Indeterminate { reason: String, lower_bound: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub nodes: u64,
    pub seconds: f64,
}

impl SearchReport {
    pub fn answer(&self) -> Option<usize> {
        match &self.outcome {
            SearchOutcome::Determined { length, .. } => Some(*length),
            SearchOutcome::Indeterminate { .. } => None,
        }
    }

    /// `{"answer", "witness", "nodes", "seconds"}` or
    /// `{"indeterminate", "lower_bound", "nodes", "seconds"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = match &self.outcome {
            SearchOutcome::Determined { length, witness } => {
                serde_json::json!({ "answer": length, "witness": witness.values() })
            }
            SearchOutcome::Indeterminate { reason, lower_bound } => {
                serde_json::json!({ "indeterminate": reason, "lower_bound": lower_bound })
            }
        };
        v["nodes"] = self.nodes.into();
        v["seconds"] = self.seconds.into();
        v
    }
}

/// Tests whether a permutation contains every member of a fixed set of
/// patterns of one length.
///
/// Patterns are stored in a trie keyed by the rank of each entry among the
/// entries before it. The search picks positions left to right, follows the
/// trie and skips subtrees whose patterns have all been found.
pub struct Checker {
    k: usize,
    members: Vec<Permutation>,
    /// `child[node * (k + 1) + rank]`, `NONE` if absent.
    child: Vec<u32>,
    /// Patterns below each node.
    below: Vec<u32>,
    /// Trie path of each pattern, root first.
    paths: Vec<Vec<usize>>,
    /// A pattern that was missing from a recent failed check.
    hint: AtomicUsize,
}

const NONE: u32 = u32::MAX;

impl Checker {
    pub fn new(members: Vec<Permutation>) -> Self {
        let k = members.first().map_or(0, Permutation::len);
        let stride = k + 1;
        let mut child = vec![NONE; stride];
        let mut below = vec![0u32];
        let mut paths = Vec::with_capacity(members.len());
        for p in &members {
            assert_eq!(p.len(), k, "patterns must share one length");
            assert!(k <= 16, "patterns longer than 16 are not supported");
            let v = p.values();
            let mut node = 0usize;
            let mut path = vec![0];
            below[0] += 1;
            for j in 0..k {
                let rank = v[..j].iter().filter(|&&x| x < v[j]).count();
                let slot = node * stride + rank;
                if child[slot] == NONE {
                    child[slot] = below.len() as u32;
                    below.push(0);
                    child.extend(std::iter::repeat_n(NONE, stride));
                }
                node = child[slot] as usize;
                below[node] += 1;
                path.push(node);
            }
            paths.push(path);
        }
        Checker { k, members, child, below, paths, hint: AtomicUsize::new(0) }
    }

    /// All of `S_k(forbidden)`.
    pub fn for_class(forbidden: &[Permutation], k: usize) -> Self {
        Checker::new(enumerate_class(k, forbidden))
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn check(&self, sigma: &[usize]) -> bool {
        if self.members.is_empty() {
            return true;
        }
        if self.k > sigma.len() {
            return false;
        }
        let mut chosen = [0usize; 16];
        let mut path = [0usize; 17];
        let mut left = vec![0u32; self.below.len()];
        let hint = self.hint.load(Ordering::Relaxed);
        for &x in &self.paths[hint] {
            left[x] = 1;
        }
        if !self.search(sigma, 0, 0, &mut chosen, &mut path, &mut left) {
            return false;
        }
        left.copy_from_slice(&self.below);
        if self.search(sigma, 0, 0, &mut chosen, &mut path, &mut left) {
            return true;
        }
        if let Some(m) = self.paths.iter().position(|p| left[p[self.k]] > 0) {
            self.hint.store(m, Ordering::Relaxed);
        }
        false
    }

    fn search(&self, sigma: &[usize], start: usize, depth: usize, chosen: &mut [usize], path: &mut [usize], left: &mut [u32]) -> bool {
        let k = self.k;
        let node = path[depth];
        for q in start..=sigma.len() - (k - depth) {
            let v = sigma[q];
            let rank = chosen[..depth].iter().filter(|&&c| c < v).count();
            let next = self.child[node * (k + 1) + rank];
            if next == NONE || left[next as usize] == 0 {
                continue;
            }
            path[depth + 1] = next as usize;
            if depth + 1 == k {
                for &x in &path[..=k] {
                    left[x] -= 1;
                }
                if left[0] == 0 {
                    return true;
                }
            } else {
                chosen[depth] = v;
                if self.search(sigma, q + 1, depth + 1, chosen, path, left) {
                    return true;
                }
            }
            if left[node] == 0 {
                return false;
            }
        }
        false
    }
}

/// Every member of `S_n(forbidden)` is a pattern of `sigma`.
pub fn is_superpattern(sigma: &Permutation, forbidden: &[Permutation], n: usize) -> bool {
    Checker::for_class(forbidden, n).check(sigma.values())
}

/// `v` followed by `tau`, entries `>= v` of `tau` raised by one.
pub fn prepend(v: usize, tau: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(tau.len() + 1);
    out.push(v);
    out.extend(tau.iter().map(|&x| if x >= v { x + 1 } else { x }));
    out
}

/// `tau` with a new entry of value `v` at position `p`.
pub fn insert(p: usize, v: usize, tau: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = tau.iter().map(|&x| if x >= v { x + 1 } else { x }).collect();
    out.insert(p, v);
    out
}

fn closed_under_new_minimum(forbidden: &[Permutation]) -> bool {
    forbidden.iter().all(|b| b.values().first() != Some(&1))
}

fn closed_under_inverse(forbidden: &[Permutation]) -> bool {
    forbidden.iter().all(|b| forbidden.contains(&b.inverse()))
}

struct Limits {
    budget: Budget,
    start: Instant,
    nodes: AtomicU64,
    stop: AtomicBool,
}

impl Limits {
    fn new(budget: Budget) -> Self {
        Limits { budget, start: Instant::now(), nodes: AtomicU64::new(0), stop: AtomicBool::new(false) }
    }

    /// Counts a node; false once the budget is spent.
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let over_nodes = self.budget.max_nodes.is_some_and(|m| n > m);
        let over_time = n.is_multiple_of(1024) && self.budget.max_time.is_some_and(|t| self.start.elapsed() > t);
        if over_nodes || over_time {
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn exhausted(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }

    fn report(&self, outcome: SearchOutcome) -> SearchReport {
        SearchReport {
            outcome,
            nodes: self.nodes.load(Ordering::Relaxed),
            seconds: self.start.elapsed().as_secs_f64(),
        }
    }
}

/// Staged enumeration of all superpatterns for `checkers[0..]`, one level
/// per prepended entry. `visit` returns true to stop.
fn staged_dfs<F>(checkers: &[Checker], level: usize, tau: Vec<usize>, limits: &Limits, visit: &F) -> Option<Vec<usize>>
where
    F: Fn(&[usize]) -> bool + Sync,
{
    if level == checkers.len() {
        return visit(&tau).then_some(tau);
    }
    for v in 1..=tau.len() + 1 {
        if !limits.tick() {
            return None;
        }
        let sigma = prepend(v, &tau);
        if checkers[level].check(&sigma) {
            if let Some(found) = staged_dfs(checkers, level + 1, sigma, limits, visit) {
                return Some(found);
            }
        }
    }
    None
}

/// Runs `visit` on every `S_n(forbidden)`-superpattern of length `len`, in
/// parallel, stopping when it returns true. Returns the first stopping
/// permutation in enumeration order.
fn staged_superpatterns<F>(forbidden: &[Permutation], n: usize, len: usize, limits: &Limits, visit: F) -> Option<Vec<usize>>
where
    F: Fn(&[usize]) -> bool + Sync,
{
    if n == 0 || len < n {
        return None;
    }
    let checkers: Vec<Checker> = (2..=n).map(|k| Checker::for_class(forbidden, k)).collect();
    let roots: Vec<Vec<usize>> = all_permutations(len - n + 1).into_iter().map(Permutation::into_values).collect();
    roots.into_par_iter().find_map_first(|tau| staged_dfs(&checkers, 0, tau, limits, &visit))
}

/// Length of the shortest `S_n(forbidden)`-superpattern, trying lengths
/// `n, n + 1, …` and exhausting each before moving on.
pub fn minimal_superpattern_length(forbidden: &[Permutation], n: usize, budget: Budget) -> SearchReport {
    let limits = Limits::new(budget);
    let class = Checker::for_class(forbidden, n);
    if class.members().is_empty() || n == 0 {
        return limits.report(SearchOutcome::Determined { length: 0, witness: Permutation::empty() });
    }
    let staged = closed_under_new_minimum(forbidden);
    let by_inverse = closed_under_inverse(forbidden);
    for len in n.. {
        let witness = if staged {
            staged_superpatterns(forbidden, n, len, &limits, |s| class.check(s))
        } else {
            plain_search(&class, len, by_inverse, &limits)
        };
        if let Some(w) = witness {
            return limits.report(SearchOutcome::Determined {
                length: len,
                witness: Permutation::new(w).expect("search yields permutations"),
            });
        }
        if limits.exhausted() {
            return limits.report(SearchOutcome::Indeterminate {
                reason: format!("budget exhausted while searching length {len}"),
                lower_bound: len,
            });
        }
    }
    unreachable!()
}

fn plain_search(class: &Checker, len: usize, by_inverse: bool, limits: &Limits) -> Option<Vec<usize>> {
    // Split on the first entry; each branch walks its permutations in
    // lexicographic order.
    (1..=len).into_par_iter().find_map_first(|first| {
        let mut rest: Vec<usize> = (1..=len).filter(|&v| v != first).collect();
        loop {
            if !limits.tick() {
                return None;
            }
            let mut sigma = Vec::with_capacity(len);
            sigma.push(first);
            sigma.extend_from_slice(&rest);
            let canonical = !by_inverse || {
                let mut inv = vec![0; len];
                for (i, &v) in sigma.iter().enumerate() {
                    inv[v - 1] = i + 1;
                }
                sigma <= inv
            };
            if canonical && class.check(&sigma) {
                return Some(sigma);
            }
            if !next_permutation(&mut rest) {
                return None;
            }
        }
    })
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StagedOutcome {
    /// No candidate extends, so `|μ_n|` is optimal.
    Confirmed { optimal: usize },
    /// A superpattern of length `|μ_n| − 1`.
    Refuted { witness: Permutation },
    Indeterminate { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StagedReport {
    pub n: usize,
    /// `S_{n−1}(213)`-superpatterns of length `|μ_n| − 2`.
    pub candidates: usize,
    pub outcome: StagedOutcome,
    pub nodes: u64,
    pub seconds: f64,
}

/// Two-stage optimality check for `μ_n`: collect every
/// `S_{n−1}(213)`-superpattern of length `|μ_n| − 2`, then try every
/// one-entry insertion into each. Deleting an entry of an
/// `S_n(213)`-superpattern of length `|μ_n| − 1` would give one of the
/// candidates, so if no insertion works, `|μ_n|` is optimal.
pub fn confirm_staged(n: usize, budget: Budget) -> Result<StagedReport> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("the staged check needs n >= 2, got {n}")));
    }
    let limits = Limits::new(budget);
    let forbidden = [perm("213")];
    let target = mu_len(n) - 1;
    let full = Checker::for_class(&forbidden, n);
    if !full.check(mu(n).values()) {
        return Err(Error::Internal(format!("mu_{n} is not a superpattern")));
    }
    let candidates = std::sync::Mutex::new(Vec::new());
    staged_superpatterns(&forbidden, n - 1, target - 1, &limits, |s| {
        candidates.lock().unwrap().push(s.to_vec());
        false
    });
    let candidates = candidates.into_inner().unwrap();
    let report = |outcome| StagedReport {
        n,
        candidates: candidates.len(),
        outcome,
        nodes: limits.nodes.load(Ordering::Relaxed),
        seconds: limits.start.elapsed().as_secs_f64(),
    };
    if limits.exhausted() {
        return Ok(report(StagedOutcome::Indeterminate { reason: "budget exhausted collecting candidates".into() }));
    }
    let witness = candidates.par_iter().find_map_first(|tau| {
        for p in 0..=tau.len() {
            for v in 1..=tau.len() + 1 {
                if !limits.tick() {
                    return None;
                }
                let sigma = insert(p, v, tau);
                if full.check(&sigma) {
                    return Some(sigma);
                }
            }
        }
        None
    });
    Ok(report(match witness {
        Some(w) => StagedOutcome::Refuted { witness: Permutation::new(w).expect("insertion yields a permutation") },
        None if limits.exhausted() => StagedOutcome::Indeterminate { reason: "budget exhausted extending candidates".into() },
        None => StagedOutcome::Confirmed { optimal: target + 1 },
    }))
}

/// The `n = 6` run: candidates of length 13.
pub fn confirm_staged_n6(budget: Budget) -> Result<StagedReport> {
    confirm_staged(6, budget)
}

/// Re-checks permutations the staged search never generates: random
/// length-`len` permutations whose tail is not an `S_{n−1}`-superpattern are
/// confirmed not to be `S_n`-superpatterns by direct containment tests.
/// Returns the first counterexample.
pub fn spot_check_pruning(forbidden: &[Permutation], n: usize, len: usize, samples: usize, seed: u64) -> Option<Permutation> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let tail_class = Checker::for_class(forbidden, n - 1);
    let members = enumerate_class(n, forbidden);
    let mut checked = 0;
    let mut tries = 0;
    while checked < samples && tries < 100 * samples {
        tries += 1;
        let mut v: Vec<usize> = (1..=len).collect();
        v.shuffle(&mut rng);
        let tail = Permutation::standardize(&v[1..]);
        if tail_class.check(tail.values()) {
            continue;
        }
        checked += 1;
        let sigma = Permutation::new(v).unwrap();
        if members.iter().all(|p| sigma.contains(p).is_some()) {
            return Some(sigma);
        }
    }
    None
}
