//! Superpattern constructions and their embeddings.

mod classes;
mod mu;
mod strahler_sp;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{enumerate_class, perm, Permutation};

pub use classes::{
    embed_213_132, embed_213_3412, embed_unimodal, superpattern_213_132, superpattern_213_3412,
    superpattern_213_3412_board, unimodal_superpattern, xi_diagonal_board,
};
pub use mu::{embed_into_mu, mu, mu_board, mu_len};
pub use strahler_sp::{embed_into_strahler_superpattern, strahler_superpattern, strahler_superpattern_len};

/// The classes with a construction in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassTag {
    S213,
    S213_312,
    S213_132,
    S213_3412,
    Strahler(u32),
}

impl ClassTag {
    /// Forbidden patterns defining the class. Strahler classes have no finite
    /// basis here and report `None`.
    pub fn basis(&self) -> Option<Vec<Permutation>> {
        let b = |s: &[&str]| Some(s.iter().map(|x| perm(x)).collect());
        match self {
            ClassTag::S213 => b(&["213"]),
            ClassTag::S213_312 => b(&["213", "312"]),
            ClassTag::S213_132 => b(&["213", "132"]),
            ClassTag::S213_3412 => b(&["213", "3412"]),
            ClassTag::Strahler(_) => None,
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTag::S213 => f.write_str("213"),
            ClassTag::S213_312 => f.write_str("213-312"),
            ClassTag::S213_132 => f.write_str("213-132"),
            ClassTag::S213_3412 => f.write_str("213-3412"),
            ClassTag::Strahler(s) => write!(f, "strahler-{s}"),
        }
    }
}

impl FromStr for ClassTag {
    type Err = Error;

    /// Accepts `213`, `213-312`, `213-132`, `213-3412` and `strahler-S`.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "213" => ClassTag::S213,
            "213-312" => ClassTag::S213_312,
            "213-132" => ClassTag::S213_132,
            "213-3412" => ClassTag::S213_3412,
            _ => match s.strip_prefix("strahler-").map(str::parse::<u32>) {
                Some(Ok(k)) if k >= 2 => ClassTag::Strahler(k),
                _ => {
                    return Err(Error::Parse {
                        location: "class".into(),
                        message: format!("unknown class {s:?}"),
                    })
                }
            },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SuperpatternSpec {
    pub class: ClassTag,
    pub n: usize,
}

impl SuperpatternSpec {
    pub fn new(class: ClassTag, n: usize) -> Result<Self> {
        if let ClassTag::Strahler(s) = class {
            if s < 2 {
                return Err(Error::OutOfRange(format!("Strahler bound must be >= 2, got {s}")));
            }
        }
        Ok(SuperpatternSpec { class, n })
    }

    pub fn build(&self) -> Result<Permutation> {
        let n = self.n;
        Ok(match self.class {
            ClassTag::S213 => mu(n),
            ClassTag::S213_312 => unimodal_superpattern(n),
            ClassTag::S213_132 => superpattern_213_132(n),
            ClassTag::S213_3412 => superpattern_213_3412(n)?,
            ClassTag::Strahler(s) => strahler_superpattern(n, s)?,
        })
    }

    /// Embedding of a class member of length at most `n` into `build()`,
    /// computed by the construction-specific algorithm.
    pub fn embed(&self, p: &Permutation) -> Result<Vec<usize>> {
        match self.class {
            ClassTag::S213 => embed_into_mu(p, self.n),
            ClassTag::S213_312 => embed_unimodal(p, self.n),
            ClassTag::S213_132 => embed_213_132(p, self.n),
            ClassTag::S213_3412 => embed_213_3412(p, self.n),
            ClassTag::Strahler(s) => embed_into_strahler_superpattern(p, self.n, s),
        }
    }

    /// Members of the class of length `n`. Strahler classes are the
    /// tree-augmentations of `S_n(213)` members whose bound is within `s`,
    /// trimmed to those of length exactly `n`.
    pub fn members(&self) -> Vec<Permutation> {
        match self.class.basis() {
            Some(basis) => enumerate_class(self.n, &basis),
            None => {
                let ClassTag::Strahler(s) = self.class else { unreachable!() };
                crate::strahler::tree_augmented_with_bound(self.n, s)
            }
        }
    }
}

/// Outcome of checking a construction against its whole class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub spec: SuperpatternSpec,
    pub length: usize,
    pub checked: usize,
    /// Members whose constructive embedding failed or was not a valid
    /// witness.
    pub counterexamples: Vec<Permutation>,
}

/// Embeds every member of the class and re-checks each witness.
pub fn verify(spec: &SuperpatternSpec) -> Result<VerifyReport> {
    let sp = spec.build()?;
    let members = spec.members();
    let counterexamples: Vec<Permutation> = members
        .par_iter()
        .filter(|p| match spec.embed(p) {
            Ok(pos) => !crate::perm::is_embedding(&sp, p, &pos),
            Err(_) => true,
        })
        .cloned()
        .collect();
    Ok(VerifyReport {
        spec: *spec,
        length: sp.len(),
        checked: members.len(),
        counterexamples,
    })
}

/// `1, |σ|+3, σ + 2, 2`.
pub fn augment(sigma: &Permutation) -> Permutation {
    let n = sigma.len();
    let mut v = Vec::with_capacity(n + 3);
    v.push(1);
    v.push(n + 3);
    v.extend(sigma.values().iter().map(|x| x + 2));
    v.push(2);
    Permutation::from_vec_unchecked(v)
}
