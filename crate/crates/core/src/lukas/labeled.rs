use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lukas::{word_from_pf, LukasiewiczWord};
use crate::pf::PrefVector;

/// A Łukasiewicz word together with an ordered set partition
/// `(β_1, …, β_n)` of `[n]` with `|β_i| = ℓ_i + 1`. Empty blocks are kept,
/// so there is always one block per step; each block is sorted ascending.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "LabeledRepr", into = "LabeledRepr")]
pub struct LabeledLukasiewiczPath {
    word: LukasiewiczWord,
    blocks: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct LabeledRepr {
    word: LukasiewiczWord,
    blocks: Vec<Vec<u32>>,
}

impl TryFrom<LabeledRepr> for LabeledLukasiewiczPath {
    type Error = Error;
    fn try_from(r: LabeledRepr) -> Result<Self> {
        LabeledLukasiewiczPath::new(r.word, r.blocks)
    }
}

impl From<LabeledLukasiewiczPath> for LabeledRepr {
    fn from(p: LabeledLukasiewiczPath) -> Self {
        LabeledRepr {
            word: p.word,
            blocks: p.blocks,
        }
    }
}

impl LabeledLukasiewiczPath {
    /// Validates block sizes against the word and that the blocks partition
    /// `[n]`. Blocks are sorted on the way in.
    pub fn new(word: LukasiewiczWord, mut blocks: Vec<Vec<u32>>) -> Result<Self> {
        let n = word.len();
        if blocks.len() != n {
            return Err(Error::InvalidInput(format!(
                "{} blocks for a word of length {n}",
                blocks.len()
            )));
        }
        let mut seen = vec![false; n + 1];
        for (i, (block, &step)) in blocks.iter_mut().zip(word.steps()).enumerate() {
            if block.len() as i64 != step as i64 + 1 {
                return Err(Error::InvalidInput(format!(
                    "block {} has {} labels but step {} needs {}",
                    i + 1,
                    block.len(),
                    step,
                    step + 1
                )));
            }
            block.sort_unstable();
            for &label in block.iter() {
                if label < 1 || label as usize > n || seen[label as usize] {
                    return Err(Error::InvalidInput(format!(
                        "label {label} is out of range or repeated"
                    )));
                }
                seen[label as usize] = true;
            }
        }
        Ok(LabeledLukasiewiczPath { word, blocks })
    }

    pub fn word(&self) -> &LukasiewiczWord {
        &self.word
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// `block_of[k]` = index `m` (1-based) of the block holding label `k`.
    fn block_of(&self) -> Vec<u32> {
        let mut block_of = vec![0u32; self.len() + 1];
        for (m, block) in self.blocks.iter().enumerate() {
            for &k in block {
                block_of[k as usize] = m as u32 + 1;
            }
        }
        block_of
    }
}

/// Groups cars by preferred spot.
pub fn labeled_path_from_pf(p: &PrefVector) -> Result<LabeledLukasiewiczPath> {
    let word = word_from_pf(p)?;
    let mut blocks = vec![Vec::new(); p.len()];
    for (car, &pref) in p.as_slice().iter().enumerate() {
        blocks[pref as usize - 1].push(car as u32 + 1);
    }
    LabeledLukasiewiczPath::new(word, blocks)
}

/// `α_k = m` whenever `k ∈ β_m`.
pub fn pf_from_labeled_path(l: &LabeledLukasiewiczPath) -> PrefVector {
    PrefVector::from_trusted(l.block_of()[1..].to_vec())
}

/// Concatenation of the (sorted) blocks, a permutation of `[n]` in
/// one-line notation.
pub fn alpha_permutation(l: &LabeledLukasiewiczPath) -> Vec<u32> {
    l.blocks.iter().flatten().copied().collect()
}

/// Inverse of a permutation of `[n]` in one-line notation.
pub fn inverse_permutation(perm: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; perm.len()];
    for (i, &v) in perm.iter().enumerate() {
        inv[v as usize - 1] = i as u32 + 1;
    }
    inv
}

/// Descent, ascent and tie sets read off the block structure of a labeled
/// path.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct PathStatSets {
    pub descent_set: BTreeSet<usize>,
    pub ascent_set: BTreeSet<usize>,
    pub tie_set: BTreeSet<usize>,
}

/// `i` is a tie when `i` and `i+1` share a block, a descent when `i+1`
/// lies in an earlier block than `i`, and an ascent when it lies later.
pub fn path_stat_sets(l: &LabeledLukasiewiczPath) -> PathStatSets {
    let block_of = l.block_of();
    let mut out = PathStatSets::default();
    for i in 1..l.len() {
        let (j, m) = (block_of[i], block_of[i + 1]);
        let set = match m.cmp(&j) {
            std::cmp::Ordering::Equal => &mut out.tie_set,
            std::cmp::Ordering::Less => &mut out.descent_set,
            std::cmp::Ordering::Greater => &mut out.ascent_set,
        };
        set.insert(i);
    }
    out
}
