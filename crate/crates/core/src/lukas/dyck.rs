use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lukas::{pf_from_labeled_path, LabeledLukasiewiczPath, LukasiewiczWord};
use crate::pf::PrefVector;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum DyckStep {
    North,
    East,
}

/// A path from `(0,0)` to `(n,n)` weakly above the diagonal, with the cars
/// `1..=n` placed on the north steps, increasing up each vertical run.
///
/// Stored as its step word plus the labels of the north steps in the order
/// they occur.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "DyckRepr", into = "DyckRepr")]
pub struct LabeledDyckPath {
    steps: Vec<DyckStep>,
    labels: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct DyckRepr {
    word: String,
    labels: Vec<u32>,
}

impl TryFrom<DyckRepr> for LabeledDyckPath {
    type Error = Error;
    fn try_from(r: DyckRepr) -> Result<Self> {
        LabeledDyckPath::parse(&r.word, r.labels)
    }
}

impl From<LabeledDyckPath> for DyckRepr {
    fn from(d: LabeledDyckPath) -> Self {
        DyckRepr {
            word: d.word(),
            labels: d.labels,
        }
    }
}

impl LabeledDyckPath {
    pub fn new(steps: Vec<DyckStep>, labels: Vec<u32>) -> Result<Self> {
        let norths = steps.iter().filter(|&&s| s == DyckStep::North).count();
        let n = steps.len() / 2;
        if !steps.len().is_multiple_of(2) || norths != n {
            return Err(Error::InvalidInput(format!(
                "Dyck word needs equally many N and E steps, got {norths} N of {}",
                steps.len()
            )));
        }
        let mut height = 0i64;
        for (i, s) in steps.iter().enumerate() {
            height += if *s == DyckStep::North { 1 } else { -1 };
            if height < 0 {
                return Err(Error::InvalidInput(format!(
                    "Dyck word dips below the diagonal at step {}",
                    i + 1
                )));
            }
        }
        if labels.len() != n {
            return Err(Error::InvalidInput(format!(
                "{} labels for {n} north steps",
                labels.len()
            )));
        }
        let mut seen = vec![false; n + 1];
        for &l in &labels {
            if l < 1 || l as usize > n || seen[l as usize] {
                return Err(Error::InvalidInput(format!("label {l} is out of range or repeated")));
            }
            seen[l as usize] = true;
        }
        let d = LabeledDyckPath { steps, labels };
        for col in d.columns() {
            if col.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidInput(format!(
                    "labels {col:?} do not increase up their column"
                )));
            }
        }
        Ok(d)
    }

    /// Parses a word over `N`/`E`; whitespace is ignored.
    pub fn parse(word: &str, labels: Vec<u32>) -> Result<Self> {
        let steps = word
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'N' => Ok(DyckStep::North),
                'E' => Ok(DyckStep::East),
                other => Err(Error::InvalidInput(format!("unexpected {other:?} in Dyck word"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(steps, labels)
    }

    pub fn steps(&self) -> &[DyckStep] {
        &self.steps
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn word(&self) -> String {
        self.steps
            .iter()
            .map(|s| if *s == DyckStep::North { 'N' } else { 'E' })
            .collect()
    }

    /// Labels on the north steps of each column `1..=n`; column `j` is the
    /// run of north steps preceded by `j − 1` east steps.
    pub fn columns(&self) -> Vec<Vec<u32>> {
        let n = self.labels.len();
        let mut cols = vec![Vec::new(); n];
        let mut col = 0;
        let mut next_label = self.labels.iter();
        for s in &self.steps {
            match s {
                DyckStep::North => cols[col].push(*next_label.next().expect("one label per north step")),
                DyckStep::East => col += 1,
            }
        }
        cols
    }
}

impl fmt::Display for LabeledDyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

/// Column `i` gets `ℓ_i + 1` north steps labeled by `β_i`, then an east
/// step.
pub fn dyck_from_labeled_lukas(l: &LabeledLukasiewiczPath) -> LabeledDyckPath {
    let mut steps = Vec::with_capacity(2 * l.len());
    let mut labels = Vec::with_capacity(l.len());
    for block in l.blocks() {
        steps.extend(std::iter::repeat_n(DyckStep::North, block.len()));
        steps.push(DyckStep::East);
        labels.extend_from_slice(block);
    }
    LabeledDyckPath { steps, labels }
}

/// Column heights minus one give the word; column labels give the blocks.
pub fn lukas_from_labeled_dyck(d: &LabeledDyckPath) -> Result<LabeledLukasiewiczPath> {
    let blocks = d.columns();
    let word = LukasiewiczWord::new(blocks.iter().map(|b| b.len() as i32 - 1).collect())?;
    LabeledLukasiewiczPath::new(word, blocks)
}

/// Classical reading: `α_i = j` when label `i` sits in column `j`.
pub fn pf_from_labeled_dyck(d: &LabeledDyckPath) -> PrefVector {
    let mut alpha = vec![0u32; d.labels.len()];
    for (j, col) in d.columns().iter().enumerate() {
        for &label in col {
            alpha[label as usize - 1] = j as u32 + 1;
        }
    }
    PrefVector::from_trusted(alpha)
}

/// Reading through the labeled Łukasiewicz path instead; agrees with
/// [`pf_from_labeled_dyck`].
pub fn pf_from_labeled_dyck_via_lukas(d: &LabeledDyckPath) -> Result<PrefVector> {
    Ok(pf_from_labeled_path(&lukas_from_labeled_dyck(d)?))
}
