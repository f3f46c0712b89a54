//! Łukasiewicz words and paths, height sequences and areas, labeled paths,
//! and the correspondences with parking functions and labeled Dyck paths.

use serde::{Deserialize, Serialize};

use crate::combinat::multinomial;
use crate::error::{Error, Result};
use crate::pf::{EnumLimit, PrefVector};
use crate::Integer;

mod dyck;
mod labeled;

pub use dyck::{
    dyck_from_labeled_lukas, lukas_from_labeled_dyck, pf_from_labeled_dyck, pf_from_labeled_dyck_via_lukas, DyckStep,
    LabeledDyckPath,
};
pub use labeled::{
    alpha_permutation, inverse_permutation, labeled_path_from_pf, path_stat_sets, pf_from_labeled_path,
    LabeledLukasiewiczPath, PathStatSets,
};

/// Steps `ℓ_1..ℓ_n` with `ℓ_i ≥ −1`, nonnegative prefix sums and zero total.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct LukasiewiczWord(Vec<i32>);

impl LukasiewiczWord {
    pub fn new(steps: Vec<i32>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidInput("empty Łukasiewicz word".into()));
        }
        let mut h = 0i64;
        for (i, &s) in steps.iter().enumerate() {
            if s < -1 {
                return Err(Error::InvalidInput(format!("step {} is {s} < -1", i + 1)));
            }
            h += s as i64;
            if h < 0 {
                return Err(Error::InvalidInput(format!(
                    "prefix sum after step {} is negative",
                    i + 1
                )));
            }
        }
        if h != 0 {
            return Err(Error::InvalidInput(format!("steps sum to {h}, not 0")));
        }
        Ok(LukasiewiczWord(steps))
    }

    pub fn steps(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether the path touches the axis only at its two endpoints.
    pub fn is_prime(&self) -> bool {
        let mut h = 0i64;
        self.0[..self.0.len() - 1].iter().all(|&s| {
            h += s as i64;
            h >= 1
        })
    }
}

impl TryFrom<Vec<i32>> for LukasiewiczWord {
    type Error = Error;
    fn try_from(v: Vec<i32>) -> Result<Self> {
        LukasiewiczWord::new(v)
    }
}

impl From<LukasiewiczWord> for Vec<i32> {
    fn from(w: LukasiewiczWord) -> Vec<i32> {
        w.0
    }
}

/// Heights `h_0..h_n` of a Łukasiewicz path after each step.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HeightSequence(pub Vec<u32>);

impl HeightSequence {
    pub fn heights(&self) -> &[u32] {
        &self.0
    }

    /// Number of cars preferring spot `j` (1-based): `h_j − h_{j−1} + 1`.
    pub fn multiplicity(&self, j: usize) -> u32 {
        (self.0[j] as i64 - self.0[j - 1] as i64 + 1) as u32
    }
}

/// `ℓ_j = |{i : π_i = j}| − 1`.
pub fn word_from_pf(p: &PrefVector) -> Result<LukasiewiczWord> {
    if !p.is_parking_function() {
        return Err(Error::InvalidInput(format!("{p} is not a parking function")));
    }
    let n = p.len();
    let mut steps = vec![-1i32; n];
    for &e in p.as_slice() {
        steps[e as usize - 1] += 1;
    }
    let w = LukasiewiczWord::new(steps)?;
    if w.is_prime() != p.is_prime() {
        return Err(Error::Consistency(format!(
            "word primality disagrees with primality of {p}"
        )));
    }
    Ok(w)
}

pub fn height_sequence(w: &LukasiewiczWord) -> HeightSequence {
    let mut h = Vec::with_capacity(w.len() + 1);
    h.push(0u32);
    let mut cur = 0i64;
    for &s in w.steps() {
        cur += s as i64;
        h.push(cur as u32);
    }
    HeightSequence(h)
}

/// `Σ_j h_j`; equals the total displacement of the parking function the
/// word came from.
pub fn area(w: &LukasiewiczWord) -> u64 {
    height_sequence(w).0.iter().map(|&h| h as u64).sum()
}

/// Depth-first generation, trying steps from −1 upward, so words come out
/// in lexicographic order.
fn generate(n: usize, prime: bool) -> Vec<LukasiewiczWord> {
    fn go(n: usize, prime: bool, steps: &mut Vec<i32>, h: i64, out: &mut Vec<LukasiewiczWord>) {
        let done = steps.len();
        if done == n {
            if h == 0 {
                out.push(LukasiewiczWord(steps.clone()));
            }
            return;
        }
        let remaining_after = (n - done - 1) as i64;
        for s in -1..=(n as i64) {
            let nh = h + s;
            if nh < 0 {
                continue;
            }
            // the remaining steps can descend by at most one each
            if nh > remaining_after {
                break;
            }
            if prime && remaining_after > 0 && nh < 1 {
                continue;
            }
            steps.push(s as i32);
            go(n, prime, steps, nh, out);
            steps.pop();
        }
    }
    let mut out = Vec::new();
    go(n, prime, &mut Vec::with_capacity(n), 0, &mut out);
    out
}

/// All Łukasiewicz words of length `n`, lexicographically.
pub fn enumerate_lukas(n: usize, limit: EnumLimit) -> Result<impl Iterator<Item = LukasiewiczWord>> {
    if n == 0 {
        return Err(Error::InvalidInput("length must be at least 1".into()));
    }
    limit.check(n)?;
    Ok(generate(n, false).into_iter())
}

/// Prime Łukasiewicz words of length `n`, lexicographically.
pub fn enumerate_prime_lukas(n: usize, limit: EnumLimit) -> Result<impl Iterator<Item = LukasiewiczWord>> {
    if n == 0 {
        return Err(Error::InvalidInput("length must be at least 1".into()));
    }
    limit.check(n)?;
    Ok(generate(n, true).into_iter())
}

/// `Σ_w n!/Π_i (ℓ_i + 1)!` over Łukasiewicz words of length `n` (all, or
/// prime only): the number of parking functions (prime parking functions)
/// grouped by their word.
pub fn multinomial_path_count(n: usize, prime: bool, limit: EnumLimit) -> Result<Integer> {
    let words: Box<dyn Iterator<Item = LukasiewiczWord>> = if prime {
        Box::new(enumerate_prime_lukas(n, limit)?)
    } else {
        Box::new(enumerate_lukas(n, limit)?)
    };
    Ok(words
        .map(|w| {
            let parts: Vec<u64> = w.steps().iter().map(|&s| (s + 1) as u64).collect();
            multinomial(&parts)
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pf::park;

    fn pv(s: &[u32]) -> PrefVector {
        PrefVector::new(s.to_vec()).unwrap()
    }

    #[test]
    fn words_from_parking_functions() {
        let w = word_from_pf(&pv(&[1, 1, 1, 3, 4, 4, 6])).unwrap();
        assert_eq!(w.steps(), &[2, -1, 0, 1, -1, 0, -1]);
        assert!(w.is_prime());
        assert_eq!(word_from_pf(&pv(&[1, 2, 3])).unwrap().steps(), &[0, 0, 0]);
        assert_eq!(word_from_pf(&pv(&[1, 1, 1])).unwrap().steps(), &[2, -1, -1]);
        assert!(word_from_pf(&pv(&[2, 2])).is_err());
    }

    #[test]
    fn heights_and_area() {
        let w = LukasiewiczWord::new(vec![2, -1, 0, 1, -1, 0, -1]).unwrap();
        assert_eq!(height_sequence(&w).0, vec![0, 2, 1, 1, 2, 1, 1, 0]);
        assert_eq!(area(&w), 8);
        assert_eq!(area(&w), park(&pv(&[1, 1, 1, 3, 4, 4, 6])).unwrap().total);
        let flat = LukasiewiczWord::new(vec![0; 5]).unwrap();
        assert_eq!(area(&flat), 0);
        assert!(height_sequence(&flat).0.iter().all(|&h| h == 0));
    }

    #[test]
    fn validation() {
        assert!(LukasiewiczWord::new(vec![-1, 1]).is_err());
        assert!(LukasiewiczWord::new(vec![1, 0]).is_err());
        assert!(LukasiewiczWord::new(vec![2, -2, 0]).is_err());
        assert!(LukasiewiczWord::new(vec![]).is_err());
        assert!(serde_json::from_str::<LukasiewiczWord>("[1,-1]").is_ok());
        assert!(serde_json::from_str::<LukasiewiczWord>("[1,1]").is_err());
    }

    #[test]
    fn enumeration_small() {
        let two: Vec<Vec<i32>> = enumerate_lukas(2, EnumLimit::DEFAULT)
            .unwrap()
            .map(Into::into)
            .collect();
        assert_eq!(two, vec![vec![0, 0], vec![1, -1]]);
        let two_prime: Vec<Vec<i32>> = enumerate_prime_lukas(2, EnumLimit::DEFAULT)
            .unwrap()
            .map(Into::into)
            .collect();
        assert_eq!(two_prime, vec![vec![1, -1]]);
        let one: Vec<Vec<i32>> = enumerate_prime_lukas(1, EnumLimit::DEFAULT)
            .unwrap()
            .map(Into::into)
            .collect();
        assert_eq!(one, vec![vec![0]]);
        assert!(enumerate_lukas(10, EnumLimit::DEFAULT).is_err());
    }

    #[test]
    fn catalan_counts_and_prime_filter() {
        let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429, 1430];
        for n in 1..=8 {
            let all: Vec<_> = enumerate_lukas(n, EnumLimit::DEFAULT).unwrap().collect();
            assert_eq!(all.len(), catalan[n]);
            let mut sorted = all.clone();
            sorted.sort();
            assert_eq!(sorted, all, "lexicographic order");
            let primes: Vec<_> = enumerate_prime_lukas(n, EnumLimit::DEFAULT).unwrap().collect();
            let filtered: Vec<_> = all.into_iter().filter(|w| w.is_prime()).collect();
            assert_eq!(primes, filtered);
            // prime paths of length n are ordinary paths of length n−1 lifted by one
            assert_eq!(primes.len(), if n == 1 { 1 } else { catalan[n - 1] });
        }
    }

    #[test]
    fn multinomial_counts() {
        use crate::pf::{count_pf, count_ppf};
        for n in 1..=8 {
            assert_eq!(
                multinomial_path_count(n, false, EnumLimit::DEFAULT).unwrap(),
                count_pf(n as u64)
            );
            assert_eq!(
                multinomial_path_count(n, true, EnumLimit::DEFAULT).unwrap(),
                count_ppf(n as u64)
            );
        }
    }
}
