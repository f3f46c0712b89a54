//! Parking functions and prime parking functions: recognition, the
//! linear-probe simulation, per-sequence statistics, enumeration and
//! closed-form counts.
//!
//! All positions and preferences are 1-based.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod count;
pub mod enumerate;

pub use count::*;
pub use enumerate::{enumerate_pf, enumerate_ppf, EnumLimit, PfIter};

/// A sequence of car preferences `(π_1, …, π_n)` with every entry ≥ 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct PrefVector(Vec<u32>);

impl PrefVector {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("empty preference sequence".into()));
        }
        if let Some(pos) = entries.iter().position(|&e| e == 0) {
            return Err(Error::InvalidInput(format!(
                "entry {} is 0; preferences are 1-based",
                pos + 1
            )));
        }
        Ok(PrefVector(entries))
    }

    /// Wraps a slice already known to be valid (nonempty, entries ≥ 1).
    pub(crate) fn from_trusted(entries: Vec<u32>) -> Self {
        debug_assert!(!entries.is_empty() && entries.iter().all(|&e| e >= 1));
        PrefVector(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn ones_count(&self) -> usize {
        self.0.iter().filter(|&&e| e == 1).count()
    }

    pub fn is_parking_function(&self) -> bool {
        is_parking_slice(&self.0)
    }

    pub fn is_prime(&self) -> bool {
        is_prime_slice(&self.0)
    }

    /// `n(n+1)/2 − Σ π_i`. Only meaningful for parking functions.
    pub fn displacement_formula(&self) -> i64 {
        let n = self.len() as i64;
        n * (n + 1) / 2 - self.sum() as i64
    }
}

impl TryFrom<Vec<u32>> for PrefVector {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        PrefVector::new(v)
    }
}

impl From<PrefVector> for Vec<u32> {
    fn from(p: PrefVector) -> Vec<u32> {
        p.0
    }
}

/// Comma-separated, e.g. `3,2,1,1`.
impl fmt::Display for PrefVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for PrefVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u32>()
                    .map_err(|_| Error::InvalidInput(format!("{tok:?} is not a positive integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        PrefVector::new(entries)
    }
}

/// `counts[v]` = number of entries equal to `v`, for `v` in `0..=max`.
/// Entries above `max` are dropped.
fn value_counts(prefs: &[u32], max: usize) -> Vec<usize> {
    let mut counts = vec![0usize; max + 1];
    for &e in prefs {
        if (e as usize) <= max {
            counts[e as usize] += 1;
        }
    }
    counts
}

/// Parking criterion on a raw slice: `|{j : π_j ≤ i}| ≥ i` for all `i`.
pub(crate) fn is_parking_slice(prefs: &[u32]) -> bool {
    let n = prefs.len();
    let counts = value_counts(prefs, n);
    let mut cum = 0;
    (1..=n).all(|i| {
        cum += counts[i];
        cum >= i
    })
}

/// Prime criterion: `|{j : π_j ≤ i}| ≥ i + 1` for `1 ≤ i ≤ n − 1`, on top of
/// being a parking function.
pub(crate) fn is_prime_slice(prefs: &[u32]) -> bool {
    let n = prefs.len();
    let counts = value_counts(prefs, n);
    let mut cum = 0;
    for (i, &c) in counts.iter().enumerate().take(n).skip(1) {
        cum += c;
        if cum < i + 1 {
            return false;
        }
    }
    cum + counts[n] >= n
}

/// Sort-and-compare definition: the nondecreasing rearrangement `λ`
/// satisfies `λ_i ≤ i`.
pub fn is_parking_function(p: &PrefVector) -> bool {
    p.is_parking_function()
}

/// Counting criterion for primality (at least `i+1` cars prefer the first
/// `i` spots, for every `i < n`).
pub fn is_prime_parking_function(p: &PrefVector) -> bool {
    p.is_prime()
}

/// Removal definition of primality: `p` is a parking function and deleting
/// one occurrence of 1 leaves a parking function of length `n − 1`.
pub fn is_prime_by_removal(p: &PrefVector) -> bool {
    if !p.is_parking_function() {
        return false;
    }
    let s = p.as_slice();
    let Some(pos) = s.iter().position(|&e| e == 1) else {
        return false;
    };
    let rest: Vec<u32> = s[..pos].iter().chain(&s[pos + 1..]).copied().collect();
    is_parking_slice(&rest)
}

/// Result of running the linear-probe parking process.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ParkingOutcome {
    /// `spot_of_car[i]` is the spot where car `i + 1` parks.
    pub spot_of_car: Vec<u32>,
    /// `p_i − π_i` for each car.
    pub per_car_displacement: Vec<u32>,
    pub total: u64,
}

/// Parks the cars in order; each takes the first free spot at or after its
/// preference.
pub fn park(p: &PrefVector) -> Result<ParkingOutcome> {
    let n = p.len();
    let mut occupied = vec![false; n + 1];
    let mut spot_of_car = Vec::with_capacity(n);
    let mut per_car_displacement = Vec::with_capacity(n);
    for (car, &pref) in p.as_slice().iter().enumerate() {
        let spot = (pref as usize..=n)
            .find(|&s| !occupied[s])
            .ok_or(Error::ParkingFailure {
                car: car + 1,
                preference: pref,
                n,
            })?;
        occupied[spot] = true;
        spot_of_car.push(spot as u32);
        per_car_displacement.push(spot as u32 - pref);
    }
    let total: u64 = per_car_displacement.iter().map(|&d| d as u64).sum();
    let formula = p.displacement_formula();
    if total as i64 != formula {
        return Err(Error::Consistency(format!(
            "simulated displacement {total} differs from n(n+1)/2 − Σπ = {formula}"
        )));
    }
    Ok(ParkingOutcome {
        spot_of_car,
        per_car_displacement,
        total,
    })
}

/// Descent/ascent/tie sets, number of ones and every ℓ-forward-difference
/// set of a sequence.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct StatProfile {
    pub descent_set: BTreeSet<usize>,
    pub ascent_set: BTreeSet<usize>,
    pub tie_set: BTreeSet<usize>,
    pub ones_count: usize,
    /// Entry `ℓ` holds the positions `i` with `π_{i+1} − π_i ≡ ℓ (mod n−1)`.
    /// Empty when `n < 2`.
    pub forward_diff_sets: Vec<BTreeSet<usize>>,
}

impl StatProfile {
    pub fn des(&self) -> usize {
        self.descent_set.len()
    }
    pub fn asc(&self) -> usize {
        self.ascent_set.len()
    }
    pub fn ties(&self) -> usize {
        self.tie_set.len()
    }
}

pub fn descent_set<T: Ord>(xs: &[T]) -> BTreeSet<usize> {
    (1..xs.len()).filter(|&i| xs[i - 1] > xs[i]).collect()
}

pub fn ascent_set<T: Ord>(xs: &[T]) -> BTreeSet<usize> {
    (1..xs.len()).filter(|&i| xs[i - 1] < xs[i]).collect()
}

pub fn tie_set<T: Ord>(xs: &[T]) -> BTreeSet<usize> {
    (1..xs.len()).filter(|&i| xs[i - 1] == xs[i]).collect()
}

/// `(π_{i+1} − π_i) mod (n − 1)` for `i = 1..n−1`, as residues `0..n−2`.
/// Empty for `n < 2`.
pub fn forward_differences(prefs: &[u32]) -> Vec<u32> {
    let n = prefs.len();
    if n < 2 {
        return Vec::new();
    }
    let m = (n - 1) as i64;
    prefs
        .windows(2)
        .map(|w| (w[1] as i64 - w[0] as i64).rem_euclid(m) as u32)
        .collect()
}

/// Bitmask (bit `i−1` for position `i`) of the ℓ-forward-difference set.
/// Requires `n ≤ 65`.
pub(crate) fn forward_diff_mask(diffs: &[u32], ell: u32) -> u64 {
    diffs
        .iter()
        .enumerate()
        .filter(|(_, &d)| d == ell)
        .fold(0u64, |m, (i, _)| m | (1 << i))
}

pub fn stat_profile(p: &PrefVector) -> StatProfile {
    let s = p.as_slice();
    let n = s.len();
    let mut forward_diff_sets = vec![BTreeSet::new(); n.saturating_sub(1)];
    for (i, d) in forward_differences(s).into_iter().enumerate() {
        forward_diff_sets[d as usize].insert(i + 1);
    }
    StatProfile {
        descent_set: descent_set(s),
        ascent_set: ascent_set(s),
        tie_set: tie_set(s),
        ones_count: p.ones_count(),
        forward_diff_sets,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(s: &[u32]) -> PrefVector {
        PrefVector::new(s.to_vec()).unwrap()
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    /// Sort-and-compare oracle.
    fn sorted_oracle(s: &[u32]) -> bool {
        let mut v = s.to_vec();
        v.sort_unstable();
        v.iter().enumerate().all(|(i, &x)| x as usize <= i + 1)
    }

    #[test]
    fn recognition_examples() {
        assert!(pv(&[1]).is_parking_function());
        assert!(pv(&[3, 2, 1]).is_parking_function());
        assert!(!pv(&[3, 3, 1]).is_parking_function());
        assert!(pv(&[2, 1, 3, 1, 3, 1, 6, 4]).is_parking_function());
        assert!(sorted_oracle(&[2, 1, 3, 1, 3, 1, 6, 4]));
        assert!(!sorted_oracle(&[3, 3, 1]));
    }

    #[test]
    fn prime_examples() {
        for (s, want) in [
            (&[3, 2, 1, 1][..], true),
            (&[1, 2, 1], true),
            (&[1, 2, 3], false),
            (&[1, 1], true),
            (&[1], true),
            (&[2, 1], false),
        ] {
            assert_eq!(pv(s).is_prime(), want, "{s:?}");
            assert_eq!(is_prime_by_removal(&pv(s)), want, "{s:?}");
        }
    }

    #[test]
    fn rejects_invalid_input() {
        assert!(PrefVector::new(vec![]).is_err());
        assert!(PrefVector::new(vec![0, 1]).is_err());
        assert!("0,1".parse::<PrefVector>().is_err());
        assert!("1,x".parse::<PrefVector>().is_err());
        assert!("".parse::<PrefVector>().is_err());
        assert_eq!("3, 2,1".parse::<PrefVector>().unwrap(), pv(&[3, 2, 1]));
        assert_eq!(pv(&[3, 2, 1, 1]).to_string(), "3,2,1,1");
    }

    #[test]
    fn parking_simulation() {
        let out = park(&pv(&[1, 1, 1])).unwrap();
        assert_eq!(out.spot_of_car, vec![1, 2, 3]);
        assert_eq!(out.per_car_displacement, vec![0, 1, 2]);
        assert_eq!(out.total, 3);
        assert_eq!(park(&pv(&[2, 1, 3, 1, 3, 1, 6, 4])).unwrap().total, 15);
        assert_eq!(park(&pv(&[1, 1, 1, 3, 4, 4, 6])).unwrap().total, 8);
        assert!(matches!(
            park(&pv(&[3, 3, 1])),
            Err(Error::ParkingFailure { car: 2, .. })
        ));
    }

    #[test]
    fn profiles() {
        let p = stat_profile(&pv(&[1, 1, 2]));
        assert_eq!(p.tie_set, set(&[1]));
        assert_eq!(p.ascent_set, set(&[2]));
        assert!(p.descent_set.is_empty());
        assert_eq!(p.ones_count, 2);

        let p = stat_profile(&pv(&[2, 1, 3, 1, 3, 1, 6, 4]));
        assert_eq!(p.descent_set, set(&[1, 3, 5, 7]));
        assert_eq!(p.ascent_set, set(&[2, 4, 6]));
        assert!(p.tie_set.is_empty());

        let p = stat_profile(&pv(&[1, 2, 2, 1]));
        assert_eq!(p.forward_diff_sets, vec![set(&[2]), set(&[1]), set(&[3])]);
        assert_eq!(p.forward_diff_sets[0], p.tie_set);

        let p = stat_profile(&pv(&[1]));
        assert!(p.forward_diff_sets.is_empty() && p.tie_set.is_empty());
    }

    #[test]
    fn masks_match_sets() {
        let s = [2, 1, 3, 1, 3, 1, 6, 4];
        let diffs = forward_differences(&s);
        let prof = stat_profile(&pv(&s));
        for (ell, set) in prof.forward_diff_sets.iter().enumerate() {
            let mask = forward_diff_mask(&diffs, ell as u32);
            let from_mask: BTreeSet<usize> = (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
            assert_eq!(&from_mask, set);
        }
    }
}
