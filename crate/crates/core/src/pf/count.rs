//! Closed-form counts of parking functions and prime parking functions
//! refined by first entry, number of ones, and forward-difference sets.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combinat::{binomial, ipow, pf_count};
use crate::error::{Error, Result};
use crate::{Integer, Rational};

/// `|PF_n| = (n+1)^(n-1)`.
pub fn count_pf(n: u64) -> Integer {
    pf_count(n)
}

/// `|PPF_n| = (n-1)^(n-1)` for `n ≥ 2`; `PPF_1 = {(1)}`.
pub fn count_ppf(n: u64) -> Integer {
    match n {
        0 => Integer::zero(),
        1 => Integer::from(1),
        _ => ipow(n as i64 - 1, n - 1),
    }
}

/// Number of `π ∈ PPF_{n+1}` with `π_1 = j`, where `n_plus_1 = n + 1`.
///
/// `j = 1` gives `|PF_n|`; otherwise `Σ_k n/(k+1) · f_n(j, k)` evaluated in
/// exact rationals. `j = n + 1` is admissible and gives 0.
pub fn count_ppf_first(n_plus_1: u64, j: u64) -> Result<Integer> {
    if n_plus_1 < 2 {
        return Err(Error::OutOfRange(format!("prime length {n_plus_1} must be at least 2")));
    }
    let n = n_plus_1 - 1;
    if j < 1 || j > n_plus_1 {
        return Err(Error::OutOfRange(format!("first entry {j} not in 1..={n_plus_1}")));
    }
    if j == n_plus_1 {
        return Ok(Integer::zero());
    }
    if j == 1 {
        return Ok(pf_count(n));
    }
    let mut total = Rational::zero();
    for k in 1..n {
        let weight = Rational::new(BigInt::from(n), BigInt::from(k + 1));
        total += weight * Rational::from_integer(f_n_jk(n, j, k)?);
    }
    if !total.is_integer() {
        return Err(Error::Consistency(format!(
            "first-entry count for PPF_{n_plus_1}, j = {j} evaluated to {total}"
        )));
    }
    Ok(total.to_integer())
}

/// Number of `π ∈ PF_n` with `π_1 = j`:
/// `Σ_{l=j}^{n} C(n−1, l−1) |PF_{l−1}| |PF_{n−l}|`.
pub fn count_pf_first(n: u64, j: u64) -> Result<Integer> {
    if j < 1 || j > n {
        return Err(Error::OutOfRange(format!("first entry {j} not in 1..={n}")));
    }
    Ok((j..=n)
        .map(|l| binomial(n as i64 - 1, l as i64 - 1) * pf_count(l - 1) * pf_count(n - l))
        .sum())
}

/// Number of `π ∈ PF_n` with exactly `k` ones: `C(n−1, k−1) n^(n−k)`.
pub fn count_pf_ones(n: u64, k: u64) -> Result<Integer> {
    if k < 1 || k > n {
        return Err(Error::OutOfRange(format!("ones count {k} not in 1..={n}")));
    }
    Ok(binomial(n as i64 - 1, k as i64 - 1) * ipow(n as i64, n - k))
}

/// `f_n(j, k)`: number of `π ∈ PF_n` with `π_1 = j` and exactly `k` ones.
///
/// Admissible for `2 ≤ j ≤ n` and `1 ≤ k ≤ n`; `k = n` is allowed and
/// always gives 0.
pub fn f_n_jk(n: u64, j: u64, k: u64) -> Result<Integer> {
    if j < 2 || j > n {
        return Err(Error::OutOfRange(format!("first entry {j} not in 2..={n}")));
    }
    if k < 1 || k > n {
        return Err(Error::OutOfRange(format!("ones count {k} not in 1..={n}")));
    }
    let (n, j, k) = (n as i64, j as i64, k as i64);
    Ok((j.max(k + 1)..=n)
        .map(|l| {
            binomial(n - 1, l - 1) * binomial(l - 2, k - 1) * ipow(l - 1, (l - 1 - k) as u64) * pf_count((n - l) as u64)
        })
        .sum())
}

fn check_subset(n: u64, s: &BTreeSet<usize>, name: &str) -> Result<()> {
    match s.iter().find(|&&i| i < 1 || i as u64 > n - 1) {
        Some(i) => Err(Error::Precondition(format!(
            "{name} contains {i}, outside [1, {}]",
            n - 1
        ))),
        None => Ok(()),
    }
}

fn check_residue(n: u64, ell: u64) -> Result<()> {
    if ell > n - 2 {
        return Err(Error::OutOfRange(format!("residue {ell} not in 0..={}", n - 2)));
    }
    Ok(())
}

/// Number of `π ∈ PPF_n` whose ℓ-forward-difference set is exactly `s`:
/// `(n−2)^(n−1−|s|)`, with `0^0 = 1`.
pub fn count_forward_diff_set(n: u64, ell: u64, s: &BTreeSet<usize>) -> Result<Integer> {
    if n < 2 {
        return Err(Error::Precondition(format!("n = {n}; forward differences need n ≥ 2")));
    }
    check_residue(n, ell)?;
    check_subset(n, s, "S")?;
    Ok(ipow(n as i64 - 2, n - 1 - s.len() as u64))
}

/// Number of `π ∈ PPF_n` with ℓ-forward-difference set `s` and
/// m-forward-difference set `t`: `(n−3)^(n−1−|s|−|t|)`.
pub fn count_forward_diff_set_pair(
    n: u64,
    ell: u64,
    m: u64,
    s: &BTreeSet<usize>,
    t: &BTreeSet<usize>,
) -> Result<Integer> {
    if n < 3 {
        return Err(Error::Precondition(format!(
            "n = {n}; two distinct residues need n ≥ 3"
        )));
    }
    check_residue(n, ell)?;
    check_residue(n, m)?;
    if ell == m {
        return Err(Error::Precondition(format!("residues must differ, both are {ell}")));
    }
    check_subset(n, s, "S")?;
    check_subset(n, t, "T")?;
    if !s.is_disjoint(t) {
        return Err(Error::Precondition("S and T overlap".into()));
    }
    Ok(ipow(n as i64 - 3, n - 1 - (s.len() + t.len()) as u64))
}
