//! Displacement enumerators (by enumeration and by weighted Łukasiewicz
//! paths), forward-difference generating functions, and Abel sums.

use num_traits::{One, Zero};

use crate::combinat::factorial;
use crate::error::{Error, Result};
use crate::lukas::{enumerate_lukas, enumerate_prime_lukas, height_sequence};
use crate::pf::{enumerate_ppf, forward_differences, EnumLimit};
use crate::{IntBiPoly, IntPoly, Integer, RatPoly, Rational};

mod abel;

pub use abel::{
    abel_closed_p_neg1_q0, abel_closed_p_neg1_q1, abel_recurrence_factorial, abel_recurrence_shift, abel_sum,
    check_abel, AbelCheck, MAX_ABEL_N,
};

/// `Σ_{π ∈ PPF_n} q^{dis(π)}` by enumeration.
pub fn displacement_enumerator_brute(n: usize, limit: EnumLimit) -> Result<IntPoly> {
    let mut counts = vec![0u64; n * (n + 1) / 2 + 1];
    enumerate_ppf(n, limit)?.for_each_slice(|s| {
        let sum: usize = s.iter().map(|&e| e as usize).sum();
        counts[n * (n + 1) / 2 - sum] += 1;
    });
    Ok(IntPoly::from_counts(&counts))
}

fn add_rational(coeffs: &mut Vec<Rational>, deg: usize, c: Rational) {
    if coeffs.len() <= deg {
        coeffs.resize(deg + 1, Rational::zero());
    }
    coeffs[deg] += c;
}

/// `Π_j 1/(h_j − h_{j−1} + 1)!` and `Σ_{j≥1} h_j` for a height sequence.
fn path_weight(heights: &[u32]) -> (Rational, usize) {
    let mut denom = Integer::one();
    let mut area = 0usize;
    for w in heights.windows(2) {
        denom *= factorial((w[1] as i64 - w[0] as i64 + 1) as u64);
        area += w[1] as usize;
    }
    (Rational::new(Integer::one(), denom), area)
}

/// `PPF_{n+1}(q)` as
/// `(n+1)! q^n Σ_paths [1/(h_1−h_0+2)] Π_{j=1}^n q^{h_j}/(h_j−h_{j−1}+1)!`
/// over all Łukasiewicz paths of length `n`, for `n + 1 ≥ 2`.
pub fn displacement_enumerator_paths(n_plus_1: usize, limit: EnumLimit) -> Result<IntPoly> {
    if n_plus_1 < 2 {
        return Err(Error::Precondition(format!(
            "the path formula needs n + 1 ≥ 2, got {n_plus_1}"
        )));
    }
    limit.check(n_plus_1)?;
    let n = n_plus_1 - 1;
    let lead = Rational::from_integer(factorial(n_plus_1 as u64));
    let mut coeffs: Vec<Rational> = Vec::new();
    for w in enumerate_lukas(n, limit)? {
        let h = height_sequence(&w);
        let (weight, area) = path_weight(h.heights());
        let first = Rational::new(Integer::one(), Integer::from(h.0[1] as i64 - h.0[0] as i64 + 2));
        add_rational(&mut coeffs, n + area, lead.clone() * first * weight);
    }
    RatPoly::new(coeffs).to_integer_poly()
}

/// `PPF_N(q)` as `N! Σ Π_{j=1}^N q^{h_j}/(h_j−h_{j−1}+1)!` over prime
/// Łukasiewicz paths of length `N`.
pub fn displacement_enumerator_prime_paths(n: usize, limit: EnumLimit) -> Result<IntPoly> {
    let lead = Rational::from_integer(factorial(n as u64));
    let mut coeffs: Vec<Rational> = Vec::new();
    for w in enumerate_prime_lukas(n, limit)? {
        let h = height_sequence(&w);
        let (weight, area) = path_weight(h.heights());
        add_rational(&mut coeffs, area, lead.clone() * weight);
    }
    RatPoly::new(coeffs).to_integer_poly()
}

fn check_residue(n: usize, ell: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Precondition(format!("n = {n}; forward differences need n ≥ 2")));
    }
    if ell > n - 2 {
        return Err(Error::OutOfRange(format!("residue {ell} not in 0..={}", n - 2)));
    }
    Ok(())
}

/// `Σ_{π ∈ PPF_n} q^{Δ_ℓ f(π)}` by enumeration.
pub fn ell_genfun(n: usize, ell: usize, limit: EnumLimit) -> Result<IntPoly> {
    check_residue(n, ell)?;
    let mut counts = vec![0u64; n];
    enumerate_ppf(n, limit)?.for_each_slice(|s| {
        let hits = forward_differences(s).iter().filter(|&&d| d as usize == ell).count();
        counts[hits] += 1;
    });
    Ok(IntPoly::from_counts(&counts))
}

/// `(q + n − 2)^{n−1}`.
pub fn ell_genfun_closed(n: usize) -> Result<IntPoly> {
    if n < 2 {
        return Err(Error::Precondition(format!("n = {n}; forward differences need n ≥ 2")));
    }
    Ok(IntPoly::shifted_var(Integer::from(n - 2)).pow(n as u32 - 1))
}

fn check_pair(n: usize, ell: usize, m: usize) -> Result<()> {
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
    Ok(())
}

/// `Σ_{π ∈ PPF_n} q^{Δ_ℓ f(π)} t^{Δ_m f(π)}` by enumeration.
pub fn mixed_genfun(n: usize, ell: usize, m: usize, limit: EnumLimit) -> Result<IntBiPoly> {
    check_pair(n, ell, m)?;
    let mut counts = vec![vec![0u64; n]; n];
    enumerate_ppf(n, limit)?.for_each_slice(|s| {
        let diffs = forward_differences(s);
        let a = diffs.iter().filter(|&&d| d as usize == ell).count();
        let b = diffs.iter().filter(|&&d| d as usize == m).count();
        counts[a][b] += 1;
    });
    let mut out = IntBiPoly::zero();
    for (a, row) in counts.iter().enumerate() {
        for (b, &c) in row.iter().enumerate() {
            if c > 0 {
                out.add_term(a as u32, b as u32, Integer::from(c));
            }
        }
    }
    Ok(out)
}

/// `(q + t + n − 3)^{n−1}`.
pub fn mixed_genfun_closed(n: usize) -> Result<IntBiPoly> {
    if n < 3 {
        return Err(Error::Precondition(format!(
            "n = {n}; two distinct residues need n ≥ 3"
        )));
    }
    let base = IntBiPoly::q() + IntBiPoly::t() + IntBiPoly::constant(Integer::from(n - 3));
    Ok(base.pow(n as u32 - 1))
}
