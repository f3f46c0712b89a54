//! Exact integer building blocks: factorials, binomials, parking-function
//! counts.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero whenever `k < 0` or `k > n` (including negative `n`).
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Multinomial coefficient `(Σ parts)! / Π parts!`.
pub fn multinomial(parts: &[u64]) -> BigInt {
    let total: u64 = parts.iter().sum();
    parts.iter().fold(factorial(total), |acc, &p| acc / factorial(p))
}

/// `base^exp` over the integers with `0^0 = 1`.
pub fn ipow(base: i64, exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `|PF_m| = (m+1)^(m-1)`, with `|PF_0| = 1`.
pub fn pf_count(m: u64) -> BigInt {
    if m == 0 {
        BigInt::one()
    } else {
        ipow(m as i64 + 1, m - 1)
    }
}
