//! Exact and asymptotic expectations of `π_1` and of the displacement over
//! prime parking functions, the difference bijection `ℒ`, the circular
//! rotation sampler and Monte-Carlo estimates.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::combinat::factorial;
use crate::error::{Error, Result};
use crate::pf::{enumerate_ppf, forward_differences, EnumLimit};
use crate::{Integer, Rational};

mod sampler;

pub use sampler::{
    kalikow_sample, l_inverse, l_map, monte_carlo_report, rotate_to_prime, rotate_to_prime_fast, rotation_shifts,
    sample_at, uniform_residue, DiffVector, MonteCarloReport, SampleConfig, StatSummary,
};

/// Largest `n` for which [`expectation_summary`] also reports exact
/// rationals.
pub const DEFAULT_EXACT_CUTOFF: u64 = 200;

fn check_n(n: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    Ok(())
}

fn rat(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

/// `T(n) = Σ_{k=0}^{n} Π_{j=1}^{k} (n−j+1)/n`, which equals
/// `(n!/n^n) Σ_{s=0}^{n} n^s/s!`, in floating point.
pub fn poisson_factor(n: u64) -> f64 {
    let nf = n as f64;
    let mut term = 1.0;
    let mut total = 1.0;
    for j in 1..=n {
        term *= (nf - j as f64 + 1.0) / nf;
        if term == 0.0 {
            break;
        }
        total += term;
    }
    total
}

/// `T(n)` as an exact rational.
pub fn poisson_factor_exact(n: u64) -> Result<Rational> {
    check_n(n)?;
    let nn = Integer::from(n);
    let mut sum = Rational::zero();
    let mut power = Integer::from(1);
    for s in 0..=n {
        sum += rat(power.clone(), factorial(s));
        power *= &nn;
    }
    Ok(sum * rat(factorial(n), nn.pow(n as u32)))
}

/// `E[π_1 | π ∈ PPF_{n+1}] = ½(n + 3 − T(n))`.
pub fn expected_pi1_exact(n: u64) -> Result<Rational> {
    let t = poisson_factor_exact(n)?;
    Ok((Rational::from_integer(Integer::from(n + 3)) - t) / Rational::from_integer(Integer::from(2)))
}

/// `½(n + 3 − T(n))` in floating point; usable for large `n`.
pub fn expected_pi1_float(n: u64) -> f64 {
    0.5 * (n as f64 + 3.0 - poisson_factor(n))
}

/// `½(n − √(πn/2) + 7/3)`.
pub fn expected_pi1_asymptotic(n: u64) -> f64 {
    let nf = n as f64;
    0.5 * (nf - (std::f64::consts::PI * nf / 2.0).sqrt() + 7.0 / 3.0)
}

/// `E[dis(π) | π ∈ PPF_{n+1}] = (n+1)(n+2)/2 − (n+1) E[π_1]`.
pub fn expected_displacement_exact(n: u64) -> Result<Rational> {
    let e = expected_pi1_exact(n)?;
    let m = Rational::from_integer(Integer::from(n + 1));
    Ok(rat((n + 1) * (n + 2), 2) - m * e)
}

pub fn expected_displacement_float(n: u64) -> f64 {
    let m = n as f64 + 1.0;
    m * (n as f64 + 2.0) / 2.0 - m * expected_pi1_float(n)
}

/// `(√(2π)/4) n^{3/2} − n/6`.
pub fn expected_displacement_asymptotic(n: u64) -> f64 {
    let nf = n as f64;
    (2.0 * std::f64::consts::PI).sqrt() / 4.0 * nf.powf(1.5) - nf / 6.0
}

/// Averages of `π_1` and of the displacement over `PPF_{n+1}` by
/// enumeration.
pub fn enumerated_means(n: u64, limit: EnumLimit) -> Result<(Rational, Rational)> {
    check_n(n)?;
    let len = n as usize + 1;
    let full = (len * (len + 1) / 2) as u64;
    let (mut count, mut first, mut dis) = (0u64, 0u64, 0u64);
    enumerate_ppf(len, limit)?.for_each_slice(|s| {
        count += 1;
        first += s[0] as u64;
        dis += full - s.iter().map(|&e| e as u64).sum::<u64>();
    });
    Ok((rat(first, count), rat(dis, count)))
}

/// Enumerated expectations of the tie, descent and ascent counts over
/// `PPF_n`, plus `E[Δ_ℓ f]` for every residue `ℓ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpectedStats {
    #[serde(serialize_with = "crate::expectation::ser_rational")]
    pub ties: Rational,
    #[serde(serialize_with = "crate::expectation::ser_rational")]
    pub des: Rational,
    #[serde(serialize_with = "crate::expectation::ser_rational")]
    pub asc: Rational,
    #[serde(serialize_with = "crate::expectation::ser_rationals")]
    pub per_residue: Vec<Rational>,
}

pub(crate) fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_rationals<S: serde::Serializer>(rs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(|r| r.to_string()))
}

pub fn expected_stats_exact(n: usize, limit: EnumLimit) -> Result<ExpectedStats> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n = {n}; need n ≥ 2")));
    }
    let (mut count, mut ties, mut des, mut asc) = (0u64, 0u64, 0u64, 0u64);
    let mut per = vec![0u64; n - 1];
    enumerate_ppf(n, limit)?.for_each_slice(|s| {
        count += 1;
        for w in s.windows(2) {
            match w[0].cmp(&w[1]) {
                std::cmp::Ordering::Equal => ties += 1,
                std::cmp::Ordering::Greater => des += 1,
                std::cmp::Ordering::Less => asc += 1,
            }
        }
        for d in forward_differences(s) {
            per[d as usize] += 1;
        }
    });
    Ok(ExpectedStats {
        ties: rat(ties, count),
        des: rat(des, count),
        asc: rat(asc, count),
        per_residue: per.into_iter().map(|c| rat(c, count)).collect(),
    })
}

/// `(1, (n−2)/2, (n−2)/2)`.
pub fn expected_stats_closed(n: u64) -> (Rational, Rational, Rational) {
    let half = rat(n as i64 - 2, 2);
    (rat(1, 1), half.clone(), half)
}

/// One row of the expectation table for `PPF_{n+1}`.
#[derive(Clone, Debug, Serialize)]
pub struct ExpectationSummary {
    pub n: u64,
    pub pi1: ExpectationRow,
    pub displacement: ExpectationRow,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectationRow {
    /// `num/den`, present when `n` is within the exact cutoff.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub asymptotic: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_error: Option<f64>,
}

fn row(exact: Option<Rational>, float: f64, asymptotic: Option<f64>) -> ExpectationRow {
    let value = exact.as_ref().and_then(|r| r.to_f64()).unwrap_or(float);
    ExpectationRow {
        exact: exact.map(|r| r.to_string()),
        value,
        asymptotic,
        abs_error: asymptotic.map(|a| (value - a).abs()),
    }
}

pub fn expectation_summary(n: u64, asymptotic: bool, exact_cutoff: u64) -> Result<ExpectationSummary> {
    check_n(n)?;
    let exact = n <= exact_cutoff;
    Ok(ExpectationSummary {
        n,
        pi1: row(
            exact.then(|| expected_pi1_exact(n)).transpose()?,
            expected_pi1_float(n),
            asymptotic.then(|| expected_pi1_asymptotic(n)),
        ),
        displacement: row(
            exact.then(|| expected_displacement_exact(n)).transpose()?,
            expected_displacement_float(n),
            asymptotic.then(|| expected_displacement_asymptotic(n)),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        assert_eq!(expected_pi1_exact(2).unwrap(), rat(5, 4));
        assert_eq!(expected_pi1_exact(3).unwrap(), rat(14, 9));
        assert_eq!(expected_displacement_exact(2).unwrap(), rat(9, 4));
        assert_eq!(poisson_factor(1), 2.0);
        assert_eq!(poisson_factor(2), 2.5);
        assert_eq!(poisson_factor_exact(2).unwrap(), rat(5, 2));
        assert!(expected_pi1_exact(0).is_err());
    }

    #[test]
    fn float_matches_exact() {
        for n in 1..=20 {
            let exact = poisson_factor_exact(n).unwrap().to_f64().unwrap();
            let float = poisson_factor(n);
            assert!(((float - exact) / exact).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn exact_matches_enumeration() {
        for n in 1..=6 {
            let (pi1, dis) = enumerated_means(n, EnumLimit::DEFAULT).unwrap();
            assert_eq!(pi1, expected_pi1_exact(n).unwrap(), "n={n}");
            assert_eq!(dis, expected_displacement_exact(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn asymptotics() {
        let err = |n| (expected_pi1_float(n) - expected_pi1_asymptotic(n)).abs();
        assert!(err(10_000) < 0.05);
        assert!(err(10_000) < err(1_000) && err(1_000) < err(100));
        let d = expected_displacement_float(10_000);
        assert!(((d - expected_displacement_asymptotic(10_000)) / d).abs() < 0.02);
    }

    #[test]
    fn stats() {
        let s = expected_stats_exact(3, EnumLimit::DEFAULT).unwrap();
        assert_eq!((s.ties.clone(), s.des.clone(), s.asc.clone()), expected_stats_closed(3));
        assert_eq!(s.des, rat(1, 2));
        let s = expected_stats_exact(2, EnumLimit::DEFAULT).unwrap();
        assert_eq!((s.ties, s.des, s.asc), (rat(1, 1), rat(0, 1), rat(0, 1)));
        let s = expected_stats_exact(7, EnumLimit::DEFAULT).unwrap();
        assert_eq!((s.ties.clone(), s.des.clone(), s.asc.clone()), expected_stats_closed(7));
        assert!(s.per_residue.iter().all(|r| *r == rat(1, 1)));
    }

    #[test]
    fn summary_json() {
        let s = expectation_summary(2, true, DEFAULT_EXACT_CUTOFF).unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["pi1"]["exact"], "5/4");
        assert_eq!(v["pi1"]["value"], 1.25);
        let big = expectation_summary(10_000, true, DEFAULT_EXACT_CUTOFF).unwrap();
        assert!(big.pi1.exact.is_none());
        assert!(big.pi1.abs_error.unwrap() < 0.05);
    }
}
