use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expectation::{expected_displacement_asymptotic, expected_displacement_exact, expected_pi1_asymptotic};
use crate::expectation::{expected_pi1_exact, expected_stats_closed, DEFAULT_EXACT_CUTOFF};
use crate::pf::{is_prime_slice, PrefVector};

/// Consecutive differences `π_{i+1} − π_i` reduced mod `n − 1`, each in
/// `0..=n−2`; length `n − 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct DiffVector {
    n: usize,
    residues: Vec<u32>,
}

impl DiffVector {
    pub fn new(n: usize, residues: Vec<u32>) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfRange(format!("n = {n}; need n ≥ 2")));
        }
        if residues.len() != n - 1 {
            return Err(Error::InvalidInput(format!(
                "{} residues for n = {n}; expected {}",
                residues.len(),
                n - 1
            )));
        }
        if let Some(r) = residues.iter().find(|&&r| r as usize > n - 2) {
            return Err(Error::InvalidInput(format!("residue {r} not in 0..={}", n - 2)));
        }
        Ok(DiffVector { n, residues })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn residues(&self) -> &[u32] {
        &self.residues
    }
}

/// `ℒ(π)`: differences of a prime parking function mod `n − 1`.
pub fn l_map(p: &PrefVector) -> Result<DiffVector> {
    let n = p.len();
    if n < 2 {
        return Err(Error::OutOfRange(format!("n = {n}; need n ≥ 2")));
    }
    if !p.is_prime() {
        return Err(Error::InvalidInput(format!("{p} is not a prime parking function")));
    }
    let m = (n - 1) as i64;
    let residues = p
        .as_slice()
        .windows(2)
        .map(|w| (w[1] as i64 - w[0] as i64).rem_euclid(m) as u32)
        .collect();
    DiffVector::new(n, residues)
}

fn shifted(pi0: &[u32], modulus: u32, shift: u32) -> Vec<u32> {
    pi0.iter().map(|&v| (v - 1 + shift) % modulus + 1).collect()
}

fn check_residue_vector(pi0: &[u32]) -> Result<u32> {
    let n = pi0.len();
    if n < 2 {
        return Err(Error::OutOfRange(format!("n = {n}; need n ≥ 2")));
    }
    let modulus = (n - 1) as u32;
    if let Some(v) = pi0.iter().find(|&&v| v < 1 || v > modulus) {
        return Err(Error::InvalidInput(format!("representative {v} not in 1..={modulus}")));
    }
    Ok(modulus)
}

/// Every shift `i ∈ 0..n−1` for which `π_0 + i (mod n−1)` is a prime
/// parking function. Exactly one exists for every `π_0`.
pub fn rotation_shifts(pi0: &[u32]) -> Result<Vec<u32>> {
    let modulus = check_residue_vector(pi0)?;
    Ok((0..modulus)
        .filter(|&i| is_prime_slice(&shifted(pi0, modulus, i)))
        .collect())
}

/// Tries every shift and returns the unique one with its prime parking
/// function.
pub fn rotate_to_prime(pi0: &[u32]) -> Result<(u32, PrefVector)> {
    let shifts = rotation_shifts(pi0)?;
    match shifts.as_slice() {
        [i] => Ok((*i, PrefVector::from_trusted(shifted(pi0, pi0.len() as u32 - 1, *i)))),
        _ => Err(Error::Consistency(format!(
            "{} valid rotations of {:?}; expected exactly one",
            shifts.len(),
            pi0
        ))),
    }
}

/// Same result as [`rotate_to_prime`] in linear time. With
/// `e_v = |{j : π_j = v}| − 1`, summing to 1 over the `n − 1` residues, the
/// rotation starts right after the last minimum of the prefix sums of `e`.
pub fn rotate_to_prime_fast(pi0: &[u32]) -> Result<(u32, PrefVector)> {
    let modulus = check_residue_vector(pi0)?;
    let mut counts = vec![0i64; modulus as usize + 1];
    for &v in pi0 {
        counts[v as usize] += 1;
    }
    let (mut prefix, mut min, mut argmin) = (0i64, 0i64, 0u32);
    for k in 1..modulus {
        prefix += counts[k as usize] - 1;
        if prefix <= min {
            min = prefix;
            argmin = k;
        }
    }
    let shift = (modulus - argmin) % modulus;
    Ok((shift, PrefVector::from_trusted(shifted(pi0, modulus, shift))))
}

/// `ℒ^{−1}`: rebuilds `π_0 = (1, 1 + d_1, 1 + d_1 + d_2, …)` with
/// representatives in `1..=n−1`, then applies the unique rotation.
pub fn l_inverse(d: &DiffVector) -> Result<PrefVector> {
    let modulus = (d.n - 1) as u32;
    let mut pi0 = Vec::with_capacity(d.n);
    pi0.push(1u32);
    for &r in &d.residues {
        let prev = *pi0.last().expect("nonempty");
        pi0.push((prev - 1 + r) % modulus + 1);
    }
    Ok(rotate_to_prime(&pi0)?.1)
}

/// Uniform value in `1..=modulus`, rejecting the top partial block of
/// `u32` outputs so no residue is favoured.
pub fn uniform_residue<R: RngCore>(rng: &mut R, modulus: u32) -> u32 {
    assert!(modulus >= 1);
    let zone = (u32::MAX / modulus) * modulus;
    loop {
        let u = rng.next_u32();
        if u < zone {
            return u % modulus + 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
}

impl SampleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::OutOfRange(format!("n = {}; need n ≥ 2", self.n)));
        }
        if self.samples < 1 {
            return Err(Error::OutOfRange("need at least one sample".into()));
        }
        Ok(())
    }
}

/// Sample number `index`, drawn from its own ChaCha8 stream keyed by
/// `(seed, index)`, so any subset of indices can be drawn independently.
pub fn sample_at(n: usize, seed: u64, index: u64) -> PrefVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let modulus = (n - 1) as u32;
    let pi0: Vec<u32> = (0..n).map(|_| uniform_residue(&mut rng, modulus)).collect();
    rotate_to_prime_fast(&pi0).expect("residues are in range").1
}

/// `cfg.samples` uniform prime parking functions of length `cfg.n`.
pub fn kalikow_sample(cfg: SampleConfig) -> Result<impl Iterator<Item = PrefVector>> {
    cfg.validate()?;
    Ok((0..cfg.samples).map(move |i| sample_at(cfg.n, cfg.seed, i)))
}

/// Mean and standard error of one statistic, with exact and asymptotic
/// reference values where known.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatSummary {
    pub mean: f64,
    pub se: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub asymptotic: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloStats {
    pub pi1: StatSummary,
    pub displacement: StatSummary,
    pub ties: StatSummary,
    pub des: StatSummary,
    pub asc: StatSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloReport {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub stats: MonteCarloStats,
}

/// Welford accumulator.
#[derive(Default)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn summary(&self, exact: Option<String>, asymptotic: Option<f64>) -> StatSummary {
        let se = if self.count > 1 {
            (self.m2 / (self.count - 1) as f64 / self.count as f64).sqrt()
        } else {
            0.0
        };
        StatSummary {
            mean: self.mean,
            se,
            exact,
            asymptotic,
        }
    }
}

/// Sample means of `π_1`, displacement, ties, descents and ascents.
pub fn monte_carlo_report(cfg: SampleConfig) -> Result<MonteCarloReport> {
    let mut m: [Moments; 5] = Default::default();
    let full = (cfg.n * (cfg.n + 1) / 2) as f64;
    for p in kalikow_sample(cfg)? {
        let s = p.as_slice();
        let (mut ties, mut des, mut asc) = (0u32, 0u32, 0u32);
        for w in s.windows(2) {
            match w[0].cmp(&w[1]) {
                std::cmp::Ordering::Equal => ties += 1,
                std::cmp::Ordering::Greater => des += 1,
                std::cmp::Ordering::Less => asc += 1,
            }
        }
        m[0].push(s[0] as f64);
        m[1].push(full - p.sum() as f64);
        m[2].push(ties as f64);
        m[3].push(des as f64);
        m[4].push(asc as f64);
    }
    let k = cfg.n as u64 - 1;
    let exact = k <= DEFAULT_EXACT_CUTOFF;
    let pi1_exact = exact.then(|| expected_pi1_exact(k)).transpose()?.map(|r| r.to_string());
    let dis_exact = exact
        .then(|| expected_displacement_exact(k))
        .transpose()?
        .map(|r| r.to_string());
    let (ties, des, asc) = expected_stats_closed(cfg.n as u64);
    Ok(MonteCarloReport {
        n: cfg.n,
        samples: cfg.samples,
        seed: cfg.seed,
        stats: MonteCarloStats {
            pi1: m[0].summary(pi1_exact, Some(expected_pi1_asymptotic(k))),
            displacement: m[1].summary(dis_exact, Some(expected_displacement_asymptotic(k))),
            ties: m[2].summary(Some(ties.to_string()), None),
            des: m[3].summary(Some(des.to_string()), None),
            asc: m[4].summary(Some(asc.to_string()), None),
        },
    })
}
