//! One entry point per identity: each check computes both sides, compares
//! them exactly and returns a serializable report.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expectation::{
    enumerated_means, expected_displacement_exact, expected_pi1_exact, expected_stats_closed, expected_stats_exact,
    l_inverse, l_map, rotate_to_prime, rotate_to_prime_fast, DiffVector,
};
use crate::genfun::{
    check_abel, displacement_enumerator_brute, displacement_enumerator_paths, displacement_enumerator_prime_paths,
    ell_genfun, ell_genfun_closed, mixed_genfun, mixed_genfun_closed,
};
use crate::lukas::{
    alpha_permutation, area, dyck_from_labeled_lukas, height_sequence, inverse_permutation, labeled_path_from_pf,
    lukas_from_labeled_dyck, multinomial_path_count, path_stat_sets, pf_from_labeled_dyck,
    pf_from_labeled_dyck_via_lukas, pf_from_labeled_path, word_from_pf,
};
use crate::pf::{
    ascent_set, count_forward_diff_set, count_forward_diff_set_pair, count_pf, count_pf_first, count_pf_ones,
    count_ppf, count_ppf_first, descent_set, enumerate_pf, enumerate_ppf, f_n_jk, forward_diff_mask,
    forward_differences, is_prime_by_removal, park, stat_profile, EnumLimit, PrefVector,
};
use crate::symfun::{verify_quasisym, verify_quasisym_corr};
use crate::{Integer, Rational};

/// Identities that [`verify`] can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Enumerated `|PF_n|`, `|PPF_n|` against their closed forms.
    Counts,
    /// First-entry and number-of-ones counts against enumeration.
    FirstEntry,
    /// Displacement enumerator via weighted paths and prime paths.
    DisplacementEnum,
    /// Area under the Łukasiewicz path equals displacement.
    Area,
    /// Round trips between parking functions, labeled Łukasiewicz paths and
    /// labeled Dyck paths, with descent/ascent/tie agreement.
    Bijection,
    /// Multinomial sums over Łukasiewicz words.
    MultinomialPaths,
    /// `Σ q^{Δ_ℓ} = (q+n−2)^{n−1}`.
    EllGenfun,
    /// `Σ q^{Δ_ℓ} t^{Δ_m} = (q+t+n−3)^{n−1}`.
    MixedGenfun,
    /// Forward-difference set counts `(n−2)^{n−1−|S|}`.
    TieSet,
    /// Paired forward-difference set counts `(n−3)^{n−1−|S|−|T|}`.
    TieSetPair,
    /// Tie-set quasisymmetric expansion.
    Quasisym,
    /// Forward-difference refinements of the quasisymmetric expansion.
    QuasisymCorr,
    /// Abel sum recurrences and special cases at random rational points.
    Abel,
    /// Exact expectations of `π_1`, displacement, ties, descents, ascents.
    Expectation,
    /// Difference map and circular rotation.
    Rotation,
}

impl Theorem {
    pub const ALL: [Theorem; 15] = [
        Theorem::Counts,
        Theorem::FirstEntry,
        Theorem::DisplacementEnum,
        Theorem::Area,
        Theorem::Bijection,
        Theorem::MultinomialPaths,
        Theorem::EllGenfun,
        Theorem::MixedGenfun,
        Theorem::TieSet,
        Theorem::TieSetPair,
        Theorem::Quasisym,
        Theorem::QuasisymCorr,
        Theorem::Abel,
        Theorem::Expectation,
        Theorem::Rotation,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::Counts => "counts",
            Theorem::FirstEntry => "first-entry",
            Theorem::DisplacementEnum => "displacement-enum",
            Theorem::Area => "area",
            Theorem::Bijection => "bijection",
            Theorem::MultinomialPaths => "multinomial-paths",
            Theorem::EllGenfun => "ell-genfun",
            Theorem::MixedGenfun => "mixed-genfun",
            Theorem::TieSet => "tie-set",
            Theorem::TieSetPair => "tie-set-pair",
            Theorem::Quasisym => "quasisym",
            Theorem::QuasisymCorr => "quasisym-corr",
            Theorem::Abel => "abel",
            Theorem::Expectation => "expectation",
            Theorem::Rotation => "rotation",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL.into_iter().find(|t| t.id() == s).ok_or_else(|| {
            let ids: Vec<_> = Theorem::ALL.iter().map(|t| t.id()).collect();
            Error::InvalidInput(format!("unknown theorem {s:?}; expected one of {}", ids.join(", ")))
        })
    }
}

/// Parameters shared by every check; unused ones are ignored.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyParams {
    pub n: usize,
    /// Residue `ℓ`; every admissible value when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    /// Second residue `m`; every admissible value when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// Number of variables; defaults to `n`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vars: Option<usize>,
    /// Seed for the random points of the Abel check.
    pub seed: u64,
    /// Random points per Abel check.
    pub points: usize,
    #[serde(skip)]
    pub limit: EnumLimit,
}

impl VerifyParams {
    pub fn new(n: usize) -> Self {
        VerifyParams {
            n,
            ell: None,
            m: None,
            vars: None,
            seed: 0,
            points: 50,
            limit: EnumLimit::DEFAULT,
        }
    }
}

/// `{"theorem", "params", "pass", "lhs", "rhs"}`.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub theorem: String,
    pub params: Value,
    pub pass: bool,
    pub lhs: Value,
    pub rhs: Value,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn ints(v: &[Integer]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn rats(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

/// Runs one check.
pub fn verify(theorem: Theorem, params: &VerifyParams) -> Result<VerifyReport> {
    let (lhs, rhs, pass) = match theorem {
        Theorem::Counts => check_counts(params)?,
        Theorem::FirstEntry => check_first_entry(params)?,
        Theorem::DisplacementEnum => check_displacement(params)?,
        Theorem::Area => check_area(params)?,
        Theorem::Bijection => check_bijection(params)?,
        Theorem::MultinomialPaths => check_multinomial(params)?,
        Theorem::EllGenfun => check_ell(params)?,
        Theorem::MixedGenfun => check_mixed(params)?,
        Theorem::TieSet => check_tie_set(params)?,
        Theorem::TieSetPair => check_tie_set_pair(params)?,
        Theorem::Quasisym => {
            let c = verify_quasisym(params.n, params.vars.unwrap_or(params.n), params.limit)?;
            (to_value(&c.lhs), to_value(&c.rhs), c.equal)
        }
        Theorem::QuasisymCorr => check_quasisym_corr(params)?,
        Theorem::Abel => check_abel_random(params)?,
        Theorem::Expectation => check_expectation(params)?,
        Theorem::Rotation => check_rotation(params)?,
    };
    Ok(VerifyReport {
        theorem: theorem.id().to_string(),
        params: to_value(params),
        pass,
        lhs,
        rhs,
    })
}

type Sides = (Value, Value, bool);

fn need_n(p: &VerifyParams, min: usize) -> Result<()> {
    if p.n < min {
        return Err(Error::OutOfRange(format!("n = {}; this check needs n ≥ {min}", p.n)));
    }
    Ok(())
}

fn check_counts(p: &VerifyParams) -> Result<Sides> {
    need_n(p, 1)?;
    let pf = enumerate_pf(p.n, p.limit)?.count();
    let mut ppf = 0u64;
    let mut removal_agrees = true;
    enumerate_pf(p.n, p.limit)?.for_each_slice(|s| {
        let v = PrefVector::new(s.to_vec()).expect("valid");
        if v.is_prime() {
            ppf += 1;
        }
        removal_agrees &= v.is_prime() == is_prime_by_removal(&v);
    });
    let ppf_stream = enumerate_ppf(p.n, p.limit)?.count() as u64;
    let lhs = json!({"pf": pf.to_string(), "ppf": ppf.to_string()});
    let (cpf, cppf) = (count_pf(p.n as u64), count_ppf(p.n as u64));
    let rhs = json!({"pf": cpf.to_string(), "ppf": cppf.to_string()});
    let pass = Integer::from(pf) == cpf && Integer::from(ppf) == cppf && ppf == ppf_stream && removal_agrees;
    Ok((lhs, rhs, pass))
}

/// Enumerated tables against the closed forms: PPF_n by first entry,
/// PF_n by first entry, PF_n by number of ones, and PF_n by
/// (first entry, ones).
fn check_first_entry(p: &VerifyParams) -> Result<Sides> {
    need_n(p, 2)?;
    let n = p.n;
    let mut ppf_first = vec![0u64; n + 1];
    enumerate_ppf(n, p.limit)?.for_each_slice(|s| ppf_first[s[0] as usize] += 1);
    let mut pf_first = vec![0u64; n + 1];
    let mut pf_ones = vec![0u64; n + 1];
    let mut joint = vec![vec![0u64; n + 1]; n + 1];
    enumerate_pf(n, p.limit)?.for_each_slice(|s| {
        let ones = s.iter().filter(|&&e| e == 1).count();
        pf_first[s[0] as usize] += 1;
        pf_ones[ones] += 1;
        joint[s[0] as usize][ones] += 1;
    });
    let nu = n as u64;
    let brute = |v: &[u64]| -> Vec<Integer> { v[1..].iter().map(|&c| Integer::from(c)).collect() };
    let ppf_first_closed: Vec<Integer> = (1..=nu).map(|j| count_ppf_first(nu, j)).collect::<Result<_>>()?;
    let pf_first_closed: Vec<Integer> = (1..=nu).map(|j| count_pf_first(nu, j)).collect::<Result<_>>()?;
    let pf_ones_closed: Vec<Integer> = (1..=nu).map(|k| count_pf_ones(nu, k)).collect::<Result<_>>()?;
    let mut joint_brute = Vec::new();
    let mut joint_closed = Vec::new();
    for j in 2..=nu {
        for k in 1..=nu {
            joint_brute.push(Integer::from(joint[j as usize][k as usize]));
            joint_closed.push(f_n_jk(nu, j, k)?);
        }
    }
    let sides = [
        (brute(&ppf_first), ppf_first_closed),
        (brute(&pf_first), pf_first_closed),
        (brute(&pf_ones), pf_ones_closed),
        (joint_brute, joint_closed),
    ];
    let pass = sides.iter().all(|(a, b)| a == b);
    let keys = ["ppf_first", "pf_first", "pf_ones", "pf_first_ones"];
    let mut lhs = serde_json::Map::new();
    let mut rhs = serde_json::Map::new();
    for (key, (a, b)) in keys.iter().zip(&sides) {
        lhs.insert(key.to_string(), ints(a));
        rhs.insert(key.to_string(), ints(b));
    }
    Ok((Value::Object(lhs), Value::Object(rhs), pass))
}

fn check_displacement(p: &VerifyParams) -> Result<Sides> {
    need_n(p, 1)?;
    let brute = displacement_enumerator_brute(p.n, p.limit)?;
    let prime = displacement_enumerator_prime_paths(p.n, p.limit)?;
    let paths = if p.n >= 2 {
        displacement_enumerator_paths(p.n, p.limit)?
    } else {
        prime.clone()
    };
    let pass = paths == brute && prime == brute;
    Ok((to_value(&paths), to_value(&brute), pass))
}

fn check_area(p: &VerifyParams) -> Result<Sides> {
    need_n(p, 1)?;
    let (mut checked, mut failures) = (0u64, 0u64);
    for pf in enumerate_pf(p.n, p.limit)? {
        checked += 1;
        let w = word_from_pf(&pf)?;
        let h = height_sequence(&w);
        let counts_ok =
            (1..=p.n).all(|j| h.multiplicity(j) as usize == pf.as_slice().iter().filter(|&&e| e as usize == j).count());
        if area(&w) != park(&pf)?.total || !counts_ok {
            failures += 1;
        }
    }
    Ok((
        json!({"checked": checked, "failures": failures}),
        json!({"checked": checked, "failures": 0}),
        failures == 0,
    ))
}

fn check_bijection(p: &VerifyParams) -> Result<Sides> {
    need_n(p, 1)?;
    let (mut checked, mut failures) = (0u64, 0u64);
    for pf in enumerate_pf(p.n, p.limit)? {
        checked += 1;
        let l = labeled_path_from_pf(&pf)?;
        let d = dyck_from_labeled_lukas(&l);
        let profile = stat_profile(&pf);
        let sets = path_stat_sets(&l);
        let inv = inverse_permutation(&alpha_permutation(&l));
        let asc_tie: BTreeSet<usize> = profile.ascent_set.union(&profile.tie_set).copied().collect();
        let ok = pf_from_labeled_path(&l) == pf
            && lukas_from_labeled_dyck(&d)? == l
            && pf_from_labeled_dyck(&d) == pf
            && pf_from_labeled_dyck_via_lukas(&d)? == pf
            && sets.descent_set == profile.descent_set
            && sets.ascent_set == profile.ascent_set
            && sets.tie_set == profile.tie_set
            && descent_set(&inv) == profile.descent_set
            && ascent_set(&inv) == asc_tie;
        if !ok {
            failures += 1;
        }
    }
    Ok((
        json!({"checked": checked, "failures": failures}),
        json!({"checked": checked, "failures": 0}),
        failures == 0,
    ))
}

fn check_multinomial(p: &VerifyParams) -> Result<Sides> {
    need_n(p, 1)?;
    let all = multinomial_path_count(p.n, false, p.limit)?;
    let prime = multinomial_path_count(p.n, true, p.limit)?;
    let (cpf, cppf) = (count_pf(p.n as u64), count_ppf(p.n as u64));
    let pass = all == cpf && prime == cppf;
    Ok((
        json!({"all": all.to_string(), "prime": prime.to_string()}),
        json!({"all": cpf.to_string(), "prime": cppf.to_string()}),
        pass,
    ))
}

fn residues(n: usize, fixed: Option<usize>) -> Vec<usize> {
    match fixed {
        Some(ell) => vec![ell],
        None => (0..=n.saturating_sub(2)).collect(),
    }
}

fn check_ell(p: &VerifyParams) -> Result<Sides> {
    need_n(p, 2)?;
    let closed = ell_genfun_closed(p.n)?;
    let mut lhs = serde_json::Map::new();
    let mut pass = true;
    for ell in residues(p.n, p.ell) {
        let brute = ell_genfun(p.n, ell, p.limit)?;
        pass &= brute == closed;
        lhs.insert(ell.to_string(), to_value(&brute));
    }
    let lhs = match p.ell {
        Some(ell) => lhs.remove(&ell.to_string()).expect("present"),
        None => Value::Object(lhs),
    };
    Ok((lhs, to_value(&closed), pass))
}

fn pairs(n: usize, ell: Option<usize>, m: Option<usize>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in residues(n, ell) {
        for b in residues(n, m) {
            if a != b {
                out.push((a, b));
            }
        }
    }
    out
}

fn check_mixed(p: &VerifyParams) -> Result<Sides> {
    need_n(p, 3)?;
    if let (Some(a), Some(b)) = (p.ell, p.m) {
        if a == b {
            return Err(Error::Precondition(format!("residues must differ, both are {a}")));
        }
    }
    let closed = mixed_genfun_closed(p.n)?;
    let mut lhs = serde_json::Map::new();
    let mut pass = true;
    for (a, b) in pairs(p.n, p.ell, p.m) {
        let brute = mixed_genfun(p.n, a, b, p.limit)?;
        pass &= brute == closed;
        lhs.insert(format!("{a},{b}"), to_value(&brute));
    }
    let lhs = if lhs.len() == 1 {
        lhs.into_iter().next().expect("one entry").1
    } else {
        Value::Object(lhs)
    };
    Ok((lhs, to_value(&closed), pass))
}

fn mask_to_set(mask: u64) -> BTreeSet<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// For each residue, counts of `PPF_n` by forward-difference set, indexed
/// by the bitmask of the set (bit `i−1` for position `i`).
fn check_tie_set(p: &VerifyParams) -> Result<Sides> {
    need_n(p, 2)?;
    let width = 1usize << (p.n - 1);
    let ells = residues(p.n, p.ell);
    let mut hist = vec![vec![0u64; width]; ells.len()];
    enumerate_ppf(p.n, p.limit)?.for_each_slice(|s| {
        let diffs = forward_differences(s);
        for (row, &ell) in hist.iter_mut().zip(&ells) {
            row[forward_diff_mask(&diffs, ell as u32) as usize] += 1;
        }
    });
    let mut lhs = serde_json::Map::new();
    let mut rhs = serde_json::Map::new();
    let mut pass = true;
    for (row, &ell) in hist.iter().zip(&ells) {
        let brute: Vec<Integer> = row.iter().map(|&c| Integer::from(c)).collect();
        let closed: Vec<Integer> = (0..width as u64)
            .map(|mask| count_forward_diff_set(p.n as u64, ell as u64, &mask_to_set(mask)))
            .collect::<Result<_>>()?;
        pass &= brute == closed;
        lhs.insert(ell.to_string(), ints(&brute));
        rhs.insert(ell.to_string(), ints(&closed));
    }
    Ok((Value::Object(lhs), Value::Object(rhs), pass))
}

/// Counts by disjoint pairs `(S, T)`, listed with `S` and `T` as masks in
/// increasing order of `(S, T)`.
fn check_tie_set_pair(p: &VerifyParams) -> Result<Sides> {
    need_n(p, 3)?;
    if let (Some(a), Some(b)) = (p.ell, p.m) {
        if a == b {
            return Err(Error::Precondition(format!("residues must differ, both are {a}")));
        }
    }
    let width = 1usize << (p.n - 1);
    let prs = pairs(p.n, p.ell, p.m);
    for &(a, b) in &prs {
        if a > p.n - 2 || b > p.n - 2 {
            return Err(Error::OutOfRange(format!("residues ({a}, {b}) not in 0..={}", p.n - 2)));
        }
    }
    let mut hist = vec![std::collections::HashMap::<(u64, u64), u64>::new(); prs.len()];
    enumerate_ppf(p.n, p.limit)?.for_each_slice(|s| {
        let diffs = forward_differences(s);
        for (h, &(a, b)) in hist.iter_mut().zip(&prs) {
            let key = (forward_diff_mask(&diffs, a as u32), forward_diff_mask(&diffs, b as u32));
            *h.entry(key).or_default() += 1;
        }
    });
    let mut lhs = serde_json::Map::new();
    let mut rhs = serde_json::Map::new();
    let mut pass = true;
    for (h, &(a, b)) in hist.iter().zip(&prs) {
        let (mut brute, mut closed) = (Vec::new(), Vec::new());
        for s in 0..width as u64 {
            for t in 0..width as u64 {
                if s & t != 0 {
                    continue;
                }
                brute.push(Integer::from(h.get(&(s, t)).copied().unwrap_or(0)));
                closed.push(count_forward_diff_set_pair(
                    p.n as u64,
                    a as u64,
                    b as u64,
                    &mask_to_set(s),
                    &mask_to_set(t),
                )?);
            }
        }
        pass &= brute == closed;
        lhs.insert(format!("{a},{b}"), ints(&brute));
        rhs.insert(format!("{a},{b}"), ints(&closed));
    }
    Ok((Value::Object(lhs), Value::Object(rhs), pass))
}

fn check_quasisym_corr(p: &VerifyParams) -> Result<Sides> {
    need_n(p, 3)?;
    if let (Some(a), Some(b)) = (p.ell, p.m) {
        if a == b {
            return Err(Error::Precondition(format!("residues must differ, both are {a}")));
        }
    }
    let k = p.vars.unwrap_or(p.n);
    let mut lhs = serde_json::Map::new();
    let mut rhs = serde_json::Map::new();
    let mut pass = true;
    for (a, b) in pairs(p.n, p.ell, p.m) {
        let c = verify_quasisym_corr(p.n, a, b, k, p.limit)?;
        pass &= c.same.equal && c.mixed.equal;
        let key = format!("{a},{b}");
        lhs.insert(key.clone(), json!({"same": c.same.lhs, "mixed": c.mixed.lhs}));
        rhs.insert(key, json!({"same": c.same.rhs, "mixed": c.mixed.rhs}));
    }
    Ok((Value::Object(lhs), Value::Object(rhs), pass))
}

/// Random rational in `[-5, 5]` with denominator at most 7.
fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let den = (rng.next_u32() % 7 + 1) as i64;
    let num = (rng.next_u32() % (70 + 1)) as i64 - 35;
    Rational::new(num.into(), den.into())
}

/// Checks every Abel identity at `points` random rational `(x, y)` and a
/// few `(p, q)`; pole points are redrawn.
fn check_abel_random(p: &VerifyParams) -> Result<Sides> {
    let n = p.n as u32;
    if n > 20 {
        return Err(Error::OutOfRange(format!("n = {n} exceeds 20")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    let mut pass = true;
    let (mut found, mut attempts) = (0usize, 0usize);
    while found < p.points {
        attempts += 1;
        if attempts > 100 * p.points.max(1) {
            return Err(Error::Consistency("could not find enough pole-free points".into()));
        }
        let (x, y) = (random_rational(&mut rng), random_rational(&mut rng));
        let pp = (rng.next_u32() % 4) as i64 - 1;
        let qq = (rng.next_u32() % 4) as i64 - 1;
        match check_abel(n, &x, &y, pp, qq) {
            Ok(c) => {
                found += 1;
                pass &= c.all_equal();
                let point = json!({"x": x.to_string(), "y": y.to_string(), "p": pp, "q": qq});
                lhs.push(json!({"point": point, "value": c.value.to_string(),
                    "neg1_0": c.closed_neg1_0.0.to_string(), "neg1_1": c.closed_neg1_1.0.to_string()}));
                rhs.push(json!({"point": point,
                    "shift": c.shift.as_ref().map(|s| s.to_string()),
                    "factorial": c.factorial.to_string(),
                    "neg1_0": c.closed_neg1_0.1.to_string(), "neg1_1": c.closed_neg1_1.1.to_string()}));
            }
            Err(Error::Pole(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok((Value::Array(lhs), Value::Array(rhs), pass))
}

/// `n` here is the length of the prime parking functions, so the mean of
/// `π_1` is compared with the closed form at `n − 1`.
fn check_expectation(p: &VerifyParams) -> Result<Sides> {
    need_n(p, 2)?;
    let k = p.n as u64 - 1;
    let (pi1, dis) = enumerated_means(k, p.limit)?;
    let stats = expected_stats_exact(p.n, p.limit)?;
    let (t, d, a) = expected_stats_closed(p.n as u64);
    let pi1_c = expected_pi1_exact(k)?;
    let dis_c = expected_displacement_exact(k)?;
    let one = Rational::from_integer(1.into());
    let pass = pi1 == pi1_c
        && dis == dis_c
        && stats.ties == t
        && stats.des == d
        && stats.asc == a
        && stats.per_residue.iter().all(|r| *r == one);
    let lhs = json!({"pi1": pi1.to_string(), "displacement": dis.to_string(),
        "ties": stats.ties.to_string(), "des": stats.des.to_string(), "asc": stats.asc.to_string(),
        "per_residue": rats(&stats.per_residue)});
    let ones = vec![one; p.n - 1];
    let rhs = json!({"pi1": pi1_c.to_string(), "displacement": dis_c.to_string(),
        "ties": t.to_string(), "des": d.to_string(), "asc": a.to_string(),
        "per_residue": rats(&ones)});
    Ok((lhs, rhs, pass))
}

/// Exhaustive over `PPF_n`, all residue vectors of length `n − 1` and all
/// starting vectors in `{1..n−1}^n`.
fn check_rotation(p: &VerifyParams) -> Result<Sides> {
    need_n(p, 2)?;
    p.limit.check(p.n)?;
    let n = p.n;
    let m = (n - 1) as u32;
    let mut failures = 0u64;
    let mut ppf = 0u64;
    for pf in enumerate_ppf(n, p.limit)? {
        ppf += 1;
        if l_inverse(&l_map(&pf)?)? != pf {
            failures += 1;
        }
    }
    let mut vectors = 0u64;
    let mut residues = vec![0u32; n - 1];
    loop {
        vectors += 1;
        let d = DiffVector::new(n, residues.clone())?;
        if l_map(&l_inverse(&d)?)? != d {
            failures += 1;
        }
        if !odometer(&mut residues, m) {
            break;
        }
    }
    let mut starts = 0u64;
    let mut pi0 = vec![1u32; n];
    loop {
        starts += 1;
        match rotate_to_prime(&pi0) {
            Ok(slow) if rotate_to_prime_fast(&pi0)? == slow => {}
            _ => failures += 1,
        }
        let mut digits: Vec<u32> = pi0.iter().map(|v| v - 1).collect();
        if !odometer(&mut digits, m) {
            break;
        }
        pi0 = digits.iter().map(|v| v + 1).collect();
    }
    let expect = count_ppf(n as u64);
    let lhs = json!({"ppf": ppf.to_string(), "residue_vectors": vectors.to_string(),
        "starts": starts.to_string(), "failures": failures});
    let rhs = json!({"ppf": expect.to_string(), "residue_vectors": expect.to_string(),
        "starts": Integer::from(m).pow(n as u32).to_string(), "failures": 0});
    Ok((
        lhs,
        rhs,
        failures == 0 && Integer::from(ppf) == expect && Integer::from(vectors) == expect,
    ))
}

/// Advances digits in `0..base` like an odometer; false after the last.
fn odometer(digits: &mut [u32], base: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}
