//! Acceptance harness. Each criterion is checked against an independent
//! oracle and reported on one `PASS`/`FAIL` line; the process exits nonzero
//! if any criterion fails.

use std::collections::{BTreeSet, HashMap};
use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use parkfn::expectation::{
    expected_displacement_asymptotic, expected_displacement_exact, expected_displacement_float,
    expected_pi1_asymptotic, expected_pi1_exact, expected_pi1_float, l_inverse, l_map, monte_carlo_report,
    rotate_to_prime, rotate_to_prime_fast, sample_at, DiffVector, SampleConfig,
};
use parkfn::genfun::{
    abel_sum, check_abel, displacement_enumerator_brute, displacement_enumerator_paths,
    displacement_enumerator_prime_paths, ell_genfun, ell_genfun_closed, mixed_genfun, mixed_genfun_closed,
};
use parkfn::lukas::{
    alpha_permutation, area, dyck_from_labeled_lukas, inverse_permutation, labeled_path_from_pf,
    lukas_from_labeled_dyck, pf_from_labeled_dyck, pf_from_labeled_path, word_from_pf,
};
use parkfn::pf::{
    count_forward_diff_set, count_forward_diff_set_pair, count_pf, count_pf_first, count_pf_ones, count_ppf,
    count_ppf_first, descent_set, enumerate_pf, enumerate_ppf, f_n_jk,
};
use parkfn::symfun::{verify_quasisym, verify_quasisym_corr};
use parkfn::{EnumLimit, Error, IntPoly, Integer, PrefVector, Rational};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, Box<dyn std::error::Error>>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {{
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+).into());
        }
    }};
}

const LIMIT: EnumLimit = EnumLimit(8);

/// Every word in `{1..=m}^len`, lexicographically.
fn all_words(len: usize, m: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w: Vec<u32>| {
                (1..=m).map(move |v| {
                    let mut w = w.clone();
                    w.push(v);
                    w
                })
            })
            .collect();
    }
    out
}

fn is_pf_oracle(s: &[u32]) -> bool {
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.iter().enumerate().all(|(i, &v)| v as usize <= i + 1)
}

/// At least `i + 1` cars prefer the first `i` spots for every `i < n`.
fn is_ppf_oracle(s: &[u32]) -> bool {
    let n = s.len();
    is_pf_oracle(s) && (1..n).all(|i| s.iter().filter(|&&v| v as usize <= i).count() > i)
}

/// Total displacement by simulating the parking process.
fn simulated_displacement(s: &[u32]) -> u64 {
    let mut taken = vec![false; s.len() + 2];
    let mut total = 0;
    for &pref in s {
        let spot = (pref as usize..).find(|&k| !taken[k]).unwrap();
        taken[spot] = true;
        total += (spot - pref as usize) as u64;
    }
    total
}

fn residue_mask(s: &[u32], ell: u32) -> u64 {
    let m = s.len() as i64 - 1;
    s.windows(2)
        .enumerate()
        .filter(|(_, w)| (w[1] as i64 - w[0] as i64).rem_euclid(m) == ell as i64)
        .fold(0, |mask, (i, _)| mask | 1 << i)
}

fn mask_set(mask: u64) -> BTreeSet<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn pv(s: &[u32]) -> PrefVector {
    PrefVector::new(s.to_vec()).unwrap()
}

fn int(v: i64) -> Integer {
    Integer::from(v)
}

fn rat(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

fn counts() -> Check {
    for n in 1..=8usize {
        let (mut pf, mut ppf) = (0u64, 0u64);
        enumerate_pf(n, LIMIT)?.for_each_slice(|_| pf += 1);
        enumerate_ppf(n, LIMIT)?.for_each_slice(|_| ppf += 1);
        ensure!(Integer::from(pf) == count_pf(n as u64), "|PF_{n}| = {pf}");
        ensure!(Integer::from(ppf) == count_ppf(n as u64), "|PPF_{n}| = {ppf}");
        let expected_ppf = if n == 1 { 1 } else { (n as u64 - 1).pow(n as u32 - 1) };
        ensure!(
            ppf == expected_ppf && pf == (n as u64 + 1).pow(n as u32 - 1),
            "n = {n}: closed form"
        );
    }
    for n in 1..=6usize {
        let words = all_words(n, n as u32);
        let pf: Vec<Vec<u32>> = enumerate_pf(n, LIMIT)?.map(PrefVector::into_vec).collect();
        let ppf: Vec<Vec<u32>> = enumerate_ppf(n, LIMIT)?.map(PrefVector::into_vec).collect();
        let pf_oracle: Vec<Vec<u32>> = words.iter().filter(|w| is_pf_oracle(w)).cloned().collect();
        let ppf_oracle: Vec<Vec<u32>> = words.iter().filter(|w| is_ppf_oracle(w)).cloned().collect();
        ensure!(pf == pf_oracle, "PF_{n} differs from the filtered cube");
        ensure!(ppf == ppf_oracle, "PPF_{n} differs from the filtered cube");
        for w in &words {
            let p = pv(w);
            ensure!(p.is_parking_function() == is_pf_oracle(w), "{p}: parking predicate");
            ensure!(p.is_prime() == is_ppf_oracle(w), "{p}: prime predicate");
            ensure!(
                parkfn::pf::is_prime_by_removal(&p) == is_ppf_oracle(w),
                "{p}: removal predicate"
            );
        }
    }
    Ok("n ≤ 8 enumerated; PF_8 = 4782969, PPF_8 = 823543; membership matches [n]^n, n ≤ 6".into())
}

fn first_entry_expectation() -> Check {
    for n in 1..=6usize {
        let (mut count, mut pi1, mut dis) = (0i64, 0i64, 0i64);
        enumerate_ppf(n + 1, LIMIT)?.for_each_slice(|s| {
            count += 1;
            pi1 += s[0] as i64;
            dis += simulated_displacement(s) as i64;
        });
        let got = expected_pi1_exact(n as u64)?;
        ensure!(
            got == rat(pi1, count),
            "n = {n}: E[π1] = {got}, average {}",
            rat(pi1, count)
        );
        let got = expected_displacement_exact(n as u64)?;
        ensure!(
            got == rat(dis, count),
            "n = {n}: E[dis] = {got}, average {}",
            rat(dis, count)
        );
    }
    ensure!(expected_pi1_exact(2)? == rat(5, 4), "E[π1] at n = 2");
    ensure!(expected_pi1_exact(3)? == rat(14, 9), "E[π1] at n = 3");
    Ok("exhaustive averages over PPF_{n+1}, n ≤ 6; 5/4 and 14/9".into())
}

fn asymptotics() -> Check {
    let start = Instant::now();
    let err = |n: u64| (expected_pi1_float(n) - expected_pi1_asymptotic(n)).abs();
    let (e2, e4) = (err(100), err(10_000));
    ensure!(e4 < 0.05, "π1 error {e4} at n = 10^4");
    ensure!(e4 < e2, "π1 error grows: {e2} at 10^2, {e4} at 10^4");
    let d = expected_displacement_float(10_000);
    let rel = (d - expected_displacement_asymptotic(10_000)).abs() / d;
    ensure!(rel < 0.02, "displacement relative error {rel}");
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 1.0, "float evaluation took {secs:.2}s");
    Ok(format!(
        "π1 error {e2:.4} → {e4:.5}; displacement relative error {rel:.2e}"
    ))
}

fn displacement_enumerator() -> Check {
    for n in 2..=8usize {
        let brute = displacement_enumerator_brute(n, LIMIT)?;
        ensure!(
            displacement_enumerator_paths(n, LIMIT)? == brute,
            "weighted paths at N = {n}"
        );
        ensure!(
            displacement_enumerator_prime_paths(n, LIMIT)? == brute,
            "prime paths at N = {n}"
        );
    }
    let expected = IntPoly::new(vec![int(0), int(0), int(3), int(1)]);
    ensure!(
        displacement_enumerator_paths(3, LIMIT)? == expected,
        "N = 3 is not q^3 + 3q^2"
    );
    Ok("both path formulas equal enumeration for 2 ≤ N ≤ 8; N = 3 gives q^3 + 3q^2".into())
}

fn area_law() -> Check {
    let mut checked = 0u64;
    for n in 1..=6usize {
        for p in enumerate_pf(n, LIMIT)? {
            let a = area(&word_from_pf(&p)?);
            ensure!(a == simulated_displacement(p.as_slice()), "{p}: area {a}");
            checked += 1;
        }
    }
    let instance = word_from_pf(&pv(&[1, 1, 1, 3, 4, 4, 6]))?;
    ensure!(area(&instance) == 8, "worked instance has area {}", area(&instance));
    Ok(format!("{checked} parking functions; worked instance has area 8"))
}

fn bijections() -> Check {
    let mut checked = 0u64;
    for n in 1..=6usize {
        for p in enumerate_pf(n, LIMIT)? {
            let l = labeled_path_from_pf(&p)?;
            let d = dyck_from_labeled_lukas(&l);
            ensure!(pf_from_labeled_path(&l) == p, "{p}: Łukasiewicz round trip");
            ensure!(lukas_from_labeled_dyck(&d)? == l, "{p}: Dyck to Łukasiewicz");
            ensure!(pf_from_labeled_dyck(&d) == p, "{p}: Dyck round trip");
            let inv = inverse_permutation(&alpha_permutation(&l));
            ensure!(
                descent_set(p.as_slice()) == descent_set(&inv),
                "{p}: descent sets differ"
            );
            checked += 1;
        }
    }
    let l = labeled_path_from_pf(&pv(&[2, 1, 3, 1, 3, 1, 6, 4]))?;
    ensure!(
        alpha_permutation(&l) == [2, 4, 6, 1, 3, 5, 8, 7],
        "worked α_L = {:?}",
        alpha_permutation(&l)
    );
    ensure!(
        pf_from_labeled_path(&l).as_slice() == [2, 1, 3, 1, 3, 1, 6, 4],
        "worked α round trip"
    );
    Ok(format!("{checked} round trips and descent sets; worked α_L = 24613587"))
}

fn forward_difference_genfuns() -> Check {
    for n in 2..=7usize {
        let closed = ell_genfun_closed(n)?;
        let oracle = IntPoly::new(vec![int(n as i64 - 2), int(1)]).pow(n as u32 - 1);
        ensure!(closed == oracle, "closed form at n = {n}");
        for ell in 0..=n - 2 {
            ensure!(ell_genfun(n, ell, LIMIT)? == oracle, "n = {n}, ℓ = {ell}");
        }
    }
    for n in 3..=6usize {
        let closed = mixed_genfun_closed(n)?;
        for ell in 0..=n - 2 {
            for m in (0..=n - 2).filter(|&m| m != ell) {
                let brute = mixed_genfun(n, ell, m, LIMIT)?;
                ensure!(brute == closed, "n = {n}, (ℓ, m) = ({ell}, {m})");
                let total: Integer = brute.terms().map(|(_, _, c)| c.clone()).sum();
                ensure!(total == count_ppf(n as u64), "coefficient sum at n = {n}");
            }
        }
    }
    Ok("(q+n−2)^{n−1} for every ℓ, 2 ≤ n ≤ 7; (q+t+n−3)^{n−1} for every ℓ ≠ m, 3 ≤ n ≤ 6".into())
}

fn forward_difference_sets() -> Check {
    let mut compared = 0u64;
    for n in 2..=7usize {
        let slots = n - 1;
        let residues = n as u32 - 1;
        let mut single: Vec<HashMap<u64, u64>> = vec![HashMap::new(); residues as usize];
        let mut pairs: HashMap<(u32, u32, u64, u64), u64> = HashMap::new();
        enumerate_ppf(n, LIMIT)?.for_each_slice(|s| {
            let masks: Vec<u64> = (0..residues).map(|ell| residue_mask(s, ell)).collect();
            for ell in 0..residues {
                *single[ell as usize].entry(masks[ell as usize]).or_default() += 1;
                for m in (0..residues).filter(|&m| m != ell) {
                    *pairs
                        .entry((ell, m, masks[ell as usize], masks[m as usize]))
                        .or_default() += 1;
                }
            }
        });
        for ell in 0..residues {
            for mask in 0..1u64 << slots {
                let got = single[ell as usize].get(&mask).copied().unwrap_or(0);
                let closed = count_forward_diff_set(n as u64, ell as u64, &mask_set(mask))?;
                ensure!(
                    Integer::from(got) == closed,
                    "n = {n}, ℓ = {ell}, S = {:?}",
                    mask_set(mask)
                );
                compared += 1;
            }
        }
        if n < 3 {
            continue;
        }
        for ell in 0..residues {
            for m in (0..residues).filter(|&m| m != ell) {
                for s in 0..1u64 << slots {
                    let free = !s & ((1 << slots) - 1);
                    let mut t = free;
                    loop {
                        let got = pairs.get(&(ell, m, s, t)).copied().unwrap_or(0);
                        let closed =
                            count_forward_diff_set_pair(n as u64, ell as u64, m as u64, &mask_set(s), &mask_set(t))?;
                        ensure!(
                            Integer::from(got) == closed,
                            "n = {n}, (ℓ, m) = ({ell}, {m}), S = {s:b}, T = {t:b}"
                        );
                        compared += 1;
                        if t == 0 {
                            break;
                        }
                        t = (t - 1) & free;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{compared} set counts compared for n ≤ 7, including 0^0 = 1 at n = 2"
    ))
}

fn quasisymmetric() -> Check {
    for n in 2..=6usize {
        let c = verify_quasisym(n, n, LIMIT)?;
        ensure!(c.equal, "tie-set expansion at n = {n}");
    }
    for n in 3..=5usize {
        for ell in 0..=n - 2 {
            for m in (0..=n - 2).filter(|&m| m != ell) {
                let c = verify_quasisym_corr(n, ell, m, n, LIMIT)?;
                ensure!(
                    c.same.equal,
                    "same-residue refinement at n = {n}, (ℓ, m) = ({ell}, {m})"
                );
                ensure!(c.mixed.equal, "mixed refinement at n = {n}, (ℓ, m) = ({ell}, {m})");
            }
        }
    }
    let c = verify_quasisym(3, 3, LIMIT)?;
    let mut terms = 0;
    for e in all_words(3, 4)
        .into_iter()
        .map(|w| w.iter().map(|v| v - 1).collect::<Vec<u32>>())
    {
        if e.iter().sum::<u32>() != 3 {
            continue;
        }
        let expected = match e.iter().filter(|&&v| v > 0).count() {
            1 => 1,
            2 => 2,
            _ => 4,
        };
        ensure!(
            c.lhs.coeff(&e) == IntPoly::constant(int(expected)),
            "coefficient of x^{e:?}"
        );
        terms += 1;
    }
    ensure!(
        terms == 10 && c.lhs.len() == 10,
        "n = 3 expansion has {} terms",
        c.lhs.len()
    );
    Ok("k = n variables: tie sets n ≤ 6, refinements n ≤ 5 for every ℓ ≠ m; n = 3 gives 1, 2, 4".into())
}

fn refined_counts() -> Check {
    let mut compared = 0u64;
    for n in 1..=7usize {
        let nu = n as u64;
        let mut first = vec![0u64; n + 1];
        let mut ones = vec![0u64; n + 1];
        let mut joint = vec![vec![0u64; n + 1]; n + 1];
        enumerate_pf(n, LIMIT)?.for_each_slice(|s| {
            let k = s.iter().filter(|&&v| v == 1).count();
            first[s[0] as usize] += 1;
            ones[k] += 1;
            joint[s[0] as usize][k] += 1;
        });
        let mut ppf_first = vec![0u64; n + 2];
        enumerate_ppf(n + 1, LIMIT)?.for_each_slice(|s| ppf_first[s[0] as usize] += 1);
        for j in 1..=nu {
            ensure!(
                Integer::from(first[j as usize]) == count_pf_first(nu, j)?,
                "PF_{n}, π1 = {j}"
            );
            ensure!(
                Integer::from(ones[j as usize]) == count_pf_ones(nu, j)?,
                "PF_{n}, {j} ones"
            );
            compared += 2;
        }
        for j in 1..=nu + 1 {
            ensure!(
                Integer::from(ppf_first[j as usize]) == count_ppf_first(nu + 1, j)?,
                "PPF_{}, π1 = {j}",
                n + 1
            );
            compared += 1;
        }
        for j in 2..=nu {
            for k in 1..=nu {
                ensure!(
                    Integer::from(joint[j as usize][k as usize]) == f_n_jk(nu, j, k)?,
                    "f_{n}({j}, {k})"
                );
                compared += 1;
            }
        }
    }
    ensure!(f_n_jk(3, 2, 1)? == int(4), "f_3(2, 1)");
    ensure!(count_ppf_first(3, 1)? == int(3), "PPF_3 with π1 = 1");
    Ok(format!(
        "{compared} closed forms equal enumeration for n ≤ 7; f_3(2,1) = 4, PPF_3 first entry 1 gives 3"
    ))
}

/// `Σ_s C(n,s) (x+s)^{s+p} (y+n−s)^{n−s+q}` with `None` at a pole.
fn abel_oracle(n: u32, x: &Rational, y: &Rational, p: i64, q: i64) -> Option<Rational> {
    let pow = |b: Rational, e: i64| -> Option<Rational> {
        if e < 0 && b.is_zero() {
            return None;
        }
        Some(num_traits::pow::Pow::pow(b, e as i32))
    };
    let mut total = Rational::zero();
    let mut binom = Rational::one();
    for s in 0..=n as i64 {
        let a = pow(x + Rational::from_integer(s.into()), s + p)?;
        let b = pow(y + Rational::from_integer((n as i64 - s).into()), n as i64 - s + q)?;
        total += &binom * a * b;
        binom *= rat(n as i64 - s, s + 1);
    }
    Some(total)
}

fn abel() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut small = |lo: i64, span: u32| lo + (rng.next_u32() % span) as i64;
    let (mut points, mut redraws) = (0u32, 0u32);
    for n in 0..=8u32 {
        let mut done = 0;
        while done < 50 {
            let x = rat(small(-12, 25), small(1, 6));
            let y = rat(small(-12, 25), small(1, 6));
            let (p, q) = (small(-2, 5), small(-2, 5));
            let check = match check_abel(n, &x, &y, p, q) {
                Err(Error::Pole(_)) => {
                    redraws += 1;
                    continue;
                }
                other => other?,
            };
            let oracle = abel_oracle(n, &x, &y, p, q).ok_or("oracle hit a pole the library missed")?;
            ensure!(
                check.value == oracle,
                "A_{n}({x}, {y}; {p}, {q}) = {}, oracle {oracle}",
                check.value
            );
            ensure!(abel_sum(n, &x, &y, p, q)? == oracle, "direct sum at n = {n}");
            ensure!(
                check.all_equal(),
                "recurrence or special case at n = {n}, x = {x}, y = {y}, p = {p}, q = {q}"
            );
            done += 1;
            points += 1;
        }
    }
    Ok(format!(
        "{points} exact rational points for n ≤ 8 ({redraws} pole redraws)"
    ))
}

fn sampler() -> Check {
    for n in 2..=6usize {
        let ppf: BTreeSet<Vec<u32>> = enumerate_ppf(n, LIMIT)?.map(PrefVector::into_vec).collect();
        let mut image = BTreeSet::new();
        for w in all_words(n - 1, n as u32 - 1) {
            let d = DiffVector::new(n, w.iter().map(|v| v - 1).collect())?;
            let p = l_inverse(&d)?;
            ensure!(l_map(&p)? == d, "ℒ(ℒ^{{-1}}(d)) ≠ d for {:?}", d.residues());
            image.insert(p.into_vec());
        }
        ensure!(image == ppf, "ℒ^{{-1}} is not onto PPF_{n}");
        for w in all_words(n, n as u32 - 1) {
            ensure!(rotate_to_prime(&w)? == rotate_to_prime_fast(&w)?, "rotation of {w:?}");
        }
    }

    let index: HashMap<Vec<u32>, usize> = enumerate_ppf(4, LIMIT)?
        .enumerate()
        .map(|(i, p)| (p.into_vec(), i))
        .collect();
    let draws = 1_000_000u64;
    let mut hist = vec![0u64; index.len()];
    for i in 0..draws {
        hist[index[sample_at(4, 7, i).as_slice()]] += 1;
    }
    let expected = draws as f64 / index.len() as f64;
    let chi2: f64 = hist.iter().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
    let df = (index.len() - 1) as f64;
    let threshold = df + 5.0 * (2.0 * df).sqrt();
    ensure!(chi2 < threshold, "χ² = {chi2:.2} over {threshold:.2}");

    let n = 50usize;
    let report = monte_carlo_report(SampleConfig {
        n,
        samples: 100_000,
        seed: 11,
    })?;
    let s = &report.stats;
    let targets = [
        ("π1", &s.pi1, expected_pi1_exact(n as u64 - 1)?.to_f64().unwrap()),
        ("ties", &s.ties, 1.0),
        ("des", &s.des, (n as f64 - 2.0) / 2.0),
        ("asc", &s.asc, (n as f64 - 2.0) / 2.0),
    ];
    let mut worst = 0.0f64;
    for (name, stat, target) in targets {
        let z = (stat.mean - target).abs() / stat.se;
        ensure!(z < 4.0, "{name}: mean {} vs {target}, {z:.2} SE", stat.mean);
        worst = worst.max(z);
    }
    Ok(format!(
        "ℒ bijective for n ≤ 6; χ² = {chi2:.2} < {threshold:.2} on PPF_4; n = 50 means within {worst:.2} SE"
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("counts", counts),
        ("first-entry expectation", first_entry_expectation),
        ("asymptotic expectations", asymptotics),
        ("displacement enumerator", displacement_enumerator),
        ("area equals displacement", area_law),
        ("path bijections", bijections),
        ("forward-difference generating functions", forward_difference_genfuns),
        ("forward-difference set counts", forward_difference_sets),
        ("quasisymmetric expansions", quasisymmetric),
        ("refined closed-form counts", refined_counts),
        ("Abel sums", abel),
        ("uniform sampler", sampler),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>()).into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        total.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
