use std::collections::BTreeSet;
use std::io::{self, Write};

use parkfn::expectation::{expectation_summary, kalikow_sample, monte_carlo_report, SampleConfig};
use parkfn::genfun::{
    abel_closed_p_neg1_q0, abel_closed_p_neg1_q1, abel_recurrence_factorial, abel_recurrence_shift, abel_sum,
    displacement_enumerator_brute, displacement_enumerator_paths, displacement_enumerator_prime_paths, ell_genfun,
    ell_genfun_closed, mixed_genfun, mixed_genfun_closed,
};
use parkfn::lukas::{
    alpha_permutation, area, dyck_from_labeled_lukas, height_sequence, labeled_path_from_pf, path_stat_sets,
    pf_from_labeled_dyck, pf_from_labeled_dyck_via_lukas, LabeledDyckPath,
};
use parkfn::pf::{
    count_forward_diff_set, count_forward_diff_set_pair, count_pf, count_pf_first, count_pf_ones, count_ppf,
    count_ppf_first, enumerate_pf, enumerate_ppf, f_n_jk, forward_differences, park, stat_profile,
};
use parkfn::verify::{verify, Theorem, VerifyParams};
use parkfn::{EnumLimit, Error, PrefVector, Rational};
use serde_json::{json, Value};

use crate::{Cli, Command, Format, Method, Stat};

pub struct CmdError {
    pub code: u8,
    pub error: String,
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::LimitExceeded { .. } => 3,
            Error::Consistency(_) => 1,
            _ => 2,
        };
        CmdError {
            code,
            error: e.to_string(),
        }
    }
}

impl From<io::Error> for CmdError {
    fn from(e: io::Error) -> Self {
        let code = if e.kind() == io::ErrorKind::BrokenPipe { 0 } else { 2 };
        CmdError {
            code,
            error: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> CmdError {
    CmdError {
        code: 2,
        error: msg.into(),
    }
}

type Outcome = Result<u8, CmdError>;

fn line(out: &mut dyn Write, v: &Value) -> io::Result<()> {
    writeln!(out, "{v}")
}

fn joined(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn json_only(cli: &Cli, command: &str) -> Result<(), CmdError> {
    if cli.global.format == Some(Format::Csv) {
        return Err(usage(format!("csv output is not available for `{command}`")));
    }
    Ok(())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let limit = EnumLimit(cli.global.limit);
    match &cli.command {
        Command::Check { prefs, prime } => {
            json_only(cli, "check")?;
            check(out, prefs, *prime)
        }
        Command::Enumerate { n, prime, stat } => enumerate(cli, out, *n, *prime, stat, limit),
        Command::Count {
            n,
            prime,
            first,
            ones,
            ell,
            m,
            set,
            tset,
        } => count(
            cli,
            out,
            *n,
            *prime,
            *first,
            *ones,
            *ell,
            *m,
            set.as_deref(),
            tset.as_deref(),
        ),
        Command::Sample {
            n,
            samples,
            seed,
            report,
        } => sample(cli, out, *n, *samples, *seed, *report),
        Command::Expect {
            n,
            asymptotic,
            exact_cutoff,
        } => {
            json_only(cli, "expect")?;
            let s = expectation_summary(*n, *asymptotic, *exact_cutoff)?;
            line(out, &serde_json::to_value(s).expect("serializable"))?;
            Ok(0)
        }
        Command::DispEnum { n, method } => {
            json_only(cli, "disp-enum")?;
            disp_enum(out, *n, *method, limit)
        }
        Command::Genfun { n, ell, m, closed } => {
            json_only(cli, "genfun")?;
            genfun(out, *n, *ell, *m, *closed, limit)
        }
        Command::Bijection { prefs, dyck, labels } => {
            json_only(cli, "bijection")?;
            bijection(out, prefs.as_deref(), dyck.as_deref(), labels.as_deref())
        }
        Command::Verify {
            theorem,
            n,
            ell,
            m,
            vars,
            seed,
            points,
            list,
        } => {
            if *list {
                for t in Theorem::ALL {
                    writeln!(out, "{t}")?;
                }
                return Ok(0);
            }
            json_only(cli, "verify")?;
            let theorem: Theorem = theorem.as_deref().unwrap_or_default().parse()?;
            let params = VerifyParams {
                n: *n,
                ell: *ell,
                m: *m,
                vars: *vars,
                seed: *seed,
                points: *points,
                limit,
            };
            let report = verify(theorem, &params)?;
            line(out, &serde_json::to_value(&report).expect("serializable"))?;
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Abel { n, x, y, p, q } => {
            json_only(cli, "abel")?;
            abel(out, *n, x, y, *p, *q)
        }
    }
}

fn check(out: &mut dyn Write, prefs: &str, want_prime: bool) -> Outcome {
    let p: PrefVector = prefs.parse()?;
    let parking = p.is_parking_function();
    let prime = p.is_prime();
    let displacement = if parking { Some(park(&p)?.total) } else { None };
    let v = json!({
        "parking": parking,
        "prime": prime,
        "displacement": displacement,
        "stats": stat_profile(&p),
    });
    line(out, &v)?;
    let holds = if want_prime { prime } else { parking };
    Ok(if holds { 0 } else { 1 })
}

fn stat_columns(s: &[u32], stats: &[Stat]) -> Vec<(&'static str, Value)> {
    let n = s.len();
    let cmp = |f: fn(&u32, &u32) -> bool| s.windows(2).filter(|w| f(&w[0], &w[1])).count();
    stats
        .iter()
        .map(|stat| match stat {
            Stat::Displacement => {
                let sum: usize = s.iter().map(|&e| e as usize).sum();
                ("displacement", json!(n * (n + 1) / 2 - sum))
            }
            Stat::Des => ("des", json!(cmp(|a, b| a > b))),
            Stat::Asc => ("asc", json!(cmp(|a, b| a < b))),
            Stat::Ties => ("ties", json!(cmp(|a, b| a == b))),
            Stat::Ones => ("ones", json!(s.iter().filter(|&&e| e == 1).count())),
            Stat::Fdiff => {
                let mut counts = vec![0usize; n.saturating_sub(1)];
                for d in forward_differences(s) {
                    counts[d as usize] += 1;
                }
                ("fdiff", json!(counts))
            }
        })
        .collect()
}

fn enumerate(cli: &Cli, out: &mut dyn Write, n: usize, prime: bool, stats: &[Stat], limit: EnumLimit) -> Outcome {
    let mut iter = if prime {
        enumerate_ppf(n, limit)?
    } else {
        enumerate_pf(n, limit)?
    };
    let csv = cli.global.format == Some(Format::Csv);
    while let Some(s) = iter.next_slice() {
        let cols = stat_columns(s, stats);
        if csv {
            let mut row = joined(s);
            for (_, v) in cols {
                match v {
                    Value::Array(xs) => xs.iter().for_each(|x| row.push_str(&format!(",{x}"))),
                    other => row.push_str(&format!(",{other}")),
                }
            }
            writeln!(out, "{row}")?;
        } else {
            let mut obj = serde_json::Map::new();
            obj.insert("pf".into(), json!(s));
            for (k, v) in cols {
                obj.insert(k.into(), v);
            }
            line(out, &Value::Object(obj))?;
        }
    }
    Ok(0)
}

fn parse_set(s: &str) -> Result<BTreeSet<usize>, CmdError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| usage(format!("{t:?} is not a position")))
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn count(
    cli: &Cli,
    out: &mut dyn Write,
    n: u64,
    prime: bool,
    first: Option<u64>,
    ones: Option<u64>,
    ell: Option<u64>,
    m: Option<u64>,
    set: Option<&str>,
    tset: Option<&str>,
) -> Outcome {
    let (kind, value) = match (set, tset, first, ones) {
        (Some(s), None, None, None) => {
            if m.is_some() {
                return Err(usage("--m needs --tset"));
            }
            (
                "ppf_forward_diff_set",
                count_forward_diff_set(n, ell.unwrap_or(0), &parse_set(s)?)?,
            )
        }
        (s, Some(t), None, None) => {
            let m = m.ok_or_else(|| usage("--tset needs --m"))?;
            let s = parse_set(s.unwrap_or(""))?;
            (
                "ppf_forward_diff_set_pair",
                count_forward_diff_set_pair(n, ell.unwrap_or(0), m, &s, &parse_set(t)?)?,
            )
        }
        (None, None, Some(j), Some(k)) if !prime => ("pf_first_ones", f_n_jk(n, j, k)?),
        (None, None, Some(j), None) if prime => ("ppf_first", count_ppf_first(n, j)?),
        (None, None, Some(j), None) => ("pf_first", count_pf_first(n, j)?),
        (None, None, None, Some(k)) if !prime => ("pf_ones", count_pf_ones(n, k)?),
        (None, None, None, None) if prime => ("ppf", count_ppf(n)),
        (None, None, None, None) => ("pf", count_pf(n)),
        _ => return Err(usage("unsupported combination of count filters")),
    };
    if cli.global.format == Some(Format::Csv) {
        writeln!(out, "{value}")?;
    } else {
        line(out, &json!({"n": n, "kind": kind, "count": value.to_string()}))?;
    }
    Ok(0)
}

fn sample(cli: &Cli, out: &mut dyn Write, n: usize, samples: u64, seed: u64, report: bool) -> Outcome {
    let cfg = SampleConfig { n, samples, seed };
    if report {
        json_only(cli, "sample --report")?;
        let r = monte_carlo_report(cfg)?;
        line(out, &serde_json::to_value(r).expect("serializable"))?;
        return Ok(0);
    }
    let as_json = cli.global.format == Some(Format::Json);
    for p in kalikow_sample(cfg)? {
        if as_json {
            line(out, &json!(p.as_slice()))?;
        } else {
            writeln!(out, "{p}")?;
        }
    }
    Ok(0)
}

fn poly_value<T: serde::Serialize + std::fmt::Display>(p: &T) -> Value {
    json!({"poly": p, "display": p.to_string()})
}

fn disp_enum(out: &mut dyn Write, n: usize, method: Method, limit: EnumLimit) -> Outcome {
    let mut results = serde_json::Map::new();
    let mut polys = Vec::new();
    let want = |m: Method| method == m || method == Method::All;
    if want(Method::Brute) {
        let p = displacement_enumerator_brute(n, limit)?;
        results.insert("brute".into(), poly_value(&p));
        polys.push(p);
    }
    if want(Method::Paths) && (method == Method::Paths || n >= 2) {
        let p = displacement_enumerator_paths(n, limit)?;
        results.insert("paths".into(), poly_value(&p));
        polys.push(p);
    }
    if want(Method::PrimePaths) {
        let p = displacement_enumerator_prime_paths(n, limit)?;
        results.insert("prime_paths".into(), poly_value(&p));
        polys.push(p);
    }
    let agree = polys.windows(2).all(|w| w[0] == w[1]);
    let mut v = json!({"n": n, "results": results});
    if polys.len() > 1 {
        v["agree"] = json!(agree);
    }
    line(out, &v)?;
    Ok(if agree { 0 } else { 1 })
}

fn genfun(out: &mut dyn Write, n: usize, ell: usize, m: Option<usize>, closed: bool, limit: EnumLimit) -> Outcome {
    let v = match (m, closed) {
        (Some(m), false) => json!({"n": n, "ell": ell, "m": m, "genfun": poly_value(&mixed_genfun(n, ell, m, limit)?)}),
        (Some(_), true) => json!({"n": n, "closed": poly_value(&mixed_genfun_closed(n)?)}),
        (None, false) => json!({"n": n, "ell": ell, "genfun": poly_value(&ell_genfun(n, ell, limit)?)}),
        (None, true) => json!({"n": n, "closed": poly_value(&ell_genfun_closed(n)?)}),
    };
    line(out, &v)?;
    Ok(0)
}

fn bijection(out: &mut dyn Write, prefs: Option<&str>, dyck: Option<&str>, labels: Option<&str>) -> Outcome {
    let p = match (prefs, dyck) {
        (Some(s), None) => s.parse::<PrefVector>()?,
        (None, Some(word)) => {
            let labels: Vec<u32> = labels
                .unwrap_or("")
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|_| usage(format!("{t:?} is not a label"))))
                .collect::<Result<_, _>>()?;
            let d = LabeledDyckPath::parse(word, labels)?;
            let p = pf_from_labeled_dyck(&d);
            if pf_from_labeled_dyck_via_lukas(&d)? != p {
                return Err(Error::Consistency("the two Dyck readings disagree".into()).into());
            }
            p
        }
        _ => return Err(usage("give either preferences or --dyck, not both")),
    };
    if !p.is_parking_function() {
        return Err(usage(format!("{p} is not a parking function")));
    }
    let l = labeled_path_from_pf(&p)?;
    let h = height_sequence(l.word());
    let v = json!({
        "pf": p.as_slice(),
        "prime": p.is_prime(),
        "word": l.word(),
        "heights": h,
        "area": area(l.word()),
        "labeled": l,
        "alpha_l": alpha_permutation(&l),
        "dyck": dyck_from_labeled_lukas(&l),
        "sets": path_stat_sets(&l),
    });
    line(out, &v)?;
    Ok(0)
}

fn abel(out: &mut dyn Write, n: u32, x: &str, y: &str, p: i64, q: i64) -> Outcome {
    let parse = |s: &str| -> Result<Rational, CmdError> {
        s.trim()
            .parse::<Rational>()
            .map_err(|_| usage(format!("{s:?} is not a rational number")))
    };
    let (x, y) = (parse(x)?, parse(y)?);
    let value = abel_sum(n, &x, &y, p, q)?;
    let show = |r: &Option<Rational>| r.as_ref().map(|v| v.to_string());
    let shift = if n > 0 {
        abel_recurrence_shift(n, &x, &y, p, q).ok()
    } else {
        None
    };
    let factorial = abel_recurrence_factorial(n, &x, &y, p, q).ok();
    let pairs = [
        (abel_sum(n, &x, &y, -1, 0).ok(), abel_closed_p_neg1_q0(n, &x, &y).ok()),
        (abel_sum(n, &x, &y, -1, 1).ok(), abel_closed_p_neg1_q1(n, &x, &y).ok()),
    ];
    let pass = shift.as_ref().is_none_or(|s| *s == value)
        && factorial.as_ref().is_none_or(|f| *f == value)
        && pairs.iter().all(|(a, b)| a.is_none() || b.is_none() || a == b);
    let v = json!({
        "n": n,
        "x": x.to_string(),
        "y": y.to_string(),
        "p": p,
        "q": q,
        "value": value.to_string(),
        "shift_recurrence": shift.map(|s| s.to_string()),
        "factorial_recurrence": factorial.map(|f| f.to_string()),
        "closed_neg1_0": [show(&pairs[0].0), show(&pairs[0].1)],
        "closed_neg1_1": [show(&pairs[1].0), show(&pairs[1].1)],
        "pass": pass,
    });
    line(out, &v)?;
    Ok(if pass { 0 } else { 1 })
}
