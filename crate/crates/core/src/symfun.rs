//! Truncated fundamental quasisymmetric functions and hook Schur functions
//! in finitely many variables, and exact checks of the tie-set and
//! forward-difference expansions over prime parking functions.
//!
//! Identities that hold in the full ring of quasisymmetric functions are
//! checked after restricting to `x_1..x_k`. With `k ≥ n` no `F_{n,S}`
//! vanishes, so the truncation is faithful in degree `n`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::Add;

use num_traits::One;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pf::{enumerate_ppf, forward_diff_mask, forward_differences, EnumLimit};
use crate::scalar::{self, Ring};
use crate::{IntPoly, Integer, QMvPoly};

/// Exponent vector over `x_1..x_k`; ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `x_{b_1} ⋯ x_{b_n}` for 1-based indices `b`.
    pub fn from_indices(k: usize, indices: &[usize]) -> Self {
        let mut exp = vec![0u32; k];
        for &b in indices {
            exp[b - 1] += 1;
        }
        Monomial(exp)
    }
}

/// Polynomial in `x_1..x_k` with coefficients in `C`; zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MvPoly<C> {
    k: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> MvPoly<C> {
    pub fn zero(k: usize) -> Self {
        MvPoly {
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        debug_assert_eq!(m.0.len(), self.k);
        let sum = match self.terms.remove(&m) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    /// Adds `c · other` into `self`.
    pub fn add_scaled(&mut self, other: &MvPoly<C>, c: &C) {
        assert_eq!(self.k, other.k, "variable counts differ");
        for (m, oc) in &other.terms {
            self.add_term(m.clone(), oc.clone() * c.clone());
        }
    }

    pub fn coeff(&self, exp: &[u32]) -> C {
        self.terms.get(&Monomial(exp.to_vec())).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn map_coeffs<D: Ring>(&self, mut f: impl FnMut(&C) -> D) -> MvPoly<D> {
        let mut out = MvPoly::zero(self.k);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Whether every term has total degree `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Exchanges `x_i` and `x_j` (1-based).
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = MvPoly::zero(self.k);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.swap(i - 1, j - 1);
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Sets every variable except `x_1..x_keep` to zero.
    pub fn restrict(&self, keep: usize) -> Self {
        let mut out = MvPoly::zero(self.k);
        for (m, c) in &self.terms {
            if m.0[keep..].iter().all(|&e| e == 0) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }
}

impl<C: Ring> Add for MvPoly<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        assert_eq!(self.k, rhs.k, "variable counts differ");
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

/// `{"k": k, "terms": [{"exp": [...], "coeff": ...}, ...]}` in
/// lexicographic monomial order.
impl<C: Ring + Serialize> Serialize for MvPoly<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a, C> {
            exp: &'a Monomial,
            coeff: &'a C,
        }
        let terms: Vec<Term<'_, C>> = self.terms.iter().map(|(exp, coeff)| Term { exp, coeff }).collect();
        let mut st = s.serialize_struct("MvPoly", 2)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

fn set_to_mask(n: usize, s: &BTreeSet<usize>) -> Result<u64> {
    s.iter().try_fold(0u64, |m, &i| {
        if i < 1 || i + 1 > n {
            Err(Error::Precondition(format!(
                "{i} is not in [1, {}]",
                n.saturating_sub(1)
            )))
        } else {
            Ok(m | 1 << (i - 1))
        }
    })
}

/// Adds every weakly increasing chain `1 ≤ b_1 ≤ … ≤ b_n ≤ k`, strict at the
/// positions in `mask`, as a monomial with coefficient one.
fn qsym_from_mask<C: Ring>(n: usize, mask: u64, k: usize) -> MvPoly<C> {
    fn go<C: Ring>(n: usize, mask: u64, k: usize, chain: &mut Vec<usize>, out: &mut MvPoly<C>) {
        let i = chain.len();
        if i == n {
            out.add_term(Monomial::from_indices(k, chain), C::one());
            return;
        }
        let lo = match chain.last() {
            None => 1,
            Some(&prev) => prev + (mask >> (i - 1) & 1) as usize,
        };
        for b in lo..=k {
            chain.push(b);
            go(n, mask, k, chain, out);
            chain.pop();
        }
    }
    let mut out = MvPoly::zero(k);
    go(n, mask, k, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Gessel's fundamental quasisymmetric function `F_{n,S}` in `k` variables.
pub fn fundamental_qsym<C: Ring>(n: usize, s: &BTreeSet<usize>, k: usize) -> Result<MvPoly<C>> {
    if k < 1 {
        return Err(Error::Precondition("need at least one variable".into()));
    }
    let mask = set_to_mask(n, s)?;
    Ok(qsym_from_mask(n, mask, k))
}

fn check_hook(i: usize, n: usize, k: usize) -> Result<()> {
    if i < 1 || i > n || k < 1 {
        return Err(Error::Precondition(format!(
            "hook (i, 1^(n-i)) needs 1 ≤ i ≤ n and k ≥ 1; got i = {i}, n = {n}, k = {k}"
        )));
    }
    Ok(())
}

/// `s_{(i,1^{n−i})}` as the sum of `F_{n,S}` over `|S| = n − i`.
pub fn schur_hook_via_qsym<C: Ring>(i: usize, n: usize, k: usize) -> Result<MvPoly<C>> {
    check_hook(i, n, k)?;
    let mut out = MvPoly::zero(k);
    for mask in 0u64..(1 << (n - 1)) {
        if mask.count_ones() as usize == n - i {
            out = out + qsym_from_mask(n, mask, k);
        }
    }
    Ok(out)
}

/// `s_{(i,1^{n−i})}` by summing over semistandard tableaux of hook shape
/// with entries in `1..=k`: a weakly increasing first row of length `i`
/// whose corner heads a strictly increasing column of length `n − i + 1`.
pub fn schur_hook_via_tableaux<C: Ring>(i: usize, n: usize, k: usize) -> Result<MvPoly<C>> {
    check_hook(i, n, k)?;
    // weakly increasing sequences of length `len` with entries in lo..=k
    fn multisets(len: usize, lo: usize, k: usize) -> Vec<Vec<usize>> {
        if len == 0 {
            return vec![vec![]];
        }
        (lo..=k)
            .flat_map(|b| {
                multisets(len - 1, b, k).into_iter().map(move |mut rest| {
                    rest.insert(0, b);
                    rest
                })
            })
            .collect()
    }
    // strictly increasing sequences of length `len` with entries in lo..=k
    fn subsets(len: usize, lo: usize, k: usize) -> Vec<Vec<usize>> {
        if len == 0 {
            return vec![vec![]];
        }
        (lo..=k)
            .flat_map(|b| {
                subsets(len - 1, b + 1, k).into_iter().map(move |mut rest| {
                    rest.insert(0, b);
                    rest
                })
            })
            .collect()
    }
    let mut out = MvPoly::zero(k);
    for corner in 1..=k {
        for arm in multisets(i - 1, corner, k) {
            for leg in subsets(n - i, corner + 1, k) {
                let cells: Vec<usize> = std::iter::once(corner).chain(arm.iter().copied()).chain(leg).collect();
                out.add_term(Monomial::from_indices(k, &cells), C::one());
            }
        }
    }
    Ok(out)
}

/// Hook Schur function, computed both from its quasisymmetric expansion and
/// from tableaux; the two must agree.
pub fn schur_hook<C: Ring>(i: usize, n: usize, k: usize) -> Result<MvPoly<C>> {
    let via_qsym = schur_hook_via_qsym(i, n, k)?;
    let via_tableaux = schur_hook_via_tableaux(i, n, k)?;
    if via_qsym != via_tableaux {
        return Err(Error::Consistency(format!(
            "hook Schur function s_({i},1^{}) differs between expansions",
            n - i
        )));
    }
    Ok(via_qsym)
}

/// Both sides of a polynomial identity and whether they agree.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck<P> {
    pub lhs: P,
    pub rhs: P,
    pub equal: bool,
}

impl<P: PartialEq> IdentityCheck<P> {
    fn new(lhs: P, rhs: P) -> Self {
        let equal = lhs == rhs;
        IdentityCheck { lhs, rhs, equal }
    }
}

/// Sums `count · q^deg · F_{n,S}` over a histogram keyed by `(mask, deg)`.
fn sum_qsym_histogram(n: usize, k: usize, hist: &HashMap<(u64, u32), u64>) -> QMvPoly {
    let mut cache: HashMap<u64, MvPoly<IntPoly>> = HashMap::new();
    let mut out = MvPoly::zero(k);
    let mut keys: Vec<_> = hist.keys().copied().collect();
    keys.sort_unstable();
    for (mask, deg) in keys {
        let f = cache.entry(mask).or_insert_with(|| qsym_from_mask(n, mask, k));
        let c = IntPoly::monomial(Integer::from(hist[&(mask, deg)]), deg as usize);
        out.add_scaled(f, &c);
    }
    out
}

fn check_n_k(n: usize, k: usize, min_n: usize) -> Result<()> {
    if n < min_n {
        return Err(Error::Precondition(format!("n = {n}; need n ≥ {min_n}")));
    }
    if k < 1 {
        return Err(Error::Precondition("need at least one variable".into()));
    }
    Ok(())
}

/// `Σ_{π ∈ PPF_n} F_{n,Tie(π)}` against `Σ_i (n−2)^{i−1} s_{(i,1^{n−i})}`
/// in `k` variables.
pub fn verify_quasisym(n: usize, k: usize, limit: EnumLimit) -> Result<IdentityCheck<QMvPoly>> {
    check_n_k(n, k, 2)?;
    let mut hist: HashMap<(u64, u32), u64> = HashMap::new();
    enumerate_ppf(n, limit)?.for_each_slice(|s| {
        let mask = forward_diff_mask(&forward_differences(s), 0);
        *hist.entry((mask, 0)).or_default() += 1;
    });
    let lhs = sum_qsym_histogram(n, k, &hist);
    let mut rhs = MvPoly::zero(k);
    for i in 1..=n {
        let weight = IntPoly::constant(scalar::pow(&Integer::from(n as i64 - 2), i as u32 - 1));
        rhs.add_scaled(&schur_hook::<IntPoly>(i, n, k)?, &weight);
    }
    Ok(IdentityCheck::new(lhs, rhs))
}

/// Both forward-difference refinements of the tie-set identity.
#[derive(Clone, Debug, Serialize)]
pub struct QuasisymCorrCheck {
    /// `Σ q^{Δ_ℓ f(π)} F_{n,Set^ℓ(π)} = Σ q^{n−i}(n−2)^{i−1} s_{(i,1^{n−i})}`
    pub same: IdentityCheck<QMvPoly>,
    /// `Σ q^{Δ_ℓ f(π)} F_{n,Set^m(π)} = Σ (q+n−3)^{i−1} s_{(i,1^{n−i})}`
    pub mixed: IdentityCheck<QMvPoly>,
}

pub fn verify_quasisym_corr(n: usize, ell: usize, m: usize, k: usize, limit: EnumLimit) -> Result<QuasisymCorrCheck> {
    check_n_k(n, k, 3)?;
    if ell > n - 2 || m > n - 2 {
        return Err(Error::OutOfRange(format!("residues ({ell}, {m}) not in 0..={}", n - 2)));
    }
    if ell == m {
        return Err(Error::Precondition(format!("residues must differ, both are {ell}")));
    }
    let mut same_hist: HashMap<(u64, u32), u64> = HashMap::new();
    let mut mixed_hist: HashMap<(u64, u32), u64> = HashMap::new();
    enumerate_ppf(n, limit)?.for_each_slice(|s| {
        let diffs = forward_differences(s);
        let ell_mask = forward_diff_mask(&diffs, ell as u32);
        let m_mask = forward_diff_mask(&diffs, m as u32);
        let weight = ell_mask.count_ones();
        *same_hist.entry((ell_mask, weight)).or_default() += 1;
        *mixed_hist.entry((m_mask, weight)).or_default() += 1;
    });

    let mut same_rhs = MvPoly::zero(k);
    let mut mixed_rhs = MvPoly::zero(k);
    let shifted = IntPoly::shifted_var(Integer::from(n as i64 - 3));
    for i in 1..=n {
        let hook = schur_hook::<IntPoly>(i, n, k)?;
        let w_same = IntPoly::monomial(scalar::pow(&Integer::from(n as i64 - 2), i as u32 - 1), n - i);
        same_rhs.add_scaled(&hook, &w_same);
        mixed_rhs.add_scaled(&hook, &shifted.pow(i as u32 - 1));
    }
    Ok(QuasisymCorrCheck {
        same: IdentityCheck::new(sum_qsym_histogram(n, k, &same_hist), same_rhs),
        mixed: IdentityCheck::new(sum_qsym_histogram(n, k, &mixed_hist), mixed_rhs),
    })
}

/// Evaluates every coefficient at `q = 1`.
pub fn at_q_equals_one(p: &QMvPoly) -> QMvPoly {
    p.map_coeffs(|c| IntPoly::constant(c.eval(&Integer::one())))
}
