//! Dense univariate and sparse bivariate polynomials over an arbitrary
//! coefficient ring.
//!
//! Both types are themselves rings (they implement the arithmetic operator
//! traits together with [`Zero`] and [`One`]), so they can be nested as
//! coefficients of other polynomial types.

use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{self, Ring};
use crate::{IntPoly, Integer, RatPoly};

/// Polynomial in a single variable, stored densely in ascending degree.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial is
/// the empty coefficient list and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> UniPoly<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(C::one(), 1)
    }

    /// `c · q^deg`.
    pub fn monomial(c: C, deg: usize) -> Self {
        let mut coeffs = vec![C::zero(); deg];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `q + c`, the linear factor used by every closed form in the crate.
    pub fn shifted_var(c: C) -> Self {
        Self::new(vec![c, C::one()])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, deg: usize) -> C {
        self.coeffs.get(deg).cloned().unwrap_or_else(C::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add_to_coeff(&mut self, deg: usize, c: C) {
        if self.coeffs.len() <= deg {
            self.coeffs.resize(deg + 1, C::zero());
        }
        let slot = &mut self.coeffs[deg];
        *slot = slot.clone() + c;
        self.trim();
    }

    pub fn pow(&self, exp: u32) -> Self {
        scalar::pow(self, exp)
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Value at 1.
    pub fn coeff_sum(&self) -> C {
        self.coeffs.iter().cloned().fold(C::zero(), |a, b| a + b)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(d, c)| scalar::from_i64::<C>(d as i64) * c.clone())
            .collect();
        Self::new(coeffs)
    }

    pub fn map<D: Ring>(&self, mut f: impl FnMut(&C) -> D) -> UniPoly<D> {
        UniPoly::new(self.coeffs.iter().map(&mut f).collect())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl RatPoly {
    /// Converts to integer coefficients, failing if any coefficient has a
    /// nontrivial denominator.
    pub fn to_integer_poly(&self) -> Result<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (d, c) in self.coeffs.iter().enumerate() {
            if !c.is_integer() {
                return Err(Error::Consistency(format!(
                    "coefficient of q^{d} is {c}, not an integer"
                )));
            }
            out.push(c.to_integer());
        }
        Ok(UniPoly::new(out))
    }
}

impl IntPoly {
    pub fn to_rational_poly(&self) -> RatPoly {
        self.map(|c| crate::Rational::from_integer(c.clone()))
    }

    /// Polynomial with the coefficients `counts[d]` at degree `d`.
    pub fn from_counts(counts: &[u64]) -> Self {
        Self::new(counts.iter().map(|&c| Integer::from(c)).collect())
    }
}

impl<C: Ring> Zero for UniPoly<C> {
    fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Ring> One for UniPoly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Ring> Add for UniPoly<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<C: Ring> Add<&UniPoly<C>> for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn add(self, rhs: &UniPoly<C>) -> UniPoly<C> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..len).map(|d| self.coeff(d) + rhs.coeff(d)).collect())
    }
}

impl<C: Ring> AddAssign<&UniPoly<C>> for UniPoly<C> {
    fn add_assign(&mut self, rhs: &UniPoly<C>) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), C::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a = a.clone() + b.clone();
        }
        self.trim();
    }
}

impl<C: Ring> Sub for UniPoly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Ring> Neg for UniPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        UniPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<C: Ring> Mul for UniPoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Ring> Mul<&UniPoly<C>> for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn mul(self, rhs: &UniPoly<C>) -> UniPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }
}

impl<C: Ring> Sum for UniPoly<C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

/// Writes a term `c·m` where `m` is a monomial string (empty for the
/// constant term), folding signs and unit coefficients.
fn write_term(f: &mut fmt::Formatter<'_>, first: bool, coeff: &str, monomial: &str) -> fmt::Result {
    let (neg, mag) = match coeff.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, coeff),
    };
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    if monomial.is_empty() {
        f.write_str(mag)
    } else if mag == "1" {
        f.write_str(monomial)
    } else if mag.contains(['/', '+', '-', ' ']) {
        write!(f, "({mag}){monomial}")
    } else {
        write!(f, "{mag}{monomial}")
    }
}

fn power_str(var: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

/// Descending-degree rendering in `q`, e.g. `q^3 + 6q^2 + 12q + 8`.
impl<C: Ring + Display> Display for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_term(f, first, &c.to_string(), &power_str("q", d))?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct UniPolyRepr {
    var: String,
    coeffs: Vec<String>,
}

impl<C: Ring + Display> UniPoly<C> {
    /// JSON form `{"var": var, "coeffs": ["c0", "c1", …]}` with coefficients
    /// as decimal strings.
    pub fn to_json(&self, var: &str) -> serde_json::Value {
        serde_json::to_value(UniPolyRepr {
            var: var.to_string(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        })
        .expect("string fields always serialize")
    }
}

impl<C: Ring + Display> Serialize for UniPoly<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        UniPolyRepr {
            var: "q".to_string(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Ring + FromStr> Deserialize<'de> for UniPoly<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = UniPolyRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| {
                s.parse::<C>()
                    .map_err(|_| D::Error::custom(format!("bad coefficient {s:?}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(UniPoly::new(coeffs))
    }
}

/// Sparse polynomial in `q` and `t`; only nonzero terms are stored, keyed
/// by `(deg_q, deg_t)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BiPoly<C> {
    terms: BTreeMap<(u32, u32), C>,
}

impl<C: Ring> BiPoly<C> {
    pub fn monomial(c: C, deg_q: u32, deg_t: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(deg_q, deg_t, c);
        p
    }

    pub fn q() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn add_term(&mut self, deg_q: u32, deg_t: u32, c: C) {
        let key = (deg_q, deg_t);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn coeff(&self, deg_q: u32, deg_t: u32) -> C {
        self.terms.get(&(deg_q, deg_t)).cloned().unwrap_or_else(C::zero)
    }

    /// Nonzero terms in canonical `(deg_q, deg_t)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &C)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn pow(&self, exp: u32) -> Self {
        scalar::pow(self, exp)
    }

    pub fn coeff_sum(&self) -> C {
        self.terms.values().cloned().fold(C::zero(), |a, b| a + b)
    }

    /// Substitutes a value for `t`, leaving a polynomial in `q`.
    pub fn eval_t(&self, t: &C) -> UniPoly<C> {
        let mut out = UniPoly::zero();
        for (&(a, b), c) in &self.terms {
            out.add_to_coeff(a as usize, c.clone() * scalar::pow(t, b));
        }
        out
    }

    /// Embeds a polynomial in `q`.
    pub fn from_q_poly(p: &UniPoly<C>) -> Self {
        let mut out = Self::zero();
        for (d, c) in p.coeffs().iter().enumerate() {
            out.add_term(d as u32, 0, c.clone());
        }
        out
    }
}

impl<C: Ring> Zero for BiPoly<C> {
    fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> One for BiPoly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Ring> Add for BiPoly<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for ((a, b), c) in rhs.terms {
            self.add_term(a, b, c);
        }
        self
    }
}

impl<C: Ring> Sub for BiPoly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Ring> Neg for BiPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        BiPoly {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl<C: Ring> Mul for BiPoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Ring + Display> Display for BiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        // descending total degree, then descending q-degree
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(a, b)| std::cmp::Reverse((a + b, a)));
        for (a, b) in keys {
            let mono = format!("{}{}", power_str("q", a as usize), power_str("t", b as usize));
            write_term(f, first, &self.terms[&(a, b)].to_string(), &mono)?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct BiTermRepr {
    q: u32,
    t: u32,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct BiPolyRepr {
    terms: Vec<BiTermRepr>,
}

impl<C: Ring + Display> Serialize for BiPoly<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BiPolyRepr {
            terms: self
                .terms
                .iter()
                .map(|(&(q, t), c)| BiTermRepr { q, t, c: c.to_string() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Ring + FromStr> Deserialize<'de> for BiPoly<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = BiPolyRepr::deserialize(d)?;
        let mut out = Self::zero();
        for term in repr.terms {
            let c = term
                .c
                .parse::<C>()
                .map_err(|_| D::Error::custom(format!("bad coefficient {:?}", term.c)))?;
            out.add_term(term.q, term.t, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{IntBiPoly, Rational};
    use proptest::prelude::*;

    fn ip(c: &[i64]) -> IntPoly {
        UniPoly::new(c.iter().map(|&x| Integer::from(x)).collect())
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(ip(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(ip(&[0, 0]).is_zero());
        assert_eq!(ip(&[]).degree(), None);
    }

    #[test]
    fn binomial_power() {
        // (q+2)^3
        let p = IntPoly::shifted_var(Integer::from(2)).pow(3);
        assert_eq!(p, ip(&[8, 12, 6, 1]));
        assert_eq!(p.to_string(), "q^3 + 6q^2 + 12q + 8");
        assert_eq!(p.eval(&Integer::from(1)), Integer::from(27));
        assert_eq!(p.derivative(), ip(&[12, 12, 3]));
    }

    #[test]
    fn display_signs() {
        assert_eq!(ip(&[-1, 0, -3]).to_string(), "-3q^2 - 1");
        assert_eq!(ip(&[0, 1]).to_string(), "q");
        assert_eq!(IntPoly::zero().to_string(), "0");
        let r = RatPoly::new(vec![Rational::new(1.into(), 2.into())]);
        assert_eq!((r * RatPoly::var()).to_string(), "(1/2)q");
    }

    #[test]
    fn json_schema() {
        let p = ip(&[0, 3, 1]);
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v, serde_json::json!({"var": "q", "coeffs": ["0", "3", "1"]}));
        assert_eq!(p.to_json("t")["var"], "t");
        let b = IntBiPoly::q() * IntBiPoly::t();
        let v = serde_json::to_value(&b).unwrap();
        assert_eq!(v, serde_json::json!({"terms": [{"q": 1, "t": 1, "c": "1"}]}));
    }

    #[test]
    fn rational_integrality() {
        let half = Rational::new(1.into(), 2.into());
        let p = RatPoly::new(vec![half.clone(), half.clone()]);
        assert!(p.to_integer_poly().is_err());
        assert_eq!((p.clone() + p).to_integer_poly().unwrap(), ip(&[1, 1]));
    }

    #[test]
    fn bipoly_specialization() {
        // (q+t+1)^3 at t = 1 is (q+2)^3
        let base = IntBiPoly::q() + IntBiPoly::t() + IntBiPoly::one();
        let p = base.pow(3);
        assert_eq!(p.coeff_sum(), Integer::from(27));
        assert_eq!(p.eval_t(&Integer::from(1)), ip(&[8, 12, 6, 1]));
        assert_eq!(p.coeff(1, 1), Integer::from(6));
        assert_eq!(p.to_string().split(" + ").next(), Some("q^3"));
    }

    fn arb_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-50i64..50, 0..6).prop_map(|c| ip(&c))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(a.clone() - a.clone(), IntPoly::zero());
        }

        #[test]
        fn json_round_trip(a in arb_poly()) {
            let s = serde_json::to_string(&a).unwrap();
            let back: IntPoly = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn eval_is_a_homomorphism(a in arb_poly(), b in arb_poly(), x in -5i64..5) {
            let x = Integer::from(x);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        }
    }
}
