//! Abel's binomial sums `A_n(x, y; p, q)` over any field, with checks of
//! their two recurrences and two closed-form special cases.

use crate::error::{Error, Result};
use crate::scalar::{self, Field};

/// Largest `n` for which binomial coefficients are formed in `i64`.
pub const MAX_ABEL_N: u32 = 60;

fn binomial_row(n: u32) -> Vec<i64> {
    let mut row = vec![1i64; n as usize + 1];
    for s in 1..=n as usize {
        row[s] = row[s - 1] * (n as i64 - s as i64 + 1) / s as i64;
    }
    row
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

fn power<F: Field>(base: &F, exp: i64, what: &str) -> Result<F> {
    scalar::pow_signed(base, exp).ok_or_else(|| Error::Pole(format!("{what} is zero with exponent {exp}")))
}

fn check_n(n: u32) -> Result<()> {
    if n > MAX_ABEL_N {
        return Err(Error::OutOfRange(format!("n = {n} exceeds {MAX_ABEL_N}")));
    }
    Ok(())
}

/// `Σ_{s=0}^n C(n,s) (x+s)^{s+p} (y+n−s)^{n−s+q}`.
///
/// Fails with [`Error::Pole`] when a zero base meets a negative exponent.
pub fn abel_sum<F: Field>(n: u32, x: &F, y: &F, p: i64, q: i64) -> Result<F> {
    check_n(n)?;
    let row = binomial_row(n);
    let mut total = F::zero();
    for s in 0..=n {
        let si = s as i64;
        let ni = n as i64;
        let xs = x.clone() + scalar::from_i64(si);
        let ys = y.clone() + scalar::from_i64(ni - si);
        let a = power(&xs, si + p, &format!("x + {s}"))?;
        let b = power(&ys, ni - si + q, &format!("y + {}", ni - si))?;
        total = total + scalar::from_i64::<F>(row[s as usize]) * a * b;
    }
    Ok(total)
}

/// `A_{n−1}(x, y+1; p, q+1) + A_{n−1}(x+1, y; p+1, q)`, for `n ≥ 1`.
pub fn abel_recurrence_shift<F: Field>(n: u32, x: &F, y: &F, p: i64, q: i64) -> Result<F> {
    if n == 0 {
        return Err(Error::Precondition("the shift recurrence needs n ≥ 1".into()));
    }
    let one = F::one();
    Ok(abel_sum(n - 1, x, &(y.clone() + one.clone()), p, q + 1)? + abel_sum(n - 1, &(x.clone() + one), y, p + 1, q)?)
}

/// `Σ_{s=0}^n C(n,s) s! (x+s) A_{n−s}(x+s, y; p−1, q)`.
pub fn abel_recurrence_factorial<F: Field>(n: u32, x: &F, y: &F, p: i64, q: i64) -> Result<F> {
    check_n(n)?;
    if n > 20 {
        return Err(Error::OutOfRange(format!("n = {n}; factorials overflow past 20")));
    }
    let row = binomial_row(n);
    let mut total = F::zero();
    for s in 0..=n {
        let xs = x.clone() + scalar::from_i64(s as i64);
        let inner = abel_sum(n - s, &xs, y, p - 1, q)?;
        total = total + scalar::from_i64::<F>(row[s as usize] * factorial(s)) * xs * inner;
    }
    Ok(total)
}

/// `x^{−1}(x+y+n)^n`, the closed form of `A_n(x, y; −1, 0)`.
pub fn abel_closed_p_neg1_q0<F: Field>(n: u32, x: &F, y: &F) -> Result<F> {
    let base = x.clone() + y.clone() + scalar::from_i64(n as i64);
    Ok(power(x, -1, "x")? * scalar::pow(&base, n))
}

/// `x^{−1} Σ_s C(n,s)(x+y+n)^s (y+n−s)(n−s)!`, the closed form of
/// `A_n(x, y; −1, 1)`.
pub fn abel_closed_p_neg1_q1<F: Field>(n: u32, x: &F, y: &F) -> Result<F> {
    check_n(n)?;
    if n > 20 {
        return Err(Error::OutOfRange(format!("n = {n}; factorials overflow past 20")));
    }
    let row = binomial_row(n);
    let base = x.clone() + y.clone() + scalar::from_i64(n as i64);
    let mut total = F::zero();
    for s in 0..=n {
        let tail = y.clone() + scalar::from_i64((n - s) as i64);
        total = total + scalar::from_i64::<F>(row[s as usize] * factorial(n - s)) * scalar::pow(&base, s) * tail;
    }
    Ok(power(x, -1, "x")? * total)
}

/// Outcome of checking every Abel identity at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct AbelCheck<F> {
    pub value: F,
    pub shift: Option<F>,
    pub factorial: F,
    /// `A_n(x,y;−1,0)` and its closed form.
    pub closed_neg1_0: (F, F),
    /// `A_n(x,y;−1,1)` and its closed form.
    pub closed_neg1_1: (F, F),
}

impl<F: PartialEq> AbelCheck<F> {
    pub fn all_equal(&self) -> bool {
        self.shift.as_ref().is_none_or(|s| *s == self.value)
            && self.factorial == self.value
            && self.closed_neg1_0.0 == self.closed_neg1_0.1
            && self.closed_neg1_1.0 == self.closed_neg1_1.1
    }
}

/// Evaluates `A_n(x,y;p,q)` directly and via both recurrences, and compares
/// the two special cases at `(p, q) = (−1, 0)` and `(−1, 1)`.
pub fn check_abel<F: Field>(n: u32, x: &F, y: &F, p: i64, q: i64) -> Result<AbelCheck<F>> {
    let value = abel_sum(n, x, y, p, q)?;
    let shift = if n == 0 {
        None
    } else {
        Some(abel_recurrence_shift(n, x, y, p, q)?)
    };
    let factorial = abel_recurrence_factorial(n, x, y, p, q)?;
    let special = |qq: i64, closed: fn(u32, &F, &F) -> Result<F>| -> Result<(F, F)> {
        Ok((abel_sum(n, x, y, -1, qq)?, closed(n, x, y)?))
    };
    Ok(AbelCheck {
        value,
        shift,
        factorial,
        closed_neg1_0: special(0, abel_closed_p_neg1_q0)?,
        closed_neg1_1: special(1, abel_closed_p_neg1_q1)?,
    })
}
