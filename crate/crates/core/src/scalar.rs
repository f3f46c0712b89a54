//! Scalar abstractions shared by the polynomial and Abel-sum code.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// A commutative ring with identity. Implemented for every type with the
/// usual arithmetic operators, so `BigInt`, `BigRational`, `i64`, `f64`
/// and the polynomial types of this crate all qualify.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + PartialEq + Debug + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {}

impl<T> Field for T where T: Ring + Div<Output = T> {}

/// `base^exp` for a nonnegative exponent, with `0^0 = 1`.
pub fn pow<R: Ring>(base: &R, exp: u32) -> R {
    let mut acc = R::one();
    let mut sq = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * sq.clone();
        }
        e >>= 1;
        if e > 0 {
            sq = sq.clone() * sq;
        }
    }
    acc
}

/// `base^exp` for any integer exponent. `None` when `base` is zero and
/// `exp` is negative.
pub fn pow_signed<F: Field>(base: &F, exp: i64) -> Option<F> {
    if exp >= 0 {
        return Some(pow(base, exp as u32));
    }
    if base.is_zero() {
        return None;
    }
    Some(F::one() / pow(base, exp.unsigned_abs() as u32))
}

/// Embeds a machine integer into any ring by repeated doubling.
pub fn from_i64<R: Ring>(v: i64) -> R {
    let mut acc = R::zero();
    let mut unit = R::one();
    let mut m = v.unsigned_abs();
    while m > 0 {
        if m & 1 == 1 {
            acc = acc + unit.clone();
        }
        m >>= 1;
        if m > 0 {
            unit = unit.clone() + unit;
        }
    }
    if v < 0 {
        -acc
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn zero_to_the_zero_is_one() {
        assert_eq!(pow(&BigInt::from(0), 0), BigInt::from(1));
        assert_eq!(pow(&0.0f64, 0), 1.0);
        assert_eq!(pow(&BigInt::from(0), 3), BigInt::from(0));
    }

    #[test]
    fn signed_powers() {
        let two = BigRational::from_integer(2.into());
        assert_eq!(pow_signed(&two, -3), Some(BigRational::new(1.into(), 8.into())));
        assert_eq!(pow_signed(&BigRational::zero(), -1), None);
        assert_eq!(pow_signed(&BigRational::zero(), 0), Some(BigRational::one()));
        assert_eq!(pow_signed(&2.0f64, -2), Some(0.25));
    }

    #[test]
    fn embedding() {
        assert_eq!(from_i64::<BigInt>(-37), BigInt::from(-37));
        assert_eq!(from_i64::<f64>(1 << 40), (1u64 << 40) as f64);
        assert_eq!(from_i64::<i64>(0), 0);
    }
}
