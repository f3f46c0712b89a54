//! Prime parking functions: recognition, exhaustive enumeration, exact
//! counting, Łukasiewicz/Dyck path bijections, displacement and
//! forward-difference generating functions, expectation formulas with a
//! uniform sampler, and quasisymmetric/Schur identity checks.
//!
//! Every exact quantity is computed with arbitrary-precision integers or
//! rationals. The polynomial and Abel-sum code is generic over the scalar
//! type (anything satisfying [`scalar::Ring`] or [`scalar::Field`]); the
//! aliases below fix the concrete instantiations used throughout.

pub mod combinat;
pub mod error;
pub mod expectation;
pub mod genfun;
pub mod lukas;
pub mod pf;
pub mod poly;
pub mod scalar;
pub mod symfun;
pub mod verify;

pub use error::{Error, Result};
pub use pf::{EnumLimit, ParkingOutcome, PrefVector, StatProfile};

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Exact rational in canonical reduced form with positive denominator.
pub type Rational = num_rational::BigRational;

/// Polynomial in `q` with integer coefficients.
pub type IntPoly = poly::UniPoly<Integer>;
/// Polynomial in `q` with rational coefficients.
pub type RatPoly = poly::UniPoly<Rational>;
/// Polynomial in `q` and `t` with integer coefficients.
pub type IntBiPoly = poly::BiPoly<Integer>;
/// Polynomial in `x_1..x_k` whose coefficients are integer polynomials in `q`.
pub type QMvPoly = symfun::MvPoly<IntPoly>;
