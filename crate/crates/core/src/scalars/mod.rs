//! Exact coefficient rings.
//!
//! Every computation in the crate is carried out over one of these rings:
//!
//! - [`Rational`]: arbitrary-precision rationals.
//! - [`LaurentV`] and [`RatFunV`]: Laurent polynomials and rational functions in
//!   `v = q^{1/2}`.
//! - [`RootRatFun`]: rational functions in `w = v^{1/m}`, used when an exponent
//!   of `q` is not a half-integer (rational `r`, the `q^{1/4}` prefactors).
//! - [`LaurentSeries`] (alias [`USeriesL`]): truncated Laurent series with an
//!   explicit reliable order, used for expansions in `u` where `q = e^u`, and
//!   for `v`-adic evaluation.
//! - [`SqrtExt`]: the quadratic field `Q(sqrt d)`, used to specialize `q` to a
//!   rational number while keeping `v = sqrt(q)` exact.

mod context;
mod laurent;
mod numeric;
pub(crate) mod poly;
mod ratfun;
mod root;
mod series;

pub use context::{ExactQ, NumericQ, QContext, RootQ, VAdicQ};
pub use laurent::LaurentV;
pub use numeric::SqrtExt;
pub use ratfun::{bracket, RatFunV};
pub use root::RootRatFun;
pub use series::{expand_u, expand_u_root, expand_v_adic, v_adic_series, LaurentSeries, USeriesL, EXACT_ORDER};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("series order underflow: reliable window [{low}, {high}] is empty")]
    OrderUnderflow { low: i64, high: i64 },
    #[error("q^{exponent} is not representable in the {regime} regime")]
    Regime { exponent: String, regime: &'static str },
    #[error("cannot combine Q(sqrt {0}) with Q(sqrt {1})")]
    FieldMismatch(u64, u64),
    #[error("invalid rational literal {0:?}")]
    Parse(String),
}

/// A commutative ring containing the rationals.
///
/// Implementations must return canonical values so that `==` is equality in
/// the ring.
pub trait Scalar: Clone + fmt::Debug + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn from_rational(r: &Rational) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn scale(&self, r: &Rational) -> Self {
        self.mul(&Self::from_rational(r))
    }

    /// Drops every part of weighted degree above `max`. Only graded rings
    /// (polynomials in power sums) have anything to drop.
    fn truncate_degree(&self, _max: u32) -> Self {
        self.clone()
    }

    fn to_json(&self) -> Value;
}

/// A scalar ring in which nonzero elements can be inverted.
pub trait Field: Scalar {
    fn try_inv(&self) -> Result<Self, ScalarError>;

    fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&other.try_inv()?))
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical text form: `"a/b"` in lowest terms, `"a"` when `b = 1`.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let err = || ScalarError::Parse(s.to_string());
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

/// Exponent of `v` in `q^e`, when it is an integer.
pub(crate) fn v_exponent_of_q_power(e: &Rational) -> Option<i64> {
    let twice = e * int(2);
    if twice.is_integer() {
        i64::try_from(twice.to_integer()).ok()
    } else {
        None
    }
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub(crate) fn sign_str(r: &Rational) -> &'static str {
    if r.is_negative() {
        "-"
    } else {
        "+"
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn to_json(&self) -> Value {
        Value::String(rational_to_string(self))
    }
}

impl Field for Rational {
    fn try_inv(&self) -> Result<Self, ScalarError> {
        if Zero::is_zero(self) {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sum_and_format() {
        let s = Scalar::add(&rat(1, 2), &rat(1, 3));
        assert_eq!(s, rat(5, 6));
        assert_eq!(rational_to_string(&s), "5/6");
        assert_eq!(rational_to_string(&rat(4, 2)), "2");
        assert_eq!(rational_to_string(&rat(-3, 6)), "-1/2");
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(parse_rational("-1").unwrap(), int(-1));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rational_inverse_of_zero_fails() {
        assert_eq!(int(0).try_inv(), Err(ScalarError::DivisionByZero));
    }
}
