use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

use super::{int, rational_to_string, Field, Rational, Scalar, ScalarError};

/// An element `a + b sqrt(d)` of the quadratic field `Q(sqrt d)`.
///
/// `d` is squarefree; `d = 1` stands for plain rationals (then `b = 0`).
/// Values with `b = 0` combine freely with any field; otherwise the fields
/// must match.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SqrtExt {
    a: Rational,
    b: Rational,
    d: u64,
}

fn squarefree_split(n: u64) -> (u64, u64) {
    // n = s^2 * d with d squarefree
    let mut s = 1u64;
    let mut d = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        let mut k = 0;
        while m.is_multiple_of(p) {
            m /= p;
            k += 1;
        }
        s *= p.pow(k / 2);
        if k % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    (s, d * m)
}

impl SqrtExt {
    pub fn rational(a: Rational) -> Self {
        SqrtExt { a, b: Rational::zero(), d: 1 }
    }

    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        assert!(d >= 1);
        let (s, core) = squarefree_split(d);
        let b = b * int(s as i64);
        if core == 1 {
            return Self::rational(a + b);
        }
        let d = if b.is_zero() { 1 } else { core };
        SqrtExt { a, b, d }
    }

    /// `sqrt(q)` for a positive rational `q`.
    pub fn sqrt_of(q: &Rational) -> Result<Self, ScalarError> {
        if !q.is_positive() {
            return Err(ScalarError::Regime { exponent: "1/2".into(), regime: "numeric q > 0" });
        }
        // sqrt(n/m) = sqrt(n m) / m
        let nm: BigInt = q.numer() * q.denom();
        let nm = nm.to_u64().ok_or_else(|| ScalarError::Parse(rational_to_string(q)))?;
        let (s, d) = squarefree_split(nm);
        let m = Rational::from_integer(q.denom().clone());
        if d == 1 {
            Ok(Self::rational(int(s as i64) / m))
        } else {
            Ok(SqrtExt { a: Rational::zero(), b: int(s as i64) / m, d })
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    fn field_with(&self, other: &Self) -> Result<u64, ScalarError> {
        match (self.d, other.d) {
            (1, d) | (d, 1) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(ScalarError::FieldMismatch(x, y)),
        }
    }

    fn make(a: Rational, b: Rational, d: u64) -> Self {
        if b.is_zero() {
            Self::rational(a)
        } else {
            SqrtExt { a, b, d }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.field_with(other)?;
        Ok(Self::make(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.field_with(other)?;
        let dr = int(d as i64);
        let a = &self.a * &other.a + &self.b * &other.b * dr;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::make(a, b, d))
    }
}

impl Scalar for SqrtExt {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn one() -> Self {
        Self::rational(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    /// Panics on mixed fields; use [`SqrtExt::try_add`] where that can happen.
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("quadratic field mismatch")
    }
    fn neg(&self) -> Self {
        SqrtExt { a: -&self.a, b: -&self.b, d: self.d }
    }
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("quadratic field mismatch")
    }
    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }
    fn scale(&self, r: &Rational) -> Self {
        Self::make(&self.a * r, &self.b * r, self.d)
    }
    fn to_json(&self) -> Value {
        if self.b.is_zero() {
            Value::String(rational_to_string(&self.a))
        } else {
            json!({ "a": rational_to_string(&self.a), "b": rational_to_string(&self.b), "d": self.d })
        }
    }
}

impl Field for SqrtExt {
    fn try_inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let norm = &self.a * &self.a - &self.b * &self.b * int(self.d as i64);
        Ok(Self::make(&self.a / &norm, -&self.b / &norm, self.d))
    }
}
