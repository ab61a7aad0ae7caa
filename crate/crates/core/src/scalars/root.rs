use serde_json::{json, Value};

use super::ratfun::RatFunV;
use super::{gcd_u64, lcm_u64, Field, Rational, Scalar, ScalarError};

/// A rational function in `w = v^{1/root}`.
///
/// `value` is stored as a [`RatFunV`] whose variable is `w`. The root is kept
/// minimal: when every exponent is divisible by some `g > 1` that also divides
/// the root, both are divided by `g`. Values with different roots are combined
/// by lifting to the least common multiple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootRatFun {
    root: u32,
    value: RatFunV,
}

impl RootRatFun {
    pub fn new(root: u32, value: RatFunV) -> Self {
        assert!(root >= 1);
        Self::reduced(root as u64, value)
    }

    pub fn from_ratfun(x: RatFunV) -> Self {
        RootRatFun { root: 1, value: x }
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    /// The value as a function of `w`.
    pub fn value(&self) -> &RatFunV {
        &self.value
    }

    /// The value as a function of `v`, when the root is 1.
    pub fn as_ratfun(&self) -> Option<&RatFunV> {
        (self.root == 1).then_some(&self.value)
    }

    /// `q^e` for any rational `e`; `q = v^2 = w^{2 root}`.
    pub fn q_pow(e: &Rational) -> Self {
        let twice = e * Rational::from_integer(2.into());
        let p: i64 = twice.numer().try_into().expect("exponent numerator too large");
        let m: u64 = twice.denom().try_into().expect("exponent denominator too large");
        Self::reduced(m, RatFunV::v_pow(p))
    }

    fn reduced(root: u64, value: RatFunV) -> Self {
        let mut g = root;
        for e in value.exponents() {
            if g == 1 {
                break;
            }
            g = gcd_u64(g, e.unsigned_abs());
        }
        if g > 1 {
            RootRatFun { root: (root / g) as u32, value: value.compress_exponents(g as i64) }
        } else {
            RootRatFun { root: root as u32, value }
        }
    }

    fn lifted(&self, root: u64) -> RatFunV {
        let k = root / self.root as u64;
        if k == 1 {
            self.value.clone()
        } else {
            self.value.substitute_power(k as i64)
        }
    }

    fn combine(&self, other: &Self, f: impl Fn(&RatFunV, &RatFunV) -> RatFunV) -> Self {
        if self.root == other.root {
            return Self::reduced(self.root as u64, f(&self.value, &other.value));
        }
        let m = lcm_u64(self.root as u64, other.root as u64);
        Self::reduced(m, f(&self.lifted(m), &other.lifted(m)))
    }

    pub fn to_json(&self) -> Value {
        if self.root == 1 {
            return self.value.to_json();
        }
        let mut obj = self.value.to_json();
        obj["root"] = json!(self.root);
        obj
    }

    /// Renders `q^e` exponents for human-readable output: `w = q^{1/(2 root)}`.
    pub fn variable_name(&self) -> String {
        if self.root == 1 {
            "v".into()
        } else {
            format!("v^(1/{})", self.root)
        }
    }
}

impl std::fmt::Display for RootRatFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.root == 1 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} [w = v^(1/{})]", self.value.to_string().replace('v', "w"), self.root)
        }
    }
}

impl From<RatFunV> for RootRatFun {
    fn from(x: RatFunV) -> Self {
        RootRatFun::from_ratfun(x)
    }
}

impl Scalar for RootRatFun {
    fn zero() -> Self {
        RootRatFun::from_ratfun(RatFunV::zero())
    }
    fn one() -> Self {
        RootRatFun::from_ratfun(RatFunV::one())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        self.combine(other, |a, b| a.add(b))
    }
    fn neg(&self) -> Self {
        RootRatFun { root: self.root, value: self.value.neg() }
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        self.combine(other, |a, b| a.mul(b))
    }
    fn from_rational(r: &Rational) -> Self {
        RootRatFun::from_ratfun(RatFunV::from_rational(r))
    }
    fn scale(&self, r: &Rational) -> Self {
        if num_traits::Zero::is_zero(r) {
            return Self::zero();
        }
        RootRatFun { root: self.root, value: self.value.scale(r) }
    }
    fn to_json(&self) -> Value {
        RootRatFun::to_json(self)
    }
}

impl Field for RootRatFun {
    fn try_inv(&self) -> Result<Self, ScalarError> {
        Ok(RootRatFun { root: self.root, value: self.value.try_inv()? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{bracket, rat};

    #[test]
    fn quarter_power_squares_to_half() {
        let a = RootRatFun::q_pow(&rat(1, 4));
        assert_eq!(a.root(), 2);
        let sq = a.mul(&a);
        assert_eq!(sq, RootRatFun::from_ratfun(RatFunV::v_pow(1)));
        assert_eq!(sq.root(), 1);
    }

    #[test]
    fn mixed_roots_combine() {
        let a = RootRatFun::q_pow(&rat(1, 3));
        let b = RootRatFun::q_pow(&rat(1, 6));
        assert_eq!(a.mul(&b), RootRatFun::q_pow(&rat(1, 2)));
        assert_eq!(a.mul(&b).root(), 1);
    }

    #[test]
    fn division_back_to_plain() {
        let x = RootRatFun::from_ratfun(RatFunV::from_laurent(bracket(1)));
        let w = RootRatFun::q_pow(&rat(2, 5));
        let y = x.mul(&w).try_div(&w).unwrap();
        assert_eq!(y, x);
        assert_eq!(y.root(), 1);
    }
}
