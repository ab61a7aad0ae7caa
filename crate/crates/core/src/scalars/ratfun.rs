use std::fmt;

use num_traits::One;
use serde_json::{json, Value};

use super::laurent::LaurentV;
use super::poly::{self, Poly};
use super::{int, rational_to_string, Field, Rational, Scalar, ScalarError};

/// The quantum integer `[m] = v^m - v^{-m}` with `v = q^{1/2}`.
pub fn bracket(m: i64) -> LaurentV {
    if m == 0 {
        return LaurentV::default();
    }
    LaurentV::from_terms([(m, int(1)), (-m, int(-1))])
}

/// A rational function `num / den` in `v = q^{1/2}`.
///
/// Canonical form: `den` is a polynomial in `v` with constant term `1`, all
/// powers of `v` live in `num`, and `num` and `den` are coprime. Two values are
/// therefore equal exactly when their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunV {
    num: LaurentV,
    den: LaurentV,
}

fn to_dense(p: &LaurentV) -> Poly {
    // p has only nonnegative exponents here
    let deg = p.high().unwrap_or(0).max(0) as usize;
    let mut out = vec![Rational::zero(); deg + 1];
    for (e, c) in p.terms() {
        out[e as usize] = c.clone();
    }
    poly::trim(&mut out);
    out
}

fn from_dense(p: &[Rational], shift: i64) -> LaurentV {
    LaurentV::from_terms(p.iter().enumerate().map(|(i, c)| (i as i64 + shift, c.clone())))
}

impl RatFunV {
    pub fn new(num: LaurentV, den: LaurentV) -> Result<Self, ScalarError> {
        if den.is_empty() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: LaurentV, den: LaurentV) -> Self {
        if num.is_empty() {
            return RatFunV::zero();
        }
        let s = den.low().unwrap();
        let den = den.shift(-s);
        let num = num.shift(-s);
        let n_low = num.low().unwrap();
        let mut num_d = to_dense(&num.shift(-n_low));
        let mut den_d = to_dense(&den);
        if den_d.len() > 1 && num_d.len() > 1 {
            let g = poly::gcd(&num_d, &den_d);
            if g.len() > 1 {
                num_d = poly::div_exact(&num_d, &g);
                den_d = poly::div_exact(&den_d, &g);
            }
        }
        Self::normalized(&num_d, &den_d, n_low)
    }

    /// Builds from coprime dense parts, scaling so that `den(0) = 1`.
    fn normalized(num_d: &[Rational], den_d: &[Rational], n_low: i64) -> Self {
        let c = den_d[0].clone();
        debug_assert!(!c.is_zero());
        if c.is_one() {
            RatFunV { num: from_dense(num_d, n_low), den: from_dense(den_d, 0) }
        } else {
            let inv = c.recip();
            let num: Poly = num_d.iter().map(|x| x * &inv).collect();
            let den: Poly = den_d.iter().map(|x| x * &inv).collect();
            RatFunV { num: from_dense(&num, n_low), den: from_dense(&den, 0) }
        }
    }

    pub fn from_laurent(p: LaurentV) -> Self {
        RatFunV { num: p, den: LaurentV::one() }
    }

    /// `v^k`
    pub fn v_pow(k: i64) -> Self {
        Self::from_laurent(LaurentV::v_pow(k))
    }

    /// `q^e` for a half-integer `e`.
    pub fn q_pow(e: &Rational) -> Result<Self, ScalarError> {
        super::v_exponent_of_q_power(e)
            .map(Self::v_pow)
            .ok_or_else(|| ScalarError::Regime { exponent: rational_to_string(e), regime: "exact v" })
    }

    /// `1 / (1 - v^k)` for `k != 0`.
    pub fn one_minus_v_pow_inv(k: i64) -> Self {
        assert!(k != 0);
        let den = LaurentV::from_terms([(0, int(1)), (k, int(-1))]);
        Self::canonical(LaurentV::one(), den)
    }

    pub fn num(&self) -> &LaurentV {
        &self.num
    }

    pub fn den(&self) -> &LaurentV {
        &self.den
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial()
    }

    /// Substitutes `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        Self::canonical(self.num.substitute_power(-1), self.den.substitute_power(-1))
    }

    /// Substitutes `v -> v^k` for `k > 0`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k > 0);
        // coprimality is preserved by v -> v^k, so no gcd is needed
        RatFunV { num: self.num.substitute_power(k), den: self.den.substitute_power(k) }
    }

    pub(crate) fn compress_exponents(&self, k: i64) -> Self {
        RatFunV { num: self.num.compress_exponents(k), den: self.den.compress_exponents(k) }
    }

    pub(crate) fn exponents(&self) -> impl Iterator<Item = i64> + '_ {
        self.num.terms().map(|(e, _)| e).chain(self.den.terms().map(|(e, _)| e))
    }

    /// Evaluates at `v = x` in a field containing `x`.
    pub fn eval<F: Field>(&self, x: &F) -> Result<F, ScalarError> {
        let x_inv = x.try_inv().ok();
        let n = self.num.eval(x, x_inv.as_ref());
        let d = self.den.eval(x, None);
        n.try_div(&d)
    }

    pub fn to_json(&self) -> Value {
        json!({ "num": self.num.to_json(), "den": self.den.to_json() })
    }

    fn dense_num(&self) -> (Poly, i64) {
        let low = self.num.low().unwrap_or(0);
        (to_dense(&self.num.shift(-low)), low)
    }
}

impl fmt::Debug for RatFunV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", fmt_laurent(&self.num))?;
        if !self.den.is_monomial() || self.den != LaurentV::one() {
            write!(f, "/({})", fmt_laurent(&self.den))?;
        }
        Ok(())
    }
}

impl fmt::Display for RatFunV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub(crate) fn fmt_laurent(p: &LaurentV) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (e, c)) in p.terms().enumerate() {
        let sign = super::sign_str(c);
        let abs = if sign == "-" { -c } else { c.clone() };
        if i > 0 || sign == "-" {
            s.push_str(if i > 0 {
                if sign == "-" {
                    " - "
                } else {
                    " + "
                }
            } else {
                "-"
            });
        }
        let cs = rational_to_string(&abs);
        match e {
            0 => s.push_str(&cs),
            _ => {
                if !abs.is_one() {
                    s.push_str(&cs);
                    s.push('*');
                }
                if e == 1 {
                    s.push('v');
                } else {
                    s.push_str(&format!("v^{e}"));
                }
            }
        }
    }
    s
}

impl Scalar for RatFunV {
    fn zero() -> Self {
        RatFunV { num: LaurentV::default(), den: LaurentV::one() }
    }

    fn one() -> Self {
        RatFunV { num: LaurentV::one(), den: LaurentV::one() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::canonical(self.num.add(&other.num), self.den.clone());
        }
        let b = to_dense(&self.den);
        let d = to_dense(&other.den);
        let g = poly::gcd(&b, &d);
        let (b1, d1) =
            if g.len() > 1 { (poly::div_exact(&b, &g), poly::div_exact(&d, &g)) } else { (b.clone(), d.clone()) };
        let num = self.num.mul(&from_dense(&d1, 0)).add(&other.num.mul(&from_dense(&b1, 0)));
        let den = from_dense(&poly::mul(&b1, &d), 0);
        Self::canonical(num, den)
    }

    fn neg(&self) -> Self {
        RatFunV { num: self.num.neg(), den: self.den.clone() }
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let self_poly = self.den.is_monomial();
        let other_poly = other.den.is_monomial();
        if self_poly && other_poly {
            return RatFunV { num: self.num.mul(&other.num), den: LaurentV::one() };
        }
        if self.num.is_monomial() && other_poly && other.num.is_monomial() {
            return RatFunV { num: self.num.mul(&other.num), den: self.den.clone() };
        }
        if other.num.is_monomial() && self_poly && self.num.is_monomial() {
            return RatFunV { num: self.num.mul(&other.num), den: other.den.clone() };
        }
        if self.num.is_monomial() && other.num.is_monomial() && !self_poly && !other_poly {
            // monomial numerators are coprime to both denominators
            let den = self.den.mul(&other.den);
            return RatFunV { num: self.num.mul(&other.num), den };
        }
        // cross-cancel, then the product is already in lowest terms
        let (a, a_low) = self.dense_num();
        let (c, c_low) = other.dense_num();
        let b = to_dense(&self.den);
        let d = to_dense(&other.den);
        let (a, d) = cancel(a, d);
        let (c, b) = cancel(c, b);
        let num = poly::mul(&a, &c);
        let den = poly::mul(&b, &d);
        Self::normalized(&num, &den, a_low + c_low)
    }

    fn from_rational(r: &Rational) -> Self {
        RatFunV { num: LaurentV::constant(r.clone()), den: LaurentV::one() }
    }

    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        RatFunV { num: self.num.scale(r), den: self.den.clone() }
    }

    fn to_json(&self) -> Value {
        RatFunV::to_json(self)
    }
}

fn cancel(x: Poly, y: Poly) -> (Poly, Poly) {
    if x.len() <= 1 || y.len() <= 1 {
        return (x, y);
    }
    let g = poly::gcd(&x, &y);
    if g.len() > 1 {
        (poly::div_exact(&x, &g), poly::div_exact(&y, &g))
    } else {
        (x, y)
    }
}

impl Field for RatFunV {
    fn try_inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }
}

impl From<LaurentV> for RatFunV {
    fn from(p: LaurentV) -> Self {
        RatFunV::from_laurent(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn rf(p: LaurentV) -> RatFunV {
        p.into()
    }

    #[test]
    fn bracket_values() {
        assert_eq!(bracket(1), LaurentV::from_terms([(1, int(1)), (-1, int(-1))]));
        assert!(bracket(0).is_empty());
        assert_eq!(bracket(-2), bracket(2).neg());
    }

    #[test]
    fn bracket_bar_is_negation() {
        for m in 1..=10 {
            let b = rf(bracket(m));
            assert_eq!(b.bar(), b.neg());
        }
    }

    #[test]
    fn self_division_is_one() {
        let b = rf(bracket(1));
        assert_eq!(b.try_div(&b).unwrap(), RatFunV::one());
    }

    #[test]
    fn canonical_denominator_has_unit_constant() {
        // 1/[1] = v / (v^2 - 1) = -v / (1 - v^2)
        let x = RatFunV::one().try_div(&rf(bracket(1))).unwrap();
        assert_eq!(x.den(), &LaurentV::from_terms([(0, int(1)), (2, int(-1))]));
        assert_eq!(x.num(), &LaurentV::monomial(1, int(-1)));
    }

    #[test]
    fn sum_of_geometric_pieces() {
        // 1/(1-q) - q/(1-q) = 1
        let a = RatFunV::one_minus_v_pow_inv(2);
        let b = a.mul(&RatFunV::v_pow(2));
        assert_eq!(a.sub(&b), RatFunV::one());
    }

    #[test]
    fn eval_at_rational() {
        let x = RatFunV::one_minus_v_pow_inv(2);
        assert_eq!(x.eval(&rat(1, 2)).unwrap(), rat(4, 3));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RatFunV::new(LaurentV::one(), LaurentV::default()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn half_integer_q_powers_only() {
        assert_eq!(RatFunV::q_pow(&rat(3, 2)).unwrap(), RatFunV::v_pow(3));
        assert!(RatFunV::q_pow(&rat(1, 4)).is_err());
    }
}
