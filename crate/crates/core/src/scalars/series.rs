use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::laurent::LaurentV;
use super::ratfun::RatFunV;
use super::root::RootRatFun;
use super::{int, rational_to_string, Field, Rational, Scalar, ScalarError};

/// `high` value marking a series with no truncation.
pub const EXACT_ORDER: i64 = i64::MAX / 4;

/// A truncated Laurent series `sum_{e <= high} c_e x^e + O(x^{high+1})`.
///
/// `low` is the valuation: the exponent of the first nonzero coefficient, or
/// `high + 1` when nothing nonzero is known. The variable is `u` (with
/// `q = e^u`) for [`expand_u`] and `v` for [`expand_v_adic`]; arithmetic does
/// not care which.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    low: i64,
    high: i64,
    coeffs: BTreeMap<i64, Rational>,
}

/// Series in `u` with `q = e^u`.
pub type USeriesL = LaurentSeries;

impl LaurentSeries {
    /// Builds a series known through `x^high`; terms above `high` are dropped.
    pub fn new<I: IntoIterator<Item = (i64, Rational)>>(terms: I, high: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            if e <= high && !c.is_zero() {
                *coeffs.entry(e).or_insert_with(Rational::zero) += c;
            }
        }
        coeffs.retain(|_, c: &mut Rational| !c.is_zero());
        Self::from_map(coeffs, high)
    }

    fn from_map(coeffs: BTreeMap<i64, Rational>, high: i64) -> Self {
        let low = coeffs.keys().next().copied().unwrap_or(if high >= EXACT_ORDER { 0 } else { high + 1 });
        LaurentSeries { low, high, coeffs }
    }

    pub fn exact(p: &LaurentV) -> Self {
        Self::new(p.terms().map(|(e, c)| (e, c.clone())), EXACT_ORDER)
    }

    /// The zero series `O(x^{high+1})`.
    pub fn big_o(high: i64) -> Self {
        Self::from_map(BTreeMap::new(), high)
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.high
    }

    pub fn is_exact(&self) -> bool {
        self.high >= EXACT_ORDER
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// True when no nonzero coefficient is known and the value is not exact.
    pub fn is_underflow(&self) -> bool {
        !self.is_exact() && self.coeffs.is_empty()
    }

    pub fn checked(self) -> Result<Self, ScalarError> {
        if self.is_underflow() {
            Err(ScalarError::OrderUnderflow { low: self.low, high: self.high })
        } else {
            Ok(self)
        }
    }

    /// Drops everything above `x^high`.
    pub fn truncate(&self, high: i64) -> Self {
        if high >= self.high {
            return self.clone();
        }
        Self::from_map(self.coeffs.range(..=high).map(|(e, c)| (*e, c.clone())).collect(), high)
    }

    /// Equality of all coefficients through `x^order`, which both must know.
    pub fn agrees_through(&self, other: &Self, order: i64) -> bool {
        order <= self.high && order <= other.high && self.coeffs.range(..=order).eq(other.coeffs.range(..=order))
    }

    pub fn shift(&self, k: i64) -> Self {
        let high = if self.is_exact() { EXACT_ORDER } else { self.high + k };
        Self::from_map(self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(), high)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        Scalar::add(self, other).checked()
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        Scalar::mul(self, other).checked()
    }

    /// Inverse with an explicit target order, needed when the divisor is an
    /// exact non-monomial (its inverse has infinitely many terms).
    pub fn inv_to(&self, order: i64) -> Result<Self, ScalarError> {
        if self.coeffs.is_empty() {
            return Err(if self.is_exact() {
                ScalarError::DivisionByZero
            } else {
                ScalarError::OrderUnderflow { low: self.low, high: self.high }
            });
        }
        let vb = self.low;
        let reliable = if self.is_exact() { order } else { order.min(self.high - 2 * vb) };
        if self.is_exact() && self.coeffs.len() == 1 {
            let c = self.coeffs[&vb].recip();
            return Ok(Self::new([(-vb, c)], EXACT_ORDER));
        }
        if reliable < -vb {
            return Err(ScalarError::OrderUnderflow { low: -vb, high: reliable });
        }
        // b = x^vb (b0 + b1 x + ...); 1/b = x^{-vb} (d0 + d1 x + ...)
        let n = (reliable + vb) as usize;
        let b: Vec<Rational> = (0..=n).map(|i| self.coeff(vb + i as i64)).collect();
        let b0_inv = b[0].recip();
        let mut d: Vec<Rational> = Vec::with_capacity(n + 1);
        d.push(b0_inv.clone());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for i in 1..=k {
                if !b[i].is_zero() {
                    acc += &b[i] * &d[k - i];
                }
            }
            d.push(-acc * &b0_inv);
        }
        Ok(Self::new(d.into_iter().enumerate().map(|(i, c)| (i as i64 - vb, c)), reliable))
    }

    pub fn try_div_to(&self, other: &Self, order: i64) -> Result<Self, ScalarError> {
        let inv = other.inv_to(order - self.low)?;
        let out = Scalar::mul(self, &inv);
        Ok(out.truncate(order)).and_then(Self::checked)
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self.coeffs.iter().map(|(e, c)| json!([e, rational_to_string(c)])).collect();
        if self.is_exact() {
            json!({ "low": self.low, "high": null, "coeffs": coeffs })
        } else {
            json!({ "low": self.low, "high": self.high, "coeffs": coeffs })
        }
    }
}

fn min_high(a: i64, b: i64) -> i64 {
    a.min(b).min(EXACT_ORDER)
}

impl Scalar for LaurentSeries {
    fn zero() -> Self {
        Self::big_o(EXACT_ORDER)
    }
    fn one() -> Self {
        Self::new([(0, int(1))], EXACT_ORDER)
    }
    /// Exact zero only; `O(x^k)` is not known to vanish.
    fn is_zero(&self) -> bool {
        self.is_exact() && self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let high = min_high(self.high, other.high);
        let mut coeffs: BTreeMap<i64, Rational> = self.coeffs.range(..=high).map(|(e, c)| (*e, c.clone())).collect();
        for (e, c) in other.coeffs.range(..=high) {
            let entry = coeffs.entry(*e).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(e);
            }
        }
        Self::from_map(coeffs, high)
    }
    fn neg(&self) -> Self {
        LaurentSeries { low: self.low, high: self.high, coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let high = match (self.is_exact(), other.is_exact()) {
            (true, true) => EXACT_ORDER,
            (true, false) => other.high + self.low,
            (false, true) => self.high + other.low,
            (false, false) => (self.high + other.low).min(other.high + self.low),
        };
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e = e1 + e2;
                if e > high {
                    break;
                }
                *coeffs.entry(e).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self::from_map(coeffs, high)
    }
    fn from_rational(r: &Rational) -> Self {
        Self::new([(0, r.clone())], EXACT_ORDER)
    }
    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        LaurentSeries { low: self.low, high: self.high, coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * r)).collect() }
    }
    fn to_json(&self) -> Value {
        LaurentSeries::to_json(self)
    }
}

impl Field for LaurentSeries {
    /// Exact non-monomials have no finite inverse; use [`LaurentSeries::inv_to`].
    fn try_inv(&self) -> Result<Self, ScalarError> {
        if self.is_exact() && self.coeffs.len() > 1 {
            return Err(ScalarError::Regime {
                exponent: "-1".into(),
                regime: "exact series (use inv_to with an explicit order)",
            });
        }
        self.inv_to(EXACT_ORDER)
    }
}

/// The `u`-expansion of `sum c_k e^{k s u}` through `u^high`.
fn exp_substitute(p: &LaurentV, s: &Rational, high: i64) -> LaurentSeries {
    let mut out = Vec::new();
    let mut fact = Rational::one();
    for j in 0..=high.max(0) {
        if j > 0 {
            fact *= int(j);
        }
        let mut acc = Rational::zero();
        for (k, c) in p.terms() {
            let base = int(k) * s;
            acc += c * pow(&base, j as u32);
        }
        out.push((j, acc / &fact));
    }
    LaurentSeries::new(out, high)
}

fn pow(x: &Rational, n: u32) -> Rational {
    let mut r = Rational::one();
    for _ in 0..n {
        r *= x;
    }
    r
}

/// Valuation in `u` of `p(e^{s u})`; at most `#terms - 1` (Vandermonde).
fn u_valuation(p: &LaurentV, s: &Rational) -> i64 {
    let bound = p.len() as i64;
    let series = exp_substitute(p, s, bound);
    series.low()
}

fn expand_with_step(num: &LaurentV, den: &LaurentV, s: &Rational, order: i64) -> Result<LaurentSeries, ScalarError> {
    if den.is_empty() {
        return Err(ScalarError::DivisionByZero);
    }
    if num.is_empty() {
        return Ok(LaurentSeries::zero());
    }
    let vn = u_valuation(num, s);
    let vd = u_valuation(den, s);
    if order < vn - vd {
        return Ok(LaurentSeries::big_o(order));
    }
    let n = exp_substitute(num, s, order + vd);
    let d = exp_substitute(den, s, order + 2 * vd - vn);
    n.try_div_to(&d, order)
}

/// Expands `x` in `u` with `v = e^{u/2}` (so `q = e^u`), through `u^order`.
pub fn expand_u(x: &RatFunV, order: i64) -> Result<USeriesL, ScalarError> {
    expand_with_step(x.num(), x.den(), &super::rat(1, 2), order)
}

/// As [`expand_u`] for a value in `w = v^{1/m}`, with `w = e^{u/(2m)}`.
pub fn expand_u_root(x: &RootRatFun, order: i64) -> Result<USeriesL, ScalarError> {
    let m = x.root() as i64;
    expand_with_step(x.value().num(), x.value().den(), &super::rat(1, 2 * m), order)
}

/// Expansion of `x` at `v = 0` through `v^order`, as `(v-exponent, coefficient)`
/// pairs with nonzero coefficients in ascending order. `v^k` is `q^{k/2}`.
pub fn expand_v_adic(x: &RatFunV, order: i64) -> Vec<(i64, Rational)> {
    v_adic_series(x, order).terms().map(|(e, c)| (e, c.clone())).collect()
}

/// [`expand_v_adic`] as a series value.
pub fn v_adic_series(x: &RatFunV, order: i64) -> LaurentSeries {
    if x.is_zero() {
        return LaurentSeries::big_o(order);
    }
    let num = LaurentSeries::exact(x.num());
    let den = LaurentSeries::exact(x.den());
    num.try_div_to(&den, order).unwrap_or_else(|_| LaurentSeries::big_o(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{bracket, rat};

    /// Independent oracle: u * 1/(2 sinh(u/2)) by long division of the sinh series.
    fn inverse_sinh_oracle(order: usize) -> Vec<Rational> {
        // s[j] = coefficient of u^j in 2 sinh(u/2) / u = sum_k u^{2k} / (4^k (2k+1)!)
        let mut s = Vec::new();
        let mut f = Rational::one();
        for j in 0..=order {
            f *= int(j as i64 + 1);
            if j % 2 == 0 {
                s.push(pow(&rat(1, 2), j as u32) / &f);
            } else {
                s.push(Rational::zero());
            }
        }
        let mut d = vec![s[0].recip()];
        for k in 1..=order {
            let mut acc = Rational::zero();
            for i in 1..=k {
                acc += &s[i] * &d[k - i];
            }
            d.push(-acc / &s[0]);
        }
        d
    }

    #[test]
    fn inverse_bracket_expansion() {
        let x = RatFunV::one().try_div(&RatFunV::from_laurent(bracket(1))).unwrap();
        let s = expand_u(&x, 3).unwrap();
        assert_eq!(s.low(), -1);
        assert_eq!(s.high(), 3);
        assert_eq!(s.coeff(-1), int(1));
        assert_eq!(s.coeff(0), int(0));
        assert_eq!(s.coeff(1), rat(-1, 24));
        assert_eq!(s.coeff(3), rat(7, 5760));
        let oracle = inverse_sinh_oracle(6);
        let s = expand_u(&x, 5).unwrap();
        for (j, c) in oracle.iter().enumerate().take(7) {
            assert_eq!(s.coeff(j as i64 - 1), *c, "u^{}", j as i64 - 1);
        }
    }

    #[test]
    fn constant_expansion() {
        let s = expand_u(&RatFunV::one(), 5).unwrap();
        assert_eq!(s.terms().collect::<Vec<_>>(), vec![(0, &int(1))]);
        assert_eq!(s.high(), 5);
    }

    #[test]
    fn bracket_ratio_matches_sinh_ratio() {
        // [2]/[1] = v + v^{-1} = 2 cosh(u/2) = 2 + u^2/4 + u^4/192
        let x = RatFunV::from_laurent(bracket(2)).try_div(&RatFunV::from_laurent(bracket(1))).unwrap();
        let s = expand_u(&x, 4).unwrap();
        assert_eq!(s.coeff(0), int(2));
        assert_eq!(s.coeff(2), rat(1, 4));
        assert_eq!(s.coeff(4), rat(1, 192));
    }

    #[test]
    fn v_adic_geometric() {
        let x = RatFunV::one_minus_v_pow_inv(2);
        assert_eq!(expand_v_adic(&x, 4), vec![(0, int(1)), (2, int(1)), (4, int(1))]);
        let y = RatFunV::one().try_div(&RatFunV::from_laurent(bracket(1))).unwrap();
        assert_eq!(expand_v_adic(&y, 5), vec![(1, int(-1)), (3, int(-1)), (5, int(-1))]);
        assert!(expand_v_adic(&RatFunV::zero(), 5).is_empty());
    }

    #[test]
    fn underflow_is_reported() {
        let a = LaurentSeries::new([(3, int(1))], 4);
        let b = LaurentSeries::big_o(2);
        assert!(matches!(a.try_mul(&b), Err(ScalarError::OrderUnderflow { .. })));
        assert!(matches!(b.inv_to(3), Err(ScalarError::OrderUnderflow { .. })));
    }

    #[test]
    fn reliable_order_of_product() {
        let a = LaurentSeries::new([(-1, int(1)), (0, int(2))], 2);
        let b = LaurentSeries::new([(1, int(1))], 3);
        let c = Scalar::mul(&a, &b);
        assert_eq!(c.high(), 2);
        assert_eq!(c.low(), 0);
    }

    #[test]
    fn fractional_root_expansion() {
        // q^{1/4} = e^{u/4}
        let x = RootRatFun::q_pow(&rat(1, 4));
        let s = expand_u_root(&x, 2).unwrap();
        assert_eq!(s.coeff(1), rat(1, 4));
        assert_eq!(s.coeff(2), rat(1, 32));
    }
}
