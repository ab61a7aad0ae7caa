use std::collections::BTreeMap;

use serde_json::Value;

use super::{int, rational_to_string, Rational, Scalar};

/// A Laurent polynomial `sum c_k v^k` with rational coefficients.
///
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct LaurentV {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentV {
    pub fn monomial(exp: i64, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentV { terms }
    }

    /// `v^k`
    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(exp, int(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(iter: I) -> Self {
        let mut out = LaurentV::default();
        for (e, c) in iter {
            out.add_term(e, &c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn low(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn high(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub(crate) fn add_term(&mut self, exp: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentV { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Substitutes `v -> v^k`; `k = -1` is the bar involution.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "substitution v -> v^0 is not invertible");
        LaurentV { terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect() }
    }

    /// Exact division of all exponents by `k`; the caller guarantees divisibility.
    pub(crate) fn compress_exponents(&self, k: i64) -> Self {
        LaurentV {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    debug_assert_eq!(e % k, 0);
                    (e / k, c.clone())
                })
                .collect(),
        }
    }

    /// Evaluates at `v = x` for any ring containing `x`.
    pub fn eval<S: Scalar>(&self, x: &S, x_inv: Option<&S>) -> S {
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let base = if *e >= 0 { x.clone() } else { x_inv.expect("negative exponent needs an inverse").clone() };
            let mut p = S::one();
            for _ in 0..e.unsigned_abs() {
                p = p.mul(&base);
            }
            acc = acc.add(&p.scale(c));
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| Value::Array(vec![Value::from(*e), Value::String(rational_to_string(c))]))
                .collect(),
        )
    }
}

impl Scalar for LaurentV {
    fn zero() -> Self {
        LaurentV::default()
    }
    fn one() -> Self {
        LaurentV::constant(int(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }
    fn neg(&self) -> Self {
        LaurentV { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentV::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
    fn from_rational(r: &Rational) -> Self {
        LaurentV::constant(r.clone())
    }
    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return LaurentV::default();
        }
        LaurentV { terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect() }
    }
    fn to_json(&self) -> Value {
        LaurentV::to_json(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::bracket;

    #[test]
    fn bracket_one_squared() {
        let b = bracket(1);
        let sq = Scalar::mul(&b, &b);
        let expected = LaurentV::from_terms([(2, int(1)), (0, int(-2)), (-2, int(1))]);
        assert_eq!(sq, expected);
    }

    #[test]
    fn json_is_ascending() {
        let p = LaurentV::from_terms([(3, int(1)), (-1, crate::scalars::rat(1, 2))]);
        assert_eq!(p.to_json().to_string(), r#"[[-1,"1/2"],[3,"1"]]"#);
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = LaurentV::v_pow(2);
        assert!(Scalar::is_zero(&Scalar::sub(&p, &p)));
    }
}
