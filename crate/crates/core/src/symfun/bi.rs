use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::{union, SymFun};
use crate::partitions::Partition;
use crate::scalars::{Rational, Scalar};

/// Monomial `p+_{mu+} p-_{mu-}` in two families of power sums, ordered by
/// total degree, then reverse-lexicographically in `mu+`, then in `mu-`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiKey {
    pub plus: Partition,
    pub minus: Partition,
}

impl BiKey {
    pub fn new(plus: Partition, minus: Partition) -> Self {
        BiKey { plus, minus }
    }

    pub fn degree(&self) -> u32 {
        self.plus.size() + self.minus.size()
    }
}

impl Ord for BiKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.plus.parts().cmp(self.plus.parts()))
            .then_with(|| other.minus.parts().cmp(self.minus.parts()))
    }
}

impl PartialOrd for BiKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in two families `p+_n`, `p-_n` with coefficients in `S`.
///
/// Used as a coefficient ring itself (formal vertex operators in the Fock
/// engine) so it implements [`Scalar`], with
/// [`Scalar::truncate_degree`] cutting the total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiSymFun<S> {
    terms: BTreeMap<BiKey, S>,
}

impl<S: Scalar> std::fmt::Debug for BiSymFun<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(k, c)| ((&k.plus, &k.minus), c))).finish()
    }
}

impl<S: Scalar> Default for BiSymFun<S> {
    fn default() -> Self {
        BiSymFun { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> BiSymFun<S> {
    pub fn monomial(plus: Partition, minus: Partition, c: S) -> Self {
        let mut out = Self::default();
        out.add_term(BiKey::new(plus, minus), &c);
        out
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(Partition::empty(), Partition::empty(), c)
    }

    /// `p+_n` (`plus = true`) or `p-_n`.
    pub fn p(plus: bool, n: u32) -> Self {
        let mu = Partition::new(vec![n]);
        if plus {
            Self::monomial(mu, Partition::empty(), S::one())
        } else {
            Self::monomial(Partition::empty(), mu, S::one())
        }
    }

    pub fn from_plus(f: &SymFun<S>) -> Self {
        let mut out = Self::default();
        for (mu, c) in f.terms() {
            out.add_term(BiKey::new(mu.clone(), Partition::empty()), c);
        }
        out
    }

    pub fn from_minus(f: &SymFun<S>) -> Self {
        let mut out = Self::default();
        for (mu, c) in f.terms() {
            out.add_term(BiKey::new(Partition::empty(), mu.clone()), c);
        }
        out
    }

    /// The `p+` part as a one-family function; fails if any `p-` appears.
    pub fn to_plus(&self) -> Option<SymFun<S>> {
        if self.terms.keys().any(|k| !k.minus.is_empty()) {
            return None;
        }
        Some(SymFun::from_terms(self.terms.iter().map(|(k, c)| (k.plus.clone(), c.clone()))))
    }

    pub fn from_terms<I: IntoIterator<Item = (BiKey, S)>>(iter: I) -> Self {
        let mut out = Self::default();
        for (k, c) in iter {
            out.add_term(k, &c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, k: BiKey, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(x) => {
                *x = x.add(c);
                if x.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BiKey, &S)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, plus: &Partition, minus: &Partition) -> S {
        self.terms.get(&BiKey::new(plus.clone(), minus.clone())).cloned().unwrap_or_else(S::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(BiKey::degree).max().unwrap_or(0)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BiSymFun<T> {
        let mut out = BiSymFun::default();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &f(c));
        }
        out
    }

    pub fn map_with<T: Scalar>(&self, f: impl Fn(&BiKey, &S) -> T) -> BiSymFun<T> {
        let mut out = BiSymFun::default();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &f(k, c));
        }
        out
    }

    pub fn filter(&self, keep: impl Fn(&BiKey) -> bool) -> Self {
        BiSymFun { terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (k.clone(), c.clone())).collect() }
    }

    pub fn mul_truncated(&self, other: &Self, max_degree: u32) -> Self {
        let mut out = Self::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.degree() + b.degree() > max_degree {
                    continue;
                }
                let k = BiKey::new(union(&a.plus, &b.plus), union(&a.minus, &b.minus));
                out.add_term(k, &ca.mul(cb));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(k, c)| json!({ "mu_plus": k.plus.to_json(), "mu_minus": k.minus.to_json(), "coeff": c.to_json() }))
                .collect(),
        )
    }
}

impl<S: Scalar> Scalar for BiSymFun<S> {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::constant(S::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }
    fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_truncated(other, u32::MAX)
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(S::from_rational(r))
    }
    fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }
    fn truncate_degree(&self, max: u32) -> Self {
        self.filter(|k| k.degree() <= max)
    }
    fn to_json(&self) -> Value {
        BiSymFun::to_json(self)
    }
}
