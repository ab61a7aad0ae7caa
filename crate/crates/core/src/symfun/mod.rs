//! Symmetric functions in the power-sum basis.
//!
//! A [`SymFun`] is a finite sum `sum c_mu p_mu` with coefficients in any
//! [`Scalar`] ring. Schur and skew Schur functions, characters and alphabet
//! specializations are conversions into and out of this representation.

mod alphabet;
mod bi;
mod characters;

pub use alphabet::{hook_content_spec, Alphabet, AlphabetRule};
pub use bi::{BiKey, BiSymFun};
pub use characters::{e_in_p, h_in_p, mn_character, schur_in_p, skew_schur_in_p};

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::partitions::Partition;
use crate::scalars::{int, rat, Field, Rational, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymFunError {
    #[error("size mismatch: |{0}| != |{1}|")]
    SizeMismatch(Partition, Partition),
    #[error("constant term must be {expected}")]
    ConstantTerm { expected: &'static str },
    #[error("alphabet {alphabet} has no image for p_{n}")]
    MissingImage { alphabet: String, n: u32 },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymFun<S> {
    terms: BTreeMap<Partition, S>,
}

impl<S: Scalar> Default for SymFun<S> {
    fn default() -> Self {
        SymFun { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> std::fmt::Debug for SymFun<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<S: Scalar> SymFun<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(Partition::empty(), c)
    }

    pub fn monomial(mu: Partition, c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mu, c);
        }
        SymFun { terms }
    }

    /// `p_n`
    pub fn p(n: u32) -> Self {
        Self::monomial(Partition::new(vec![n]), S::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, S)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (mu, c) in iter {
            out.add_term(mu, &c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, mu: Partition, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mu) {
            Some(x) => {
                *x = x.add(c);
                if x.is_zero() {
                    self.terms.remove(&mu);
                }
            }
            None => {
                self.terms.insert(mu, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &S)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, mu: &Partition) -> S {
        self.terms.get(mu).cloned().unwrap_or_else(S::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> S {
        self.coeff(&Partition::empty())
    }

    /// Largest `|mu|` present; 0 for the zero function.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Partition::size).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (mu, c) in &other.terms {
            out.add_term(mu.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }

    pub fn scale_by(&self, s: &S) -> Self {
        self.map(|c| c.mul(s))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SymFun<T> {
        let mut out = SymFun::zero();
        for (mu, c) in &self.terms {
            out.add_term(mu.clone(), &f(c));
        }
        out
    }

    /// Applies `f` to each coefficient together with its partition.
    pub fn map_with<T: Scalar>(&self, f: impl Fn(&Partition, &S) -> T) -> SymFun<T> {
        let mut out = SymFun::zero();
        for (mu, c) in &self.terms {
            out.add_term(mu.clone(), &f(mu, c));
        }
        out
    }

    pub fn truncate(&self, max_degree: u32) -> Self {
        SymFun {
            terms: self
                .terms
                .iter()
                .filter(|(mu, _)| mu.size() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The part of degree exactly `d`.
    pub fn homogeneous(&self, d: u32) -> Self {
        SymFun {
            terms: self.terms.iter().filter(|(mu, _)| mu.size() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_truncated(other, u32::MAX)
    }

    /// Product with every term of degree above `max_degree` discarded.
    pub fn mul_truncated(&self, other: &Self, max_degree: u32) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.size().saturating_add(b.size()) > max_degree {
                    continue;
                }
                out.add_term(union(a, b), &ca.mul(cb));
            }
        }
        out
    }

    /// `exp(g)` through degree `max_degree`; `g` must have no constant term.
    pub fn graded_exp(g: &Self, max_degree: u32) -> Result<Self, SymFunError> {
        if !g.constant_term().is_zero() {
            return Err(SymFunError::ConstantTerm { expected: "0" });
        }
        let parts: Vec<Self> = (0..=max_degree).map(|k| g.homogeneous(k)).collect();
        let mut f: Vec<Self> = vec![Self::one()];
        for n in 1..=max_degree {
            let mut acc = Self::zero();
            for k in 1..=n {
                let gk = &parts[k as usize];
                if gk.is_zero() {
                    continue;
                }
                acc = acc.add(&gk.mul(&f[(n - k) as usize]).scale(&int(k as i64)));
            }
            f.push(acc.scale(&rat(1, n as i64)));
        }
        Ok(f.iter().fold(Self::zero(), |a, b| a.add(b)))
    }

    /// `log(f)` through degree `max_degree`; `f` must have constant term 1.
    pub fn graded_log(f: &Self, max_degree: u32) -> Result<Self, SymFunError> {
        if f.constant_term() != S::one() {
            return Err(SymFunError::ConstantTerm { expected: "1" });
        }
        let parts: Vec<Self> = (0..=max_degree).map(|k| f.homogeneous(k)).collect();
        // n f_n = sum_{k=1}^n k g_k f_{n-k}
        let mut g: Vec<Self> = vec![Self::zero()];
        for n in 1..=max_degree {
            let mut acc = parts[n as usize].scale(&int(n as i64));
            for k in 1..n {
                if g[k as usize].is_zero() || parts[(n - k) as usize].is_zero() {
                    continue;
                }
                acc = acc.sub(&g[k as usize].mul(&parts[(n - k) as usize]).scale(&int(k as i64)));
            }
            g.push(acc.scale(&rat(1, n as i64)));
        }
        Ok(g.iter().fold(Self::zero(), |a, b| a.add(b)))
    }

    /// Substitutes `p_n -> image(n)` and sums, embedding coefficients with `embed`.
    pub fn evaluate<T: Scalar, E>(
        &self,
        embed: impl Fn(&S) -> T,
        mut image: impl FnMut(u32) -> Result<T, E>,
    ) -> Result<T, E> {
        let mut cache: BTreeMap<u32, T> = BTreeMap::new();
        let mut acc = T::zero();
        for (mu, c) in &self.terms {
            let mut term = embed(c);
            for &n in mu.parts() {
                let x = match cache.get(&n) {
                    Some(x) => x.clone(),
                    None => {
                        let x = image(n)?;
                        cache.insert(n, x.clone());
                        x
                    }
                };
                term = term.mul(&x);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(mu, c)| json!({ "mu": mu.to_json(), "coeff": c.to_json() })).collect())
    }
}

impl SymFun<Rational> {
    /// Specializes on an alphabet whose `p_n` images are rational functions.
    pub fn specialize(&self, a: &Alphabet) -> Result<crate::scalars::RatFunV, SymFunError> {
        self.evaluate(crate::scalars::RatFunV::from_rational, |n| a.image(n))
    }

    /// Specializes with `p_n -> images[n - 1]` in any field.
    pub fn specialize_in<F: Field>(&self, images: &[F]) -> Result<F, SymFunError> {
        self.evaluate(F::from_rational, |n| {
            images.get(n as usize - 1).cloned().ok_or(SymFunError::MissingImage { alphabet: "explicit".into(), n })
        })
    }
}

pub(crate) fn union(a: &Partition, b: &Partition) -> Partition {
    if b.is_empty() {
        return a.clone();
    }
    if a.is_empty() {
        return b.clone();
    }
    let mut parts = a.parts().to_vec();
    parts.extend_from_slice(b.parts());
    Partition::new(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from(parts)
    }

    #[test]
    fn product_is_union_of_parts() {
        let a: SymFun<Rational> = SymFun::p(1);
        assert_eq!(a.mul(&a), SymFun::monomial(p(&[1, 1]), int(1)));
        let f = SymFun::from_terms([(p(&[2]), rat(1, 2)), (p(&[]), int(3))]);
        assert_eq!(f.mul(&SymFun::one()), f);
    }

    #[test]
    fn log_of_one_plus_p1() {
        let f: SymFun<Rational> = SymFun::one().add(&SymFun::p(1));
        let g = SymFun::graded_log(&f, 3).unwrap();
        let expected = SymFun::from_terms([(p(&[1]), int(1)), (p(&[1, 1]), rat(-1, 2)), (p(&[1, 1, 1]), rat(1, 3))]);
        assert_eq!(g, expected);
    }

    #[test]
    fn exp_of_zero_is_one() {
        let z: SymFun<Rational> = SymFun::zero();
        assert_eq!(SymFun::graded_exp(&z, 5).unwrap(), SymFun::one());
    }

    #[test]
    fn constant_term_preconditions() {
        let one: SymFun<Rational> = SymFun::one();
        assert!(SymFun::graded_exp(&one, 3).is_err());
        assert!(SymFun::graded_log(&SymFun::<Rational>::p(1), 3).is_err());
    }

    #[test]
    fn json_is_canonical_order() {
        let f: SymFun<Rational> = SymFun::from_terms([(p(&[1, 1]), int(1)), (p(&[2]), int(2)), (p(&[]), int(1))]);
        assert_eq!(
            f.to_json().to_string(),
            r#"[{"coeff":"1","mu":[]},{"coeff":"2","mu":[2]},{"coeff":"1","mu":[1,1]}]"#
        );
    }
}
