//! The rational functions `W_mu(q)` and `W_{mu,nu}(q)`.
//!
//! Each quantity has several independent formulas; the functions here compute
//! one route each, and [`w_two_checked`] / [`w_one_checked`] compare routes.

use serde_json::{json, Value};
use thiserror::Error;

use crate::fock::{Engine, FockError, FockState, FockVector, Op, Sign};
use crate::partitions::Partition;
use crate::scalars::{bracket, int, v_adic_series, Field, LaurentSeries, LaurentV, RatFunV, Rational, Scalar, VAdicQ};
use crate::symfun::{schur_in_p, skew_schur_in_p, Alphabet, SymFunError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Product,
    PrincipalSpec,
    KeySum,
    EAlphabet,
    FockVev,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Product => "product",
            Route::PrincipalSpec => "principal-spec",
            Route::KeySum => "key-sum",
            Route::EAlphabet => "E-alphabet",
            Route::FockVev => "fock-vev",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WValue {
    pub value: RatFunV,
    pub route: Route,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantumDimError {
    #[error("routes disagree for mu = {mu}, nu = {nu}: {a_route} gives {a}, {b_route} gives {b}")]
    RouteMismatch {
        mu: Box<Partition>,
        nu: Box<Partition>,
        a_route: &'static str,
        a: String,
        b_route: &'static str,
        b: String,
    },
    #[error(transparent)]
    SymFun(#[from] SymFunError),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error("v-adic precision {got} falls short of the requested v^{wanted}")]
    Precision { wanted: i64, got: i64 },
}

fn inv_bracket(m: i64) -> RatFunV {
    RatFunV::from_laurent(bracket(m)).try_inv().expect("nonzero bracket")
}

fn sign_pow(k: u32) -> Rational {
    if k.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// `W_mu = q^{kappa/4} prod_{i<j} [mu_i - mu_j + j - i]/[j - i] prod_i prod_{k=1}^{mu_i} 1/[k - i + l]`.
pub fn w_one_product(mu: &Partition) -> RatFunV {
    let l = mu.len() as i64;
    let mut out = RatFunV::v_pow(mu.kappa() / 2);
    for i in 1..=l {
        for j in i + 1..=l {
            let num = mu.part(i as usize) as i64 - mu.part(j as usize) as i64 + j - i;
            out = out.mul(&RatFunV::from_laurent(bracket(num))).mul(&inv_bracket(j - i));
        }
    }
    for i in 1..=l {
        for k in 1..=mu.part(i as usize) as i64 {
            out = out.mul(&inv_bracket(k - i + l));
        }
    }
    out
}

/// Variant 1: `q^{-|mu|/2} s_mu(1, q^{-1}, ...)`.
/// Variant 2: `(-1)^{|mu|} q^{kappa/2 + |mu|/2} s_mu(1, q, ...)`.
pub fn w_one_spec(mu: &Partition, variant: u8) -> Result<RatFunV, SymFunError> {
    let s = schur_in_p(mu);
    let size = mu.size() as i64;
    match variant {
        1 => Ok(RatFunV::v_pow(-size).mul(&s.specialize(&Alphabet::principal_inverse())?)),
        _ => {
            let pre = RatFunV::v_pow(mu.kappa() + size).scale(&sign_pow(mu.size()));
            Ok(pre.mul(&s.specialize(&Alphabet::principal())?))
        }
    }
}

/// Product formula checked against both principal specializations.
pub fn w_one_checked(mu: &Partition) -> Result<WValue, QuantumDimError> {
    let a = w_one_product(mu);
    for variant in [1, 2] {
        let b = w_one_spec(mu, variant)?;
        if a != b {
            return Err(mismatch(mu, &Partition::empty(), Route::Product, &a, Route::PrincipalSpec, &b));
        }
    }
    Ok(WValue { value: a, route: Route::Product })
}

fn mismatch(mu: &Partition, nu: &Partition, ra: Route, a: &RatFunV, rb: Route, b: &RatFunV) -> QuantumDimError {
    QuantumDimError::RouteMismatch {
        mu: Box::new(mu.clone()),
        nu: Box::new(nu.clone()),
        a_route: ra.name(),
        a: a.to_string(),
        b_route: rb.name(),
        b: b.to_string(),
    }
}

/// Truncated power series in `t` with coefficients in `Q(v)`.
fn series_mul(a: &[RatFunV], b: &[RatFunV], n: usize) -> Vec<RatFunV> {
    let mut out = vec![RatFunV::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

/// `1 / (1 + c t)` through `t^n`.
fn geometric_inv(c: &RatFunV, n: usize) -> Vec<RatFunV> {
    let mut out = Vec::with_capacity(n + 1);
    let mut term = RatFunV::one();
    let neg = c.neg();
    for _ in 0..=n {
        out.push(term.clone());
        term = term.mul(&neg);
    }
    out
}

/// The `t^k` coefficients `e_k` of
/// `E_mu(q, t) = prod_j (1 + q^{mu_j - j} t)/(1 + q^{-j} t) (1 + sum_n t^n / prod_{i=1}^n (q^i - 1))`,
/// `k = 0..=n`.
pub fn e_mu_coefficients(mu: &Partition, n: usize) -> Vec<RatFunV> {
    let mut tail = vec![RatFunV::one()];
    let mut den = RatFunV::one();
    for k in 1..=n as i64 {
        // q^k - 1 = v^{2k} - 1
        let qk = RatFunV::from_laurent(LaurentV::from_terms([(2 * k, int(1)), (0, int(-1))]));
        den = den.mul(&qk);
        tail.push(den.try_inv().expect("nonzero"));
    }
    let mut out = tail;
    for j in 1..=mu.len() as i64 {
        let up = RatFunV::v_pow(2 * (mu.part(j as usize) as i64 - j));
        let down = RatFunV::v_pow(-2 * j);
        let mut num = vec![RatFunV::one(); 2];
        num[1] = up;
        out = series_mul(&out, &num, n);
        out = series_mul(&out, &geometric_inv(&down, n), n);
    }
    out.truncate(n + 1);
    out
}

/// Newton's identities: power sums from elementary symmetric functions,
/// `p_n = sum_{i=1}^{n-1} (-1)^{i-1} e_i p_{n-i} + (-1)^{n-1} n e_n`.
pub fn newton_e_to_p(e: &[RatFunV]) -> Vec<RatFunV> {
    let n = e.len().saturating_sub(1);
    let mut p: Vec<RatFunV> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = e[k].scale(&int(k as i64)).scale(&sign_pow(k as u32 - 1));
        for i in 1..k {
            let term = e[i].mul(&p[k - i - 1]).scale(&sign_pow(i as u32 - 1));
            acc = acc.add(&term);
        }
        p.push(acc);
    }
    p
}

/// The alphabet `E_mu` with `p_1, ..., p_n` from the `t`-expansion of `E_mu(q, t)`.
pub fn e_mu_alphabet(mu: &Partition, n: usize) -> Alphabet {
    let e = e_mu_coefficients(mu, n);
    Alphabet::explicit(&format!("E_{mu}"), newton_e_to_p(&e))
}

/// `W_{mu,nu} = (-1)^{|mu|+|nu|} q^{(kappa_mu + kappa_nu + |mu| + |nu|)/2}
///   sum_{rho} q^{-|rho|} s_{mu/rho}(1, q, ...) s_{nu/rho}(1, q, ...)`.
pub fn w_two_key(mu: &Partition, nu: &Partition) -> Result<RatFunV, SymFunError> {
    let a = Alphabet::principal();
    let mut sum = RatFunV::zero();
    for rho in mu.intersection(nu).subpartitions() {
        let x = skew_schur_in_p(mu, &rho).specialize(&a)?;
        let y = skew_schur_in_p(nu, &rho).specialize(&a)?;
        sum = sum.add(&x.mul(&y).mul(&RatFunV::v_pow(-2 * rho.size() as i64)));
    }
    let size = mu.size() + nu.size();
    let pre = RatFunV::v_pow(mu.kappa() + nu.kappa() + size as i64).scale(&sign_pow(size));
    Ok(pre.mul(&sum))
}

/// `W_{mu,nu} = q^{|nu|/2} W_mu s_nu(E_mu)`.
pub fn w_two_via_e(mu: &Partition, nu: &Partition) -> Result<RatFunV, SymFunError> {
    let alphabet = e_mu_alphabet(mu, nu.size() as usize);
    let s = schur_in_p(nu).specialize(&alphabet)?;
    Ok(RatFunV::v_pow(nu.size() as i64).mul(&w_one_product(mu)).mul(&s))
}

/// Key-sum value checked against the `E_mu` route.
pub fn w_two_checked(mu: &Partition, nu: &Partition) -> Result<WValue, QuantumDimError> {
    let a = w_two_key(mu, nu)?;
    let b = w_two_via_e(mu, nu)?;
    if a != b {
        return Err(mismatch(mu, nu, Route::KeySum, &a, Route::EAlphabet, &b));
    }
    Ok(WValue { value: a, route: Route::KeySum })
}

/// `q / (1 - q)^2 + 1`, the value of `W_{(1),(1)}`.
pub fn w_one_one_closed_form() -> RatFunV {
    let g = RatFunV::one_minus_v_pow_inv(2);
    RatFunV::v_pow(2).mul(&g).mul(&g).add(&RatFunV::one())
}

/// Working precision for the `v`-adic evaluation of a word whose outer
/// `q^K` factors can shift valuations down by `kappa` terms.
fn working_order(mu: &Partition, nu: &Partition, order: i64) -> i64 {
    let size = (mu.size() + nu.size()) as i64;
    order + size * size + 2 * size + 4
}

fn check_precision(x: LaurentSeries, order: i64) -> Result<LaurentSeries, QuantumDimError> {
    if x.high() < order {
        return Err(QuantumDimError::Precision { wanted: order, got: x.high() });
    }
    Ok(x.truncate(order))
}

/// `W_{nu+, nu-}` through `v^order`, evaluated in the Fock space as
/// `<nu+| q^K Y_-(A) Y_+(A) q^K |nu->` with `A = (-q^{1/2}, -q^{3/2}, ...)`.
///
/// Every step is certified: `Y_+` acts on a basis vector and terminates, and
/// the only truncated step, `Y_-`, raises energy, so a cutoff of `|nu+|` is
/// exact.
pub fn w_two_vev(plus: &Partition, minus: &Partition, order: i64) -> Result<LaurentSeries, QuantumDimError> {
    let ctx = VAdicQ { order: working_order(plus, minus, order) };
    let a = Alphabet::negative_half();
    let cutoff = plus.size().max(minus.size());
    let engine = Engine::new(cutoff, 0, &ctx);
    let word = vec![
        Op::QK(int(1)),
        Op::y(Sign::Minus, &a, &ctx, cutoff)?,
        Op::y(Sign::Plus, &a, &ctx, cutoff)?,
        Op::QK(int(1)),
    ];
    let vev = engine.matrix_element(&FockState::new(0, plus.clone()), &word, &FockState::new(0, minus.clone()))?;
    check_precision(vev.value, order)
}

/// The word as printed with `Y_+` to the left of `Y_-`:
/// `<nu+| q^K Y_+(A) Y_-(A) q^K |nu->`, through `v^order`.
///
/// `Y_-` raises energy without bound, so the window is cut at `E` and the
/// dropped states `|lambda|` of energy above `E` are bounded `v`-adically:
/// their contribution has valuation at least
/// `2(E + 1) - |nu+| - |nu-| + kappa(nu+) + kappa(nu-)`, and `E` is the
/// least energy pushing that past `order`.
pub fn w_two_vev_printed(plus: &Partition, minus: &Partition, order: i64) -> Result<LaurentSeries, QuantumDimError> {
    let base = -(plus.size() as i64) - (minus.size() as i64) + plus.kappa() + minus.kappa();
    let mut e = plus.size().max(minus.size()) as i64;
    while 2 * (e + 1) + base <= order {
        e += 1;
    }
    let cutoff = e as u32;
    let ctx = VAdicQ { order: working_order(plus, minus, order) + 2 * e };
    let a = Alphabet::negative_half();
    let engine = Engine::new(cutoff, 0, &ctx);
    let word = vec![
        Op::QK(int(1)),
        Op::y(Sign::Plus, &a, &ctx, cutoff)?,
        Op::y(Sign::Minus, &a, &ctx, cutoff)?,
        Op::QK(int(1)),
    ];
    let v = engine.apply_word(&word, &FockVector::basis(FockState::new(0, minus.clone()), cutoff))?;
    check_precision(v.coeff(&FockState::new(0, plus.clone())), order)
}

/// `prod_{k >= 1} (1 - q^k)^{-k}` through `v^order`.
pub fn macmahon_v_adic(order: i64) -> LaurentSeries {
    let mut f = RatFunV::one();
    for k in 1..=order.max(0) / 2 {
        for _ in 0..k {
            f = f.mul(&RatFunV::one_minus_v_pow_inv(2 * k));
        }
    }
    v_adic_series(&f, order)
}

pub fn w_table_json(rows: &[(Partition, Partition, RatFunV)]) -> Value {
    Value::Array(
        rows.iter().map(|(mu, nu, w)| json!({ "mu": mu.to_json(), "nu": nu.to_json(), "W": w.to_json() })).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from(parts)
    }

    #[test]
    fn w_one_examples() {
        assert_eq!(w_one_product(&Partition::empty()), RatFunV::one());
        assert_eq!(w_one_product(&p(&[1])), inv_bracket(1));
        // q^2 / ((q - 1)(q^2 - 1)) = v / ([1][2])
        let expected = RatFunV::v_pow(1).mul(&inv_bracket(1)).mul(&inv_bracket(2));
        assert_eq!(w_one_product(&p(&[2])), expected);
        let q2 = RatFunV::v_pow(4).mul(&RatFunV::one_minus_v_pow_inv(2)).mul(&RatFunV::one_minus_v_pow_inv(4));
        assert_eq!(w_one_product(&p(&[2])), q2);
    }

    #[test]
    fn w_one_spec_examples() {
        assert_eq!(w_one_spec(&p(&[1]), 1).unwrap(), inv_bracket(1));
        assert_eq!(w_one_spec(&p(&[2]), 2).unwrap(), w_one_product(&p(&[2])));
        assert_eq!(w_one_spec(&Partition::empty(), 1).unwrap(), RatFunV::one());
        assert_eq!(w_one_spec(&Partition::empty(), 2).unwrap(), RatFunV::one());
    }

    #[test]
    fn e_coefficients_examples() {
        let e = e_mu_coefficients(&Partition::empty(), 2);
        assert_eq!(e[0], RatFunV::one());
        // 1 / (q - 1)
        let inv_q_minus_1 = RatFunV::one_minus_v_pow_inv(2).neg();
        assert_eq!(e[1], inv_q_minus_1);
        let e = e_mu_coefficients(&p(&[1]), 1);
        let expected = RatFunV::one().sub(&RatFunV::v_pow(-2)).add(&inv_q_minus_1);
        assert_eq!(e[1], expected);
    }

    #[test]
    fn w_two_examples() {
        assert_eq!(w_two_key(&Partition::empty(), &Partition::empty()).unwrap(), RatFunV::one());
        assert_eq!(w_two_key(&p(&[1]), &Partition::empty()).unwrap(), inv_bracket(1));
        assert_eq!(w_two_key(&p(&[1]), &p(&[1])).unwrap(), w_one_one_closed_form());
        assert_eq!(w_two_via_e(&p(&[1]), &p(&[1])).unwrap(), w_one_one_closed_form());
        assert_eq!(w_two_via_e(&Partition::empty(), &p(&[1])).unwrap(), inv_bracket(1));
        assert_eq!(w_two_via_e(&p(&[2]), &Partition::empty()).unwrap(), w_one_product(&p(&[2])));
    }

    #[test]
    fn mismatch_names_both_values() {
        let e = mismatch(&p(&[1]), &p(&[]), Route::KeySum, &RatFunV::one(), Route::EAlphabet, &RatFunV::zero());
        let msg = e.to_string();
        assert!(msg.contains("key-sum") && msg.contains("E-alphabet"));
    }
}
