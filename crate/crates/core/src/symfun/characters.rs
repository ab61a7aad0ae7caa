use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::{SymFun, SymFunError};
use crate::partitions::{enumerate, Partition};
use crate::scalars::{int, Rational};

type CharCache = Mutex<HashMap<(Partition, Partition), i64>>;

fn char_cache() -> &'static CharCache {
    static CACHE: OnceLock<CharCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `chi_nu(mu)` by the Murnaghan-Nakayama rule, stripping the largest part of
/// `mu` first.
pub fn mn_character(nu: &Partition, mu: &Partition) -> Result<i64, SymFunError> {
    if nu.size() != mu.size() {
        return Err(SymFunError::SizeMismatch(nu.clone(), mu.clone()));
    }
    Ok(mn(nu, mu.parts()))
}

fn mn(nu: &Partition, mu: &[u32]) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (nu.clone(), Partition::new(mu.to_vec()));
    if let Some(&x) = char_cache().lock().unwrap().get(&key) {
        return x;
    }
    let k = mu[0];
    let rest = &mu[1..];
    let mut total = 0i64;
    for (smaller, height) in nu.border_strips(k) {
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&smaller, rest);
    }
    char_cache().lock().unwrap().insert(key, total);
    total
}

type SymCache = Mutex<HashMap<Partition, SymFun<Rational>>>;

fn schur_cache() -> &'static SymCache {
    static CACHE: OnceLock<SymCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `s_nu = sum_mu chi_nu(mu) / z_mu p_mu`
pub fn schur_in_p(nu: &Partition) -> SymFun<Rational> {
    if let Some(f) = schur_cache().lock().unwrap().get(nu) {
        return f.clone();
    }
    let mut out = SymFun::zero();
    for mu in enumerate(nu.size()) {
        let chi = mn(nu, mu.parts());
        if chi != 0 {
            let c = int(chi) / Rational::from_integer(mu.z().into());
            out.add_term(mu, &c);
        }
    }
    schur_cache().lock().unwrap().insert(nu.clone(), out.clone());
    out
}

type DegreeCache = Mutex<HashMap<u32, SymFun<Rational>>>;

fn h_cache() -> &'static DegreeCache {
    static CACHE: OnceLock<DegreeCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Complete homogeneous `h_k = sum_{|lambda| = k} p_lambda / z_lambda`.
pub fn h_in_p(k: u32) -> SymFun<Rational> {
    if let Some(f) = h_cache().lock().unwrap().get(&k) {
        return f.clone();
    }
    let mut out = SymFun::zero();
    for lam in enumerate(k) {
        let c = Rational::from_integer(lam.z().into()).recip();
        out.add_term(lam, &c);
    }
    h_cache().lock().unwrap().insert(k, out.clone());
    out
}

/// Elementary `e_k = sum_{|lambda| = k} (-1)^{k - l(lambda)} p_lambda / z_lambda`.
pub fn e_in_p(k: u32) -> SymFun<Rational> {
    let mut out = SymFun::zero();
    for lam in enumerate(k) {
        let mut c = Rational::from_integer(lam.z().into()).recip();
        if (k as usize - lam.len()) % 2 == 1 {
            c = -c;
        }
        out.add_term(lam, &c);
    }
    out
}

/// `s_{mu/rho}` via the Jacobi-Trudi determinant `det(h_{mu_i - rho_j - i + j})`,
/// expanded along rows with memoization over the set of used columns.
pub fn skew_schur_in_p(mu: &Partition, rho: &Partition) -> SymFun<Rational> {
    if !mu.contains(rho) {
        return SymFun::zero();
    }
    let n = mu.len();
    if n == 0 {
        return SymFun::one();
    }
    let entry = |i: usize, j: usize| -> i64 { mu.part(i + 1) as i64 - rho.part(j + 1) as i64 - i as i64 + j as i64 };
    let h = |k: i64| -> Option<SymFun<Rational>> {
        match k {
            k if k < 0 => None,
            0 => Some(SymFun::one()),
            k => Some(h_in_p(k as u32)),
        }
    };
    let mut memo: HashMap<u64, SymFun<Rational>> = HashMap::new();
    det_rec(0, 0, n, &entry, &h, &mut memo)
}

fn det_rec(
    row: usize,
    used: u64,
    n: usize,
    entry: &dyn Fn(usize, usize) -> i64,
    h: &dyn Fn(i64) -> Option<SymFun<Rational>>,
    memo: &mut HashMap<u64, SymFun<Rational>>,
) -> SymFun<Rational> {
    if row == n {
        return SymFun::one();
    }
    if let Some(f) = memo.get(&used) {
        return f.clone();
    }
    let mut acc = SymFun::zero();
    let mut free_before = 0;
    for col in 0..n {
        if used & (1 << col) != 0 {
            continue;
        }
        if let Some(hk) = h(entry(row, col)) {
            let minor = det_rec(row + 1, used | (1 << col), n, entry, h, memo);
            if !minor.is_zero() {
                let term = hk.mul(&minor);
                acc = if free_before % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
        }
        free_before += 1;
    }
    memo.insert(used, acc.clone());
    acc
}
