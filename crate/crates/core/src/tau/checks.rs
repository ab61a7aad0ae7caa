use serde_json::{json, Value};

use super::{TauError, TauSeries, TodaSequence};
use crate::partitions::{enumerate, Partition};
use crate::scalars::{int, Field, Scalar};
use crate::symfun::{BiKey, BiSymFun};

/// Outcome of a bilinear-equation check: the residual coefficients of degree
/// at most `checked_through`, of which all must vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub equation: String,
    pub checked_through: i64,
    pub coefficients_checked: usize,
    pub nonzero: Vec<(BiKey, String)>,
}

impl CheckReport {
    pub fn pass(&self) -> bool {
        self.nonzero.is_empty() && self.checked_through >= 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "equation": self.equation,
            "checked_through": self.checked_through,
            "coefficients_checked": self.coefficients_checked,
            "pass": self.pass(),
            "nonzero": self.nonzero.iter().map(|(k, c)| json!({
                "mu_plus": k.plus.to_json(),
                "mu_minus": k.minus.to_json(),
                "coeff": c,
            })).collect::<Vec<_>>(),
        })
    }
}

/// `p_mu -> (prod mu_i) t_mu`, rewriting in the time variables `t_n = p_n / n`.
fn to_t_basis<T: Scalar>(f: &BiSymFun<T>) -> BiSymFun<T> {
    let weight = |mu: &Partition| int(mu.parts().iter().map(|&p| p as i64).product());
    f.map_with(|k, c| c.scale(&(weight(&k.plus) * weight(&k.minus))))
}

fn remove_part(mu: &Partition, n: u32) -> Option<(Partition, u32)> {
    let count = mu.parts().iter().filter(|&&p| p == n).count() as u32;
    if count == 0 {
        return None;
    }
    let mut parts = mu.parts().to_vec();
    let i = parts.iter().position(|&p| p == n).unwrap();
    parts.remove(i);
    Some((Partition::new(parts), count))
}

/// `d/dt_n` in the `plus` or `minus` family, on a series in the `t` basis.
fn deriv<T: Scalar>(f: &BiSymFun<T>, plus: bool, n: u32) -> BiSymFun<T> {
    BiSymFun::from_terms(f.terms().filter_map(|(k, c)| {
        let (family, other) = if plus { (&k.plus, &k.minus) } else { (&k.minus, &k.plus) };
        let (rest, count) = remove_part(family, n)?;
        let key = if plus { BiKey::new(rest, other.clone()) } else { BiKey::new(other.clone(), rest) };
        Some((key, c.scale(&int(count as i64))))
    }))
}

fn derivs<T: Scalar>(f: &BiSymFun<T>, plus: bool, ns: &[u32]) -> BiSymFun<T> {
    ns.iter().fold(f.clone(), |g, &n| deriv(&g, plus, n))
}

fn show<T: Scalar>(c: &T) -> String {
    match c.to_json() {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

/// Number of monomials of degree at most `through` in one or two families.
fn monomial_count(families: u8, through: i64) -> usize {
    if through < 0 {
        return 0;
    }
    let p: Vec<usize> = (0..=through as u32).map(|k| enumerate(k).len()).collect();
    if families == 1 {
        return p.iter().sum();
    }
    (0..p.len()).map(|a| (0..p.len() - a).map(|b| p[a] * p[b]).sum::<usize>()).sum()
}

fn residuals<T: Scalar>(equation: &str, families: u8, lhs: &BiSymFun<T>, through: i64) -> CheckReport {
    let coefficients_checked = monomial_count(families, through);
    let nonzero = lhs
        .terms()
        .filter(|(k, c)| k.degree() as i64 <= through && !c.is_zero())
        .map(|(k, c)| (k.clone(), show(c)))
        .collect();
    CheckReport { equation: equation.to_string(), checked_through: through, coefficients_checked, nonzero }
}

/// `(D_1^4 + 3 D_2^2 - 4 D_1 D_3) tau . tau = 0` on a one-family series,
/// through degree `D - 4`.
pub fn kp_hirota_pde_check<T: Scalar>(tau: &TauSeries<T>) -> Result<CheckReport, TauError> {
    if tau.degree < 4 {
        return Err(TauError::Degree { degree: tau.degree, needed: 4 });
    }
    let d = tau.degree;
    let f = to_t_basis(&tau.terms);
    let m = |a: &BiSymFun<T>, b: &BiSymFun<T>| a.mul_truncated(b, d - 4);
    let d1 = |ns: &[u32]| derivs(&f, true, ns);
    let quartic = m(&f, &d1(&[1, 1, 1, 1]))
        .sub(&m(&d1(&[1]), &d1(&[1, 1, 1])).scale(&int(4)))
        .add(&m(&d1(&[1, 1]), &d1(&[1, 1])).scale(&int(3)));
    let d22 = m(&f, &d1(&[2, 2])).sub(&m(&d1(&[2]), &d1(&[2])));
    let d13 = m(&f, &d1(&[1, 3])).sub(&m(&d1(&[1]), &d1(&[3])));
    let lhs = quartic.scale(&int(2)).add(&d22.scale(&int(6))).sub(&d13.scale(&int(8)));
    Ok(residuals("KP: (D1^4 + 3 D2^2 - 4 D1 D3) tau.tau", 1, &lhs, d as i64 - 4))
}

/// `tau_n d+_1 d-_1 tau_n - d+_1 tau_n d-_1 tau_n - c tau_{n+1} tau_{n-1}`
/// through degree `D - 2`.
fn toda_lhs<T: Scalar>(seq: &TodaSequence<T>, n: i64, c: &T) -> Result<BiSymFun<T>, TauError> {
    let get = |k: i64| seq.taus.get(&k).map(|t| to_t_basis(&t.terms)).ok_or(TauError::MissingCharge(k));
    let (tau, up, down) = (get(n)?, get(n + 1)?, get(n - 1)?);
    let top = seq.degree - 2;
    let m = |a: &BiSymFun<T>, b: &BiSymFun<T>| a.mul_truncated(b, top);
    let dp = deriv(&tau, true, 1);
    let dm = deriv(&tau, false, 1);
    let dpm = deriv(&dp, false, 1);
    Ok(m(&tau, &dpm).sub(&m(&dp, &dm)).sub(&m(&up, &down).map(|x| x.mul(c))))
}

/// The constant `c` in the Toda equation, read off from a calibration
/// sequence at charge `n` as the ratio of constant terms.
pub fn toda_constant<T: Field>(calibration: &TodaSequence<T>, n: i64) -> Result<T, TauError> {
    if calibration.degree < 2 {
        return Err(TauError::Degree { degree: calibration.degree, needed: 2 });
    }
    let zero = T::zero();
    let lhs = toda_lhs(calibration, n, &zero)?;
    let rhs = toda_lhs(calibration, n, &T::one())?.sub(&lhs).map(|x| x.neg());
    let e = Partition::empty();
    Ok(lhs.coeff(&e, &e).try_div(&rhs.coeff(&e, &e))?)
}

/// The first 2-Toda equation at every charge `n` with `n - 1` and `n + 1` in
/// the sequence.
pub fn toda_equation_check<T: Scalar>(seq: &TodaSequence<T>, c: &T) -> Result<CheckReport, TauError> {
    if seq.degree < 2 {
        return Err(TauError::Degree { degree: seq.degree, needed: 2 });
    }
    let (&lo, _) = seq.taus.first_key_value().ok_or(TauError::MissingCharge(0))?;
    let (&hi, _) = seq.taus.last_key_value().ok_or(TauError::MissingCharge(0))?;
    if hi - lo < 2 {
        return Err(TauError::MissingCharge(lo + 2));
    }
    let mut report = CheckReport {
        equation: "2-Toda: tau d+d- tau - d+tau d-tau = c tau_{n+1} tau_{n-1}".to_string(),
        checked_through: seq.degree as i64 - 2,
        coefficients_checked: 0,
        nonzero: Vec::new(),
    };
    for n in lo + 1..hi {
        let r = residuals("", 2, &toda_lhs(seq, n, c)?, seq.degree as i64 - 2);
        report.coefficients_checked += r.coefficients_checked;
        report.nonzero.extend(r.nonzero.into_iter().map(|(k, v)| (k, format!("n = {n}: {v}"))));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;
    use crate::scalars::{rat, Rational};
    use crate::symfun::SymFun;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomial_count(1, 2), 4);
        // 1 + 2*1 + (2 + 1 + 2) = 8
        assert_eq!(monomial_count(2, 2), 8);
        assert_eq!(monomial_count(2, -1), 0);
    }

    #[test]
    fn derivative_in_t() {
        // p_1^2 p_2 = 2 t_1^2 t_2, d/dt_1 = 4 t_1 t_2 = 2 p_1 p_2 in the t basis
        let f: BiSymFun<Rational> = BiSymFun::monomial(p(&[2, 1, 1]), p(&[]), int(1));
        let g = deriv(&to_t_basis(&f), true, 1);
        assert_eq!(g.coeff(&p(&[2, 1]), &p(&[])), int(4));
    }

    #[test]
    fn kp_rejects_one_plus_t1_squared() {
        // 1 + t_1^2 = 1 + p_1^2: D1^4 gives 2 * 3 * (2)^2 = 24 at degree 0
        let f = SymFun::from_terms([(p(&[]), int(1)), (p(&[1, 1]), int(1))]);
        let report = kp_hirota_pde_check(&TauSeries::one_family(4, &f)).unwrap();
        assert!(!report.pass());
        assert_eq!(report.nonzero.len(), 1);
        assert_eq!(report.nonzero[0].1, "24");
    }

    #[test]
    fn kp_accepts_exponential_of_linear() {
        // exp(t_1 + 8 t_2 - 9 t_3) is a tau function
        let g = SymFun::from_terms([(p(&[1]), int(1)), (p(&[2]), int(4)), (p(&[3]), int(-3))]);
        let f = SymFun::graded_exp(&g, 6).unwrap();
        assert!(kp_hirota_pde_check(&TauSeries::one_family(6, &f)).unwrap().pass());
        // 1 + t_1 = 1 + p_1 is a Schur function
        let f = SymFun::from_terms([(p(&[]), rat(1, 1)), (p(&[1]), int(1))]);
        assert!(kp_hirota_pde_check(&TauSeries::one_family(5, &f)).unwrap().pass());
    }
}
