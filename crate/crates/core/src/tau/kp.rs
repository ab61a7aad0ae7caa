use super::{compare_routes, TauError, TauSeries};
use crate::fock::{formal_gamma, Engine, Lifted, Op, Sign};
use crate::partitions::{enumerate_up_to, Partition};
use crate::scalars::{
    expand_u, expand_u_root, int, rat, ExactQ, QContext, RatFunV, Rational, RootRatFun, Scalar, ScalarError, USeriesL,
};
use crate::symfun::{schur_in_p, Alphabet, BiKey, SymFun};

/// Expansion in `u` with `q = e^u`.
pub trait ExpandU {
    fn expand_u(&self, order: i64) -> Result<USeriesL, ScalarError>;
}

impl ExpandU for RatFunV {
    fn expand_u(&self, order: i64) -> Result<USeriesL, ScalarError> {
        expand_u(self, order)
    }
}

impl ExpandU for RootRatFun {
    fn expand_u(&self, order: i64) -> Result<USeriesL, ScalarError> {
        expand_u_root(self, order)
    }
}

/// `sum_{|nu| <= D} q^{c kappa_nu / 2} s_nu(x) s_nu(A)` for an alphabet `A`.
fn schur_sum<T: Scalar>(
    c: &Rational,
    alphabet: &Alphabet,
    degree: u32,
    ctx: &dyn QContext<T>,
) -> Result<SymFun<T>, TauError> {
    let mut f = SymFun::zero();
    for nu in enumerate_up_to(degree) {
        let s = schur_in_p(&nu);
        let weight = ctx.q_pow(&(c * rat(nu.kappa(), 2)))?.mul(&ctx.embed(&s.specialize(alphabet)?)?);
        f = f.add(&s.map(|x| T::from_rational(x).mul(&weight)));
    }
    Ok(f)
}

/// `sum_nu q^{(r+1) kappa_nu / 2} s_nu(x) s_nu(-q^{1/2}, -q^{3/2}, ...)` by
/// direct summation over `|nu| <= D`.
pub fn kp_tau_direct<T: Scalar>(r: &Rational, degree: u32, ctx: &dyn QContext<T>) -> Result<TauSeries<T>, TauError> {
    let f = schur_sum(&(r + int(1)), &Alphabet::negative_half(), degree, ctx)?;
    Ok(TauSeries::one_family(degree, &f))
}

/// `<0| Y_+(x) q^{(r+1)K} Y_-(-q^{1/2}, -q^{3/2}, ...) |0>` in the Fock space.
pub fn kp_tau_vev<T: Scalar>(r: &Rational, degree: u32, ctx: &dyn QContext<T>) -> Result<TauSeries<T>, TauError> {
    let lifted = Lifted { inner: ctx };
    let engine = Engine::new(degree, degree, &lifted);
    let word = vec![
        formal_gamma(Sign::Plus, true, ctx, degree, &int(0))?,
        Op::QK(r + int(1)),
        Op::y(Sign::Minus, &Alphabet::negative_half(), &lifted, degree)?,
    ];
    let vev = engine.vev(&word, 0)?;
    Ok(TauSeries { families: 1, degree, terms: vev.value })
}

/// Both routes, required to agree exactly.
pub fn kp_tau_series<T: Scalar>(r: &Rational, degree: u32, ctx: &dyn QContext<T>) -> Result<TauSeries<T>, TauError> {
    let direct = kp_tau_direct(r, degree, ctx)?;
    let vev = kp_tau_vev(r, degree, ctx)?;
    compare_routes("kp tau", &direct.terms, &vev.terms)?;
    Ok(direct)
}

/// The `r = -1` series, `<0| Y_+(x) Y_-(-q^{1/2}, ...) |0>`.
pub fn conifold_tau<T: Scalar>(degree: u32, ctx: &dyn QContext<T>) -> Result<TauSeries<T>, TauError> {
    kp_tau_series(&int(-1), degree, ctx)
}

/// Coefficient of `p_mu` in `log tau`.
pub fn connected_coefficient<T: Scalar>(tau: &TauSeries<T>, mu: &Partition) -> Result<T, TauError> {
    if mu.size() > tau.degree {
        return Err(TauError::Degree { degree: tau.degree, needed: mu.size() });
    }
    let log = SymFun::graded_log(&tau.as_symfun(), tau.degree)?;
    Ok(log.coeff(mu))
}

/// Conjugation symmetry of the one-partition series: recomputing with
/// `r + 1 -> -(r + 1)` and the alphabet replaced by its `v -> 1/v` image gives
/// the `v -> 1/v` image of the series, and equals the original series with
/// `p_n(x) -> -p_n(x)`.
pub fn kappa_twist_check(r: &Rational, degree: u32) -> Result<(), TauError> {
    let ctx = ExactQ;
    let a = Alphabet::negative_half();
    let bar_images = a.images(degree.max(1))?.iter().map(RatFunV::bar).collect();
    let bar_alphabet = Alphabet::explicit("bar(-q^1/2,-q^3/2,...)", bar_images);
    let tau = kp_tau_direct(r, degree, &ctx)?;
    let twisted = schur_sum(&-(r + int(1)), &bar_alphabet, degree, &ctx)?;
    let twisted = TauSeries::one_family(degree, &twisted);
    let bar = tau.terms.map(RatFunV::bar);
    compare_routes("bar of the series", &bar, &twisted.terms)?;
    let omega = tau.terms.map_with(|k: &BiKey, c| if k.plus.len().is_multiple_of(2) { c.clone() } else { c.neg() });
    compare_routes("p -> -p twist", &omega, &twisted.terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{bracket, Field, RootQ};

    fn inv_bracket_1() -> RatFunV {
        RatFunV::from_laurent(bracket(1)).try_inv().unwrap()
    }

    #[test]
    fn first_coefficients() {
        let tau = kp_tau_series(&int(1), 3, &ExactQ).unwrap();
        assert_eq!(tau.constant_term(), RatFunV::one());
        let p1 = Partition::from([1]);
        assert_eq!(tau.coeff(&p1, &Partition::empty()), inv_bracket_1());
        let expected = RatFunV::v_pow(1).neg().mul(&RatFunV::one_minus_v_pow_inv(2));
        assert_eq!(tau.coeff(&p1, &Partition::empty()), expected);
        let zero = kp_tau_series(&int(-1), 0, &ExactQ).unwrap();
        assert_eq!(zero.terms, crate::symfun::BiSymFun::one());
    }

    #[test]
    fn second_connected_coefficient() {
        // (1/2)[q^{r+1} s_(2)(A) - q^{-(r+1)} s_(1,1)(A)] - (1/2) s_(1)(A)^2 p_1^2 has no p_2 part
        let r = int(2);
        let tau = kp_tau_series(&r, 2, &ExactQ).unwrap();
        let a = Alphabet::negative_half();
        let s2 = schur_in_p(&Partition::from([2])).specialize(&a).unwrap();
        let s11 = schur_in_p(&Partition::from([1, 1])).specialize(&a).unwrap();
        let expected = RatFunV::v_pow(6).mul(&s2).sub(&RatFunV::v_pow(-6).mul(&s11)).scale(&rat(1, 2));
        assert_eq!(connected_coefficient(&tau, &Partition::from([2])).unwrap(), expected);
    }

    #[test]
    fn rational_r_needs_a_root() {
        let r = rat(1, 3);
        assert!(kp_tau_series(&r, 2, &ExactQ).is_err());
        let tau = kp_tau_series(&r, 3, &RootQ).unwrap();
        let c = connected_coefficient(&tau, &Partition::from([1])).unwrap();
        assert_eq!(c, RootRatFun::from_ratfun(inv_bracket_1()));
    }

    #[test]
    fn twist() {
        for r in [-2, -1, 0, 1] {
            kappa_twist_check(&int(r), 4).unwrap();
        }
    }
}
