use std::collections::BTreeMap;

use super::{compare_routes, TauError, TauSeries};
use crate::fock::{formal_gamma, Engine, Lifted, Op, Sign};
use crate::partitions::enumerate_up_to;
use crate::quantumdim::w_two_key;
use crate::scalars::{int, rat, QContext, Rational, Scalar};
use crate::symfun::{schur_in_p, Alphabet, BiSymFun};

/// The two-partition series
/// `<n| Y_+(x+) q^{aK} Y_-(A) Y_+(A) q^{bK} Y_-(x-) |n>`, `A = (-q^{1/2}, ...)`.
/// The one-parameter Hodge series is `a = r + 1`, `b = 1/r + 1`; the toric
/// surface is `a = b = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPartition {
    pub a: Rational,
    pub b: Rational,
}

impl TwoPartition {
    pub fn hodge(r: &Rational) -> Result<Self, TauError> {
        if *r == int(0) {
            return Err(TauError::ZeroR);
        }
        Ok(TwoPartition { a: r + int(1), b: r.recip() + int(1) })
    }

    pub fn toric() -> Self {
        TwoPartition { a: int(1), b: int(1) }
    }
}

/// `n(4n^2 - 1)/24`
fn translation_constant(n: i64) -> Rational {
    rat(n * (4 * n * n - 1), 24)
}

/// `sum_{nu+, nu-} s_{nu+}(x+) q^{(a-1)kappa+/2 + (b-1)kappa-/2} W_{nu+,nu-} s_{nu-}(x-)`
/// over `|nu+| + |nu-| <= D`.
pub fn two_partition_direct<T: Scalar>(
    shape: &TwoPartition,
    degree: u32,
    ctx: &dyn QContext<T>,
) -> Result<TauSeries<T>, TauError> {
    let mut terms = BiSymFun::zero();
    for plus in enumerate_up_to(degree) {
        let sp = BiSymFun::from_plus(&schur_in_p(&plus).map(T::from_rational));
        for minus in enumerate_up_to(degree - plus.size()) {
            let e = (&shape.a - int(1)) * rat(plus.kappa(), 2) + (&shape.b - int(1)) * rat(minus.kappa(), 2);
            let w = ctx.q_pow(&e)?.mul(&ctx.embed(&w_two_key(&plus, &minus)?)?);
            let sm = BiSymFun::from_minus(&schur_in_p(&minus).map(T::from_rational));
            terms = terms.add(&sp.mul(&sm).map(|c| c.mul(&w)));
        }
    }
    Ok(TauSeries::two_families(degree, terms))
}

/// The charge-`n` vacuum expectation value, computed in the Fock space.
pub fn two_partition_vev<T: Scalar>(
    shape: &TwoPartition,
    n: i64,
    degree: u32,
    ctx: &dyn QContext<T>,
) -> Result<TauSeries<T>, TauError> {
    let lifted = Lifted { inner: ctx };
    let engine = Engine::new(degree, degree, &lifted);
    let a = Alphabet::negative_half();
    let word = vec![
        formal_gamma(Sign::Plus, true, ctx, degree, &int(0))?,
        Op::QK(shape.a.clone()),
        Op::y(Sign::Minus, &a, &lifted, degree)?,
        Op::y(Sign::Plus, &a, &lifted, degree)?,
        Op::QK(shape.b.clone()),
        formal_gamma(Sign::Minus, false, ctx, degree, &int(0))?,
    ];
    let vev = engine.vev(&word, n)?;
    Ok(TauSeries { families: 2, degree, terms: vev.value })
}

/// `tau_n = q^{(a+b) n(4n^2-1)/24} tau_0(q^{an} x+, q^{bn} x-)`, the charge-`n`
/// series obtained by moving `R^n` through the word.
pub fn toda_shift_formula<T: Scalar>(
    shape: &TwoPartition,
    n: i64,
    base: &TauSeries<T>,
    ctx: &dyn QContext<T>,
) -> Result<TauSeries<T>, TauError> {
    let prefactor = ctx.q_pow(&((&shape.a + &shape.b) * translation_constant(n)))?;
    let max = base.degree;
    let powers = |c: &Rational| -> Result<Vec<T>, TauError> {
        (0..=max).map(|k| Ok(ctx.q_pow(&(c * int(n * k as i64)))?)).collect()
    };
    let plus = powers(&shape.a)?;
    let minus = powers(&shape.b)?;
    Ok(base.rescale(|k| plus[k as usize].clone(), |k| minus[k as usize].clone()).scale_by(&prefactor))
}

/// Tau functions `tau_n` for a range of charges.
#[derive(Clone, Debug, PartialEq)]
pub struct TodaSequence<T: Scalar> {
    pub shape: TwoPartition,
    pub degree: u32,
    pub taus: BTreeMap<i64, TauSeries<T>>,
}

/// Computes every `tau_n` by the charge-`n` vev and checks it against the shift
/// formula applied to `tau_0`, which in turn is checked against the direct sum.
fn sequence<T: Scalar>(
    shape: TwoPartition,
    n_min: i64,
    n_max: i64,
    degree: u32,
    ctx: &dyn QContext<T>,
) -> Result<TodaSequence<T>, TauError> {
    let base = two_partition_direct(&shape, degree, ctx)?;
    let mut taus = BTreeMap::new();
    for n in n_min..=n_max {
        let vev = two_partition_vev(&shape, n, degree, ctx)?;
        let shifted = toda_shift_formula(&shape, n, &base, ctx)?;
        compare_routes(&format!("tau_{n}: vev vs shift formula"), &vev.terms, &shifted.terms)?;
        taus.insert(n, vev);
    }
    Ok(TodaSequence { shape, degree, taus })
}

pub fn toda_tau_sequence<T: Scalar>(
    r: &Rational,
    n_min: i64,
    n_max: i64,
    degree: u32,
    ctx: &dyn QContext<T>,
) -> Result<TodaSequence<T>, TauError> {
    sequence(TwoPartition::hodge(r)?, n_min, n_max, degree, ctx)
}

/// `sum s_{nu+}(x+) W_{nu+,nu-} s_{nu-}(x-)`, both routes.
pub fn toric_tau<T: Scalar>(degree: u32, ctx: &dyn QContext<T>) -> Result<TauSeries<T>, TauError> {
    let shape = TwoPartition::toric();
    let direct = two_partition_direct(&shape, degree, ctx)?;
    let vev = two_partition_vev(&shape, 0, degree, ctx)?;
    compare_routes("toric tau", &direct.terms, &vev.terms)?;
    Ok(direct)
}

pub fn toric_toda_sequence<T: Scalar>(
    n_min: i64,
    n_max: i64,
    degree: u32,
    ctx: &dyn QContext<T>,
) -> Result<TodaSequence<T>, TauError> {
    sequence(TwoPartition::toric(), n_min, n_max, degree, ctx)
}

/// `tau_n = <n| Gamma_+(t+) Gamma_-(t-) |n> = exp(sum_k k t+_k t-_k)`, used to
/// calibrate the constant in the Toda equation.
pub fn trivial_toda_sequence<T: Scalar>(
    n_min: i64,
    n_max: i64,
    degree: u32,
    ctx: &dyn QContext<T>,
) -> Result<TodaSequence<T>, TauError> {
    let lifted = Lifted { inner: ctx };
    let engine = Engine::new(degree, degree, &lifted);
    let word = vec![
        formal_gamma(Sign::Plus, true, ctx, degree, &int(0))?,
        formal_gamma(Sign::Minus, false, ctx, degree, &int(0))?,
    ];
    let mut taus = BTreeMap::new();
    for n in n_min..=n_max {
        let vev = engine.vev(&word, n)?;
        taus.insert(n, TauSeries { families: 2, degree, terms: vev.value });
    }
    Ok(TodaSequence { shape: TwoPartition { a: int(0), b: int(0) }, degree, taus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;
    use crate::quantumdim::w_one_one_closed_form;
    use crate::scalars::{ExactQ, RatFunV, RootQ, RootRatFun};

    #[test]
    fn base_coefficient_is_w11() {
        let tau = toric_tau(2, &ExactQ).unwrap();
        let one = Partition::from([1]);
        assert_eq!(tau.coeff(&one, &one), w_one_one_closed_form());
        assert_eq!(tau.constant_term(), RatFunV::one());
        let seq = toda_tau_sequence(&int(2), 0, 0, 2, &ExactQ).unwrap();
        assert_eq!(seq.taus[&0].coeff(&one, &one), w_one_one_closed_form());
    }

    #[test]
    fn prefactors() {
        let shape = TwoPartition::hodge(&int(2)).unwrap();
        // (r + 1/r + 2) / 8 at n = 1
        assert_eq!((&shape.a + &shape.b) * translation_constant(1), rat(9, 16));
        assert_eq!(int(2) * translation_constant(1), rat(1, 4));
        assert!(TwoPartition::hodge(&int(0)).is_err());
    }

    #[test]
    fn charge_one_needs_a_root_and_matches_shift() {
        let seq = toric_toda_sequence(-1, 1, 2, &RootQ).unwrap();
        let c = seq.taus[&1].constant_term();
        assert_eq!(c, RootQ.q_pow(&rat(1, 4)).unwrap());
        assert_eq!(seq.taus[&0].constant_term(), RootRatFun::one());
        assert!(toric_toda_sequence(1, 1, 2, &ExactQ).is_err());
    }
}
