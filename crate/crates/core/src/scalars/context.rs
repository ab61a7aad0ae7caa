//! Ways of giving `q` a value.
//!
//! Generic code that needs `q^e` or a closed form in `v` goes through a
//! [`QContext`], so one algorithm runs over exact rational functions, roots of
//! `v`, a numeric `q`, or `v`-adic series.

use super::{
    rational_to_string, v_adic_series, v_exponent_of_q_power, Field, LaurentSeries, RatFunV, Rational, RootRatFun,
    Scalar, ScalarError, SqrtExt,
};

pub trait QContext<S: Scalar>: Sync {
    /// `q^e`.
    fn q_pow(&self, e: &Rational) -> Result<S, ScalarError>;
    /// The image of a rational function of `v`.
    fn embed(&self, x: &RatFunV) -> Result<S, ScalarError>;
    fn describe(&self) -> String;
}

fn half_integer(e: &Rational, regime: &'static str) -> Result<i64, ScalarError> {
    v_exponent_of_q_power(e).ok_or_else(|| ScalarError::Regime { exponent: rational_to_string(e), regime })
}

/// Exact rational functions of `v`; `q^e` needs `2e` integral.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactQ;

impl QContext<RatFunV> for ExactQ {
    fn q_pow(&self, e: &Rational) -> Result<RatFunV, ScalarError> {
        RatFunV::q_pow(e)
    }
    fn embed(&self, x: &RatFunV) -> Result<RatFunV, ScalarError> {
        Ok(x.clone())
    }
    fn describe(&self) -> String {
        "exact v".into()
    }
}

/// Rational functions of a root of `v`; every rational power of `q` exists.
#[derive(Clone, Copy, Debug, Default)]
pub struct RootQ;

impl QContext<RootRatFun> for RootQ {
    fn q_pow(&self, e: &Rational) -> Result<RootRatFun, ScalarError> {
        Ok(RootRatFun::q_pow(e))
    }
    fn embed(&self, x: &RatFunV) -> Result<RootRatFun, ScalarError> {
        Ok(RootRatFun::from_ratfun(x.clone()))
    }
    fn describe(&self) -> String {
        "root of v".into()
    }
}

/// `q` set to a positive rational, with `v = sqrt(q)` in a quadratic field.
#[derive(Clone, Debug)]
pub struct NumericQ {
    q: Rational,
    v: SqrtExt,
}

impl NumericQ {
    pub fn new(q: Rational) -> Result<Self, ScalarError> {
        let v = SqrtExt::sqrt_of(&q)?;
        Ok(NumericQ { q, v })
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn v(&self) -> &SqrtExt {
        &self.v
    }
}

impl QContext<SqrtExt> for NumericQ {
    fn q_pow(&self, e: &Rational) -> Result<SqrtExt, ScalarError> {
        let k = half_integer(e, "numeric q")?;
        let base = if k >= 0 { self.v.clone() } else { self.v.try_inv()? };
        let mut out = SqrtExt::one();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }
    fn embed(&self, x: &RatFunV) -> Result<SqrtExt, ScalarError> {
        x.eval(&self.v)
    }
    fn describe(&self) -> String {
        format!("q = {}", rational_to_string(&self.q))
    }
}

/// Laurent series in `v` known through `v^order`.
#[derive(Clone, Copy, Debug)]
pub struct VAdicQ {
    pub order: i64,
}

impl QContext<LaurentSeries> for VAdicQ {
    fn q_pow(&self, e: &Rational) -> Result<LaurentSeries, ScalarError> {
        let k = half_integer(e, "v-adic")?;
        Ok(LaurentSeries::exact(&super::LaurentV::v_pow(k)))
    }
    fn embed(&self, x: &RatFunV) -> Result<LaurentSeries, ScalarError> {
        Ok(v_adic_series(x, self.order))
    }
    fn describe(&self) -> String {
        format!("v-adic through v^{}", self.order)
    }
}
