//! Tau functions assembled from the Fock engine and from direct sums over
//! partitions, with checks of the first KP and 2-Toda bilinear equations.
//!
//! Series are polynomials in one or two families of power sums `p_n`
//! (`p+_n`, `p-_n`), truncated at a total degree `D` with `deg p_n = n`. The
//! time variables are `t_n = p_n / n`.

mod checks;
mod kp;
mod toda;

pub use checks::{kp_hirota_pde_check, toda_constant, toda_equation_check, CheckReport};
pub use kp::{
    conifold_tau, connected_coefficient, kappa_twist_check, kp_tau_direct, kp_tau_series, kp_tau_vev, ExpandU,
};
pub use toda::{
    toda_shift_formula, toda_tau_sequence, toric_tau, toric_toda_sequence, trivial_toda_sequence, two_partition_direct,
    two_partition_vev, TodaSequence, TwoPartition,
};

use serde_json::{json, Value};
use thiserror::Error;

use crate::fock::FockError;
use crate::partitions::Partition;
use crate::quantumdim::QuantumDimError;
use crate::scalars::{Scalar, ScalarError};
use crate::symfun::{BiKey, BiSymFun, SymFun, SymFunError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TauError {
    #[error("routes disagree for {what} at p+{plus} p-{minus}: {a} vs {b}")]
    RouteMismatch { what: String, plus: Box<Partition>, minus: Box<Partition>, a: String, b: String },
    #[error("r = 0 is not allowed (the two-partition series uses 1/r)")]
    ZeroR,
    #[error("degree {degree} too small: need at least {needed}")]
    Degree { degree: u32, needed: u32 },
    #[error("sequence is missing charge {0}")]
    MissingCharge(i64),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    SymFun(#[from] SymFunError),
    #[error(transparent)]
    QuantumDim(#[from] QuantumDimError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A tau function through total degree `degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct TauSeries<T: Scalar> {
    pub families: u8,
    pub degree: u32,
    pub terms: BiSymFun<T>,
}

impl<T: Scalar> TauSeries<T> {
    pub fn one_family(degree: u32, f: &SymFun<T>) -> Self {
        TauSeries { families: 1, degree, terms: BiSymFun::from_plus(&f.truncate(degree)) }
    }

    pub fn two_families(degree: u32, terms: BiSymFun<T>) -> Self {
        TauSeries { families: 2, degree, terms: terms.truncate_degree(degree) }
    }

    pub fn coeff(&self, plus: &Partition, minus: &Partition) -> T {
        self.terms.coeff(plus, minus)
    }

    pub fn constant_term(&self) -> T {
        self.coeff(&Partition::empty(), &Partition::empty())
    }

    /// The one-family series as a [`SymFun`].
    pub fn as_symfun(&self) -> SymFun<T> {
        self.terms.to_plus().expect("one-family series")
    }

    /// `p_n -> c^{n} p_n` in each family: `scale_plus(k)` and `scale_minus(k)`
    /// give the factor for a monomial of degree `k`.
    pub fn rescale(&self, scale_plus: impl Fn(u32) -> T, scale_minus: impl Fn(u32) -> T) -> Self {
        let terms =
            self.terms.map_with(|k: &BiKey, c| c.mul(&scale_plus(k.plus.size())).mul(&scale_minus(k.minus.size())));
        TauSeries { families: self.families, degree: self.degree, terms }
    }

    pub fn scale_by(&self, s: &T) -> Self {
        TauSeries { families: self.families, degree: self.degree, terms: self.terms.map(|c| c.mul(s)) }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": "tauforge.series.v1",
            "families": self.families,
            "degree": self.degree,
            "terms": self.terms.to_json(),
        })
    }
}

/// First term where two series differ, as a route-mismatch error.
pub(crate) fn compare_routes<T: Scalar>(what: &str, a: &BiSymFun<T>, b: &BiSymFun<T>) -> Result<(), TauError> {
    if a == b {
        return Ok(());
    }
    let diff = a.sub(b);
    let (k, _) = diff.terms().next().expect("nonzero difference");
    let show = |x: &BiSymFun<T>| x.coeff(&k.plus, &k.minus).to_json().to_string();
    Err(TauError::RouteMismatch {
        what: what.to_string(),
        plus: Box::new(k.plus.clone()),
        minus: Box::new(k.minus.clone()),
        a: show(a),
        b: show(b),
    })
}
