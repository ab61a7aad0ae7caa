//! Truncated charged free-fermion Fock space.
//!
//! Basis vectors `|mu; n>` carry a charge `n` and a partition `mu`; the Maya
//! diagram of `|mu; n>` occupies the half-integers `mu_i - i + n + 1/2`.
//! Vectors live in one charge sector and keep only energies `|mu| <= cutoff`.
//! Each vector records which of its components are still exact (a
//! [`Guarantee`]), and every operator updates that record by its energy
//! transfer, so a vacuum expectation value either comes out exact or fails
//! with [`FockError::InsufficientCutoff`].

mod hirota;
mod ops;
mod state;

pub use hirota::{hirota_vector_check, HirotaReport};
pub use ops::{
    alpha_by_fermions, apply_alpha, apply_alpha0, apply_gamma, apply_h, apply_k, apply_psi, apply_qk, apply_r,
    formal_gamma, Engine, Lifted, Op, Sign, Vev,
};
pub use state::{certified_eq, FockState, FockVector, Guarantee};

use thiserror::Error;

use crate::scalars::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    #[error("{0} is not a half-integer")]
    NotHalfInteger(String),
    #[error("cutoff {cutoff} too small: need exact components through energy {needed}, have {guarantee}")]
    InsufficientCutoff { needed: i64, cutoff: u32, guarantee: String },
    #[error("alphabet: {0}")]
    Alphabet(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
