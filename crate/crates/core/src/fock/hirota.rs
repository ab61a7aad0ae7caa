use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::ops::flip_site;
use super::state::{FockState, FockVector};
use super::FockError;
use crate::partitions::enumerate;
use crate::scalars::Scalar;

/// Components of `sum_x (psi+ at x) v ⊗ (psi- at x) v`.
#[derive(Clone, Debug)]
pub struct HirotaReport<S> {
    /// Components with `|a| + |b| <= window` are exact.
    pub window: i64,
    /// Number of basis pairs `<a| ⊗ <b|` in the window.
    pub checked_pairs: usize,
    pub residuals: Vec<(FockState, FockState, S)>,
}

impl<S: Scalar> HirotaReport<S> {
    pub fn pass(&self) -> bool {
        self.residuals.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "window": self.window,
            "checked_pairs": self.checked_pairs,
            "residuals": self.residuals.iter().map(|(a, b, c)| json!({
                "left": a.to_json(), "right": b.to_json(), "value": c.to_json()
            })).collect::<Vec<_>>(),
        })
    }
}

/// Checks the bilinear identity `sum_x psi+_{-x} v ⊗ psi-_x v = 0` that
/// characterizes the orbit of the vacuum.
///
/// Inserting at `x` and removing at `x` changes absolute energies by `+x` and
/// `-x`, so the component `<a| ⊗ <b|` only sees source pairs with
/// `|s| + |s'| = |a| + |b| + 1`. It is exact when `v` is exact through energy
/// `|a| + |b| + 1`.
pub fn hirota_vector_check<S: Scalar>(v: &FockVector<S>) -> Result<HirotaReport<S>, FockError> {
    let certified = v.guarantee().energy().ok_or_else(|| FockError::InsufficientCutoff {
        needed: 1,
        cutoff: v.cutoff(),
        guarantee: v.guarantee().describe(),
    })?;
    let window = certified.min(v.cutoff() as i64) - 1;
    if window < 0 {
        return Err(FockError::InsufficientCutoff {
            needed: 1,
            cutoff: v.cutoff(),
            guarantee: v.guarantee().describe(),
        });
    }
    let n = v.charge();
    let reach = window + 2 + n.abs();
    let mut sum: BTreeMap<(FockState, FockState), S> = BTreeMap::new();
    for k in -reach - 1..=reach {
        let mut left: Vec<(FockState, S)> = Vec::new();
        let mut right: Vec<(FockState, S)> = Vec::new();
        for (s, c) in v.terms() {
            if let Some((t, sign)) = flip_site(s, k, true) {
                if (t.energy() as i64) <= window {
                    left.push((t, c.scale(&sign)));
                }
            }
            if let Some((t, sign)) = flip_site(s, k, false) {
                if (t.energy() as i64) <= window {
                    right.push((t, c.scale(&sign)));
                }
            }
        }
        for (a, ca) in &left {
            for (b, cb) in &right {
                if (a.energy() + b.energy()) as i64 > window {
                    continue;
                }
                let e = sum.entry((a.clone(), b.clone())).or_insert_with(S::zero);
                *e = e.add(&ca.mul(cb));
            }
        }
    }
    let residuals = sum.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b), c)| (a, b, c)).collect();
    let counts: Vec<usize> = (0..=window as u32).map(|d| enumerate(d).len()).collect();
    let mut checked_pairs = 0;
    for i in 0..counts.len() {
        for j in 0..counts.len() - i {
            checked_pairs += counts[i] * counts[j];
        }
    }
    Ok(HirotaReport { window, checked_pairs, residuals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;
    use crate::scalars::{int, Rational};

    #[test]
    fn vacuum_passes() {
        let v: FockVector<Rational> = FockVector::vacuum(0, 6);
        let r = hirota_vector_check(&v).unwrap();
        assert!(r.pass());
        assert_eq!(r.window, 5);
    }

    #[test]
    fn single_excitation_is_in_the_orbit() {
        let v: FockVector<Rational> = FockVector::from_terms(
            0,
            6,
            [(FockState::vacuum(0), int(1)), (FockState::new(0, Partition::from([1])), int(2))],
        );
        assert!(hirota_vector_check(&v).unwrap().pass());
    }

    #[test]
    fn plucker_violation_is_reported() {
        let v: FockVector<Rational> = FockVector::from_terms(
            0,
            6,
            [(FockState::vacuum(0), int(1)), (FockState::new(0, Partition::from([2, 2])), int(1))],
        );
        let r = hirota_vector_check(&v).unwrap();
        assert!(!r.pass());
    }
}
