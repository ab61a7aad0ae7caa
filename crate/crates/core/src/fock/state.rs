use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use crate::partitions::Partition;
use crate::scalars::{rat, Rational, Scalar};

/// Basis vector `|mu; n>`.
///
/// The derived order compares the charge first, then the partition (size,
/// then reverse-lex), which is the order of the debug dump.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState {
    pub charge: i64,
    pub partition: Partition,
}

impl FockState {
    pub fn new(charge: i64, partition: Partition) -> Self {
        FockState { charge, partition }
    }

    /// `|n>`
    pub fn vacuum(charge: i64) -> Self {
        FockState { charge, partition: Partition::empty() }
    }

    /// Energy relative to `|n>`, i.e. `|mu|`.
    pub fn energy(&self) -> u32 {
        self.partition.size()
    }

    /// Occupied sites `k_i = mu_i - i + n` (site `x = k + 1/2`), in decreasing
    /// order: `i = 1..L` with `L >= n - floor`, so every site `k >= n - L`
    /// (in particular every `k >= floor`) is described by the list and every
    /// `k < n - L` is occupied.
    pub(crate) fn sites(&self, floor: i64) -> Vec<i64> {
        let n = self.charge;
        let len = (self.partition.len() as i64).max(n - floor).max(0) as usize;
        (1..=len).map(|i| self.partition.part(i) as i64 - i as i64 + n).collect()
    }

    /// Inverse of [`FockState::sites`]: the occupied sites `k >= n - L` of a
    /// charge-`n` state, `L` being the list length.
    pub(crate) fn from_sites(charge: i64, sites: &[i64]) -> Self {
        let parts = sites
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                let p = k + i as i64 + 1 - charge;
                debug_assert!(p >= 0, "site list does not describe a partition");
                p as u32
            })
            .collect();
        FockState { charge, partition: Partition::new(parts) }
    }

    /// Occupied sites `x > 0` and empty sites `x < 0`, as the odd integers `2x`.
    fn excitations(&self) -> (Vec<i64>, Vec<i64>) {
        let sites = self.sites(self.charge.min(0) - 1);
        let occupied: BTreeSet<i64> = sites.iter().copied().collect();
        let bottom = self.charge - sites.len() as i64;
        let particles = sites.iter().filter(|&&k| k >= 0).map(|k| 2 * k + 1).collect();
        let holes = (bottom..0).filter(|k| !occupied.contains(k)).map(|k| 2 * k + 1).collect();
        (particles, holes)
    }

    /// Eigenvalue of `H = sum_{x > 0} x :psi+ psi-: `, computed from the Maya
    /// diagram. Equals `|mu| + n^2/2`.
    pub fn h_eigenvalue(&self) -> Rational {
        let (particles, holes) = self.excitations();
        let twice: i64 = particles.iter().sum::<i64>() - holes.iter().sum::<i64>();
        rat(twice, 2)
    }

    /// Eigenvalue of `K = sum_x x^2/2 :psi+ psi-:`, computed from the Maya
    /// diagram. On charge 0 it is `kappa_mu / 2`.
    pub fn k_eigenvalue(&self) -> Rational {
        let (particles, holes) = self.excitations();
        let eight: i64 = particles.iter().map(|x| x * x).sum::<i64>() - holes.iter().map(|x| x * x).sum::<i64>();
        rat(eight, 8)
    }

    pub fn to_json(&self) -> Value {
        json!({ "charge": self.charge, "mu": self.partition.to_json() })
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{};{}>", self.partition, self.charge)
    }
}

/// Which components of a truncated vector are known to be exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guarantee {
    /// Nothing was ever dropped.
    Complete,
    /// Every component of energy at most `E` is exact.
    UpTo(i64),
    /// A step mixed in components that were already lost.
    Uncertified,
}

impl Guarantee {
    /// Largest certified energy; `None` when uncertified.
    pub fn energy(self) -> Option<i64> {
        match self {
            Guarantee::Complete => Some(i64::MAX),
            Guarantee::UpTo(e) => Some(e),
            Guarantee::Uncertified => None,
        }
    }

    pub fn covers(self, energy: i64) -> bool {
        self.energy().is_some_and(|e| e >= energy)
    }

    pub fn min(self, other: Guarantee) -> Guarantee {
        match (self, other) {
            (Guarantee::Uncertified, _) | (_, Guarantee::Uncertified) => Guarantee::Uncertified,
            (Guarantee::Complete, g) | (g, Guarantee::Complete) => g,
            (Guarantee::UpTo(a), Guarantee::UpTo(b)) => Guarantee::UpTo(a.min(b)),
        }
    }

    /// After an operator that changes energy by at least `min_transfer`
    /// (`None` for an unbounded lowering).
    pub(crate) fn after(self, min_transfer: Option<i64>) -> Guarantee {
        match (self, min_transfer) {
            (Guarantee::Complete, _) => Guarantee::Complete,
            (Guarantee::UpTo(e), Some(d)) => Guarantee::UpTo(e + d.min(0)),
            _ => Guarantee::Uncertified,
        }
    }

    pub fn describe(self) -> String {
        match self {
            Guarantee::Complete => "complete".into(),
            Guarantee::UpTo(e) => format!("exact through energy {e}"),
            Guarantee::Uncertified => "uncertified".into(),
        }
    }
}

/// A vector in one charge sector, truncated to energies `|mu| <= cutoff`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector<S> {
    charge: i64,
    coeffs: BTreeMap<FockState, S>,
    cutoff: u32,
    guarantee: Guarantee,
}

impl<S: Scalar> FockVector<S> {
    pub fn zero(charge: i64, cutoff: u32) -> Self {
        FockVector { charge, coeffs: BTreeMap::new(), cutoff, guarantee: Guarantee::Complete }
    }

    pub fn basis(state: FockState, cutoff: u32) -> Self {
        Self::from_terms(state.charge, cutoff, [(state, S::one())])
    }

    pub fn vacuum(charge: i64, cutoff: u32) -> Self {
        Self::basis(FockState::vacuum(charge), cutoff)
    }

    /// Terms above the cutoff are dropped and the guarantee lowered.
    pub fn from_terms<I: IntoIterator<Item = (FockState, S)>>(charge: i64, cutoff: u32, terms: I) -> Self {
        let mut out = Self::zero(charge, cutoff);
        let mut dropped = false;
        for (k, c) in terms {
            dropped |= out.add_term(k, &c);
        }
        if dropped {
            out.guarantee = out.guarantee.min(Guarantee::UpTo(cutoff as i64));
        }
        out
    }

    /// Adds `c |state>`; returns `true` if the state lies above the cutoff and
    /// was dropped.
    pub(crate) fn add_term(&mut self, state: FockState, c: &S) -> bool {
        assert_eq!(state.charge, self.charge, "state {state} outside charge sector {}", self.charge);
        if state.energy() > self.cutoff {
            return !c.is_zero();
        }
        if c.is_zero() {
            return false;
        }
        match self.coeffs.get_mut(&state) {
            Some(x) => {
                *x = x.add(c);
                if x.is_zero() {
                    self.coeffs.remove(&state);
                }
            }
            None => {
                self.coeffs.insert(state, c.clone());
            }
        }
        false
    }

    pub(crate) fn with_guarantee(mut self, g: Guarantee) -> Self {
        self.guarantee = g;
        self
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn guarantee(&self) -> Guarantee {
        self.guarantee
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockState, &S)> + '_ {
        self.coeffs.iter()
    }

    pub fn coeff(&self, state: &FockState) -> S {
        self.coeffs.get(state).cloned().unwrap_or_else(S::zero)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_energy(&self) -> u32 {
        self.coeffs.keys().map(FockState::energy).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.charge, other.charge, "adding vectors from different charge sectors");
        let mut out = self.clone();
        out.cutoff = self.cutoff.min(other.cutoff);
        out.coeffs.retain(|k, _| k.energy() <= other.cutoff);
        for (k, c) in &other.coeffs {
            out.add_term(k.clone(), c);
        }
        out.guarantee = self.guarantee.min(other.guarantee);
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale_by(&self, s: &S) -> Self {
        self.map(|c| c.mul(s))
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        let mut out = Self::zero(self.charge, self.cutoff);
        out.guarantee = self.guarantee;
        for (k, c) in &self.coeffs {
            out.add_term(k.clone(), &f(c));
        }
        out
    }

    /// Keeps the components of energy at most `e`.
    pub fn restrict(&self, e: i64) -> Self {
        let mut out = self.clone();
        out.coeffs.retain(|k, _| (k.energy() as i64) <= e);
        out
    }

    /// Lines `charge n | [parts] | coeff` in basis order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (k, c) in &self.coeffs {
            let parts: Vec<String> = k.partition.parts().iter().map(u32::to_string).collect();
            let coeff = match c.to_json() {
                Value::String(s) => s,
                v => v.to_string(),
            };
            out.push_str(&format!("charge {} | [{}] | {}\n", k.charge, parts.join(","), coeff));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "charge": self.charge,
            "cutoff": self.cutoff,
            "guarantee": self.guarantee.describe(),
            "terms": self.coeffs.iter().map(|(k, c)| json!({ "mu": k.partition.to_json(), "coeff": c.to_json() })).collect::<Vec<_>>(),
        })
    }
}

/// Compares two vectors on the energies both certify. Returns the common
/// certified energy when they agree there, `None` otherwise.
pub fn certified_eq<S: Scalar>(a: &FockVector<S>, b: &FockVector<S>) -> Option<i64> {
    let window = a.guarantee().min(b.guarantee()).energy()?.min(a.cutoff().min(b.cutoff()) as i64);
    (a.restrict(window).coeffs == b.restrict(window).coeffs).then_some(window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_up_to;
    use crate::scalars::int;

    #[test]
    fn sites_round_trip() {
        for n in -3..=3 {
            for mu in enumerate_up_to(5) {
                let s = FockState::new(n, mu);
                for floor in [-6, -1, 0, 4] {
                    assert_eq!(FockState::from_sites(n, &s.sites(floor)), s);
                }
            }
        }
    }

    #[test]
    fn energy_eigenvalues() {
        let s = FockState::new(0, Partition::from([2, 1]));
        assert_eq!(s.h_eigenvalue(), int(3));
        assert_eq!(FockState::new(0, Partition::from([2])).k_eigenvalue(), int(1));
        for n in -3..=3 {
            for mu in enumerate_up_to(5) {
                let s = FockState::new(n, mu.clone());
                assert_eq!(s.h_eigenvalue(), int(mu.size() as i64) + rat(n * n, 2));
            }
        }
    }

    #[test]
    fn dump_format_and_order() {
        let v: FockVector<Rational> = FockVector::from_terms(
            0,
            5,
            [
                (FockState::new(0, Partition::from([1, 1])), rat(1, 2)),
                (FockState::new(0, Partition::from([2])), int(-1)),
                (FockState::vacuum(0), int(1)),
            ],
        );
        assert_eq!(v.dump(), "charge 0 | [] | 1\ncharge 0 | [2] | -1\ncharge 0 | [1,1] | 1/2\n");
    }

    #[test]
    fn dropping_lowers_guarantee() {
        let v: FockVector<Rational> = FockVector::from_terms(0, 1, [(FockState::new(0, Partition::from([2])), int(1))]);
        assert!(v.is_zero());
        assert_eq!(v.guarantee(), Guarantee::UpTo(1));
        assert_eq!(Guarantee::UpTo(3).after(Some(-2)), Guarantee::UpTo(1));
        assert_eq!(Guarantee::UpTo(3).after(None), Guarantee::Uncertified);
        assert_eq!(Guarantee::Complete.after(None), Guarantee::Complete);
    }
}
