//! Integer partitions.
//!
//! Partitions are ordered by size, then reverse-lexicographically, so within
//! a size `(4) < (3,1) < (2,2) < (2,1,1) < (1,1,1,1)`. This is the order used
//! by [`enumerate`] and by every serialized map keyed by partitions.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid partition {0:?}: parts must be positive integers separated by commas")]
pub struct ParsePartitionError(pub String);

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

/// One cell `(row, col)` of a Young diagram, 1-based, with hook length and
/// content `col - row`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
    pub hook: u32,
    pub content: i64,
}

impl Partition {
    /// Sorts the parts into weakly decreasing order and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// Parses `"3,1"`; the empty string and `"0"` give the empty partition.
    pub fn parse(s: &str) -> Result<Self, ParsePartitionError> {
        let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let p: u32 = tok.trim().parse().map_err(|_| ParsePartitionError(s.to_string()))?;
            parts.push(p);
        }
        if parts.len() > 1 && parts.contains(&0) {
            return Err(ParsePartitionError(s.to_string()));
        }
        Ok(Partition::new(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `mu_i` with 1-based `i`; zero past the last part.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// `kappa = sum mu_i (mu_i - 2i + 1)`, twice the sum of contents.
    pub fn kappa(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let m = m as i64;
                m * (m - 2 * (i as i64 + 1) + 1)
            })
            .sum()
    }

    /// `n(mu) = sum (i - 1) mu_i`.
    pub fn n_mu(&self) -> u64 {
        self.parts.iter().enumerate().map(|(i, &m)| i as u64 * m as u64).sum()
    }

    /// Multiplicities `(part, count)` in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, c)) if *q == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `z_mu = prod_i i^{m_i} m_i!`.
    pub fn z(&self) -> u128 {
        let mut z: u128 = 1;
        for (p, m) in self.multiplicities() {
            for k in 1..=m as u128 {
                z *= p as u128 * k;
            }
        }
        z
    }

    pub fn conjugate(&self) -> Self {
        let first = self.part(1);
        let parts = (1..=first).map(|j| self.parts.iter().filter(|&&m| m >= j).count() as u32).collect();
        Partition { parts }
    }

    pub fn hooks_and_contents(&self) -> Vec<Cell> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &m) in self.parts.iter().enumerate() {
            let row = i as u32 + 1;
            for col in 1..=m {
                let hook = m - col + conj.part(col as usize) - row + 1;
                out.push(Cell { row, col, hook, content: col as i64 - row as i64 });
            }
        }
        out
    }

    /// Diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Cellwise intersection of the two diagrams.
    pub fn intersection(&self, other: &Partition) -> Self {
        Partition { parts: self.parts.iter().zip(&other.parts).map(|(a, b)| *a.min(b)).collect() }
    }

    /// All partitions contained in `self`, in canonical order.
    pub fn subpartitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        sub_rec(&self.parts, u32::MAX, &mut cur, &mut out);
        out.sort();
        out
    }

    /// Beta numbers `mu_i - i` for `i = 1..=len`, decreasing.
    fn beta(&self, len: usize) -> Vec<i64> {
        (1..=len).map(|i| self.part(i) as i64 - i as i64).collect()
    }

    fn from_beta(beta: &[i64]) -> Self {
        let mut b = beta.to_vec();
        b.sort_unstable_by(|x, y| y.cmp(x));
        Partition::new(b.iter().enumerate().map(|(i, &x)| (x + i as i64 + 1) as u32).collect())
    }

    /// Every `nu ⊂ self` with `self / nu` a border strip of size `k`, with the
    /// strip's height (rows spanned minus one).
    pub fn border_strips(&self, k: u32) -> Vec<(Partition, u32)> {
        assert!(k >= 1);
        let len = self.len() + k as usize;
        let beta = self.beta(len);
        let set: BTreeSet<i64> = beta.iter().copied().collect();
        let floor = -(len as i64);
        let mut out = Vec::new();
        for (idx, &b) in beta.iter().enumerate() {
            let t = b - k as i64;
            if t < floor || set.contains(&t) {
                continue;
            }
            let height = set.range(t + 1..b).count() as u32;
            let mut nb = beta.clone();
            nb[idx] = t;
            out.push((Partition::from_beta(&nb), height));
        }
        out.sort();
        out
    }

    /// Every `lambda ⊃ self` with `lambda / self` a border strip of size `k`,
    /// with its height.
    pub fn add_border_strips(&self, k: u32) -> Vec<(Partition, u32)> {
        assert!(k >= 1);
        let len = self.len() + k as usize;
        let beta = self.beta(len);
        let set: BTreeSet<i64> = beta.iter().copied().collect();
        let mut out = Vec::new();
        for (idx, &b) in beta.iter().enumerate() {
            let t = b + k as i64;
            if set.contains(&t) {
                continue;
            }
            let height = set.range(b + 1..t).count() as u32;
            let mut nb = beta.clone();
            nb[idx] = t;
            out.push((Partition::from_beta(&nb), height));
        }
        out.sort();
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.parts.iter().map(|&p| Value::from(p)).collect())
    }
}

fn sub_rec(bound: &[u32], max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    out.push(Partition { parts: cur.clone() });
    let i = cur.len();
    if i >= bound.len() {
        return;
    }
    for p in 1..=bound[i].min(max) {
        cur.push(p);
        sub_rec(bound, p, cur, out);
        cur.pop();
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl From<&[u32]> for Partition {
    fn from(parts: &[u32]) -> Self {
        Partition::new(parts.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for Partition {
    fn from(parts: [u32; N]) -> Self {
        Partition::new(parts.to_vec())
    }
}

/// All partitions of `d` in reverse-lexicographic order.
pub fn enumerate(d: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    enum_rec(d, d, &mut cur, &mut out);
    out
}

fn enum_rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for p in (1..=rest.min(max)).rev() {
        cur.push(p);
        enum_rec(rest - p, p, cur, out);
        cur.pop();
    }
}

/// All partitions of size at most `d`, in canonical order.
pub fn enumerate_up_to(d: u32) -> Vec<Partition> {
    (0..=d).flat_map(enumerate).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p<const N: usize>(x: [u32; N]) -> Partition {
        Partition::from(x)
    }

    #[test]
    fn enumerate_order_and_counts() {
        assert_eq!(enumerate(0), vec![Partition::empty()]);
        assert_eq!(enumerate(4), vec![p([4]), p([3, 1]), p([2, 2]), p([2, 1, 1]), p([1, 1, 1, 1])]);
        assert_eq!(enumerate(8).len(), 22);
        let mut sorted = enumerate(6);
        sorted.sort();
        assert_eq!(sorted, enumerate(6));
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(Partition::empty().kappa(), 0);
        assert_eq!(p([2]).kappa(), 2);
        assert_eq!(p([1, 1]).kappa(), -2);
    }

    #[test]
    fn z_examples() {
        assert_eq!(p([1, 1]).z(), 2);
        assert_eq!(p([3]).z(), 3);
        assert_eq!(p([2, 1]).z(), 2);
        assert_eq!(Partition::empty().z(), 1);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p([3, 1]).conjugate(), p([2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p([2, 2]).conjugate(), p([2, 2]));
    }

    #[test]
    fn hooks_examples() {
        let hc = |x: Partition| {
            let cells = x.hooks_and_contents();
            let mut h: Vec<u32> = cells.iter().map(|c| c.hook).collect();
            let mut c: Vec<i64> = cells.iter().map(|c| c.content).collect();
            h.sort();
            c.sort();
            (h, c)
        };
        assert_eq!(hc(p([2])), (vec![1, 2], vec![0, 1]));
        assert_eq!(hc(p([1, 1])), (vec![1, 2], vec![-1, 0]));
        assert_eq!(hc(p([2, 1])), (vec![1, 1, 3], vec![-1, 0, 1]));
    }

    #[test]
    fn border_strip_examples() {
        assert_eq!(p([1]).border_strips(1), vec![(Partition::empty(), 0)]);
        assert_eq!(p([2, 1]).border_strips(3), vec![(Partition::empty(), 1)]);
        assert_eq!(p([2, 2]).border_strips(3), vec![(p([1]), 1)]);
        assert_eq!(p([2, 2]).border_strips(1), vec![(p([2, 1]), 0)]);
        assert!(p([2, 2]).border_strips(2).contains(&(p([2]), 0)));
        assert!(p([2, 2]).border_strips(2).contains(&(p([1, 1]), 1)));
    }

    #[test]
    fn adding_strips_to_empty() {
        assert_eq!(Partition::empty().add_border_strips(2), vec![(p([2]), 0), (p([1, 1]), 1)]);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Partition::parse("3,1").unwrap(), p([3, 1]));
        assert_eq!(Partition::parse("").unwrap(), Partition::empty());
        assert_eq!(Partition::parse("0").unwrap(), Partition::empty());
        assert_eq!(Partition::parse("[2, 2]").unwrap(), p([2, 2]));
        assert!(Partition::parse("a").is_err());
    }

    #[test]
    fn subpartitions_of_square() {
        let subs = p([2, 2]).subpartitions();
        assert_eq!(subs, vec![Partition::empty(), p([1]), p([2]), p([1, 1]), p([2, 1]), p([2, 2])]);
    }
}
