use super::SymFunError;
use crate::partitions::Partition;
use crate::scalars::{int, LaurentV, RatFunV, Scalar};

/// How an alphabet assigns values to `p_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphabetRule {
    /// `p_n = s^n v^{a n} / (1 - v^{b n})`, the sum of the geometric
    /// progression `s v^a, s v^{a+b}, s v^{a+2b}, ...`.
    Geometric { sign: i8, a: i64, b: i64 },
    /// `p_n = images[n - 1]`.
    Explicit(Vec<RatFunV>),
}

/// A specialization `p_n -> A(n)` with values in `Q(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    pub name: String,
    pub rule: AlphabetRule,
}

impl Alphabet {
    /// `(1, q, q^2, ...)`
    pub fn principal() -> Self {
        Self::geometric("(1,q,q^2,...)", 1, 0, 2)
    }

    /// `(1, q^{-1}, q^{-2}, ...)`
    pub fn principal_inverse() -> Self {
        Self::geometric("(1,q^-1,q^-2,...)", 1, 0, -2)
    }

    /// `(q^{-1/2}, q^{-3/2}, ...)`
    pub fn half_inverse() -> Self {
        Self::geometric("(q^-1/2,q^-3/2,...)", 1, -1, -2)
    }

    /// `(-q^{1/2}, -q^{3/2}, ...)`, with `p_n = (-1)^{n+1} / [n]`.
    pub fn negative_half() -> Self {
        Self::geometric("(-q^1/2,-q^3/2,...)", -1, 1, 2)
    }

    pub fn geometric(name: &str, sign: i8, a: i64, b: i64) -> Self {
        assert!(b != 0 && (sign == 1 || sign == -1));
        Alphabet { name: name.to_string(), rule: AlphabetRule::Geometric { sign, a, b } }
    }

    pub fn explicit(name: &str, images: Vec<RatFunV>) -> Self {
        Alphabet { name: name.to_string(), rule: AlphabetRule::Explicit(images) }
    }

    pub fn image(&self, n: u32) -> Result<RatFunV, SymFunError> {
        assert!(n >= 1);
        match &self.rule {
            AlphabetRule::Geometric { sign, a, b } => {
                let n64 = n as i64;
                let s = if *sign < 0 && n % 2 == 1 { -1 } else { 1 };
                let num = LaurentV::monomial(a * n64, int(s));
                Ok(RatFunV::from_laurent(num).mul(&RatFunV::one_minus_v_pow_inv(b * n64)))
            }
            AlphabetRule::Explicit(images) => images
                .get(n as usize - 1)
                .cloned()
                .ok_or_else(|| SymFunError::MissingImage { alphabet: self.name.clone(), n }),
        }
    }

    /// Images `p_1, ..., p_max`.
    pub fn images(&self, max: u32) -> Result<Vec<RatFunV>, SymFunError> {
        (1..=max).map(|n| self.image(n)).collect()
    }
}

/// `s_nu(1, q, q^2, ...) = q^{n(nu)} / prod_cells (1 - q^{hook})`.
pub fn hook_content_spec(nu: &Partition) -> RatFunV {
    let mut out = RatFunV::v_pow(2 * nu.n_mu() as i64);
    for cell in nu.hooks_and_contents() {
        out = out.mul(&RatFunV::one_minus_v_pow_inv(2 * cell.hook as i64));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{bracket, Field};
    use crate::symfun::schur_in_p;

    #[test]
    fn negative_half_images() {
        let a = Alphabet::negative_half();
        for n in 1..=6u32 {
            let inv = RatFunV::from_laurent(bracket(n as i64)).try_inv().unwrap();
            let expected = if n % 2 == 1 { inv } else { inv.neg() };
            assert_eq!(a.image(n).unwrap(), expected);
        }
        // s_(1) = -q^{1/2} / (1 - q)
        let s1 = RatFunV::v_pow(1).neg().mul(&RatFunV::one_minus_v_pow_inv(2));
        assert_eq!(a.image(1).unwrap(), s1);
    }

    #[test]
    fn principal_schur_examples() {
        let one = Partition::from([1]);
        assert_eq!(hook_content_spec(&one), RatFunV::one_minus_v_pow_inv(2));
        let two = Partition::from([2]);
        let expected = RatFunV::one_minus_v_pow_inv(2).mul(&RatFunV::one_minus_v_pow_inv(4));
        assert_eq!(schur_in_p(&two).specialize(&Alphabet::principal()).unwrap(), expected);
        assert_eq!(hook_content_spec(&two), expected);
        let oo = Partition::from([1, 1]);
        assert_eq!(hook_content_spec(&oo), expected.mul(&RatFunV::v_pow(2)));
    }

    #[test]
    fn missing_explicit_image() {
        let a = Alphabet::explicit("E", vec![RatFunV::one()]);
        assert!(a.image(2).is_err());
    }
}
