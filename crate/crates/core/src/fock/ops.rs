use std::collections::BTreeSet;

use super::state::{FockState, FockVector, Guarantee};
use super::FockError;
use crate::scalars::{int, rational_to_string, QContext, RatFunV, Rational, Scalar, ScalarError};
use crate::symfun::{Alphabet, BiSymFun};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

fn sign_of(height: u32) -> Rational {
    if height.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// Applies a map on basis states and updates the guarantee.
fn transform<S: Scalar>(
    v: &FockVector<S>,
    charge: i64,
    min_transfer: Option<i64>,
    f: impl Fn(&FockState) -> Vec<(FockState, Rational)>,
) -> FockVector<S> {
    let mut out = FockVector::zero(charge, v.cutoff());
    let mut dropped = false;
    for (state, c) in v.terms() {
        for (target, s) in f(state) {
            dropped |= out.add_term(target, &c.scale(&s));
        }
    }
    let mut g = v.guarantee().after(min_transfer);
    if dropped {
        g = g.min(Guarantee::UpTo(v.cutoff() as i64));
    }
    out.with_guarantee(g)
}

/// Site index `k` (site `x = k + 1/2`) of a half-integer `x`.
fn site_of(x: &Rational) -> Result<i64, FockError> {
    let twice = x * int(2);
    if !twice.is_integer() || (twice.to_integer() % 2i32) == 0.into() {
        return Err(FockError::NotHalfInteger(rational_to_string(x)));
    }
    let t: i64 = i64::try_from((twice - int(1)).to_integer() / 2)
        .map_err(|_| FockError::NotHalfInteger(rational_to_string(x)))?;
    Ok(t)
}

/// Inserts (`Some(true)`) or removes a particle at site `k`, with sign
/// `(-1)^{#occupied sites above k}`.
pub(crate) fn flip_site(state: &FockState, k: i64, insert: bool) -> Option<(FockState, Rational)> {
    let sites = state.sites(k);
    let occupied = sites.contains(&k);
    if occupied == insert {
        return None;
    }
    let above = sites.iter().filter(|&&s| s > k).count() as u32;
    let mut new: Vec<i64> = sites.into_iter().filter(|&s| s != k).collect();
    let charge = if insert {
        new.push(k);
        new.sort_unstable_by(|a, b| b.cmp(a));
        state.charge + 1
    } else {
        state.charge - 1
    };
    Some((FockState::from_sites(charge, &new), sign_of(above)))
}

/// `psi+_r` creates a particle at `x = -r`; `psi-_r` removes the particle at
/// `x = r`. Both change the `H`-eigenvalue by `-r`.
pub fn apply_psi<S: Scalar>(sign: Sign, r: &Rational, v: &FockVector<S>) -> Result<FockVector<S>, FockError> {
    let n = v.charge();
    let (k, insert, charge) = match sign {
        Sign::Plus => (site_of(&-r.clone())?, true, n + 1),
        Sign::Minus => (site_of(r)?, false, n - 1),
    };
    // change of |mu|: -r - ((charge)^2 - n^2)/2
    let shift = -r - Rational::new((charge * charge - n * n).into(), 2.into());
    let transfer = shift.floor().to_integer();
    let transfer = i64::try_from(transfer).unwrap_or(i64::MIN / 4);
    Ok(transform(v, charge, Some(transfer), |s| flip_site(s, k, insert).into_iter().collect()))
}

/// `alpha_m` for `m != 0`: `alpha_{-m}` adds border strips of size `m` with
/// sign `(-1)^{height}`, `alpha_m` removes them.
pub fn apply_alpha<S: Scalar>(m: i64, v: &FockVector<S>) -> FockVector<S> {
    assert!(m != 0, "alpha_0 is the charge operator");
    let size = m.unsigned_abs() as u32;
    transform(v, v.charge(), Some(-m), |s| {
        let strips = if m < 0 { s.partition.add_border_strips(size) } else { s.partition.border_strips(size) };
        strips.into_iter().map(|(p, h)| (FockState::new(s.charge, p), sign_of(h))).collect()
    })
}

pub fn apply_h<S: Scalar>(v: &FockVector<S>) -> FockVector<S> {
    transform(v, v.charge(), Some(0), |s| vec![(s.clone(), s.h_eigenvalue())])
}

pub fn apply_k<S: Scalar>(v: &FockVector<S>) -> FockVector<S> {
    transform(v, v.charge(), Some(0), |s| vec![(s.clone(), s.k_eigenvalue())])
}

/// `alpha_0`, the charge operator.
pub fn apply_alpha0<S: Scalar>(v: &FockVector<S>) -> FockVector<S> {
    transform(v, v.charge(), Some(0), |s| vec![(s.clone(), int(s.charge))])
}

/// `R^k |mu; n> = |mu; n + k>`.
pub fn apply_r<S: Scalar>(k: i64, v: &FockVector<S>) -> FockVector<S> {
    transform(v, v.charge() + k, Some(0), |s| vec![(FockState::new(s.charge + k, s.partition.clone()), int(1))])
}

/// `q^{cK}`.
pub fn apply_qk<S: Scalar>(c: &Rational, ctx: &dyn QContext<S>, v: &FockVector<S>) -> Result<FockVector<S>, FockError> {
    let mut out = FockVector::zero(v.charge(), v.cutoff());
    for (s, x) in v.terms() {
        let factor = ctx.q_pow(&(c * s.k_eigenvalue()))?;
        out.add_term(s.clone(), &x.mul(&factor));
    }
    Ok(out.with_guarantee(v.guarantee()))
}

/// `Gamma_{sign}(t) = exp(sum_n t_n alpha_{sign n})` with `t_n = coeffs[n - 1]`.
///
/// With `formal`, the `t_n` are treated as having degree `n` and every
/// coefficient is truncated to degree `degree`; otherwise the expansion stops
/// when the energy runs out of the window.
pub fn apply_gamma<S: Scalar>(sign: Sign, coeffs: &[S], formal: bool, degree: u32, v: &FockVector<S>) -> FockVector<S> {
    let lowering = sign == Sign::Plus;
    let mut total = v.clone();
    let mut term = v.clone();
    let mut dropped = false;
    let steps = v.cutoff() as usize + degree as usize + 2;
    for k in 1..=steps {
        let mut next = FockVector::zero(v.charge(), v.cutoff());
        let inv_k = Rational::new(1.into(), (k as i64).into());
        for (state, c) in term.terms() {
            for (n, t) in coeffs.iter().enumerate() {
                if t.is_zero() {
                    continue;
                }
                let n = n as u32 + 1;
                if lowering && n > state.energy() {
                    break;
                }
                if formal && n > degree {
                    break;
                }
                let ct = c.mul(t).scale(&inv_k);
                let ct = if formal { ct.truncate_degree(degree) } else { ct };
                if ct.is_zero() {
                    continue;
                }
                let strips =
                    if lowering { state.partition.border_strips(n) } else { state.partition.add_border_strips(n) };
                for (p, h) in strips {
                    dropped |= next.add_term(FockState::new(state.charge, p), &ct.scale(&sign_of(h)));
                }
            }
        }
        if next.is_zero() {
            break;
        }
        total = total.add(&next);
        term = next;
    }
    let transfer = match (lowering, formal) {
        (false, _) => Some(0),
        (true, true) => Some(-(degree as i64)),
        (true, false) => None,
    };
    let mut g = v.guarantee().after(transfer);
    if dropped {
        g = g.min(Guarantee::UpTo(v.cutoff() as i64));
    }
    total.with_guarantee(g)
}

/// One primitive operator.
#[derive(Clone, Debug, PartialEq)]
pub enum Op<S> {
    Psi {
        sign: Sign,
        r: Rational,
    },
    Alpha(i64),
    H,
    K,
    R(i64),
    /// `q^{cK}`
    QK(Rational),
    /// `Gamma_{sign}(t)`; `formal` marks coefficients that carry degree.
    Gamma {
        sign: Sign,
        coeffs: Vec<S>,
        formal: bool,
    },
}

impl<S: Scalar> Op<S> {
    pub fn charge_shift(&self) -> i64 {
        match self {
            Op::Psi { sign: Sign::Plus, .. } => 1,
            Op::Psi { sign: Sign::Minus, .. } => -1,
            Op::R(k) => *k,
            _ => 0,
        }
    }

    /// `Y_{sign}(x) = Gamma_{sign}(t)` with `t_n = p_n(x)/n`, for `n <= n_max`.
    pub fn y(sign: Sign, alphabet: &Alphabet, ctx: &dyn QContext<S>, n_max: u32) -> Result<Self, FockError> {
        Self::y_scaled(sign, alphabet, ctx, n_max, &int(0))
    }

    /// `Y_{sign}(q^c x)`, i.e. `t_n = q^{cn} p_n(x) / n`.
    pub fn y_scaled(
        sign: Sign,
        alphabet: &Alphabet,
        ctx: &dyn QContext<S>,
        n_max: u32,
        c: &Rational,
    ) -> Result<Self, FockError> {
        let mut coeffs = Vec::with_capacity(n_max as usize);
        for n in 1..=n_max {
            let p = alphabet.image(n).map_err(|e| FockError::Alphabet(e.to_string()))?;
            let scaled = ctx.q_pow(&(c * int(n as i64)))?;
            let t = ctx.embed(&p.scale(&Rational::new(1.into(), (n as i64).into())))?.mul(&scaled);
            coeffs.push(t);
        }
        Ok(Op::Gamma { sign, coeffs, formal: false })
    }

    pub fn name(&self) -> String {
        match self {
            Op::Psi { sign, r } => format!("psi{}_{}", sign.symbol(), rational_to_string(r)),
            Op::Alpha(m) => format!("alpha_{m}"),
            Op::H => "H".into(),
            Op::K => "K".into(),
            Op::R(k) => format!("R^{k}"),
            Op::QK(c) => format!("q^({}K)", rational_to_string(c)),
            Op::Gamma { sign, formal, .. } => {
                format!("Gamma{}({})", sign.symbol(), if *formal { "formal" } else { "specialized" })
            }
        }
    }
}

/// Formal `Gamma_{sign}(t)` over two families of power sums, with
/// `t_n = q^{cn} p^{family}_n / n`.
pub fn formal_gamma<T: Scalar>(
    sign: Sign,
    plus_family: bool,
    ctx: &dyn QContext<T>,
    degree: u32,
    c: &Rational,
) -> Result<Op<BiSymFun<T>>, FockError> {
    let mut coeffs = Vec::with_capacity(degree as usize);
    for n in 1..=degree {
        let scale = ctx.q_pow(&(c * int(n as i64)))?;
        let inv_n = Rational::new(1.into(), (n as i64).into());
        coeffs.push(BiSymFun::p(plus_family, n).map(|x: &T| x.mul(&scale).scale(&inv_n)));
    }
    Ok(Op::Gamma { sign, coeffs, formal: true })
}

/// Embeds a scalar context into constants of [`BiSymFun`].
pub struct Lifted<'a, T> {
    pub inner: &'a dyn QContext<T>,
}

impl<T: Scalar> QContext<BiSymFun<T>> for Lifted<'_, T> {
    fn q_pow(&self, e: &Rational) -> Result<BiSymFun<T>, ScalarError> {
        Ok(BiSymFun::constant(self.inner.q_pow(e)?))
    }
    fn embed(&self, x: &RatFunV) -> Result<BiSymFun<T>, ScalarError> {
        Ok(BiSymFun::constant(self.inner.embed(x)?))
    }
    fn describe(&self) -> String {
        format!("power sums over {}", self.inner.describe())
    }
}

/// A vacuum expectation value or matrix element.
#[derive(Clone, Debug, PartialEq)]
pub struct Vev<S> {
    pub value: S,
    /// The word cannot connect the two charges; `value` is zero.
    pub charge_mismatch: bool,
    pub guarantee: Guarantee,
}

/// Evaluates operator words with a fixed cutoff, degree and `q`.
pub struct Engine<'a, S> {
    pub cutoff: u32,
    pub degree: u32,
    pub ctx: &'a dyn QContext<S>,
}

impl<'a, S: Scalar> Engine<'a, S> {
    pub fn new(cutoff: u32, degree: u32, ctx: &'a dyn QContext<S>) -> Self {
        Engine { cutoff, degree, ctx }
    }

    pub fn apply(&self, op: &Op<S>, v: &FockVector<S>) -> Result<FockVector<S>, FockError> {
        Ok(match op {
            Op::Psi { sign, r } => apply_psi(*sign, r, v)?,
            Op::Alpha(m) => apply_alpha(*m, v),
            Op::H => apply_h(v),
            Op::K => apply_k(v),
            Op::R(k) => apply_r(*k, v),
            Op::QK(c) => apply_qk(c, self.ctx, v)?,
            Op::Gamma { sign, coeffs, formal } => apply_gamma(*sign, coeffs, *formal, self.degree, v),
        })
    }

    /// Applies `word` right to left.
    pub fn apply_word(&self, word: &[Op<S>], v: &FockVector<S>) -> Result<FockVector<S>, FockError> {
        let mut cur = v.clone();
        for op in word.iter().rev() {
            cur = self.apply(op, &cur)?;
        }
        Ok(cur)
    }

    /// `<bra| word |ket>`, truncated to degree `self.degree`.
    pub fn matrix_element(&self, bra: &FockState, word: &[Op<S>], ket: &FockState) -> Result<Vev<S>, FockError> {
        let shift: i64 = word.iter().map(Op::charge_shift).sum();
        if ket.charge + shift != bra.charge {
            return Ok(Vev { value: S::zero(), charge_mismatch: true, guarantee: Guarantee::Complete });
        }
        if ket.energy() > self.cutoff {
            return Err(FockError::InsufficientCutoff {
                needed: ket.energy() as i64,
                cutoff: self.cutoff,
                guarantee: Guarantee::Complete.describe(),
            });
        }
        let v = self.apply_word(word, &FockVector::basis(ket.clone(), self.cutoff))?;
        if !v.guarantee().covers(bra.energy() as i64) {
            return Err(FockError::InsufficientCutoff {
                needed: bra.energy() as i64,
                cutoff: self.cutoff,
                guarantee: v.guarantee().describe(),
            });
        }
        Ok(Vev { value: v.coeff(bra).truncate_degree(self.degree), charge_mismatch: false, guarantee: v.guarantee() })
    }

    /// `<n| word |n>`
    pub fn vev(&self, word: &[Op<S>], n: i64) -> Result<Vev<S>, FockError> {
        self.matrix_element(&FockState::vacuum(n), word, &FockState::vacuum(n))
    }
}

/// `sum_x psi+_{m - x} psi-_x` on a vector: `alpha_m` as a fermion bilinear,
/// summed over every site that can contribute.
pub fn alpha_by_fermions<S: Scalar>(m: i64, v: &FockVector<S>) -> Result<FockVector<S>, FockError> {
    let mut sites = BTreeSet::new();
    for (s, _) in v.terms() {
        sites.extend(s.sites(s.charge - s.partition.len() as i64 - m.abs() - 1));
    }
    let mut out = FockVector::zero(v.charge(), v.cutoff());
    for k in sites {
        let x = Rational::new((2 * k + 1).into(), 2.into());
        let removed = apply_psi(Sign::Minus, &x, v)?;
        let r = int(m) - x;
        let w = apply_psi(Sign::Plus, &r, &removed)?;
        out = out.add(&w);
    }
    Ok(out)
}
