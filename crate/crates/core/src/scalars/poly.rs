//! Dense univariate polynomials over Q, used for normalizing rational functions.
//!
//! Index `i` of a coefficient vector holds the coefficient of `x^i`. Vectors are
//! kept trimmed: the last entry is nonzero, and the zero polynomial is empty.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

pub(crate) type Poly = Vec<Rational>;

pub(crate) fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn mul(a: &[Rational], b: &[Rational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a / b` over Q.
pub(crate) fn divrem(a: &[Rational], b: &[Rational]) -> (Poly, Poly) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem: Poly = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                rem[k + j] -= &c * bj;
            }
        }
        quot[k] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

/// Exact quotient; panics in debug builds if the division leaves a remainder.
pub(crate) fn div_exact(a: &[Rational], b: &[Rational]) -> Poly {
    let (q, r) = divrem(a, b);
    debug_assert!(r.is_empty(), "inexact polynomial division");
    q
}

fn to_primitive_integer(p: &[Rational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in p {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    primitive(ints)
}

fn primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    if p.is_empty() {
        return p;
    }
    let mut g = BigInt::zero();
    for c in &p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if p.last().unwrap().is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for c in p.iter_mut() {
            *c = &*c / &g;
        }
    }
    p
}

/// Pseudo-remainder of `a` by `b` over Z.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Greatest common divisor as a primitive integer polynomial with positive
/// leading coefficient, returned over Q.
pub(crate) fn gcd(a: &[Rational], b: &[Rational]) -> Poly {
    let mut x = to_primitive_integer(a);
    let mut y = to_primitive_integer(b);
    if x.is_empty() {
        return y.into_iter().map(Rational::from_integer).collect();
    }
    if y.is_empty() {
        return x.into_iter().map(Rational::from_integer).collect();
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![Rational::one()];
        }
        let r = primitive(prem(&x, &y));
        x = y;
        y = r;
    }
    x.into_iter().map(Rational::from_integer).collect()
}
