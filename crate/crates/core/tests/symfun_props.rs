use std::collections::{BTreeMap, HashMap};

use proptest::prelude::*;
use tauforge::partitions::{enumerate, enumerate_up_to, Partition};
use tauforge::scalars::{int, rat, Rational, Scalar};
use tauforge::symfun::{
    hook_content_spec, mn_character, schur_in_p, skew_schur_in_p, Alphabet, BiKey, BiSymFun, SymFun,
};

/// Frobenius formula: chi_nu(mu) is the coefficient of x^{nu + delta} in
/// a_delta(x) p_mu(x) with l(nu) variables.
fn frobenius_character(nu: &Partition, mu: &Partition) -> i64 {
    let n = nu.len().max(1);
    type Poly = HashMap<Vec<i64>, i64>;
    let mul = |a: &Poly, b: &Poly| -> Poly {
        let mut out = Poly::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *out.entry(e).or_insert(0) += ca * cb;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    };
    // Vandermonde as prod_{i<j} (x_i - x_j)
    let mut acc: Poly = [(vec![0; n], 1)].into_iter().collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut f = Poly::new();
            let mut e = vec![0; n];
            e[i] = 1;
            f.insert(e.clone(), 1);
            e[i] = 0;
            e[j] = 1;
            f.insert(e, -1);
            acc = mul(&acc, &f);
        }
    }
    for &k in mu.parts() {
        let mut f = Poly::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = k as i64;
            f.insert(e, 1);
        }
        acc = mul(&acc, &f);
    }
    let target: Vec<i64> = (0..n).map(|i| nu.part(i + 1) as i64 + (n - 1 - i) as i64).collect();
    acc.get(&target).copied().unwrap_or(0)
}

#[test]
fn characters_match_frobenius_formula() {
    for d in 0..=7 {
        for nu in enumerate(d) {
            for mu in enumerate(d) {
                assert_eq!(mn_character(&nu, &mu).unwrap(), frobenius_character(&nu, &mu), "{nu} at {mu}");
            }
        }
    }
}

#[test]
fn character_orthogonality() {
    for d in 0..=7 {
        let parts = enumerate(d);
        for nu in &parts {
            for rho in &parts {
                let mut s = int(0);
                for mu in &parts {
                    let c = mn_character(nu, mu).unwrap() * mn_character(rho, mu).unwrap();
                    s += Rational::new(c.into(), mu.z().into());
                }
                assert_eq!(s, if nu == rho { int(1) } else { int(0) }, "{nu} {rho}");
            }
        }
    }
}

#[test]
fn principal_specialization_matches_hook_content() {
    let a = Alphabet::principal();
    for nu in enumerate_up_to(8) {
        assert_eq!(schur_in_p(&nu).specialize(&a).unwrap(), hook_content_spec(&nu), "{nu}");
    }
}

/// Schur-basis element as a map partition -> integer multiplicity.
type SchurSum = BTreeMap<Partition, i64>;

/// Pieri: s_lambda h_k = sum over horizontal k-strips.
fn pieri(lambda: &Partition, k: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let len = lambda.len() + 1;
    let mut cur = vec![0u32; len];
    fn rec(i: usize, left: u32, lambda: &Partition, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == cur.len() {
            if left == 0 {
                out.push(Partition::new(cur.iter().enumerate().map(|(j, a)| lambda.part(j + 1) + a).collect()));
            }
            return;
        }
        // row i may grow up to lambda_{i-1} - lambda_i (unbounded on the first row)
        let cap = if i == 0 { left } else { (lambda.part(i) - lambda.part(i + 1)).min(left) };
        for a in 0..=cap {
            cur[i] = a;
            rec(i + 1, left - a, lambda, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, k, lambda, &mut cur, &mut out);
    out
}

fn times_h(f: &SchurSum, k: u32) -> SchurSum {
    let mut out = SchurSum::new();
    for (lam, c) in f {
        for nu in pieri(lam, k) {
            *out.entry(nu).or_insert(0) += c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            let sign = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

/// s_rho * s_nu in the Schur basis, with s_nu = det(h_{nu_i - i + j}) and Pieri.
fn schur_product(rho: &Partition, nu: &Partition) -> SchurSum {
    let n = nu.len();
    let mut out = SchurSum::new();
    for (perm, sign) in permutations(n) {
        let mut ks = Vec::new();
        let mut ok = true;
        for (i, &j) in perm.iter().enumerate() {
            let k = nu.part(i + 1) as i64 - i as i64 + j as i64;
            if k < 0 {
                ok = false;
                break;
            }
            ks.push(k as u32);
        }
        if !ok {
            continue;
        }
        let mut f: SchurSum = [(rho.clone(), 1)].into_iter().collect();
        for k in ks {
            if k > 0 {
                f = times_h(&f, k);
            }
        }
        for (lam, c) in f {
            *out.entry(lam).or_insert(0) += sign * c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

#[test]
fn skew_schur_matches_littlewood_richardson() {
    for mu in enumerate_up_to(6) {
        for rho in mu.subpartitions() {
            let d = mu.size() - rho.size();
            let mut expected: SymFun<Rational> = SymFun::zero();
            for nu in enumerate(d) {
                let c = schur_product(&rho, &nu).get(&mu).copied().unwrap_or(0);
                if c != 0 {
                    expected = expected.add(&schur_in_p(&nu).scale(&int(c)));
                }
            }
            assert_eq!(skew_schur_in_p(&mu, &rho), expected, "{mu}/{rho}");
        }
    }
}

#[test]
fn cauchy_identity() {
    for d in 0..=6u32 {
        let mut lhs: BiSymFun<Rational> = BiSymFun::zero();
        for nu in enumerate_up_to(d) {
            let s = schur_in_p(&nu);
            lhs = lhs.add(&BiSymFun::from_plus(&s).mul(&BiSymFun::from_minus(&s)));
        }
        // exp(sum p_n(x) p_n(y) / n) with the bidegree bound |mu+| <= d
        let mut g: SymFun<Rational> = SymFun::zero();
        for n in 1..=d {
            g = g.add(&SymFun::monomial(Partition::new(vec![n]), rat(1, n as i64)));
        }
        let e = SymFun::graded_exp(&g, d).unwrap();
        let mut rhs: BiSymFun<Rational> = BiSymFun::zero();
        for (mu, c) in e.terms() {
            rhs = rhs.add(&BiSymFun::monomial(mu.clone(), mu.clone(), c.clone()));
        }
        let lhs = lhs.filter(|k: &BiKey| k.plus.size() <= d && k.minus.size() <= d);
        assert_eq!(lhs, rhs, "d = {d}");
    }
}

#[test]
fn skew_identity_cases() {
    for mu in enumerate_up_to(6) {
        assert_eq!(skew_schur_in_p(&mu, &mu), SymFun::one());
    }
}

fn symfun_strategy() -> impl Strategy<Value = SymFun<Rational>> {
    let parts = enumerate_up_to(6);
    prop::collection::vec((0..parts.len(), -5i64..=5, 1i64..=4), 0..8).prop_map(move |v| {
        let mut f = SymFun::one();
        for (i, n, d) in v {
            if !parts[i].is_empty() {
                f = f.add(&SymFun::monomial(parts[i].clone(), rat(n, d)));
            }
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn exp_inverts_log(f in symfun_strategy()) {
        let g = SymFun::graded_log(&f, 6).unwrap();
        let back = SymFun::graded_exp(&g, 6).unwrap();
        prop_assert_eq!(back, f.truncate(6));
    }
}

#[test]
fn product_examples() {
    let s1 = schur_in_p(&Partition::from([1]));
    assert_eq!(s1.mul(&s1), SymFun::monomial(Partition::from([1, 1]), int(1)));
}
