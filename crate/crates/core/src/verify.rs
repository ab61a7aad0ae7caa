//! Named verification suites. Each suite is a list of checks with a pass flag
//! and, on failure, the first nonzero residual.

use serde_json::{json, Value};
use thiserror::Error;

use crate::fock::{
    apply_alpha, apply_alpha0, apply_gamma, apply_h, apply_k, apply_psi, apply_r, certified_eq, formal_gamma,
    hirota_vector_check, Engine, FockState, FockVector, Lifted, Op, Sign,
};
use crate::partitions::{enumerate_up_to, Partition};
use crate::quantumdim::{
    macmahon_v_adic, w_one_checked, w_one_product, w_two_checked, w_two_key, w_two_vev, w_two_vev_printed,
};
use crate::scalars::{
    bracket, int, rat, rational_to_string, v_adic_series, ExactQ, Field, NumericQ, QContext, RatFunV, Rational, RootQ,
    RootRatFun, Scalar,
};
use crate::symfun::{skew_schur_in_p, Alphabet, BiSymFun, SymFun};
use crate::tau::{
    connected_coefficient, kappa_twist_check, kp_hirota_pde_check, kp_tau_direct, kp_tau_vev, toda_constant,
    toda_equation_check, toda_shift_formula, toda_tau_sequence, toric_toda_sequence, trivial_toda_sequence,
    two_partition_direct, two_partition_vev, CheckReport, TauSeries, TodaSequence, TwoPartition,
};

pub const SUITES: [&str; 10] = [
    "fermion-comm",
    "skew-schur-vev",
    "wmu-identities",
    "key-identity",
    "vev-remark",
    "translation",
    "hirota-vector",
    "kp-pde",
    "toda-eq",
    "route-agreement",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?} (expected one of: {list}, all)", list = SUITES.join(", "))]
    UnknownSuite(String),
}

/// Sizes shared by the suites. `cutoff` bounds the energy window of Fock
/// checks, `degree` the tau series, `max_size` the partition tables and
/// `order` the `v`-adic precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub max_size: u32,
    pub degree: u32,
    pub cutoff: u32,
    pub order: i64,
}

impl Default for Params {
    fn default() -> Self {
        Params { max_size: 6, degree: 4, cutoff: 10, order: 8 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub check: String,
    pub params: Value,
    pub certified_window: Value,
    /// Number of individual equalities compared.
    pub compared: usize,
    /// `"0"` on success, otherwise the first nonzero residual or an error.
    pub max_residual: String,
    pub pass: bool,
    pub note: Option<String>,
}

impl Check {
    fn new(check: &str, params: Value, window: Value) -> Self {
        Check {
            check: check.to_string(),
            params,
            certified_window: window,
            compared: 0,
            max_residual: "0".into(),
            pass: true,
            note: None,
        }
    }

    fn fail(&mut self, residual: String) {
        if self.pass {
            self.max_residual = residual;
        }
        self.pass = false;
    }

    fn count(&mut self, ok: bool, residual: impl FnOnce() -> String) {
        self.compared += 1;
        if !ok {
            self.fail(residual());
        }
    }

    fn error(check: &str, params: Value, e: impl std::fmt::Display) -> Self {
        let mut c = Check::new(check, params, Value::Null);
        c.fail(format!("error: {e}"));
        c
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.note = Some(s.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "check": self.check,
            "params": self.params,
            "certified_window": self.certified_window,
            "compared": self.compared,
            "max_residual": self.max_residual,
            "pass": self.pass,
        });
        if let Some(n) = &self.note {
            v["note"] = json!(n);
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "pass": self.pass(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn run_suite(name: &str, p: &Params) -> Result<SuiteReport, VerifyError> {
    let checks = match name {
        "fermion-comm" => fermion_comm(p.cutoff, 4),
        "skew-schur-vev" => skew_schur_vev(p.max_size),
        "wmu-identities" => wmu_identities(p.max_size),
        "key-identity" => key_identity(p.max_size),
        "vev-remark" => vev_remark(p.max_size.min(4), p.order),
        "translation" => translation(p.max_size, &[1, 2, 3]),
        "hirota-vector" => hirota_vector(p.cutoff, &[-1, 1], &[rat(1, 2), rat(2, 3)]),
        "kp-pde" => kp_pde(p.degree, p.degree.max(6), &[-2, -1, 0, 1], &[rat(1, 2), rat(2, 3), int(3)]),
        "toda-eq" => toda_eq(p.degree),
        "route-agreement" => route_agreement(p.degree),
        _ => return Err(VerifyError::UnknownSuite(name.to_string())),
    };
    Ok(SuiteReport { suite: name.to_string(), checks })
}

/// Suite names from a `--suite` argument: a name, a comma list, or `all`.
pub fn parse_suites(arg: &str) -> Result<Vec<&'static str>, VerifyError> {
    if arg == "all" {
        return Ok(SUITES.to_vec());
    }
    arg.split(',')
        .map(|s| {
            SUITES.iter().copied().find(|&n| n == s.trim()).ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
        })
        .collect()
}

fn show<S: Scalar>(x: &S) -> String {
    match x.to_json() {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

fn abs(r: &Rational) -> Rational {
    if *r < int(0) {
        -r.clone()
    } else {
        r.clone()
    }
}

fn half_integers(max_twice: i64) -> Vec<Rational> {
    (-max_twice..=max_twice).filter(|t| t % 2 != 0).map(|t| rat(t, 2)).collect()
}

/// `{psi+_r, psi-_s} = delta_{r,-s}`, `{psi+-_r, psi+-_s} = 0` and
/// `[alpha_m, alpha_n] = m delta_{m,-n}` on charge-0 states of energy at most
/// `e_max`, `|m|, |n| <= m_max`, `|r|, |s| <= m_max + 1/2`.
pub fn fermion_comm(e_max: u32, m_max: i64) -> Vec<Check> {
    let params = json!({ "e_max": e_max, "m_max": m_max, "charge": 0 });
    let rs = half_integers(2 * m_max + 1);
    let basis: Vec<FockVector<Rational>> =
        enumerate_up_to(e_max).into_iter().map(|mu| FockVector::basis(FockState::new(0, mu), e_max)).collect();
    let mut fermi = Check::new("psi anticommutators", params.clone(), json!(e_max));
    let mut bose = Check::new("alpha commutators", params, json!(e_max));
    for v in &basis {
        let size = v.max_energy() as i64;
        for r in &rs {
            for s in &rs {
                let reach: i64 = (abs(r) + abs(s)).ceil().to_integer().try_into().unwrap_or(i64::MAX);
                if size > e_max as i64 - reach {
                    continue;
                }
                let psi = |sign, x: &Rational, w: &FockVector<Rational>| apply_psi(sign, x, w);
                let run = || -> Result<(FockVector<Rational>, [FockVector<Rational>; 2]), crate::fock::FockError> {
                    let mixed = psi(Sign::Plus, r, &psi(Sign::Minus, s, v)?)?.add(&psi(
                        Sign::Minus,
                        s,
                        &psi(Sign::Plus, r, v)?,
                    )?);
                    let mut same = Vec::new();
                    for sign in [Sign::Plus, Sign::Minus] {
                        same.push(psi(sign, r, &psi(sign, s, v)?)?.add(&psi(sign, s, &psi(sign, r, v)?)?));
                    }
                    Ok((mixed, [same[0].clone(), same[1].clone()]))
                };
                match run() {
                    Ok((mixed, same)) => {
                        let rhs = if r + s == int(0) { v.clone() } else { FockVector::zero(0, e_max) };
                        let ok = certified_eq(&mixed, &rhs).is_some_and(|w| w >= size);
                        fermi.count(ok, || format!("{{psi+_{r}, psi-_{s}}} on {}", v.dump().trim()));
                        for (k, x) in same.iter().enumerate() {
                            fermi
                                .count(x.is_zero(), || format!("{{psi_{r}, psi_{s}}} sign {k} on {}", v.dump().trim()));
                        }
                    }
                    Err(e) => fermi.fail(format!("error: {e}")),
                }
            }
        }
        for m in (-m_max..=m_max).filter(|&m| m != 0) {
            for n in (-m_max..=m_max).filter(|&n| n != 0) {
                if size + m.abs() + n.abs() > e_max as i64 {
                    continue;
                }
                let lhs = apply_alpha(m, &apply_alpha(n, v)).sub(&apply_alpha(n, &apply_alpha(m, v)));
                let rhs = if m + n == 0 { v.scale_by(&int(m)) } else { FockVector::zero(0, e_max) };
                bose.count(lhs == rhs, || format!("[alpha_{m}, alpha_{n}] on {}", v.dump().trim()));
            }
        }
    }
    vec![fermi, bose]
}

/// `<mu|Y_-(x)|nu> = s_{mu/nu}(x)` and `<nu|Y_+(x)|mu> = s_{mu/nu}(x)` as
/// polynomials in `p_n(x)`, for `|mu|, |nu| <= max_size`.
pub fn skew_schur_vev(max_size: u32) -> Vec<Check> {
    let params = json!({ "max_size": max_size });
    let ctx = ExactQ;
    let lifted = Lifted { inner: &ctx as &dyn QContext<RatFunV> };
    let engine = Engine::new(max_size, max_size, &lifted);
    let mut out = Vec::new();
    for (sign, name) in [(Sign::Minus, "<mu|Y_-|nu> = s_{mu/nu}"), (Sign::Plus, "<nu|Y_+|mu> = s_{mu/nu}")] {
        let word = match formal_gamma(sign, true, &ctx, max_size, &int(0)) {
            Ok(g) => vec![g],
            Err(e) => {
                out.push(Check::error(name, params.clone(), e));
                continue;
            }
        };
        let mut c = Check::new(name, params.clone(), json!(max_size));
        for mu in enumerate_up_to(max_size) {
            for nu in enumerate_up_to(max_size) {
                let (bra, ket) = match sign {
                    Sign::Minus => (mu.clone(), nu.clone()),
                    Sign::Plus => (nu.clone(), mu.clone()),
                };
                let expected = BiSymFun::from_plus(&skew_schur_in_p(&mu, &nu).map(RatFunV::from_rational));
                match engine.matrix_element(&FockState::new(0, bra), &word, &FockState::new(0, ket)) {
                    Ok(got) => c.count(got.value == expected, || format!("mu = {mu}, nu = {nu}")),
                    Err(e) => c.fail(format!("mu = {mu}, nu = {nu}: {e}")),
                }
            }
        }
        out.push(c);
    }
    out
}

/// Product formula, principal specialization and hook-content routes for
/// `W_mu`, `|mu| <= max_size`.
pub fn wmu_identities(max_size: u32) -> Vec<Check> {
    let mut c = Check::new("W_mu: product = spec 1 = spec 2", json!({ "max_size": max_size }), json!(max_size));
    for mu in enumerate_up_to(max_size) {
        match w_one_checked(&mu) {
            Ok(_) => c.count(true, String::new),
            Err(e) => c.count(false, || e.to_string()),
        }
    }
    vec![c]
}

/// Key formula vs E-alphabet route, symmetry and reduction of `W_{mu,nu}`
/// for `|mu| + |nu| <= max_size`.
pub fn key_identity(max_size: u32) -> Vec<Check> {
    let params = json!({ "max_size": max_size });
    let mut routes = Check::new("W_{mu,nu}: key sum = E-alphabet", params.clone(), json!(max_size));
    let mut symmetry = Check::new("W_{mu,nu} = W_{nu,mu}", params.clone(), json!(max_size));
    let mut reduction = Check::new("W_{mu,()} = W_mu", params, json!(max_size));
    for mu in enumerate_up_to(max_size) {
        for nu in enumerate_up_to(max_size - mu.size()) {
            match w_two_checked(&mu, &nu) {
                Ok(w) => {
                    routes.count(true, String::new);
                    if mu < nu {
                        continue;
                    }
                    match w_two_key(&nu, &mu) {
                        Ok(t) => symmetry.count(t == w.value, || format!("mu = {mu}, nu = {nu}")),
                        Err(e) => symmetry.fail(e.to_string()),
                    }
                }
                Err(e) => routes.count(false, || e.to_string()),
            }
        }
        match w_two_key(&mu, &Partition::empty()) {
            Ok(w) => reduction.count(w == w_one_product(&mu), || format!("mu = {mu}")),
            Err(e) => reduction.fail(e.to_string()),
        }
    }
    vec![routes, symmetry, reduction]
}

/// Fock evaluation of `W_{nu+,nu-}` through `v^order`, for
/// `|nu+| + |nu-| <= max_total`. The word `<nu+|q^K Y_-(A) Y_+(A) q^K|nu->`
/// must reproduce the key sum; the word with `Y_+` left of `Y_-` must give the
/// key sum times `prod_k (1 - q^k)^{-k}`.
pub fn vev_remark(max_total: u32, order: i64) -> Vec<Check> {
    let params = json!({ "max_total": max_total, "order": order, "alphabet": "(-q^1/2, -q^3/2, ...)" });
    let mut direct = Check::new("<nu+|q^K Y_- Y_+ q^K|nu-> = W_{nu+,nu-}", params.clone(), json!(order));
    let mut printed = Check::new("<nu+|q^K Y_+ Y_- q^K|nu-> = MacMahon * W_{nu+,nu-}", params, json!(order));
    let macmahon = macmahon_v_adic(order + 20);
    for plus in enumerate_up_to(max_total) {
        for minus in enumerate_up_to(max_total - plus.size()) {
            let key = match w_two_key(&plus, &minus) {
                Ok(k) => k,
                Err(e) => {
                    direct.fail(e.to_string());
                    continue;
                }
            };
            let label = || format!("nu+ = {plus}, nu- = {minus}");
            match w_two_vev(&plus, &minus, order) {
                Ok(v) => direct.count(v.agrees_through(&v_adic_series(&key, order), order), label),
                Err(e) => direct.fail(format!("{}: {e}", label())),
            }
            let expected = macmahon.mul(&v_adic_series(&key, order + 20)).truncate(order);
            match w_two_vev_printed(&plus, &minus, order) {
                Ok(v) => printed.count(v.agrees_through(&expected, order), label),
                Err(e) => printed.fail(format!("{}: {e}", label())),
            }
        }
    }
    vec![direct, printed]
}

/// `K`, `H`, `[R, Gamma_+-] = 0` and `R^{-n} K R^n = K + nH + (n^2/2) alpha_0
/// + n(4n^2 - 1)/24` on charge-0 states of energy at most `max_energy`.
pub fn translation(max_energy: u32, ns: &[i64]) -> Vec<Check> {
    let params = json!({ "max_energy": max_energy, "n": ns, "charge": 0 });
    let mut k = Check::new("K|mu> = (kappa/2)|mu>", params.clone(), json!(max_energy));
    let mut h = Check::new("H|mu> = |mu| |mu>", params.clone(), json!(max_energy));
    let mut comm = Check::new("[R, Gamma_+-(t)] = 0", params.clone(), json!(max_energy));
    let mut tr = Check::new("R^-n K R^n = K + nH + (n^2/2)alpha_0 + n(4n^2-1)/24", params.clone(), json!(max_energy));
    let t: Vec<Rational> = vec![int(1), rat(-1, 2), rat(1, 3), int(2)];
    for mu in enumerate_up_to(max_energy) {
        let v: FockVector<Rational> = FockVector::basis(FockState::new(0, mu.clone()), max_energy + 8);
        k.count(apply_k(&v) == v.scale_by(&rat(mu.kappa(), 2)), || format!("mu = {mu}"));
        h.count(apply_h(&v) == v.scale_by(&int(mu.size() as i64)), || format!("mu = {mu}"));
        for sign in [Sign::Plus, Sign::Minus] {
            let a = apply_r(1, &apply_gamma(sign, &t, false, 0, &v));
            let b = apply_gamma(sign, &t, false, 0, &apply_r(1, &v));
            comm.count(a == b, || format!("mu = {mu}, {sign:?}"));
        }
        for &n in ns {
            let lhs = apply_r(-n, &apply_k(&apply_r(n, &v)));
            let rhs = apply_k(&v)
                .add(&apply_h(&v).scale_by(&int(n)))
                .add(&apply_alpha0(&v).scale_by(&rat(n * n, 2)))
                .add(&v.scale_by(&rat(n * (4 * n * n - 1), 24)));
            tr.count(lhs == rhs, || format!("n = {n}, mu = {mu}"));
        }
    }
    let constants: Vec<String> = ns.iter().map(|&n| rational_to_string(&rat(n * (4 * n * n - 1), 24))).collect();
    let mut consts = Check::new("n(4n^2-1)/24 for n = 1, 2, 3", params, Value::Null);
    consts.count(constants == ["1/8", "5/4", "35/8"] || ns != [1, 2, 3], || constants.join(", "));
    vec![k, h, comm, tr.note(format!("constants: {}", constants.join(", "))), consts]
}

fn hirota_one(cutoff: u32, r: i64, q: &Rational) -> Check {
    let params = json!({ "r": r, "q": rational_to_string(q), "cutoff": cutoff + 1 });
    let name = "Hirota vector condition for q^{(r+1)K} Y_-(A)|0>";
    let run = || -> Result<Check, String> {
        let ctx = NumericQ::new(q.clone()).map_err(|e| e.to_string())?;
        let e = cutoff + 1;
        let engine = Engine::new(e, 0, &ctx);
        let y = Op::y(Sign::Minus, &Alphabet::negative_half(), &ctx, e).map_err(|e| e.to_string())?;
        let word = vec![Op::QK(int(r + 1)), y];
        let v = engine.apply_word(&word, &FockVector::vacuum(0, e)).map_err(|e| e.to_string())?;
        let report = hirota_vector_check(&v).map_err(|e| e.to_string())?;
        let mut c = Check::new(name, params.clone(), json!(report.window));
        c.compared = report.checked_pairs;
        if let Some((a, b, x)) = report.residuals.first() {
            c.fail(format!("<{a}| x <{b}|: {}", show(x)));
        }
        Ok(c)
    };
    run().unwrap_or_else(|e| Check::error(name, params, e))
}

/// The bilinear vector condition on `q^{(r+1)K} Y_-(A)|0>` with `q`
/// specialized, for component energy sums up to `cutoff`; plus a negative
/// control that must be rejected.
pub fn hirota_vector(cutoff: u32, rs: &[i64], qs: &[Rational]) -> Vec<Check> {
    let mut out = Vec::new();
    for &r in rs {
        for q in qs {
            out.push(hirota_one(cutoff, r, q));
        }
    }
    let bad = FockVector::from_terms(
        0,
        6,
        [(FockState::vacuum(0), int(1)), (FockState::new(0, Partition::from([2, 2])), int(1))],
    );
    let mut control = Check::new("negative control |0> + |(2,2)> is rejected", json!({}), Value::Null);
    match hirota_vector_check(&bad) {
        Ok(report) => control.count(!report.pass(), || "no residual found".into()),
        Err(e) => control.fail(e.to_string()),
    }
    out.push(control);
    out
}

fn from_report(name: &str, params: Value, report: Result<CheckReport, impl std::fmt::Display>) -> Check {
    match report {
        Ok(r) => {
            let mut c = Check::new(name, params, json!(r.checked_through));
            c.compared = r.coefficients_checked;
            if let Some((k, x)) = r.nonzero.first() {
                c.fail(format!("p+{} p-{}: {x}", k.plus, k.minus));
            }
            c
        }
        Err(e) => Check::error(name, params, e),
    }
}

fn kp_series<T: Scalar>(r: &Rational, degree: u32, ctx: &dyn QContext<T>) -> Result<TauSeries<T>, String> {
    crate::tau::kp_tau_series(r, degree, ctx).map_err(|e| e.to_string())
}

/// First KP equation on the one-partition series: exact in `q` at
/// `degree_exact` for `r` in `{-1, 1}`, and at `degree_numeric` for each `r`
/// in `rs` and each specialized `q`. Also the orbit example
/// `<0|Gamma_+(t) Gamma_-(1, 0, ...)|0> = e^{t_1}` and the rejected `1 + t_1^2`.
pub fn kp_pde(degree_exact: u32, degree_numeric: u32, rs: &[i64], qs: &[Rational]) -> Vec<Check> {
    let mut out = Vec::new();
    let name = "(D1^4 + 3D2^2 - 4D1D3) tau.tau = 0";
    for r in [-1, 1] {
        let params = json!({ "r": r, "degree": degree_exact, "q": "exact" });
        out.push(from_report(
            name,
            params,
            kp_series(&int(r), degree_exact, &ExactQ).and_then(|t| kp_hirota_pde_check(&t).map_err(|e| e.to_string())),
        ));
    }
    for &r in rs {
        for q in qs {
            let params = json!({ "r": r, "degree": degree_numeric, "q": rational_to_string(q) });
            let report = NumericQ::new(q.clone())
                .map_err(|e| e.to_string())
                .and_then(|ctx| kp_series(&int(r), degree_numeric, &ctx))
                .and_then(|t| kp_hirota_pde_check(&t).map_err(|e| e.to_string()));
            out.push(from_report(name, params, report));
        }
    }
    let orbit = SymFun::graded_exp(&SymFun::p(1), 6).map(|f: SymFun<Rational>| TauSeries::one_family(6, &f));
    out.push(from_report(
        "orbit example exp(t_1)",
        json!({ "degree": 6 }),
        orbit.map_err(|e| e.to_string()).and_then(|t| kp_hirota_pde_check(&t).map_err(|e| e.to_string())),
    ));
    let bad: SymFun<Rational> = SymFun::from_terms([(Partition::empty(), int(1)), (Partition::from([1, 1]), int(1))]);
    let mut control = Check::new("negative control 1 + t_1^2 is rejected", json!({ "degree": 4 }), json!(0));
    match kp_hirota_pde_check(&TauSeries::one_family(4, &bad)) {
        Ok(r) => control.count(!r.pass(), || "zero residual".into()),
        Err(e) => control.fail(e.to_string()),
    }
    out.push(control);
    out
}

/// `tau_0 -> tau_0 (1 + t+_1 t-_1)`
fn perturbed(seq: &TodaSequence<RootRatFun>) -> TodaSequence<RootRatFun> {
    let mut bad = seq.clone();
    if let Some(t) = bad.taus.get_mut(&0) {
        let one = Partition::from([1]);
        let factor = BiSymFun::one().add(&BiSymFun::monomial(one.clone(), one, RootRatFun::one()));
        t.terms = t.terms.mul_truncated(&factor, t.degree);
    }
    bad
}

/// First 2-Toda equation for the `r = 2` Hodge sequence and the toric
/// sequence, charges `-1, 0, 1`, with the constant calibrated on the trivial
/// sequence.
pub fn toda_eq(degree: u32) -> Vec<Check> {
    let ctx = RootQ;
    let mut out = Vec::new();
    let calibration = trivial_toda_sequence(-1, 1, degree.max(2), &ctx).and_then(|s| toda_constant(&s, 0));
    let c = match calibration {
        Ok(c) => c,
        Err(e) => return vec![Check::error("calibrate c on <n|Gamma_+ Gamma_-|n>", json!({ "degree": degree }), e)],
    };
    let mut cal = Check::new("calibrate c on <n|Gamma_+ Gamma_-|n>", json!({ "degree": degree }), Value::Null);
    cal.compared = 1;
    cal = cal.note(format!("c = {}", show(&c)));
    out.push(cal);
    let name = "tau_n d+d- tau_n - d+tau_n d-tau_n = c tau_{n+1} tau_{n-1}";
    let trivial = trivial_toda_sequence(-2, 2, degree, &ctx);
    out.push(from_report(
        name,
        json!({ "sequence": "trivial", "n": [-1, 0, 1], "degree": degree }),
        trivial.and_then(|s| toda_equation_check(&s, &c)),
    ));
    let hodge = toda_tau_sequence(&int(2), -1, 1, degree, &ctx);
    let toric = toric_toda_sequence(-1, 1, degree, &ctx);
    for (label, seq) in [("hodge r = 2", hodge), ("toric", toric)] {
        let params = json!({ "sequence": label, "n": [-1, 0, 1], "degree": degree });
        match seq {
            Ok(seq) => {
                out.push(from_report(name, params.clone(), toda_equation_check(&seq, &c)));
                let mut control = Check::new("negative control tau_0 (1 + t+_1 t-_1) is rejected", params, Value::Null);
                match toda_equation_check(&perturbed(&seq), &c) {
                    Ok(r) => control.count(!r.pass(), || "zero residual".into()),
                    Err(e) => control.fail(e.to_string()),
                }
                out.push(control);
            }
            Err(e) => out.push(Check::error(name, params, e)),
        }
    }
    out
}

fn agree<T: Scalar>(
    name: &str,
    params: Value,
    a: Result<TauSeries<T>, String>,
    b: Result<TauSeries<T>, String>,
) -> Check {
    match (a, b) {
        (Ok(a), Ok(b)) => {
            let mut c = Check::new(name, params, json!(a.degree));
            c.compared = a.terms.len().max(b.terms.len());
            if a.terms != b.terms {
                let diff = a.terms.sub(&b.terms);
                let first = diff.terms().next().map(|(k, x)| format!("p+{} p-{}: {}", k.plus, k.minus, show(x)));
                c.fail(first.unwrap_or_default());
            }
            c
        }
        (Err(e), _) | (_, Err(e)) => Check::error(name, params, e),
    }
}

fn s<T, E: std::fmt::Display>(x: Result<T, E>) -> Result<T, String> {
    x.map_err(|e| e.to_string())
}

/// Shift formula for charges `n = 1, 2` at `r = 2` and on the toric series.
pub fn shift_formula(degree: u32) -> Vec<Check> {
    let ctx = RootQ;
    let mut out = Vec::new();
    for (label, shape) in
        [("hodge r = 2", TwoPartition::hodge(&int(2)).expect("r != 0")), ("toric", TwoPartition::toric())]
    {
        let base = s(two_partition_direct(&shape, degree, &ctx));
        for n in [1, 2] {
            let params = json!({ "series": label, "n": n, "degree": degree });
            let shifted = base.clone().and_then(|b| s(toda_shift_formula(&shape, n, &b, &ctx)));
            out.push(agree(
                "charge-n vev = prefactor * rescaled base",
                params,
                s(two_partition_vev(&shape, n, degree, &ctx)),
                shifted,
            ));
        }
    }
    out
}

/// Exact agreement of the direct partition sums with the Fock vevs, the shift
/// formula, the twist symmetry, and the first connected coefficient.
pub fn route_agreement(degree: u32) -> Vec<Check> {
    let mut out = Vec::new();
    let name = "direct sum = Fock vev";
    for r in -2..=2 {
        let params = json!({ "series": "kp", "r": r, "degree": degree });
        out.push(agree(
            name,
            params,
            s(kp_tau_direct(&int(r), degree, &ExactQ)),
            s(kp_tau_vev(&int(r), degree, &ExactQ)),
        ));
    }
    let half = rat(1, 2);
    out.push(agree(
        name,
        json!({ "series": "kp", "r": "1/2", "degree": degree }),
        s(kp_tau_direct(&half, degree, &RootQ)),
        s(kp_tau_vev(&half, degree, &RootQ)),
    ));
    let d2 = degree.min(4);
    for (label, shape) in [
        ("toric", Ok(TwoPartition::toric())),
        ("hodge r = 2", TwoPartition::hodge(&int(2))),
        ("hodge r = -1/2", TwoPartition::hodge(&rat(-1, 2))),
    ] {
        let params = json!({ "series": label, "n": 0, "degree": d2 });
        match shape {
            Ok(shape) => out.push(agree(
                name,
                params,
                s(two_partition_direct(&shape, d2, &RootQ)),
                s(two_partition_vev(&shape, 0, d2, &RootQ)),
            )),
            Err(e) => out.push(Check::error(name, params, e)),
        }
    }
    out.extend(shift_formula(degree.min(3)));
    for r in -2..=1 {
        let params = json!({ "r": r, "degree": degree });
        let mut c = Check::new(
            "bar(tau) = tau with (r+1) -> -(r+1), bar alphabet = tau with p -> -p",
            params.clone(),
            json!(degree),
        );
        match kappa_twist_check(&int(r), degree) {
            Ok(()) => c.compared = 2,
            Err(e) => c.fail(e.to_string()),
        }
        out.push(c);
    }
    let expected = RatFunV::from_laurent(bracket(1)).try_inv().expect("nonzero");
    let mut c = Check::new(
        "coefficient of p_(1) in log tau = 1/[1]",
        json!({ "r": [-2, -1, 0, 1, 2], "degree": degree }),
        Value::Null,
    );
    for r in -2..=2 {
        match kp_series(&int(r), degree.max(1), &ExactQ)
            .and_then(|t| s(connected_coefficient(&t, &Partition::from([1]))))
        {
            Ok(x) => c.count(x == expected, || format!("r = {r}: {x}")),
            Err(e) => c.fail(e),
        }
    }
    out.push(c);
    out
}

/// The canonical report document for a list of suites.
pub fn report_json(config: Value, reports: &[SuiteReport]) -> Value {
    json!({
        "schema": "tauforge.report.v1",
        "config": config,
        "pass": reports.iter().all(SuiteReport::pass),
        "suites": reports.iter().map(SuiteReport::to_json).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!(parse_suites("all").unwrap().len(), 10);
        assert_eq!(parse_suites("kp-pde,toda-eq").unwrap(), vec!["kp-pde", "toda-eq"]);
        assert!(parse_suites("nope").is_err());
        assert!(run_suite("nope", &Params::default()).is_err());
    }

    #[test]
    fn small_suites_pass() {
        let p = Params { max_size: 3, degree: 4, cutoff: 5, order: 4 };
        for name in ["fermion-comm", "skew-schur-vev", "wmu-identities", "key-identity", "translation"] {
            let r = run_suite(name, &p).unwrap();
            assert!(r.pass(), "{}", r.to_json());
        }
    }

    #[test]
    fn failing_check_keeps_first_residual() {
        let mut c = Check::new("x", json!({}), Value::Null);
        c.count(true, String::new);
        c.count(false, || "first".into());
        c.count(false, || "second".into());
        assert!(!c.pass);
        assert_eq!(c.max_residual, "first");
        assert_eq!(c.compared, 3);
    }
}
