use tauforge::partitions::Partition;
use tauforge::scalars::{
    bracket, int, rat, ExactQ, Field, NumericQ, QContext, RatFunV, Rational, RootQ, RootRatFun, Scalar,
};
use tauforge::symfun::{BiSymFun, SymFun};
use tauforge::tau::{
    conifold_tau, connected_coefficient, kappa_twist_check, kp_hirota_pde_check, kp_tau_direct, kp_tau_series,
    kp_tau_vev, toda_constant, toda_equation_check, toda_shift_formula, toda_tau_sequence, toric_tau,
    toric_toda_sequence, trivial_toda_sequence, two_partition_direct, two_partition_vev, ExpandU, TauSeries,
    TodaSequence, TwoPartition,
};

fn inv_bracket_1() -> RatFunV {
    RatFunV::from_laurent(bracket(1)).try_inv().unwrap()
}

#[test]
fn kp_routes_agree() {
    for r in -2..=2 {
        let d = kp_tau_direct(&int(r), 5, &ExactQ).unwrap();
        let v = kp_tau_vev(&int(r), 5, &ExactQ).unwrap();
        assert_eq!(d, v, "r = {r}");
    }
    for r in [rat(1, 2), rat(-2, 3)] {
        kp_tau_series(&r, 4, &RootQ).unwrap();
    }
    kp_tau_series(&int(3), 5, &NumericQ::new(rat(2, 3)).unwrap()).unwrap();
}

#[test]
fn conifold_is_a_schur_sum() {
    // r = -1 removes the framing: sum_nu s_nu(x) s_nu(A)
    let tau = conifold_tau(4, &ExactQ).unwrap();
    assert_eq!(tau, kp_tau_series(&int(-1), 4, &ExactQ).unwrap());
    let p1 = Partition::from([1]);
    assert_eq!(tau.coeff(&p1, &Partition::empty()), inv_bracket_1());
}

#[test]
fn two_partition_routes_agree() {
    let d = 4;
    let toric = toric_tau(d, &ExactQ).unwrap();
    assert_eq!(toric.terms, two_partition_vev(&TwoPartition::toric(), 0, d, &ExactQ).unwrap().terms);
    for r in [int(1), int(2), rat(-1, 2)] {
        let shape = TwoPartition::hodge(&r).unwrap();
        let direct = two_partition_direct(&shape, 3, &RootQ).unwrap();
        let vev = two_partition_vev(&shape, 0, 3, &RootQ).unwrap();
        assert_eq!(direct, vev, "r = {r}");
    }
}

#[test]
fn shift_formula_matches_charged_vevs() {
    // toda_tau_sequence compares every charge against the shift formula
    let seq = toda_tau_sequence(&int(2), -2, 2, 3, &RootQ).unwrap();
    assert_eq!(seq.taus.len(), 5);
    let seq = toric_toda_sequence(-2, 2, 3, &RootQ).unwrap();
    assert_eq!(seq.taus.len(), 5);
}

#[test]
fn rescaling_both_families_by_the_same_power_fails() {
    let r = int(2);
    let shape = TwoPartition::hodge(&r).unwrap();
    let d = 3;
    let ctx = RootQ;
    let base = two_partition_direct(&shape, d, &ctx).unwrap();
    let vev = two_partition_vev(&shape, 1, d, &ctx).unwrap();
    assert_eq!(toda_shift_formula(&shape, 1, &base, &ctx).unwrap(), vev);
    // x+ and x- both scaled by q^{(1/r + 1) n}
    let same = TwoPartition { a: shape.b.clone(), b: shape.b.clone() };
    let wrong = toda_shift_formula(&same, 1, &base, &ctx).unwrap();
    let wrong = wrong.scale_by(&ctx.q_pow(&((&shape.a - &shape.b) * rat(1, 8))).unwrap());
    assert_eq!(wrong.constant_term(), vev.constant_term());
    assert_ne!(wrong, vev);
}

#[test]
fn kp_hirota_exact() {
    for r in [-1, 1] {
        let tau = kp_tau_series(&int(r), 4, &ExactQ).unwrap();
        let report = kp_hirota_pde_check(&tau).unwrap();
        assert!(report.pass(), "r = {r}: {:?}", report.nonzero);
        assert_eq!(report.checked_through, 0);
    }
}

#[test]
fn kp_hirota_numeric_degree_six() {
    for q in [rat(1, 2), rat(2, 3), int(3)] {
        let ctx = NumericQ::new(q.clone()).unwrap();
        for r in [-1, 1] {
            let tau = kp_tau_series(&int(r), 6, &ctx).unwrap();
            let report = kp_hirota_pde_check(&tau).unwrap();
            assert!(report.pass(), "q = {q}, r = {r}: {:?}", report.nonzero);
            assert!(report.coefficients_checked >= 4);
        }
    }
}

#[test]
fn kp_hirota_rejects_non_tau() {
    let p = |v: &[u32]| Partition::new(v.to_vec());
    let f: SymFun<Rational> = SymFun::from_terms([(p(&[]), int(1)), (p(&[1, 1]), int(1))]);
    assert!(!kp_hirota_pde_check(&TauSeries::one_family(4, &f)).unwrap().pass());
    // perturbing a genuine tau function at degree 4 breaks it
    let tau = kp_tau_series(&int(1), 4, &ExactQ).unwrap();
    let bumped =
        TauSeries { terms: tau.terms.add(&BiSymFun::monomial(p(&[1, 1, 1, 1]), p(&[]), RatFunV::one())), ..tau };
    assert!(!kp_hirota_pde_check(&bumped).unwrap().pass());
}

fn calibrated() -> RootRatFun {
    let trivial = trivial_toda_sequence(-1, 1, 3, &RootQ).unwrap();
    toda_constant(&trivial, 0).unwrap()
}

#[test]
fn toda_constant_is_one() {
    let c = calibrated();
    assert_eq!(c, RootRatFun::one());
    let trivial = trivial_toda_sequence(-2, 2, 4, &RootQ).unwrap();
    assert!(toda_equation_check(&trivial, &c).unwrap().pass());
}

#[test]
fn toda_equation_holds() {
    let c = calibrated();
    let seq = toda_tau_sequence(&int(2), -1, 1, 3, &RootQ).unwrap();
    let report = toda_equation_check(&seq, &c).unwrap();
    assert!(report.pass(), "{:?}", report.nonzero);
    let seq = toric_toda_sequence(-2, 2, 4, &RootQ).unwrap();
    assert!(toda_equation_check(&seq, &c).unwrap().pass());
}

#[test]
fn toda_equation_detects_perturbation() {
    let c = calibrated();
    let seq: TodaSequence<RootRatFun> = toda_tau_sequence(&int(2), -1, 1, 3, &RootQ).unwrap();
    let mut bad = seq.clone();
    let tau0 = bad.taus.get_mut(&0).unwrap();
    let one = Partition::from([1]);
    tau0.terms = tau0.terms.add(&BiSymFun::monomial(one.clone(), one, RootRatFun::one()));
    assert!(!toda_equation_check(&bad, &c).unwrap().pass());
    // a wrong constant fails too
    assert!(!toda_equation_check(&seq, &c.scale(&int(2))).unwrap().pass());
}

#[test]
fn twist_symmetry() {
    for r in -3..=2 {
        kappa_twist_check(&int(r), 4).unwrap();
    }
}

#[test]
fn first_connected_coefficient() {
    let p1 = Partition::from([1]);
    for r in -2..=3 {
        let tau = kp_tau_series(&int(r), 3, &ExactQ).unwrap();
        let c = connected_coefficient(&tau, &p1).unwrap();
        assert_eq!(c, inv_bracket_1(), "r = {r}");
        let u = c.expand_u(3).unwrap();
        assert_eq!(u.coeff(-1), int(1));
        assert_eq!(u.coeff(0), int(0));
        assert_eq!(u.coeff(1), rat(-1, 24));
    }
    let tau = kp_tau_series(&rat(1, 2), 3, &RootQ).unwrap();
    let c = connected_coefficient(&tau, &p1).unwrap();
    assert_eq!(c.expand_u(1).unwrap().coeff(1), rat(-1, 24));
    assert!(connected_coefficient(&tau, &Partition::from([4])).is_err());
}
