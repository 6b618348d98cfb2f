use mzv_core::*;
use num_rational::Rational64;

fn ev() -> RealEvaluator {
    RealEvaluator::new(Precision::default())
}

fn q(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

#[test]
fn duality_suite_covers_weight_eight() {
    let reps = run_suite(&ev(), &[IdentityId::DUALITY], 8, 1, 0).unwrap();
    assert_eq!(reps.len(), 127);
    assert!(reps.iter().all(|r| r.pass));
}

#[test]
fn theorem_two_counting_contract() {
    let reps = run_suite(&ev(), &[IdentityId::THM_2], 10, 3, 1).unwrap();
    assert_eq!(reps.len(), 24);
    assert!(reps.iter().all(|r| r.pass));
}

#[test]
fn full_suite_has_no_failures() {
    let reps = run_suite(&ev(), IdentityId::all(), 9, 2, 7).unwrap();
    let summary = Summary::of(&reps);
    assert!(summary.all_passed(), "{summary}");
    for id in IdentityId::all() {
        assert!(reps.iter().any(|r| r.id == *id), "{id} has no instances");
    }
}

#[test]
fn weight_guard() {
    for id in [IdentityId::PROP_4_1_III, IdentityId::PROP_4_2_I, IdentityId::PROP_4_2_II] {
        assert!(run_suite(&ev(), &[id], 4, 1, 0).is_err());
    }
    assert!(run_suite(&ev(), &[IdentityId::THM_2], 4, 1, 0).is_ok());
}

#[test]
fn weighted_euler_example() {
    let ev = ev();
    let rep = check_identity(&ev, IdentityId::WEIGHTED_EULER, &Params::new().l(3)).unwrap();
    assert!(rep.pass);
    let four_z21 = ev.zeta_parts(&[2, 1]).unwrap().mul_i64(4);
    let four_z3 = ev.zeta_parts(&[3]).unwrap().mul_i64(4);
    assert!((four_z21 - &four_z3).abs() < ev.tolerance());
}

#[test]
fn prop_4_1_at_one_one_is_weighted_euler() {
    let ev = ev();
    let one = ev.int(1);
    let two = ev.int(2);
    for l in 3..=10 {
        let rep = check_identity(&ev, IdentityId::PROP_4_1_I, &Params::new().l(l).xy(q(1, 1), q(1, 1))).unwrap();
        assert!(rep.pass);
        let lhs = s_weighted(&ev, l, 2, &two, &one).unwrap().mul_i64(2);
        let rhs = ev.zeta_parts(&[l]).unwrap().mul_i64(l as i64 + 1);
        assert!((lhs - &rhs).abs() < ev.tolerance());
    }
}

#[test]
fn gkz_specialisations() {
    let ev = ev();
    for l in 3..=9 {
        for (id, p) in [
            (IdentityId::GKZ_PARAM, Params::new().l(l).xy(q(1, 1), q(0, 1))),
            (IdentityId::GKZ_PARAM, Params::new().l(l).xy(q(1, 1), q(1, 1))),
            (IdentityId::EULER_SUM, Params::new().l(l)),
            (IdentityId::WEIGHTED_EULER, Params::new().l(l)),
        ] {
            assert!(check_identity(&ev, id, &p).unwrap().pass, "{id} {p}");
        }
    }
}

#[test]
fn prop_4_2_ii_matches_prop_4_1_iii_at_one_one() {
    let ev = ev();
    for l in 5..=10 {
        let a = check_identity(&ev, IdentityId::PROP_4_2_II, &Params::new().l(l)).unwrap();
        let b = check_identity(&ev, IdentityId::PROP_4_1_III, &Params::new().l(l).xy(q(1, 1), q(1, 1))).unwrap();
        assert!(a.pass && b.pass);
        // Both equal 2 S_l^4(2, 1) after the vanishing factors drop out.
        let two_s4 = s_weighted(&ev, l, 4, &ev.int(2), &ev.int(1)).unwrap().mul_i64(2);
        let li = l as i64;
        let lead = ev.zeta_parts(&[l]).unwrap().mul_i64((li + 1) * (li * li - 7 * li + 18)).div_i64(12);
        let mut pairs = ev.int(0);
        for j in 3..=l - 3 {
            let w = (j as i64 - 1) * ((l - j) as i64 - 1);
            pairs += &(ev.zeta_parts(&[j]).unwrap() * &ev.zeta_parts(&[l - j]).unwrap()).mul_i64(w);
        }
        let rhs = lead - &pairs.div_i64(2);
        assert!((two_s4 - &rhs).abs() < ev.tolerance(), "l={l}");
    }
}

/// Right side of the weighted-sum expansion in hook zeta values,
/// assembled here independently of the library's identity code.
fn expansion_rhs(ev: &RealEvaluator, l: u32, n: u32, x: &Real, y: &Real) -> Real {
    let hook = |k: u32, j: u32| ev.zeta_or_zero(&MultiIndex::hook(k, j)).unwrap();
    let sign = |e: u32| if e % 2 == 0 { 1 } else { -1 };
    let k = l - n;
    let mut acc = ev.int(0);
    for j1 in 1..n {
        let j2 = n - j1;
        for k1 in 1..k {
            let k2 = k - k1;
            let term = x.powi(k1) * &y.powi(k2) * &hook(k1, j1) * &hook(k2, j2);
            acc += &term.mul_i64(sign(j2 - 1));
        }
    }
    acc + &((x.powi(k) + &y.powi(k).mul_i64(sign(n))) * &hook(k, n))
}

#[test]
fn generating_series_coefficients_match_expansion() {
    let ev = ev();
    let (x, y) = (ev.ratio(5, 8), ev.ratio(-9, 16));
    let cap = 8;
    let lhs = thm1_lhs_series(&ev, &x, &y, cap).unwrap();
    let rhs = thm1_rhs_series(&ev, &x, &y, cap).unwrap();
    let tol = ev.tolerance().mul_i64(2);
    for l in 2..=cap as u32 {
        for n in 1..l {
            let (i, j) = ((l - n) as usize, n as usize);
            let expected = expansion_rhs(&ev, l, n, &x, &y);
            assert!((rhs.coeff(i, j) - &expected).abs() < tol, "rhs l={l} n={n}");
            assert!((lhs.coeff(i, j) - &expected).abs() < tol, "lhs l={l} n={n}");
        }
    }
}

#[test]
fn double_precision_backend_runs_the_registry() {
    let ev = Evaluator::<f64>::new(());
    let reps = run_suite(&ev, &[IdentityId::SUM_FORMULA, IdentityId::THM_2, IdentityId::PROP_4_2_I], 7, 1, 3).unwrap();
    assert!(reps.iter().all(|r| r.pass), "{}", Summary::of(&reps));
}
