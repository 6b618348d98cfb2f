use mzv_core::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const CAP: usize = 4;

fn exact_series(coeffs: &[(i64, i64)], zero_constant: bool) -> ExactSeries2 {
    let mut s = ExactSeries2::zero(CAP, &());
    let mut it = coeffs.iter();
    for i in 0..=CAP {
        for j in 0..=CAP - i {
            let (n, d) = *it.next().unwrap();
            if zero_constant && i + j == 0 {
                continue;
            }
            s.set(i, j, BigRational::new(BigInt::from(n), BigInt::from(d)));
        }
    }
    s
}

fn coeff_list() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..=20, 1i64..=6), (CAP + 1) * (CAP + 2) / 2)
}

fn dyadic() -> impl Strategy<Value = i64> {
    -128i64..=128
}

fn ev() -> RealEvaluator {
    RealEvaluator::new(Precision::default())
}

fn close(ev: &RealEvaluator, a: &Real, b: &Real) -> bool {
    let scale = a.abs().to_f64().max(b.abs().to_f64()).max(1.0);
    (a.clone() - b).abs().to_f64() <= ev.tolerance().to_f64() * scale
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_ring_axioms(a in coeff_list(), b in coeff_list(), c in coeff_list()) {
        let (a, b, c) = (exact_series(&a, false), exact_series(&b, false), exact_series(&c, false));
        prop_assert_eq!(a.try_add(&b).unwrap().try_add(&c).unwrap(), a.try_add(&b.try_add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        prop_assert_eq!(
            a.try_mul(&b).unwrap().try_mul(&c).unwrap(),
            a.try_mul(&b.try_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.try_mul(&b.try_add(&c).unwrap()).unwrap(),
            a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.try_mul(&ExactSeries2::one(CAP, &())).unwrap(), a.clone());
        prop_assert!(a.try_sub(&a).unwrap().terms().all(|(_, _, c)| c.is_zero()));
    }

    #[test]
    fn exp_is_a_homomorphism(a in coeff_list(), b in coeff_list()) {
        let (a, b) = (exact_series(&a, true), exact_series(&b, true));
        let lhs = a.try_add(&b).unwrap().exp().unwrap();
        let rhs = a.exp().unwrap().try_mul(&b.exp().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn linear_form_powers_match_products(a in -5i64..=5, b in -5i64..=5, m in 0u32..=5) {
        let ctx = ();
        let (ar, br) = (BigRational::from_integer(a.into()), BigRational::from_integer(b.into()));
        let direct = pow_linear_form(&ar, &br, m, CAP);
        let lin = TruncatedSeries2::linear(&LinearForm::from_ints(a, b, &ctx), CAP);
        let mut prod = ExactSeries2::one(CAP, &ctx);
        for _ in 0..m {
            prod = prod.try_mul(&lin).unwrap();
        }
        prop_assert_eq!(direct, prod);
    }

    #[test]
    fn weighted_sum_is_homogeneous(l in 3u32..=8, n_off in 0u32..6, c in dyadic(), x in dyadic(), y in dyadic()) {
        let n = 1 + n_off % (l - 1);
        let ev = ev();
        let (c, x, y) = (ev.ratio(c, 64), ev.ratio(x, 64), ev.ratio(y, 64));
        let scaled = s_weighted(&ev, l, n, &(c.clone() * &x), &(c.clone() * &y)).unwrap();
        let plain = s_weighted(&ev, l, n, &x, &y).unwrap() * &c.powi(l - n);
        prop_assert!(close(&ev, &scaled, &plain));
    }

    #[test]
    fn shifted_sum_recombines_binomially(l in 3u32..=9, n_off in 0u32..8, x in dyadic(), y in dyadic()) {
        let n = 1 + n_off % (l - 1);
        let ev = ev();
        let (x, y) = (ev.ratio(x, 64), ev.ratio(y, 64));
        let lhs = s_weighted(&ev, l, n, &(x.clone() + &y), &y).unwrap();
        let mut rhs = ev.int(0);
        for r in 0..=l - n {
            rhs += &(x.powi(r) * &y.powi(l - n - r) * &z_coeff(&ev, l, n, r).unwrap());
        }
        prop_assert!(close(&ev, &lhs, &rhs));
    }

    #[test]
    fn duality_on_random_indices(parts in prop::collection::vec(1u32..=3, 1..=5), head in 2u32..=4) {
        let mut parts = parts;
        parts.insert(0, head);
        let idx = MultiIndex::new(parts).unwrap();
        let ev = ev();
        let dual = idx.dual().unwrap();
        prop_assert_eq!(dual.weight(), idx.weight());
        prop_assert_eq!(dual.dual().unwrap(), idx.clone());
        prop_assert!(close(&ev, &ev.zeta(&idx).unwrap(), &ev.zeta(&dual).unwrap()));
    }

    #[test]
    fn stuffle_of_single_zetas(a in 2u32..=7, b in 2u32..=7) {
        let ev = ev();
        let lhs = ev.zeta_parts(&[a]).unwrap() * &ev.zeta_parts(&[b]).unwrap();
        let rhs = ev.zeta_parts(&[a, b]).unwrap() + &ev.zeta_parts(&[b, a]).unwrap() + &ev.zeta_parts(&[a + b]).unwrap();
        prop_assert!(close(&ev, &lhs, &rhs));
    }

    #[test]
    fn suite_is_deterministic_per_seed(seed in any::<u64>()) {
        prop_assert_eq!(instances(IdentityId::LEMMA_2_1, 6, 2, seed), instances(IdentityId::LEMMA_2_1, 6, 2, seed));
        for p in instances(IdentityId::LEMMA_2_1, 6, 2, seed) {
            let z = p.z.unwrap();
            prop_assert!(z.numer().abs() * 10 <= *z.denom() * 7);
            let x = p.x.unwrap();
            prop_assert!(x.numer().abs() <= 2 * *x.denom());
        }
    }
}
