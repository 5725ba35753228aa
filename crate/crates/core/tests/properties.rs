use hopfvoa::exactmath::{Mat, Scalar};
use hopfvoa::hopf::{cyclic, group_algebra, symmetric3, sweedler, verify_axioms, HopfAlgebra};
use hopfvoa::schema::{hopf_from_json, hopf_to_json};
use num::BigRational;
use proptest::prelude::*;

fn scalar_in(conductor: u32) -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-6i64..=6, 1i64..=4), 1..5).prop_map(move |cs| {
        let coeffs = cs.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect();
        Scalar::from_coeffs(conductor, coeffs).unwrap()
    })
}

fn field_triple() -> impl Strategy<Value = (u32, Scalar, Scalar, Scalar)> {
    prop::sample::select(vec![1u32, 3, 4, 5, 8, 12])
        .prop_flat_map(|m| (Just(m), scalar_in(m), scalar_in(m), scalar_in(m)))
}

fn small_matrix() -> impl Strategy<Value = Mat> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        // bias towards zeros so that rank deficiency is common
        prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], r * c)
            .prop_map(move |xs| Mat::from_fn(r, c, |i, j| Scalar::from_int(xs[i * c + j])))
    })
}

fn element(h: &HopfAlgebra) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec((-3i64..=3).prop_map(Scalar::from_int), h.dim())
}

fn hopf_pair() -> impl Strategy<Value = (HopfAlgebra, Vec<Scalar>, Vec<Scalar>)> {
    prop::sample::select(vec![cyclic(3), symmetric3(), sweedler()]).prop_flat_map(|h| {
        let (a, b) = (element(&h), element(&h));
        (Just(h), a, b)
    })
}

proptest! {
    #[test]
    fn field_axioms((_m, a, b, c) in field_triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn scalar_text_round_trip((m, a, _b, _c) in field_triple()) {
        let text = a.render(m).unwrap();
        prop_assert_eq!(Scalar::parse(&text, m).unwrap(), a);
    }

    #[test]
    fn zeta_has_order_m(m in prop::sample::select(vec![1u32, 2, 3, 4, 6, 8, 12])) {
        let z = Scalar::zeta_pow(m, 1).unwrap();
        prop_assert!(z.pow(m).is_one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_nullity(a in small_matrix()) {
        let null = a.nullspace();
        prop_assert_eq!(null.len() + a.rank(), a.cols());
        for v in &null {
            prop_assert!(a.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclic_group_algebras_are_hopf(n in 1usize..=7) {
        let h = cyclic(n);
        prop_assert!(verify_axioms(&h).passed());
        prop_assert_eq!(hopf_from_json(&hopf_to_json(&h, "C")).unwrap(), h);
    }

    #[test]
    fn antipode_reverses_products((h, a, b) in hopf_pair()) {
        let ab = h.multiply(&a, &b);
        prop_assert_eq!(h.antipode(&ab), h.multiply(&h.antipode(&b), &h.antipode(&a)));
        prop_assert_eq!(h.counit(&ab), &h.counit(&a) * &h.counit(&b));
    }

    #[test]
    fn group_algebra_from_any_abelian_table(n in 1usize..=4, k in 1usize..=3) {
        // Z/n × Z/k
        let d = n * k;
        let table: Vec<Vec<usize>> = (0..d)
            .map(|i| (0..d).map(|j| ((i / k + j / k) % n) * k + (i % k + j % k) % k).collect())
            .collect();
        let labels = (0..d).map(|i| format!("g{i}")).collect();
        let h = group_algebra(&table, labels).unwrap();
        prop_assert!(verify_axioms(&h).passed());
    }
}
