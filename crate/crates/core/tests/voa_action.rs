use std::path::PathBuf;

use hopfvoa::action::{invariants_subalgebra, isotypic_decompose, verify_module_voa};
use hopfvoa::exactmath::Scalar;
use hopfvoa::fixtures;
use hopfvoa::report::Status;
use hopfvoa::voa::{spanning_check, verify_voa_window, TruncatedVoa, VoaVector};
use hopfvoa::zhu::{o_matrix, AnContext};
use hopfvoa::Error;
use proptest::prelude::*;

fn vector(v: &TruncatedVoa, max_weight: usize) -> impl Strategy<Value = VoaVector> {
    let n = v.offset(max_weight + 1);
    prop::collection::vec((0..n, -3i64..=3), 1..4)
        .prop_map(|terms| VoaVector::from_terms(terms.into_iter().map(|(i, c)| (i, Scalar::from_int(c)))))
}

#[test]
fn shipped_fixtures_match_builders() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    for (name, text) in fixtures::files() {
        let on_disk = std::fs::read_to_string(dir.join(&name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(on_disk, text, "{name} is stale; regenerate with `hopfvoa fixtures --fixtures-dir fixtures`");
    }
}

#[test]
fn rank_three_window_passes() {
    let v = TruncatedVoa::heisenberg(3, 4).unwrap();
    assert_eq!(v.dims(), &[1, 3, 9, 22, 51]);
    let r = verify_voa_window(&v, 3).unwrap();
    assert!(r.passed(), "{}", r.render());
}

#[test]
fn generators_span_each_weight() {
    let v = TruncatedVoa::heisenberg(1, 7).unwrap();
    let s = spanning_check(&v, &VoaVector::basis(v.generator(0)), 7).unwrap();
    assert_eq!(s.span_dims[..7], s.dims[..7]);
    // the top weight needs some u of weight 8, just outside the window
    assert_eq!(s.dims[7] - s.span_dims[7], 1);
    let r = s.to_report(v.window());
    assert!(r.passed());
    assert_eq!(r.status("saturated at the window top"), Some(Status::Skipped));
    assert!(spanning_check(&v, &VoaVector::zero(), 6).is_err());
}

#[test]
fn corrupted_mode_is_caught() {
    let v = TruncatedVoa::heisenberg(1, 5).unwrap();
    let a = v.generator(0);
    let bad = v.with_corrupted_entry(a, 1, a, VoaVector::basis(0).scale(&Scalar::from_int(2)));
    let r = verify_voa_window(&bad, 4).unwrap();
    assert!(!r.passed());
}

#[test]
fn parity_invariants_and_decomposition() {
    let a = fixtures::z2_parity(6);
    let (inv, r) = invariants_subalgebra(&a, 4).unwrap();
    assert!(r.passed(), "{}", r.render());
    // even-length partitions
    assert_eq!(inv.dims(), vec![1, 0, 1, 1, 3, 3, 6]);
    let (dec, _) = isotypic_decompose(&a, &[fixtures::z2_trivial(), fixtures::z2_sign()]).unwrap();
    for n in 0..=6 {
        assert_eq!(dec.multiplicities(n)[0], inv.dims()[n]);
    }
}

#[test]
fn sweedler_candidate_is_rejected() {
    let a = fixtures::sweedler_candidate(4);
    let r = verify_module_voa(&a, 3).unwrap();
    assert_eq!(r.status("vacuum and conformal vector transform by the counit"), Some(Status::Fail));
    assert_eq!(r.status("module VOA axiom"), Some(Status::Fail));
}

#[test]
fn truncation_is_not_zero() {
    let v = TruncatedVoa::heisenberg(1, 3).unwrap();
    let a = VoaVector::basis(v.generator(0));
    let top = VoaVector::basis(v.range(3).start);
    assert_eq!(v.mode(&top, -1, &a), Err(Error::Truncated));
    assert_eq!(AnContext::new(&v, 1).star(&top, &a), Err(Error::Truncated));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn vacuum_is_a_two_sided_identity(x in vector(&TruncatedVoa::heisenberg(2, 5).unwrap(), 3), n in 0usize..=2) {
        let v = TruncatedVoa::heisenberg(2, 5).unwrap();
        prop_assert_eq!(v.mode(&x, -1, &v.vacuum()).unwrap(), x.clone());
        prop_assert_eq!(AnContext::new(&v, n).star(&v.vacuum(), &x).unwrap(), x);
    }

    #[test]
    fn modes_are_bilinear(x in vector(&TruncatedVoa::heisenberg(1, 6).unwrap(), 2),
                          y in vector(&TruncatedVoa::heisenberg(1, 6).unwrap(), 2),
                          m in -2i64..=3, c in -4i64..=4) {
        let v = TruncatedVoa::heisenberg(1, 6).unwrap();
        let c = Scalar::from_int(c);
        let lhs = v.mode(&x.scale(&c).add(&y), m, &y).unwrap();
        let rhs = v.mode(&x, m, &y).unwrap().scale(&c).add(&v.mode(&y, m, &y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_is_a_representation(i in 0usize..6, j in 0usize..6,
                                  x in vector(&TruncatedVoa::heisenberg(3, 4).unwrap(), 3)) {
        let a = fixtures::s3_color(4);
        let h = a.hopf();
        let ij = h.multiply(&h.basis(i), &h.basis(j));
        prop_assert_eq!(a.act_element(&ij, &x), a.act(i, &a.act(j, &x)));
    }

    #[test]
    fn zero_mode_of_omega_is_the_grading(m in 0usize..=4) {
        let v = TruncatedVoa::heisenberg(2, 4).unwrap();
        let o = o_matrix(&v, v.omega(), m).unwrap();
        prop_assert!(o == hopfvoa::Mat::identity(v.dim(m)).scale(&Scalar::from_int(m as i64)));
    }
}
