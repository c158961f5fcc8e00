mod common;

use std::sync::Arc;

use charclass::graded::Substitution;
use charclass::{Coefficients, GradedPoly, RingPresentation, TotalClass};
use common::*;
use proptest::prelude::*;

fn check_axioms(x: &GradedPoly, y: &GradedPoly, z: &GradedPoly) -> Result<(), TestCaseError> {
    let zero = GradedPoly::zero(x.ring(), x.field());
    let one = GradedPoly::one(x.ring(), x.field());
    prop_assert_eq!(&(&(x + y) + z), &(x + &(y + z)));
    prop_assert_eq!(&(x + y), &(y + x));
    prop_assert_eq!(&(x + &zero), x);
    prop_assert!((x + &(-x)).is_zero());
    prop_assert_eq!(&(&(x * y) * z), &(x * &(y * z)));
    prop_assert_eq!(&(x * y), &(y * x));
    prop_assert_eq!(&(x * &one), x);
    prop_assert_eq!(&(x * &(y + z)), &(&(x * y) + &(x * z)));
    prop_assert!((x * &zero).is_zero());
    Ok(())
}

fn bundle_z2() -> Arc<RingPresentation> {
    let base = RingPresentation::formal_w(3, 8);
    let w = charclass::torsion::universal_sw(&base).unwrap();
    RingPresentation::proj_bundle(&w, 3, "a").unwrap()
}

fn bundle_z() -> Arc<RingPresentation> {
    let base = free_z(8);
    let f = Coefficients::Integers;
    let c = TotalClass::from_components(vec![GradedPoly::one(&base, f), gen(&base, f, "x"), gen(&base, f, "y")]).unwrap();
    RingPresentation::proj_bundle(&c, 2, "a").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn axioms_free_z2(a in raw_terms(3, 3, 5), b in raw_terms(3, 3, 5), c in raw_terms(3, 3, 5)) {
        let ring = RingPresentation::formal_w(3, 8);
        let f = Coefficients::Z2;
        check_axioms(&build(&ring, f, &a), &build(&ring, f, &b), &build(&ring, f, &c))?;
    }

    #[test]
    fn axioms_free_integers(a in raw_terms(3, 3, 5), b in raw_terms(3, 3, 5), c in raw_terms(3, 3, 5)) {
        let ring = free_z(8);
        let f = Coefficients::Integers;
        check_axioms(&build(&ring, f, &a), &build(&ring, f, &b), &build(&ring, f, &c))?;
    }

    #[test]
    fn axioms_truncated_power(a in raw_terms(1, 9, 5), b in raw_terms(1, 9, 5), c in raw_terms(1, 9, 5)) {
        let ring = RingPresentation::truncated_power("a", 7).unwrap();
        let f = Coefficients::Z2;
        check_axioms(&build(&ring, f, &a), &build(&ring, f, &b), &build(&ring, f, &c))?;
    }

    #[test]
    fn axioms_proj_bundle_z2(a in raw_terms(4, 3, 4), b in raw_terms(4, 3, 4), c in raw_terms(4, 3, 4)) {
        let ring = bundle_z2();
        let f = Coefficients::Z2;
        check_axioms(&build(&ring, f, &a), &build(&ring, f, &b), &build(&ring, f, &c))?;
    }

    #[test]
    fn axioms_proj_bundle_integers(a in raw_terms(4, 3, 4), b in raw_terms(4, 3, 4), c in raw_terms(4, 3, 4)) {
        let ring = bundle_z();
        let f = Coefficients::Integers;
        check_axioms(&build(&ring, f, &a), &build(&ring, f, &b), &build(&ring, f, &c))?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normal_form_is_idempotent(a in raw_terms(4, 4, 6)) {
        for (ring, f) in [(bundle_z2(), Coefficients::Z2), (bundle_z(), Coefficients::Integers)] {
            let x = build(&ring, f, &a);
            let again = GradedPoly::from_terms(&ring, f, x.terms().map(|(m, c)| (m.clone(), c.clone())));
            prop_assert_eq!(&again, &x);
            for (m, _) in x.terms() {
                prop_assert!(m.degree() <= ring.cap());
                prop_assert!(m.exponent(3) < ring.proj_bundle_data().unwrap().rank());
            }
        }
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(
        images in raw_terms(3, 3, 6),
        a in raw_terms(3, 3, 5),
        b in raw_terms(3, 3, 5),
    ) {
        let src = free_z(9);
        let tgt = RingPresentation::formal_w(4, 9);
        let f = Coefficients::Z2;
        let pool = build(&tgt, f, &images);
        let sub = Substitution::new(&src, &tgt, f)
            .assign("x", pool.homogeneous_component(1)).unwrap()
            .assign("y", pool.homogeneous_component(2)).unwrap()
            .assign("z", pool.homogeneous_component(3)).unwrap();
        let x = build(&src, Coefficients::Integers, &a);
        let y = build(&src, Coefficients::Integers, &b);
        let lhs = sub.apply(&(&x * &y)).unwrap();
        let rhs = &sub.apply(&x).unwrap() * &sub.apply(&y).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        let lhs = sub.apply(&(&x + &y)).unwrap();
        let rhs = &sub.apply(&x).unwrap() + &sub.apply(&y).unwrap();
        prop_assert_eq!(&lhs, &rhs);
    }

    #[test]
    fn inverse_is_two_sided(a in raw_terms(3, 3, 8)) {
        for (ring, f) in [(RingPresentation::formal_w(3, 10), Coefficients::Z2), (free_z(10), Coefficients::Integers)] {
            let c = total_from(&ring, f, &a, 10);
            let inv = c.inverse();
            prop_assert_eq!(c.checked_mul(&inv).unwrap(), TotalClass::one(&ring, f));
            prop_assert_eq!(inv.checked_mul(&c).unwrap(), TotalClass::one(&ring, f));
            prop_assert_eq!(inv.inverse(), c);
        }
    }

    #[test]
    fn truncation_is_coherent(a in raw_terms(3, 3, 8), b in raw_terms(3, 3, 8)) {
        // Computing at a larger cap and then truncating agrees with computing at the smaller cap.
        let big = free_z(12);
        let small = free_z(7);
        let f = Coefficients::Integers;
        let (x, y) = (build(&big, f, &a), build(&big, f, &b));
        let (xs, ys) = (transplant(&x, &small), transplant(&y, &small));
        prop_assert_eq!(transplant(&(&x * &y), &small), &xs * &ys);
        let c = total_from(&big, f, &a, 12);
        let cs = total_from(&small, f, &a, 7);
        for d in 0..=7 {
            prop_assert_eq!(transplant(&c.inverse().component(d), &small), cs.inverse().component(d));
        }
    }

    #[test]
    fn grothendieck_relation_holds(a in raw_terms(3, 2, 6), rank in 1u32..=3) {
        let base = RingPresentation::formal_w(3, 9);
        let f = Coefficients::Z2;
        let e = total_from(&base, f, &a, rank);
        let bundle = RingPresentation::proj_bundle(&e, rank, "a").unwrap();
        let t = gen(&bundle, f, "a");
        let mut sum = GradedPoly::zero(&bundle, f);
        for i in 0..=rank {
            sum = &sum + &(&e.component(i as i64).lift_to(&bundle).unwrap() * &t.pow(rank - i));
        }
        prop_assert!(sum.is_zero(), "Σ w_i a^(m−i) = {}", sum);
    }

    #[test]
    fn grothendieck_relation_holds_integrally(a in raw_terms(3, 2, 6), rank in 1u32..=3) {
        let base = free_z(9);
        let f = Coefficients::Integers;
        let e = total_from(&base, f, &a, rank);
        let bundle = RingPresentation::proj_bundle(&e, rank, "t").unwrap();
        let t = gen(&bundle, f, "t");
        let mut sum = GradedPoly::zero(&bundle, f);
        for i in 0..=rank {
            sum = &sum + &(&e.component(i as i64).lift_to(&bundle).unwrap() * &t.pow(rank - i));
        }
        prop_assert!(sum.is_zero(), "Σ c_i t^(m−i) = {}", sum);
    }
}

#[test]
fn lucas_oracle_for_binomial_powers() {
    for n in 1..=20u32 {
        let ring = RingPresentation::truncated_power("a", n).unwrap();
        let f = Coefficients::Z2;
        let one_plus_a = &GradedPoly::one(&ring, f) + &gen(&ring, f, "a");
        for k in 0..=40u32 {
            let p = one_plus_a.pow(k);
            for j in 0..=n {
                // Lucas: C(k, j) is odd iff the binary digits of j are a subset of those of k.
                let expected = j <= k && (j & !k) == 0;
                let m = charclass::Monomial::generator(&ring, 0, j);
                assert_eq!(p.coefficient(&m) == 1.into(), expected, "a^{j} in (1+a)^{k} over rp:{n}");
            }
        }
    }
}

#[test]
fn mixed_presentations_are_rejected() {
    let f = Coefficients::Z2;
    let x = gen(&RingPresentation::formal_w(3, 8), f, "w1");
    let y = gen(&RingPresentation::truncated_power("a", 4).unwrap(), f, "a");
    assert!(x.checked_add(&y).is_err());
    assert!(x.checked_mul(&y).is_err());
    let z = gen(&free_z(8), Coefficients::Integers, "x");
    assert!(z.checked_add(&z.mod2()).is_err());
}
