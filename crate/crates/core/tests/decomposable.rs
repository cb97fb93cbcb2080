use jacring_core::decomposable::{
    dimension_arithmetic_check, incidence_fiber, irreducibility_probe, membership_y, monomial_y_members, ProbeVerdict,
};
use jacring_core::rng::stream;
use jacring_core::{Field, GradedPolynomial, JacobianRing, PrimeField};
use proptest::prelude::*;

fn f() -> PrimeField {
    PrimeField::new(65537).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn probe_never_certifies_a_product(seed in any::<u64>(), a in 1usize..4, b in 1usize..4) {
        let mut rng = stream(seed, &[]);
        let g = GradedPolynomial::random(f(), 2, a, &mut rng);
        let h = GradedPolynomial::random(f(), 2, b, &mut rng);
        let rep = irreducibility_probe(&g.multiply(&h), 10, seed).unwrap();
        prop_assert_ne!(rep.verdict, ProbeVerdict::NotDecomposableEvidence);
    }

    #[test]
    fn y_membership_is_scale_invariant(seed in any::<u64>(), d in 5usize..7, c in 1i64..65537) {
        let ring = JacobianRing::fermat(f(), 2, d).unwrap();
        let mut rng = stream(seed, &[1]);
        let alpha = GradedPolynomial::random(f(), 2, d - 3, &mut rng);
        prop_assume!(!ring.in_ideal(&alpha).unwrap());
        let c = f().from_i64(c);
        prop_assert_eq!(membership_y(&ring, &alpha).unwrap(), membership_y(&ring, &alpha.scale(&c)).unwrap());
    }
}

#[test]
fn members_lie_in_their_fibres() {
    for d in 5..=6 {
        let ring = JacobianRing::fermat(f(), 2, d).unwrap();
        let members = monomial_y_members(&ring).unwrap();
        assert!(!members.is_empty());
        for alpha in members {
            assert!(membership_y(&ring, &alpha).unwrap());
            assert!(membership_y(&ring, &alpha.scale(&f().from_i64(-7))).unwrap());
            assert!(incidence_fiber(&ring, &alpha).unwrap().contains_alpha, "{alpha}");
        }
    }
}

#[test]
fn arithmetic_holds_up_to_fifty() {
    for d in 3..=50 {
        assert!(dimension_arithmetic_check(d).unwrap().passes, "d={d}");
    }
}
