use jacring_core::{monomial_basis, GradedPolynomial, Rationals};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn basis_sizes_are_binomials() {
    for n in 0..=5 {
        for k in 0..=25 {
            assert_eq!(monomial_basis(n, k).len(), binomial(n + k, n), "n={n} k={k}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_identity_over_q(seed in any::<u64>(), n in 1usize..4, k in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = GradedPolynomial::random(Rationals, n, k, &mut rng);
        prop_assert!(f.euler_check().unwrap());
    }

    #[test]
    fn product_is_associative_and_commutative(seed in any::<u64>(), a in 0usize..4, b in 0usize..4, c in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = GradedPolynomial::random(Rationals, 2, a, &mut rng);
        let g = GradedPolynomial::random(Rationals, 2, b, &mut rng);
        let h = GradedPolynomial::random(Rationals, 2, c, &mut rng);
        prop_assert_eq!(f.multiply(&g), g.multiply(&f));
        prop_assert_eq!(f.multiply(&g).multiply(&h), f.multiply(&g.multiply(&h)));
    }
}
