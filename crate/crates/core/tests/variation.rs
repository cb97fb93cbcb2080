use jacring_core::rng::stream;
use jacring_core::variation::{estimate_dm, genus, rank_spectrum, verify_i_maximal};
use jacring_core::{
    random_smooth_hypersurface, CurveFamily, Field, GradedPolynomial, JacobianRing, PlaneCurveIvhs, PrimeField,
    DEFAULT_PRIMES,
};
use proptest::prelude::*;

fn f() -> PrimeField {
    PrimeField::new(65537).unwrap()
}

fn random_ivhs(d: usize, seed: u64) -> PlaneCurveIvhs<PrimeField> {
    let eq = random_smooth_hypersurface(2, d, &DEFAULT_PRIMES, seed)
        .unwrap()
        .equation;
    PlaneCurveIvhs::new(JacobianRing::from_hypersurface(&eq.reduce(&f()).unwrap()).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn cup_rank_ignores_scaling_and_ideal(seed in any::<u64>(), d in 4usize..7, c in 1u64..65537) {
        let ivhs = random_ivhs(d, seed);
        let mut rng = stream(seed, &[11]);
        let xi = GradedPolynomial::random(f(), 2, d, &mut rng);
        let base = ivhs.cup_product_rank(&xi).unwrap();
        prop_assert_eq!(base, ivhs.cup_product_rank(&xi.scale(&(c % 65537))).unwrap());
        let eq = ivhs.ring().equation().unwrap().clone();
        let mut j = GradedPolynomial::zero(f(), 3, d);
        for g in eq.gradient().unwrap() {
            j = &j + &GradedPolynomial::random(f(), 2, 1, &mut rng).multiply(&g);
        }
        prop_assert_eq!(base, ivhs.cup_product_rank(&(&xi + &j)).unwrap());
    }

    #[test]
    fn best_rank_is_monotone_in_samples(seed in any::<u64>(), d in 4usize..6, m in 1usize..8) {
        let fam = CurveFamily::fermat(d, &DEFAULT_PRIMES).unwrap();
        let short = estimate_dm(&fam, m, seed).unwrap();
        let long = estimate_dm(&fam, 2 * m, seed).unwrap();
        prop_assert!(short.running_best.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(long.best_rank >= short.best_rank);
    }

    #[test]
    fn random_curves_have_maximal_variation(seed in any::<u64>(), d in 3usize..8) {
        let eq = random_smooth_hypersurface(2, d, &DEFAULT_PRIMES, seed).unwrap().equation;
        let fam = CurveFamily::new(&eq, &DEFAULT_PRIMES).unwrap();
        let rep = verify_i_maximal(&fam, 100, seed).unwrap();
        prop_assert!(rep.found);
        prop_assert_eq!(rep.best_rank, genus(d));
    }

    #[test]
    fn no_rank_below_the_minimum(seed in any::<u64>(), d in 5usize..7) {
        let rep = rank_spectrum(&random_ivhs(d, seed), 30, seed, &[]).unwrap();
        prop_assert!(rep.counterexamples.is_empty(), "{:?}", rep.counterexamples);
    }
}

#[test]
fn scaled_argmax_is_unchanged() {
    let ivhs = PlaneCurveIvhs::fermat(f(), 5).unwrap();
    let mut rng = stream(3, &[]);
    let xs: Vec<_> = (0..10).map(|_| GradedPolynomial::random(f(), 2, 5, &mut rng)).collect();
    let c = f().from_i64(12345);
    let ranks: Vec<usize> = xs.iter().map(|x| ivhs.cup_product_rank(x).unwrap()).collect();
    let scaled: Vec<usize> = xs
        .iter()
        .map(|x| ivhs.cup_product_rank(&x.scale(&c)).unwrap())
        .collect();
    assert_eq!(ranks, scaled);
}
