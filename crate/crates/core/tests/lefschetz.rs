use jacring_core::lefschetz::{
    max_rank_kernel_square_check, slp_check, socle_coefficient, star_property_check, wlp_check,
};
use jacring_core::{GradedPolynomial, JacobianRing, PrimeField, Rationals};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn strong_implies_weak(exps in prop::collection::vec(2usize..5, 1..4), c in prop::collection::vec(-3i64..4, 3)) {
        let f = PrimeField::new(65537).unwrap();
        let ring = JacobianRing::monomial_ci(f, &exps).unwrap();
        let terms: Vec<String> = (0..exps.len()).map(|i| format!("{}*x{i}", c[i % c.len()])).collect();
        let l = jacring_core::parse_polynomial(&f, &terms.join(" + "), Some(exps.len()));
        prop_assume!(l.is_ok());
        let l = l.unwrap();
        prop_assume!(!l.is_zero());
        let slp = slp_check(&ring, &l).unwrap();
        let wlp = wlp_check(&ring, &l).unwrap();
        if slp.slp == Some(true) {
            prop_assert!(wlp.wlp);
        }
        prop_assert_eq!(slp.wlp, wlp.wlp);
    }

    #[test]
    fn running_best_is_monotone(seed in any::<u64>(), samples in 1usize..12) {
        let ring = JacobianRing::fermat(PrimeField::new(65537).unwrap(), 2, 5).unwrap();
        let short = max_rank_kernel_square_check(&ring, 1, 2, samples, seed).unwrap();
        let long = max_rank_kernel_square_check(&ring, 1, 2, samples + 5, seed).unwrap();
        prop_assert!(short.running_best.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(long.best_rank >= short.best_rank);
        prop_assert_eq!(&long.running_best[..samples], &short.running_best[..]);
    }
}

#[test]
fn obstruction_excludes_injectivity() {
    let f = PrimeField::new(65537).unwrap();
    for n in 1..=3 {
        for d in 2..=6 {
            for k in 0..=d {
                let Ok(r) = star_property_check(f, n, d, k) else {
                    continue;
                };
                if r.dimension_obstruction || r.beyond_socle {
                    assert!(!r.injective || r.source_dim == 0, "n={n} d={d} k={k}");
                }
                if r.expected {
                    assert!(r.injective, "n={n} d={d} k={k}");
                }
            }
        }
    }
}

#[test]
fn socle_coefficient_matches_expansion() {
    for n in 1..=3 {
        for d in n + 1..=n + 2 {
            let r = socle_coefficient(&Rationals, n, d);
            if let Ok(r) = r {
                assert!(r.agree, "n={n} d={d}");
                assert_ne!(r.ring_agrees, Some(false), "n={n} d={d}");
            }
        }
    }
    let r = socle_coefficient(&Rationals, 2, 3).unwrap();
    assert_eq!(r.expansion, "6");
}

#[test]
fn slp_on_small_ci_grid_over_q() {
    for exps in [vec![2, 2], vec![2, 5], vec![3, 4, 5], vec![2, 2, 2, 2]] {
        let ring = JacobianRing::monomial_ci(Rationals, &exps).unwrap();
        let l = GradedPolynomial::sum_of_variables(Rationals, exps.len() - 1);
        assert_eq!(slp_check(&ring, &l).unwrap().slp, Some(true), "{exps:?}");
    }
}
