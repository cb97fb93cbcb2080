use jacring_core::rng::stream;
use jacring_core::{random_smooth_hypersurface, Field, GradedPolynomial, JacobianRing, PrimeField, DEFAULT_PRIMES};
use proptest::prelude::*;
use rand::Rng;

fn field() -> PrimeField {
    PrimeField::new(65537).unwrap()
}

fn random_ring(n: usize, d: usize, seed: u64) -> JacobianRing<PrimeField> {
    let eq = random_smooth_hypersurface(n, d, &DEFAULT_PRIMES, seed)
        .unwrap()
        .equation;
    JacobianRing::from_hypersurface(&eq.reduce(&field()).unwrap()).unwrap()
}

/// A random element of `J^k`.
fn ideal_element(
    ring: &JacobianRing<PrimeField>,
    k: usize,
    rng: &mut dyn rand::RngCore,
) -> GradedPolynomial<PrimeField> {
    let f = *ring.field();
    let eq = ring.equation().unwrap();
    let d = eq.degree();
    let mut out = GradedPolynomial::zero(f, ring.nvars(), k);
    if k + 1 < d {
        return out;
    }
    for g in eq.gradient().unwrap() {
        let c = GradedPolynomial::random(f, ring.n(), k + 1 - d, rng);
        out = &out + &c.multiply(&g);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn gorenstein_symmetry_and_total(seed in any::<u64>(), (n, d) in prop::sample::select(vec![(1, 3), (1, 6), (2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4)])) {
        let ring = random_ring(n, d, seed);
        prop_assert!(ring.is_smooth());
        let h = ring.hilbert_function();
        let top = ring.socle_degree();
        prop_assert_eq!(top, (n + 1) * (d - 2));
        prop_assert_eq!(h[top], 1);
        for k in 0..=top {
            prop_assert_eq!(h[k], h[top - k]);
        }
        prop_assert_eq!(h.iter().sum::<usize>(), (d - 1).pow((n + 1) as u32));
    }

    #[test]
    fn multiplication_is_self_adjoint(seed in any::<u64>(), d in 3usize..6) {
        let ring = random_ring(2, d, seed);
        let mut rng = stream(seed, &[1]);
        let top = ring.socle_degree();
        for _ in 0..6 {
            let e = rng.random_range(0..=top);
            let s = rng.random_range(0..=top - e);
            let alpha = ring.random_class(e, &mut rng).unwrap();
            let a = ring.multiplication_matrix(&alpha, s).unwrap().rank();
            let b = ring.multiplication_matrix(&alpha, top - s - e).unwrap().rank();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn operator_ignores_ideal_translates(seed in any::<u64>(), d in 3usize..6) {
        let ring = random_ring(2, d, seed);
        let mut rng = stream(seed, &[2]);
        let top = ring.socle_degree();
        let e = rng.random_range(d - 1..=top);
        let s = rng.random_range(0..=top - e);
        let alpha = GradedPolynomial::random(field(), 2, e, &mut rng);
        let shifted = &alpha + &ideal_element(&ring, e, &mut rng);
        let a = ring.multiplication_operator(&alpha, s).unwrap();
        let b = ring.multiplication_operator(&shifted, s).unwrap();
        prop_assert_eq!(a.matrix, b.matrix);
        prop_assert_eq!(a.rank, b.rank);
    }

    #[test]
    fn normal_form_of_product_depends_on_classes(seed in any::<u64>(), d in 3usize..6) {
        let ring = random_ring(2, d, seed);
        let mut rng = stream(seed, &[3]);
        let top = ring.socle_degree();
        let a = rng.random_range(0..=top);
        let b = rng.random_range(0..=top - a);
        let f = GradedPolynomial::random(field(), 2, a, &mut rng);
        let g = GradedPolynomial::random(field(), 2, b, &mut rng);
        let f2 = &f + &ideal_element(&ring, a, &mut rng);
        let g2 = &g + &ideal_element(&ring, b, &mut rng);
        prop_assert_eq!(ring.normal_form(&f.multiply(&g)).unwrap(), ring.normal_form(&f2.multiply(&g2)).unwrap());
    }

    #[test]
    fn kernel_elements_are_annihilated(seed in any::<u64>()) {
        let ring = JacobianRing::fermat(field(), 2, 5).unwrap();
        let mut rng = stream(seed, &[4]);
        let e = rng.random_range(1..=4);
        let s = rng.random_range(0..=9 - e);
        let alpha = ring.random_class(e, &mut rng).unwrap();
        let op = ring.multiplication_operator(&alpha, s).unwrap();
        prop_assert_eq!(op.rank + op.kernel_dim(), op.source_dim());
        for v in &op.kernel {
            let beta = ring.lift(s, v).unwrap();
            let nf = ring.normal_form(&alpha.multiply(&beta)).unwrap();
            prop_assert!(nf.iter().all(|c| field().is_zero(c)));
        }
    }
}
