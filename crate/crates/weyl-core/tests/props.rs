//! Property tests: algebraic laws that must hold for all parameters, not
//! just the frozen examples.

use proptest::prelude::*;
use weyl_core::element::AlgebraElement;
use weyl_core::idempotent::{matrix_unit, primitive_idempotent};
use weyl_core::limits::{gaussian_state, robertson_check, GaussianSpec};
use weyl_core::locality::{band_energy, central_difference, laplacian, LatticeField};
use weyl_core::matrix::{from_matrix, to_matrix, unitarity_deviation};
use weyl_core::operators::{momentum_operator, position_operator};
use weyl_core::params::AlgebraParams;
use weyl_core::state::{BasisTag, StateVector};
use weyl_core::{linalg, rng, C64};

fn params_strategy() -> impl Strategy<Value = AlgebraParams> {
    (2usize..=12).prop_map(|n| AlgebraParams::new(n).unwrap())
}

fn coeff_strategy() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| C64::new(re, im))
}

fn random_field(params: AlgebraParams, rng: &mut impl rand::Rng) -> LatticeField {
    LatticeField::new(
        params,
        (0..params.n()).map(|_| rng::complex_normal(rng)).collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn basis_product_matches_matrix_product(
        params in params_strategy(),
        a in -30i64..30, b in -30i64..30,
        c in -30i64..30, d in -30i64..30,
    ) {
        let x = AlgebraElement::basis_element(params, a, b);
        let y = AlgebraElement::basis_element(params, c, d);
        let lhs = to_matrix(&x.multiply(&y).unwrap());
        let rhs = to_matrix(&x).dot(&to_matrix(&y));
        prop_assert!(weyl_core::matrix::max_abs_diff(&lhs, &rhs) < params.tol());
    }

    #[test]
    fn product_is_associative(params in params_strategy(), seed in 0u64..1000) {
        let mut rng = rng::seeded(seed);
        let scale = 1.0 / params.n() as f64;
        let x = rng::random_element(params, &mut rng, scale);
        let y = rng::random_element(params, &mut rng, scale);
        let z = rng::random_element(params, &mut rng, scale);
        let lhs = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let rhs = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert!(lhs.max_dev(&rhs) < params.tol());
    }

    #[test]
    fn adjoint_is_an_involutive_antihomomorphism(
        params in params_strategy(), seed in 0u64..1000,
    ) {
        let mut rng = rng::seeded(seed);
        let scale = 1.0 / params.n() as f64;
        let x = rng::random_element(params, &mut rng, scale);
        let y = rng::random_element(params, &mut rng, scale);
        prop_assert!(x.adjoint().adjoint().max_dev(&x) < params.tol());
        let lhs = x.multiply(&y).unwrap().adjoint();
        let rhs = y.adjoint().multiply(&x.adjoint()).unwrap();
        prop_assert!(lhs.max_dev(&rhs) < params.tol());
        // and it matches the conjugate transpose in the representation
        let m = to_matrix(&x.adjoint());
        let mt = weyl_core::matrix::conj_transpose(&to_matrix(&x));
        prop_assert!(weyl_core::matrix::max_abs_diff(&m, &mt) < params.tol());
    }

    #[test]
    fn representation_round_trips(params in params_strategy(), seed in 0u64..1000) {
        let mut rng = rng::seeded(seed);
        let x = rng::random_element(params, &mut rng, 1.0);
        let back = from_matrix(params, &to_matrix(&x)).unwrap();
        prop_assert!(back.max_dev(&x) < params.tol());
    }

    #[test]
    fn trace_is_cyclic_and_matches_the_matrix_trace(
        params in params_strategy(), seed in 0u64..1000,
    ) {
        let mut rng = rng::seeded(seed);
        let scale = 1.0 / params.n() as f64;
        let x = rng::random_element(params, &mut rng, scale);
        let y = rng::random_element(params, &mut rng, scale);
        let ab = x.multiply(&y).unwrap().trace();
        let ba = y.multiply(&x).unwrap().trace();
        prop_assert!((ab - ba).norm() < params.tol());
        let m = to_matrix(&x);
        let mt: C64 = (0..params.n()).map(|i| m[[i, i]]).sum();
        prop_assert!((x.trace() - mt).norm() < params.tol());
    }

    #[test]
    fn matrix_units_contract(
        params in params_strategy(),
        i in 0i64..12, j in 0i64..12, k in 0i64..12, l in 0i64..12,
    ) {
        let n = params.n() as i64;
        let (i, j, k, l) = (i % n, j % n, k % n, l % n);
        let e_ij = matrix_unit(params, i, j).unwrap();
        let e_kl = matrix_unit(params, k, l).unwrap();
        let prod = e_ij.multiply(&e_kl).unwrap();
        if j == k {
            let want = matrix_unit(params, i, l).unwrap();
            prop_assert!(prod.max_dev(&want) < params.tol());
        } else {
            prop_assert!(prod.max_abs() < params.tol());
        }
        // adjoint swaps indices
        let adj = e_ij.adjoint();
        let want = matrix_unit(params, j, i).unwrap();
        prop_assert!(adj.max_dev(&want) < params.tol());
    }

    #[test]
    fn idempotents_resolve_and_are_orthogonal(params in params_strategy()) {
        let mut sum = AlgebraElement::zero(params);
        for i in 0..params.n() as i64 {
            let e = primitive_idempotent(params, i).unwrap();
            prop_assert!(e.multiply(&e).unwrap().max_dev(&e) < params.tol());
            sum = sum.add(&e).unwrap();
        }
        prop_assert!(sum.max_dev(&AlgebraElement::identity(params)) < params.tol());
    }

    #[test]
    fn unitary_conjugation_preserves_spectra(n in 2usize..=10, seed in 0u64..1000) {
        let params = AlgebraParams::new(n).unwrap();
        let mut rng = rng::seeded(seed);
        let u = rng::haar_unitary(n, &mut rng);
        prop_assert!(unitarity_deviation(&u) < 1e-10);
        let m = to_matrix(&rng::random_element(params, &mut rng, 1.0));
        let moved = weyl_core::locality::apply_automorphism_operator(&m, &u).unwrap();
        let a = linalg::eigvals(&m).unwrap();
        let b = linalg::eigvals(&moved).unwrap();
        prop_assert!(linalg::spectrum_match_distance(&a, &b) < 1e-7 * n as f64);
    }

    #[test]
    fn gaussian_states_have_unit_norm(
        params in params_strategy(),
        center in -20.0f64..20.0,
        width in 0.05f64..50.0,
        shift in -10.0f64..10.0,
    ) {
        let g = gaussian_state(params, &GaussianSpec { center, width, momentum_shift: shift })
            .unwrap();
        prop_assert!((g.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn band_energy_is_a_fraction(n in 2usize..=16, seed in 0u64..1000) {
        let mut rng = rng::seeded(seed);
        let m = rng::haar_unitary(n, &mut rng);
        let e = band_energy(&m, 1);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&e));
        // widening the band can only increase the captured mass
        let wider = band_energy(&m, 2);
        prop_assert!(wider >= e - 1e-12);
        prop_assert!((band_energy(&m, n) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn element_json_round_trips(params in params_strategy(), seed in 0u64..1000) {
        let mut rng = rng::seeded(seed);
        let x = rng::random_element(params, &mut rng, 1.0);
        let back = AlgebraElement::from_json(&x.to_json().to_string()).unwrap();
        prop_assert!(back.max_dev(&x) == 0.0, "serialization must be exact");
    }

    #[test]
    fn state_json_round_trips(params in params_strategy(), seed in 0u64..1000) {
        let mut rng = rng::seeded(seed);
        let psi = rng::random_state(params, &mut rng);
        let back = StateVector::from_json(&psi.to_json().to_string()).unwrap();
        prop_assert!(back.max_dev(&psi) == 0.0, "serialization must be exact");
        prop_assert_eq!(back.basis(), BasisTag::Position);
    }

    #[test]
    fn robertson_inequality_holds_universally(
        params in params_strategy(), seed in 0u64..1000,
    ) {
        let mut rng = rng::seeded(seed);
        let psi = rng::random_state(params, &mut rng);
        let r = robertson_check(
            &psi,
            &position_operator(params),
            &momentum_operator(params),
        )
        .unwrap();
        prop_assert!(r.holds, "product {} < bound {}", r.product, r.bound);
    }

    #[test]
    fn difference_operators_are_linear_and_kill_constants(
        params in params_strategy(),
        z in coeff_strategy(),
        seed in 0u64..1000,
    ) {
        let mut rng = rng::seeded(seed);
        let f = random_field(params, &mut rng);
        let g = random_field(params, &mut rng);
        // linearity: D(f + z·g) = D(f) + z·D(g)
        let combo = LatticeField::new(
            params,
            f.values().iter().zip(g.values()).map(|(a, b)| a + z * b).collect(),
        ).unwrap();
        for op in [central_difference, laplacian] {
            let lhs = op(&combo);
            let rhs = LatticeField::new(
                params,
                op(&f).values().iter().zip(op(&g).values()).map(|(a, b)| a + z * b).collect(),
            ).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10);
        }
        let c = LatticeField::constant(params, z);
        prop_assert!(central_difference(&c).max_abs() < 1e-12);
        prop_assert!(laplacian(&c).max_abs() < 1e-12);
    }
}
