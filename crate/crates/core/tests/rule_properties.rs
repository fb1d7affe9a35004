use nullca_core::ca::{build_t, evolve_local, matrix_from_text, matrix_to_text, Pattern, RuleSampler};
use nullca_core::field::{roots_with_multiplicity, Field};
use nullca_core::structmat::DEFAULT_SIZE_CAP;
use nullca_core::{oracle, spectral};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn decision_matches_determinant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rule = RuleSampler::default().sample(&mut rng);
        let t = build_t(&rule, DEFAULT_SIZE_CAP).unwrap();
        let nonsingular = !t.field().is_zero(&oracle::det(&t).unwrap());
        prop_assert_eq!(spectral::is_reversible(&rule).unwrap().reversible, nonsingular);
    }

    #[test]
    fn eigenvalues_match_characteristic_polynomial(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sampler = RuleSampler { max_m: 4, ..RuleSampler::default() };
        let rule = sampler.sample(&mut rng);
        let spectra = spectral::axis_spectra(&rule).unwrap();
        let mut got = spectral::eigenvalue_multiset(&spectra);
        got.sort();
        let t = build_t(&rule, DEFAULT_SIZE_CAP).unwrap();
        let roots = roots_with_multiplicity(&oracle::char_poly(&t).unwrap(), &spectra.field).unwrap();
        let mut want: Vec<_> = roots
            .into_iter()
            .flat_map(|(r, k)| std::iter::repeat_n(r, k))
            .collect();
        want.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn jordan_form_conjugates_t(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rule = RuleSampler::default().sample(&mut rng);
        let gj = spectral::generalized_jordan(&rule).unwrap();
        prop_assert!(gj.verify(&rule, DEFAULT_SIZE_CAP).is_ok());
    }

    #[test]
    fn inverse_undoes_one_step(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rule = RuleSampler::default().sample(&mut rng);
        prop_assume!(spectral::is_reversible(&rule).unwrap().reversible);
        let inv = spectral::invert_t(&rule).unwrap();
        let x = Pattern::random(&rule.dims, rule.p, &mut rng);
        let y = evolve_local(&rule, &x).unwrap();
        prop_assert_eq!(nullca_core::ca::apply_matrix(&inv, &y).unwrap(), x);
        prop_assert_eq!(matrix_from_text(&matrix_to_text(&inv)).unwrap(), inv);
    }

    #[test]
    fn local_rule_is_linear(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rule = RuleSampler::default().sample(&mut rng);
        let x = Pattern::random(&rule.dims, rule.p, &mut rng);
        let y = Pattern::random(&rule.dims, rule.p, &mut rng);
        let lhs = evolve_local(&rule, &x.add(&y).unwrap()).unwrap();
        let rhs = evolve_local(&rule, &x).unwrap().add(&evolve_local(&rule, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(Pattern::from_text(&x.to_text()).unwrap(), x);
    }
}
