use proptest::prelude::*;

use btpe::{
    btpe_applicable, compute_btpe_constants, predict_uniforms, sample, student_t_two_sided_p,
    t_test_one_sample, BinomialParams, CountingSource, SplitMix64, UniformSource,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generator_is_deterministic(seed: u64) {
        let mut a = SplitMix64::new(seed);
        let mut b = SplitMix64::new(seed);
        for _ in 0..64 {
            prop_assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn uniforms_in_range_and_counting_transparent(seed: u64, draws in 1usize..500) {
        let mut plain = SplitMix64::new(seed);
        let mut counted = CountingSource::new(SplitMix64::new(seed));
        for _ in 0..draws {
            let u = counted.next_uniform();
            prop_assert!((0.0..1.0).contains(&u));
            prop_assert_eq!(u, plain.next_uniform());
        }
        prop_assert_eq!(counted.draws(), draws as u64);
    }

    #[test]
    fn variates_in_range_with_expected_consumption(
        n in 0u64..5000,
        p in 0.0f64..=1.0,
        seed: u64,
    ) {
        let params = BinomialParams::new(n, p).unwrap();
        let mut src = CountingSource::new(SplitMix64::new(seed));
        for _ in 0..20 {
            src.reset();
            let y = sample(&params, &mut src);
            prop_assert!(y <= n);
            let d = src.draws();
            if n == 0 || p == 0.0 || p == 1.0 {
                prop_assert_eq!(d, 0);
            } else if btpe_applicable(&params) {
                prop_assert!(d >= 2 && d.is_multiple_of(2));
            } else {
                prop_assert_eq!(d, 1);
            }
        }
    }

    #[test]
    fn reflection_symmetry(n in 1u64..3000, k in 1u32..1024, seed: u64) {
        // dyadic p keeps 1 - p exact
        prop_assume!(k != 512);
        let p = k as f64 / 1024.0;
        let a = BinomialParams::new(n, p).unwrap();
        let b = BinomialParams::new(n, 1.0 - p).unwrap();
        let mut sa = SplitMix64::new(seed);
        let mut sb = SplitMix64::new(seed);
        for _ in 0..20 {
            prop_assert_eq!(sample(&a, &mut sa), n - sample(&b, &mut sb));
        }
    }

    #[test]
    fn constants_are_ordered(n in 20u64..(1 << 24), frac in 0.0f64..=1.0) {
        let lo = 10.0 / n as f64;
        let r = lo + frac * (0.5 - lo);
        let params = BinomialParams::new(n, r).unwrap();
        prop_assume!(btpe_applicable(&params));
        let k = compute_btpe_constants(&params).unwrap();
        prop_assert!(0.0 < k.p1 && k.p1 < k.p2 && k.p2 < k.p3 && k.p3 < k.p4);
        prop_assert!(k.lambda_l > 0.0 && k.lambda_r > 0.0);
    }

    #[test]
    fn prediction_invariants(n in 20u64..(1 << 22), frac in 0.0f64..=1.0) {
        let lo = 10.0 / n as f64;
        let p_hi = 1.0 - (lo + frac * (0.5 - lo));
        let p_lo = 1.0 - p_hi;
        let a = predict_uniforms(&BinomialParams::new(n, p_lo).unwrap()).unwrap();
        let b = predict_uniforms(&BinomialParams::new(n, p_hi).unwrap()).unwrap();
        prop_assert_eq!(a.e_uniforms.to_bits(), b.e_uniforms.to_bits());
        prop_assert_eq!(a.e_uniforms, 2.0 * a.e_iterations);
        prop_assert!(a.e_iterations >= 1.0);
    }

    #[test]
    fn t_test_invariances(
        xs in prop::collection::vec(-100.0f64..100.0, 2..40),
        mu in -50.0f64..50.0,
        shift in -1e3f64..1e3,
        scale in 0.01f64..100.0,
    ) {
        let p = t_test_one_sample(&xs, mu).unwrap();
        prop_assert!((0.0..=1.0).contains(&p));
        let shifted: Vec<f64> = xs.iter().map(|x| x + shift).collect();
        let scaled: Vec<f64> = xs.iter().map(|x| x * scale).collect();
        let ps = t_test_one_sample(&shifted, mu + shift).unwrap();
        let pk = t_test_one_sample(&scaled, mu * scale).unwrap();
        prop_assert!((p - ps).abs() < 1e-6, "{} vs {}", p, ps);
        prop_assert!((p - pk).abs() < 1e-6, "{} vs {}", p, pk);
    }

    #[test]
    fn t_p_value_monotone(a in 0.0f64..50.0, b in 0.0f64..50.0, df in 1u64..10_000) {
        let (small, large) = if a <= b { (a, b) } else { (b, a) };
        let p_small = student_t_two_sided_p(small, df).unwrap();
        let p_large = student_t_two_sided_p(-large, df).unwrap();
        prop_assert!((0.0..=1.0).contains(&p_small));
        prop_assert!(p_large <= p_small + 1e-12);
    }
}
