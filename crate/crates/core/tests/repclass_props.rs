use proptest::prelude::*;
use qdeform::catalog::UnifiedParams;
use qdeform::repclass::{classify, lambda_closed, lambda_recurrence, lambda_scale, RepCase, RepParams};

fn unified() -> impl Strategy<Value = UnifiedParams> {
    (prop_oneof![0.3f64..0.9, 1.1f64..2.5], -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, 0.05f64..0.9)
        .prop_map(|(q, a, b, g, nu)| UnifiedParams::new(q, a, b, g, nu).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn closed_form_matches_recurrence(u in unified(), lambda0 in 0.0f64..3.0, kappa0 in -2.0f64..2.0, b in -2.0f64..2.0) {
        let p = RepParams::new(u, lambda0, kappa0, b).unwrap();
        let seq = lambda_recurrence(&p, -40, 40).unwrap();
        for (n, v) in seq.iter() {
            prop_assert!((v - lambda_closed(&p, n)).abs() <= 1e-11 * lambda_scale(&p, n), "n={}", n);
            if n < 40 {
                prop_assert_eq!(seq.mu(n), seq.get(n + 1));
            }
        }
    }

    #[test]
    fn b_minus_one_is_one_dimensional(u in unified(), kappa0 in -2.0f64..2.0) {
        let c = classify(&RepParams::new(u, 0.0, kappa0, -1.0).unwrap(), 200).unwrap();
        prop_assert_eq!(c.case, RepCase::OneDim);
    }

    #[test]
    fn one_dimensional_only_for_b_minus_one(u in unified(), kappa0 in -2.0f64..2.0, b in -3.0f64..3.0) {
        prop_assume!((b + 1.0).abs() > 1e-6);
        if let Ok(c) = classify(&RepParams::new(u, 0.0, kappa0, b).unwrap(), 200) {
            if c.case == RepCase::OneDim {
                let lo = c.window.lo.unwrap();
                let b_lo = if lo.rem_euclid(2) == 0 { b } else { -b };
                prop_assert!((b_lo + 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn lowest_weight_modules_are_nonnegative(u in unified(), kappa0 in -2.0f64..2.0, b in -0.99f64..0.99) {
        let c = classify(&RepParams::new(u, 0.0, kappa0, b).unwrap(), 200).unwrap();
        prop_assert!(matches!(c.case, RepCase::LowestWeightI | RepCase::LowestWeightIi), "{:?}", c.case);
        for n in 0..=200 {
            prop_assert!(c.lambda.get(n).unwrap() >= -1e-12);
        }
        prop_assert!(c.diagnostics.certificate_mismatches.is_empty(), "{:?}", c.diagnostics.certificate_mismatches);
    }
}
