use proptest::prelude::*;
use qdeform::catalog::{DeformationKind, StructureSeq, TwoParamParams, UnifiedParams};
use qdeform::fockrep::{build_finite, build_lowest_weight, casimir_commutant_residual, coordinate_realization_residual, relation_residual};
use qdeform::qcalc::QBase;
use qdeform::repclass::{classify, lambda_recurrence, RepParams};

fn unified() -> impl Strategy<Value = UnifiedParams> {
    (prop_oneof![0.3f64..0.9, 1.1f64..2.0], -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, 0.05f64..0.9)
        .prop_map(|(q, a, b, g, nu)| UnifiedParams::new(q, a, b, g, nu).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn casimir_is_constant_on_lowest_weight_modules(u in unified(), kappa0 in -1.0f64..1.0, b in -0.95f64..0.95) {
        let p = RepParams::new(u, 0.0, kappa0, b).unwrap();
        let seq = lambda_recurrence(&p, 0, 24).unwrap();
        let quad = build_lowest_weight(&seq, kappa0, p.k0(), 25).unwrap();
        let c = casimir_commutant_residual(&quad, &u).unwrap();
        prop_assert!(c.diagonal_spread < 1e-9, "{:?}", c);
        prop_assert!(c.commutator_a < 1e-9 && c.commutator_a_dag < 1e-9, "{:?}", c);
        let r = relation_residual(&quad, &u).unwrap();
        prop_assert!(r.relation_residual < 1e-10);
    }

    #[test]
    fn creation_is_the_transpose(u in unified()) {
        let quad = build_lowest_weight(&StructureSeq::closed(DeformationKind::Unified(u)), 0.0, 1.0, 20).unwrap();
        prop_assert_eq!(quad.a_dag, quad.a.transpose());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn coordinate_realization_holds(p in 0.5f64..2.0, q in 0.5f64..2.0, beta in -1.0f64..1.0, l in 1i32..=2, step in 1i32..=2) {
        let tp = TwoParamParams::new(p, q, l as f64 / step as f64, beta, l);
        prop_assume!(tp.as_ref().is_ok_and(|tp| tp.denominator().abs() > 0.05));
        prop_assert!(coordinate_realization_residual(&tp.unwrap(), 30).unwrap() < 1e-12);
    }
}

#[test]
fn catalog_matrices_satisfy_the_relation() {
    let qb = |q| QBase::new(q).unwrap();
    for kind in [
        DeformationKind::ArikCoon { q: qb(0.5) },
        DeformationKind::BiedenharnMacfarlane { q: qb(1.2) },
        DeformationKind::ChungEtAl { q: qb(0.6), alpha: 0.5, beta: 0.3 },
        DeformationKind::Bdy { q: qb(1.2), alpha: 0.8, beta: -0.2, gamma: 1.4 },
        DeformationKind::NuModified { nu: 0.3 },
        DeformationKind::QNu { q: qb(0.8), nu: 0.25 },
        DeformationKind::Abc { q: qb(0.5), a: -0.5, b: 1.0, c: 2.0 },
    ] {
        let quad = build_lowest_weight(&StructureSeq::closed(kind), 0.0, 1.0, 40).unwrap();
        let r = relation_residual(&quad, &kind.to_unified().unwrap()).unwrap();
        assert!(r.relation_residual < 1e-10, "{kind:?}: {r:?}");
        assert!(r.auxiliary.values().all(|&v| v < 1e-14), "{kind:?}: {r:?}");
    }
}

#[test]
fn finite_modules_round_trip_exactly() {
    let u = UnifiedParams::new(0.6, 0.3, 0.1, 1.2, 0.4).unwrap();
    let (x, y) = u.bases();
    let kappa0 = 0.5;
    let c = 0.6f64.powf(0.3 * kappa0 + 0.1);
    // nu = B/2 makes K an involution on the two-dimensional modules
    let b3 = (x + y) / (x - y);
    let u3 = UnifiedParams { nu: b3 / 2.0, ..u };
    let b4 = -b3;
    let u4 = UnifiedParams { nu: b4 / 2.0, ..u };
    let u1 = UnifiedParams { nu: 0.5, ..u };
    for p in [
        RepParams::new(u3, 2.0 * c / (y - x), kappa0, b3).unwrap(),
        RepParams::new(u4, 0.0, kappa0, b4).unwrap(),
        RepParams::new(u1, 0.0, kappa0, -1.0).unwrap(),
    ] {
        let cl = classify(&p, 50).unwrap();
        let quad = build_finite(&cl).unwrap();
        let r = relation_residual(&quad, &p.unified).unwrap();
        assert_eq!(r.block_dim, quad.dim);
        assert!(r.relation_residual < 1e-12, "{:?}: {r:?}", cl.case);
        assert!(r.k_squared_minus_identity < 1e-14, "{:?}: {r:?}", cl.case);
        assert!(r.auxiliary.values().all(|&v| v < 1e-14), "{:?}: {r:?}", cl.case);
    }
}
