use std::sync::Arc;

use jordanlab::algebra::{identity_residuals, jordan_mul, q_operator, Algebra, Element};
use jordanlab::commutation::{
    commutant, generate_subalgebra, operator_commute, theorem_report, Verdict, DEFAULT_TOL,
};
use jordanlab::families::Family;
use jordanlab::sea::{perp, seq_product, Effect};
use jordanlab::spectral::{is_positive, order_unit_norm, spectral_decompose, sqrt};
use proptest::prelude::*;

const FAMILIES: [&str; 7] = ["sym_r:3", "herm_c:2", "herm_c:3", "herm_q:2", "spin:3", "spin:5", "albert"];

fn algebra(spec: &str) -> Arc<Algebra> {
    spec.parse::<Family>().unwrap().build().unwrap()
}

/// A family together with `k` coordinate vectors in it.
fn elements(k: usize) -> impl Strategy<Value = (Arc<Algebra>, Vec<Element>)> {
    (0..FAMILIES.len()).prop_flat_map(move |i| {
        let alg = algebra(FAMILIES[i]);
        let d = alg.dim();
        proptest::collection::vec(proptest::collection::vec(-2.0..2.0f64, d), k).prop_map(move |vs| {
            let els = vs.into_iter().map(|v| Element::new(&alg, v).unwrap()).collect();
            (alg.clone(), els)
        })
    })
}

fn effect_of(x: &Element) -> Effect {
    let b = x.square();
    Effect::new(b.scale(1.0 / (order_unit_norm(&b).unwrap() + 1.0))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn identities_hold((_, e) in elements(3)) {
        let r = identity_residuals(&e[0], &e[1], &e[2]).unwrap();
        prop_assert!(r.all_within(1e-8), "{:?}", r);
    }

    #[test]
    fn product_is_commutative_and_unital((alg, e) in elements(2)) {
        let (a, b) = (&e[0], &e[1]);
        let ab = jordan_mul(a, b).unwrap();
        prop_assert!(ab.distance(&jordan_mul(b, a).unwrap()) <= 1e-12 * (1.0 + ab.norm()));
        prop_assert!(jordan_mul(&Element::unit(&alg), a).unwrap().distance(a) <= 1e-12 * (1.0 + a.norm()));
    }

    #[test]
    fn spectral_decomposition_reconstructs((_, e) in elements(1)) {
        let a = &e[0];
        let dec = spectral_decompose(a).unwrap();
        prop_assert!(dec.residuals(a).worst_ratio() <= 1e-8);
        let back = dec.apply(|l| l).unwrap();
        prop_assert!(back.distance(a) <= 1e-8 * (1.0 + a.norm()));
    }

    #[test]
    fn square_roots_and_norms((_, e) in elements(2)) {
        let (a, b) = (&e[0], &e[1]);
        let p = a.square();
        let r = sqrt(&p).unwrap();
        prop_assert!(is_positive(&r));
        prop_assert!(r.square().distance(&p) <= 1e-8 * (1.0 + p.norm()));
        let na = order_unit_norm(a).unwrap();
        prop_assert!((order_unit_norm(&p).unwrap() - na * na).abs() <= 1e-8 * (1.0 + na).powi(2));
        let sum = &p + &b.square();
        prop_assert!(order_unit_norm(&p).unwrap() <= order_unit_norm(&sum).unwrap() * (1.0 + 1e-10) + 1e-12);
        let qp = q_operator(b).apply(&p).unwrap();
        prop_assert!(is_positive(&qp));
    }

    #[test]
    fn sequential_product_stays_in_unit_interval((alg, e) in elements(2)) {
        let (a, b) = (effect_of(&e[0]), effect_of(&e[1]));
        let ab = seq_product(&a, &b).unwrap();
        let dec = spectral_decompose(ab.element()).unwrap();
        prop_assert!(dec.min() >= -1e-9 && dec.max() <= 1.0 + 1e-9);
        let one_a = seq_product(&Effect::one(&alg), &a).unwrap();
        prop_assert!(one_a.element().distance(a.element()) <= 1e-9);
        prop_assert!(perp(&perp(&a)).element().distance(a.element()) <= 1e-15);
        // a & a = a²
        let aa = seq_product(&a, &a).unwrap();
        prop_assert!(aa.element().distance(&a.element().square()) <= 1e-9);
    }

    #[test]
    fn commutant_contains_its_generators((_, e) in elements(1)) {
        let a = &e[0];
        let c = commutant(std::slice::from_ref(a)).unwrap();
        prop_assert!(c.contains_unit());
        prop_assert!(c.span_residual(a) <= 1e-8 * (1.0 + a.norm()));
        prop_assert!(c.span_residual(&a.square()) <= 1e-8 * (1.0 + a.square().norm()));
        prop_assert!(c.closure_defect() <= 1e-8);
    }

    #[test]
    fn one_generator_subalgebras_are_associative((_, e) in elements(1)) {
        let a = &e[0];
        let g = generate_subalgebra(std::slice::from_ref(a), true).unwrap();
        let dec = spectral_decompose(a).unwrap();
        prop_assert_eq!(g.dim(), dec.len());
        let r = theorem_report(a, &a.square(), DEFAULT_TOL).unwrap();
        prop_assert!(r.op_commute && r.assoc && r.assoc_mutual && r.squares_commute);
        prop_assert_eq!(r.verdict, Verdict::Consistent);
    }

    #[test]
    fn operator_commutation_is_symmetric((_, e) in elements(2)) {
        let (a, b) = (&e[0], &e[1]);
        prop_assert_eq!(
            operator_commute(a, b, DEFAULT_TOL).unwrap(),
            operator_commute(b, a, DEFAULT_TOL).unwrap()
        );
    }
}
