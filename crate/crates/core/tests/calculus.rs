use proptest::prelude::*;
use rumin_core::algebra::{RawAlgebra, RawBracket};
use rumin_core::budget::{Unlimited, WorkBudget};
use rumin_core::calculus::{parametrix_identity_check, FormKey, GroupCalculus, PolyForm};
use rumin_core::exterior::FormMonomial;
use rumin_core::poly::Exponents;
use rumin_core::{builtin, Error, GradedLieAlgebra, Model, Rational};

fn random_polyform(alg: &GradedLieAlgebra, terms: &[(u64, Vec<u16>, i64)]) -> PolyForm {
    let n = alg.dim();
    terms
        .iter()
        .map(|(mask, exps, c)| {
            let mut e = exps.clone();
            e.resize(n, 0);
            (FormKey::new(FormMonomial(mask & ((1 << n) - 1)), Exponents(e)), Rational::from(*c))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_squared_vanishes(terms in prop::collection::vec((0u64..128, prop::collection::vec(0u16..3, 7), -4i64..5), 1..6)) {
        for alg in [builtin(Model::Heisenberg, 3).unwrap(), builtin(Model::Quaternionic, 2).unwrap()] {
            let g = GroupCalculus::new(&alg).unwrap();
            let form = random_polyform(&alg, &terms);
            prop_assert!(g.d(&g.d(&form)).is_zero());
        }
    }

    #[test]
    fn lie_derivative_commutes_with_d(terms in prop::collection::vec((0u64..32, prop::collection::vec(0u16..3, 5), -4i64..5), 1..5), a in 0usize..5) {
        let alg = builtin(Model::Heisenberg, 3).unwrap();
        let g = GroupCalculus::new(&alg).unwrap();
        let form = random_polyform(&alg, &terms);
        prop_assert_eq!(g.lie_derivative(a, &g.d(&form)), g.d(&g.lie_derivative(a, &form)));
        prop_assert_eq!(g.cartan(a, &form), g.lie_derivative(a, &form));
    }
}

#[test]
fn suites_pass() {
    for (m, n, p) in [(Model::Heisenberg, 2, 3), (Model::Abelian, 2, 2), (Model::Quaternionic, 2, 1)] {
        let alg = builtin(m, n).unwrap();
        let r = parametrix_identity_check(&alg, p, &mut Unlimited).unwrap();
        assert!(r.passed(), "{}: {:?}", alg.name(), r.failures().collect::<Vec<_>>());
        assert_eq!(r.checks.len(), 6);
    }
}

#[test]
fn abelian_parametrix_is_euclidean_laplacian() {
    let alg = builtin(Model::Abelian, 2).unwrap();
    let g = GroupCalculus::new(&alg).unwrap();
    for key in g.spanning_set(2) {
        let form = PolyForm::unit(key.clone());
        let mut lhs = g.d(&g.parametrix(&form));
        lhs.add(&g.parametrix(&g.d(&form)));
        let mut lap = PolyForm::new();
        for v in 0..2 {
            if let Some((f1, e1)) = key.exps.differentiate(v) {
                if let Some((f2, e2)) = e1.differentiate(v) {
                    lap.add_term(FormKey::new(key.form, e2), &Rational::from((f1 * f2) as i64));
                }
            }
        }
        assert_eq!(lhs, lap, "{}", key);
    }
}

#[test]
fn budget_interrupts_with_partial_report() {
    let alg = builtin(Model::Heisenberg, 2).unwrap();
    let r = parametrix_identity_check(&alg, 3, &mut WorkBudget::new(50)).unwrap();
    assert!(r.interrupted.is_some());
    assert!(!r.passed());
}

#[test]
fn three_step_rejected() {
    // Filiform algebra: [e1,e2]=e3, [e1,e3]=e4, layers (2,1,1).
    let raw = RawAlgebra {
        name: "filiform".into(),
        layers: vec![2, 1, 1],
        brackets: vec![
            RawBracket { a: 1, b: 2, terms: vec![(3, Rational::one())] },
            RawBracket { a: 1, b: 3, terms: vec![(4, Rational::one())] },
        ],
        inner_product: None,
    };
    let alg = GradedLieAlgebra::new(&raw).unwrap();
    assert!(matches!(GroupCalculus::new(&alg), Err(Error::StepTooLarge { step: 3 })));
    // The fiber level still works for any step.
    let b = rumin_core::exterior::cohomology_ranks(&alg).unwrap();
    assert_eq!(b.iter().enumerate().map(|(k, r)| if k % 2 == 0 { *r as i64 } else { -(*r as i64) }).sum::<i64>(), 0);
}

#[test]
fn weight_filtration_per_term() {
    let alg = builtin(Model::Quaternionic, 2).unwrap();
    let g = GroupCalculus::new(&alg).unwrap();
    for key in g.spanning_set(1) {
        assert!(g.check_filtration(&key).is_ok(), "{}", key);
        // The weight-preserving part of d is d0.
        let n = key.weight(&alg);
        let same: PolyForm = g.d_key(&key).iter().filter(|(t, _)| t.weight(&alg) == n).map(|(t, c)| (t.clone(), c.clone())).collect();
        let fiber = rumin_core::exterior::d0_monomial(&alg, key.form);
        let expect: PolyForm = fiber.iter().map(|(m, c)| (FormKey::new(*m, key.exps.clone()), c.clone())).collect();
        assert_eq!(same, expect);
    }
}
