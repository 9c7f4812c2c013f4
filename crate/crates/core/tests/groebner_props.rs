use proptest::prelude::*;

use pto_core::cyclotomic::{CycField, CycScalar};
use pto_core::groebner::{buchberger, member, reduce, CPoly, MonomialOrder, PolyIdeal};

const NVARS: usize = 2;

fn poly(terms: &[(u8, u8, i64)]) -> CPoly {
    let field = CycField::new(3).unwrap();
    let mut p = CPoly::zero(&field, NVARS);
    for &(a, b, c) in terms {
        p.add_term(vec![a as i64, b as i64], CycScalar::from_int(&field, c));
    }
    p
}

fn poly_strategy() -> impl Strategy<Value = CPoly> {
    prop::collection::vec((0u8..=2, 0u8..=2, -3i64..=3), 1..=3)
        .prop_map(|t| poly(&t))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn names() -> Vec<String> {
    vec!["u1".into(), "u2".into()]
}

fn order_strategy() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![Just(MonomialOrder::Lex), Just(MonomialOrder::GrLex), Just(MonomialOrder::DegRevLex)]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn reduction_is_idempotent(gens in prop::collection::vec(poly_strategy(), 1..=3), f in poly_strategy(), order in order_strategy()) {
        let gb = buchberger(&gens, order, 5_000).unwrap();
        let r = reduce(&f, &gb, order);
        prop_assert_eq!(reduce(&r, &gb, order), r.clone());
        prop_assert!(reduce(&f.sub(&r), &gb, order).is_zero());
    }

    #[test]
    fn ideal_is_closed_under_combinations(gens in prop::collection::vec(poly_strategy(), 1..=3), a in poly_strategy(), b in poly_strategy()) {
        let ideal = PolyIdeal::new(names(), vec![false; NVARS], gens.clone()).unwrap();
        let combo = gens[0].mul(&a).add(&gens[gens.len() - 1].mul(&b));
        prop_assert!(member(&combo, &ideal).unwrap());
        for g in &gens {
            prop_assert!(member(g, &ideal).unwrap());
        }
    }

    #[test]
    fn reduced_basis_ignores_generator_order(gens in prop::collection::vec(poly_strategy(), 1..=3), order in order_strategy()) {
        let mut reversed = gens.clone();
        reversed.reverse();
        prop_assert_eq!(buchberger(&gens, order, 5_000).unwrap(), buchberger(&reversed, order, 5_000).unwrap());
    }

    #[test]
    fn membership_agrees_across_orders(gens in prop::collection::vec(poly_strategy(), 1..=2), f in poly_strategy()) {
        let base = PolyIdeal::new(names(), vec![false; NVARS], gens).unwrap();
        let results: Vec<bool> = [MonomialOrder::Lex, MonomialOrder::GrLex, MonomialOrder::DegRevLex]
            .into_iter()
            .map(|o| member(&f, &base.clone().with_order(o)).unwrap())
            .collect();
        prop_assert!(results.iter().all(|&r| r == results[0]));
    }

    #[test]
    fn inverted_variables_act_as_units(g in poly_strategy(), k in 1i64..=3) {
        let ideal = PolyIdeal::new(names(), vec![true, false], vec![g.clone()]).unwrap();
        let field = g.field().clone();
        let shifted = g.mul_term(&[-k, 0], &CycScalar::one(&field));
        prop_assert!(member(&shifted, &ideal).unwrap());
        let u1 = CPoly::var(&field, NVARS, 0);
        prop_assert!(PolyIdeal::new(names(), vec![true, false], vec![u1]).unwrap().is_unit().unwrap());
    }
}
