use std::f64::consts::PI;

use num::ToPrimitive;
use proptest::prelude::*;

use pto_core::cyclotomic::{CycField, CycScalar};
use pto_core::poisson::{poisson_bracket, specialization_derivation, verify_poisson_axioms};
use pto_core::qtorus::{center_lattice, pi_degree, AlgebraSpec, Element};
use pto_core::sampling::Sampler;
use pto_core::trace::CentralSubalgebra;

fn random_spec(seed: u64, n: usize, ell: u32, invertible: bool) -> AlgebraSpec {
    let mut s = Sampler::new(seed);
    let mut lambda = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            lambda[i][j] = s.int(-2, 2);
            lambda[j][i] = -lambda[i][j];
        }
    }
    let mask = (0..n).map(|_| invertible && s.coin()).collect();
    AlgebraSpec::new(ell, lambda, mask).unwrap()
}

fn spec_strategy() -> impl Strategy<Value = AlgebraSpec> {
    (any::<u64>(), 1usize..=3, 2u32..=5, any::<bool>()).prop_map(|(seed, n, ell, inv)| random_spec(seed, n, ell, inv))
}

fn to_complex(x: &CycScalar) -> (f64, f64) {
    let ell = x.field().ell() as f64;
    x.coeffs().iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
        let c = c.to_f64().unwrap();
        let t = 2.0 * PI * k as f64 / ell;
        (re + c * t.cos(), im + c * t.sin())
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    let scale = 1.0 + a.0.abs() + a.1.abs();
    (a.0 - b.0).abs() < 1e-7 * scale && (a.1 - b.1).abs() < 1e-7 * scale
}

fn scalar(field: &std::sync::Arc<CycField>, coeffs: &[i64]) -> CycScalar {
    coeffs
        .iter()
        .enumerate()
        .fold(CycScalar::zero(field), |acc, (k, &c)| {
            &acc + &(&CycScalar::eps_pow(field, k as i64) * &CycScalar::from_int(field, c))
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn cyclotomic_embedding_is_a_ring_map(ell in 2u32..=12, a in prop::collection::vec(-5i64..=5, 0..12), b in prop::collection::vec(-5i64..=5, 0..12)) {
        let field = CycField::new(ell).unwrap();
        let (x, y) = (scalar(&field, &a), scalar(&field, &b));
        let (cx, cy) = (to_complex(&x), to_complex(&y));
        let prod = to_complex(&(&x * &y));
        prop_assert!(close(prod, (cx.0 * cy.0 - cx.1 * cy.1, cx.0 * cy.1 + cx.1 * cy.0)));
        let sum = to_complex(&(&x + &y));
        prop_assert!(close(sum, (cx.0 + cy.0, cx.1 + cy.1)));
        prop_assert!(CycScalar::eps_pow(&field, ell as i64).is_one());
    }

    #[test]
    fn cyclotomic_inverse(ell in 2u32..=12, a in prop::collection::vec(-5i64..=5, 1..12)) {
        let field = CycField::new(ell).unwrap();
        let x = scalar(&field, &a);
        prop_assume!(!x.is_zero());
        let inv = x.inverse().unwrap();
        prop_assert!((&x * &inv).is_one());
    }

    #[test]
    fn multiplication_is_associative(spec in spec_strategy(), seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let d = 2 * spec.ell() as i64;
        let (a, b, c) = (s.element(&spec, d, 3), s.element(&spec, d, 3), s.element(&spec, d, 3));
        prop_assert_eq!(a.mul(&b, &spec).mul(&c, &spec), a.mul(&b.mul(&c, &spec), &spec));
        let one = Element::one(&spec);
        prop_assert_eq!(a.mul(&one, &spec), a.clone());
        let sum = b.add(&c);
        prop_assert_eq!(a.mul(&sum, &spec), a.mul(&b, &spec).add(&a.mul(&c, &spec)));
    }

    #[test]
    fn normal_form_matches_word_reordering(seed in any::<u64>(), n in 1usize..=3, ell in 2u32..=5) {
        let spec = random_spec(seed, n, ell, false);
        let mut s = Sampler::new(seed ^ 1);
        let a = s.exponent(&spec, 4);
        let b = s.exponent(&spec, 4);
        let mut word: Vec<usize> = Vec::new();
        for e in [&a, &b] {
            for (i, &k) in e.iter().enumerate() {
                word.extend(std::iter::repeat(i).take(k as usize));
            }
        }
        // Bubble sort with x_i x_j = q^{Λ_ij} x_j x_i.
        let mut exponent = 0;
        let mut changed = true;
        while changed {
            changed = false;
            for p in 0..word.len().saturating_sub(1) {
                let (i, j) = (word[p], word[p + 1]);
                if i > j {
                    exponent += spec.lambda()[i][j];
                    word.swap(p, p + 1);
                    changed = true;
                }
            }
        }
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let expected = Element::x(&spec, sum).scale(&CycScalar::eps_pow(spec.field(), exponent));
        prop_assert_eq!(Element::x(&spec, a.clone()).mul(&Element::x(&spec, b.clone()), &spec), expected);
        prop_assert_eq!(spec.kappa(&a, &b), exponent);
    }

    #[test]
    fn specialization_is_a_homomorphism(spec in spec_strategy(), seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let d = spec.ell() as i64 + 1;
        let a = s.lifted_element(&spec, d, 3, 2);
        let b = s.lifted_element(&spec, d, 3, 2);
        prop_assert_eq!(a.mul(&b, &spec).specialize(), a.specialize().mul(&b.specialize(), &spec));
        prop_assert_eq!(a.add(&b).specialize(), a.specialize().add(&b.specialize()));
    }

    #[test]
    fn centrality_matches_residues(spec in spec_strategy(), seed in any::<u64>()) {
        let k = center_lattice(&spec).unwrap();
        let ell = spec.ell() as i64;
        let mut s = Sampler::new(seed);
        for _ in 0..8 {
            let a = s.exponent(&spec, 3 * ell);
            let residue: Vec<i64> = a.iter().map(|x| x.rem_euclid(ell)).collect();
            let x = Element::x(&spec, a.clone());
            let brute = (0..spec.rank()).all(|i| {
                let g = Element::generator(&spec, i);
                x.mul(&g, &spec) == g.mul(&x, &spec)
            });
            prop_assert_eq!(k.contains(&residue), brute);
            prop_assert_eq!(x.is_central(&spec), brute);
        }
    }

    #[test]
    fn pi_degree_squared_times_center(spec in spec_strategy()) {
        let n = pi_degree(&spec).unwrap();
        let k = center_lattice(&spec).unwrap().len() as u64;
        prop_assert_eq!(n * n * k, (spec.ell() as u64).pow(spec.rank() as u32));
    }

    #[test]
    fn brackets_of_central_monomials_are_log_canonical(seed in any::<u64>(), n in 2usize..=3, ell in 2u32..=5) {
        let spec = random_spec(seed, n, ell, true);
        let z = CentralSubalgebra::center(&spec).unwrap();
        let mut s = Sampler::new(seed ^ 7);
        let a = s.lattice_point(&spec, z.lattice(), 2);
        let b = s.lattice_point(&spec, z.lattice(), 2);
        let (xa, xb) = (Element::x(&spec, a.clone()), Element::x(&spec, b.clone()));
        let w = spec.kappa(&a, &b) - spec.kappa(&b, &a);
        let expected = xa
            .mul(&xb, &spec)
            .scale(&(&CycScalar::eps_pow(spec.field(), -1) * &CycScalar::from_int(spec.field(), w)));
        prop_assert_eq!(poisson_bracket(&xa, &xb, &spec).unwrap(), expected);
    }

    #[test]
    fn specialization_derivations_are_derivations(spec in spec_strategy(), seed in any::<u64>()) {
        let z = CentralSubalgebra::center(&spec).unwrap();
        let mut s = Sampler::new(seed);
        let c = s.lattice_element(&spec, z.lattice(), 1, 2);
        let d = specialization_derivation(&c, &spec).unwrap();
        let deg = spec.ell() as i64;
        let (a, b) = (s.element(&spec, deg, 3), s.element(&spec, deg, 3));
        let lhs = d.apply(&a.mul(&b, &spec), &spec);
        let rhs = d.apply(&a, &spec).mul(&b, &spec).add(&a.mul(&d.apply(&b, &spec), &spec));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn poisson_axioms_on_random_algebras(spec in spec_strategy(), seed in any::<u64>()) {
        let z = CentralSubalgebra::center(&spec).unwrap();
        let mut s = Sampler::new(seed);
        let triples: Vec<_> = (0..3)
            .map(|_| {
                (
                    s.lattice_element(&spec, z.lattice(), 1, 2),
                    s.lattice_element(&spec, z.lattice(), 1, 2),
                    s.lattice_element(&spec, z.lattice(), 1, 2),
                )
            })
            .collect();
        let report = verify_poisson_axioms(&spec, &triples).unwrap();
        prop_assert!(report.passed, "{:?}", report.witnesses);
    }
}
