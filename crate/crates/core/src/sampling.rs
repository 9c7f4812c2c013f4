//! Seeded pseudorandom samples for the verifiers.

use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::{CycField, CycScalar, QLaurent};
use crate::lattice::{Exponent, Lattice};
use crate::qtorus::{AlgebraSpec, Element, LiftedElement};
use std::sync::Arc;

pub const DEFAULT_SEED: u64 = 1729;

/// Deterministic sample source (ChaCha8).
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// A scalar with small integer coordinates, occasionally a fraction.
    pub fn scalar(&mut self, field: &Arc<CycField>) -> CycScalar {
        let coeffs = (0..field.degree())
            .map(|_| {
                let num = self.int(-3, 3);
                let den = if self.rng.gen_bool(0.2) { self.int(2, 3) } else { 1 };
                BigRational::new(num.into(), den.into())
            })
            .collect();
        CycScalar::from_coeffs(field, coeffs)
    }

    pub fn nonzero_scalar(&mut self, field: &Arc<CycField>) -> CycScalar {
        loop {
            let s = self.scalar(field);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// An admissible exponent with `Σ |a_i| ≤ max_degree`.
    pub fn exponent(&mut self, spec: &AlgebraSpec, max_degree: i64) -> Exponent {
        loop {
            let a: Exponent = spec
                .invertible()
                .iter()
                .map(|&inv| self.int(if inv { -max_degree } else { 0 }, max_degree))
                .collect();
            if a.iter().map(|x| x.abs()).sum::<i64>() <= max_degree {
                return a;
            }
        }
    }

    /// A random element with at most `max_terms` terms of degree `≤ max_degree`.
    pub fn element(&mut self, spec: &AlgebraSpec, max_degree: i64, max_terms: usize) -> Element {
        let terms = self.int(1, max_terms as i64);
        let mut out = Element::zero();
        for _ in 0..terms {
            let a = self.exponent(spec, max_degree);
            let c = self.nonzero_scalar(spec.field());
            out.add_term(a, c);
        }
        out
    }

    /// A nonzero random element.
    pub fn nonzero_element(&mut self, spec: &AlgebraSpec, max_degree: i64, max_terms: usize) -> Element {
        loop {
            let e = self.element(spec, max_degree, max_terms);
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// An admissible lattice point `Σ m_k b_k` with `|m_k| ≤ max_coord`.
    pub fn lattice_point(&mut self, spec: &AlgebraSpec, lattice: &Lattice, max_coord: i64) -> Exponent {
        loop {
            let coords: Vec<i64> = (0..lattice.rank())
                .map(|_| self.int(-max_coord, max_coord))
                .collect();
            let a = lattice.combine(&coords);
            if spec.check_exponent(&a).is_ok() {
                return a;
            }
        }
    }

    /// `x^λ` for a random admissible `λ` in the lattice.
    pub fn lattice_monomial(&mut self, spec: &AlgebraSpec, lattice: &Lattice, max_coord: i64) -> Element {
        Element::x(spec, self.lattice_point(spec, lattice, max_coord))
    }

    /// A random combination of lattice monomials.
    pub fn lattice_element(
        &mut self,
        spec: &AlgebraSpec,
        lattice: &Lattice,
        max_coord: i64,
        max_terms: usize,
    ) -> Element {
        let terms = self.int(1, max_terms as i64);
        let mut out = Element::zero();
        for _ in 0..terms {
            let a = self.lattice_point(spec, lattice, max_coord);
            let c = self.nonzero_scalar(spec.field());
            out.add_term(a, c);
        }
        out
    }

    /// A lifted element whose coefficients are Laurent polynomials in q.
    pub fn lifted_element(
        &mut self,
        spec: &AlgebraSpec,
        max_degree: i64,
        max_terms: usize,
        max_q: i64,
    ) -> LiftedElement {
        let terms = self.int(1, max_terms as i64);
        let mut out = LiftedElement::zero();
        for _ in 0..terms {
            let a = self.exponent(spec, max_degree);
            let mut c = QLaurent::zero(spec.field());
            for _ in 0..self.int(1, 3) {
                let k = self.int(-max_q, max_q);
                c.add_term(k, self.scalar(spec.field()));
            }
            out.add_term(a, c);
        }
        out
    }
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler::new(DEFAULT_SEED)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp2() -> AlgebraSpec {
        AlgebraSpec::new(2, vec![vec![0, 1], vec![-1, 0]], vec![false, false]).unwrap()
    }

    #[test]
    fn reproducible() {
        let spec = qp2();
        let a: Vec<Element> = {
            let mut s = Sampler::new(7);
            (0..5).map(|_| s.element(&spec, 6, 3)).collect()
        };
        let b: Vec<Element> = {
            let mut s = Sampler::new(7);
            (0..5).map(|_| s.element(&spec, 6, 3)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn respects_bounds() {
        let spec = qp2();
        let mut s = Sampler::new(3);
        for _ in 0..200 {
            let a = s.exponent(&spec, 6);
            assert!(a.iter().all(|&x| x >= 0));
            assert!(a.iter().sum::<i64>() <= 6);
        }
        let l = Lattice::scaled(2, 2);
        for _ in 0..50 {
            let p = s.lattice_point(&spec, &l, 3);
            assert!(l.contains(&p));
            assert!(spec.check_exponent(&p).is_ok());
        }
    }
}
