//! The specialization Poisson order: `∂_c = ([ĉ, ·] / (q − ε))|_{q=ε}`.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::lattice::Exponent;
use crate::qtorus::{AlgebraSpec, Derivation, Element, LiftedElement};
use crate::report::{Report, Witness};

fn check_central(c: &Element, spec: &AlgebraSpec) -> Result<()> {
    c.validate(spec)?;
    if !c.is_central(spec) {
        return Err(Error::NotCentral(c.to_string()));
    }
    Ok(())
}

/// `([ĉ, r̂] / (q − ε))|_{q=ε}` for arbitrary lifts; the direct route.
pub fn specialization_bracket(c_hat: &LiftedElement, r_hat: &LiftedElement, spec: &AlgebraSpec) -> Result<Element> {
    Ok(c_hat.commutator(r_hat, spec).divide_by_q_minus_eps()?.specialize())
}

/// `∂_c(r)` through the monomial lifts of `c` and `r`.
pub fn specialization_apply(c: &Element, r: &Element, spec: &AlgebraSpec) -> Result<Element> {
    c.validate(spec)?;
    r.validate(spec)?;
    specialization_bracket(&c.lift(), &r.lift(), spec)
}

fn derivation_from_lift(c_hat: &LiftedElement, spec: &AlgebraSpec) -> Result<Derivation> {
    let images = (0..spec.rank())
        .map(|j| specialization_bracket(c_hat, &LiftedElement::generator(spec, j), spec))
        .collect::<Result<Vec<_>>>()?;
    Derivation::new(images, spec).map_err(|e| Error::Invariant(format!("specialization is not a derivation: {e}")))
}

/// `∂_c` as a derivation given by its values on the generators.
///
/// A non-central `c` surfaces as a divisibility failure.
pub fn specialization_derivation(c: &Element, spec: &AlgebraSpec) -> Result<Derivation> {
    c.validate(spec)?;
    derivation_from_lift(&c.lift(), spec)
}

/// `{a, b} = ∂_a(b)` on the center.
pub fn poisson_bracket(a: &Element, b: &Element, spec: &AlgebraSpec) -> Result<Element> {
    check_central(a, spec)?;
    check_central(b, spec)?;
    specialization_apply(a, b, spec)
}

/// Brackets of central monomials, filled on demand.
#[derive(Debug)]
pub struct PoissonBracketTable {
    spec: AlgebraSpec,
    cache: Mutex<HashMap<(Exponent, Exponent), Element>>,
}

impl PoissonBracketTable {
    pub fn new(spec: &AlgebraSpec) -> Self {
        PoissonBracketTable {
            spec: spec.clone(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    /// `{x^a, x^b}` for central exponents.
    pub fn monomial(&self, a: &[i64], b: &[i64]) -> Result<Element> {
        let key = (a.to_vec(), b.to_vec());
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = poisson_bracket(
            &Element::x(&self.spec, a.to_vec()),
            &Element::x(&self.spec, b.to_vec()),
            &self.spec,
        )?;
        self.cache.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    /// Bilinear extension to central elements.
    pub fn bracket(&self, a: &Element, b: &Element) -> Result<Element> {
        check_central(a, &self.spec)?;
        check_central(b, &self.spec)?;
        let mut out = Element::zero();
        for (x, c) in a.terms() {
            for (y, d) in b.terms() {
                out = out.add(&self.monomial(x, y)?.scale(&(c * d)));
            }
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.cache.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Skew-symmetry, Leibniz, Jacobi, centrality of brackets, and agreement of
/// the derivation `∂_a` with `{a, ·}` on central samples.
pub fn verify_poisson_axioms(spec: &AlgebraSpec, triples: &[(Element, Element, Element)]) -> Result<Report> {
    let table = PoissonBracketTable::new(spec);
    let mut report = Report::new("poisson-axioms");
    let br = |x: &Element, y: &Element| table.bracket(x, y);
    for (a, b, c) in triples {
        let inputs = || vec![format!("a = {a}"), format!("b = {b}"), format!("c = {c}")];
        let ab = br(a, b)?;
        let ba = br(b, a)?;
        report.record(ab.add(&ba).is_zero(), || Witness::new(inputs(), "{a,b} + {b,a} = 0", ab.add(&ba)));
        report.record(ab.is_central(spec), || Witness::new(inputs(), "{a,b} central", &ab));
        let bc = b.mul(c, spec);
        let lhs = br(a, &bc)?;
        let rhs = br(a, b)?.mul(c, spec).add(&b.mul(&br(a, c)?, spec));
        report.record(lhs == rhs, || Witness::new(inputs(), &rhs, &lhs));
        let jac = br(a, &br(b, c)?)?
            .add(&br(b, &br(c, a)?)?)
            .add(&br(c, &br(a, b)?)?);
        report.record(jac.is_zero(), || Witness::new(inputs(), "Jacobi sum 0", &jac));
        let via_derivation = specialization_derivation(a, spec)?.apply(b, spec);
        report.record(via_derivation == ab, || Witness::new(inputs(), &ab, &via_derivation));
    }
    Ok(report)
}

/// Compares `∂_c` computed from the monomial lifts with perturbed lifts.
///
/// Perturbing an argument lift `x̂_j ↦ x̂_j + (q − ε) ŵ` must not change the
/// value at all. Perturbing `ĉ ↦ ĉ + (q − ε) ŵ` changes `∂_c` by the inner
/// derivation `[w, ·]`, `w = ŵ|_{q=ε}`, so the bracket on the center is
/// unchanged; both facts are checked exactly.
pub fn lift_independence_check(c: &Element, spec: &AlgebraSpec, perturbations: &[LiftedElement]) -> Result<Report> {
    check_central(c, spec)?;
    let mut report = Report::new("lift-independence");
    let base = specialization_derivation(c, spec)?;
    let c_hat = c.lift();
    let q_minus_eps = LiftedElement::constant(spec, crate::cyclotomic::CycScalar::one(spec.field()))
        .scale_coef(&crate::cyclotomic::QLaurent::q_minus_eps(spec.field()));
    let center = crate::trace::CentralSubalgebra::center(spec)?;
    for w_hat in perturbations {
        w_hat.validate(spec)?;
        let offset = q_minus_eps.mul(w_hat, spec);
        let w = w_hat.specialize();
        for j in 0..spec.rank() {
            let xj = LiftedElement::generator(spec, j);
            let v = specialization_bracket(&c_hat, &xj.add(&offset), spec)?;
            report.record(v == *base.image(j), || {
                Witness::new(
                    vec![format!("c = {c}"), format!("argument offset (q - e) * ({w_hat})"), format!("x{}", j + 1)],
                    base.image(j),
                    &v,
                )
            });
        }
        let perturbed = derivation_from_lift(&c_hat.add(&offset), spec)?;
        for j in 0..spec.rank() {
            let expected = base.image(j).add(&w.commutator(&Element::generator(spec, j), spec));
            report.record(*perturbed.image(j) == expected, || {
                Witness::new(
                    vec![format!("c = {c}"), format!("lift offset (q - e) * ({w_hat})"), format!("x{}", j + 1)],
                    &expected,
                    perturbed.image(j),
                )
            });
        }
        for k in 0..center.nvars() {
            let z = center.variable(spec, k);
            let (a, b) = (base.apply(&z, spec), perturbed.apply(&z, spec));
            report.record(a == b, || {
                Witness::new(
                    vec![format!("c = {c}"), format!("lift offset (q - e) * ({w_hat})"), format!("z = {z}")],
                    &a,
                    &b,
                )
            });
        }
    }
    Ok(report)
}
