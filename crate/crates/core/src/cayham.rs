//! Newton's identities, characteristic polynomials and Cayley–Hamilton checks.

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::qtorus::{AlgebraSpec, Element};
use crate::report::{Report, Witness};
use crate::trace::TraceForm;

/// `χ(t) = t^d − c_1 t^{d−1} + … + (−1)^d c_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    pub degree: usize,
    pub coeffs: Vec<Element>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPolyJson {
    pub degree: usize,
    pub coefficients: Vec<String>,
}

impl CharPoly {
    /// Horner evaluation at `a`; the coefficients are central.
    pub fn evaluate(&self, a: &Element, spec: &AlgebraSpec) -> Element {
        let mut acc = Element::one(spec);
        for (k, c) in self.coeffs.iter().enumerate() {
            acc = acc.mul(a, spec);
            acc = if k % 2 == 0 { acc.sub(c) } else { acc.add(c) };
        }
        acc
    }

    pub fn to_json(&self) -> CharPolyJson {
        CharPolyJson {
            degree: self.degree,
            coefficients: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl std::fmt::Display for CharPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let d = self.degree;
        let power = |k: usize| match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        write!(f, "{}", if d == 0 { "1".into() } else { power(d) })?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if k % 2 == 0 { '-' } else { '+' };
            let p = power(d - k - 1);
            if p.is_empty() {
                write!(f, " {sign} ({c})")?;
            } else {
                write!(f, " {sign} ({c}) {p}")?;
            }
        }
        Ok(())
    }
}

/// `σ_1..σ_d` from power sums by `k σ_k = Σ_{i=1}^{k} (−1)^{i−1} σ_{k−i} ψ_i`.
pub fn newton_coefficients(d: usize, psi: &[Element], spec: &AlgebraSpec) -> Result<Vec<Element>> {
    if d == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    if psi.len() < d {
        return Err(Error::InvalidParameter(format!("need {d} power sums, got {}", psi.len())));
    }
    let mut sigma = vec![Element::one(spec)];
    for k in 1..=d {
        let mut acc = Element::zero();
        for i in 1..=k {
            let t = sigma[k - i].mul(&psi[i - 1], spec);
            acc = if i % 2 == 1 { acc.add(&t) } else { acc.sub(&t) };
        }
        sigma.push(acc.scale_rational(&BigRational::new(1.into(), (k as i64).into())));
    }
    sigma.remove(0);
    Ok(sigma)
}

/// `c_k(a) = p_k(tr(a), …, tr(a^k))`.
pub fn char_poly(a: &Element, d: usize, tr: &TraceForm, spec: &AlgebraSpec) -> Result<CharPoly> {
    a.validate(spec)?;
    let mut psi = Vec::with_capacity(d);
    let mut power = Element::one(spec);
    for _ in 0..d {
        power = power.mul(a, spec);
        psi.push(tr.apply(&power, spec)?);
    }
    Ok(CharPoly {
        degree: d,
        coeffs: newton_coefficients(d, &psi, spec)?,
    })
}

/// Returns `χ_{d,a}(a)` and a report on `χ_{d,a}(a) = 0` and `tr(1) = d`.
pub fn verify_cayley_hamilton(a: &Element, d: usize, tr: &TraceForm, spec: &AlgebraSpec) -> Result<(Element, Report)> {
    let chi = char_poly(a, d, tr, spec)?;
    let residual = chi.evaluate(a, spec);
    let mut report = Report::new("cayley-hamilton");
    report.record(residual.is_zero(), || Witness::new(vec![format!("a = {a}"), format!("d = {d}")], "0", &residual));
    let one = tr.apply(&Element::one(spec), spec)?;
    let expected = Element::constant(spec, CycScalar::from_int(spec.field(), d as i64));
    report.record(one == expected, || Witness::new(vec!["tr(1)".into()], &expected, &one));
    Ok((residual, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_element;
    use crate::trace::CentralSubalgebra;

    fn qp2() -> AlgebraSpec {
        AlgebraSpec::new(2, vec![vec![0, 1], vec![-1, 0]], vec![false, false]).unwrap()
    }

    fn el(spec: &AlgebraSpec, s: &str) -> Element {
        parse_element(spec, s).unwrap()
    }

    #[test]
    fn newton_examples() {
        let spec = qp2();
        let (p1, p2) = (el(&spec, "x1^2 + 3"), el(&spec, "x2^2"));
        let c = newton_coefficients(2, &[p1.clone(), p2.clone()], &spec).unwrap();
        assert_eq!(c[0], p1);
        assert_eq!(c[1], p1.mul(&p1, &spec).sub(&p2).scale_rational(&BigRational::new(1.into(), 2.into())));
        assert_eq!(newton_coefficients(1, &[p1.clone()], &spec).unwrap(), vec![p1.clone()]);
        let s = el(&spec, "x1^2");
        let c = newton_coefficients(3, &[Element::zero(), s.clone(), Element::zero()], &spec).unwrap();
        assert_eq!(c, vec![Element::zero(), s.scale_rational(&BigRational::new((-1).into(), 2.into())), Element::zero()]);
    }

    #[test]
    fn char_poly_examples() {
        let spec = qp2();
        let red = TraceForm::reduced(&spec).unwrap();
        let chi = char_poly(&el(&spec, "x1"), 2, &red, &spec).unwrap();
        assert_eq!(chi.coeffs, vec![Element::zero(), el(&spec, "-x1^2")]);
        assert_eq!(chi.to_string(), "t^2 + (-x1^2)");
        let chi = char_poly(&el(&spec, "x1 + x2"), 2, &red, &spec).unwrap();
        assert_eq!(chi.coeffs, vec![Element::zero(), el(&spec, "-x1^2 - x2^2")]);
        let z = el(&spec, "x1^2 x2^2 + 1");
        let chi = char_poly(&z, 2, &red, &spec).unwrap();
        assert_eq!(chi.coeffs, vec![z.scale_rational(&BigRational::from_integer(2.into())), z.mul(&z, &spec)]);
    }

    #[test]
    fn cayley_hamilton_examples() {
        let spec = qp2();
        let red = TraceForm::reduced(&spec).unwrap();
        let reg = TraceForm::regular(&spec, &CentralSubalgebra::ell_powers(&spec)).unwrap();
        let x1 = el(&spec, "x1");
        let (res, rep) = verify_cayley_hamilton(&x1, 2, &red, &spec).unwrap();
        assert!(res.is_zero() && rep.passed);
        let (res, rep) = verify_cayley_hamilton(&x1, 4, &reg, &spec).unwrap();
        assert!(res.is_zero() && rep.passed);
        // wrong degrees
        let (res, rep) = verify_cayley_hamilton(&x1, 3, &red, &spec).unwrap();
        assert!(!rep.passed);
        assert!(res.is_zero());
        let (res, rep) = verify_cayley_hamilton(&x1, 1, &red, &spec).unwrap();
        assert_eq!(res, x1);
        assert!(!rep.passed);
        let (res, rep) = verify_cayley_hamilton(&x1, 3, &reg, &spec).unwrap();
        assert!(!res.is_zero());
        assert!(!rep.passed);
    }
}
