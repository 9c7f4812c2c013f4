//! Central monomial subalgebras, free-module frames, and trace maps.

use std::collections::HashMap;

use num::BigRational;

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::groebner::{default_names, CPoly};
use crate::lattice::{Exponent, Lattice};
use crate::qtorus::{center_exponent_lattice, pi_degree, AlgebraSpec, Derivation, Element};
use crate::report::{Report, Witness};

/// The span of the admissible monomials `x^λ`, `λ ∈ L`, for a lattice `L`
/// of central exponents.
///
/// Its polynomial variables `u_k = x^{b_k}` are the monomials of the
/// lattice basis; `u_k` is inverted when `b_k` only involves invertible
/// generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralSubalgebra {
    lattice: Lattice,
    inverted: Vec<bool>,
}

impl CentralSubalgebra {
    pub fn new(spec: &AlgebraSpec, lattice: Lattice) -> Result<Self> {
        if lattice.rank() != spec.rank() {
            return Err(Error::InvalidParameter(format!(
                "lattice rank {} does not match N = {}",
                lattice.rank(),
                spec.rank()
            )));
        }
        if let Some(b) = lattice.basis().iter().find(|b| !spec.is_central_exponent(b)) {
            return Err(Error::NotCentral(format!("x^{b:?}")));
        }
        let inverted = lattice
            .basis()
            .iter()
            .map(|b| b.iter().zip(spec.invertible()).all(|(&x, &inv)| x == 0 || inv))
            .collect();
        Ok(CentralSubalgebra { lattice, inverted })
    }

    /// `C₀`: the ℓ-th powers of the generators.
    pub fn ell_powers(spec: &AlgebraSpec) -> Self {
        Self::new(spec, Lattice::scaled(spec.rank(), spec.ell() as i64)).expect("ℓ-th powers are central")
    }

    /// The full center `Z`.
    pub fn center(spec: &AlgebraSpec) -> Result<Self> {
        Self::new(spec, center_exponent_lattice(spec)?)
    }

    /// Sublattice given by generator rows.
    pub fn from_generators(spec: &AlgebraSpec, gens: &[Exponent]) -> Result<Self> {
        Self::new(spec, Lattice::from_generators(spec.rank(), gens)?)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn nvars(&self) -> usize {
        self.lattice.rank()
    }

    pub fn inverted(&self) -> &[bool] {
        &self.inverted
    }

    pub fn variable_names(&self) -> Vec<String> {
        default_names(self.nvars())
    }

    /// The monomial `u_k = x^{b_k}`.
    pub fn variable(&self, spec: &AlgebraSpec, k: usize) -> Element {
        Element::x(spec, self.lattice.basis()[k].clone())
    }

    pub fn contains(&self, z: &Element, spec: &AlgebraSpec) -> bool {
        z.terms()
            .all(|(a, _)| self.lattice.contains(a) && spec.check_exponent(a).is_ok())
    }

    pub fn is_sublattice_of(&self, other: &CentralSubalgebra) -> bool {
        other.lattice.contains_lattice(&self.lattice)
    }

    /// The exponent `s` with `u^m = ε^s x^λ` for `λ = Σ m_k b_k`.
    fn twist(&self, spec: &AlgebraSpec, m: &[i64]) -> i64 {
        let mut acc = vec![0; spec.rank()];
        let mut s = 0;
        for (k, &mk) in m.iter().enumerate() {
            if mk == 0 {
                continue;
            }
            let b = &self.lattice.basis()[k];
            s += spec.kappa(b, b) * mk * (mk - 1) / 2;
            let step: Exponent = b.iter().map(|x| x * mk).collect();
            s += spec.kappa(&acc, &step);
            for (x, y) in acc.iter_mut().zip(&step) {
                *x += y;
            }
        }
        s
    }

    /// Writes an element of this subalgebra as a polynomial in `u_1..u_r`.
    pub fn to_poly(&self, z: &Element, spec: &AlgebraSpec) -> Result<CPoly> {
        let mut p = CPoly::zero(spec.field(), self.nvars());
        for (a, c) in z.terms() {
            let m = self.lattice.coordinates(a).ok_or_else(|| {
                Error::InvalidParameter(format!("x^{a:?} is not in the central subalgebra"))
            })?;
            let s = self.twist(spec, &m);
            p.add_term(m, c.mul_eps_pow(-s));
        }
        Ok(p)
    }

    pub fn from_poly(&self, p: &CPoly, spec: &AlgebraSpec) -> Result<Element> {
        if p.nvars() != self.nvars() {
            return Err(Error::InvalidParameter(format!(
                "polynomial in {} variables, expected {}",
                p.nvars(),
                self.nvars()
            )));
        }
        let mut out = Element::zero();
        for (m, c) in p.terms() {
            let a = self.lattice.combine(m);
            spec.check_exponent(&a)?;
            out.add_term(a, c.mul_eps_pow(self.twist(spec, m)));
        }
        Ok(out)
    }

    /// `δ(C) ⊆ C`, checked on the lattice generators (enough by Leibniz).
    pub fn preserved_by(&self, delta: &Derivation, spec: &AlgebraSpec) -> bool {
        self.lattice.basis().iter().all(|b| self.contains(&delta.apply_monomial(b, spec), spec))
    }
}

/// A monomial basis of an outer algebra as a free module over a central
/// monomial subalgebra: `x^a = ε^{-κ(λ,t)} x^λ x^t` with `t` in the
/// canonical transversal and `λ` in the base lattice.
#[derive(Debug, Clone)]
pub struct Frame {
    base: CentralSubalgebra,
    outer: Option<Lattice>,
    transversal: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

impl Frame {
    /// The algebra `R` over `base`.
    pub fn over(spec: &AlgebraSpec, base: &CentralSubalgebra) -> Result<Self> {
        let size = base.lattice.index();
        if size > spec.caps().max_basis {
            return Err(Error::ResourceLimit(format!(
                "module rank {size} exceeds max_basis = {}",
                spec.caps().max_basis
            )));
        }
        Ok(Self::build(base.clone(), None, base.lattice.transversal()))
    }

    /// The commutative algebra `outer` over `base ⊆ outer`.
    pub fn relative(spec: &AlgebraSpec, outer: &CentralSubalgebra, base: &CentralSubalgebra) -> Result<Self> {
        if !base.is_sublattice_of(outer) {
            return Err(Error::InvalidExtension(
                "base lattice is not contained in the outer lattice".into(),
            ));
        }
        let size = base.lattice.index();
        if size > spec.caps().max_basis {
            return Err(Error::ResourceLimit(format!(
                "transversal size {size} exceeds max_basis = {}",
                spec.caps().max_basis
            )));
        }
        let transversal = base
            .lattice
            .transversal()
            .into_iter()
            .filter(|t| outer.lattice.contains(t))
            .collect();
        Ok(Self::build(base.clone(), Some(outer.lattice.clone()), transversal))
    }

    fn build(base: CentralSubalgebra, outer: Option<Lattice>, transversal: Vec<Exponent>) -> Self {
        let index = transversal.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        Frame {
            base,
            outer,
            transversal,
            index,
        }
    }

    pub fn base(&self) -> &CentralSubalgebra {
        &self.base
    }

    pub fn transversal(&self) -> &[Exponent] {
        &self.transversal
    }

    pub fn rank(&self) -> usize {
        self.transversal.len()
    }

    pub fn position(&self, t: &[i64]) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// `x^a = ε^{w} x^λ x^t`; returns `(index of t, λ, w)`.
    pub fn decompose(&self, a: &[i64], spec: &AlgebraSpec) -> Result<(usize, Exponent, i64)> {
        if let Some(outer) = &self.outer {
            if !outer.contains(a) {
                return Err(Error::Decomposition(format!("x^{a:?} is outside the outer algebra")));
            }
        }
        let (t, _) = self.base.lattice.reduce(a);
        let lambda: Exponent = a.iter().zip(&t).map(|(x, y)| x - y).collect();
        if spec.check_exponent(&lambda).is_err() {
            return Err(Error::Decomposition(format!(
                "x^{a:?} = x^{lambda:?} x^{t:?} leaves the algebra"
            )));
        }
        let idx = self.index[&t];
        Ok((idx, lambda.clone(), -spec.kappa(&lambda, &t)))
    }

    /// Coefficients `c_t ∈ C` with `r = Σ c_t x^t`, indexed by transversal
    /// position.
    pub fn coordinates(&self, r: &Element, spec: &AlgebraSpec) -> Result<Vec<Element>> {
        r.validate(spec)?;
        let mut out = vec![Element::zero(); self.rank()];
        for (a, c) in r.terms() {
            let (i, lambda, w) = self.decompose(a, spec)?;
            out[i].add_term(lambda, c.mul_eps_pow(w));
        }
        Ok(out)
    }

    /// `M` with `r · x^{t_j} = Σ_i M_ij x^{t_i}`.
    pub fn left_mult_matrix(&self, r: &Element, spec: &AlgebraSpec) -> Result<Vec<Vec<Element>>> {
        r.validate(spec)?;
        let n = self.rank();
        let mut m = vec![vec![Element::zero(); n]; n];
        for (j, t) in self.transversal.iter().enumerate() {
            let col = self.coordinates(&r.right_monomial_mul(t, spec), spec)?;
            for (i, c) in col.into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        Ok(m)
    }

    /// Matrix trace of left multiplication, one diagonal entry at a time.
    pub fn regular_trace(&self, r: &Element, spec: &AlgebraSpec) -> Result<Element> {
        r.validate(spec)?;
        let mut out = Element::zero();
        for (j, t) in self.transversal.iter().enumerate() {
            for (a, c) in r.terms() {
                let s: Exponent = a.iter().zip(t).map(|(x, y)| x + y).collect();
                let (i, lambda, w) = self.decompose(&s, spec)?;
                if i == j {
                    out.add_term(lambda, c.mul_eps_pow(w + spec.kappa(a, t)));
                }
            }
        }
        Ok(out)
    }
}

/// Coordinates of `r` over `C`, keyed by transversal residue (zero entries
/// omitted).
pub fn coordinates(r: &Element, c: &CentralSubalgebra, spec: &AlgebraSpec) -> Result<Vec<(Exponent, Element)>> {
    let frame = Frame::over(spec, c)?;
    Ok(frame
        .coordinates(r, spec)?
        .into_iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(i, e)| (frame.transversal[i].clone(), e))
        .collect())
}

pub fn left_mult_matrix(r: &Element, c: &CentralSubalgebra, spec: &AlgebraSpec) -> Result<Vec<Vec<Element>>> {
    Frame::over(spec, c)?.left_mult_matrix(r, spec)
}

pub fn tr_reg(r: &Element, c: &CentralSubalgebra, spec: &AlgebraSpec) -> Result<Element> {
    Frame::over(spec, c)?.regular_trace(r, spec)
}

/// `tr_red(x^a) = n x^a` for central `x^a`, zero otherwise.
pub fn tr_red(r: &Element, spec: &AlgebraSpec) -> Result<Element> {
    r.validate(spec)?;
    let n = pi_degree(spec)? as i64;
    Ok(reduced_projection(r, spec).scale(&CycScalar::from_int(spec.field(), n)))
}

fn reduced_projection(r: &Element, spec: &AlgebraSpec) -> Element {
    Element::from_terms(
        r.terms()
            .filter(|(a, _)| spec.is_central_exponent(a))
            .map(|(a, c)| (a.clone(), c.clone())),
    )
}

/// The regular trace of the commutative extension `C / A`.
pub fn tr_commutative(
    c: &Element,
    outer: &CentralSubalgebra,
    base: &CentralSubalgebra,
    spec: &AlgebraSpec,
) -> Result<Element> {
    if !outer.contains(c, spec) {
        return Err(Error::InvalidParameter(format!("{c} is not in the outer subalgebra")));
    }
    Frame::relative(spec, outer, base)?.regular_trace(c, spec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceKind {
    Regular,
    Reduced,
    Composite,
    Custom,
}

/// A trace `R → target`, linear over the frame's base and determined by its
/// values on the transversal monomials, times `normalization`.
#[derive(Debug, Clone)]
pub struct TraceForm {
    kind: TraceKind,
    frame: Frame,
    values: Vec<Element>,
    normalization: BigRational,
    target: CentralSubalgebra,
}

impl TraceForm {
    /// The regular trace over `C`, valued in `C`.
    pub fn regular(spec: &AlgebraSpec, c: &CentralSubalgebra) -> Result<Self> {
        let frame = Frame::over(spec, c)?;
        let values = frame
            .transversal
            .iter()
            .map(|t| frame.regular_trace(&Element::x(spec, t.clone()), spec))
            .collect::<Result<Vec<_>>>()?;
        Ok(TraceForm {
            kind: TraceKind::Regular,
            frame,
            values,
            normalization: BigRational::from_integer(1.into()),
            target: c.clone(),
        })
    }

    /// The reduced trace, linear over `C₀` and valued in `Z`.
    pub fn reduced(spec: &AlgebraSpec) -> Result<Self> {
        let frame = Frame::over(spec, &CentralSubalgebra::ell_powers(spec))?;
        let n = pi_degree(spec)? as i64;
        let values = frame
            .transversal
            .iter()
            .map(|t| reduced_projection(&Element::x(spec, t.clone()), spec))
            .collect();
        Ok(TraceForm {
            kind: TraceKind::Reduced,
            frame,
            values,
            normalization: BigRational::from_integer(n.into()),
            target: CentralSubalgebra::center(spec)?,
        })
    }

    /// An arbitrary base-linear form; used for negative controls.
    pub fn custom(frame: Frame, values: Vec<Element>, normalization: BigRational, target: CentralSubalgebra) -> Result<Self> {
        if values.len() != frame.rank() {
            return Err(Error::InvalidParameter(format!(
                "{} values for a rank-{} frame",
                values.len(),
                frame.rank()
            )));
        }
        Ok(TraceForm {
            kind: TraceKind::Custom,
            frame,
            values,
            normalization,
            target,
        })
    }

    /// Copy with the value on residue `t` replaced.
    pub fn with_value(&self, t: &[i64], value: Element) -> Result<Self> {
        let i = self
            .frame
            .position(t)
            .ok_or_else(|| Error::InvalidParameter(format!("{t:?} is not a basis residue")))?;
        let mut out = self.clone();
        out.values[i] = value;
        out.kind = TraceKind::Custom;
        Ok(out)
    }

    pub fn kind(&self) -> TraceKind {
        self.kind
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn values(&self) -> &[Element] {
        &self.values
    }

    pub fn normalization(&self) -> &BigRational {
        &self.normalization
    }

    pub fn target(&self) -> &CentralSubalgebra {
        &self.target
    }

    pub fn apply(&self, r: &Element, spec: &AlgebraSpec) -> Result<Element> {
        let coords = self.frame.coordinates(r, spec)?;
        let mut out = Element::zero();
        for (c, v) in coords.iter().zip(&self.values) {
            if !c.is_zero() && !v.is_zero() {
                out = out.add(&c.mul(v, spec));
            }
        }
        Ok(out.scale_rational(&self.normalization))
    }
}

/// `tr_{C/A} ∘ tr` for a trace valued in `C`, as a trace linear over `A`.
pub fn compose_trace(tr: &TraceForm, base: &CentralSubalgebra, spec: &AlgebraSpec) -> Result<TraceForm> {
    let outer = tr.target();
    if !base.is_sublattice_of(outer) {
        return Err(Error::InvalidParameter(
            "the base of a composite trace must lie in the target of the trace".into(),
        ));
    }
    if !base.is_sublattice_of(tr.frame.base()) {
        return Err(Error::InvalidParameter(
            "the base of a composite trace must lie in the base of the trace".into(),
        ));
    }
    let rel = Frame::relative(spec, outer, base)?;
    let frame = Frame::over(spec, base)?;
    let values = frame
        .transversal
        .iter()
        .map(|t| {
            let v = tr.apply(&Element::x(spec, t.clone()), spec)?;
            rel.regular_trace(&v, spec)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TraceForm {
        kind: TraceKind::Composite,
        frame,
        values,
        normalization: BigRational::from_integer(1.into()),
        target: base.clone(),
    })
}

/// Cyclicity `tr(rs) = tr(sr)` on each pair and linearity `tr(z r) = z tr(r)`
/// for the central samples (cycled against the pairs).
pub fn verify_trace_axioms(
    tr: &TraceForm,
    spec: &AlgebraSpec,
    pairs: &[(Element, Element)],
    central: &[Element],
) -> Result<Report> {
    let mut report = Report::new("trace-axioms");
    for (r, s) in pairs {
        let lhs = tr.apply(&r.mul(s, spec), spec)?;
        let rhs = tr.apply(&s.mul(r, spec), spec)?;
        report.record(lhs == rhs, || {
            Witness::new(vec![format!("r = {r}"), format!("s = {s}")], &rhs, &lhs)
        });
    }
    if !central.is_empty() {
        for (i, (r, _)) in pairs.iter().enumerate() {
            let z = &central[i % central.len()];
            let lhs = tr.apply(&z.mul(r, spec), spec)?;
            let rhs = z.mul(&tr.apply(r, spec)?, spec);
            report.record(lhs == rhs, || {
                Witness::new(vec![format!("z = {z}"), format!("r = {r}")], &rhs, &lhs)
            });
        }
    }
    let one = tr.apply(&Element::one(spec), spec)?;
    report.note(format!("tr(1) = {one}"));
    Ok(report)
}

/// `tr(δ r) = δ(tr r)` for every labelled derivation and sample.
pub fn verify_commutation(
    tr: &TraceForm,
    family: &[(String, Derivation)],
    samples: &[Element],
    spec: &AlgebraSpec,
) -> Result<Report> {
    let mut report = Report::new("trace-derivation-commutation");
    let mut nonzero = 0;
    for (label, d) in family {
        for r in samples {
            let lhs = tr.apply(&d.apply(r, spec), spec)?;
            let rhs = d.apply(&tr.apply(r, spec)?, spec);
            nonzero += usize::from(!rhs.is_zero());
            report.record(lhs == rhs, || Witness::new(vec![label.clone(), format!("r = {r}")], &rhs, &lhs));
        }
    }
    report.note(format!("{nonzero} of {} cases with a nonzero value", report.cases));
    Ok(report)
}

/// `tr(∂_c r) = ∂_c(tr r)` for every `(c, ∂_c)` in the family and sample.
pub fn verify_pto(
    tr: &TraceForm,
    family: &[(Element, Derivation)],
    samples: &[Element],
    spec: &AlgebraSpec,
) -> Result<Report> {
    let labelled: Vec<(String, Derivation)> = family.iter().map(|(c, d)| (format!("c = {c}"), d.clone())).collect();
    let mut report = verify_commutation(tr, &labelled, samples, spec)?;
    report.check = "poisson-trace-order".into();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_element;

    fn qp2() -> AlgebraSpec {
        AlgebraSpec::new(2, vec![vec![0, 1], vec![-1, 0]], vec![false, false]).unwrap()
    }

    fn el(spec: &AlgebraSpec, s: &str) -> Element {
        parse_element(spec, s).unwrap()
    }

    #[test]
    fn coordinate_examples() {
        let spec = qp2();
        let c0 = CentralSubalgebra::ell_powers(&spec);
        assert_eq!(
            coordinates(&el(&spec, "x1^3 x2"), &c0, &spec).unwrap(),
            vec![(vec![1, 1], el(&spec, "x1^2"))]
        );
        assert_eq!(
            coordinates(&el(&spec, "1"), &c0, &spec).unwrap(),
            vec![(vec![0, 0], el(&spec, "1"))]
        );
        assert_eq!(
            coordinates(&el(&spec, "x1^2 + x2"), &c0, &spec).unwrap(),
            vec![(vec![0, 0], el(&spec, "x1^2")), (vec![0, 1], el(&spec, "1"))]
        );
    }

    #[test]
    fn left_multiplication_by_x1() {
        let spec = qp2();
        let c0 = CentralSubalgebra::ell_powers(&spec);
        let m = left_mult_matrix(&el(&spec, "x1"), &c0, &spec).unwrap();
        // residues in order (0,0), (0,1), (1,0), (1,1)
        let one = el(&spec, "1");
        let u = el(&spec, "x1^2");
        let z = Element::zero();
        let expected = vec![
            vec![z.clone(), z.clone(), u.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), u.clone()],
            vec![one.clone(), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), one.clone(), z.clone(), z.clone()],
        ];
        assert_eq!(m, expected);
        let id = left_mult_matrix(&one, &c0, &spec).unwrap();
        for (i, row) in id.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(*e, if i == j { one.clone() } else { z.clone() });
            }
        }
    }

    #[test]
    fn regular_and_reduced_examples() {
        let spec = qp2();
        let c0 = CentralSubalgebra::ell_powers(&spec);
        assert_eq!(tr_reg(&el(&spec, "1"), &c0, &spec).unwrap(), el(&spec, "4"));
        assert!(tr_reg(&el(&spec, "x1"), &c0, &spec).unwrap().is_zero());
        assert_eq!(tr_reg(&el(&spec, "x1^2"), &c0, &spec).unwrap(), el(&spec, "4 x1^2"));
        assert_eq!(tr_red(&el(&spec, "1"), &spec).unwrap(), el(&spec, "2"));
        assert!(tr_red(&el(&spec, "x1"), &spec).unwrap().is_zero());
        assert_eq!(tr_red(&el(&spec, "x1^2 + 5 x2"), &spec).unwrap(), el(&spec, "2 x1^2"));
        let red = TraceForm::reduced(&spec).unwrap();
        assert_eq!(red.apply(&el(&spec, "x1^2 + 5 x2 + 3"), &spec).unwrap(), el(&spec, "2 x1^2 + 6"));
    }

    #[test]
    fn commutative_trace_and_composite() {
        let spec = qp2();
        let c0 = CentralSubalgebra::ell_powers(&spec);
        let a = CentralSubalgebra::from_generators(&spec, &[vec![4, 0], vec![0, 2]]).unwrap();
        assert_eq!(tr_commutative(&el(&spec, "1"), &c0, &a, &spec).unwrap(), el(&spec, "2"));
        assert!(tr_commutative(&el(&spec, "x1^2"), &c0, &a, &spec).unwrap().is_zero());
        assert_eq!(tr_commutative(&el(&spec, "x1^4"), &c0, &a, &spec).unwrap(), el(&spec, "2 x1^4"));
        assert!(matches!(
            tr_commutative(&el(&spec, "1"), &a, &c0, &spec),
            Err(Error::InvalidExtension(_))
        ));
        let reg = TraceForm::regular(&spec, &c0).unwrap();
        let comp = compose_trace(&reg, &a, &spec).unwrap();
        assert_eq!(comp.apply(&el(&spec, "1"), &spec).unwrap(), el(&spec, "8"));
        assert!(comp.apply(&el(&spec, "x1"), &spec).unwrap().is_zero());
        assert!(comp.apply(&el(&spec, "x1^2"), &spec).unwrap().is_zero());
        assert_eq!(comp.apply(&el(&spec, "x1^4 x2"), &spec).unwrap(), Element::zero());
        assert_eq!(comp.apply(&el(&spec, "x1^4 x2^2"), &spec).unwrap(), el(&spec, "8 x1^4 x2^2"));
    }

    #[test]
    fn corrupted_trace_fails_cyclicity() {
        let spec = qp2();
        let reg = TraceForm::regular(&spec, &CentralSubalgebra::ell_powers(&spec)).unwrap();
        let bad = reg.with_value(&[1, 1], el(&spec, "1")).unwrap();
        let pairs = vec![(el(&spec, "x1"), el(&spec, "x2"))];
        let report = verify_trace_axioms(&bad, &spec, &pairs, &[]).unwrap();
        assert!(!report.passed);
        assert_eq!(report.witnesses[0].inputs, vec!["r = x1".to_string(), "s = x2".to_string()]);
        assert!(verify_trace_axioms(&reg, &spec, &pairs, &[]).unwrap().passed);
    }

    #[test]
    fn polynomial_round_trip() {
        let spec = AlgebraSpec::new(
            3,
            vec![vec![0, 1, 1], vec![-1, 0, 1], vec![-1, -1, 0]],
            vec![true; 3],
        )
        .unwrap();
        let z = CentralSubalgebra::center(&spec).unwrap();
        assert!(!z.lattice().is_diagonal());
        let e = el(&spec, "x1^2 x2 x3^2 + 2 x1^-3 x3^6 + e x1^4 x2^2 x3^4");
        let p = z.to_poly(&e, &spec).unwrap();
        assert_eq!(z.from_poly(&p, &spec).unwrap(), e);
        // multiplication is compatible with the identification
        let f = el(&spec, "x1 x2^2 x3 - x2^3");
        let pf = z.to_poly(&f, &spec).unwrap();
        assert_eq!(z.to_poly(&e.mul(&f, &spec), &spec).unwrap(), p.mul(&pf));
    }

    #[test]
    fn non_central_lattice_rejected() {
        let spec = qp2();
        assert!(matches!(
            CentralSubalgebra::from_generators(&spec, &[vec![1, 0], vec![0, 2]]),
            Err(Error::NotCentral(_))
        ));
    }
}
