//! Seeded verification suites shared by the command line and the tests.

use crate::cyclotomic::CycScalar;
use crate::discriminant::{ideal_generators, is_poisson_ideal, variable_brackets, verify_der_det};
use crate::error::{Error, Result};
use crate::groebner::member;
use crate::lattice::Exponent;
use crate::poisson::{lift_independence_check, specialization_derivation, verify_poisson_axioms};
use crate::qtorus::{pi_degree, AlgebraSpec, Derivation, Element};
use crate::report::{Report, Witness};
use crate::sampling::{Sampler, DEFAULT_SEED};
use crate::trace::{compose_trace, verify_commutation, verify_pto, verify_trace_axioms, CentralSubalgebra, TraceForm};
use crate::cayham::verify_cayley_hamilton;

pub const CENTRAL_SAMPLES: usize = 50;
pub const ELEMENT_SAMPLES: usize = 50;
pub const RANDOM_DERIVATIONS: usize = 20;
pub const TUPLE_PAIRS: usize = 30;
pub const CH_SAMPLES: usize = 25;
pub const AXIOM_PAIRS: usize = 100;
pub const CENTRAL_TRIPLES: usize = 20;
pub const LIFT_PERTURBATIONS: usize = 5;
pub const BASE_CHANGE_DERIVATIONS: usize = 10;
pub const BASE_CHANGE_SAMPLES: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceChoice {
    #[default]
    Regular,
    Reduced,
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub seed: u64,
    pub k: Option<usize>,
    pub trace: TraceChoice,
    pub sublattice: Option<Vec<Exponent>>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: DEFAULT_SEED,
            k: None,
            trace: TraceChoice::Regular,
            sublattice: None,
        }
    }
}

pub const SUITES: &[&str] = &[
    "pto-reg",
    "pto-red",
    "der-reg",
    "derdet",
    "poisson-ideal",
    "cayley-hamilton",
    "axioms",
    "base-change",
];

pub fn run_suite(name: &str, spec: &AlgebraSpec, opts: &SuiteOptions) -> Result<Report> {
    match name {
        "pto-reg" => pto_reg(spec, opts),
        "pto-red" => pto_red(spec, opts),
        "der-reg" => der_reg(spec, opts),
        "derdet" => derdet(spec, opts),
        "poisson-ideal" => poisson_ideal(spec, opts),
        "cayley-hamilton" => cayley_hamilton(spec, opts),
        "axioms" => axioms(spec, opts),
        "base-change" => base_change(spec, opts),
        other => Err(Error::InvalidParameter(format!(
            "unknown suite {other}; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

fn max_degree(spec: &AlgebraSpec) -> i64 {
    3 * spec.ell() as i64
}

fn family(spec: &AlgebraSpec, s: &mut Sampler, base: &CentralSubalgebra, count: usize) -> Result<Vec<(Element, Derivation)>> {
    (0..count)
        .map(|_| {
            let c = s.lattice_monomial(spec, base.lattice(), 1);
            let d = specialization_derivation(&c, spec)?;
            Ok((c, d))
        })
        .collect()
}

fn elements(spec: &AlgebraSpec, s: &mut Sampler, count: usize, degree: i64, terms: usize) -> Vec<Element> {
    (0..count).map(|_| s.element(spec, degree, terms)).collect()
}

/// The trace chosen by the options, with the subalgebra its derivations
/// should preserve.
fn chosen_trace(spec: &AlgebraSpec, opts: &SuiteOptions) -> Result<TraceForm> {
    match opts.trace {
        TraceChoice::Regular => TraceForm::regular(spec, &CentralSubalgebra::ell_powers(spec)),
        TraceChoice::Reduced => TraceForm::reduced(spec),
    }
}

/// `tr_reg(∂_c r) = ∂_c(tr_reg r)` over the full center and over `C₀`.
pub fn pto_reg(spec: &AlgebraSpec, opts: &SuiteOptions) -> Result<Report> {
    let mut s = Sampler::new(opts.seed);
    let mut report = Report::new("pto-reg");
    let z = CentralSubalgebra::center(spec)?;
    let c0 = CentralSubalgebra::ell_powers(spec);
    let mut bases = vec![("Z", z.clone())];
    if c0 != z {
        bases.push(("C0", c0));
    }
    for (name, base) in bases {
        let tr = TraceForm::regular(spec, &base)?;
        let fam = family(spec, &mut s, &base, CENTRAL_SAMPLES)?;
        let rs = elements(spec, &mut s, ELEMENT_SAMPLES, max_degree(spec), 3);
        let part = verify_pto(&tr, &fam, &rs, spec)?;
        report.note(format!("C = {name}: {} cases", part.cases));
        report.merge(part);
    }
    Ok(report)
}

/// `tr_red(∂_c r) = ∂_c(tr_red r)` for central monomials `c`.
pub fn pto_red(spec: &AlgebraSpec, opts: &SuiteOptions) -> Result<Report> {
    let mut s = Sampler::new(opts.seed);
    let mut report = Report::new("pto-red");
    let z = CentralSubalgebra::center(spec)?;
    let tr = TraceForm::reduced(spec)?;
    let fam = family(spec, &mut s, &z, CENTRAL_SAMPLES)?;
    for (c, d) in &fam {
        report.record(z.preserved_by(d, spec), || Witness::new(vec![format!("c = {c}")], "∂_c(Z) ⊆ Z", "leaves Z"));
    }
    let rs = elements(spec, &mut s, ELEMENT_SAMPLES, max_degree(spec), 3);
    report.merge(verify_pto(&tr, &fam, &rs, spec)?);
    Ok(report)
}

/// A derivation preserving `C₀`: a central grading `x_i ↦ z_i x_i` with
/// `z_i ∈ C₀`, plus an inner derivation, plus a multiple of some `∂_c`,
/// `c ∈ C₀`.
pub fn random_c0_derivation(spec: &AlgebraSpec, s: &mut Sampler) -> Result<Derivation> {
    let c0 = CentralSubalgebra::ell_powers(spec);
    let images: Vec<Element> = (0..spec.rank())
        .map(|i| {
            let z = s.lattice_element(spec, c0.lattice(), 1, 2);
            z.mul(&Element::generator(spec, i), spec)
        })
        .collect();
    let grading = Derivation::new(images, spec)?;
    let w = s.element(spec, spec.ell() as i64 + 1, 2);
    let inner = Derivation::inner(&w, spec)?;
    let c = s.lattice_monomial(spec, c0.lattice(), 1);
    let k = s.nonzero_scalar(spec.field());
    let ham = specialization_derivation(&c.scale(&k), spec)?;
    grading.plus(&inner, spec)?.plus(&ham, spec)
}

/// `tr_reg ∘ δ = δ ∘ tr_reg` for the grading derivation and random
/// derivations preserving `C₀`.
pub fn der_reg(spec: &AlgebraSpec, opts: &SuiteOptions) -> Result<Report> {
    let mut s = Sampler::new(opts.seed);
    let mut report = Report::new("der-reg");
    let c0 = CentralSubalgebra::ell_powers(spec);
    let tr = TraceForm::regular(spec, &c0)?;
    let ones = vec![CycScalar::one(spec.field()); spec.rank()];
    let mut fam = vec![("grading".to_string(), Derivation::grading(spec, &ones)?)];
    for i in 0..RANDOM_DERIVATIONS {
        fam.push((format!("random derivation {}", i + 1), random_c0_derivation(spec, &mut s)?));
    }
    for (label, d) in &fam {
        report.record(c0.preserved_by(d, spec), || Witness::new(vec![label.clone()], "δ(C0) ⊆ C0", "leaves C0"));
    }
    let rs = elements(spec, &mut s, ELEMENT_SAMPLES, max_degree(spec), 3);
    report.merge(verify_commutation(&tr, &fam, &rs, spec)?);
    Ok(report)
}

/// The derivation-of-determinant identity for `δ = ∂_c`.
pub fn derdet(spec: &AlgebraSpec, opts: &SuiteOptions) -> Result<Report> {
    let mut s = Sampler::new(opts.seed);
    let mut report = Report::new("derdet");
    let tr = chosen_trace(spec, opts)?;
    let base = tr.target().clone();
    let ks: Vec<usize> = match opts.k {
        Some(k) => vec![k],
        None => vec![1, 2, 3],
    };
    let deg = spec.ell() as i64 + 1;
    for &k in &ks {
        let mut part = Report::new("derdet");
        for _ in 0..TUPLE_PAIRS {
            let c = s.lattice_monomial(spec, base.lattice(), 1);
            let d = specialization_derivation(&c, spec)?;
            let rs = elements(spec, &mut s, k, deg, 2);
            let ss = elements(spec, &mut s, k, deg, 2);
            part.merge(verify_der_det(&d, &rs, &ss, &tr, spec)?);
        }
        report.note(format!("k = {k}: {} cases", part.cases));
        report.merge(part);
    }
    Ok(report)
}

/// Every generator of `MD_k` (residue-basis pool) has bracket with every
/// central variable inside `MD_k`; also `D_k ⊆ MD_k`.
pub fn poisson_ideal(spec: &AlgebraSpec, opts: &SuiteOptions) -> Result<Report> {
    let mut report = Report::new("poisson-ideal");
    let tr = chosen_trace(spec, opts)?;
    let pool: Vec<Element> = tr
        .frame()
        .transversal()
        .iter()
        .map(|t| Element::x(spec, t.clone()))
        .collect();
    let brackets = variable_brackets(tr.target(), spec)?;
    let ks: Vec<usize> = match opts.k {
        Some(k) => vec![k],
        None => (1..=pool.len()).collect(),
    };
    for &k in &ks {
        let md = ideal_generators(k, &pool, &tr, spec, true)?;
        let part = is_poisson_ideal(&md, &brackets)?;
        report.note(format!("k = {k}: MD_k has {} generators", md.generators().len()));
        report.merge(part);
        let d = ideal_generators(k, &pool, &tr, spec, false)?;
        for g in d.generators() {
            let ok = member(g, &md)?;
            report.record(ok, || Witness::new(vec![format!("k = {k}"), format!("g = {g}")], "g ∈ MD_k", "g ∉ MD_k"));
        }
    }
    Ok(report)
}

/// `χ_{d,a}(a) = 0` and `tr(1) = d`, with `d = n` for the reduced trace and
/// `d = ℓ^N` for the regular trace over `C₀`.
pub fn cayley_hamilton(spec: &AlgebraSpec, opts: &SuiteOptions) -> Result<Report> {
    let mut s = Sampler::new(opts.seed);
    let mut report = Report::new("cayley-hamilton");
    let tr = chosen_trace(spec, opts)?;
    let d = match opts.trace {
        TraceChoice::Reduced => pi_degree(spec)? as usize,
        TraceChoice::Regular => tr.frame().rank(),
    };
    report.note(format!("d = {d}"));
    for _ in 0..CH_SAMPLES {
        let a = s.element(spec, spec.ell() as i64, 3);
        let (_, part) = verify_cayley_hamilton(&a, d, &tr, spec)?;
        report.merge(part);
    }
    Ok(report)
}

/// Trace axioms, Poisson axioms on central triples, and lift independence
/// of the specialization derivations of the central generators.
pub fn axioms(spec: &AlgebraSpec, opts: &SuiteOptions) -> Result<Report> {
    let mut s = Sampler::new(opts.seed);
    let mut report = Report::new("axioms");
    let tr = chosen_trace(spec, opts)?;
    let deg = max_degree(spec);
    let pairs: Vec<(Element, Element)> = (0..AXIOM_PAIRS)
        .map(|_| (s.element(spec, deg, 3), s.element(spec, deg, 3)))
        .collect();
    let base = tr.frame().base().clone();
    let central: Vec<Element> = (0..10).map(|_| s.lattice_element(spec, base.lattice(), 1, 2)).collect();
    report.merge(verify_trace_axioms(&tr, spec, &pairs, &central)?);
    report.merge(poisson_axioms(spec, &mut s)?);
    report.merge(lift_independence(spec, &mut s)?);
    Ok(report)
}

pub fn poisson_axioms(spec: &AlgebraSpec, s: &mut Sampler) -> Result<Report> {
    let z = CentralSubalgebra::center(spec)?;
    let triples: Vec<(Element, Element, Element)> = (0..CENTRAL_TRIPLES)
        .map(|_| {
            (
                s.lattice_element(spec, z.lattice(), 1, 2),
                s.lattice_element(spec, z.lattice(), 1, 2),
                s.lattice_element(spec, z.lattice(), 1, 2),
            )
        })
        .collect();
    verify_poisson_axioms(spec, &triples)
}

pub fn lift_independence(spec: &AlgebraSpec, s: &mut Sampler) -> Result<Report> {
    let z = CentralSubalgebra::center(spec)?;
    let mut report = Report::new("lift-independence");
    for k in 0..z.nvars() {
        let c = z.variable(spec, k);
        let perturbations: Vec<_> = (0..LIFT_PERTURBATIONS)
            .map(|_| s.lifted_element(spec, spec.ell() as i64, 2, 2))
            .collect();
        report.merge(lift_independence_check(&c, spec, &perturbations)?);
    }
    Ok(report)
}

/// The default `A`: the basis of `C₀` with its first row doubled.
pub fn default_sublattice(spec: &AlgebraSpec) -> Vec<Exponent> {
    let mut rows = CentralSubalgebra::ell_powers(spec).lattice().basis().to_vec();
    rows[0].iter_mut().for_each(|x| *x *= 2);
    rows
}

/// Base change: `A` is a Poisson subalgebra and the composite
/// `tr_{C/A} ∘ tr` commutes with `∂_c` for `c ∈ A`.
pub fn base_change(spec: &AlgebraSpec, opts: &SuiteOptions) -> Result<Report> {
    let mut s = Sampler::new(opts.seed);
    let mut report = Report::new("base-change");
    let rows = opts.sublattice.clone().unwrap_or_else(|| default_sublattice(spec));
    let a = CentralSubalgebra::from_generators(spec, &rows)?;
    let tr = chosen_trace(spec, opts)?;
    let closed = variable_brackets(&a, spec).is_ok();
    report.record(closed, || Witness::new(vec![format!("A = {rows:?}")], "{A, A} ⊆ A", "bracket leaves A"));
    let comp = compose_trace(&tr, &a, spec)?;
    report.note(format!(
        "[C : A] = {}, tr'(1) = {}",
        crate::trace::Frame::relative(spec, tr.target(), &a)?.rank(),
        comp.apply(&Element::one(spec), spec)?
    ));
    let deg = max_degree(spec);
    let mut fam = Vec::new();
    for _ in 0..BASE_CHANGE_DERIVATIONS {
        let c = s.lattice_monomial(spec, a.lattice(), 1);
        let d = specialization_derivation(&c, spec)?;
        fam.push((c, d));
    }
    let rs: Vec<Element> = (0..BASE_CHANGE_SAMPLES).map(|_| s.element(spec, deg, 3)).collect();
    report.merge(verify_pto(&comp, &fam, &rs, spec)?);
    let pairs: Vec<(Element, Element)> = (0..BASE_CHANGE_SAMPLES)
        .map(|_| (s.element(spec, deg, 3), s.element(spec, deg, 3)))
        .collect();
    let central: Vec<Element> = (0..10).map(|_| s.lattice_element(spec, a.lattice(), 1, 2)).collect();
    report.merge(verify_trace_axioms(&comp, spec, &pairs, &central)?);
    Ok(report)
}
