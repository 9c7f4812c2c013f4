//! Normal-form arithmetic in the mixed quantum torus / quantum affine space
//! with relations `x_i x_j = ε^{Ω_ij} x_j x_i`, and in its one-parameter lift
//! over ℚ(ε)[q^{±1}] with relations `x̂_i x̂_j = q^{Λ_ij} x̂_j x̂_i`.
//!
//! A monomial `x^a` always denotes the ordered product `x_1^{a_1} ··· x_N^{a_N}`.
//! Multiplication of monomials is `x^a · x^b = θ^{κ(a,b)} x^{a+b}` with
//! `κ(a,b) = Σ_{i>j} a_i b_j Λ_ij`, where θ is ε or q depending on the
//! coefficient domain.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycField, CycScalar, QLaurent};
use crate::error::{Error, Result};
use crate::lattice::{box_points, Exponent, Lattice};
use crate::report::{Report, Witness};

/// Resource caps shared by the enumerations in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest residue box `ℓ^N` that may be enumerated.
    pub max_basis: u64,
    /// Largest determinant size k.
    pub max_det: usize,
    /// Largest number of determinants generated for one ideal.
    pub max_subsets: usize,
    /// Largest number of S-pair reductions in one Buchberger run.
    pub max_gb_steps: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_basis: 100_000,
            max_det: 12,
            max_subsets: 200_000,
            max_gb_steps: 20_000,
        }
    }
}

/// Exchange data of a single cluster seed.
///
/// `btilde` is stored `N × |ex|`: column `k` is the exchange vector of the
/// k-th exchangeable index, so that `B̃ᵀ Λ` is `|ex| × N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterData {
    /// Exchangeable indices, 0-based.
    pub ex: Vec<usize>,
    pub btilde: Vec<Vec<i64>>,
    pub d: Vec<i64>,
}

impl ClusterData {
    fn check_shape(&self, n: usize) -> Result<()> {
        let m = self.ex.len();
        if self.btilde.len() != n || self.btilde.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidParameter(format!(
                "btilde must be {n} x {m} (rows: all indices, columns: exchangeable)"
            )));
        }
        if self.d.len() != m {
            return Err(Error::InvalidParameter(format!(
                "d must have one entry per exchangeable index ({m})"
            )));
        }
        if let Some(&bad) = self.ex.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidParameter(format!(
                "exchangeable index {} out of range",
                bad + 1
            )));
        }
        Ok(())
    }

    /// `B̃ᵀ M` as a `|ex| × N` integer matrix.
    fn transpose_times(&self, m: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = m.len();
        (0..self.ex.len())
            .map(|k| {
                (0..n)
                    .map(|j| (0..n).map(|i| self.btilde[i][k] * m[i][j]).sum())
                    .collect()
            })
            .collect()
    }

    /// The matrix `[D 0]` with the D entry of row k in column `ex[k]`.
    fn target(&self, n: usize) -> Vec<Vec<i64>> {
        (0..self.ex.len())
            .map(|k| {
                let mut row = vec![0; n];
                row[self.ex[k]] = self.d[k];
                row
            })
            .collect()
    }
}

/// `B̃ᵀ Ω ≡ [D 0] (mod ℓ)`.
pub fn ell_compatible(cluster: &ClusterData, omega: &[Vec<i64>], ell: i64) -> Result<bool> {
    let n = omega.len();
    if omega.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidParameter("omega must be square".into()));
    }
    cluster.check_shape(n)?;
    if ell < 1 {
        return Err(Error::InvalidParameter("ell must be positive".into()));
    }
    let prod = cluster.transpose_times(omega);
    let target = cluster.target(n);
    Ok(prod
        .iter()
        .flatten()
        .zip(target.iter().flatten())
        .all(|(p, t)| (p - t).rem_euclid(ell) == 0))
}

/// `B̃ᵀ Λ = [D 0]` over ℤ.
pub fn strict(cluster: &ClusterData, lambda: &[Vec<i64>]) -> Result<bool> {
    let n = lambda.len();
    if !is_skew(lambda) {
        return Err(Error::InvalidParameter("lambda must be skew-symmetric".into()));
    }
    cluster.check_shape(n)?;
    Ok(cluster.transpose_times(lambda) == cluster.target(n))
}

fn is_skew(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..n).all(|j| m[i][j] == -m[j][i]))
}

/// Parameters of the algebra: rank, root-of-unity order, integer lift Λ,
/// invertibility mask and optional cluster seed.
#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    n: usize,
    ell: u32,
    lambda: Vec<Vec<i64>>,
    omega: Vec<Vec<i64>>,
    invertible: Vec<bool>,
    cluster: Option<ClusterData>,
    caps: Caps,
    field: Arc<CycField>,
}

impl AlgebraSpec {
    pub fn new(ell: u32, lambda: Vec<Vec<i64>>, invertible: Vec<bool>) -> Result<AlgebraSpec> {
        let n = lambda.len();
        if n == 0 {
            return Err(Error::InvalidParameter("rank must be positive".into()));
        }
        if !is_skew(&lambda) {
            return Err(Error::InvalidParameter("lambda must be skew-symmetric".into()));
        }
        if invertible.len() != n {
            return Err(Error::InvalidParameter(format!(
                "invertible mask has length {}, expected {n}",
                invertible.len()
            )));
        }
        let field = CycField::new(ell)?;
        let omega = lambda
            .iter()
            .map(|r| r.iter().map(|x| x.rem_euclid(ell as i64)).collect())
            .collect();
        Ok(AlgebraSpec {
            n,
            ell,
            lambda,
            omega,
            invertible,
            cluster: None,
            caps: Caps::default(),
            field,
        })
    }

    /// Attaches a cluster seed; the principal part must be skew-symmetrized by D.
    pub fn with_cluster(mut self, cluster: ClusterData) -> Result<AlgebraSpec> {
        cluster.check_shape(self.n)?;
        if cluster.d.iter().any(|&x| x <= 0) {
            return Err(Error::InvalidParameter("d must have positive entries".into()));
        }
        let m = cluster.ex.len();
        for k in 0..m {
            for j in 0..m {
                let bkj = cluster.btilde[cluster.ex[k]][j];
                let bjk = cluster.btilde[cluster.ex[j]][k];
                if cluster.d[k] * bkj != -cluster.d[j] * bjk {
                    return Err(Error::InvalidParameter(
                        "principal part of btilde is not skew-symmetrized by d".into(),
                    ));
                }
            }
        }
        self.cluster = Some(cluster);
        Ok(self)
    }

    pub fn with_caps(mut self, caps: Caps) -> AlgebraSpec {
        self.caps = caps;
        self
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn lambda(&self) -> &[Vec<i64>] {
        &self.lambda
    }

    /// Ω = Λ mod ℓ with entries in `[0, ℓ)`.
    pub fn omega(&self) -> &[Vec<i64>] {
        &self.omega
    }

    pub fn invertible(&self) -> &[bool] {
        &self.invertible
    }

    pub fn cluster(&self) -> Option<&ClusterData> {
        self.cluster.as_ref()
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    /// `κ(a,b) = Σ_{i>j} a_i b_j Λ_ij`.
    pub fn kappa(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 1..self.n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..i {
                acc += a[i] * b[j] * self.lambda[i][j];
            }
        }
        acc
    }

    /// `aᵀ Λ b`, the exponent of θ in `x^a x^b = θ^{aᵀΛb} x^b x^a`.
    pub fn commutation_exponent(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..self.n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                acc += a[i] * self.lambda[i][j] * b[j];
            }
        }
        acc
    }

    /// `x^a` is central ⟺ `Ω a ≡ 0 (mod ℓ)`.
    pub fn is_central_exponent(&self, a: &[i64]) -> bool {
        let ell = self.ell as i64;
        self.omega
            .iter()
            .all(|row| row.iter().zip(a).map(|(o, x)| o * x).sum::<i64>().rem_euclid(ell) == 0)
    }

    pub fn check_exponent(&self, a: &[i64]) -> Result<()> {
        if a.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "exponent {a:?} has length {}, expected {}",
                a.len(),
                self.n
            )));
        }
        match (0..self.n).find(|&i| a[i] < 0 && !self.invertible[i]) {
            Some(index) => Err(Error::InvertibilityViolation {
                exponent: a.to_vec(),
                index,
            }),
            None => Ok(()),
        }
    }

    /// Size of the residue box `ℓ^N`, checked against the cap.
    pub fn box_size(&self) -> Result<u64> {
        let size = (self.ell as u64)
            .checked_pow(self.n as u32)
            .filter(|&s| s <= self.caps.max_basis);
        size.ok_or_else(|| {
            Error::ResourceLimit(format!(
                "ell^N = {}^{} exceeds max_basis = {}",
                self.ell, self.n, self.caps.max_basis
            ))
        })
    }
}

/// Coefficient domain of a torus element: ℚ(ε) for the specialized algebra,
/// ℚ(ε)[q^{±1}] for the lift.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_in(field: &Arc<CycField>) -> Self;
    fn from_scalar(s: CycScalar) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, s: &CycScalar) -> Self;
    /// Multiplication by θ^k.
    fn twist(&self, k: i64) -> Self;
}

impl Coefficient for CycScalar {
    fn zero_in(field: &Arc<CycField>) -> Self {
        CycScalar::zero(field)
    }
    fn from_scalar(s: CycScalar) -> Self {
        s
    }
    fn is_zero(&self) -> bool {
        CycScalar::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, s: &CycScalar) -> Self {
        self * s
    }
    fn twist(&self, k: i64) -> Self {
        self.mul_eps_pow(k)
    }
}

impl Coefficient for QLaurent {
    fn zero_in(field: &Arc<CycField>) -> Self {
        QLaurent::zero(field)
    }
    fn from_scalar(s: CycScalar) -> Self {
        QLaurent::constant(s)
    }
    fn is_zero(&self) -> bool {
        QLaurent::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, s: &CycScalar) -> Self {
        self.scale(s)
    }
    fn twist(&self, k: i64) -> Self {
        self.shift(k)
    }
}

/// A finite sum of normal-form monomials `c · x^a`.
#[derive(Clone, PartialEq, Eq)]
pub struct TorusElement<C> {
    terms: BTreeMap<Exponent, C>,
}

/// Element of the specialized algebra at q = ε.
pub type Element = TorusElement<CycScalar>;
/// Element of the lifted algebra over ℚ(ε)[q^{±1}].
pub type LiftedElement = TorusElement<QLaurent>;

impl<C: Coefficient> TorusElement<C> {
    pub fn zero() -> Self {
        TorusElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exponent: Exponent, coef: C) -> Self {
        let mut e = Self::zero();
        e.add_term(exponent, coef);
        e
    }

    pub fn one(spec: &AlgebraSpec) -> Self {
        Self::constant(spec, CycScalar::one(spec.field()))
    }

    pub fn constant(spec: &AlgebraSpec, s: CycScalar) -> Self {
        Self::monomial(vec![0; spec.rank()], C::from_scalar(s))
    }

    /// The monomial `x^a` with coefficient 1.
    pub fn x(spec: &AlgebraSpec, a: Exponent) -> Self {
        Self::monomial(a, C::from_scalar(CycScalar::one(spec.field())))
    }

    /// The generator `x_i` (0-based).
    pub fn generator(spec: &AlgebraSpec, i: usize) -> Self {
        let mut a = vec![0; spec.rank()];
        a[i] = 1;
        Self::x(spec, a)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent, C)>) -> Self {
        let mut e = Self::zero();
        for (a, c) in terms {
            e.add_term(a, c);
        }
        e
    }

    pub fn add_term(&mut self, exponent: Exponent, coef: C) {
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(&exponent) {
            Some(existing) => {
                let sum = existing.plus(&coef);
                if sum.is_zero() {
                    self.terms.remove(&exponent);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exponent, coef);
            }
        }
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, a: &[i64]) -> Option<&C> {
        self.terms.get(a)
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.negated());
        }
        out
    }

    pub fn neg(&self) -> Self {
        TorusElement {
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c.negated())).collect(),
        }
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(a, c)| (a.clone(), c.scaled(s))))
    }

    pub fn scale_coef(&self, s: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(a, c)| (a.clone(), c.times(s))))
    }

    pub fn validate(&self, spec: &AlgebraSpec) -> Result<()> {
        self.terms.keys().try_for_each(|a| spec.check_exponent(a))
    }

    /// Normal-form product; inputs are assumed valid.
    pub fn mul(&self, other: &Self, spec: &AlgebraSpec) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let k = spec.kappa(a, b);
                let exp: Exponent = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(exp, c.times(d).twist(k));
            }
        }
        out
    }

    /// `x^a · self`.
    pub fn left_monomial_mul(&self, a: &[i64], spec: &AlgebraSpec) -> Self {
        Self::from_terms(self.terms.iter().map(|(b, d)| {
            let exp: Exponent = a.iter().zip(b).map(|(x, y)| x + y).collect();
            (exp, d.twist(spec.kappa(a, b)))
        }))
    }

    /// `self · x^b`.
    pub fn right_monomial_mul(&self, b: &[i64], spec: &AlgebraSpec) -> Self {
        Self::from_terms(self.terms.iter().map(|(a, c)| {
            let exp: Exponent = a.iter().zip(b).map(|(x, y)| x + y).collect();
            (exp, c.twist(spec.kappa(a, b)))
        }))
    }

    pub fn pow(&self, k: u32, spec: &AlgebraSpec) -> Self {
        let mut acc = Self::one(spec);
        for _ in 0..k {
            acc = acc.mul(self, spec);
        }
        acc
    }

    /// `ab - ba`.
    pub fn commutator(&self, other: &Self, spec: &AlgebraSpec) -> Self {
        self.mul(other, spec).sub(&other.mul(self, spec))
    }

    /// Every term is a central monomial.
    pub fn is_central(&self, spec: &AlgebraSpec) -> bool {
        self.terms.keys().all(|a| spec.is_central_exponent(a))
    }
}

impl Element {
    /// Lifts coefficient-wise into the q-algebra.
    pub fn lift(&self) -> LiftedElement {
        TorusElement::from_terms(
            self.terms
                .iter()
                .map(|(a, c)| (a.clone(), QLaurent::constant(c.clone()))),
        )
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(a, c)| (a.clone(), c.scale(r))))
    }
}

impl LiftedElement {
    /// Substitutes q = ε.
    pub fn specialize(&self) -> Element {
        TorusElement::from_terms(
            self.terms
                .iter()
                .map(|(a, c)| (a.clone(), c.eval_at_eps())),
        )
    }

    /// Coefficient-wise exact division by `(q - ε)`.
    pub fn divide_by_q_minus_eps(&self) -> Result<LiftedElement> {
        let mut out = TorusElement::zero();
        for (a, c) in &self.terms {
            out.add_term(a.clone(), c.divide_by_q_minus_eps()?);
        }
        Ok(out)
    }
}

/// Checked product: both inputs must satisfy the invertibility constraints.
pub fn multiply<C: Coefficient>(
    a: &TorusElement<C>,
    b: &TorusElement<C>,
    spec: &AlgebraSpec,
) -> Result<TorusElement<C>> {
    a.validate(spec)?;
    b.validate(spec)?;
    Ok(a.mul(b, spec))
}

pub fn commutator<C: Coefficient>(
    a: &TorusElement<C>,
    b: &TorusElement<C>,
    spec: &AlgebraSpec,
) -> Result<TorusElement<C>> {
    a.validate(spec)?;
    b.validate(spec)?;
    Ok(a.commutator(b, spec))
}

/// Residues `K ⊆ [0,ℓ)^N` of central monomials, by enumeration.
pub fn center_lattice(spec: &AlgebraSpec) -> Result<Vec<Exponent>> {
    spec.box_size()?;
    let ell = spec.ell() as i64;
    let k: Vec<Exponent> = box_points(&vec![ell; spec.rank()])
        .into_iter()
        .filter(|a| spec.is_central_exponent(a))
        .collect();
    // subgroup check: closed under addition mod ℓ
    let set: std::collections::HashSet<&Exponent> = k.iter().collect();
    for a in &k {
        for b in &k {
            let s: Exponent = a.iter().zip(b).map(|(x, y)| (x + y).rem_euclid(ell)).collect();
            if !set.contains(&s) {
                return Err(Error::Invariant(format!(
                    "central residues are not closed under addition: {a:?} + {b:?}"
                )));
            }
        }
    }
    Ok(k)
}

/// The lattice `K + ℓℤ^N` of exponents of central monomials.
pub fn center_exponent_lattice(spec: &AlgebraSpec) -> Result<Lattice> {
    let ell = spec.ell() as i64;
    let mut gens = Lattice::scaled(spec.rank(), ell).basis().to_vec();
    gens.extend(center_lattice(spec)?);
    Lattice::from_generators(spec.rank(), &gens)
}

/// PI degree `n = sqrt(ℓ^N / |K|)`.
pub fn pi_degree(spec: &AlgebraSpec) -> Result<u64> {
    let total = spec.box_size()?;
    let k = center_lattice(spec)?.len() as u64;
    if total % k != 0 {
        return Err(Error::Invariant(format!("|K| = {k} does not divide {total}")));
    }
    let q = total / k;
    let n = (q as f64).sqrt().round() as u64;
    if n * n != q {
        return Err(Error::Invariant(format!("ell^N / |K| = {q} is not a perfect square")));
    }
    Ok(n)
}

/// A derivation of the specialized algebra given by its values on the
/// generators. Construction verifies the defining relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    images: Vec<Element>,
}

impl Derivation {
    pub fn new(images: Vec<Element>, spec: &AlgebraSpec) -> Result<Derivation> {
        if images.len() != spec.rank() {
            return Err(Error::InvalidParameter(format!(
                "derivation needs {} images, got {}",
                spec.rank(),
                images.len()
            )));
        }
        for img in &images {
            img.validate(spec)?;
        }
        let failures = relation_failures(&images, spec);
        if !failures.is_empty() {
            return Err(Error::RelationViolation(failures));
        }
        Ok(Derivation { images })
    }

    pub fn zero(spec: &AlgebraSpec) -> Derivation {
        Derivation {
            images: vec![Element::zero(); spec.rank()],
        }
    }

    /// `δ(x_i) = w_i x_i`; consistent because the relations are homogeneous.
    pub fn grading(spec: &AlgebraSpec, weights: &[CycScalar]) -> Result<Derivation> {
        let images = (0..spec.rank())
            .map(|i| Element::generator(spec, i).scale(&weights[i]))
            .collect();
        Derivation::new(images, spec)
    }

    /// The inner derivation `r ↦ w r − r w`.
    pub fn inner(w: &Element, spec: &AlgebraSpec) -> Result<Derivation> {
        let images = (0..spec.rank())
            .map(|i| w.commutator(&Element::generator(spec, i), spec))
            .collect();
        Derivation::new(images, spec)
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Element {
        &self.images[i]
    }

    /// `z · δ` for central z.
    pub fn scale_central(&self, z: &Element, spec: &AlgebraSpec) -> Result<Derivation> {
        if !z.is_central(spec) {
            return Err(Error::NotCentral(format_element(z)));
        }
        Derivation::new(self.images.iter().map(|img| z.mul(img, spec)).collect(), spec)
    }

    pub fn plus(&self, other: &Derivation, spec: &AlgebraSpec) -> Result<Derivation> {
        Derivation::new(
            self.images
                .iter()
                .zip(&other.images)
                .map(|(a, b)| a.add(b))
                .collect(),
            spec,
        )
    }

    /// `δ(x^a)` for a single normal-form monomial.
    pub fn apply_monomial(&self, a: &[i64], spec: &AlgebraSpec) -> Element {
        let n = spec.rank();
        let mut out = Element::zero();
        for i in 0..n {
            let k = a[i];
            if k == 0 || self.images[i].is_zero() {
                continue;
            }
            // x^a = P · x_i^k · S with P = x_1^{a_1}…x_{i-1}^{a_{i-1}}, S the rest
            let mut prefix = vec![0; n];
            prefix[..i].copy_from_slice(&a[..i]);
            let mut suffix = vec![0; n];
            suffix[i + 1..].copy_from_slice(&a[i + 1..]);
            let factor = if k > 0 {
                // Σ_m x_i^m δ(x_i) x_i^{k-1-m}
                let mut acc = Element::zero();
                for m in 0..k {
                    let mut left = vec![0; n];
                    left[i] = m;
                    let mut right = vec![0; n];
                    right[i] = k - 1 - m;
                    acc = acc.add(
                        &self.images[i]
                            .left_monomial_mul(&left, spec)
                            .right_monomial_mul(&right, spec),
                    );
                }
                acc
            } else {
                // δ(x_i^{-1}) = −x_i^{-1} δ(x_i) x_i^{-1}, expanded over |k| factors
                let inv = {
                    let mut e = vec![0; n];
                    e[i] = -1;
                    e
                };
                let d_inv = self.images[i]
                    .left_monomial_mul(&inv, spec)
                    .right_monomial_mul(&inv, spec)
                    .neg();
                let mut acc = Element::zero();
                let kk = -k;
                for m in 0..kk {
                    let mut left = vec![0; n];
                    left[i] = -m;
                    let mut right = vec![0; n];
                    right[i] = -(kk - 1 - m);
                    acc = acc.add(&d_inv.left_monomial_mul(&left, spec).right_monomial_mul(&right, spec));
                }
                acc
            };
            out = out.add(&factor.left_monomial_mul(&prefix, spec).right_monomial_mul(&suffix, spec));
        }
        out
    }

    pub fn apply(&self, r: &Element, spec: &AlgebraSpec) -> Element {
        let mut out = Element::zero();
        for (a, c) in r.terms() {
            out = out.add(&self.apply_monomial(a, spec).scale(c));
        }
        out
    }
}

fn relation_failures(images: &[Element], spec: &AlgebraSpec) -> Vec<(usize, usize)> {
    let n = spec.rank();
    let mut failures = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let xi = Element::generator(spec, i);
            let xj = Element::generator(spec, j);
            let w = CycScalar::eps_pow(spec.field(), spec.omega()[i][j]);
            // δ(x_i x_j) − ε^{Ω_ij} δ(x_j x_i)
            let lhs = images[i].mul(&xj, spec).add(&xi.mul(&images[j], spec));
            let rhs = images[j].mul(&xi, spec).add(&xj.mul(&images[i], spec)).scale(&w);
            if !lhs.sub(&rhs).is_zero() {
                failures.push((i + 1, j + 1));
            }
        }
    }
    failures
}

/// Checks `δ(x_i x_j − ε^{Ω_ij} x_j x_i) = 0` for all pairs; pairs are 1-based.
pub fn check_derivation(images: &[Element], spec: &AlgebraSpec) -> Report {
    let mut report = Report::new("derivation-relations");
    if images.len() != spec.rank() {
        report.fail(Witness::new(
            vec![],
            format!("{} images", spec.rank()),
            format!("{} images", images.len()),
        ));
        return report;
    }
    let failures = relation_failures(images, spec);
    let n = spec.rank();
    for i in 0..n {
        for j in i + 1..n {
            let ok = !failures.contains(&(i + 1, j + 1));
            report.record(ok, || {
                Witness::new(vec![format!("({}, {})", i + 1, j + 1)], "0", "nonzero")
            });
        }
    }
    report
}

/// Leibniz extension of `δ` applied to a validated element.
pub fn apply_derivation(delta: &Derivation, r: &Element, spec: &AlgebraSpec) -> Result<Element> {
    r.validate(spec)?;
    Ok(delta.apply(r, spec))
}

pub(crate) fn format_element(e: &Element) -> String {
    e.to_string()
}

// rendering

pub(crate) fn render_monomial(prefix: &str, a: &[i64]) -> String {
    let parts: Vec<String> = a
        .iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("{prefix}{}", i + 1)
            } else {
                format!("{prefix}{}^{k}", i + 1)
            }
        })
        .collect();
    parts.join(" ")
}

/// Writes `Σ coef * monomial` with signs pulled out of single-term coefficients.
pub(crate) fn render_sum<'a, I>(f: &mut fmt::Formatter<'_>, prefix: &str, terms: I) -> fmt::Result
where
    I: Iterator<Item = (&'a Exponent, &'a CycScalar)>,
{
    let mut first = true;
    for (a, c) in terms {
        let (neg, abs) = c.split_sign();
        let mono = render_monomial(prefix, a);
        let coef = if abs.is_monomial() {
            abs.to_string()
        } else {
            format!("({abs})")
        };
        let body = match (mono.is_empty(), abs.is_one()) {
            (true, _) => coef,
            (false, true) => mono,
            (false, false) => format!("{coef} * {mono}"),
        };
        match (first, neg) {
            (true, true) => write!(f, "-{body}")?,
            (true, false) => write!(f, "{body}")?,
            (false, true) => write!(f, " - {body}")?,
            (false, false) => write!(f, " + {body}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_sum(f, "x", self.terms.iter())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

impl fmt::Display for LiftedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, c)| {
                let mono = render_monomial("x", a);
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c}) * {mono}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LiftedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LiftedElement({self})")
    }
}

/// JSON term of an element: exponents and power-basis coefficients as
/// rational strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<i64>,
    pub coef: Vec<String>,
}

impl Element {
    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(a, c)| TermJson {
                exponents: a.clone(),
                coef: c.coeffs().iter().map(|r| r.to_string()).collect(),
            })
            .collect()
    }

    pub fn from_json(terms: &[TermJson], spec: &AlgebraSpec) -> Result<Element> {
        let mut out = Element::zero();
        for t in terms {
            spec.check_exponent(&t.exponents)?;
            let coeffs = t
                .coef
                .iter()
                .map(|s| {
                    s.parse::<BigRational>()
                        .map_err(|e| Error::Parse { offset: 0, message: format!("{s}: {e}") })
                })
                .collect::<Result<Vec<_>>>()?;
            out.add_term(t.exponents.clone(), CycScalar::from_coeffs(spec.field(), coeffs));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp2() -> AlgebraSpec {
        AlgebraSpec::new(2, vec![vec![0, 1], vec![-1, 0]], vec![false, false]).unwrap()
    }

    fn x(spec: &AlgebraSpec, a: &[i64]) -> Element {
        Element::x(spec, a.to_vec())
    }

    #[test]
    fn quantum_plane_products() {
        let s = qp2();
        let x1 = Element::generator(&s, 0);
        let x2 = Element::generator(&s, 1);
        assert_eq!(x2.mul(&x1, &s), x(&s, &[1, 1]).neg());
        assert_eq!(x1.mul(&x2, &s), x(&s, &[1, 1]));
        let x12 = x(&s, &[1, 1]);
        assert_eq!(x12.mul(&x12, &s), x(&s, &[2, 2]).neg());
        assert_eq!(Element::one(&s).mul(&x12, &s), x12);
    }

    #[test]
    fn lifted_commutators() {
        let s = qp2();
        let f = s.field();
        let u = x(&s, &[2, 0]).lift();
        let v = x(&s, &[0, 2]).lift();
        let x1 = Element::generator(&s, 0).lift();
        let x2 = Element::generator(&s, 1).lift();
        let one_minus = |k: i64| {
            QLaurent::from_terms(f, [(0, CycScalar::one(f)), (-k, CycScalar::from_int(f, -1))])
        };
        assert_eq!(u.commutator(&v, &s), LiftedElement::monomial(vec![2, 2], one_minus(4)));
        assert!(x1.commutator(&x1, &s).is_zero());
        assert_eq!(u.commutator(&x2, &s), LiftedElement::monomial(vec![2, 1], one_minus(2)));
    }

    #[test]
    fn center_and_pi_degree() {
        let s = qp2();
        assert_eq!(center_lattice(&s).unwrap(), vec![vec![0, 0]]);
        assert_eq!(pi_degree(&s).unwrap(), 2);

        let comm = AlgebraSpec::new(3, vec![vec![0; 3]; 3], vec![true; 3]).unwrap();
        assert_eq!(center_lattice(&comm).unwrap().len(), 27);
        assert_eq!(pi_degree(&comm).unwrap(), 1);

        let s4 = AlgebraSpec::new(4, vec![vec![0, 2], vec![-2, 0]], vec![false, false]).unwrap();
        assert_eq!(
            center_lattice(&s4).unwrap(),
            vec![vec![0, 0], vec![0, 2], vec![2, 0], vec![2, 2]]
        );
        assert_eq!(pi_degree(&s4).unwrap(), 2);

        let s3 = AlgebraSpec::new(3, vec![vec![0, 1], vec![-1, 0]], vec![false, false]).unwrap();
        assert_eq!(pi_degree(&s3).unwrap(), 3);
    }

    #[test]
    fn center_cap_is_enforced() {
        let s = AlgebraSpec::new(7, vec![vec![0; 7]; 7], vec![true; 7])
            .unwrap()
            .with_caps(Caps {
                max_basis: 1000,
                ..Caps::default()
            });
        assert!(matches!(center_lattice(&s), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn derivation_checks() {
        let s = qp2();
        let f = s.field();
        let one = CycScalar::one(f);
        let grading = Derivation::grading(&s, &[one.clone(), one.clone()]).unwrap();
        assert!(check_derivation(grading.images(), &s).passed);
        assert_eq!(grading.apply(&x(&s, &[1, 1]), &s), x(&s, &[1, 1]).scale(&CycScalar::from_int(f, 2)));

        let first = Derivation::grading(&s, &[one.clone(), CycScalar::zero(f)]).unwrap();
        assert_eq!(first.apply(&x(&s, &[2, 1]), &s), x(&s, &[2, 1]).scale(&CycScalar::from_int(f, 2)));

        let bad = vec![Element::generator(&s, 1), Element::zero()];
        let rep = check_derivation(&bad, &s);
        assert!(!rep.passed);
        assert_eq!(rep.witnesses[0].inputs, vec!["(1, 2)".to_string()]);
        assert_eq!(
            Derivation::new(bad, &s).unwrap_err(),
            Error::RelationViolation(vec![(1, 2)])
        );
        assert!(check_derivation(Derivation::zero(&s).images(), &s).passed);
    }

    #[test]
    fn inverse_generator_rule() {
        // torus with x1 invertible: δ(x1^{-1}) = −x1^{-1} δ(x1) x1^{-1}
        let s = AlgebraSpec::new(3, vec![vec![0, 1], vec![-1, 0]], vec![true, false]).unwrap();
        let w = Element::generator(&s, 1);
        let d = Derivation::inner(&w, &s).unwrap();
        let xinv = x(&s, &[-1, 0]);
        let x1 = x(&s, &[1, 0]);
        // δ(x1^{-1} x1) = δ(1) = 0
        let lhs = d.apply(&xinv, &s).mul(&x1, &s).add(&xinv.mul(&d.apply(&x1, &s), &s));
        assert!(lhs.is_zero());
        assert_eq!(d.apply(&xinv, &s), w.commutator(&xinv, &s));
        let r = x(&s, &[-3, 2]);
        assert_eq!(d.apply(&r, &s), w.commutator(&r, &s));
    }

    #[test]
    fn invertibility_constraints() {
        let s = qp2();
        assert!(matches!(
            multiply(&x(&s, &[-1, 0]), &x(&s, &[1, 0]), &s),
            Err(Error::InvertibilityViolation { index: 0, .. })
        ));
    }

    fn cluster2(btilde: Vec<Vec<i64>>) -> ClusterData {
        ClusterData {
            ex: vec![0, 1],
            btilde,
            d: vec![1, 1],
        }
    }

    #[test]
    fn compatibility_examples() {
        let c = cluster2(vec![vec![0, 1], vec![-1, 0]]);
        let omega = vec![vec![0, 1], vec![-1, 0]];
        assert!(ell_compatible(&c, &omega, 2).unwrap());
        let omega2 = vec![vec![0, 2], vec![-2, 0]];
        assert!(!ell_compatible(&c, &omega2, 3).unwrap());
        assert!(ell_compatible(&c, &omega2, 1).unwrap());
        assert!(strict(&c, &omega).unwrap());
        assert!(!strict(&c, &omega2).unwrap());
        let empty = ClusterData {
            ex: vec![],
            btilde: vec![vec![], vec![]],
            d: vec![],
        };
        assert!(strict(&empty, &omega).unwrap());
        let wrong = cluster2(vec![vec![0, 1, 0], vec![-1, 0, 0]]);
        assert!(ell_compatible(&wrong, &omega, 2).is_err());
    }

    #[test]
    fn element_json_round_trip() {
        let s = AlgebraSpec::new(3, vec![vec![0, 1], vec![-1, 0]], vec![false, true]).unwrap();
        let e = x(&s, &[1, -2]).scale(&CycScalar::eps_pow(s.field(), 2)).add(&Element::one(&s));
        let back = Element::from_json(&e.to_json(), &s).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn rendering() {
        let s = qp2();
        let e = x(&s, &[2, 0]).scale(&CycScalar::from_int(s.field(), 4));
        assert_eq!(e.to_string(), "4 * x1^2");
        let e = x(&s, &[2, 2]).scale(&CycScalar::from_int(s.field(), -4)).add(&Element::one(&s));
        assert_eq!(e.to_string(), "1 - 4 * x1^2 x2^2");
        let s3 = AlgebraSpec::new(3, vec![vec![0, 1], vec![-1, 0]], vec![false, false]).unwrap();
        let e = x(&s3, &[0, 1]).scale(&CycScalar::eps_pow(s3.field(), 2));
        assert_eq!(e.to_string(), "(-1 - e) * x2");
    }
}
