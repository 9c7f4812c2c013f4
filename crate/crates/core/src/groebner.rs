//! Commutative multivariate (Laurent) polynomials over ℚ(ε), multivariate
//! division, Buchberger's algorithm and ideal membership.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycField, CycScalar};
use crate::error::{Error, Result};
use crate::parse::{indexed_symbol, parse_with, scalar_pow, ExprAlgebra};

pub type Monomial = Vec<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    GrLex,
    #[default]
    DegRevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[i64], b: &[i64]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrLex => {
                let (da, db): (i64, i64) = (a.iter().sum(), b.iter().sum());
                da.cmp(&db).then_with(|| a.cmp(b))
            }
            MonomialOrder::DegRevLex => {
                let (da, db): (i64, i64) = (a.iter().sum(), b.iter().sum());
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn mono_lcm(a: &[i64], b: &[i64]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn mono_sub(a: &[i64], b: &[i64]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn mono_add(a: &[i64], b: &[i64]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// A commutative Laurent polynomial in `nvars` variables over ℚ(ε).
#[derive(Clone, PartialEq, Eq)]
pub struct CPoly {
    field: Arc<CycField>,
    nvars: usize,
    terms: BTreeMap<Monomial, CycScalar>,
}

impl CPoly {
    pub fn zero(field: &Arc<CycField>, nvars: usize) -> Self {
        CPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Arc<CycField>, nvars: usize, c: CycScalar) -> Self {
        Self::monomial(field, vec![0; nvars], c)
    }

    pub fn one(field: &Arc<CycField>, nvars: usize) -> Self {
        Self::constant(field, nvars, CycScalar::one(field))
    }

    pub fn monomial(field: &Arc<CycField>, m: Monomial, c: CycScalar) -> Self {
        let mut p = Self::zero(field, m.len());
        p.add_term(m, c);
        p
    }

    /// The variable `u_{k+1}`.
    pub fn var(field: &Arc<CycField>, nvars: usize, k: usize) -> Self {
        let mut m = vec![0; nvars];
        m[k] = 1;
        Self::monomial(field, m, CycScalar::one(field))
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Monomial, &CycScalar)> {
        self.terms.iter()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: CycScalar) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                let s = &*e + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> CPoly {
        CPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, o: &CPoly) -> CPoly {
        let mut out = CPoly::zero(&self.field, self.nvars);
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                out.add_term(mono_add(a, b), c * d);
            }
        }
        out
    }

    pub fn scale(&self, s: &CycScalar) -> CPoly {
        let mut out = CPoly::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    /// Multiplication by `c · u^m`.
    pub fn mul_term(&self, m: &[i64], c: &CycScalar) -> CPoly {
        let mut out = CPoly::zero(&self.field, self.nvars);
        for (a, d) in &self.terms {
            out.add_term(mono_add(a, m), d * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> CPoly {
        let mut acc = CPoly::one(&self.field, self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to `u_{k+1}`.
    pub fn derivative(&self, k: usize) -> CPoly {
        let mut out = CPoly::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            if m[k] != 0 {
                let mut m2 = m.clone();
                m2[k] -= 1;
                out.add_term(m2, c.scale(&num::BigRational::from_integer(m[k].into())));
            }
        }
        out
    }

    pub fn leading(&self, order: MonomialOrder) -> Option<(&Monomial, &CycScalar)> {
        self.terms.iter().max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self, order: MonomialOrder) -> CPoly {
        match self.leading(order) {
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Componentwise minimum exponent (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> Monomial {
        let mut out = vec![0; self.nvars];
        for m in self.terms.keys() {
            for (o, x) in out.iter_mut().zip(m) {
                *o = (*o).min(*x);
            }
        }
        out
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&x| x >= 0))
    }

    /// Appends `extra` variables with exponent zero.
    pub fn extend_vars(&self, extra: usize) -> CPoly {
        let mut out = CPoly::zero(&self.field, self.nvars + extra);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2.extend(std::iter::repeat_n(0, extra));
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Exact quotient `self / d` when it exists in the Laurent ring.
    pub fn div_exact(&self, d: &CPoly) -> Option<CPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let sf = self.min_exponents();
        let sd = d.min_exponents();
        let one = CycScalar::one(&self.field);
        let f = self.mul_term(&sf.iter().map(|x| -x).collect::<Vec<_>>(), &one);
        let g = d.mul_term(&sd.iter().map(|x| -x).collect::<Vec<_>>(), &one);
        let order = MonomialOrder::Lex;
        let (lm, lc) = g.leading(order).map(|(m, c)| (m.clone(), c.clone()))?;
        let lc_inv = lc.inverse().ok()?;
        let mut p = f;
        let mut quot = CPoly::zero(&self.field, self.nvars);
        while let Some((m, c)) = p.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
            if !divides(&lm, &m) {
                return None;
            }
            let t = mono_sub(&m, &lm);
            let coef = &c * &lc_inv;
            p = p.sub(&g.mul_term(&t, &coef));
            quot.add_term(t, coef);
        }
        let shift = mono_sub(&sf, &sd);
        Some(quot.mul_term(&shift, &one))
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut s = String::new();
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut first = true;
        // highest terms first under degrevlex for readability
        let mut terms: Vec<(&Monomial, &CycScalar)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| MonomialOrder::DegRevLex.cmp(b, a));
        for (m, c) in terms {
            let (neg, abs) = c.split_sign();
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{k}", names[i])
                    }
                })
                .collect();
            let mono = mono.join(" ");
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
            s.push_str(match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            s.push_str(&body);
            first = false;
        }
        s
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("u{i}")).collect()
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&default_names(self.nvars)))
    }
}

impl fmt::Debug for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CPoly({self})")
    }
}

struct Polys<'a> {
    field: &'a Arc<CycField>,
    nvars: usize,
}

impl ExprAlgebra for Polys<'_> {
    type Value = CPoly;
    fn field(&self) -> &Arc<CycField> {
        self.field
    }
    fn scalar(&self, s: CycScalar) -> CPoly {
        CPoly::constant(self.field, self.nvars, s)
    }
    fn variable(&self, name: &str) -> Option<CPoly> {
        if name == "e" {
            return Some(self.scalar(CycScalar::eps_pow(self.field, 1)));
        }
        indexed_symbol(name, "u", self.nvars).map(|k| CPoly::var(self.field, self.nvars, k))
    }
    fn add(&self, a: &CPoly, b: &CPoly) -> CPoly {
        a.add(b)
    }
    fn sub(&self, a: &CPoly, b: &CPoly) -> CPoly {
        a.sub(b)
    }
    fn mul(&self, a: &CPoly, b: &CPoly) -> Result<CPoly> {
        Ok(a.mul(b))
    }
    fn neg(&self, a: &CPoly) -> CPoly {
        a.neg()
    }
    fn pow(&self, a: &CPoly, k: i64) -> Result<CPoly> {
        if k >= 0 {
            return Ok(a.pow(k as u32));
        }
        if a.len() != 1 {
            return Err(Error::Arithmetic(format!("{a} is not a unit")));
        }
        let (m, c) = a.terms().next().unwrap();
        let inv = CPoly::monomial(
            self.field,
            m.iter().map(|x| -x).collect(),
            scalar_pow(c, -1)?,
        );
        Ok(inv.pow(k.unsigned_abs() as u32))
    }
}

/// Parses `c * u1^a1 ... um^am` sums; negative exponents allowed.
pub fn parse_poly(field: &Arc<CycField>, nvars: usize, src: &str) -> Result<CPoly> {
    parse_with(&Polys { field, nvars }, src)
}

/// Multivariate division remainder of `f` by `basis`.
pub fn reduce(f: &CPoly, basis: &[CPoly], order: MonomialOrder) -> CPoly {
    let leads: Vec<Option<(Monomial, CycScalar)>> = basis
        .iter()
        .map(|g| {
            g.leading(order)
                .map(|(m, c)| (m.clone(), c.inverse().expect("nonzero")))
        })
        .collect();
    let mut p = f.clone();
    let mut rem = CPoly::zero(&f.field, f.nvars);
    while let Some((m, c)) = p.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
        let hit = leads.iter().enumerate().find_map(|(i, l)| match l {
            Some((lm, inv)) if divides(lm, &m) => Some((i, lm, inv)),
            _ => None,
        });
        match hit {
            Some((i, lm, inv)) => {
                let t = mono_sub(&m, lm);
                p = p.sub(&basis[i].mul_term(&t, &(&c * inv)));
            }
            None => {
                p.terms.remove(&m);
                rem.add_term(m, c);
            }
        }
    }
    rem
}

fn s_polynomial(f: &CPoly, g: &CPoly, order: MonomialOrder) -> CPoly {
    let (fm, fc) = f.leading(order).unwrap();
    let (gm, gc) = g.leading(order).unwrap();
    let l = mono_lcm(fm, gm);
    let a = f.mul_term(&mono_sub(&l, fm), &fc.inverse().unwrap());
    let b = g.mul_term(&mono_sub(&l, gm), &gc.inverse().unwrap());
    a.sub(&b)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are processed by lcm degree; the output is sorted by leading
/// monomial, so the result depends only on the ideal and the order.
pub fn buchberger(gens: &[CPoly], order: MonomialOrder, max_steps: usize) -> Result<Vec<CPoly>> {
    if gens.is_empty() {
        return Err(Error::InvalidParameter("Buchberger needs at least one generator".into()));
    }
    if let Some(bad) = gens.iter().find(|g| !g.is_polynomial()) {
        return Err(Error::Normalization(format!(
            "generator {bad} has negative exponents; shift it first"
        )));
    }
    let mut basis: Vec<CPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic(order))
        .collect();
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let mut leads: Vec<Monomial> = basis.iter().map(|g| g.leading(order).unwrap().0.clone()).collect();
    // pairs by total degree of the lcm, then by index
    let mut pairs: BinaryHeap<Reverse<(i64, usize, usize)>> = BinaryHeap::new();
    let pair_key = |leads: &[Monomial], i: usize, j: usize| {
        Reverse((mono_lcm(&leads[i], &leads[j]).iter().sum::<i64>(), i, j))
    };
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push(pair_key(&leads, i, j));
        }
    }
    let mut steps = 0;
    while let Some(Reverse((_, i, j))) = pairs.pop() {
        let (mi, mj) = (&leads[i], &leads[j]);
        // product criterion
        if mi.iter().zip(mj.iter()).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        steps += 1;
        if steps > max_steps {
            return Err(Error::ResourceLimit(format!(
                "Buchberger exceeded {max_steps} S-pair reductions"
            )));
        }
        let s = reduce(&s_polynomial(&basis[i], &basis[j], order), &basis, order);
        if !s.is_zero() {
            let s = s.monic(order);
            let k = basis.len();
            leads.push(s.leading(order).unwrap().0.clone());
            basis.push(s);
            for i in 0..k {
                pairs.push(pair_key(&leads, i, k));
            }
        }
    }
    Ok(interreduce(basis, order))
}

fn interreduce(basis: Vec<CPoly>, order: MonomialOrder) -> Vec<CPoly> {
    // minimal basis: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<CPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lg = g.leading(order).unwrap().0;
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = h.leading(order).unwrap().0;
            j != i && divides(lh, lg) && (lh != lg || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<CPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let lead = minimal[i].leading(order).map(|(m, c)| (m.clone(), c.clone())).unwrap();
        // the leading term survives because no other leading monomial divides it
        let tail = {
            let mut t = minimal[i].clone();
            t.terms.remove(&lead.0);
            reduce(&t, &others, order)
        };
        let mut g = tail;
        g.add_term(lead.0, lead.1);
        reduced.push(g.monic(order));
    }
    reduced.sort_by(|a, b| order.cmp(a.leading(order).unwrap().0, b.leading(order).unwrap().0));
    reduced
}

/// An ideal of the (Laurent) polynomial ring on the central variables.
///
/// Inverted variables are handled by shifting generators to polynomials and
/// adjoining `t · Π u_inv − 1`, so membership is decided in the Laurent ring.
#[derive(Debug)]
pub struct PolyIdeal {
    variables: Vec<String>,
    inverted: Vec<bool>,
    generators: Vec<CPoly>,
    order: MonomialOrder,
    max_steps: usize,
    gb: OnceLock<Vec<CPoly>>,
}

impl Clone for PolyIdeal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(v) = self.gb.get() {
            let _ = gb.set(v.clone());
        }
        PolyIdeal {
            variables: self.variables.clone(),
            inverted: self.inverted.clone(),
            generators: self.generators.clone(),
            order: self.order,
            max_steps: self.max_steps,
            gb,
        }
    }
}

/// JSON form of an ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub variables: Vec<String>,
    pub order: MonomialOrder,
    pub generators: Vec<String>,
    pub groebner: Vec<String>,
}

impl PolyIdeal {
    pub fn new(variables: Vec<String>, inverted: Vec<bool>, generators: Vec<CPoly>) -> Result<Self> {
        if variables.len() != inverted.len() {
            return Err(Error::InvalidParameter("one inversion flag per variable".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.nvars() != variables.len()) {
            return Err(Error::InvalidParameter(format!(
                "generator {g} does not live in {} variables",
                variables.len()
            )));
        }
        Ok(PolyIdeal {
            variables,
            inverted,
            generators,
            order: MonomialOrder::DegRevLex,
            max_steps: crate::qtorus::Caps::default().max_gb_steps,
            gb: OnceLock::new(),
        })
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self.gb = OnceLock::new();
        self
    }

    pub fn with_max_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn inverted(&self) -> &[bool] {
        &self.inverted
    }

    pub fn generators(&self) -> &[CPoly] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    fn has_inverses(&self) -> bool {
        self.inverted.iter().any(|&b| b)
    }

    /// Shifts `f` by a monomial unit into the polynomial working ring.
    fn to_working(&self, f: &CPoly) -> Result<CPoly> {
        let mins = f.min_exponents();
        for (k, &m) in mins.iter().enumerate() {
            if m < 0 && !self.inverted[k] {
                return Err(Error::Normalization(format!(
                    "{f} has a negative power of non-inverted variable {}",
                    self.variables[k]
                )));
            }
        }
        let shift: Vec<i64> = mins.iter().map(|m| -m).collect();
        let p = f.mul_term(&shift, &CycScalar::one(f.field()));
        Ok(if self.has_inverses() { p.extend_vars(1) } else { p })
    }

    fn working_names(&self) -> Vec<String> {
        let mut names = self.variables.clone();
        if self.has_inverses() {
            names.push("t".into());
        }
        names
    }

    /// The reduced Gröbner basis in the working ring (computed once).
    pub fn groebner(&self) -> Result<&[CPoly]> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let mut gens = self
            .generators
            .iter()
            .map(|g| self.to_working(g))
            .collect::<Result<Vec<_>>>()?;
        if gens.is_empty() {
            let _ = self.gb.set(Vec::new());
            return Ok(self.gb.get().unwrap());
        }
        if self.has_inverses() {
            let field = gens[0].field().clone();
            let n = self.variables.len() + 1;
            let mut m = vec![0; n];
            for (k, &inv) in self.inverted.iter().enumerate() {
                if inv {
                    m[k] = 1;
                }
            }
            m[n - 1] = 1;
            let mut rel = CPoly::monomial(&field, m, CycScalar::one(&field));
            rel.add_term(vec![0; n], CycScalar::from_int(&field, -1));
            gens.push(rel);
        }
        let gb = buchberger(&gens, self.order, self.max_steps)?;
        let _ = self.gb.set(gb);
        Ok(self.gb.get().unwrap())
    }

    pub fn reduce(&self, f: &CPoly) -> Result<CPoly> {
        let w = self.to_working(f)?;
        Ok(reduce(&w, self.groebner()?, self.order))
    }

    /// The unit ideal.
    pub fn is_unit(&self) -> Result<bool> {
        Ok(self
            .groebner()?
            .iter()
            .any(|g| g.len() == 1 && g.terms().next().unwrap().0.iter().all(|&x| x == 0)))
    }

    pub fn to_json(&self) -> Result<IdealJson> {
        let names = self.working_names();
        Ok(IdealJson {
            variables: self.variables.clone(),
            order: self.order,
            generators: self.generators.iter().map(|g| g.render(&self.variables)).collect(),
            groebner: self.groebner()?.iter().map(|g| g.render(&names)).collect(),
        })
    }
}

/// `f ∈ I` ⟺ the remainder modulo the Gröbner basis vanishes.
pub fn member(f: &CPoly, ideal: &PolyIdeal) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    Ok(ideal.reduce(f)?.is_zero())
}
