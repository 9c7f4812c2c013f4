//! Exact arithmetic in the cyclotomic field ℚ(ε), ε a primitive ℓ-th root of
//! unity, and in the Laurent ring ℚ(ε)[q, q⁻¹].
//!
//! Scalars are stored in the power basis `1, ε, …, ε^{φ(ℓ)-1}` and kept reduced
//! modulo the cyclotomic polynomial Φ_ℓ, so two scalars are equal exactly when
//! their coefficient vectors are.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Returns Φ_ℓ with integer coefficients, lowest degree first.
pub fn cyclotomic_polynomial(ell: u32) -> Result<Vec<BigInt>> {
    if ell < 2 {
        return Err(Error::InvalidParameter(format!(
            "cyclotomic order must be at least 2, got {ell}"
        )));
    }
    Ok(cyclotomic_unchecked(ell))
}

fn cyclotomic_unchecked(n: u32) -> Vec<BigInt> {
    // x^n - 1 divided by Φ_d for every proper divisor d of n
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_unchecked(d);
            num = int_poly_exact_div(&num, &phi_d);
        }
    }
    num
}

// Exact division of integer polynomials by a monic divisor.
fn int_poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// Euler's totient.
pub fn totient(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The field ℚ(ε) for a fixed order ℓ.
#[derive(Debug)]
pub struct CycField {
    ell: u32,
    phi: usize,
    /// Monic Φ_ℓ, lowest degree first, length φ + 1.
    modulus: Vec<BigRational>,
    /// Reduced coefficient vectors of ε^k for 0 ≤ k < ℓ.
    powers: Vec<Vec<BigRational>>,
}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.ell == other.ell
    }
}

impl Eq for CycField {}

impl CycField {
    pub fn new(ell: u32) -> Result<Arc<CycField>> {
        let modulus: Vec<BigRational> = cyclotomic_polynomial(ell)?
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let phi = modulus.len() - 1;
        let mut powers = Vec::with_capacity(ell as usize);
        let mut cur = vec![BigRational::zero(); phi];
        cur[0] = BigRational::one();
        for _ in 0..ell {
            powers.push(cur.clone());
            cur = times_eps(&cur, &modulus);
        }
        Ok(Arc::new(CycField {
            ell,
            phi,
            modulus,
            powers,
        }))
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Degree φ(ℓ) of the field over ℚ.
    pub fn degree(&self) -> usize {
        self.phi
    }

    fn reduce(&self, mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
        let phi = self.phi;
        while coeffs.len() > phi {
            let c = coeffs.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let shift = coeffs.len() - phi;
            for j in 0..phi {
                coeffs[shift + j] -= &c * &self.modulus[j];
            }
        }
        coeffs.resize(phi, BigRational::zero());
        coeffs
    }
}

fn times_eps(v: &[BigRational], modulus: &[BigRational]) -> Vec<BigRational> {
    let phi = v.len();
    let top = v[phi - 1].clone();
    let mut out = vec![BigRational::zero(); phi];
    out[1..].clone_from_slice(&v[..phi - 1]);
    if !top.is_zero() {
        for i in 0..phi {
            out[i] -= &top * &modulus[i];
        }
    }
    out
}

/// An element of ℚ(ε).
#[derive(Clone)]
pub struct CycScalar {
    field: Arc<CycField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.ell == other.field.ell && self.coeffs == other.coeffs
    }
}

impl Eq for CycScalar {}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycScalar[ell={}]({})", self.field.ell, self)
    }
}

impl CycScalar {
    pub fn zero(field: &Arc<CycField>) -> Self {
        CycScalar {
            field: field.clone(),
            coeffs: vec![BigRational::zero(); field.phi],
        }
    }

    pub fn one(field: &Arc<CycField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &Arc<CycField>, r: BigRational) -> Self {
        let mut s = Self::zero(field);
        s.coeffs[0] = r;
        s
    }

    pub fn from_int(field: &Arc<CycField>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    /// Builds a scalar from power-basis coefficients of arbitrary length; higher
    /// powers are reduced modulo Φ_ℓ.
    pub fn from_coeffs(field: &Arc<CycField>, coeffs: Vec<BigRational>) -> Self {
        CycScalar {
            field: field.clone(),
            coeffs: field.reduce(coeffs),
        }
    }

    /// ε^k for any integer k.
    pub fn eps_pow(field: &Arc<CycField>, k: i64) -> Self {
        let idx = k.rem_euclid(field.ell as i64) as usize;
        CycScalar {
            field: field.clone(),
            coeffs: field.powers[idx].clone(),
        }
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when the scalar lies in ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(
            self.field.ell, other.field.ell,
            "scalars from different cyclotomic fields"
        );
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycScalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplies by ε^k without a full product.
    pub fn mul_eps_pow(&self, k: i64) -> Self {
        let k = k.rem_euclid(self.field.ell as i64);
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        if self.field.phi == 1 {
            // ℓ = 2, ε = -1
            return -self;
        }
        self * &CycScalar::eps_pow(&self.field, k)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero in Q(e)".into()));
        }
        let a = trim(self.coeffs.clone());
        let m = self.field.modulus.clone();
        // extended Euclid: find s with s*a ≡ 1 mod Φ
        let (g, s) = ext_gcd(a, m);
        // g is a nonzero constant because Φ is irreducible
        debug_assert_eq!(g.len(), 1);
        let inv_g = g[0].recip();
        let s: Vec<BigRational> = s.into_iter().map(|c| c * &inv_g).collect();
        Ok(Self::from_coeffs(&self.field, s))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_field(other);
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// True when the scalar is a single rational multiple of one basis element.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
    }

    /// Renders a negative single-term scalar as `(true, |s|)`.
    pub(crate) fn split_sign(&self) -> (bool, CycScalar) {
        let nz: Vec<&BigRational> = self.coeffs.iter().filter(|c| !c.is_zero()).collect();
        if nz.len() == 1 && nz[0].is_negative() {
            (true, -self)
        } else {
            (false, self.clone())
        }
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    if v.is_empty() {
        v.push(BigRational::zero());
    }
    v
}

fn poly_is_zero(v: &[BigRational]) -> bool {
    v.iter().all(|c| c.is_zero())
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() && !poly_is_zero(&r) {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    trim(out)
}

// Returns (g, s) with s*a ≡ g (mod m).
fn ext_gcd(a: Vec<BigRational>, m: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (m, a);
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !poly_is_zero(&r1) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    (r0, s0)
}

impl Add<&CycScalar> for &CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        self.check_field(rhs);
        CycScalar {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&CycScalar> for &CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self.check_field(rhs);
        CycScalar {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul<&CycScalar> for &CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.check_field(rhs);
        let phi = self.field.phi;
        if phi == 1 {
            return CycScalar {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let mut prod = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CycScalar {
            field: self.field.clone(),
            coeffs: self.field.reduce(prod),
        }
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(CycScalar, Add, add);
forward_owned!(CycScalar, Sub, sub);
forward_owned!(CycScalar, Mul, mul);

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            let body = match k {
                0 => fmt_rational(&abs),
                _ => {
                    let var = if k == 1 {
                        "e".to_string()
                    } else {
                        format!("e^{k}")
                    };
                    if abs.is_one() {
                        var
                    } else {
                        format!("{}*{}", fmt_rational(&abs), var)
                    }
                }
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
}

/// A Laurent polynomial in the deformation parameter `q` over ℚ(ε).
#[derive(Clone)]
pub struct QLaurent {
    field: Arc<CycField>,
    terms: BTreeMap<i64, CycScalar>,
}

impl PartialEq for QLaurent {
    fn eq(&self, other: &Self) -> bool {
        self.field.ell == other.field.ell && self.terms == other.terms
    }
}

impl Eq for QLaurent {}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QLaurent({self})")
    }
}

impl QLaurent {
    pub fn zero(field: &Arc<CycField>) -> Self {
        QLaurent {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(s: CycScalar) -> Self {
        let mut p = Self::zero(s.field());
        p.add_term(0, s);
        p
    }

    /// `c · q^k`.
    pub fn monomial(k: i64, c: CycScalar) -> Self {
        let mut p = Self::zero(c.field());
        p.add_term(k, c);
        p
    }

    pub fn q_pow(field: &Arc<CycField>, k: i64) -> Self {
        Self::monomial(k, CycScalar::one(field))
    }

    /// `q - ε`.
    pub fn q_minus_eps(field: &Arc<CycField>) -> Self {
        let mut p = Self::q_pow(field, 1);
        p.add_term(0, -CycScalar::eps_pow(field, 1));
        p
    }

    pub fn from_terms(field: &Arc<CycField>, terms: impl IntoIterator<Item = (i64, CycScalar)>) -> Self {
        let mut p = Self::zero(field);
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &CycScalar)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: i64, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn shift(&self, k: i64) -> Self {
        QLaurent {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        let mut p = Self::zero(&self.field);
        for (k, c) in &self.terms {
            p.add_term(*k, c * s);
        }
        p
    }

    /// Substitutes `q = ε`.
    pub fn eval_at_eps(&self) -> CycScalar {
        let mut acc = CycScalar::zero(&self.field);
        for (k, c) in &self.terms {
            acc = &acc + &c.mul_eps_pow(*k);
        }
        acc
    }

    /// Exact quotient `p / (q - ε)`, after clearing the lowest power of `q`.
    pub fn divide_by_q_minus_eps(&self) -> Result<Self> {
        let Some((&lo, _)) = self.terms.iter().next() else {
            return Ok(self.clone());
        };
        let hi = *self.terms.keys().next_back().unwrap();
        let deg = (hi - lo) as usize;
        let eps = CycScalar::eps_pow(&self.field, 1);
        let zero = CycScalar::zero(&self.field);
        let a: Vec<CycScalar> = (0..=deg)
            .map(|i| self.terms.get(&(lo + i as i64)).cloned().unwrap_or_else(|| zero.clone()))
            .collect();
        // synthetic division from the top
        let mut b = vec![zero.clone(); deg];
        let mut carry = zero.clone();
        for i in (1..=deg).rev() {
            carry = &a[i] + &(&eps * &carry);
            b[i - 1] = carry.clone();
        }
        let rem = &a[0] + &(&eps * &carry);
        if !rem.is_zero() {
            return Err(Error::NotDivisible(rem.to_string()));
        }
        Ok(Self::from_terms(
            &self.field,
            b.into_iter().enumerate().map(|(i, c)| (lo + i as i64, c)),
        ))
    }
}

impl Add<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Mul<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero(&self.field);
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

forward_owned!(QLaurent, Add, add);
forward_owned!(QLaurent, Sub, sub);
forward_owned!(QLaurent, Mul, mul);

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            let (neg, abs) = c.split_sign();
            let coef = if abs.is_monomial() {
                abs.to_string()
            } else {
                format!("({abs})")
            };
            let body = match *k {
                0 => coef,
                _ => {
                    let var = if *k == 1 { "q".to_string() } else { format!("q^{k}") };
                    if abs.is_one() {
                        var
                    } else {
                        format!("{coef}*{var}")
                    }
                }
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(2).unwrap(), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3).unwrap(), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4).unwrap(), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6).unwrap(), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12).unwrap(), ints(&[1, 0, -1, 0, 1]));
        assert!(matches!(cyclotomic_polynomial(1), Err(Error::InvalidParameter(_))));
        for ell in 2..20 {
            assert_eq!(cyclotomic_polynomial(ell).unwrap().len() - 1, totient(ell) as usize);
        }
    }

    #[test]
    fn arithmetic_at_ell_three() {
        let f = CycField::new(3).unwrap();
        let e = CycScalar::eps_pow(&f, 1);
        let e2 = &e * &e;
        assert_eq!(e2, CycScalar::from_coeffs(&f, vec![rat(-1), rat(-1)]));
        assert_eq!(&e + &e2, CycScalar::from_int(&f, -1));
        assert_eq!(e.inverse().unwrap(), e2);
        assert_eq!(e.pow(3), CycScalar::one(&f));
        assert_eq!(e2.to_string(), "-1 - e");
        assert!(CycScalar::zero(&f).inverse().is_err());
    }

    #[test]
    fn eps_satisfies_its_minimal_polynomial() {
        for ell in 2..13 {
            let f = CycField::new(ell).unwrap();
            let e = CycScalar::eps_pow(&f, 1);
            assert_eq!(e.pow(ell as u64), CycScalar::one(&f));
            let phi = cyclotomic_polynomial(ell).unwrap();
            let mut acc = CycScalar::zero(&f);
            for (k, c) in phi.iter().enumerate() {
                acc = &acc + &e.pow(k as u64).scale(&BigRational::from_integer(c.clone()));
            }
            assert!(acc.is_zero(), "Phi_{ell}(e) != 0");
            for k in -5..20 {
                assert_eq!(e.mul_eps_pow(k), CycScalar::eps_pow(&f, k + 1));
            }
        }
    }

    fn lp(f: &Arc<CycField>, terms: &[(i64, i64)]) -> QLaurent {
        QLaurent::from_terms(f, terms.iter().map(|&(k, c)| (k, CycScalar::from_int(f, c))))
    }

    #[test]
    fn division_by_q_minus_eps_at_ell_two() {
        let f = CycField::new(2).unwrap();
        // q^2 - 1 = (q + 1)(q - 1)
        let p = lp(&f, &[(2, 1), (0, -1)]);
        assert_eq!(p.divide_by_q_minus_eps().unwrap(), lp(&f, &[(1, 1), (0, -1)]));
        // 1 - q^-2 = q^-2 (q - 1)(q + 1)
        let p = lp(&f, &[(0, 1), (-2, -1)]);
        let quot = p.divide_by_q_minus_eps().unwrap();
        assert_eq!(quot, lp(&f, &[(-1, 1), (-2, -1)]));
        assert_eq!(quot.eval_at_eps(), CycScalar::from_int(&f, -2));
        let p = lp(&f, &[(1, 1), (0, -1)]);
        assert!(matches!(p.divide_by_q_minus_eps(), Err(Error::NotDivisible(_))));
        assert!(QLaurent::zero(&f).divide_by_q_minus_eps().unwrap().is_zero());
    }

    #[test]
    fn evaluation_at_ell_three() {
        let f = CycField::new(3).unwrap();
        assert_eq!(lp(&f, &[(3, 1)]).eval_at_eps(), CycScalar::one(&f));
        assert_eq!(
            lp(&f, &[(4, 1), (0, -1)]).eval_at_eps(),
            &CycScalar::eps_pow(&f, 1) - &CycScalar::one(&f)
        );
        assert_eq!(
            lp(&f, &[(2, 3)]).eval_at_eps(),
            CycScalar::from_coeffs(&f, vec![rat(-3), rat(-3)])
        );
    }

    #[test]
    fn rendering() {
        let f = CycField::new(5).unwrap();
        let s = CycScalar::from_coeffs(
            &f,
            vec![rat(0), BigRational::new(3.into(), 2.into()), rat(0), rat(-1)],
        );
        assert_eq!(s.to_string(), "3/2*e - e^3");
        assert_eq!(CycScalar::zero(&f).to_string(), "0");
        let p = lp(&f, &[(-2, -1), (0, 1), (1, 2)]);
        assert_eq!(p.to_string(), "-q^-2 + 1 + 2*q");
    }
}
