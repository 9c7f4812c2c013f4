//! Trace pairing determinants, (modified) discriminant ideals and the
//! Poisson-ideal check.

use crate::error::{Error, Result};
use crate::groebner::{member, CPoly, MonomialOrder, PolyIdeal};
use crate::poisson::PoissonBracketTable;
use crate::qtorus::{AlgebraSpec, Derivation, Element};
use crate::report::{Report, Witness};
use crate::trace::{CentralSubalgebra, TraceForm};

/// Cofactor expansion along the first row, skipping zero entries.
pub fn det_cofactor(m: &[Vec<CPoly>]) -> CPoly {
    fn go(m: &[Vec<CPoly>], rows: &[usize], cols: &mut Vec<usize>) -> CPoly {
        let field = m[0][0].field();
        let nv = m[0][0].nvars();
        if rows.is_empty() {
            return CPoly::one(field, nv);
        }
        let r = rows[0];
        let mut acc = CPoly::zero(field, nv);
        for pos in 0..cols.len() {
            let c = cols[pos];
            if m[r][c].is_zero() {
                continue;
            }
            let removed = cols.remove(pos);
            let minor = go(m, &rows[1..], cols);
            cols.insert(pos, removed);
            if minor.is_zero() {
                continue;
            }
            let t = m[r][c].mul(&minor);
            acc = if pos % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }
    let n = m.len();
    go(m, &(0..n).collect::<Vec<_>>(), &mut (0..n).collect())
}

/// Fraction-free Bareiss elimination with row pivoting.
pub fn det_bareiss(m: &[Vec<CPoly>]) -> Result<CPoly> {
    let n = m.len();
    let field = m[0][0].field().clone();
    let nv = m[0][0].nvars();
    let mut a: Vec<Vec<CPoly>> = m.to_vec();
    let mut prev = CPoly::one(&field, nv);
    let mut negate = false;
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(CPoly::zero(&field, nv)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num
                    .div_exact(&prev)
                    .ok_or_else(|| Error::Invariant("Bareiss division was not exact".into()))?;
            }
            a[i][k] = CPoly::zero(&field, nv);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// Determinant of a square polynomial matrix; cofactor expansion up to
/// size 6, Bareiss beyond.
pub fn determinant(m: &[Vec<CPoly>]) -> Result<CPoly> {
    if m.is_empty() || m.iter().any(|r| r.len() != m.len()) {
        return Err(Error::InvalidParameter("determinant needs a nonempty square matrix".into()));
    }
    if m.len() <= 6 {
        Ok(det_cofactor(m))
    } else {
        det_bareiss(m)
    }
}

fn gram(rs: &[Element], ss: &[Element], tr: &TraceForm, spec: &AlgebraSpec) -> Result<Vec<Vec<CPoly>>> {
    let target = tr.target();
    rs.iter()
        .map(|r| {
            ss.iter()
                .map(|s| target.to_poly(&tr.apply(&r.mul(s, spec), spec)?, spec))
                .collect()
        })
        .collect()
}

/// `d_k(rs, ss : tr) = det(tr(r_i s_j))` as a polynomial in the target's
/// variables.
pub fn pairing_det_poly(rs: &[Element], ss: &[Element], tr: &TraceForm, spec: &AlgebraSpec) -> Result<CPoly> {
    let k = rs.len();
    if k == 0 || ss.len() != k {
        return Err(Error::InvalidParameter("pairing needs two k-tuples with k ≥ 1".into()));
    }
    if k > spec.caps().max_det {
        return Err(Error::ResourceLimit(format!("k = {k} exceeds max_det = {}", spec.caps().max_det)));
    }
    for e in rs.iter().chain(ss) {
        e.validate(spec)?;
    }
    determinant(&gram(rs, ss, tr, spec)?)
}

pub fn pairing_det(rs: &[Element], ss: &[Element], tr: &TraceForm, spec: &AlgebraSpec) -> Result<Element> {
    tr.target().from_poly(&pairing_det_poly(rs, ss, tr, spec)?, spec)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `D_k` (same subset on both sides) or `MD_k` (independent subsets) of the
/// pool, as an ideal in the target's variables.
///
/// The pairing is multilinear and alternating, so k-subsets of a spanning
/// pool generate the same ideal as all k-tuples of the algebra. Generators
/// are made monic and deduplicated.
pub fn ideal_generators(
    k: usize,
    pool: &[Element],
    tr: &TraceForm,
    spec: &AlgebraSpec,
    modified: bool,
) -> Result<PolyIdeal> {
    if k == 0 || k > pool.len() {
        return Err(Error::InvalidParameter(format!("k = {k} must lie in 1..={}", pool.len())));
    }
    if k > spec.caps().max_det {
        return Err(Error::ResourceLimit(format!("k = {k} exceeds max_det = {}", spec.caps().max_det)));
    }
    let c = binomial(pool.len(), k);
    let count = if modified { c * (c + 1) / 2 } else { c };
    if count > spec.caps().max_subsets as u128 {
        return Err(Error::ResourceLimit(format!(
            "{count} determinants exceed max_subsets = {}",
            spec.caps().max_subsets
        )));
    }
    let target = tr.target();
    let order = MonomialOrder::DegRevLex;
    // full Gram matrix of the pool, then minors
    let full = gram(pool, pool, tr, spec)?;
    let subs = subsets(pool.len(), k);
    let mut gens: Vec<CPoly> = Vec::new();
    let mut push = |p: CPoly| {
        if !p.is_zero() {
            let p = p.monic(order);
            if !gens.contains(&p) {
                gens.push(p);
            }
        }
    };
    for (si, s) in subs.iter().enumerate() {
        let partners: &[Vec<usize>] = if modified { &subs[si..] } else { std::slice::from_ref(s) };
        for t in partners {
            let minor: Vec<Vec<CPoly>> = s.iter().map(|&i| t.iter().map(|&j| full[i][j].clone()).collect()).collect();
            push(determinant(&minor)?);
        }
    }
    Ok(PolyIdeal::new(target.variable_names(), target.inverted().to_vec(), gens)?
        .with_order(order)
        .with_max_steps(spec.caps().max_gb_steps))
}

fn replace(v: &[Element], i: usize, e: Element) -> Vec<Element> {
    let mut out = v.to_vec();
    out[i] = e;
    out
}

/// `δ d_k(r, s) = Σ_i d_k(…δr_i…, s) + Σ_j d_k(r, …δs_j…)`, after checking
/// that δ preserves the target and commutes with the trace on the products
/// `r_i s_j`.
pub fn verify_der_det(
    delta: &Derivation,
    rs: &[Element],
    ss: &[Element],
    tr: &TraceForm,
    spec: &AlgebraSpec,
) -> Result<Report> {
    let mut report = Report::new("derivation-of-determinant");
    let inputs = || {
        vec![
            format!("r = [{}]", rs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")),
            format!("s = [{}]", ss.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")),
        ]
    };
    let target = tr.target();
    if !target.preserved_by(delta, spec) {
        report.fail(Witness::new(inputs(), "δ(C) ⊆ C", "δ leaves C"));
        report.note("precondition failed; identity skipped");
        return Ok(report);
    }
    for r in rs {
        for s in ss {
            let p = r.mul(s, spec);
            let lhs = tr.apply(&delta.apply(&p, spec), spec)?;
            let rhs = delta.apply(&tr.apply(&p, spec)?, spec);
            if lhs != rhs {
                report.fail(Witness::new(vec![format!("p = {p}")], &rhs, &lhs));
            }
        }
    }
    if !report.passed {
        report.note("precondition tr∘δ = δ∘tr failed; identity skipped");
        return Ok(report);
    }
    let lhs = delta.apply(&pairing_det(rs, ss, tr, spec)?, spec);
    let mut rhs = Element::zero();
    for i in 0..rs.len() {
        rhs = rhs.add(&pairing_det(&replace(rs, i, delta.apply(&rs[i], spec)), ss, tr, spec)?);
        rhs = rhs.add(&pairing_det(rs, &replace(ss, i, delta.apply(&ss[i], spec)), tr, spec)?);
    }
    report.record(lhs == rhs, || Witness::new(inputs(), &rhs, &lhs));
    Ok(report)
}

/// `{u_i, u_j}` for the variables of a central subalgebra, as polynomials.
pub fn variable_brackets(sub: &CentralSubalgebra, spec: &AlgebraSpec) -> Result<Vec<Vec<CPoly>>> {
    let table = PoissonBracketTable::new(spec);
    let basis = sub.lattice().basis();
    basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| {
                    let e = table.monomial(a, b)?;
                    if !sub.contains(&e, spec) {
                        return Err(Error::InvalidParameter(format!(
                            "{{x^{a:?}, x^{b:?}}} = {e} leaves the subalgebra"
                        )));
                    }
                    sub.to_poly(&e, spec)
                })
                .collect()
        })
        .collect()
}

/// `{u_k, g} = Σ_j ∂g/∂u_j · {u_k, u_j}`.
pub fn bracket_with_variable(k: usize, g: &CPoly, brackets: &[Vec<CPoly>]) -> CPoly {
    let mut acc = CPoly::zero(g.field(), g.nvars());
    for (j, b) in brackets[k].iter().enumerate() {
        if !b.is_zero() {
            acc = acc.add(&g.derivative(j).mul(b));
        }
    }
    acc
}

/// `{u_k, g} ∈ I` for every generator `g` and variable `u_k`.
pub fn is_poisson_ideal(ideal: &PolyIdeal, brackets: &[Vec<CPoly>]) -> Result<Report> {
    let mut report = Report::new("poisson-ideal");
    let names = ideal.variables();
    if brackets.len() != names.len() {
        return Err(Error::InvalidParameter("one bracket row per variable".into()));
    }
    for g in ideal.generators() {
        for (k, name) in names.iter().enumerate() {
            let b = bracket_with_variable(k, g, brackets);
            let ok = member(&b, ideal)?;
            report.record(ok, || {
                let rem = ideal.reduce(&b).map(|r| r.to_string()).unwrap_or_default();
                Witness::new(
                    vec![format!("g = {}", g.render(names)), format!("z = {name}")],
                    "0",
                    format!("remainder of {} is {rem}", b.render(names)),
                )
            });
        }
    }
    Ok(report)
}
