//! Full-rank integer lattices in ℤ^N kept in row Hermite normal form.

use crate::error::{Error, Result};

pub type Exponent = Vec<i64>;

/// A full-rank sublattice of ℤ^N.
///
/// The basis is upper triangular with positive diagonal, and entries above
/// each pivot are reduced into `[0, pivot)`. The canonical transversal of
/// ℤ^N / L is then the box `Π [0, h_ii)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    basis: Vec<Exponent>,
}

impl Lattice {
    /// Lattice generated by arbitrary integer vectors of length `n`.
    pub fn from_generators(n: usize, gens: &[Exponent]) -> Result<Lattice> {
        if gens.iter().any(|g| g.len() != n) {
            return Err(Error::InvalidParameter(format!(
                "lattice generators must have length {n}"
            )));
        }
        let mut rows: Vec<Exponent> = gens.to_vec();
        let mut basis = Vec::with_capacity(n);
        for col in 0..n {
            // gcd-reduce column `col` among rows
            loop {
                let nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
                if nz.len() <= 1 {
                    break;
                }
                let piv = *nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
                for &i in &nz {
                    if i != piv {
                        let f = rows[i][col].div_euclid(rows[piv][col]);
                        let p = rows[piv].clone();
                        for (x, y) in rows[i].iter_mut().zip(&p) {
                            *x -= f * y;
                        }
                    }
                }
            }
            let Some(idx) = rows.iter().position(|r| r[col] != 0) else {
                return Err(Error::InvalidParameter(
                    "lattice is not of full rank (infinite index)".into(),
                ));
            };
            let mut row = rows.swap_remove(idx);
            if row[col] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            basis.push(row);
        }
        // reduce entries above pivots
        for col in 0..n {
            let piv = basis[col][col];
            for i in 0..col {
                let f = basis[i][col].div_euclid(piv);
                if f != 0 {
                    let p = basis[col].clone();
                    for (x, y) in basis[i].iter_mut().zip(&p) {
                        *x -= f * y;
                    }
                }
            }
        }
        Ok(Lattice { basis })
    }

    /// `m · ℤ^n`.
    pub fn scaled(n: usize, m: i64) -> Lattice {
        let basis = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = m;
                v
            })
            .collect();
        Lattice { basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Exponent] {
        &self.basis
    }

    pub fn is_diagonal(&self) -> bool {
        self.basis
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, &x)| i == j || x == 0))
    }

    /// `[ℤ^N : L]`.
    pub fn index(&self) -> u64 {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, r)| r[i] as u64)
            .product()
    }

    /// Writes `a = residue + Σ coords_k · basis_k` with the residue in the box.
    pub fn reduce(&self, a: &[i64]) -> (Exponent, Vec<i64>) {
        let mut r = a.to_vec();
        let mut coords = vec![0; self.basis.len()];
        for (k, row) in self.basis.iter().enumerate() {
            let t = r[k].div_euclid(row[k]);
            if t != 0 {
                for (x, y) in r.iter_mut().zip(row) {
                    *x -= t * y;
                }
            }
            coords[k] = t;
        }
        (r, coords)
    }

    pub fn contains(&self, a: &[i64]) -> bool {
        self.reduce(a).0.iter().all(|&x| x == 0)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Coordinates of `a` in the basis; `None` unless `a ∈ L`.
    pub fn coordinates(&self, a: &[i64]) -> Option<Vec<i64>> {
        let (r, c) = self.reduce(a);
        r.iter().all(|&x| x == 0).then_some(c)
    }

    pub fn combine(&self, coords: &[i64]) -> Exponent {
        let n = self.basis.len();
        let mut out = vec![0; n];
        for (c, row) in coords.iter().zip(&self.basis) {
            for (x, y) in out.iter_mut().zip(row) {
                *x += c * y;
            }
        }
        out
    }

    /// The canonical transversal of ℤ^N / L in lexicographic order.
    pub fn transversal(&self) -> Vec<Exponent> {
        let periods: Vec<i64> = (0..self.rank()).map(|i| self.basis[i][i]).collect();
        box_points(&periods)
    }
}

/// All points of `Π [0, periods_i)` in lexicographic order.
pub fn box_points(periods: &[i64]) -> Vec<Exponent> {
    let mut out = vec![vec![]];
    for &p in periods {
        let mut next = Vec::with_capacity(out.len() * p.max(0) as usize);
        for v in &out {
            for x in 0..p {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_non_diagonal_lattice() {
        let l = Lattice::from_generators(2, &[vec![1, 1], vec![0, 2], vec![2, 0]]).unwrap();
        assert_eq!(l.basis(), &[vec![1, 1], vec![0, 2]]);
        assert_eq!(l.index(), 2);
        assert!(l.contains(&[3, 1]));
        assert!(!l.contains(&[1, 0]));
        let (r, c) = l.reduce(&[1, 0]);
        assert_eq!(r, vec![0, 1]);
        assert_eq!(l.combine(&c), vec![1, -1]);
    }

    #[test]
    fn rank_deficient_is_rejected() {
        assert!(Lattice::from_generators(2, &[vec![1, 1], vec![2, 2]]).is_err());
    }

    #[test]
    fn inclusion_and_transversal() {
        let c = Lattice::scaled(2, 2);
        let a = Lattice::from_generators(2, &[vec![4, 0], vec![0, 2]]).unwrap();
        assert!(c.contains_lattice(&a));
        assert!(!a.contains_lattice(&c));
        assert_eq!(a.transversal().len(), 8);
        assert_eq!(box_points(&[2, 2]), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
