//! Full-rank sublattices of `Z^n` in Hermite normal form.
//!
//! Bases are stored row-wise in lower-triangular form: row `i` has zeros after
//! column `i`, a positive diagonal entry `d_i`, and entries left of the diagonal
//! reduced into `[0, d_j)`. The fundamental domain is the box `prod [0, d_i)`,
//! which makes residue reduction a single back-substitution pass.

use std::fmt;

use crate::error::{Error, Result};
use crate::intmat::{self, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    basis: Matrix,
}

fn floor_div(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

impl Lattice {
    /// Lattice spanned by the rows of a nonsingular square matrix.
    pub fn from_basis(rows: Matrix) -> Result<Self> {
        let n = rows.len();
        if n == 0 || !intmat::is_square(&rows, n) {
            return Err(Error::SingularLattice("basis must be a nonempty square matrix".into()));
        }
        if intmat::det(&rows) == 0 {
            return Err(Error::SingularLattice(intmat::format_matrix(&rows)));
        }
        Self::from_generators(rows, n)
    }

    /// Lattice generated by arbitrary integer rows of length `n`; must have full rank.
    pub fn from_generators(rows: Matrix, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::SingularLattice("dimension must be >= 1".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
        let mut work: Vec<Vec<i64>> = rows
            .into_iter()
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect();
        let mut pivots: Vec<Option<Vec<i64>>> = vec![None; n];
        for col in (0..n).rev() {
            loop {
                let nonzero: Vec<usize> = (0..work.len()).filter(|&i| work[i][col] != 0).collect();
                if nonzero.len() <= 1 {
                    break;
                }
                let p = *nonzero
                    .iter()
                    .min_by_key(|&&i| work[i][col].abs())
                    .expect("nonempty");
                let pivot = work[p].clone();
                for &i in &nonzero {
                    if i == p {
                        continue;
                    }
                    let q = work[i][col] / pivot[col];
                    for (x, y) in work[i].iter_mut().zip(&pivot) {
                        *x -= q * y;
                    }
                }
            }
            let Some(p) = (0..work.len()).find(|&i| work[i][col] != 0) else {
                return Err(Error::SingularLattice(format!("rank deficient in column {col}")));
            };
            let mut row = work.swap_remove(p);
            if row[col] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            pivots[col] = Some(row);
            work.retain(|r| r.iter().any(|&x| x != 0));
        }
        let mut basis: Matrix = pivots.into_iter().map(|r| r.expect("pivot")).collect();
        for i in 0..n {
            for j in (0..i).rev() {
                let q = floor_div(basis[i][j], basis[j][j]);
                if q != 0 {
                    let bj = basis[j].clone();
                    for (x, y) in basis[i].iter_mut().zip(&bj) {
                        *x -= q * y;
                    }
                }
            }
        }
        Ok(Lattice { basis })
    }

    /// `k Z^n`.
    pub fn scaled_identity(n: usize, k: i64) -> Result<Self> {
        let mut m = intmat::identity(n);
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = k;
        }
        Self::from_basis(m)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let m = intmat::parse_matrix(s)
            .ok_or_else(|| Error::Malformed(format!("bad lattice syntax {s:?}")))?;
        Self::from_basis(m)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.dim()).map(|i| self.basis[i][i]).collect()
    }

    /// `|det|`, the number of residues.
    pub fn index(&self) -> u64 {
        self.diagonal().iter().map(|&d| d as u64).product()
    }

    /// Canonical representative of `v` modulo the lattice.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let mut v = v.to_vec();
        for i in (0..self.dim()).rev() {
            let q = floor_div(v[i], self.basis[i][i]);
            if q != 0 {
                for (x, b) in v.iter_mut().zip(&self.basis[i]) {
                    *x -= q * b;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|r| self.contains(r))
    }

    /// Position of a reduced residue in [`Lattice::residues`] order.
    pub fn residue_index(&self, reduced: &[i64]) -> usize {
        let d = self.diagonal();
        let mut idx = 0usize;
        for (x, m) in reduced.iter().zip(&d) {
            idx = idx * (*m as usize) + (*x as usize);
        }
        idx
    }

    /// All residues in lexicographic order.
    pub fn residues(&self) -> Vec<Vec<i64>> {
        let d = self.diagonal();
        let total = self.index() as usize;
        let mut out = Vec::with_capacity(total);
        let mut cur = vec![0i64; d.len()];
        for _ in 0..total {
            out.push(cur.clone());
            for i in (0..d.len()).rev() {
                cur[i] += 1;
                if cur[i] < d[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
        out
    }

    /// Every Hermite-normal-form lattice in `Z^n` with index at most `max_index`,
    /// ordered by index, then diagonal, then off-diagonal entries.
    pub fn enumerate(n: usize, max_index: u64) -> Vec<Lattice> {
        let mut out = Vec::new();
        let mut diag = Vec::with_capacity(n);
        collect_diagonals(n, max_index, &mut diag, &mut |d| {
            let mut basis = vec![vec![0i64; n]; n];
            for i in 0..n {
                basis[i][i] = d[i];
            }
            fill_offdiagonal(&mut basis, d, 1, 0, &mut out);
        });
        out.sort_by(|a, b| {
            a.index()
                .cmp(&b.index())
                .then_with(|| a.diagonal().cmp(&b.diagonal()))
                .then_with(|| a.basis.cmp(&b.basis))
        });
        out
    }
}

fn collect_diagonals(n: usize, budget: u64, cur: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
    if cur.len() == n {
        f(cur);
        return;
    }
    for d in 1..=budget {
        cur.push(d as i64);
        collect_diagonals(n, budget / d, cur, f);
        cur.pop();
    }
}

fn fill_offdiagonal(basis: &mut Matrix, d: &[i64], i: usize, j: usize, out: &mut Vec<Lattice>) {
    let n = d.len();
    if i >= n {
        out.push(Lattice {
            basis: basis.clone(),
        });
        return;
    }
    if j >= i {
        fill_offdiagonal(basis, d, i + 1, 0, out);
        return;
    }
    for x in 0..d[j] {
        basis[i][j] = x;
        fill_offdiagonal(basis, d, i, j + 1, out);
    }
    basis[i][j] = 0;
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", intmat::format_matrix(&self.basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn divisor_sum(m: u64) -> u64 {
        (1..=m).filter(|d| m % d == 0).sum()
    }

    #[test]
    fn normal_form_examples() {
        let l = Lattice::parse("3,0;0,3").unwrap();
        assert_eq!(l.basis(), &vec![vec![3, 0], vec![0, 3]]);
        assert_eq!(l.index(), 9);
        let l = Lattice::from_basis(vec![vec![2, 0], vec![1, 1]]).unwrap();
        assert_eq!(l.basis(), &vec![vec![2, 0], vec![1, 1]]);
        assert_eq!(l.reduce(&[0, 1]), vec![1, 0]);
        let l = Lattice::from_basis(vec![vec![1, 1], vec![1, -1]]).unwrap();
        assert_eq!(l.index(), 2);
        assert!(l.contains(&[2, 0]));
        assert!(!l.contains(&[1, 0]));
    }

    #[test]
    fn singular_rejected() {
        assert!(Lattice::from_basis(vec![vec![1, 2], vec![2, 4]]).is_err());
        assert!(Lattice::parse("1,0").is_err());
        assert!(Lattice::from_generators(vec![vec![1, 0]], 2).is_err());
    }

    #[test]
    fn generators_with_redundancy() {
        let l = Lattice::from_generators(vec![vec![3, 0], vec![0, 3], vec![1, 0]], 2).unwrap();
        assert_eq!(l.basis(), &vec![vec![1, 0], vec![0, 3]]);
    }

    #[test]
    fn enumeration_counts_match_divisor_sums() {
        // sublattices of index m in Z^2 are counted by sigma(m)
        let all = Lattice::enumerate(2, 12);
        for m in 1..=12 {
            let c = all.iter().filter(|l| l.index() == m).count() as u64;
            assert_eq!(c, divisor_sum(m), "index {m}");
        }
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
        // Z^1: exactly one lattice per index
        assert_eq!(Lattice::enumerate(1, 5).len(), 5);
    }

    #[test]
    fn residues_are_canonical() {
        let l = Lattice::from_basis(vec![vec![2, 0], vec![1, 3]]).unwrap();
        let res = l.residues();
        assert_eq!(res.len(), 6);
        for (i, r) in res.iter().enumerate() {
            assert_eq!(l.reduce(r), *r);
            assert_eq!(l.residue_index(r), i);
        }
    }

    proptest! {
        #[test]
        fn reduce_is_congruent_and_idempotent(
            a in 1i64..5, b in -4i64..5, c in 1i64..5, x in -30i64..30, y in -30i64..30
        ) {
            let l = Lattice::from_basis(vec![vec![a, 0], vec![b, c]]).unwrap();
            let r = l.reduce(&[x, y]);
            prop_assert!(l.contains(&[x - r[0], y - r[1]]));
            prop_assert_eq!(l.reduce(&r), r.clone());
            let d = l.diagonal();
            prop_assert!(r.iter().zip(&d).all(|(v, m)| *v >= 0 && v < m));
        }

        #[test]
        fn hnf_is_basis_independent(
            a in 1i64..5, b in -4i64..5, c in 1i64..5, k in -3i64..4
        ) {
            let l1 = Lattice::from_basis(vec![vec![a, 0], vec![b, c]]).unwrap();
            // unimodular row operation: row1 += k * row0
            let l2 = Lattice::from_basis(vec![vec![a, 0], vec![b + k * a, c]]).unwrap();
            let l3 = Lattice::from_basis(vec![vec![b, c], vec![a, 0]]).unwrap();
            prop_assert_eq!(&l1, &l2);
            prop_assert_eq!(&l1, &l3);
        }
    }
}
