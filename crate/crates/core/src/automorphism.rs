//! Automorphisms of `Z^n` acting on configurations.
//!
//! Matrices act on row vectors: `g -> g M`. Under this convention
//! `apply_automorphism(m1 * m2, c) == apply_automorphism(m1, apply_automorphism(m2, c))`.

use crate::config::{is_locally_admissible, Configuration, Domain};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::intmat::{self, Matrix};
use crate::lattice::Lattice;
use crate::sft::Sft;

/// A unimodular integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AutMatrix {
    entries: Matrix,
}

impl AutMatrix {
    pub fn new(entries: Matrix) -> Result<Self> {
        let n = entries.len();
        if n == 0 || !intmat::is_square(&entries, n) {
            return Err(Error::Malformed("automorphism matrix must be square and nonempty".into()));
        }
        let d = intmat::det(&entries);
        if d.abs() != 1 {
            return Err(Error::NotUnimodular(d));
        }
        Ok(AutMatrix { entries })
    }

    pub fn identity(n: usize) -> Self {
        AutMatrix {
            entries: intmat::identity(n),
        }
    }

    /// `-I`.
    pub fn negation(n: usize) -> Self {
        let mut entries = intmat::identity(n);
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = -1;
        }
        AutMatrix { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn det(&self) -> i64 {
        intmat::det(&self.entries)
    }

    pub fn compose(&self, other: &AutMatrix) -> Result<AutMatrix> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(AutMatrix {
            entries: intmat::mul(&self.entries, &other.entries),
        })
    }

    pub fn inverse(&self) -> AutMatrix {
        AutMatrix {
            entries: intmat::inverse_unimodular(&self.entries).expect("unimodular by construction"),
        }
    }

    /// `g M`.
    pub fn act(&self, g: &[i64]) -> Vec<i64> {
        intmat::vec_mat(g, &self.entries)
    }

    /// True iff `L M = L`.
    pub fn preserves(&self, l: &Lattice) -> bool {
        l.dim() == self.dim() && l.basis().iter().all(|row| l.contains(&self.act(row)))
    }
}

/// `phi(g) = g + (g . v) u`, i.e. the matrix `I + v^T u` acting on row vectors.
pub fn shear(u: &[i64], v: &[i64]) -> Result<AutMatrix> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    if u.is_empty() {
        return Err(Error::Malformed("shear vectors must be nonempty".into()));
    }
    if v.iter().all(|&x| x == 0) {
        return Err(Error::ZeroDirection);
    }
    let dot: i64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    if dot != 0 {
        return Err(Error::NotOrthogonal(dot));
    }
    let n = u.len();
    let mut entries = intmat::identity(n);
    for i in 0..n {
        for j in 0..n {
            entries[i][j] += v[i] * u[j];
        }
    }
    Ok(AutMatrix { entries })
}

/// `r(g) = c(g M)`.
///
/// On a torus `Z^n / L` this needs `L M = L`. On a window the result lives on the
/// cells `g` whose image `g M` is also in the window.
pub fn apply_automorphism(m: &AutMatrix, c: &Configuration) -> Result<Configuration> {
    let group = c.group();
    let n = group.free_abelian_rank().ok_or(Error::TorusRequiresFreeAbelian)?;
    if n != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.dim(),
        });
    }
    match c.domain() {
        Domain::Torus(l) => {
            if !m.preserves(l) {
                return Err(Error::LatticeNotPreserved);
            }
            Configuration::torus_from_fn(group, l.clone(), |g| c.value_at(&m.act(g)).expect("torus lookup"))
        }
        Domain::Ball { radius, elements } => {
            let cells: Vec<(GroupElement, usize)> = elements
                .iter()
                .filter_map(|g| c.value_at(&m.act(g.coords())).map(|v| (g.clone(), v)))
                .collect();
            if cells.is_empty() {
                return Err(Error::DomainTooSmall);
            }
            Configuration::from_window(group, *radius, cells)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivVerdict {
    /// The transformed window contains no forbidden pattern. Not a proof of membership.
    Consistent,
    /// The transformed window contains a forbidden pattern, so `m` is not in `Div(c, X)`
    /// for any extension of `c`.
    Refuted,
}

pub fn div_witness_check(x: &Sft, c: &Configuration, m: &AutMatrix) -> Result<DivVerdict> {
    let image = apply_automorphism(m, c)?;
    Ok(if is_locally_admissible(x, &image)? {
        DivVerdict::Consistent
    } else {
        DivVerdict::Refuted
    })
}
