//! Concrete finitely generated groups with exact normal forms.
//!
//! Three families are supported:
//!
//! * `FreeAbelian(n)`: coordinates `(c_1, ..., c_n)`, componentwise addition.
//! * `Heisenberg3`: coordinates `(x, y, z)` standing for the upper unitriangular
//!   matrix `[[1,x,z],[0,1,y],[0,0,1]]`, so that
//!   `(x1,y1,z1)(x2,y2,z2) = (x1+x2, y1+y2, z1+z2+x1*y2)`.
//! * `SemidirectZnByZ(n, M)`: coordinates `(v_1, ..., v_n, t)` with
//!   `(v1,t1)(v2,t2) = (v1 + M^t1 v2, t1+t2)`.
//!
//! Elements carry a shared handle to their group; the canonical order on
//! elements is lexicographic on the coordinate vector.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::intmat::{self, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    FreeAbelian { rank: usize },
    Heisenberg3,
    SemidirectZnByZ { rank: usize, matrix: Matrix },
}

impl Family {
    /// Number of standard generators.
    pub fn num_generators(&self) -> usize {
        match self {
            Family::FreeAbelian { rank } => *rank,
            Family::Heisenberg3 => 3,
            Family::SemidirectZnByZ { rank, .. } => rank + 1,
        }
    }

    /// Length of the coordinate vector.
    pub fn dim(&self) -> usize {
        self.num_generators()
    }

    fn default_hirsch(&self) -> u32 {
        self.num_generators() as u32
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::FreeAbelian { rank } => write!(f, "Z^{rank}"),
            Family::Heisenberg3 => write!(f, "Heisenberg3"),
            Family::SemidirectZnByZ { rank, matrix } => {
                write!(f, "Z^{rank} x| Z [{}]", intmat::format_matrix(matrix))
            }
        }
    }
}

#[derive(Debug)]
pub struct GroupDescriptor {
    family: Family,
    declared_hirsch: u32,
    generator_names: Vec<String>,
    // M^{-1} for the semidirect family
    matrix_inverse: Option<Matrix>,
}

/// Shared handle to an immutable group descriptor.
pub type Group = Arc<GroupDescriptor>;

impl PartialEq for GroupDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family
    }
}

impl Eq for GroupDescriptor {}

fn default_names(family: &Family) -> Vec<String> {
    match family {
        Family::FreeAbelian { rank } => (1..=*rank).map(|i| format!("e{i}")).collect(),
        Family::Heisenberg3 => vec!["a".into(), "b".into(), "c".into()],
        Family::SemidirectZnByZ { rank, .. } => (1..=*rank)
            .map(|i| format!("e{i}"))
            .chain(std::iter::once("t".to_string()))
            .collect(),
    }
}

impl GroupDescriptor {
    pub fn new(
        family: Family,
        declared_hirsch: Option<u32>,
        generator_names: Option<Vec<String>>,
    ) -> Result<Group> {
        let matrix_inverse = match &family {
            Family::FreeAbelian { rank } => {
                if *rank == 0 {
                    return Err(Error::InvalidGroup("free abelian rank must be >= 1".into()));
                }
                None
            }
            Family::Heisenberg3 => None,
            Family::SemidirectZnByZ { rank, matrix } => {
                if *rank == 0 {
                    return Err(Error::InvalidGroup("semidirect rank must be >= 1".into()));
                }
                if !intmat::is_square(matrix, *rank) {
                    return Err(Error::InvalidGroup(format!(
                        "semidirect matrix must be {rank}x{rank}"
                    )));
                }
                match intmat::inverse_unimodular(matrix) {
                    Some(inv) => Some(inv),
                    None => return Err(Error::NotUnimodular(intmat::det(matrix))),
                }
            }
        };
        let hirsch = declared_hirsch.unwrap_or_else(|| family.default_hirsch());
        if let Family::FreeAbelian { rank } = family {
            if hirsch as usize != rank {
                return Err(Error::InvalidGroup(format!(
                    "declared Hirsch number {hirsch} differs from rank {rank}"
                )));
            }
        }
        let names = generator_names.unwrap_or_else(|| default_names(&family));
        if names.len() != family.num_generators() {
            return Err(Error::InvalidGroup(format!(
                "expected {} generator names, found {}",
                family.num_generators(),
                names.len()
            )));
        }
        Ok(Arc::new(GroupDescriptor {
            family,
            declared_hirsch: hirsch,
            generator_names: names,
            matrix_inverse,
        }))
    }

    pub fn free_abelian(rank: usize) -> Result<Group> {
        Self::new(Family::FreeAbelian { rank }, None, None)
    }

    pub fn heisenberg3() -> Group {
        Self::new(Family::Heisenberg3, None, None).expect("Heisenberg3 is always valid")
    }

    pub fn semidirect(matrix: Matrix) -> Result<Group> {
        let rank = matrix.len();
        Self::new(Family::SemidirectZnByZ { rank, matrix }, None, None)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn declared_hirsch(&self) -> u32 {
        self.declared_hirsch
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn num_generators(&self) -> usize {
        self.family.num_generators()
    }

    pub fn dim(&self) -> usize {
        self.family.dim()
    }

    /// Rank when the group is free abelian.
    pub fn free_abelian_rank(&self) -> Option<usize> {
        match self.family {
            Family::FreeAbelian { rank } => Some(rank),
            _ => None,
        }
    }

    pub fn identity_coords(&self) -> Vec<i64> {
        vec![0; self.dim()]
    }

    pub fn generator_coords(&self, i: usize) -> Vec<i64> {
        let mut c = self.identity_coords();
        c[i] = 1;
        c
    }

    /// Standard generators followed by their inverses.
    pub fn symmetric_generators(&self) -> Vec<Vec<i64>> {
        let mut gens = Vec::with_capacity(2 * self.num_generators());
        for i in 0..self.num_generators() {
            gens.push(self.generator_coords(i));
        }
        for i in 0..self.num_generators() {
            let g = self.generator_coords(i);
            gens.push(self.inv_coords(&g));
        }
        gens
    }

    fn matrix_power(&self, t: i64) -> Matrix {
        match (&self.family, &self.matrix_inverse) {
            (Family::SemidirectZnByZ { matrix, .. }, Some(inv)) => intmat::pow(matrix, inv, t),
            _ => unreachable!("matrix power requested on a non-semidirect group"),
        }
    }

    /// Normal-form product of two coordinate vectors of this group.
    pub fn mul_coords(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        match &self.family {
            Family::FreeAbelian { .. } => a.iter().zip(b).map(|(x, y)| x + y).collect(),
            Family::Heisenberg3 => vec![a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]],
            Family::SemidirectZnByZ { rank, .. } => {
                let n = *rank;
                let (v1, t1) = (&a[..n], a[n]);
                let (v2, t2) = (&b[..n], b[n]);
                let moved = if t1 == 0 {
                    v2.to_vec()
                } else {
                    intmat::mat_vec(&self.matrix_power(t1), v2)
                };
                let mut out: Vec<i64> = v1.iter().zip(&moved).map(|(x, y)| x + y).collect();
                out.push(t1 + t2);
                out
            }
        }
    }

    pub fn inv_coords(&self, a: &[i64]) -> Vec<i64> {
        match &self.family {
            Family::FreeAbelian { .. } => a.iter().map(|x| -x).collect(),
            Family::Heisenberg3 => vec![-a[0], -a[1], -a[2] + a[0] * a[1]],
            Family::SemidirectZnByZ { rank, .. } => {
                let n = *rank;
                let t = a[n];
                let moved = if t == 0 {
                    a[..n].to_vec()
                } else {
                    intmat::mat_vec(&self.matrix_power(-t), &a[..n])
                };
                let mut out: Vec<i64> = moved.iter().map(|x| -x).collect();
                out.push(-t);
                out
            }
        }
    }

    /// `g^k` on coordinates by repeated squaring.
    pub fn pow_coords(&self, g: &[i64], k: i64) -> Vec<i64> {
        let mut base = if k < 0 { self.inv_coords(g) } else { g.to_vec() };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity_coords();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_coords(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_coords(&base, &base);
            }
        }
        acc
    }

    /// Canonical generator word of an element, as `(generator index, exponent)` pairs
    /// whose ordered product is the element.
    ///
    /// FreeAbelian: `e_1^{c_1} ... e_n^{c_n}`; Heisenberg3: `a^x b^y c^{z - xy}`;
    /// semidirect: `e_1^{v_1} ... e_n^{v_n} t^t`.
    pub fn canonical_word(&self, coords: &[i64]) -> Vec<(usize, i64)> {
        match &self.family {
            Family::FreeAbelian { .. } | Family::SemidirectZnByZ { .. } => {
                coords.iter().copied().enumerate().collect()
            }
            Family::Heisenberg3 => {
                let (x, y, z) = (coords[0], coords[1], coords[2]);
                vec![(0, x), (1, y), (2, z - x * y)]
            }
        }
    }

    /// Map from elements of word length `<= r` to their word length, by breadth-first search.
    pub fn word_lengths(&self, r: u32) -> HashMap<Vec<i64>, u32> {
        let gens = self.symmetric_generators();
        let mut dist = HashMap::new();
        let id = self.identity_coords();
        dist.insert(id.clone(), 0);
        let mut frontier = vec![id];
        for d in 1..=r {
            let mut next = Vec::new();
            for g in &frontier {
                for s in &gens {
                    let h = self.mul_coords(g, s);
                    if !dist.contains_key(&h) {
                        dist.insert(h.clone(), d);
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    /// Word length of `coords`, if at most `cap`.
    pub fn word_length(&self, coords: &[i64], cap: u32) -> Option<u32> {
        if coords.iter().all(|&c| c == 0) {
            return Some(0);
        }
        let gens = self.symmetric_generators();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let id = self.identity_coords();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        for d in 1..=cap {
            let mut next = Vec::new();
            for g in &frontier {
                for s in &gens {
                    let h = self.mul_coords(g, s);
                    if h == coords {
                        return Some(d);
                    }
                    if seen.insert(h.clone()) {
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        None
    }
}

/// Returns true when two handles denote the same group.
pub fn same_group(a: &Group, b: &Group) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone)]
pub struct GroupElement {
    group: Group,
    coords: Vec<i64>,
}

impl GroupElement {
    pub fn new(group: &Group, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != group.dim() {
            return Err(Error::InvalidElement(format!(
                "{} expects {} coordinates, found {}",
                group.family(),
                group.dim(),
                coords.len()
            )));
        }
        Ok(GroupElement {
            group: Arc::clone(group),
            coords,
        })
    }

    pub(crate) fn from_coords_unchecked(group: &Group, coords: Vec<i64>) -> Self {
        debug_assert_eq!(coords.len(), group.dim());
        GroupElement {
            group: Arc::clone(group),
            coords,
        }
    }

    pub fn identity(group: &Group) -> Self {
        Self::from_coords_unchecked(group, group.identity_coords())
    }

    pub fn generator(group: &Group, i: usize) -> Self {
        Self::from_coords_unchecked(group, group.generator_coords(i))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::from_coords_unchecked(&self.group, self.group.pow_coords(&self.coords, k))
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && same_group(&self.group, &other.group)
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn check_same(a: &Group, b: &Group) -> Result<()> {
    if same_group(a, b) {
        Ok(())
    } else {
        Err(Error::GroupMismatch(format!("{} vs {}", a.family(), b.family())))
    }
}

pub(crate) fn ensure_same_group(a: &Group, b: &Group) -> Result<()> {
    check_same(a, b)
}

pub fn multiply(a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    check_same(&a.group, &b.group)?;
    Ok(GroupElement::from_coords_unchecked(
        &a.group,
        a.group.mul_coords(&a.coords, &b.coords),
    ))
}

pub fn inverse(a: &GroupElement) -> GroupElement {
    GroupElement::from_coords_unchecked(&a.group, a.group.inv_coords(&a.coords))
}

/// Commutator `a b a^{-1} b^{-1}`.
pub fn commutator(a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    let ab = multiply(a, b)?;
    let aba = multiply(&ab, &inverse(a))?;
    multiply(&aba, &inverse(b))
}

/// All elements of word length at most `r`, in canonical (lexicographic) order.
pub fn ball(group: &Group, r: u32) -> Vec<GroupElement> {
    let mut coords: Vec<Vec<i64>> = group.word_lengths(r).into_keys().collect();
    coords.sort();
    coords
        .into_iter()
        .map(|c| GroupElement::from_coords_unchecked(group, c))
        .collect()
}
