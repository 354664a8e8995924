//! Colorings of finite windows and of tori `Z^n / L`, with the shift action
//! `(g . c)(h) = c(g^{-1} h)`.
//!
//! A pattern `P` occurs at `g` when `c(g h) = P(h)` for every `h` in its support.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{ball, ensure_same_group, same_group, Group, GroupElement};
use crate::lattice::Lattice;
use crate::sft::{Pattern, Sft};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    /// An explicit finite window, kept in canonical element order. `radius` records
    /// the ball it was cut from (translation moves the window, not the radius).
    Ball {
        radius: u32,
        elements: Vec<GroupElement>,
    },
    /// Residues of `Z^n` modulo a full-rank lattice.
    Torus(Lattice),
}

impl Domain {
    pub fn ball(group: &Group, r: u32) -> Self {
        Domain::Ball {
            radius: r,
            elements: ball(group, r),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Domain::Ball { elements, .. } => elements.len(),
            Domain::Torus(l) => l.index() as usize,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Cell lookup for a domain: coordinates to cell index.
#[derive(Debug, Clone)]
pub(crate) enum CellIndex {
    Window(HashMap<Vec<i64>, usize>),
    Torus(Lattice),
}

impl CellIndex {
    pub(crate) fn new(domain: &Domain) -> Self {
        match domain {
            Domain::Ball { elements, .. } => CellIndex::Window(
                elements
                    .iter()
                    .enumerate()
                    .map(|(i, e)| (e.coords().to_vec(), i))
                    .collect(),
            ),
            Domain::Torus(l) => CellIndex::Torus(l.clone()),
        }
    }

    pub(crate) fn get(&self, coords: &[i64]) -> Option<usize> {
        match self {
            CellIndex::Window(m) => m.get(coords).copied(),
            CellIndex::Torus(l) => Some(l.residue_index(&l.reduce(coords))),
        }
    }
}

/// Coordinates of every cell, in cell-index order.
pub(crate) fn cell_coords(domain: &Domain) -> Vec<Vec<i64>> {
    match domain {
        Domain::Ball { elements, .. } => elements.iter().map(|e| e.coords().to_vec()).collect(),
        Domain::Torus(l) => l.residues(),
    }
}

/// Every placement of `pattern` that lies fully inside the domain, as the list of
/// cells `g h` (in pattern entry order). On a torus every residue `g` is a placement;
/// placements that fold two support elements onto one cell are kept as they are.
pub(crate) fn placements(
    group: &Group,
    domain: &Domain,
    index: &CellIndex,
    pattern: &Pattern,
) -> Vec<Vec<usize>> {
    let entries = pattern.entries();
    let anchors: Vec<Vec<i64>> = match domain {
        Domain::Torus(l) => l.residues(),
        Domain::Ball { elements, .. } => {
            let h0_inv = group.inv_coords(entries[0].0.coords());
            elements
                .iter()
                .map(|b| group.mul_coords(b.coords(), &h0_inv))
                .collect()
        }
    };
    let mut out = Vec::new();
    'anchor: for g in anchors {
        let mut cells = Vec::with_capacity(entries.len());
        for (h, _) in entries {
            match index.get(&group.mul_coords(&g, h.coords())) {
                Some(c) => cells.push(c),
                None => continue 'anchor,
            }
        }
        out.push(cells);
    }
    out
}

#[derive(Debug, Clone)]
pub struct Configuration {
    group: Group,
    domain: Domain,
    values: Vec<usize>,
    index: CellIndex,
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group)
            && self.domain == other.domain
            && self.values == other.values
    }
}

impl Eq for Configuration {}

impl Configuration {
    /// `values[i]` colors cell `i` (window element `i`, or residue `i` in
    /// lexicographic order for a torus).
    pub fn new(group: &Group, domain: Domain, values: Vec<usize>) -> Result<Self> {
        match &domain {
            Domain::Ball { elements, .. } => {
                if let Some(e) = elements.iter().find(|e| !same_group(e.group(), group)) {
                    return Err(Error::GroupMismatch(format!(
                        "window element {e} is not in {}",
                        group.family()
                    )));
                }
                if elements.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::InvalidConfiguration(
                        "window elements must be distinct and in canonical order".into(),
                    ));
                }
            }
            Domain::Torus(l) => {
                let rank = group.free_abelian_rank().ok_or(Error::TorusRequiresFreeAbelian)?;
                if l.dim() != rank {
                    return Err(Error::DimensionMismatch {
                        expected: rank,
                        found: l.dim(),
                    });
                }
            }
        }
        if values.len() != domain.len() {
            return Err(Error::InvalidConfiguration(format!(
                "domain has {} cells but {} values were given",
                domain.len(),
                values.len()
            )));
        }
        let index = CellIndex::new(&domain);
        Ok(Configuration {
            group: group.clone(),
            domain,
            values,
            index,
        })
    }

    /// Builds a window configuration from unsorted `(element, value)` pairs.
    pub fn from_window(group: &Group, radius: u32, mut cells: Vec<(GroupElement, usize)>) -> Result<Self> {
        cells.sort_by(|a, b| a.0.cmp(&b.0));
        let (elements, values): (Vec<_>, Vec<_>) = cells.into_iter().unzip();
        Self::new(group, Domain::Ball { radius, elements }, values)
    }

    /// Torus configuration from a coloring function on residues.
    pub fn torus_from_fn(group: &Group, lattice: Lattice, f: impl Fn(&[i64]) -> usize) -> Result<Self> {
        let values = lattice.residues().iter().map(|r| f(r)).collect();
        Self::new(group, Domain::Torus(lattice), values)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn lattice(&self) -> Option<&Lattice> {
        match &self.domain {
            Domain::Torus(l) => Some(l),
            Domain::Ball { .. } => None,
        }
    }

    /// Cell coordinates in value order.
    pub fn cells(&self) -> Vec<Vec<i64>> {
        cell_coords(&self.domain)
    }

    /// Value at `coords` (reduced modulo the lattice on a torus).
    pub fn value_at(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).map(|i| self.values[i])
    }

    /// Restriction of the periodic extension of a torus configuration to `ball(G, r)`.
    pub fn periodic_window(&self, r: u32) -> Result<Configuration> {
        if self.lattice().is_none() {
            return Err(Error::InvalidConfiguration("not a torus configuration".into()));
        }
        let elements = ball(&self.group, r);
        let values = elements
            .iter()
            .map(|e| self.value_at(e.coords()).expect("torus covers every element"))
            .collect();
        Configuration::new(&self.group, Domain::Ball { radius: r, elements }, values)
    }
}

/// `(g . c)(h) = c(g^{-1} h)`. Windows move to `g . domain`; tori keep their residues.
pub fn translate(g: &GroupElement, c: &Configuration) -> Result<Configuration> {
    ensure_same_group(g.group(), &c.group)?;
    let group = &c.group;
    match &c.domain {
        Domain::Ball { radius, elements } => {
            let cells = elements
                .iter()
                .zip(&c.values)
                .map(|(h, &v)| {
                    (
                        GroupElement::from_coords_unchecked(group, group.mul_coords(g.coords(), h.coords())),
                        v,
                    )
                })
                .collect();
            Configuration::from_window(group, *radius, cells)
        }
        Domain::Torus(l) => {
            let g_inv = group.inv_coords(g.coords());
            let values = l
                .residues()
                .iter()
                .map(|h| c.value_at(&group.mul_coords(&g_inv, h)).expect("torus lookup"))
                .collect();
            Configuration::new(group, Domain::Torus(l.clone()), values)
        }
    }
}

/// True iff `c(g h) = p(h)` for every `h` in the support of `p`.
pub fn occurs(p: &Pattern, c: &Configuration, g: &GroupElement) -> Result<bool> {
    ensure_same_group(p.group(), &c.group)?;
    ensure_same_group(g.group(), &c.group)?;
    let mut all = true;
    for (h, sym) in p.entries() {
        let cell = c.group.mul_coords(g.coords(), h.coords());
        match c.value_at(&cell) {
            Some(v) => all &= v == *sym,
            None => return Err(Error::SupportOutOfDomain),
        }
    }
    Ok(all)
}

/// True iff no forbidden pattern occurs at any placement fully inside the domain
/// (every residue, on a torus).
pub fn is_locally_admissible(x: &Sft, c: &Configuration) -> Result<bool> {
    ensure_same_group(x.group(), &c.group)?;
    let k = x.alphabet().len();
    if let Some(v) = c.values.iter().find(|&&v| v >= k) {
        return Err(Error::AlphabetMismatch(format!(
            "value {v} outside alphabet of size {k}"
        )));
    }
    for p in x.forbidden() {
        for cells in placements(&c.group, &c.domain, &c.index, p) {
            if cells
                .iter()
                .zip(p.entries())
                .all(|(&cell, (_, s))| c.values[cell] == *s)
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{inverse, multiply, GroupDescriptor};
    use crate::sft::Alphabet;

    fn z(n: usize) -> Group {
        GroupDescriptor::free_abelian(n).unwrap()
    }

    fn no_aa() -> Sft {
        let z1 = z(1);
        let p = Pattern::from_coords(&z1, &[(&[0], 0), (&[1], 0)]).unwrap();
        Sft::new(&z1, Alphabet::from_strs(&["a", "b"]).unwrap(), vec![p]).unwrap()
    }

    fn mod3_point(g: &Group) -> Configuration {
        Configuration::torus_from_fn(g, Lattice::scaled_identity(2, 3).unwrap(), |r| {
            (r[0] * 3 + r[1]) as usize
        })
        .unwrap()
    }

    #[test]
    fn identity_translation_is_noop() {
        let z2 = z(2);
        let c = mod3_point(&z2);
        assert_eq!(translate(&GroupElement::identity(&z2), &c).unwrap(), c);
    }

    #[test]
    fn window_translation_shifts_values() {
        let z1 = z(1);
        let c = Configuration::new(&z1, Domain::ball(&z1, 1), vec![0, 1, 2]).unwrap();
        let one = GroupElement::generator(&z1, 0);
        let t = translate(&one, &c).unwrap();
        assert_eq!(t.cells(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(t.values(), &[0, 1, 2]);
        for h in 0..3 {
            assert_eq!(t.value_at(&[h]), c.value_at(&[h - 1]));
        }
    }

    #[test]
    fn torus_translation_decrements_labels() {
        let z2 = z(2);
        let c = mod3_point(&z2);
        let g = GroupElement::new(&z2, vec![1, 0]).unwrap();
        let t = translate(&g, &c).unwrap();
        for r in c.cells() {
            let expected = (((r[0] - 1).rem_euclid(3)) * 3 + r[1]) as usize;
            assert_eq!(t.value_at(&r), Some(expected));
        }
        assert_eq!(translate(&g, &translate(&inverse(&g), &c).unwrap()).unwrap(), c);
    }

    #[test]
    fn occurrence_examples() {
        let z2 = z(2);
        let single = Pattern::from_coords(&z2, &[(&[0, 0], 1)]).unwrap();
        let c = Configuration::new(&z2, Domain::ball(&z2, 1), vec![0, 0, 1, 1, 0]).unwrap();
        // canonical order: (-1,0) (0,-1) (0,0) (0,1) (1,0)
        let origin = GroupElement::identity(&z2);
        assert!(occurs(&single, &c, &origin).unwrap());
        let domino = Pattern::from_coords(&z2, &[(&[0, 0], 1), (&[1, 0], 1)]).unwrap();
        assert!(!occurs(&domino, &c, &origin).unwrap());
        let far = GroupElement::new(&z2, vec![1, 0]).unwrap();
        assert_eq!(occurs(&domino, &c, &far), Err(Error::SupportOutOfDomain));
    }

    #[test]
    fn mod3_forbidden_pair_never_occurs_on_canonical_point() {
        let z2 = z(2);
        let c = mod3_point(&z2);
        // symbol (0,0) followed horizontally by (0,0) is not a successor pair
        let p = Pattern::from_coords(&z2, &[(&[0, 0], 0), (&[1, 0], 0)]).unwrap();
        for r in c.cells() {
            let g = GroupElement::new(&z2, r).unwrap();
            assert!(!occurs(&p, &c, &g).unwrap());
        }
    }

    #[test]
    fn admissibility_examples() {
        let z1 = z(1);
        let full = Sft::full_shift(&z1, Alphabet::from_strs(&["a", "b"]).unwrap());
        let c = Configuration::new(&z1, Domain::ball(&z1, 2), vec![0, 0, 0, 0, 0]).unwrap();
        assert!(is_locally_admissible(&full, &c).unwrap());
        let x = no_aa();
        assert!(!is_locally_admissible(&x, &c).unwrap());
        let alt = Configuration::new(&z1, Domain::ball(&z1, 2), vec![0, 1, 0, 1, 0]).unwrap();
        assert!(is_locally_admissible(&x, &alt).unwrap());
    }

    #[test]
    fn admissibility_errors() {
        let x = no_aa();
        let z2 = z(2);
        let c = Configuration::new(&z2, Domain::ball(&z2, 0), vec![0]).unwrap();
        assert!(matches!(is_locally_admissible(&x, &c), Err(Error::GroupMismatch(_))));
        let z1 = z(1);
        let c = Configuration::new(&z1, Domain::ball(&z1, 0), vec![5]).unwrap();
        assert!(matches!(is_locally_admissible(&x, &c), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn torus_requires_free_abelian() {
        let h = GroupDescriptor::heisenberg3();
        let r = Configuration::new(&h, Domain::Torus(Lattice::scaled_identity(3, 2).unwrap()), vec![0; 8]);
        assert_eq!(r, Err(Error::TorusRequiresFreeAbelian));
    }

    #[test]
    fn translation_equivariance_on_heisenberg_window() {
        let h = GroupDescriptor::heisenberg3();
        let elements = ball(&h, 2);
        let values: Vec<usize> = (0..elements.len()).map(|i| (i * 7 + 3) % 2).collect();
        let c = Configuration::new(&h, Domain::Ball { radius: 2, elements }, values).unwrap();
        let p = Pattern::from_coords(&h, &[(&[0, 0, 0], 0), (&[1, 0, 0], 1)]).unwrap();
        let g = GroupElement::identity(&h);
        for k in ball(&h, 1) {
            let moved = translate(&k, &c).unwrap();
            let kg = multiply(&k, &g).unwrap();
            assert_eq!(occurs(&p, &c, &g).unwrap(), occurs(&p, &moved, &kg).unwrap());
        }
    }
}
