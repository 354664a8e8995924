//! Homomorphisms between supported groups, given by generator images.

use crate::error::{Error, Result};
use crate::group::{
    ball, commutator, inverse, multiply, same_group, Family, Group, GroupElement,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HomKind {
    Quotient,
    Embedding,
    General,
}

#[derive(Debug, Clone)]
pub struct Homomorphism {
    source: Group,
    target: Group,
    images: Vec<GroupElement>,
    kind: HomKind,
    kernel_generators: Vec<GroupElement>,
}

impl Homomorphism {
    /// Builds a map from generator images, checking shapes only.
    /// Use [`Homomorphism::new`] to also enforce the defining relations.
    pub fn from_images(
        source: &Group,
        target: &Group,
        images: Vec<GroupElement>,
        kind: HomKind,
        kernel_generators: Vec<GroupElement>,
    ) -> Result<Self> {
        if images.len() != source.num_generators() {
            return Err(Error::DimensionMismatch {
                expected: source.num_generators(),
                found: images.len(),
            });
        }
        if let Some(bad) = images.iter().find(|g| !same_group(g.group(), target)) {
            return Err(Error::GroupMismatch(format!(
                "image {bad} does not lie in {}",
                target.family()
            )));
        }
        if let Some(bad) = kernel_generators
            .iter()
            .find(|g| !same_group(g.group(), source))
        {
            return Err(Error::GroupMismatch(format!(
                "kernel generator {bad} does not lie in {}",
                source.family()
            )));
        }
        Ok(Homomorphism {
            source: source.clone(),
            target: target.clone(),
            images,
            kind,
            kernel_generators,
        })
    }

    /// Builds a homomorphism and rejects it unless [`check_hom`] holds and,
    /// for quotients, every kernel generator maps to the identity.
    pub fn new(
        source: &Group,
        target: &Group,
        images: Vec<GroupElement>,
        kind: HomKind,
        kernel_generators: Vec<GroupElement>,
    ) -> Result<Self> {
        let h = Self::from_images(source, target, images, kind, kernel_generators)?;
        h.validate()?;
        Ok(h)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !check_hom(self) {
            return Err(Error::RelationViolation(format!(
                "generator images do not satisfy the relations of {}",
                self.source.family()
            )));
        }
        if self.kind == HomKind::Quotient {
            if self.kernel_generators.is_empty() {
                return Err(Error::RelationViolation(
                    "quotient map needs at least one kernel generator".into(),
                ));
            }
            for k in &self.kernel_generators {
                if !apply_hom(self, k)?.is_identity() {
                    return Err(Error::RelationViolation(format!(
                        "kernel generator {k} does not map to the identity"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(group: &Group) -> Self {
        let images = (0..group.num_generators())
            .map(|i| GroupElement::generator(group, i))
            .collect();
        Homomorphism {
            source: group.clone(),
            target: group.clone(),
            images,
            kind: HomKind::General,
            kernel_generators: Vec::new(),
        }
    }

    /// Abelianization `Heisenberg3 -> Z^2`: `a -> e1`, `b -> e2`, `c -> 0`, kernel `<c>`.
    pub fn heisenberg_abelianization() -> Self {
        let h = crate::group::GroupDescriptor::heisenberg3();
        let z2 = crate::group::GroupDescriptor::free_abelian(2).expect("rank 2 is valid");
        let images = vec![
            GroupElement::generator(&z2, 0),
            GroupElement::generator(&z2, 1),
            GroupElement::identity(&z2),
        ];
        let kernel = vec![GroupElement::generator(&h, 2)];
        Self::new(&h, &z2, images, HomKind::Quotient, kernel).expect("abelianization is valid")
    }

    /// Projection `Z^n -> Z^m` (`m < n`) killing the last `n - m` coordinates.
    pub fn coordinate_projection(n: usize, m: usize) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(Error::InvalidGroup(format!("cannot project Z^{n} onto Z^{m}")));
        }
        let src = crate::group::GroupDescriptor::free_abelian(n)?;
        let dst = crate::group::GroupDescriptor::free_abelian(m)?;
        let images = (0..n)
            .map(|i| {
                if i < m {
                    GroupElement::generator(&dst, i)
                } else {
                    GroupElement::identity(&dst)
                }
            })
            .collect();
        let kernel = (m..n).map(|i| GroupElement::generator(&src, i)).collect();
        Self::new(&src, &dst, images, HomKind::Quotient, kernel)
    }

    /// Embedding of `source` into `target` sending generator `i` to `targets[i]`.
    pub fn embedding(source: &Group, target: &Group, targets: Vec<GroupElement>) -> Result<Self> {
        Self::new(source, target, targets, HomKind::Embedding, Vec::new())
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn kind(&self) -> HomKind {
        self.kind
    }

    pub fn kernel_generators(&self) -> &[GroupElement] {
        &self.kernel_generators
    }

    /// For each target generator, the first element (by word length, then canonical
    /// order) of `ball(source, radius)` mapping onto it.
    pub(crate) fn generator_preimages(&self, radius: u32) -> Result<Vec<GroupElement>> {
        let mut candidates: Vec<(u32, GroupElement)> = {
            let lengths = self.source.word_lengths(radius);
            let mut v: Vec<_> = lengths
                .into_iter()
                .map(|(c, d)| (d, GroupElement::from_coords_unchecked(&self.source, c)))
                .collect();
            v.sort();
            v
        };
        let images: Vec<GroupElement> = candidates
            .iter()
            .map(|(_, g)| apply_hom(self, g))
            .collect::<Result<_>>()?;
        let mut out = Vec::with_capacity(self.target.num_generators());
        for j in 0..self.target.num_generators() {
            let want = GroupElement::generator(&self.target, j);
            match images.iter().position(|im| *im == want) {
                Some(p) => out.push(candidates[p].1.clone()),
                None => {
                    return Err(Error::NotSurjective(
                        self.target.generator_names()[j].clone(),
                    ))
                }
            }
        }
        candidates.clear();
        Ok(out)
    }

    /// True when the map is injective on `ball(source, r)`.
    pub fn injective_on_ball(&self, r: u32) -> Result<bool> {
        let mut seen = std::collections::HashSet::new();
        for g in ball(&self.source, r) {
            if !seen.insert(apply_hom(self, &g)?.into_coords()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Evaluates `h` on `a` by expanding `a` as its canonical generator word.
pub fn apply_hom(h: &Homomorphism, a: &GroupElement) -> Result<GroupElement> {
    if !same_group(a.group(), &h.source) {
        return Err(Error::GroupMismatch(format!(
            "{a} is not in the source group {}",
            h.source.family()
        )));
    }
    Ok(eval_word(h, &h.source.canonical_word(a.coords())))
}

fn eval_word(h: &Homomorphism, word: &[(usize, i64)]) -> GroupElement {
    let t = &h.target;
    let mut acc = t.identity_coords();
    for &(i, k) in word {
        if k != 0 {
            acc = t.mul_coords(&acc, &t.pow_coords(h.images[i].coords(), k));
        }
    }
    GroupElement::from_coords_unchecked(t, acc)
}

fn commute(a: &GroupElement, b: &GroupElement) -> bool {
    commutator(a, b).map(|c| c.is_identity()).unwrap_or(false)
}

/// Checks that the generator images satisfy every defining relation of the source family.
pub fn check_hom(h: &Homomorphism) -> bool {
    let im = &h.images;
    if im.len() != h.source.num_generators()
        || im.iter().any(|g| !same_group(g.group(), &h.target))
    {
        return false;
    }
    match h.source.family() {
        Family::FreeAbelian { rank } => (0..*rank)
            .all(|i| (i + 1..*rank).all(|j| commute(&im[i], &im[j]))),
        Family::Heisenberg3 => {
            let Ok(c) = commutator(&im[0], &im[1]) else {
                return false;
            };
            c == im[2] && commute(&im[2], &im[0]) && commute(&im[2], &im[1])
        }
        Family::SemidirectZnByZ { rank, matrix } => {
            let n = *rank;
            let normal_commute = (0..n).all(|i| (i + 1..n).all(|j| commute(&im[i], &im[j])));
            if !normal_commute {
                return false;
            }
            let t = &im[n];
            (0..n).all(|i| {
                // t e_i t^{-1} = e^{M e_i} = prod_j e_j^{M[j][i]}
                let Ok(conj) = multiply(t, &im[i]).and_then(|x| multiply(&x, &inverse(t)))
                else {
                    return false;
                };
                let word: Vec<(usize, i64)> = (0..n).map(|j| (j, matrix[j][i])).collect();
                conj == eval_word(h, &word)
            })
        }
    }
}
