//! Building SFTs from SFTs on quotients, subgroups and products, plus the
//! automorphism-free construction on `Z^n`.

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::group::{ensure_same_group, same_group, GroupDescriptor, GroupElement};
use crate::hom::{apply_hom, Homomorphism, HomKind};
use crate::sft::{wang_to_sft, Alphabet, Pattern, Sft, WangTileSet};

/// Radius of the source ball searched for generator preimages when lifting.
const SECTION_SEARCH_RADIUS: u32 = 4;

/// Pulls `x` on `G/H` back to `G` along the quotient map `phi`.
///
/// Each forbidden pattern is transported through a fixed section of `phi`
/// (target generators are replaced by their first preimage in canonical order,
/// then the target's canonical word is re-evaluated in the source). For every
/// kernel generator `k`, the patterns `{e -> a, k -> b}` with `a != b` force
/// colorings to be constant on `H`-cosets.
pub fn quotient_lift(x: &Sft, phi: &Homomorphism) -> Result<Sft> {
    if phi.kind() != HomKind::Quotient {
        return Err(Error::NotAQuotient);
    }
    phi.validate()?;
    ensure_same_group(x.group(), phi.target())?;
    let source = phi.source();
    let target = phi.target();
    let preimages = phi.generator_preimages(SECTION_SEARCH_RADIUS)?;
    let section = |q: &GroupElement| -> Result<GroupElement> {
        let mut acc = source.identity_coords();
        for (j, k) in target.canonical_word(q.coords()) {
            if k != 0 {
                acc = source.mul_coords(&acc, &source.pow_coords(preimages[j].coords(), k));
            }
        }
        let s = GroupElement::new(source, acc)?;
        debug_assert_eq!(apply_hom(phi, &s).expect("source element"), *q);
        Ok(s)
    };

    let mut forbidden = Vec::new();
    for p in x.forbidden() {
        let entries = p
            .entries()
            .iter()
            .map(|(q, s)| Ok((section(q)?, *s)))
            .collect::<Result<Vec<_>>>()?;
        forbidden.push(Pattern::new(source, entries)?);
    }
    let k = x.alphabet().len();
    let e = GroupElement::identity(source);
    for kg in phi.kernel_generators() {
        if kg.is_identity() {
            continue;
        }
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    forbidden.push(Pattern::new(source, vec![(e.clone(), a), (kg.clone(), b)])?);
                }
            }
        }
    }
    Sft::new(source, x.alphabet().clone(), forbidden)
}

/// Transports `x` on a subgroup `H` into `G` along the embedding `emb`, keeping the
/// same forbidden patterns (supports mapped elementwise).
pub fn subgroup_induce(x: &Sft, emb: &Homomorphism) -> Result<Sft> {
    if emb.kind() != HomKind::Embedding {
        return Err(Error::NotAnEmbedding);
    }
    emb.validate()?;
    ensure_same_group(x.group(), emb.source())?;
    if !emb.injective_on_ball(x.max_support_radius())? {
        return Err(Error::NotAnEmbedding);
    }
    let target = emb.target();
    let mut forbidden = Vec::with_capacity(x.forbidden().len());
    for p in x.forbidden() {
        let entries = p
            .entries()
            .iter()
            .map(|(h, s)| Ok((apply_hom(emb, h)?, *s)))
            .collect::<Result<Vec<_>>>()?;
        let pattern = Pattern::new(target, entries).map_err(|e| match e {
            Error::InvalidPattern(m) => Error::NonInjectiveOnSupport(m),
            other => other,
        })?;
        forbidden.push(pattern);
    }
    Sft::new(target, x.alphabet().clone(), forbidden)
}

fn pair_alphabet(a: &Alphabet, b: &Alphabet) -> Result<Alphabet> {
    let plain: Vec<String> = a
        .symbols()
        .iter()
        .flat_map(|x| b.symbols().iter().map(move |y| format!("({x},{y})")))
        .collect();
    if let Ok(alpha) = Alphabet::new(plain) {
        return Ok(alpha);
    }
    let esc = |s: &str| {
        s.replace('\\', "\\\\")
            .replace(',', "\\,")
            .replace('(', "\\(")
            .replace(')', "\\)")
    };
    Alphabet::new(
        a.symbols()
            .iter()
            .flat_map(|x| b.symbols().iter().map(move |y| format!("({},{})", esc(x), esc(y))))
            .collect(),
    )
}

/// Lifts every pattern of `x` to a product alphabet, enumerating the other coordinate.
/// `embed(own, other)` gives the product symbol index.
fn lift_component(
    x: &Sft,
    other_size: usize,
    embed: impl Fn(usize, usize) -> usize,
    out: &mut Vec<Pattern>,
) -> Result<()> {
    for p in x.forbidden() {
        let len = p.len();
        let total = other_size.pow(len as u32);
        for code in 0..total {
            let mut rest = code;
            let mut others = vec![0usize; len];
            for slot in others.iter_mut().rev() {
                *slot = rest % other_size;
                rest /= other_size;
            }
            let entries = p
                .entries()
                .iter()
                .zip(&others)
                .map(|((h, s), o)| (h.clone(), embed(*s, *o)))
                .collect();
            out.push(Pattern::new(x.group(), entries)?);
        }
    }
    Ok(())
}

/// The product SFT `x1 x x2` over the pair alphabet, ordered lexicographically
/// (pair `(i, j)` has index `i * |A2| + j`).
pub fn product(x1: &Sft, x2: &Sft) -> Result<Sft> {
    ensure_same_group(x1.group(), x2.group())?;
    let k2 = x2.alphabet().len();
    let k1 = x1.alphabet().len();
    let alphabet = pair_alphabet(x1.alphabet(), x2.alphabet())?;
    let mut forbidden = Vec::new();
    lift_component(x1, k2, |own, other| own * k2 + other, &mut forbidden)?;
    lift_component(x2, k1, |own, other| other * k2 + own, &mut forbidden)?;
    Sft::new(x1.group(), alphabet, forbidden)
}

/// Splits a product symbol into its two component indices.
pub fn split_pair(symbol: usize, second_size: usize) -> (usize, usize) {
    (symbol / second_size, symbol % second_size)
}

/// Marker SFT on `Z^n` over `{0,1,2}^n` whose points are the `3^n` translates of
/// `z(p) = (p_1 mod 3, ..., p_n mod 3)`.
///
/// Symbols are digit strings (`"01"` is `(0, 1)`), indexed in base 3 with the first
/// digit most significant. Along each axis `e_i`, the only allowed dominoes are
/// `(a, a + e_i mod 3)`.
pub fn mod3_marker(n: usize) -> Result<Sft> {
    let group = GroupDescriptor::free_abelian(n)?;
    let k = 3usize.pow(n as u32);
    let digits = |mut s: usize| -> Vec<usize> {
        let mut d = vec![0; n];
        for slot in d.iter_mut().rev() {
            *slot = s % 3;
            s /= 3;
        }
        d
    };
    let index = |d: &[usize]| d.iter().fold(0, |acc, x| acc * 3 + x);
    let alphabet = Alphabet::new(
        (0..k)
            .map(|s| digits(s).iter().map(|d| char::from(b'0' + *d as u8)).collect())
            .collect(),
    )?;
    let origin = GroupElement::identity(&group);
    let mut forbidden = Vec::with_capacity(n * (k * k - k));
    for axis in 0..n {
        let step = GroupElement::generator(&group, axis);
        for a in 0..k {
            let mut succ = digits(a);
            succ[axis] = (succ[axis] + 1) % 3;
            let allowed = index(&succ);
            for b in 0..k {
                if b != allowed {
                    forbidden.push(Pattern::new(&group, vec![(origin.clone(), a), (step.clone(), b)])?);
                }
            }
        }
    }
    Sft::new(&group, alphabet, forbidden)
}

/// Symbol of the canonical mod-3 point at `p`.
pub fn mod3_symbol(p: &[i64]) -> usize {
    p.iter().fold(0, |acc, x| acc * 3 + x.rem_euclid(3) as usize)
}

/// Extends an SFT on `Z^2` to `Z^n` by keeping its patterns in the `(e1, e2)` plane and
/// forcing constancy along `e3, ..., en`.
pub fn extend_periodic(y: &Sft, n: usize) -> Result<Sft> {
    if y.group().free_abelian_rank() != Some(2) {
        return Err(Error::WrongBaseGroup(y.group().family().to_string()));
    }
    if n < 2 {
        return Err(Error::InvalidGroup(format!("cannot extend to Z^{n}")));
    }
    if n == 2 {
        return Ok(y.clone());
    }
    let group = GroupDescriptor::free_abelian(n)?;
    let mut forbidden = Vec::new();
    for p in y.forbidden() {
        let entries = p
            .entries()
            .iter()
            .map(|(h, s)| {
                let mut c = h.coords().to_vec();
                c.resize(n, 0);
                Ok((GroupElement::new(&group, c)?, *s))
            })
            .collect::<Result<Vec<_>>>()?;
        forbidden.push(Pattern::new(&group, entries)?);
    }
    let k = y.alphabet().len();
    let origin = GroupElement::identity(&group);
    for axis in 2..n {
        let step = GroupElement::generator(&group, axis);
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    forbidden.push(Pattern::new(&group, vec![(origin.clone(), a), (step.clone(), b)])?);
                }
            }
        }
    }
    Sft::new(&group, y.alphabet().clone(), forbidden)
}

/// Relabels the axes of an SFT on `Z^n`: coordinate `i` moves to coordinate `perm[i]`.
pub fn permute_axes(x: &Sft, perm: &[usize]) -> Result<Sft> {
    let n = x
        .group()
        .free_abelian_rank()
        .ok_or_else(|| Error::WrongBaseGroup(x.group().family().to_string()))?;
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::Malformed(format!("{perm:?} is not a permutation of {n} axes")));
    }
    let group = x.group();
    let forbidden = x
        .forbidden()
        .iter()
        .map(|p| {
            let entries = p
                .entries()
                .iter()
                .map(|(h, s)| {
                    let mut c = vec![0; n];
                    for (i, v) in h.coords().iter().enumerate() {
                        c[perm[i]] = *v;
                    }
                    Ok((GroupElement::new(group, c)?, *s))
                })
                .collect::<Result<Vec<_>>>()?;
            Pattern::new(group, entries)
        })
        .collect::<Result<Vec<_>>>()?;
    Sft::new(group, x.alphabet().clone(), forbidden)
}

/// Axis permutation for the `i`-th factor (1-based): base axis 1 goes to `e_i`, base
/// axis 2 to `e_{i mod n + 1}`, remaining axes keep increasing order.
pub fn factor_orientation(i: usize, n: usize) -> Vec<usize> {
    let first = i - 1;
    let second = i % n;
    let mut rest = (0..n).filter(|&a| a != first && a != second);
    let mut perm = vec![first, second];
    for _ in 2..n {
        perm.push(rest.next().expect("enough axes"));
    }
    perm
}

/// Output of [`automorphism_free_product`]: the SFT plus the data needed to decode
/// product symbols and run projection diagnostics.
#[derive(Debug, Clone)]
pub struct AutomorphismFreeProduct {
    pub sft: Sft,
    pub dimension: usize,
    pub base_alphabet_size: usize,
    /// `projection[s]` is the `{0,1}` image of base symbol `s`.
    pub projection: Vec<u8>,
}

impl AutomorphismFreeProduct {
    /// Component symbols `(x_1, ..., x_n, z)` of a product symbol.
    pub fn decode(&self, symbol: usize) -> (Vec<usize>, usize) {
        let z_size = 3usize.pow(self.dimension as u32);
        let z = symbol % z_size;
        let mut rest = symbol / z_size;
        let mut parts = vec![0; self.dimension];
        for slot in parts.iter_mut().rev() {
            *slot = rest % self.base_alphabet_size;
            rest /= self.base_alphabet_size;
        }
        (parts, z)
    }

    /// Direction along which factor `i` (1-based) has monochromatic projected columns.
    pub fn column_axis(&self, i: usize) -> usize {
        factor_orientation(i, self.dimension)[1]
    }

    /// True when, for factor `i`, the projection is constant along its column axis
    /// wherever both neighbours lie in the configuration's domain.
    pub fn projection_columns_monochromatic(&self, c: &Configuration, i: usize) -> Result<bool> {
        ensure_same_group(c.group(), self.sft.group())?;
        let axis = self.column_axis(i);
        for (coords, &v) in c.cells().iter().zip(c.values()) {
            let mut next = coords.clone();
            next[axis] += 1;
            if let Some(w) = c.value_at(&next) {
                let (a, _) = self.decode(v);
                let (b, _) = self.decode(w);
                if self.projection[a[i - 1]] != self.projection[b[i - 1]] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Builds `X_1 x ... x X_n x Z` on `Z^n`, where `X_i` is `base` extended periodically and
/// re-oriented onto the plane `(e_i, e_{i mod n + 1})`, and `Z` is [`mod3_marker`].
pub fn automorphism_free_product(
    base: &Sft,
    projection: &[Option<u8>],
    n: usize,
) -> Result<AutomorphismFreeProduct> {
    if base.group().free_abelian_rank() != Some(2) {
        return Err(Error::WrongBaseGroup(base.group().family().to_string()));
    }
    let k = base.alphabet().len();
    let mut proj = Vec::with_capacity(k);
    for s in 0..k {
        match projection.get(s).copied().flatten() {
            Some(v) if v <= 1 => proj.push(v),
            _ => return Err(Error::ProjectionIncomplete(base.alphabet().symbol(s).to_string())),
        }
    }
    if n < 2 {
        return Err(Error::InvalidGroup(format!("dimension {n} must be at least 2")));
    }
    let extended = extend_periodic(base, n)?;
    let mut acc: Option<Sft> = None;
    for i in 1..=n {
        let factor = permute_axes(&extended, &factor_orientation(i, n))?;
        acc = Some(match acc {
            None => factor,
            Some(prev) => product(&prev, &factor)?,
        });
    }
    let sft = product(&acc.expect("n >= 2 factors"), &mod3_marker(n)?)?;
    Ok(AutomorphismFreeProduct {
        sft,
        dimension: n,
        base_alphabet_size: k,
        projection: proj,
    })
}

/// Projection map from symbol names, in alphabet order; missing names stay `None`.
pub fn projection_from_names(alphabet: &Alphabet, map: &[(String, u8)]) -> Vec<Option<u8>> {
    alphabet
        .symbols()
        .iter()
        .map(|s| map.iter().find(|(k, _)| k == s).map(|(_, v)| *v))
        .collect()
}

/// A periodic stand-in base on `Z^2`: two symbols, every column (direction `e2`)
/// constant, projection the identity.
pub fn column_base() -> (Sft, Vec<Option<u8>>) {
    let z2 = GroupDescriptor::free_abelian(2).expect("rank 2 is valid");
    let origin = GroupElement::identity(&z2);
    let up = GroupElement::generator(&z2, 1);
    let forbidden = vec![
        Pattern::new(&z2, vec![(origin.clone(), 0), (up.clone(), 1)]).expect("pattern"),
        Pattern::new(&z2, vec![(origin, 1), (up, 0)]).expect("pattern"),
    ];
    let sft = Sft::new(&z2, Alphabet::from_strs(&["0", "1"]).expect("alphabet"), forbidden)
        .expect("column base is valid");
    (sft, vec![Some(0), Some(1)])
}

/// Builds the Wang SFT on `Z^2` and pushes it along a chain of quotient lifts and
/// subgroup inductions.
pub fn reduce_to_group(t: &WangTileSet, chain: &[Homomorphism]) -> Result<Sft> {
    let mut current = wang_to_sft(t);
    for (step, h) in chain.iter().enumerate() {
        current = match h.kind() {
            HomKind::Quotient => {
                if !same_group(current.group(), h.target()) {
                    return Err(Error::ChainTypeMismatch {
                        step,
                        reason: format!(
                            "quotient target {} does not match current group {}",
                            h.target().family(),
                            current.group().family()
                        ),
                    });
                }
                quotient_lift(&current, h)?
            }
            HomKind::Embedding => {
                if !same_group(current.group(), h.source()) {
                    return Err(Error::ChainTypeMismatch {
                        step,
                        reason: format!(
                            "embedding source {} does not match current group {}",
                            h.source().family(),
                            current.group().family()
                        ),
                    });
                }
                subgroup_induce(&current, h)?
            }
            HomKind::General => {
                return Err(Error::ChainTypeMismatch {
                    step,
                    reason: "chain steps must be quotients or embeddings".into(),
                })
            }
        };
    }
    Ok(current)
}

/// Canonical mod-3 point on `Torus(3 I_n)`.
pub fn mod3_canonical_point(n: usize) -> Result<Configuration> {
    let group = GroupDescriptor::free_abelian(n)?;
    Configuration::torus_from_fn(&group, crate::lattice::Lattice::scaled_identity(n, 3)?, mod3_symbol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{is_locally_admissible, Domain};
    use crate::group::ball;
    use crate::lattice::Lattice;
    use crate::solver::{check_ball_emptiness, count_torus, enumerate_admissible, stabilizer, EmptinessVerdict, DEFAULT_BUDGET};
    use crate::sft::WangTile;

    fn z(n: usize) -> crate::group::Group {
        GroupDescriptor::free_abelian(n).unwrap()
    }

    fn no_aa_on_z() -> Sft {
        let z1 = z(1);
        let p = Pattern::from_coords(&z1, &[(&[0], 0), (&[1], 0)]).unwrap();
        Sft::new(&z1, Alphabet::from_strs(&["a", "b"]).unwrap(), vec![p]).unwrap()
    }

    fn all_dominoes_tiles() -> WangTileSet {
        WangTileSet::new(vec![WangTile::new("1", "2", "3", "4"), WangTile::new("5", "6", "7", "8")]).unwrap()
    }

    // Oracle: plain enumeration of k^N colorings checked with is_locally_admissible.
    fn brute_torus_count(x: &Sft, l: &Lattice) -> u64 {
        let cells = l.index() as usize;
        let k = x.alphabet().len();
        let mut count = 0;
        for mut code in 0..(k as u64).pow(cells as u32) {
            let values: Vec<usize> = (0..cells)
                .map(|_| {
                    let v = (code % k as u64) as usize;
                    code /= k as u64;
                    v
                })
                .collect();
            let c = Configuration::new(x.group(), Domain::Torus(l.clone()), values).unwrap();
            if is_locally_admissible(x, &c).unwrap() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn mod3_marker_sizes() {
        let m = mod3_marker(2).unwrap();
        assert_eq!(m.alphabet().len(), 9);
        assert_eq!(m.forbidden().len(), 144);
        assert_eq!(m.alphabet().symbol(5), "12");
    }

    #[test]
    fn mod3_n1_has_three_points_with_period_three() {
        let m = mod3_marker(1).unwrap();
        let l = Lattice::scaled_identity(1, 3).unwrap();
        assert_eq!(brute_torus_count(&m, &l), 3);
        let all = enumerate_admissible(&m, &Domain::Torus(l.clone()), 100).unwrap();
        assert_eq!(all.len(), 3);
        for c in all {
            assert_eq!(stabilizer(&c).unwrap(), l);
        }
    }

    #[test]
    fn mod3_n2_no_point_with_horizontal_period_one() {
        let m = mod3_marker(2).unwrap();
        let l = Lattice::parse("1,0;0,3").unwrap();
        assert_eq!(brute_torus_count(&m, &l), 0);
        assert_eq!(count_torus(&m, &l).unwrap(), 0);
    }

    #[test]
    fn canonical_point_is_admissible() {
        for n in 1..=3 {
            let m = mod3_marker(n).unwrap();
            let c = mod3_canonical_point(n).unwrap();
            assert!(is_locally_admissible(&m, &c).unwrap());
        }
    }

    #[test]
    fn lift_of_full_shift_through_abelianization_is_coset_constant() {
        let ab = Homomorphism::heisenberg_abelianization();
        let full = Sft::full_shift(ab.target(), Alphabet::from_strs(&["a", "b"]).unwrap());
        let lifted = quotient_lift(&full, &ab).unwrap();
        assert_eq!(lifted.forbidden().len(), 2);
        let h = ab.source();
        let elements = ball(h, 1);
        let n = elements.len();
        let c_gen = GroupElement::generator(h, 2);
        for code in 0u32..(1 << n) {
            let values: Vec<usize> = (0..n).map(|i| ((code >> i) & 1) as usize).collect();
            let c = Configuration::new(h, Domain::Ball { radius: 1, elements: elements.clone() }, values).unwrap();
            // oracle: constant along every c-edge inside the window
            let constant = elements.iter().all(|g| {
                let gc = crate::group::multiply(g, &c_gen).unwrap();
                match c.value_at(gc.coords()) {
                    Some(v) => v == c.value_at(g.coords()).unwrap(),
                    None => true,
                }
            });
            assert_eq!(is_locally_admissible(&lifted, &c).unwrap(), constant);
        }
    }

    #[test]
    fn lift_mod3_along_projection_z3_to_z2() {
        let proj = Homomorphism::coordinate_projection(3, 2).unwrap();
        let lifted = quotient_lift(&mod3_marker(2).unwrap(), &proj).unwrap();
        assert_eq!(count_torus(&lifted, &Lattice::scaled_identity(3, 3).unwrap()).unwrap(), 9);
    }

    #[test]
    fn lift_preserves_emptiness() {
        let ab = Homomorphism::heisenberg_abelianization();
        let lifted = quotient_lift(&wang_to_sft(&all_dominoes_tiles()), &ab).unwrap();
        assert_eq!(check_ball_emptiness(&lifted, 1, DEFAULT_BUDGET).unwrap(), EmptinessVerdict::EmptyAtRadius(1));
    }

    #[test]
    fn lift_rejects_non_quotients() {
        let z2 = z(2);
        let x = Sft::full_shift(&z2, Alphabet::from_strs(&["a"]).unwrap());
        assert_eq!(quotient_lift(&x, &Homomorphism::identity(&z2)).unwrap_err(), Error::NotAQuotient);
        let ab = Homomorphism::heisenberg_abelianization();
        let wrong = Sft::full_shift(&z(3), Alphabet::from_strs(&["a"]).unwrap());
        assert!(matches!(quotient_lift(&wrong, &ab), Err(Error::GroupMismatch(_))));
    }

    #[test]
    fn induce_rows_into_plane() {
        let z1 = z(1);
        let z2 = z(2);
        let emb = Homomorphism::embedding(&z1, &z2, vec![GroupElement::generator(&z2, 0)]).unwrap();
        let induced = subgroup_induce(&no_aa_on_z(), &emb).unwrap();
        let rows = brute_torus_count(&no_aa_on_z(), &Lattice::scaled_identity(1, 3).unwrap());
        let l = Lattice::scaled_identity(2, 3).unwrap();
        assert_eq!(brute_torus_count(&induced, &l), rows.pow(3));
        assert_eq!(count_torus(&induced, &l).unwrap(), rows.pow(3));
    }

    #[test]
    fn induce_full_shift_is_full_shift() {
        let z1 = z(1);
        let h = GroupDescriptor::heisenberg3();
        let emb = Homomorphism::embedding(&z1, &h, vec![GroupElement::generator(&h, 0)]).unwrap();
        let x = Sft::full_shift(&z1, Alphabet::from_strs(&["a", "b"]).unwrap());
        let y = subgroup_induce(&x, &emb).unwrap();
        assert!(y.forbidden().is_empty());
        assert!(same_group(y.group(), &h));
    }

    #[test]
    fn induce_all_dominoes_into_heisenberg_is_empty() {
        let z1 = z(1);
        let h = GroupDescriptor::heisenberg3();
        let alpha = Alphabet::from_strs(&["a", "b"]).unwrap();
        let ps = (0..2)
            .flat_map(|s| (0..2).map(move |t| (s, t)))
            .map(|(s, t)| Pattern::from_coords(&z1, &[(&[0], s), (&[1], t)]).unwrap())
            .collect();
        let x = Sft::new(&z1, alpha, ps).unwrap();
        let emb = Homomorphism::embedding(&z1, &h, vec![GroupElement::generator(&h, 0)]).unwrap();
        let y = subgroup_induce(&x, &emb).unwrap();
        assert_eq!(check_ball_emptiness(&y, 1, DEFAULT_BUDGET).unwrap(), EmptinessVerdict::EmptyAtRadius(1));
    }

    #[test]
    fn induce_rejects_collapsing_maps() {
        let z2 = z(2);
        let z1 = z(1);
        // e1 -> 1, e2 -> 1 is a homomorphism but not injective
        let collapse = Homomorphism::from_images(
            &z2,
            &z1,
            vec![GroupElement::generator(&z1, 0), GroupElement::generator(&z1, 0)],
            HomKind::Embedding,
            vec![],
        )
        .unwrap();
        let p = Pattern::from_coords(&z2, &[(&[1, 0], 0), (&[0, 1], 1)]).unwrap();
        let x = Sft::new(&z2, Alphabet::from_strs(&["a", "b"]).unwrap(), vec![p]).unwrap();
        assert_eq!(subgroup_induce(&x, &collapse).unwrap_err(), Error::NotAnEmbedding);
        let ab = Homomorphism::heisenberg_abelianization();
        let xh = Sft::full_shift(ab.source(), Alphabet::from_strs(&["a"]).unwrap());
        assert_eq!(subgroup_induce(&xh, &ab).unwrap_err(), Error::NotAnEmbedding);
    }

    #[test]
    fn product_counts_multiply_with_full_shift() {
        let z2 = z(2);
        let full = Sft::full_shift(&z2, Alphabet::from_strs(&["x", "y"]).unwrap());
        let col = column_base().0;
        let l = Lattice::scaled_identity(2, 2).unwrap();
        let p = product(&col, &full).unwrap();
        assert_eq!(p.alphabet().symbol(1), "(0,y)");
        let base = brute_torus_count(&col, &l);
        assert_eq!(base, 4);
        assert_eq!(brute_torus_count(&p, &l), base * 2u64.pow(4));
        assert_eq!(count_torus(&p, &l).unwrap(), base * 16);
    }

    #[test]
    fn product_of_two_markers_has_81_points() {
        let m = mod3_marker(2).unwrap();
        let p = product(&m, &m).unwrap();
        assert_eq!(p.alphabet().len(), 81);
        assert_eq!(count_torus(&p, &Lattice::scaled_identity(2, 3).unwrap()).unwrap(), 81);
    }

    #[test]
    fn product_alphabet_disambiguates_names() {
        let z1 = z(1);
        let a = Sft::full_shift(&z1, Alphabet::from_strs(&["a,b", "a"]).unwrap());
        let b = Sft::full_shift(&z1, Alphabet::from_strs(&["c", "b,c"]).unwrap());
        let p = product(&a, &b).unwrap();
        assert_eq!(p.alphabet().len(), 4);
    }

    #[test]
    fn extend_periodic_examples() {
        let z2 = z(2);
        let full = Sft::full_shift(&z2, Alphabet::from_strs(&["a", "b"]).unwrap());
        assert_eq!(extend_periodic(&full, 2).unwrap(), full);
        let ext = extend_periodic(&full, 3).unwrap();
        let l = Lattice::scaled_identity(3, 2).unwrap();
        assert_eq!(brute_torus_count(&ext, &l), 16);
        assert_eq!(count_torus(&ext, &l).unwrap(), 16);

        let emb = Homomorphism::embedding(&z(1), &z2, vec![GroupElement::generator(&z2, 0)]).unwrap();
        let rows = subgroup_induce(&no_aa_on_z(), &emb).unwrap();
        let flat = count_torus(&rows, &Lattice::scaled_identity(2, 3).unwrap()).unwrap();
        let ext = extend_periodic(&rows, 3).unwrap();
        assert_eq!(count_torus(&ext, &Lattice::scaled_identity(3, 3).unwrap()).unwrap(), flat);

        assert!(matches!(extend_periodic(&no_aa_on_z(), 3), Err(Error::WrongBaseGroup(_))));
    }

    #[test]
    fn orientation_permutations() {
        assert_eq!(factor_orientation(1, 2), vec![0, 1]);
        assert_eq!(factor_orientation(2, 2), vec![1, 0]);
        assert_eq!(factor_orientation(2, 3), vec![1, 2, 0]);
        assert_eq!(factor_orientation(3, 3), vec![2, 0, 1]);
        assert_eq!(factor_orientation(1, 4), vec![0, 1, 2, 3]);
    }

    #[test]
    fn automorphism_free_product_with_full_base() {
        let z2 = z(2);
        let full = Sft::full_shift(&z2, Alphabet::from_strs(&["a", "b"]).unwrap());
        let afp = automorphism_free_product(&full, &[Some(0), Some(1)], 2).unwrap();
        assert_eq!(afp.sft.alphabet().len(), 36);
        let l = Lattice::scaled_identity(2, 3).unwrap();
        // each full-shift factor contributes 2^9 colorings of the 3x3 torus
        assert_eq!(count_torus(&afp.sft, &l).unwrap(), 9 * 512 * 512);
    }

    #[test]
    fn automorphism_free_product_rejects_partial_projection() {
        let (base, _) = column_base();
        assert_eq!(
            automorphism_free_product(&base, &[Some(0)], 2).unwrap_err(),
            Error::ProjectionIncomplete("1".into())
        );
        assert_eq!(
            automorphism_free_product(&base, &[Some(0), Some(2)], 2).unwrap_err(),
            Error::ProjectionIncomplete("1".into())
        );
    }

    #[test]
    fn automorphism_free_product_columns_diagnostic() {
        let (base, proj) = column_base();
        let afp = automorphism_free_product(&base, &proj, 2).unwrap();
        match check_ball_emptiness(&afp.sft, 2, DEFAULT_BUDGET).unwrap() {
            EmptinessVerdict::Witness(c) => {
                assert!(afp.projection_columns_monochromatic(&c, 1).unwrap());
                assert!(afp.projection_columns_monochromatic(&c, 2).unwrap());
            }
            v => panic!("expected witness, got {v:?}"),
        }
        // factor 1 has columns along e2, factor 2 along e1
        assert_eq!(afp.column_axis(1), 1);
        assert_eq!(afp.column_axis(2), 0);
    }

    #[test]
    fn reduce_chain_examples() {
        let single = WangTileSet::new(vec![WangTile::new("x", "x", "x", "x")]).unwrap();
        assert_eq!(reduce_to_group(&single, &[]).unwrap(), wang_to_sft(&single));
        let ab = Homomorphism::heisenberg_abelianization();
        let y = reduce_to_group(&single, std::slice::from_ref(&ab)).unwrap();
        assert!(check_ball_emptiness(&y, 3, DEFAULT_BUDGET).unwrap().is_witness());
        let y = reduce_to_group(&all_dominoes_tiles(), std::slice::from_ref(&ab)).unwrap();
        assert_eq!(check_ball_emptiness(&y, 1, DEFAULT_BUDGET).unwrap(), EmptinessVerdict::EmptyAtRadius(1));
        // the abelianization cannot be applied twice
        let err = reduce_to_group(&single, &[ab.clone(), ab]).unwrap_err();
        assert!(matches!(err, Error::ChainTypeMismatch { step: 1, .. }));
        let id = Homomorphism::identity(&z(2));
        assert!(matches!(reduce_to_group(&single, &[id]), Err(Error::ChainTypeMismatch { step: 0, .. })));
    }
}
