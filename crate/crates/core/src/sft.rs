//! Alphabets, finite patterns, SFT definitions and Wang tile sets.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{ensure_same_group, same_group, Group, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new(symbols: Vec<String>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        let mut lookup = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if lookup.insert(s.clone(), i).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {s:?}")));
            }
        }
        Ok(Alphabet { symbols, lookup })
    }

    pub fn from_strs(symbols: &[&str]) -> Result<Self> {
        Self::new(symbols.iter().map(|s| s.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    pub fn index_of(&self, s: &str) -> Option<usize> {
        self.lookup.get(s).copied()
    }
}

/// A finite partial map from group elements to symbol indices.
/// Entries are kept sorted by the canonical element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    group: Group,
    entries: Vec<(GroupElement, usize)>,
}

impl Pattern {
    pub fn new(group: &Group, mut entries: Vec<(GroupElement, usize)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidPattern("empty support".into()));
        }
        for (g, _) in &entries {
            if !same_group(g.group(), group) {
                return Err(Error::GroupMismatch(format!(
                    "support element {g} is not in {}",
                    group.family()
                )));
            }
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidPattern(format!("repeated support element {}", w[0].0)));
        }
        Ok(Pattern {
            group: group.clone(),
            entries,
        })
    }

    /// Convenience constructor from raw coordinates.
    pub fn from_coords(group: &Group, entries: &[(&[i64], usize)]) -> Result<Self> {
        let entries = entries
            .iter()
            .map(|(c, s)| Ok((GroupElement::new(group, c.to_vec())?, *s)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, entries)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn entries(&self) -> &[(GroupElement, usize)] {
        &self.entries
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.entries.iter().map(|(g, _)| g)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Smallest `r` such that some translate of the support fits in `ball(G, r)`
    /// centered at the identity: `min_{h0} max_{h} |h0^{-1} h|`.
    pub fn support_radius(&self) -> u32 {
        let g = &self.group;
        let diffs: Vec<Vec<Vec<i64>>> = self
            .entries
            .iter()
            .map(|(h0, _)| {
                let inv = g.inv_coords(h0.coords());
                self.entries
                    .iter()
                    .map(|(h, _)| g.mul_coords(&inv, h.coords()))
                    .collect()
            })
            .collect();
        let mut r = 0;
        loop {
            let lengths = g.word_lengths(r);
            if diffs
                .iter()
                .any(|ds| ds.iter().all(|d| lengths.contains_key(d)))
            {
                return r;
            }
            r += 1;
        }
    }
}

/// A subshift of finite type given by an alphabet and explicit forbidden patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sft {
    group: Group,
    alphabet: Alphabet,
    forbidden: Vec<Pattern>,
}

impl Sft {
    pub fn new(group: &Group, alphabet: Alphabet, forbidden: Vec<Pattern>) -> Result<Self> {
        for p in &forbidden {
            ensure_same_group(p.group(), group)?;
            if let Some((_, s)) = p.entries().iter().find(|(_, s)| *s >= alphabet.len()) {
                return Err(Error::InvalidPattern(format!(
                    "symbol index {s} outside alphabet of size {}",
                    alphabet.len()
                )));
            }
        }
        Ok(Sft {
            group: group.clone(),
            alphabet,
            forbidden,
        })
    }

    /// The full shift over `alphabet`.
    pub fn full_shift(group: &Group, alphabet: Alphabet) -> Self {
        Sft {
            group: group.clone(),
            alphabet,
            forbidden: Vec::new(),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn forbidden(&self) -> &[Pattern] {
        &self.forbidden
    }

    pub fn max_support_radius(&self) -> u32 {
        self.forbidden
            .iter()
            .map(Pattern::support_radius)
            .max()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WangTile {
    pub north: String,
    pub east: String,
    pub south: String,
    pub west: String,
}

impl WangTile {
    pub fn new(north: &str, east: &str, south: &str, west: &str) -> Self {
        WangTile {
            north: north.into(),
            east: east.into(),
            south: south.into(),
            west: west.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WangTileSet {
    tiles: Vec<WangTile>,
}

impl WangTileSet {
    pub fn new(tiles: Vec<WangTile>) -> Result<Self> {
        if tiles.is_empty() {
            return Err(Error::Malformed("Wang tile set is empty".into()));
        }
        Ok(WangTileSet { tiles })
    }

    pub fn tiles(&self) -> &[WangTile] {
        &self.tiles
    }
}

/// Nearest-neighbour encoding of a Wang tile set as an SFT on `Z^2`.
///
/// The alphabet is the tile list (`t0`, `t1`, ...). A horizontal domino
/// `{0 -> s, e1 -> t}` is forbidden when `east(s) != west(t)`; a vertical domino
/// `{0 -> s, e2 -> t}` when `north(s) != south(t)`.
pub fn wang_to_sft(tiles: &WangTileSet) -> Sft {
    let z2 = crate::group::GroupDescriptor::free_abelian(2).expect("rank 2 is valid");
    let k = tiles.tiles.len();
    let alphabet = Alphabet::new((0..k).map(|i| format!("t{i}")).collect())
        .expect("tile names are distinct");
    let origin = GroupElement::identity(&z2);
    let e1 = GroupElement::generator(&z2, 0);
    let e2 = GroupElement::generator(&z2, 1);
    let mut forbidden = Vec::new();
    for (step, clash) in [
        (&e1, (|a: &WangTile, b: &WangTile| a.east != b.west) as fn(&WangTile, &WangTile) -> bool),
        (&e2, |a: &WangTile, b: &WangTile| a.north != b.south),
    ] {
        for (i, a) in tiles.tiles.iter().enumerate() {
            for (j, b) in tiles.tiles.iter().enumerate() {
                if clash(a, b) {
                    forbidden.push(
                        Pattern::new(&z2, vec![(origin.clone(), i), (step.clone(), j)])
                            .expect("domino pattern is valid"),
                    );
                }
            }
        }
    }
    Sft {
        group: z2,
        alphabet,
        forbidden,
    }
}
