//! JSON definitions for groups, SFTs, homomorphisms, chains, configurations,
//! Wang tiles and automorphisms.
//!
//! Output is canonical: object keys are sorted and integers are plain decimals, so
//! serializing a parsed value reproduces the same bytes.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::automorphism::{shear, AutMatrix};
use crate::config::{Configuration, Domain};
use crate::error::{Error, Result};
use crate::group::{Family, Group, GroupDescriptor, GroupElement};
use crate::hom::{Homomorphism, HomKind};
use crate::intmat::Matrix;
use crate::lattice::Lattice;
use crate::sft::{Alphabet, Pattern, Sft, WangTile, WangTileSet};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hirsch: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub coords: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternJson {
    pub support: Vec<ElementJson>,
    pub symbols: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SftJson {
    pub group: GroupJson,
    pub alphabet: Vec<String>,
    #[serde(default)]
    pub forbidden: Vec<PatternJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomJson {
    pub source: GroupJson,
    pub target: GroupJson,
    pub images: Vec<ElementJson>,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub kernel_generators: Vec<ElementJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ChainJson {
    Wrapped { chain: Vec<HomJson> },
    Bare(Vec<HomJson>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "lowercase")]
pub enum DomainJson {
    Torus { basis: Matrix },
    Window { radius: u32 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellJson {
    pub coords: Vec<i64>,
    pub value: usize,
}

/// Cells carry symbol indices; the alphabet is optional metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigJson {
    pub group: GroupJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
    pub domain: DomainJson,
    pub cells: Vec<CellJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TileJson {
    pub n: String,
    pub e: String,
    pub s: String,
    pub w: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TilesJson {
    pub tiles: Vec<TileJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShearJson {
    pub u: Vec<i64>,
    pub v: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
pub enum AutJson {
    Matrix(Matrix),
    Shear(ShearJson),
}

/// Serializes with sorted keys and two-space indentation, plus a trailing newline.
pub fn to_canonical_string<T: Serialize>(value: &T) -> Result<String> {
    // serde_json's default map is ordered by key
    let v: Value = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
}

// groups

pub fn group_from_json(j: &GroupJson) -> Result<Group> {
    let family = match j.family.as_str() {
        "free_abelian" => {
            if j.matrix.is_some() {
                return Err(Error::InvalidGroup("free_abelian takes no matrix".into()));
            }
            Family::FreeAbelian {
                rank: j.rank.ok_or_else(|| Error::InvalidGroup("free_abelian needs a rank".into()))?,
            }
        }
        "heisenberg3" => {
            if j.rank.is_some() || j.matrix.is_some() {
                return Err(Error::InvalidGroup("heisenberg3 takes no rank or matrix".into()));
            }
            Family::Heisenberg3
        }
        "semidirect" => {
            let matrix = j
                .matrix
                .clone()
                .ok_or_else(|| Error::InvalidGroup("semidirect needs a matrix".into()))?;
            let rank = j.rank.unwrap_or(matrix.len());
            Family::SemidirectZnByZ { rank, matrix }
        }
        other => return Err(Error::InvalidGroup(format!("unknown family {other:?}"))),
    };
    GroupDescriptor::new(family, j.hirsch, j.generators.clone())
}

pub fn group_to_json(g: &Group) -> GroupJson {
    let defaults = GroupDescriptor::new(g.family().clone(), None, None).expect("family already validated");
    let (family, rank, matrix) = match g.family() {
        Family::FreeAbelian { rank } => ("free_abelian", Some(*rank), None),
        Family::Heisenberg3 => ("heisenberg3", None, None),
        Family::SemidirectZnByZ { rank, matrix } => ("semidirect", Some(*rank), Some(matrix.clone())),
    };
    GroupJson {
        family: family.into(),
        rank,
        matrix,
        hirsch: (g.declared_hirsch() != defaults.declared_hirsch()).then(|| g.declared_hirsch()),
        generators: (g.generator_names() != defaults.generator_names()).then(|| g.generator_names().to_vec()),
    }
}

fn element(group: &Group, e: &ElementJson) -> Result<GroupElement> {
    GroupElement::new(group, e.coords.clone())
}

fn element_json(e: &GroupElement) -> ElementJson {
    ElementJson {
        coords: e.coords().to_vec(),
    }
}

// SFTs

pub fn sft_from_json(j: &SftJson) -> Result<Sft> {
    let group = group_from_json(&j.group)?;
    let alphabet = Alphabet::new(j.alphabet.clone())?;
    let mut forbidden = Vec::with_capacity(j.forbidden.len());
    for (i, p) in j.forbidden.iter().enumerate() {
        if p.support.len() != p.symbols.len() {
            return Err(Error::InvalidPattern(format!(
                "pattern {i}: {} support elements but {} symbols",
                p.support.len(),
                p.symbols.len()
            )));
        }
        let entries = p
            .support
            .iter()
            .zip(&p.symbols)
            .map(|(e, s)| {
                let sym = alphabet
                    .index_of(s)
                    .ok_or_else(|| Error::AlphabetMismatch(format!("pattern {i}: unknown symbol {s:?}")))?;
                Ok((element(&group, e)?, sym))
            })
            .collect::<Result<Vec<_>>>()?;
        forbidden.push(Pattern::new(&group, entries)?);
    }
    Sft::new(&group, alphabet, forbidden)
}

pub fn sft_to_json(x: &Sft) -> SftJson {
    SftJson {
        group: group_to_json(x.group()),
        alphabet: x.alphabet().symbols().to_vec(),
        forbidden: x
            .forbidden()
            .iter()
            .map(|p| PatternJson {
                support: p.entries().iter().map(|(h, _)| element_json(h)).collect(),
                symbols: p
                    .entries()
                    .iter()
                    .map(|(_, s)| x.alphabet().symbol(*s).to_string())
                    .collect(),
            })
            .collect(),
    }
}

pub fn parse_sft(text: &str) -> Result<Sft> {
    sft_from_json(&parse(text)?)
}

pub fn sft_to_string(x: &Sft) -> String {
    to_canonical_string(&sft_to_json(x)).expect("SFT JSON always serializes")
}

// homomorphisms

fn kind_from_str(s: &str) -> Result<HomKind> {
    match s {
        "quotient" => Ok(HomKind::Quotient),
        "embedding" => Ok(HomKind::Embedding),
        "general" => Ok(HomKind::General),
        other => Err(Error::Malformed(format!("unknown homomorphism kind {other:?}"))),
    }
}

fn kind_to_str(k: HomKind) -> &'static str {
    match k {
        HomKind::Quotient => "quotient",
        HomKind::Embedding => "embedding",
        HomKind::General => "general",
    }
}

pub fn hom_from_json(j: &HomJson) -> Result<Homomorphism> {
    let source = group_from_json(&j.source)?;
    let target = group_from_json(&j.target)?;
    let images = j.images.iter().map(|e| element(&target, e)).collect::<Result<_>>()?;
    let kernel = j
        .kernel_generators
        .iter()
        .map(|e| element(&source, e))
        .collect::<Result<_>>()?;
    Homomorphism::new(&source, &target, images, kind_from_str(&j.kind)?, kernel)
}

pub fn hom_to_json(h: &Homomorphism) -> HomJson {
    HomJson {
        source: group_to_json(h.source()),
        target: group_to_json(h.target()),
        images: h.images().iter().map(element_json).collect(),
        kind: kind_to_str(h.kind()).into(),
        kernel_generators: h.kernel_generators().iter().map(element_json).collect(),
    }
}

pub fn parse_hom(text: &str) -> Result<Homomorphism> {
    hom_from_json(&parse(text)?)
}

pub fn parse_chain(text: &str) -> Result<Vec<Homomorphism>> {
    let steps = match parse::<ChainJson>(text)? {
        ChainJson::Wrapped { chain } => chain,
        ChainJson::Bare(chain) => chain,
    };
    steps.iter().map(hom_from_json).collect()
}

pub fn chain_to_string(chain: &[Homomorphism]) -> String {
    let steps: Vec<HomJson> = chain.iter().map(hom_to_json).collect();
    to_canonical_string(&json!({ "chain": steps })).expect("chain JSON always serializes")
}

// configurations

pub fn config_from_json(j: &ConfigJson) -> Result<Configuration> {
    let group = group_from_json(&j.group)?;
    let config = match &j.domain {
        DomainJson::Window { radius } => {
            let cells = j
                .cells
                .iter()
                .map(|c| Ok((GroupElement::new(&group, c.coords.clone())?, c.value)))
                .collect::<Result<Vec<_>>>()?;
            let mut seen: Vec<&Vec<i64>> = j.cells.iter().map(|c| &c.coords).collect();
            seen.sort();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidConfiguration("a cell is listed twice".into()));
            }
            Configuration::from_window(&group, *radius, cells)?
        }
        DomainJson::Torus { basis } => {
            let n = group.free_abelian_rank().ok_or(Error::TorusRequiresFreeAbelian)?;
            let lattice = Lattice::from_generators(basis.clone(), n)?;
            if lattice.index() as usize != j.cells.len() {
                return Err(Error::InvalidConfiguration(format!(
                    "torus has {} cells but {} were given",
                    lattice.index(),
                    j.cells.len()
                )));
            }
            let mut values = vec![None; j.cells.len()];
            for c in &j.cells {
                if c.coords.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: c.coords.len(),
                    });
                }
                let i = lattice.residue_index(&lattice.reduce(&c.coords));
                if values[i].replace(c.value).is_some() {
                    return Err(Error::InvalidConfiguration(format!(
                        "cell {:?} repeats a residue",
                        c.coords
                    )));
                }
            }
            let values = values.into_iter().map(|v| v.expect("every residue is covered")).collect();
            Configuration::new(&group, Domain::Torus(lattice), values)?
        }
    };
    if let Some(names) = &j.alphabet {
        let alphabet = Alphabet::new(names.clone())?;
        if let Some(v) = config.values().iter().find(|&&v| v >= alphabet.len()) {
            return Err(Error::AlphabetMismatch(format!(
                "value {v} outside alphabet of size {}",
                alphabet.len()
            )));
        }
    }
    Ok(config)
}

pub fn config_to_json(c: &Configuration, alphabet: Option<&Alphabet>) -> ConfigJson {
    let domain = match c.domain() {
        Domain::Torus(l) => DomainJson::Torus { basis: l.basis().clone() },
        Domain::Ball { radius, .. } => DomainJson::Window { radius: *radius },
    };
    ConfigJson {
        group: group_to_json(c.group()),
        alphabet: alphabet.map(|a| a.symbols().to_vec()),
        domain,
        cells: c
            .cells()
            .into_iter()
            .zip(c.values())
            .map(|(coords, &value)| CellJson { coords, value })
            .collect(),
    }
}

/// Parses a configuration file; also accepts a report carrying a `witness`, either at
/// top level or under `result`.
/// Returns the alphabet when one is recorded.
pub fn parse_config(text: &str) -> Result<(Configuration, Option<Alphabet>)> {
    let v: Value = parse(text)?;
    let witness = v
        .get("witness")
        .or_else(|| v.get("result").and_then(|r| r.get("witness")))
        .filter(|w| !w.is_null())
        .cloned();
    let v = witness.unwrap_or(v);
    let j: ConfigJson = serde_json::from_value(v).map_err(|e| Error::Malformed(e.to_string()))?;
    let alphabet = j.alphabet.clone().map(Alphabet::new).transpose()?;
    Ok((config_from_json(&j)?, alphabet))
}

pub fn config_to_string(c: &Configuration, alphabet: Option<&Alphabet>) -> String {
    to_canonical_string(&config_to_json(c, alphabet)).expect("configuration JSON always serializes")
}

// Wang tiles

pub fn tiles_from_json(j: &TilesJson) -> Result<WangTileSet> {
    WangTileSet::new(
        j.tiles
            .iter()
            .map(|t| WangTile::new(&t.n, &t.e, &t.s, &t.w))
            .collect(),
    )
}

pub fn tiles_to_json(t: &WangTileSet) -> TilesJson {
    TilesJson {
        tiles: t
            .tiles()
            .iter()
            .map(|t| TileJson {
                n: t.north.clone(),
                e: t.east.clone(),
                s: t.south.clone(),
                w: t.west.clone(),
            })
            .collect(),
    }
}

pub fn parse_tiles(text: &str) -> Result<WangTileSet> {
    tiles_from_json(&parse(text)?)
}

// automorphisms

pub fn aut_from_json(j: &AutJson) -> Result<AutMatrix> {
    match j {
        AutJson::Matrix(m) => AutMatrix::new(m.clone()),
        AutJson::Shear(s) => shear(&s.u, &s.v),
    }
}

pub fn parse_aut(text: &str) -> Result<AutMatrix> {
    aut_from_json(&parse(text)?)
}
