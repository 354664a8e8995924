//! Bounded emptiness checks on Cayley balls, periodic-point search on tori, and
//! stabilizer computation.

mod cnf;
mod engine;

pub use cnf::{export_cnf, Cnf};
pub use engine::{Engine, Problem, SearchOutcome};

use crate::config::{translate, Configuration, Domain};
use crate::error::{Error, Result};
use crate::group::{GroupElement, ensure_same_group};
use crate::lattice::Lattice;
use crate::sft::Sft;

/// Default node budget for searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmptinessVerdict {
    /// A locally admissible coloring of the whole ball.
    Witness(Configuration),
    /// Exhaustive search found no admissible coloring of `ball(G, r)`.
    EmptyAtRadius(u32),
    /// The node budget ran out.
    Inconclusive { budget: u64 },
}

impl EmptinessVerdict {
    pub fn is_witness(&self) -> bool {
        matches!(self, EmptinessVerdict::Witness(_))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, EmptinessVerdict::EmptyAtRadius(_))
    }
}

/// Search statistics reported alongside verdicts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub cells: usize,
    pub placements: usize,
}

pub fn check_ball_emptiness(x: &Sft, r: u32, budget: u64) -> Result<EmptinessVerdict> {
    check_ball_emptiness_with_stats(x, r, budget).map(|(v, _)| v)
}

pub fn check_ball_emptiness_with_stats(
    x: &Sft,
    r: u32,
    budget: u64,
) -> Result<(EmptinessVerdict, SearchStats)> {
    let required = x.max_support_radius();
    if r < required {
        return Err(Error::RadiusTooSmall {
            radius: r,
            required,
        });
    }
    let domain = Domain::ball(x.group(), r);
    let problem = Problem::compile(x, &domain)?;
    let mut engine = Engine::new(&problem);
    let outcome = engine.first(budget);
    let stats = SearchStats {
        nodes: engine.nodes(),
        cells: problem.num_cells(),
        placements: problem.placements().len(),
    };
    let verdict = match outcome {
        SearchOutcome::Found(values) => {
            EmptinessVerdict::Witness(Configuration::new(x.group(), domain, values)?)
        }
        SearchOutcome::Exhausted => EmptinessVerdict::EmptyAtRadius(r),
        SearchOutcome::BudgetExceeded => EmptinessVerdict::Inconclusive { budget },
    };
    Ok((verdict, stats))
}

fn torus_domain(x: &Sft, l: &Lattice) -> Result<Domain> {
    let rank = x
        .group()
        .free_abelian_rank()
        .ok_or(Error::TorusRequiresFreeAbelian)?;
    if l.dim() != rank {
        return Err(Error::DimensionMismatch {
            expected: rank,
            found: l.dim(),
        });
    }
    Ok(Domain::Torus(l.clone()))
}

/// An admissible `Torus(l)` coloring, i.e. a point of the SFT whose stabilizer
/// contains `l`, if one exists.
pub fn find_periodic(x: &Sft, l: &Lattice) -> Result<Option<Configuration>> {
    let domain = torus_domain(x, l)?;
    let problem = Problem::compile(x, &domain)?;
    match Engine::new(&problem).first(u64::MAX) {
        SearchOutcome::Found(values) => Ok(Some(Configuration::new(x.group(), domain, values)?)),
        _ => Ok(None),
    }
}

/// Every admissible coloring of `domain`, in search order, up to `limit`.
pub fn enumerate_admissible(x: &Sft, domain: &Domain, limit: usize) -> Result<Vec<Configuration>> {
    let problem = Problem::compile(x, domain)?;
    let mut out = Vec::new();
    let mut raw = Vec::new();
    let _ = Engine::new(&problem).run(u64::MAX, &mut |sol| {
        raw.push(sol.to_vec());
        raw.len() < limit
    });
    for values in raw {
        out.push(Configuration::new(x.group(), domain.clone(), values)?);
    }
    Ok(out)
}

/// Number of admissible colorings of `domain`.
pub fn count_admissible(x: &Sft, domain: &Domain) -> Result<u64> {
    let problem = Problem::compile(x, domain)?;
    let mut count = 0u64;
    let _ = Engine::new(&problem).run(u64::MAX, &mut |_| {
        count += 1;
        true
    });
    Ok(count)
}

/// Number of admissible `Torus(l)` colorings.
pub fn count_torus(x: &Sft, l: &Lattice) -> Result<u64> {
    count_admissible(x, &torus_domain(x, l)?)
}

/// `{g in Z^n : g . c = c}` for a torus configuration, in Hermite normal form.
pub fn stabilizer(c: &Configuration) -> Result<Lattice> {
    let l = c
        .lattice()
        .ok_or_else(|| Error::InvalidConfiguration("stabilizer needs a torus configuration".into()))?;
    let group = c.group();
    let mut gens = l.basis().clone();
    for r in l.residues() {
        if r.iter().all(|&x| x == 0) {
            continue;
        }
        let g = GroupElement::new(group, r.clone())?;
        if translate(&g, c)? == *c {
            gens.push(r);
        }
    }
    Lattice::from_generators(gens, l.dim())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodEntry {
    pub lattice: Lattice,
    pub witness: Option<Configuration>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodReport {
    pub max_index: u64,
    pub entries: Vec<PeriodEntry>,
}

impl PeriodReport {
    pub fn admitting(&self) -> impl Iterator<Item = &Lattice> {
        self.entries
            .iter()
            .filter(|e| e.witness.is_some())
            .map(|e| &e.lattice)
    }

    pub fn any_periodic(&self) -> bool {
        self.entries.iter().any(|e| e.witness.is_some())
    }
}

/// Runs [`find_periodic`] on every Hermite-normal-form lattice of index at most `max_index`.
pub fn search_periods(x: &Sft, max_index: u64) -> Result<PeriodReport> {
    let rank = x
        .group()
        .free_abelian_rank()
        .ok_or(Error::TorusRequiresFreeAbelian)?;
    if max_index == 0 {
        return Err(Error::Malformed("max index must be >= 1".into()));
    }
    let entries = Lattice::enumerate(rank, max_index)
        .into_iter()
        .map(|lattice| {
            let witness = find_periodic(x, &lattice)?;
            Ok(PeriodEntry { lattice, witness })
        })
        .collect::<Result<_>>()?;
    Ok(PeriodReport { max_index, entries })
}

/// Checks that a configuration's values are admissible on its own domain and that
/// it belongs to the same group as `x`; used to validate witnesses.
pub fn validate_witness(x: &Sft, c: &Configuration) -> Result<bool> {
    ensure_same_group(x.group(), c.group())?;
    crate::config::is_locally_admissible(x, c)
}
