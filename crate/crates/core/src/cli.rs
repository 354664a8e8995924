//! Command-line front end.
//!
//! Exit codes: 0 success or witness, 1 certified empty or refuted, 2 inconclusive,
//! 64 usage error, 65 malformed input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::automorphism::{div_witness_check, AutMatrix, DivVerdict};
use crate::config::{is_locally_admissible, Configuration, Domain};
use crate::constructions::{mod3_marker, product, quotient_lift, reduce_to_group, subgroup_induce};
use crate::error::Error;
use crate::io;
use crate::lattice::Lattice;
use crate::sft::{wang_to_sft, Alphabet, Sft};
use crate::solver::{check_ball_emptiness_with_stats, export_cnf, find_periodic, search_periods, stabilizer, EmptinessVerdict, DEFAULT_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_MALFORMED: i32 = 65;

#[derive(Debug, Parser)]
#[command(name = "polysft", version, about = "Subshifts of finite type on finitely generated groups")]
struct Cli {
    /// Add a wall-time section to reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bounded emptiness check on ball(G, R).
    Check {
        sft: PathBuf,
        #[arg(long)]
        radius: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Look for a point with the given lattice of periods (rows "a,b;c,d").
    Periodic {
        sft: PathBuf,
        #[arg(long)]
        lattice: String,
    },
    /// Try every lattice of index at most K.
    SearchPeriods {
        sft: PathBuf,
        #[arg(long)]
        max_index: u64,
    },
    /// Stabilizer of a torus configuration.
    Stabilizer { config: PathBuf },
    /// Pull an SFT back along a quotient map.
    Lift {
        sft: PathBuf,
        #[arg(long)]
        hom: PathBuf,
    },
    /// Push an SFT forward along a subgroup embedding.
    Induce {
        sft: PathBuf,
        #[arg(long)]
        hom: PathBuf,
    },
    /// Product of two SFTs on the same group.
    Product { first: PathBuf, second: PathBuf },
    /// Mod-3 marker SFT on Z^N.
    Mod3 {
        #[arg(long)]
        dim: usize,
    },
    /// SFT of a Wang tile set.
    Wang { tiles: PathBuf },
    /// Wang tiles pushed through a chain of quotients and embeddings.
    Reduce {
        tiles: PathBuf,
        #[arg(long)]
        chain: PathBuf,
    },
    /// Check whether an automorphism maps a configuration out of the SFT.
    AutCheck {
        sft: PathBuf,
        config: PathBuf,
        /// Rows "a,b;c,d", or a JSON file with {"matrix": ...} or {"shear": ...}.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Draw a configuration.
    Render {
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// DIMACS CNF of the coloring problem on ball(G, R).
    ExportCnf {
        sft: PathBuf,
        #[arg(long)]
        radius: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Pgm,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Malformed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::RadiusTooSmall { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Malformed(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

struct Inputs {
    digests: Vec<(String, String)>,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> CliResult<String> {
        let bytes = std::fs::read(path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
        self.digests.push((path.display().to_string(), hex::encode(Sha256::digest(&bytes))));
        String::from_utf8(bytes).map_err(|_| Failure::Malformed(format!("{}: not UTF-8", path.display())))
    }

    fn sft(&mut self, path: &Path) -> CliResult<Sft> {
        Ok(io::parse_sft(&self.read(path)?)?)
    }
}

struct Outcome {
    code: i32,
    body: Body,
}

enum Body {
    Report { result: Value, stats: Option<Value> },
    Raw(Vec<u8>),
}

fn report(code: i32, result: Value, stats: Option<Value>) -> Outcome {
    Outcome {
        code,
        body: Body::Report { result, stats },
    }
}

fn raw_sft(x: &Sft) -> Outcome {
    Outcome {
        code: EXIT_OK,
        body: Body::Raw(io::sft_to_string(x).into_bytes()),
    }
}

fn config_value(c: &Configuration, alphabet: Option<&Alphabet>) -> Value {
    serde_json::to_value(io::config_to_json(c, alphabet)).expect("configuration serializes")
}

fn parse_lattice(s: &str) -> CliResult<Lattice> {
    Lattice::parse(s).map_err(|e| Failure::Usage(format!("--lattice: {e}")))
}

fn parse_matrix_arg(s: &str, inputs: &mut Inputs) -> CliResult<AutMatrix> {
    if let Some(m) = crate::intmat::parse_matrix(s) {
        return AutMatrix::new(m).map_err(|e| Failure::Usage(format!("--matrix: {e}")));
    }
    let path = Path::new(s);
    if path.exists() {
        return Ok(io::parse_aut(&inputs.read(path)?)?);
    }
    Err(Failure::Usage(format!("--matrix: {s:?} is neither \"a,b;c,d\" nor a file")))
}

fn execute(command: &Command, inputs: &mut Inputs) -> CliResult<Outcome> {
    match command {
        Command::Check { sft, radius, budget } => {
            let x = inputs.sft(sft)?;
            let (verdict, stats) = check_ball_emptiness_with_stats(&x, *radius, *budget)?;
            let stats = json!({"cells": stats.cells, "nodes": stats.nodes, "placements": stats.placements});
            let (code, result) = match verdict {
                EmptinessVerdict::Witness(c) => (
                    EXIT_OK,
                    json!({"verdict": "witness", "radius": radius, "witness": config_value(&c, Some(x.alphabet()))}),
                ),
                EmptinessVerdict::EmptyAtRadius(r) => (EXIT_NEGATIVE, json!({"verdict": "empty", "radius": r})),
                EmptinessVerdict::Inconclusive { budget } => (
                    EXIT_INCONCLUSIVE,
                    json!({"verdict": "inconclusive", "radius": radius, "budget": budget}),
                ),
            };
            Ok(report(code, result, Some(stats)))
        }
        Command::Periodic { sft, lattice } => {
            let x = inputs.sft(sft)?;
            let l = parse_lattice(lattice)?;
            Ok(match find_periodic(&x, &l)? {
                Some(c) => report(
                    EXIT_OK,
                    json!({"verdict": "periodic", "lattice": l.basis(), "witness": config_value(&c, Some(x.alphabet()))}),
                    None,
                ),
                None => report(EXIT_NEGATIVE, json!({"verdict": "none", "lattice": l.basis()}), None),
            })
        }
        Command::SearchPeriods { sft, max_index } => {
            let x = inputs.sft(sft)?;
            if *max_index == 0 {
                return Err(Failure::Usage("--max-index must be at least 1".into()));
            }
            let rep = search_periods(&x, *max_index)?;
            let lattices: Vec<Value> = rep
                .entries
                .iter()
                .map(|e| json!({"basis": e.lattice.basis(), "index": e.lattice.index(), "admits": e.witness.is_some()}))
                .collect();
            let admitting = rep.admitting().count();
            let code = if admitting > 0 { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(report(
                code,
                json!({"max_index": max_index, "lattices": lattices, "admitting": admitting}),
                None,
            ))
        }
        Command::Stabilizer { config } => {
            let (c, _) = io::parse_config(&inputs.read(config)?)?;
            let s = stabilizer(&c)?;
            Ok(report(EXIT_OK, json!({"stabilizer": s.basis(), "index": s.index()}), None))
        }
        Command::Lift { sft, hom } => {
            let x = inputs.sft(sft)?;
            let h = io::parse_hom(&inputs.read(hom)?)?;
            Ok(raw_sft(&quotient_lift(&x, &h)?))
        }
        Command::Induce { sft, hom } => {
            let x = inputs.sft(sft)?;
            let h = io::parse_hom(&inputs.read(hom)?)?;
            Ok(raw_sft(&subgroup_induce(&x, &h)?))
        }
        Command::Product { first, second } => {
            let a = inputs.sft(first)?;
            let b = inputs.sft(second)?;
            Ok(raw_sft(&product(&a, &b)?))
        }
        Command::Mod3 { dim } => {
            if *dim == 0 {
                return Err(Failure::Usage("--dim must be at least 1".into()));
            }
            Ok(raw_sft(&mod3_marker(*dim)?))
        }
        Command::Wang { tiles } => {
            let t = io::parse_tiles(&inputs.read(tiles)?)?;
            Ok(raw_sft(&wang_to_sft(&t)))
        }
        Command::Reduce { tiles, chain } => {
            let t = io::parse_tiles(&inputs.read(tiles)?)?;
            let ch = io::parse_chain(&inputs.read(chain)?)?;
            Ok(raw_sft(&reduce_to_group(&t, &ch)?))
        }
        Command::AutCheck { sft, config, matrix } => {
            let x = inputs.sft(sft)?;
            let (c, _) = io::parse_config(&inputs.read(config)?)?;
            let m = parse_matrix_arg(matrix, inputs)?;
            if !is_locally_admissible(&x, &c)? {
                return Err(Error::Inadmissible.into());
            }
            let (code, verdict) = match div_witness_check(&x, &c, &m)? {
                DivVerdict::Consistent => (EXIT_OK, "consistent"),
                DivVerdict::Refuted => (EXIT_NEGATIVE, "refuted"),
            };
            Ok(report(code, json!({"verdict": verdict, "matrix": m.entries()}), None))
        }
        Command::Render { config, format } => {
            let (c, alphabet) = io::parse_config(&inputs.read(config)?)?;
            let bytes = match format {
                Format::Text => render_text(&c, alphabet.as_ref()).into_bytes(),
                Format::Pgm => render_pgm(&c, alphabet.as_ref())?,
            };
            Ok(Outcome {
                code: EXIT_OK,
                body: Body::Raw(bytes),
            })
        }
        Command::ExportCnf { sft, radius } => {
            let x = inputs.sft(sft)?;
            let required = x.max_support_radius();
            if *radius < required {
                return Err(Error::RadiusTooSmall { radius: *radius, required }.into());
            }
            let cnf = export_cnf(&x, &Domain::ball(x.group(), *radius))?;
            Ok(Outcome {
                code: EXIT_OK,
                body: Body::Raw(cnf.to_dimacs().into_bytes()),
            })
        }
    }
}

fn symbol_label(v: usize, alphabet: Option<&Alphabet>) -> String {
    match alphabet {
        Some(a) if v < a.len() => a.symbol(v).to_string(),
        _ => v.to_string(),
    }
}

/// Planar grids for rank 1 and 2 (rows from top `y` down, `.` for missing cells);
/// one `coords: symbol` line per cell otherwise.
pub fn render_text(c: &Configuration, alphabet: Option<&Alphabet>) -> String {
    let cells = c.cells();
    let mut out = String::new();
    let rank = c.group().free_abelian_rank();
    if !matches!(rank, Some(1) | Some(2)) {
        for (coords, &v) in cells.iter().zip(c.values()) {
            let _ = writeln!(out, "{coords:?}: {}", symbol_label(v, alphabet));
        }
        return out;
    }
    let planar = |p: &[i64]| (p[0], p.get(1).copied().unwrap_or(0));
    let (x0, x1, y0, y1) = bounds(cells.iter().map(|p| planar(p)));
    let labels: Vec<String> = c.values().iter().map(|&v| symbol_label(v, alphabet)).collect();
    let width = labels.iter().map(String::len).max().unwrap_or(1);
    let mut grid = vec![vec![".".to_string(); (x1 - x0 + 1) as usize]; (y1 - y0 + 1) as usize];
    for (p, label) in cells.iter().zip(labels) {
        let (x, y) = planar(p);
        grid[(y1 - y) as usize][(x - x0) as usize] = label;
    }
    for row in grid {
        let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

fn bounds(points: impl Iterator<Item = (i64, i64)>) -> (i64, i64, i64, i64) {
    points.fold((i64::MAX, i64::MIN, i64::MAX, i64::MIN), |(a, b, c, d), (x, y)| {
        (a.min(x), b.max(x), c.min(y), d.max(y))
    })
}

/// Binary PGM of a planar configuration. Gray level is `floor(255 idx / (k - 1))`,
/// or 0 when `k = 1`, where `k` is the alphabet size (largest value plus one if no
/// alphabet is recorded). Missing cells are black.
pub fn render_pgm(c: &Configuration, alphabet: Option<&Alphabet>) -> crate::error::Result<Vec<u8>> {
    if c.group().free_abelian_rank() != Some(2) {
        return Err(Error::InvalidConfiguration("PGM rendering needs a configuration on Z^2".into()));
    }
    let k = alphabet
        .map(Alphabet::len)
        .unwrap_or_else(|| c.values().iter().max().map_or(1, |m| m + 1));
    let cells = c.cells();
    let (x0, x1, y0, y1) = bounds(cells.iter().map(|p| (p[0], p[1])));
    let (w, h) = ((x1 - x0 + 1) as usize, (y1 - y0 + 1) as usize);
    let mut pixels = vec![0u8; w * h];
    for (p, &v) in cells.iter().zip(c.values()) {
        let gray = if k <= 1 { 0 } else { (255 * v / (k - 1)).min(255) as u8 };
        pixels[(y1 - p[1]) as usize * w + (p[0] - x0) as usize] = gray;
    }
    let mut out = format!("P5\n{w} {h}\n255\n").into_bytes();
    out.extend(pixels);
    Ok(out)
}

/// Runs the CLI on `argv` (program name first), writing to `out`, and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let started = Instant::now();
    let mut inputs = Inputs { digests: Vec::new() };
    let outcome = match execute(&cli.command, &mut inputs) {
        Ok(o) => o,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_USAGE;
        }
        Err(Failure::Malformed(m)) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_MALFORMED;
        }
    };
    let bytes = match outcome.body {
        Body::Raw(b) => b,
        Body::Report { result, stats } => {
            let mut r = Map::new();
            r.insert(
                "command".into(),
                Value::Array(argv.iter().skip(1).map(|a| Value::String(a.to_string_lossy().into_owned())).collect()),
            );
            r.insert(
                "inputs".into(),
                Value::Array(
                    inputs
                        .digests
                        .iter()
                        .map(|(p, d)| json!({"path": p, "sha256": d}))
                        .collect(),
                ),
            );
            r.insert("result".into(), result);
            if let Some(s) = stats {
                r.insert("stats".into(), s);
            }
            if cli.timing {
                r.insert("timing".into(), json!({"wall_ms": started.elapsed().as_millis() as u64}));
            }
            io::to_canonical_string(&Value::Object(r))
                .expect("report serializes")
                .into_bytes()
        }
    };
    let _ = out.write_all(&bytes);
    outcome.code
}
